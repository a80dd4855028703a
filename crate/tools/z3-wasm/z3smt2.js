#!/usr/bin/env node
// Minimal z3 front-end over the WebAssembly build: evaluates one SMT-LIB 2
// script file and prints the output (sat/unsat/unknown, model, errors),
// mirroring `z3 <file.smt2>`.
//
// Usage: node z3smt2.js <script.smt2>

'use strict';

const fs = require('fs');

async function main() {
  const file = process.argv[2];
  if (!file) {
    process.stderr.write('usage: z3smt2.js <script.smt2>\n');
    process.exit(2);
  }
  const script = fs.readFileSync(file, 'utf8');
  const { init } = require('z3-solver');
  const { Z3 } = await init();
  const cfg = Z3.mk_config();
  const ctx = Z3.mk_context(cfg);
  const out = await Z3.eval_smtlib2_string(ctx, script);
  process.stdout.write(out.endsWith('\n') || out.length === 0 ? out : out + '\n');
  process.exit(0);
}

main().catch((err) => {
  process.stderr.write(String(err && err.stack ? err.stack : err) + '\n');
  process.exit(1);
});
