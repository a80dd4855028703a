//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line (run with `cargo test --test acceptance -- --nocapture` to
//! see them). The end-to-end criteria need a QF_NRA solver: a native
//! z3/cvc5/yices on PATH or the bundled WASM wrapper (`npm install` in
//! tools/z3-wasm once).

mod support;

use std::time::{Duration, Instant};

use seqprove::algebra::{Polynomial, RationalFunction, RfValue, Var};
use seqprove::bench::{survival_series, BenchRecord};
use seqprove::formula::Truth;
use seqprove::induction::{
    build_refutation, emit_options, prepare_query, prove, InductionConfig, ProofOutcome,
};
use seqprove::parse::parse_relation_atom;
use seqprove::preprocess::{clear_bdc, clear_ddc, Strategy};
use seqprove::smtlib::{emit_script, run_solver, Status};
use seqprove::testgen;
use seqprove::{builtin, ProblemSpec};

use support::*;

fn prove_config(timeout: Duration) -> InductionConfig {
    let mut cfg = InductionConfig::new(test_solver());
    cfg.timeout = timeout;
    cfg
}

fn assert_proved_1_1(p: &ProblemSpec, budget: Duration) -> Duration {
    let start = Instant::now();
    let report = prove(p, &prove_config(budget)).expect("query construction");
    let elapsed = start.elapsed();
    match report.outcome {
        ProofOutcome::Proved { t: 1, r: 1 } => {}
        ref other => panic!("{} [{}]: expected Proved(1,1), got {other}", p.name, p.strategy),
    }
    assert!(report.audit(), "{}: inconsistent trace", p.name);
    assert!(
        elapsed < budget,
        "{}: took {elapsed:?}, budget {budget:?}",
        p.name
    );
    elapsed
}

#[test]
fn c1_product_claim_proof_and_golden_script() {
    let p = builtin::product_le_one();
    let elapsed = assert_proved_1_1(&p, Duration::from_secs(10));

    // the emitted depth-1 refutation is the frozen serialization and
    // carries the shifted product conjunct Z * s(x) > 1
    let query = prepare_query(&build_refutation(&p, 1).unwrap(), p.strategy, true).unwrap();
    let opts = emit_options(&p, "refutation depth r=1", p.strategy, false);
    let script = emit_script(&query, &opts).unwrap();
    let golden = include_str!("golden/product_le_one_r1.smt2");
    assert_eq!(script, golden, "refutation script drifted from the golden file");
    assert!(script.contains("(assert (> (- (* Z x_s1) 1) 0))"));

    println!("criterion 1 PASS: product claim Proved(1,1) in {elapsed:.2?}, golden script matches");
}

#[test]
fn c2_ratio_sum_claims_under_all_strategies() {
    let mut total = Duration::ZERO;
    for base in [builtin::ratio_sum_ge_n(), builtin::ratio_sum_centered()] {
        for s in Strategy::ALL {
            let mut p = base.clone();
            p.strategy = s;
            total += assert_proved_1_1(&p, Duration::from_secs(30));
        }
    }
    println!("criterion 2 PASS: 6 ratio-sum proofs Proved(1,1), {total:.2?} total");
}

#[test]
fn c3_fixed_power_instances_are_unsat() {
    let solver = test_solver();
    for j in 1..=5 {
        let base = builtin::ratio_sum_power(j);
        for s in Strategy::ALL {
            let query = prepare_query(&build_refutation(&base, 1).unwrap(), s, true).unwrap();
            let opts = emit_options(&base, "refutation depth r=1", s, false);
            let script = emit_script(&query, &opts).unwrap();
            let start = Instant::now();
            let res = run_solver(&script, &solver, Duration::from_secs(60));
            assert_eq!(
                res.status,
                Status::Unsat,
                "j={j} strategy={s}: {}",
                res.raw
            );
            assert!(start.elapsed() < Duration::from_secs(60), "j={j} over budget");
        }
    }
    println!("criterion 3 PASS: fixed-power refutations j=1..5 unsat under all strategies");
}

#[test]
fn c4_altered_claim_fails_the_first_instance() {
    let mut p = builtin::product_le_one();
    p.name = "product_ge_two".into();
    p.claim = parse_relation_atom("Z >= 2").unwrap();
    let report = prove(&p, &prove_config(Duration::from_secs(30))).unwrap();
    match &report.outcome {
        ProofOutcome::FailedInitial { k: 1, witness } => {
            let witness = witness.as_ref().expect("sat model");
            let x1 = witness.get("x1").expect("witness assigns x1");
            let value = numeral(x1).unwrap_or_else(|| panic!("unparsed witness `{x1}`"));
            assert_eq!(value, 1.0, "the assumptions force x1 = 1");
        }
        other => panic!("expected FailedInitial(1), got {other}"),
    }
    println!("criterion 4 PASS: altered claim fails at k=1 with witness x1 = 1");
}

#[test]
fn c5_clearing_strategies_agree_everywhere() {
    let mut rng = testgen::rng(501);
    let vars = testgen::var_set(3);
    let mut points_checked = 0u64;
    for i in 0..1000 {
        let op = testgen::inequality_op(&mut rng);
        let atom = testgen::cleared_atom(&mut rng, &vars, 4, op);
        let bdc = clear_bdc(&atom);
        let ddc = clear_ddc(&atom);
        let rf = RationalFunction::new(atom.f.clone(), atom.g.clone()).unwrap();
        for _ in 0..100 {
            let pt = testgen::point(&mut rng, &vars);
            let vb = bdc.eval(&pt).unwrap();
            let vd = ddc.eval(&pt).unwrap();
            assert_eq!(vb, vd, "atom #{i} at {pt:?}");
            if let RfValue::Finite(v) = rf.eval(&pt).unwrap() {
                assert_eq!(
                    vb,
                    Truth::from_bool(atom.op.holds(&v)),
                    "atom #{i}: cleared form disagrees with the rational truth"
                );
            }
            points_checked += 1;
        }
    }
    println!("criterion 5 PASS: bdc = ddc on {points_checked} points, zero discrepancies");
}

#[test]
fn c6_radical_reduction_is_sound_and_transparent() {
    let mut rng = testgen::rng(601);
    let y = Var::new("y");
    let modulus = {
        let yy = Polynomial::variable(y.clone());
        &yy.pow(2) - &Polynomial::from_int(5)
    };
    for _ in 0..500 {
        let p = testgen::polynomial(&mut rng, std::slice::from_ref(&y), 40, 8);
        let r = p.reduce_mod_quadratic(&y, 5);
        assert!(r.degree_in(&y).unwrap_or(0) <= 1);
        let diff = &p - &r;
        assert!(
            diff.is_zero() || diff.div_exact(&modulus).is_some(),
            "difference not divisible by y^2 - 5"
        );
    }

    // the golden-ratio problem proves identically with and without the
    // degree reduction
    let mut outcomes = Vec::new();
    for reduce in [true, false] {
        let p = builtin::golden_ratio_growth();
        let mut cfg = prove_config(Duration::from_secs(30));
        cfg.reduce_radicals = reduce;
        let report = prove(&p, &cfg).unwrap();
        match report.outcome {
            ProofOutcome::Proved { t, r } => outcomes.push((t, r)),
            ref other => panic!("reduce={reduce}: expected a proof, got {other}"),
        }
    }
    assert_eq!(outcomes[0], outcomes[1]);
    println!(
        "criterion 6 PASS: 500 reductions linear and divisible; sqrt(5) proof identical on/off"
    );
}

#[test]
fn c7_survival_series_oracle_and_monotonicity() {
    let record = |problem: &str, status, time_s| BenchRecord {
        problem: problem.into(),
        strategy: Strategy::Bdc,
        solver: "s".into(),
        status,
        time_s,
    };
    let records = vec![
        record("a", Status::Unsat, 3.0),
        record("b", Status::Unsat, 1.0),
        record("c", Status::Unsat, 2.0),
        record("d", Status::Timeout, 1200.0),
    ];
    let series = survival_series(&records, "s");
    assert_eq!(series.points, vec![(1, 1.0), (2, 3.0), (3, 6.0)]);

    let mut rng = testgen::rng(701);
    use rand::Rng;
    for _ in 0..10_000 {
        let n = rng.gen_range(0..20);
        let records: Vec<BenchRecord> = (0..n)
            .map(|i| {
                let status = [
                    Status::Sat,
                    Status::Unsat,
                    Status::Timeout,
                    Status::Error,
                    Status::Unknown,
                ][rng.gen_range(0..5)];
                record(&format!("p{i}"), status, rng.gen_range(0.0..500.0))
            })
            .collect();
        let series = survival_series(&records, "s");
        let answered = records.iter().filter(|r| r.status.is_answer()).count();
        assert_eq!(series.points.len(), answered);
        for w in series.points.windows(2) {
            assert_eq!(w[1].0, w[0].0 + 1);
            assert!(w[1].1 >= w[0].1);
        }
    }
    println!("criterion 7 PASS: survival oracle exact; monotone on 10000 random record sets");
}

#[test]
fn c8_timeouts_kill_the_solver_process_tree() {
    let dir = tempfile::tempdir().unwrap();
    let sleeper = sleeper_solver(dir.path());
    let res = run_solver(
        "(set-logic QF_NRA)\n(check-sat)\n",
        &sleeper,
        Duration::from_secs(1),
    );
    assert_eq!(res.status, Status::Timeout);
    let t = res.wall.as_secs_f64();
    assert!((1.0..=2.0).contains(&t), "recorded {t}s, expected [1, 2]");
    assert!(
        !process_with_arg_exists(SLEEP_MARKER),
        "orphaned solver process left behind"
    );
    println!("criterion 8 PASS: fake solver timed out at {t:.2}s, no orphaned process");
}

#[test]
fn c9_translate_is_deterministic_on_every_example() {
    let bin = env!("CARGO_BIN_EXE_seqprove");
    let dir = tempfile::tempdir().unwrap();
    let problems_dir = dir.path().join("out");
    let status = std::process::Command::new(bin)
        .args(["examples", "--out", problems_dir.to_str().unwrap(), "--emit-smt2", "off"])
        .status()
        .unwrap();
    assert!(status.success());

    let mut checked = 0;
    for entry in std::fs::read_dir(problems_dir.join("problems")).unwrap() {
        let problem = entry.unwrap().path();
        let out1 = dir.path().join("a.smt2");
        let out2 = dir.path().join("b.smt2");
        for out in [&out1, &out2] {
            let status = std::process::Command::new(bin)
                .args(["translate", problem.to_str().unwrap(), "-o", out.to_str().unwrap()])
                .status()
                .unwrap();
            assert!(status.success(), "{}", problem.display());
        }
        let a = std::fs::read(&out1).unwrap();
        let b = std::fs::read(&out2).unwrap();
        assert_eq!(a, b, "{} translated differently twice", problem.display());
        assert!(!a.is_empty());
        checked += 1;
    }
    assert_eq!(checked, 10);
    println!("criterion 9 PASS: translate byte-identical across two runs on {checked} problems");
}

/// Parses solver numerals: `1.0`, `7`, `(/ 1 2)`, `(- 3.0)`.
fn numeral(text: &str) -> Option<f64> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("(-").and_then(|s| s.strip_suffix(')')) {
        return numeral(inner).map(|v| -v);
    }
    if let Some(inner) = t.strip_prefix("(/").and_then(|s| s.strip_suffix(')')) {
        let mut parts = inner.split_whitespace();
        let num = numeral(parts.next()?)?;
        let den = numeral(parts.next()?)?;
        return Some(num / den);
    }
    t.parse().ok()
}
