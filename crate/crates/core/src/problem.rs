//! Problem descriptions: sequence variables with their recurrences, the
//! assumptions, and the claim to prove.
//!
//! The on-disk format is UTF-8 JSON:
//!
//! ```json
//! {
//!   "name": "product_le_one",
//!   "t": 1,
//!   "sequence_vars": [
//!     { "name": "X", "init": "1",  "shift": "X + 1" },
//!     { "name": "Y", "init": "x1", "shift": "Y + s(x)" },
//!     { "name": "Z", "init": "x1", "shift": "Z * s(x)" }
//!   ],
//!   "assumptions": ["x > 0", "X = Y"],
//!   "claim": "Z <= 1",
//!   "strategy": "guard"
//! }
//! ```
//!
//! `x` names the current free term of the sequence and `s(x)` its shift;
//! both are reserved. Initial expressions may reference only `x1` (the
//! first window value) and constants, square roots of positive integers
//! included.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{RationalFunction, Var};
use crate::error::{Error, Result};
use crate::formula::{Formula, ShiftMap, ShiftRule};
use crate::parse::{parse_expr, parse_relation_atom};
use crate::preprocess::Strategy;
use crate::symbols;

/// One sequence variable: its value at the base index and its recurrence.
#[derive(Clone, Debug)]
pub struct SequenceVarDecl {
    pub name: Var,
    pub init: RationalFunction,
    pub rule: ShiftRule,
}

/// A fully parsed and validated problem.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub name: String,
    pub t: u32,
    pub seq_vars: Vec<SequenceVarDecl>,
    pub assumptions: Formula,
    pub claim: Formula,
    pub strategy: Strategy,
}

/// Raw serde mirror of the JSON problem format.
#[derive(Serialize, Deserialize)]
struct ProblemFile {
    name: String,
    t: u32,
    sequence_vars: Vec<SeqVarFile>,
    assumptions: Vec<String>,
    claim: String,
    strategy: Strategy,
}

#[derive(Serialize, Deserialize)]
struct SeqVarFile {
    name: String,
    init: String,
    shift: String,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Json {
            context: "problem file".to_string(),
            source: e,
        })?;
        Self::from_file(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let file = ProblemFile {
            name: self.name.clone(),
            t: self.t,
            sequence_vars: self
                .seq_vars
                .iter()
                .map(|sv| SeqVarFile {
                    name: sv.name.as_str().to_string(),
                    init: format!("{}", sv.init),
                    shift: format!("{}", sv.rule.step),
                })
                .collect(),
            assumptions: if self.assumptions == Formula::True {
                Vec::new()
            } else {
                self.assumptions
                    .conjuncts()
                    .iter()
                    .map(|c| format!("{c}"))
                    .collect()
            },
            claim: format!("{}", self.claim),
            strategy: self.strategy,
        };
        serde_json::to_string_pretty(&file).expect("problem files serialize")
    }

    fn from_file(file: ProblemFile) -> Result<Self> {
        let invalid = |message: String| Error::InvalidProblem {
            name: file.name.clone(),
            message,
        };
        if file.t < 1 {
            return Err(invalid("base index t must be at least 1".into()));
        }
        let mut seq_vars = Vec::new();
        let mut names: BTreeSet<Var> = BTreeSet::new();
        for sv in &file.sequence_vars {
            let name = Var::new(&sv.name);
            if symbols::is_reserved(&name) {
                return Err(invalid(format!(
                    "sequence variable `{name}` collides with a reserved name"
                )));
            }
            if !names.insert(name.clone()) {
                return Err(invalid(format!("duplicate sequence variable `{name}`")));
            }
            let init = parse_expr(&sv.init)?;
            let step = parse_expr(&sv.shift)?;
            seq_vars.push(SequenceVarDecl {
                name: name.clone(),
                init,
                rule: ShiftRule {
                    seq_var: name,
                    step,
                },
            });
        }

        // vocabulary checks
        for sv in &seq_vars {
            for v in sv.init.vars() {
                let ok = symbols::parse_window_var(&v) == Some(1)
                    || symbols::parse_radical_var(&v).is_some();
                if !ok {
                    return Err(invalid(format!(
                        "init of `{}` may reference only x1 and constants, found `{v}`",
                        sv.name
                    )));
                }
            }
            for v in sv.rule.step.vars() {
                let ok = names.contains(&v)
                    || v.as_str() == symbols::FREE_TERM
                    || v.as_str() == symbols::SHIFTED_FREE_TERM
                    || symbols::parse_radical_var(&v).is_some();
                if !ok {
                    return Err(invalid(format!(
                        "shift of `{}` references undeclared symbol `{v}`",
                        sv.name
                    )));
                }
            }
        }

        let check_vocab = |f: &Formula, what: &str, allow_shift_token: bool| -> Result<()> {
            for v in f.vars() {
                let ok = names.contains(&v)
                    || v.as_str() == symbols::FREE_TERM
                    || (allow_shift_token && v.as_str() == symbols::SHIFTED_FREE_TERM)
                    || symbols::parse_radical_var(&v).is_some();
                if !ok {
                    return Err(invalid(format!(
                        "{what} references undeclared symbol `{v}`"
                    )));
                }
            }
            Ok(())
        };

        let mut assumption_list = Vec::new();
        for a in &file.assumptions {
            assumption_list.push(parse_relation_atom(a)?);
        }
        let assumptions = Formula::and(assumption_list);
        check_vocab(&assumptions, "assumption", true)?;

        let claim = parse_relation_atom(&file.claim)?;
        check_vocab(&claim, "claim", false)?;

        Ok(ProblemSpec {
            name: file.name,
            t: file.t,
            seq_vars,
            assumptions,
            claim,
            strategy: file.strategy,
        })
    }

    pub fn shift_map(&self) -> ShiftMap {
        let rules: Vec<ShiftRule> = self.seq_vars.iter().map(|sv| sv.rule.clone()).collect();
        ShiftMap::new(&rules)
    }

    pub fn seq_var_names(&self) -> BTreeSet<Var> {
        self.seq_vars.iter().map(|sv| sv.name.clone()).collect()
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem {} (t = {}, strategy {})", self.name, self.t, self.strategy)?;
        for sv in &self.seq_vars {
            writeln!(f, "  {}: init {}, step {}", sv.name, sv.init, sv.rule.step)?;
        }
        writeln!(f, "  assume {}", self.assumptions)?;
        write!(f, "  claim  {}", self.claim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PRODUCT: &str = r#"{
        "name": "product_le_one",
        "t": 1,
        "sequence_vars": [
            { "name": "X", "init": "1",  "shift": "X + 1" },
            { "name": "Y", "init": "x1", "shift": "Y + s(x)" },
            { "name": "Z", "init": "x1", "shift": "Z * s(x)" }
        ],
        "assumptions": ["x > 0", "X = Y"],
        "claim": "Z <= 1",
        "strategy": "bdc"
    }"#;

    #[test]
    fn parses_the_product_problem() {
        let p = ProblemSpec::from_json(PRODUCT).unwrap();
        assert_eq!(p.name, "product_le_one");
        assert_eq!(p.t, 1);
        assert_eq!(p.seq_vars.len(), 3);
        assert_eq!(p.strategy, Strategy::Bdc);
        assert_eq!(p.assumptions.conjuncts().len(), 2);
    }

    #[test]
    fn round_trips_through_json() {
        let p = ProblemSpec::from_json(PRODUCT).unwrap();
        let q = ProblemSpec::from_json(&p.to_json()).unwrap();
        assert_eq!(p.claim, q.claim);
        assert_eq!(p.assumptions, q.assumptions);
        assert_eq!(p.seq_vars.len(), q.seq_vars.len());
        for (a, b) in p.seq_vars.iter().zip(&q.seq_vars) {
            assert_eq!(a.init, b.init);
            assert_eq!(a.rule.step, b.rule.step);
        }
    }

    #[test]
    fn rejects_bad_problems() {
        let bad_t = PRODUCT.replace("\"t\": 1", "\"t\": 0");
        assert!(ProblemSpec::from_json(&bad_t).is_err());

        let reserved = PRODUCT.replace("\"name\": \"X\"", "\"name\": \"x_s1\"");
        assert!(ProblemSpec::from_json(&reserved).is_err());

        let undeclared = PRODUCT.replace("\"claim\": \"Z <= 1\"", "\"claim\": \"W <= 1\"");
        assert!(ProblemSpec::from_json(&undeclared).is_err());

        let shift_in_claim = PRODUCT.replace("\"claim\": \"Z <= 1\"", "\"claim\": \"s(x) <= 1\"");
        assert!(ProblemSpec::from_json(&shift_in_claim).is_err());

        let bad_init = PRODUCT.replace("\"init\": \"1\"", "\"init\": \"x2\"");
        assert!(ProblemSpec::from_json(&bad_init).is_err());
    }
}
