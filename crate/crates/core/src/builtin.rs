//! Ready-made problems: the worked examples this project grew out of.
//!
//! `X` simulates the index n, `Y` the running sum of the free terms and
//! `Z`-like variables the quantity the claim is about. The common
//! assumptions `x > 0` and `X = Y` say the terms are positive and sum
//! to n.

use crate::problem::ProblemSpec;

fn must(json: &str) -> ProblemSpec {
    ProblemSpec::from_json(json).expect("built-in problems are valid")
}

/// If positive x_1..x_n sum to n, their product is at most 1.
pub fn product_le_one() -> ProblemSpec {
    must(
        r#"{
  "name": "product_le_one",
  "t": 1,
  "sequence_vars": [
    { "name": "X", "init": "1",  "shift": "X + 1" },
    { "name": "Y", "init": "x1", "shift": "Y + s(x)" },
    { "name": "Z", "init": "x1", "shift": "Z * s(x)" }
  ],
  "assumptions": ["x > 0", "X = Y"],
  "claim": "Z <= 1",
  "strategy": "guard"
}"#,
    )
}

/// Sum of (x^4+x^2+1)/(x^2+x+1) over the terms is at least n.
pub fn ratio_sum_ge_n() -> ProblemSpec {
    must(
        r#"{
  "name": "ratio_sum_ge_n",
  "t": 1,
  "sequence_vars": [
    { "name": "X",  "init": "1",  "shift": "X + 1" },
    { "name": "Y",  "init": "x1", "shift": "Y + s(x)" },
    { "name": "Zh", "init": "(x1^4 + x1^2 + 1)/(x1^2 + x1 + 1)",
      "shift": "Zh + (s(x)^4 + s(x)^2 + 1)/(s(x)^2 + s(x) + 1)" }
  ],
  "assumptions": ["x > 0", "X = Y"],
  "claim": "Zh >= X",
  "strategy": "guard"
}"#,
    )
}

/// The (x-1)-weighted variant of the same sum is non-negative.
pub fn ratio_sum_centered() -> ProblemSpec {
    must(
        r#"{
  "name": "ratio_sum_centered",
  "t": 1,
  "sequence_vars": [
    { "name": "X",  "init": "1",  "shift": "X + 1" },
    { "name": "Y",  "init": "x1", "shift": "Y + s(x)" },
    { "name": "Zt", "init": "(x1 - 1)*(x1^4 + x1^2 + 1)/(x1^2 + x1 + 1)",
      "shift": "Zt + (s(x) - 1)*(s(x)^4 + s(x)^2 + 1)/(s(x)^2 + s(x) + 1)" }
  ],
  "assumptions": ["x > 0", "X = Y"],
  "claim": "Zt >= 0",
  "strategy": "guard"
}"#,
    )
}

/// The x^(j-1)(x-1)-weighted sum for a fixed power j.
pub fn ratio_sum_power(j: u32) -> ProblemSpec {
    assert!(j >= 1, "the power j must be positive");
    must(&format!(
        r#"{{
  "name": "ratio_sum_power_j{j}",
  "t": 1,
  "sequence_vars": [
    {{ "name": "X",  "init": "1",  "shift": "X + 1" }},
    {{ "name": "Y",  "init": "x1", "shift": "Y + s(x)" }},
    {{ "name": "Zb", "init": "x1^{e}*(x1 - 1)*(x1^4 + x1^2 + 1)/(x1^2 + x1 + 1)",
      "shift": "Zb + s(x)^{e}*(s(x) - 1)*(s(x)^4 + s(x)^2 + 1)/(s(x)^2 + s(x) + 1)" }}
  ],
  "assumptions": ["x > 0", "X = Y"],
  "claim": "Zb >= 0",
  "strategy": "guard"
}}"#,
        e = j - 1,
    ))
}

/// Sum of the reciprocals of the terms is at least n. Unlike the ratio
/// sums, the `1/s(x)` step does not cancel, so the queries genuinely
/// contain rational atoms and the denominator strategies differ.
pub fn reciprocal_sum_ge_n() -> ProblemSpec {
    must(
        r#"{
  "name": "reciprocal_sum_ge_n",
  "t": 1,
  "sequence_vars": [
    { "name": "X", "init": "1",    "shift": "X + 1" },
    { "name": "Y", "init": "x1",   "shift": "Y + s(x)" },
    { "name": "H", "init": "1/x1", "shift": "H + 1/s(x)" }
  ],
  "assumptions": ["x > 0", "X = Y"],
  "claim": "H >= X",
  "strategy": "guard"
}"#,
    )
}

/// Powers of the golden ratio stay at least 1; the radical makes the
/// degree of the encoding variable grow with the depth.
pub fn golden_ratio_growth() -> ProblemSpec {
    must(
        r#"{
  "name": "golden_ratio_growth",
  "t": 1,
  "sequence_vars": [
    { "name": "G", "init": "(1 + sqrt(5))/2", "shift": "G * (1 + sqrt(5))/2" }
  ],
  "assumptions": [],
  "claim": "G >= 1",
  "strategy": "guard"
}"#,
    )
}

/// Every bundled problem, fixed-power instances for j = 1..5 included.
pub fn all() -> Vec<ProblemSpec> {
    let mut out = vec![
        product_le_one(),
        ratio_sum_ge_n(),
        ratio_sum_centered(),
    ];
    out.extend((1..=5).map(ratio_sum_power));
    out.push(reciprocal_sum_ge_n());
    out.push(golden_ratio_growth());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_problems_parse_and_round_trip() {
        let problems = all();
        assert_eq!(problems.len(), 10);
        for p in &problems {
            let again = ProblemSpec::from_json(&p.to_json()).unwrap();
            assert_eq!(p.claim, again.claim, "{}", p.name);
            assert_eq!(p.assumptions, again.assumptions, "{}", p.name);
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<String> = all().into_iter().map(|p| p.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 10);
    }
}
