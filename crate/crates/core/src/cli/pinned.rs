use std::fmt;

use serde::Serialize;

use crate::analysis::{check_uniform_matroid, denef_series};
use crate::diffalg::{DiffMonomial, Var};
use crate::error::{Error, Result};
use crate::initial::{initial_part, initial_part_hu_gao};
use crate::parse::{parse_natset, parse_poly};
use crate::series::rat;
use crate::solver::{
    check_basis, solve_diff_ideal, solve_system, CandidateUniverse, SolutionReport,
};
use crate::tropical::{tropicalize, NatSet, TropDiffPolynomial, TropValue};

/// One reference value recomputed by the library.
#[derive(Clone, Debug, Serialize)]
pub struct PinnedCheck {
    pub name: &'static str,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

impl fmt::Display for PinnedCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            write!(f, "ok       {}: {}", self.name, self.observed)
        } else {
            write!(
                f,
                "MISMATCH {}: expected {}, observed {}",
                self.name, self.expected, self.observed
            )
        }
    }
}

fn check(name: &'static str, expected: impl Into<String>, observed: Result<String>) -> PinnedCheck {
    let expected = expected.into();
    let observed = observed.unwrap_or_else(|e| format!("error: {e}"));
    PinnedCheck {
        name,
        ok: observed == expected,
        expected,
        observed,
    }
}

fn set(text: &str) -> NatSet {
    parse_natset(text).expect("pinned set parses")
}

fn initial_text(poly: &str, s: &[NatSet]) -> Result<String> {
    Ok(initial_part(&parse_poly(poly, 32)?, s)?.to_string())
}

fn sets_text(r: &SolutionReport) -> String {
    let parts: Vec<String> = r.solutions.iter().map(|s| s[0].to_string()).collect();
    parts.join(" ")
}

/// Every pinned reference value, in a fixed order.
pub fn pinned_examples() -> Vec<PinnedCheck> {
    let s = set("{0,1,2,3,7,8}");
    let s23 = [set("{2,3}")];
    let u_sec4 = CandidateUniverse::new(1, 3, 3);
    let f = "x(1,0) + x(1,1) + x(1,2)";
    let five = [
        "{}",
        "{}+per(0;3;1,2)",
        "{}+per(0;3;0,2)",
        "{}+per(0;3;0,1)",
        "{}+per(0;1;0)",
    ];
    let mut five_sets: Vec<NatSet> = five.iter().map(|t| set(t)).collect();
    five_sets.sort();
    let five_text = five_sets
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");

    vec![
        check(
            "Val_S(4) for S = {0,1,2,3,7,8}",
            "3",
            Ok(s.val_at(4).to_string()),
        ),
        check(
            "Val_S(9) for S = {0,1,2,3,7,8}",
            "∞",
            Ok(s.val_at(9).to_string()),
        ),
        check(
            "trop(t*x(1,2)^3*x(2,3) + (1+t^2)*x(1,3)^2)",
            "min{1+3x12+x23, 2x13}",
            parse_poly("t*x(1,2)^3*x(2,3) + (1+t^2)*x(1,3)^2", 32)
                .and_then(|p| tropicalize(&p))
                .map(|t| t.to_string()),
        ),
        check(
            "solutions of x12 ⊕ 2⊙x10 ⊕ 1 over T_max = 4, p_max = 3 are 2 ∉ S, 3 ∈ S",
            "true",
            (|| {
                let phi = TropDiffPolynomial::new(1)
                    .with_term(DiffMonomial::var(Var::new(1, 2)), TropValue::Finite(0))
                    .with_term(DiffMonomial::var(Var::new(1, 0)), TropValue::Finite(2))
                    .with_term(DiffMonomial::one(), TropValue::Finite(1));
                let u = CandidateUniverse::new(1, 4, 3);
                let r = solve_system(&[phi], u)?;
                let expected: Vec<Vec<NatSet>> = u
                    .tuples()
                    .into_iter()
                    .filter(|s| !s[0].contains(2) && s[0].contains(3))
                    .collect();
                Ok((r.solutions == expected && !expected.is_empty()).to_string())
            })(),
        ),
        check(
            "In_{2,3}(t*x(1,1) + t^2*x(1,3) + t^3)",
            "x(1,1) + x(1,3)",
            initial_text("t*x(1,1) + t^2*x(1,3) + t^3", &s23),
        ),
        check(
            "Hu-Gao initial part of t*x(1,1) + t^2*x(1,3) + t^3 at {2,3}",
            "t*x(1,1) + t^2*x(1,3)",
            parse_poly("t*x(1,1) + t^2*x(1,3) + t^3", 32)
                .and_then(|p| initial_part_hu_gao(&p, &s23))
                .map(|p| p.to_string()),
        ),
        check(
            "In_{2,3} of the derivative of t*x(1,1) + t^2*x(1,3) + t^3",
            "x(1,1) + 2*x(1,3)",
            parse_poly("t*x(1,1) + t^2*x(1,3) + t^3", 32)
                .and_then(|p| initial_part(&p.derive(1), &s23))
                .map(|p| p.to_string()),
        ),
        check(
            "In_{1,2,3}(t*x(1,4) + t^2*x(1,5))",
            "0",
            initial_text("t*x(1,4) + t^2*x(1,5)", &[set("{1,2,3}")]),
        ),
        check(
            "supports of solutions of x + x' + x'' = 0 and its derivatives, K = 9",
            five_text,
            parse_poly(f, 32)
                .and_then(|p| parse_poly("x(1,0) - x(1,3)", 32).map(|g| vec![p, g]))
                .and_then(|g| solve_diff_ideal(&g, 9, u_sec4))
                .map(|r| sets_text(&r)),
        ),
        check(
            "{x + x' + x'', x - x'''} is a basis over T_max = 3, p_max = 3, K = 9",
            "true",
            (|| {
                let f = parse_poly(f, 32)?;
                let g = parse_poly("x(1,0) - x(1,3)", 32)?;
                let reference = SolutionReport::from_tuples(
                    u_sec4,
                    five_sets.iter().map(|s| vec![s.clone()]).collect(),
                );
                Ok(check_basis(&[f, g], &reference, 9, u_sec4)?
                    .is_basis
                    .to_string())
            })(),
        ),
        check(
            "{x + x' + x''} alone is not a basis, K = 9",
            "false",
            (|| {
                let f = parse_poly(f, 32)?;
                let reference = SolutionReport::from_tuples(
                    u_sec4,
                    five_sets.iter().map(|s| vec![s.clone()]).collect(),
                );
                Ok(check_basis(&[f], &reference, 9, u_sec4)?
                    .is_basis
                    .to_string())
            })(),
        ),
        check(
            "band matrix minors are nonzero for 2 <= r <= 8",
            "true",
            (2..=8)
                .map(check_uniform_matroid)
                .collect::<Result<Vec<_>>>()
                .map(|cs| cs.iter().all(|c| c.uniform).to_string()),
        ),
        check(
            "Denef-Lipshitz series with phi2 = 2, N = 5",
            "natural pole at k = 2",
            match denef_series(&rat(2), 5) {
                Err(Error::NaturalPole { k }) => Ok(format!("natural pole at k = {k}")),
                Err(e) => Err(e),
                Ok(s) => Ok(s.to_string()),
            },
        ),
        check(
            "Denef-Lipshitz series with phi2 = 7, N = 5 has full support",
            "5",
            denef_series(&rat(7), 5).map(|s| s.support().indices.len().to_string()),
        ),
    ]
}
