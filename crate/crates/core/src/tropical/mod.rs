//! Supports, `Val_S`, tropical differential polynomials and their solutions.
//!
//! A tuple `S = (S_1, …, S_n)` of eventually periodic sets plays the role of
//! a point. A tropical differential polynomial `⊕ a_M x^{⊙M}` evaluates at
//! `S` to `min_M (a_M + Σ M_ij · Val_{S_i}(j))`, and `S` solves it when that
//! minimum is attained by two distinct monomials or is `∞`.

mod natset;
mod value;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use natset::NatSet;
pub use value::TropValue;

use crate::diffalg::{DiffMonomial, DiffPolynomial, Var};
use crate::error::{Error, Result};
use crate::series::{TruncatedSeries, Valuation};

/// `⊕_M a_M ⊙ x^{⊙M}` with finite coefficients `a_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropDiffPolynomial {
    n_vars: usize,
    terms: BTreeMap<DiffMonomial, u64>,
}

/// Outcome of testing a point against one tropical polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolutionStatus {
    /// The value is `∞`.
    Infinite,
    /// Two distinct monomials attain the minimum.
    Tie {
        value: u64,
        first: DiffMonomial,
        second: DiffMonomial,
    },
    /// A single monomial attains the minimum: not a solution.
    Unique { value: u64, minimizer: DiffMonomial },
}

impl SolutionStatus {
    pub fn is_solution(&self) -> bool {
        !matches!(self, SolutionStatus::Unique { .. })
    }

    pub fn value(&self) -> TropValue {
        match self {
            SolutionStatus::Infinite => TropValue::Infinite,
            SolutionStatus::Tie { value, .. } | SolutionStatus::Unique { value, .. } => {
                TropValue::Finite(*value)
            }
        }
    }
}

/// `Val_{S_i}(j)` for the variable `x(i,j)` of a point `S`.
pub fn var_value(s: &[NatSet], v: Var) -> TropValue {
    s[v.i - 1].val_at(v.j as u64)
}

fn check_point(n_vars: usize, s: &[NatSet]) -> Result<()> {
    if s.len() == n_vars {
        Ok(())
    } else {
        Err(Error::VariableCountMismatch {
            expected: n_vars,
            found: s.len(),
        })
    }
}

impl TropDiffPolynomial {
    pub fn new(n_vars: usize) -> Self {
        TropDiffPolynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    /// Add `a ⊙ x^{⊙M}`; a coefficient `∞` is absorbed, a repeated monomial
    /// keeps the smaller coefficient.
    pub fn with_term(mut self, m: DiffMonomial, a: TropValue) -> Self {
        if let TropValue::Finite(a) = a {
            let slot = self.terms.entry(m).or_insert(a);
            *slot = (*slot).min(a);
        }
        self
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, u64)> {
        self.terms.iter().map(|(m, &a)| (m, a))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> usize {
        self.terms
            .keys()
            .map(DiffMonomial::order)
            .max()
            .unwrap_or(0)
    }

    fn term_values<'a>(
        &'a self,
        s: &'a [NatSet],
    ) -> impl Iterator<Item = (&'a DiffMonomial, TropValue)> + 'a {
        self.terms
            .iter()
            .map(move |(m, &a)| (m, TropValue::Finite(a).odot(m.weight(|v| var_value(s, v)))))
    }

    /// `φ(S)`.
    pub fn eval(&self, s: &[NatSet]) -> Result<TropValue> {
        check_point(self.n_vars, s)?;
        Ok(self
            .term_values(s)
            .map(|(_, v)| v)
            .fold(TropValue::Infinite, TropValue::oplus))
    }

    /// Solution test with witnesses.
    pub fn solution_status(&self, s: &[NatSet]) -> Result<SolutionStatus> {
        check_point(self.n_vars, s)?;
        let mut best: Option<(u64, &DiffMonomial)> = None;
        let mut second: Option<&DiffMonomial> = None;
        for (m, v) in self.term_values(s) {
            let TropValue::Finite(v) = v else { continue };
            match best {
                Some((b, _)) if v > b => {}
                Some((b, _)) if v == b => {
                    second.get_or_insert(m);
                }
                _ => {
                    best = Some((v, m));
                    second = None;
                }
            }
        }
        Ok(match (best, second) {
            (None, _) => SolutionStatus::Infinite,
            (Some((value, first)), Some(second)) => SolutionStatus::Tie {
                value,
                first: first.clone(),
                second: second.clone(),
            },
            (Some((value, m)), None) => SolutionStatus::Unique {
                value,
                minimizer: m.clone(),
            },
        })
    }

    pub fn is_solution(&self, s: &[NatSet]) -> Result<bool> {
        Ok(self.solution_status(s)?.is_solution())
    }
}

impl fmt::Display for TropDiffPolynomial {
    /// `min{1+3x12+x23, 2x13}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |m: &DiffMonomial, a: u64| {
            let mut parts: Vec<String> = Vec::new();
            if a != 0 || m.is_one() {
                parts.push(a.to_string());
            }
            for (v, e) in m.iter() {
                parts.push(match e {
                    1 => v.compact(),
                    _ => format!("{e}{}", v.compact()),
                });
            }
            parts.join("+")
        };
        let body: Vec<String> = self.terms.iter().map(|(m, &a)| term(m, a)).collect();
        match body.len() {
            0 => write!(f, "∞"),
            1 => write!(f, "{}", body[0]),
            _ => write!(f, "min{{{}}}", body.join(", ")),
        }
    }
}

impl Serialize for TropDiffPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `trop(P) = ⊕ ν(φ_M) x^{⊙M}`.
pub fn tropicalize(p: &DiffPolynomial) -> Result<TropDiffPolynomial> {
    let mut out = TropDiffPolynomial::new(p.n_vars());
    for (m, c) in p.terms() {
        match c.valuation() {
            Valuation::Finite(v) => out = out.with_term(m.clone(), TropValue::Finite(v)),
            Valuation::Infinite => {}
            Valuation::ZeroModTruncation { .. } => {
                return Err(Error::UncertifiedValuation(m.clone()))
            }
        }
    }
    Ok(out)
}

/// Support of one component of a series tuple, with its observation window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObservedSupport {
    pub set: NatSet,
    /// Coefficients inspected; meaningless when `exact`.
    pub window: usize,
    /// The set is the true support.
    pub exact: bool,
}

impl ObservedSupport {
    /// Whether a candidate set is compatible with the observation.
    pub fn admits(&self, candidate: &NatSet) -> bool {
        if self.exact {
            return candidate == &self.set;
        }
        (0..self.window as u64).all(|n| candidate.contains(n) == self.set.contains(n))
    }
}

/// `trop(φ) = (supp φ_1, …, supp φ_n)` observed inside each window.
pub fn trop_supp(phi: &[TruncatedSeries]) -> Vec<ObservedSupport> {
    phi.iter()
        .map(|s| {
            let sp = s.support();
            ObservedSupport {
                set: NatSet::finite(sp.indices),
                window: sp.window,
                exact: sp.exact,
            }
        })
        .collect()
}
