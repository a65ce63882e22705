//! Linear-ideal computations: the `Val` embedding, the band matrix and its
//! matroid, Bergman-fan membership for `U_{2,r+1}`, `supp_min` and the `q_ab`
//! coverage audit, and the Denef–Lipshitz series.

mod denef;
mod matroid;
mod suppmin;
mod unipoly;

use std::fmt;

use serde::{Serialize, Serializer};

pub use denef::denef_series;
pub use matroid::{
    band_matrix, check_uniform_matroid, determinant, MatroidCheck, Minor, PolyMatrix,
};
pub use suppmin::{
    coverage_audit, generic_ideal_element, qab_vector, qab_witness_search, supp_min,
    supp_min_generic, suppmin_stabilization, CoverageReport, GenericLinearForm, PairCoverage,
    QabWitness, Stabilization, StabilizationOutcome,
};
pub use unipoly::UniPoly;

use crate::series::{fmt_rational, Rational};
use crate::tropical::{NatSet, TropValue};

/// An element of `R ∪ {∞}` with exact rational values; `∞` is largest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropReal {
    Finite(Rational),
    Infinite,
}

impl From<TropValue> for TropReal {
    fn from(v: TropValue) -> Self {
        match v {
            TropValue::Finite(n) => TropReal::Finite(Rational::from_integer(n.into())),
            TropValue::Infinite => TropReal::Infinite,
        }
    }
}

impl From<i64> for TropReal {
    fn from(n: i64) -> Self {
        TropReal::Finite(Rational::from_integer(n.into()))
    }
}

impl fmt::Display for TropReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropReal::Finite(q) => write!(f, "{}", fmt_rational(q)),
            TropReal::Infinite => write!(f, "∞"),
        }
    }
}

impl Serialize for TropReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A point of `T^{m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropVector(pub Vec<TropReal>);

impl fmt::Display for TropVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `(Val_{S_i}(j) : 1 ≤ i ≤ n, 0 ≤ j ≤ r)`, grouped by `i`.
pub fn val_embed(s: &[NatSet], r: usize) -> TropVector {
    TropVector(
        s.iter()
            .flat_map(|si| (0..=r as u64).map(move |j| si.val_at(j).into()))
            .collect(),
    )
}

/// Membership in the Bergman fan of `U_{2,m}`: every entry equals some `b`
/// except at most one, which is `≥ b`.
pub fn bergman_membership_u2(v: &TropVector) -> bool {
    let Some(min) = v.0.iter().min() else {
        return true;
    };
    v.0.iter().filter(|x| *x == min).count() + 1 >= v.0.len()
}
