use std::fmt;
use std::ops::{Add, Mul};

use serde::{Serialize, Serializer};

/// An element of the semiring `(Z≥0 ∪ {∞}, min, +)`.
///
/// The derived order puts every finite value below `Infinite`, so `min`
/// is tropical addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropValue {
    Finite(u64),
    Infinite,
}

impl TropValue {
    pub const ZERO: TropValue = TropValue::Finite(0);

    /// `a ⊕ b = min(a, b)`.
    pub fn oplus(self, other: TropValue) -> TropValue {
        self.min(other)
    }

    /// `a ⊙ b = a + b`, absorbing at `∞`.
    pub fn odot(self, other: TropValue) -> TropValue {
        match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => TropValue::Finite(a + b),
            _ => TropValue::Infinite,
        }
    }

    /// `e·v` for a natural multiplicity `e`, with `0·∞ = 0`.
    pub fn times(self, e: u64) -> TropValue {
        match self {
            _ if e == 0 => TropValue::ZERO,
            TropValue::Finite(v) => TropValue::Finite(v * e),
            TropValue::Infinite => TropValue::Infinite,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == TropValue::Infinite
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            TropValue::Finite(v) => Some(v),
            TropValue::Infinite => None,
        }
    }
}

impl From<u64> for TropValue {
    fn from(v: u64) -> Self {
        TropValue::Finite(v)
    }
}

impl Add for TropValue {
    type Output = TropValue;
    fn add(self, rhs: TropValue) -> TropValue {
        self.oplus(rhs)
    }
}

impl Mul for TropValue {
    type Output = TropValue;
    fn mul(self, rhs: TropValue) -> TropValue {
        self.odot(rhs)
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::Finite(v) => write!(f, "{v}"),
            TropValue::Infinite => write!(f, "∞"),
        }
    }
}

impl Serialize for TropValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            TropValue::Finite(v) => s.serialize_u64(*v),
            TropValue::Infinite => s.serialize_str("∞"),
        }
    }
}
