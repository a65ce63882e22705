//! Truncated formal power series in `t` with exact rational coefficients.
//!
//! A [`TruncatedSeries`] is either *exact* (a polynomial in `t`, every
//! coefficient known) or known only modulo `t^N`. Binary operations on
//! truncated operands return the minimum of the operands' orders; exact
//! operands never limit precision. Differentiation of a series known modulo
//! `t^N` yields one known modulo `t^(N-j)`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::tropical::TropValue;

/// Elements of the coefficient field, fixed to the rationals.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den` as a [`Rational`]. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The valuation of a series together with its certification status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// Index of the first nonzero coefficient.
    Finite(u64),
    /// The series is exactly zero.
    Infinite,
    /// Every known coefficient vanishes; the true valuation is at least `window`.
    ZeroModTruncation { window: usize },
}

impl Valuation {
    /// The valuation as a tropical value; a zero-modulo-truncation series maps to `∞`.
    pub fn value(self) -> TropValue {
        match self {
            Valuation::Finite(v) => TropValue::Finite(v),
            Valuation::Infinite | Valuation::ZeroModTruncation { .. } => TropValue::Infinite,
        }
    }

    pub fn is_certified(self) -> bool {
        !matches!(self, Valuation::ZeroModTruncation { .. })
    }
}

/// Support of a series as observed inside its window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub indices: BTreeSet<u64>,
    /// Number of coefficients inspected.
    pub window: usize,
    /// Whether the support is the true support (the series is exact).
    pub exact: bool,
}

/// Result of comparing two series that may carry truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesEquality {
    Equal,
    /// The series agree on every coefficient both know, but at least one is truncated.
    EqualUpToTruncation,
    NotEqual,
}

/// An element of `Q[[t]]`, stored as its first `trunc_order` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
    exact: bool,
}

impl TruncatedSeries {
    /// A series known modulo `t^trunc_order`. Missing coefficients are zero,
    /// surplus ones are dropped.
    pub fn new(mut coeffs: Vec<Rational>, trunc_order: usize) -> Self {
        assert!(trunc_order >= 1, "truncation order must be at least 1");
        coeffs.resize(trunc_order, Rational::zero());
        TruncatedSeries {
            coeffs,
            exact: false,
        }
    }

    /// Truncated series from integer coefficients.
    pub fn from_ints(coeffs: &[i64], trunc_order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), trunc_order)
    }

    /// The polynomial `Σ coeffs[i] t^i`, known exactly.
    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        let mut s = TruncatedSeries {
            coeffs,
            exact: true,
        };
        s.trim();
        s
    }

    /// Exact polynomial from integer coefficients.
    pub fn poly_ints(coeffs: &[i64]) -> Self {
        Self::polynomial(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self::polynomial(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::polynomial(vec![c])
    }

    /// The exact monomial `c·t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::polynomial(coeffs)
    }

    /// Forget everything at and beyond `t^n`. Never increases precision.
    pub fn truncate(&self, n: usize) -> Self {
        let n = match self.precision() {
            Some(p) => n.min(p),
            None => n,
        };
        let mut coeffs: Vec<Rational> = (0..n).map(|i| self.get(i)).collect();
        coeffs.truncate(n.max(1));
        Self::new(coeffs, n.max(1))
    }

    fn trim(&mut self) {
        if self.exact {
            while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(Zero::is_zero) {
                self.coeffs.pop();
            }
            if self.coeffs.is_empty() {
                self.coeffs.push(Rational::zero());
            }
        }
    }

    /// Number of stored coefficients. For a truncated series this is `N` in
    /// "known modulo `t^N`".
    pub fn trunc_order(&self) -> usize {
        self.coeffs.len()
    }

    /// `None` for exact series, `Some(N)` for series known modulo `t^N`.
    pub fn precision(&self) -> Option<usize> {
        if self.exact {
            None
        } else {
            Some(self.coeffs.len())
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, or `None` when it lies beyond a truncation window.
    pub fn coeff(&self, i: usize) -> Option<Rational> {
        if i < self.coeffs.len() {
            Some(self.coeffs[i].clone())
        } else if self.exact {
            Some(Rational::zero())
        } else {
            None
        }
    }

    // Coefficient with zero beyond the stored range; callers keep `i` inside
    // the honest window.
    fn get(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    fn joint_precision(&self, other: &Self) -> Option<usize> {
        match (self.precision(), other.precision()) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => Some(a.min(b)),
        }
    }

    fn build(coeffs: Vec<Rational>, precision: Option<usize>) -> Self {
        match precision {
            None => Self::polynomial(coeffs),
            Some(n) => Self::new(coeffs, n),
        }
    }

    /// Exactly zero.
    pub fn is_zero(&self) -> bool {
        self.exact && self.coeffs.iter().all(Zero::is_zero)
    }

    /// Truncated and every known coefficient vanishes.
    pub fn is_zero_mod_truncation(&self) -> bool {
        !self.exact && self.coeffs.iter().all(Zero::is_zero)
    }

    /// Every known coefficient vanishes (exactly zero or zero modulo truncation).
    pub fn vanishes(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::build(
            self.coeffs.iter().map(|a| a * c).collect(),
            self.precision(),
        )
    }

    /// `j`-fold formal derivative. The coefficient of `t^i` in the result is
    /// `(i+j)!/i! · a_{i+j}`; the truncation order drops to `max(1, N - j)`.
    pub fn derive(&self, j: usize) -> Self {
        let n = self.coeffs.len();
        let len = n.saturating_sub(j).max(1);
        let coeffs = (0..len)
            .map(|i| {
                if i + j < n {
                    falling_factorial(i + j, j) * &self.coeffs[i + j]
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Self::build(coeffs, self.precision().map(|_| len))
    }

    /// `ν(a)`: index of the first nonzero coefficient.
    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Valuation::Finite(i as u64),
            None if self.exact => Valuation::Infinite,
            None => Valuation::ZeroModTruncation {
                window: self.coeffs.len(),
            },
        }
    }

    /// Coefficient at the valuation: the residue of `a·t^{-ν(a)}`.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn support(&self) -> Support {
        Support {
            indices: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i as u64)
                .collect(),
            window: self.coeffs.len(),
            exact: self.exact,
        }
    }

    /// Multiplication by `t^k`, `k` possibly negative. A truncated series
    /// known modulo `t^N` becomes known modulo `t^(N+k)`.
    pub fn t_shift(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            let k = k as usize;
            let mut coeffs = vec![Rational::zero(); k];
            coeffs.extend(self.coeffs.iter().cloned());
            return Ok(Self::build(coeffs, self.precision().map(|n| n + k)));
        }
        let drop = k.unsigned_abs() as usize;
        let known = self.coeffs.len().min(drop);
        if self.coeffs[..known].iter().any(|c| !c.is_zero()) {
            return Err(Error::NegativePowerOfT { shift: drop as u64 });
        }
        if self.exact {
            return Ok(Self::polynomial(
                self.coeffs.iter().skip(drop).cloned().collect(),
            ));
        }
        if self.coeffs.len() <= drop {
            return Err(Error::NegativePowerOfT { shift: drop as u64 });
        }
        let coeffs: Vec<Rational> = self.coeffs[drop..].to_vec();
        let n = coeffs.len();
        Ok(Self::new(coeffs, n))
    }

    /// Value at `t = 1`; only defined for exact series.
    pub fn eval_at_one(&self) -> Option<Rational> {
        self.exact
            .then(|| self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c))
    }

    /// Compare coefficients on the common window.
    pub fn compare(&self, other: &Self) -> SeriesEquality {
        let window = match self.joint_precision(other) {
            None => self.coeffs.len().max(other.coeffs.len()),
            Some(n) => n,
        };
        let agree = (0..window).all(|i| self.get(i) == other.get(i));
        match (agree, self.exact && other.exact) {
            (false, _) => SeriesEquality::NotEqual,
            (true, true) => SeriesEquality::Equal,
            (true, false) => SeriesEquality::EqualUpToTruncation,
        }
    }

    /// Whether the two series agree on every coefficient both of them know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.compare(other) != SeriesEquality::NotEqual
    }
}

/// `n!/(n-j)!` as a rational.
fn falling_factorial(n: usize, j: usize) -> Rational {
    if j > n {
        return Rational::zero();
    }
    let prod: BigInt = ((n - j + 1)..=n).map(BigInt::from).product();
    Rational::from_integer(prod)
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let precision = self.joint_precision(rhs);
        let len = precision.unwrap_or(self.coeffs.len().max(rhs.coeffs.len()));
        TruncatedSeries::build(
            (0..len).map(|i| self.get(i) + rhs.get(i)).collect(),
            precision,
        )
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::build(self.coeffs.iter().map(|c| -c).collect(), self.precision())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Cauchy product, truncated at the smaller order.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let precision = self.joint_precision(rhs);
        let len = precision.unwrap_or(self.coeffs.len() + rhs.coeffs.len() - 1);
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries::build(out, precision)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        -&self
    }
}

/// Writes a rational so that it parses back as a `rational` token (or a
/// parenthesised quotient).
pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Whether `c` is the leading printed coefficient and negative.
fn first_negative(c: &Rational, i: usize, coeffs: &[Rational]) -> bool {
    c.is_negative() && coeffs[..i].iter().all(Zero::is_zero)
}

impl fmt::Display for TruncatedSeries {
    /// `1 + 2*t - 1/3*t^4`; truncated series end in `+ O(t^N)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let t = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            match (mag.is_one(), i) {
                (_, 0) => write!(f, "{}", fmt_rational(&mag))?,
                (true, _) if first_negative(c, i, &self.coeffs) => write!(f, "1*{t}")?,
                (true, _) => write!(f, "{t}")?,
                (false, _) => write!(f, "{}*{t}", fmt_rational(&mag))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if !self.exact {
            write!(f, " + O(t^{})", self.coeffs.len())?;
        }
        Ok(())
    }
}
