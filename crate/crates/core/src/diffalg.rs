//! Differential polynomial rings `K[[t]]{x_1..x_n}` and `K{x_1..x_n}`.
//!
//! The variable `x(i,j)` stands for the `j`-th derivative of the `i`-th
//! unknown (`i ≥ 1`). Monomials are sparse exponent maps; the derivation acts
//! on coefficients through [`TruncatedSeries::derive`] and on variables by
//! `d x(i,j) = x(i,j+1)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::{fmt_rational, rat, Rational, SeriesEquality, TruncatedSeries};
use crate::tropical::TropValue;

/// The differential variable `x(i,j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    /// Which unknown, starting at 1.
    pub i: usize,
    /// Derivative order.
    pub j: usize,
}

impl Var {
    pub fn new(i: usize, j: usize) -> Var {
        Var { i, j }
    }

    /// `x12`-style name when both indices are single digits, `x(i,j)` otherwise.
    pub fn compact(&self) -> String {
        if self.i < 10 && self.j < 10 {
            format!("x{}{}", self.i, self.j)
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x({},{})", self.i, self.j)
    }
}

/// `x^M`: a finite product of differential variables with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffMonomial(BTreeMap<Var, u32>);

impl DiffMonomial {
    pub fn one() -> Self {
        DiffMonomial(BTreeMap::new())
    }

    pub fn var(v: Var) -> Self {
        Self::from_pairs([(v, 1)])
    }

    /// Zero exponents are dropped; repeated variables accumulate.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        DiffMonomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    /// Largest derivative order present; 0 for the monomial 1.
    pub fn order(&self) -> usize {
        self.0.keys().map(|v| v.j).max().unwrap_or(0)
    }

    pub fn max_var_index(&self) -> usize {
        self.0.keys().map(|v| v.i).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &DiffMonomial) -> DiffMonomial {
        Self::from_pairs(self.iter().chain(other.iter()))
    }

    /// `d(x^M)` by the Leibniz rule, as `(multiplicity, monomial)` pairs.
    pub fn derive(&self) -> Vec<(u32, DiffMonomial)> {
        self.iter()
            .map(|(v, e)| {
                let mut m = self.0.clone();
                if e == 1 {
                    m.remove(&v);
                } else {
                    m.insert(v, e - 1);
                }
                *m.entry(Var::new(v.i, v.j + 1)).or_insert(0) += 1;
                (e, DiffMonomial(m))
            })
            .collect()
    }

    /// Tropical weight `Σ M_ij · w(i,j)` with `0·∞ = 0`.
    pub fn weight(&self, w: impl Fn(Var) -> TropValue) -> TropValue {
        self.iter().fold(TropValue::ZERO, |acc, (v, e)| {
            acc.odot(w(v).times(e as u64))
        })
    }

    /// `x(1,2)^3*x(2,3)`, or `1`.
    fn fmt_with(&self, name: impl Fn(&Var) -> String, sep: &str) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.iter()
            .map(|(v, e)| match e {
                1 => name(&v),
                _ => format!("{}^{e}", name(&v)),
            })
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// `x12^3*x23` style.
    pub fn compact(&self) -> String {
        self.fmt_with(Var::compact, "*")
    }
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(Var::to_string, "*"))
    }
}

impl Serialize for DiffMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_n(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::VariableCountMismatch { expected, found })
    }
}

/// `P = Σ φ_M x^M` with power-series coefficients.
///
/// Terms whose coefficient is exactly zero are removed. A coefficient that
/// vanishes only modulo its truncation is kept, so that later valuation
/// queries can report it as uncertified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffPolynomial {
    n_vars: usize,
    terms: BTreeMap<DiffMonomial, TruncatedSeries>,
}

impl DiffPolynomial {
    pub fn zero(n_vars: usize) -> Self {
        DiffPolynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: TruncatedSeries) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(DiffMonomial::one(), c);
        p
    }

    /// The polynomial `x(i,j)`; requires `1 ≤ i ≤ n_vars`.
    pub fn var(n_vars: usize, i: usize, j: usize) -> Result<Self> {
        Self::from_terms(
            n_vars,
            [(DiffMonomial::var(Var::new(i, j)), TruncatedSeries::one())],
        )
    }

    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (DiffMonomial, TruncatedSeries)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n_vars);
        for (m, c) in terms {
            if m.iter().any(|(v, _)| v.i == 0 || v.i > n_vars) {
                return Err(Error::VariableCountMismatch {
                    expected: n_vars,
                    found: m.max_var_index(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: DiffMonomial, c: TruncatedSeries) {
        let merged = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(m, merged);
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// The same polynomial regarded in a ring with more unknowns.
    pub fn with_n_vars(&self, n_vars: usize) -> Result<Self> {
        let needed = self.max_var_index();
        if needed > n_vars {
            return Err(Error::VariableCountMismatch {
                expected: n_vars,
                found: needed,
            });
        }
        Ok(DiffPolynomial {
            n_vars,
            terms: self.terms.clone(),
        })
    }

    pub fn max_var_index(&self) -> usize {
        self.terms
            .keys()
            .map(DiffMonomial::max_var_index)
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &TruncatedSeries)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &DiffMonomial) -> Option<&TruncatedSeries> {
        self.terms.get(m)
    }

    /// Number of terms. Emptiness is [`Self::is_zero`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> usize {
        self.terms
            .keys()
            .map(DiffMonomial::order)
            .max()
            .unwrap_or(0)
    }

    /// Some coefficient vanishes modulo its truncation.
    pub fn has_uncertified(&self) -> bool {
        self.terms
            .values()
            .any(TruncatedSeries::is_zero_mod_truncation)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_n(self.n_vars, other.n_vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        DiffPolynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_n(self.n_vars, other.n_vars)?;
        let mut out = Self::zero(self.n_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiply every coefficient by a series.
    pub fn scale(&self, c: &TruncatedSeries) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// `c · x^M · P`.
    pub fn mul_term(&self, c: &TruncatedSeries, m: &DiffMonomial) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m1, a) in &self.terms {
            out.add_term(m1.mul(m), a * c);
        }
        out
    }

    /// `k`-fold derivation.
    pub fn derive(&self, k: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derive_once();
        }
        p
    }

    fn derive_once(&self) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.derive(1));
            for (e, dm) in m.derive() {
                out.add_term(dm, c.scale(&rat(e as i64)));
            }
        }
        out
    }

    /// Substitute `x(i,j) ↦ d^j φ_i`.
    ///
    /// The result carries the honest order: a truncated `φ_i` known modulo
    /// `t^N` contributes order `N - j` through `x(i,j)`.
    pub fn evaluate(&self, phi: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        check_n(self.n_vars, phi.len())?;
        let mut derivs: BTreeMap<Var, TruncatedSeries> = BTreeMap::new();
        for m in self.terms.keys() {
            for (v, _) in m.iter() {
                if derivs.contains_key(&v) {
                    continue;
                }
                let base = &phi[v.i - 1];
                if base.precision().is_some_and(|n| n <= v.j) {
                    return Err(Error::EmptyPrecision);
                }
                derivs.insert(v, base.derive(v.j));
            }
        }
        let mut total = TruncatedSeries::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.iter() {
                for _ in 0..e {
                    term = &term * &derivs[&v];
                }
            }
            total = &total + &term;
        }
        Ok(total)
    }

    /// Replace `x(i,j)` by `t^{w(i,j)} x(i,j)`. Monomials containing a
    /// variable of infinite weight are deleted.
    pub fn scale_vars(&self, w: &BTreeMap<Var, TropValue>) -> Result<Self> {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let mut total = TropValue::ZERO;
            for (v, e) in m.iter() {
                let wv = *w.get(&v).ok_or(Error::MissingWeight(v))?;
                total = total.odot(wv.times(e as u64));
            }
            if let TropValue::Finite(k) = total {
                out.add_term(m.clone(), c.t_shift(k as i64)?);
            }
        }
        Ok(out)
    }

    /// Apply a fallible map to every coefficient.
    pub fn try_map_coefficients(
        &self,
        mut f: impl FnMut(&DiffMonomial, &TruncatedSeries) -> Result<TruncatedSeries>,
    ) -> Result<Self> {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(m, c)?);
        }
        Ok(out)
    }

    /// Coefficient-wise comparison; truncated coefficients can only be
    /// reported equal up to truncation.
    pub fn compare(&self, other: &Self) -> SeriesEquality {
        if self.n_vars != other.n_vars {
            return SeriesEquality::NotEqual;
        }
        let zero = TruncatedSeries::zero();
        let mut result = SeriesEquality::Equal;
        for m in self.terms.keys().chain(other.terms.keys()) {
            let a = self.terms.get(m).unwrap_or(&zero);
            let b = other.terms.get(m).unwrap_or(&zero);
            match a.compare(b) {
                SeriesEquality::NotEqual => return SeriesEquality::NotEqual,
                SeriesEquality::EqualUpToTruncation => result = SeriesEquality::EqualUpToTruncation,
                SeriesEquality::Equal => {}
            }
        }
        result
    }

    /// Value after setting `t = 1`; `None` if some coefficient is truncated.
    pub fn at_t_equals_one(&self) -> Option<ResiduePolynomial> {
        let mut out = ResiduePolynomial::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.eval_at_one()?);
        }
        Some(out)
    }
}

/// Collects `(sign, magnitude text)` for one term and joins terms.
fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (bool, String)> + 'a,
) -> fmt::Result {
    let mut first = true;
    for (negative, body) in terms {
        match (first, negative) {
            // The grammar only allows a leading minus on a number.
            (true, true) if body.starts_with(|c: char| c.is_ascii_digit()) => write!(f, "-{body}")?,
            (true, true) => write!(f, "-1*{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn with_constant_last<V>(
    terms: &BTreeMap<DiffMonomial, V>,
) -> impl Iterator<Item = (&DiffMonomial, &V)> {
    terms
        .iter()
        .filter(|(m, _)| !m.is_one())
        .chain(terms.iter().filter(|(m, _)| m.is_one()))
}

fn series_term(c: &TruncatedSeries, m: &DiffMonomial) -> (bool, String) {
    let nonzero: Vec<usize> = (0..c.trunc_order())
        .filter(|&i| !c.coeffs()[i].is_zero())
        .collect();
    if c.is_exact() && nonzero.len() == 1 {
        let k = nonzero[0];
        let a = &c.coeffs()[k];
        let mag = TruncatedSeries::monomial(a.abs(), k).to_string();
        let body = match (m.is_one(), mag.as_str()) {
            (true, _) => mag,
            (false, "1") => m.to_string(),
            (false, _) => format!("{mag}*{m}"),
        };
        return (a.is_negative(), body);
    }
    let body = if m.is_one() {
        c.to_string()
    } else {
        format!("({c})*{m}")
    };
    (false, body)
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            with_constant_last(&self.terms).map(|(m, c)| series_term(c, m)),
        )
    }
}

impl Serialize for DiffPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A differential polynomial over the residue field `K = Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePolynomial {
    n_vars: usize,
    terms: BTreeMap<DiffMonomial, Rational>,
}

impl ResiduePolynomial {
    pub fn zero(n_vars: usize) -> Self {
        ResiduePolynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (DiffMonomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(n_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: DiffMonomial, c: Rational) {
        let merged = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(m, merged);
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &DiffMonomial) -> Option<&Rational> {
        self.terms.get(m)
    }

    /// Number of terms. Emptiness is [`Self::is_zero`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exactly one nonzero term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_n(self.n_vars, other.n_vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_n(self.n_vars, other.n_vars)?;
        let mut out = Self::zero(self.n_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(
            self.n_vars,
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)),
        )
    }

    /// `c · x^M · G`.
    pub fn mul_term(&self, c: &Rational, m: &DiffMonomial) -> Self {
        Self::from_terms(
            self.n_vars,
            self.terms.iter().map(|(m1, a)| (m1.mul(m), a * c)),
        )
    }

    /// The derivation of `K{x}`; constants have zero derivative.
    pub fn derive(&self) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            for (e, dm) in m.derive() {
                out.add_term(dm, c * rat(e as i64));
            }
        }
        out
    }

    /// View as a differential polynomial with exact constant coefficients.
    pub fn to_diff_polynomial(&self) -> DiffPolynomial {
        let mut p = DiffPolynomial::zero(self.n_vars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), TruncatedSeries::constant(c.clone()));
        }
        p
    }
}

impl fmt::Display for ResiduePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            with_constant_last(&self.terms).map(|(m, c)| {
                let mag = fmt_rational(&c.abs());
                let body = match (m.is_one(), c.abs().is_one()) {
                    (true, _) => mag,
                    (false, true) => m.to_string(),
                    (false, false) => format!("{mag}*{m}"),
                };
                (c.is_negative(), body)
            }),
        )
    }
}

impl Serialize for ResiduePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
