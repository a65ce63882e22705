//! `S`-initial parts.
//!
//! For a point `S` and `P = Σ φ_M x^M`, let `v = trop(P)(S)` and let `Υ` be
//! the monomials attaining it. The initial part keeps, for each `M ∈ Υ`, the
//! leading coefficient of `φ_M`; it lives in the residue ring `Q{x}`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::diffalg::{DiffMonomial, DiffPolynomial, ResiduePolynomial, Var};
use crate::error::{Error, Result};
use crate::series::{Rational, TruncatedSeries, Valuation};
use crate::tropical::{tropicalize, var_value, NatSet, TropValue};

fn check_point(p: &DiffPolynomial, s: &[NatSet]) -> Result<()> {
    if p.n_vars() == s.len() {
        Ok(())
    } else {
        Err(Error::VariableCountMismatch {
            expected: p.n_vars(),
            found: s.len(),
        })
    }
}

/// `Val_{S_i}(j)` for every variable occurring in `p`.
pub fn weights(p: &DiffPolynomial, s: &[NatSet]) -> BTreeMap<Var, TropValue> {
    p.terms()
        .flat_map(|(m, _)| m.iter().map(|(v, _)| v))
        .map(|v| (v, var_value(s, v)))
        .collect()
}

/// `Q_S(x) = t^{-trop(Q)(S)} Q(t^{Val_{S_i}(j)} x_ij)`.
///
/// Every coefficient of the result has nonnegative valuation and at least
/// one has valuation zero; both facts are checked.
pub fn q_sub(q: &DiffPolynomial, s: &[NatSet]) -> Result<DiffPolynomial> {
    check_point(q, s)?;
    let value = tropicalize(q)?.eval(s)?;
    let TropValue::Finite(v) = value else {
        return Ok(DiffPolynomial::zero(q.n_vars()));
    };
    let scaled = q.scale_vars(&weights(q, s))?;
    let out = scaled.try_map_coefficients(|_, c| {
        c.t_shift(-(v as i64)).map_err(|_| {
            Error::InternalInvariantViolation(format!(
                "Q_S has a coefficient of negative valuation (trop value {v})"
            ))
        })
    })?;
    let has_unit = out
        .terms()
        .any(|(_, c)| c.valuation() == Valuation::Finite(0));
    if !has_unit {
        return Err(Error::InternalInvariantViolation(
            "Q_S has no coefficient of valuation zero".into(),
        ));
    }
    Ok(out)
}

/// Terms of `P` attaining `trop(P)(S)`, with their valuations and leading
/// coefficients. `None` when the value is `∞`.
fn minimal_terms(
    p: &DiffPolynomial,
    s: &[NatSet],
) -> Result<Option<Vec<(DiffMonomial, u64, Rational)>>> {
    check_point(p, s)?;
    let value = tropicalize(p)?.eval(s)?;
    let TropValue::Finite(v) = value else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let Valuation::Finite(nu) = c.valuation() else {
            continue;
        };
        if TropValue::Finite(nu).odot(m.weight(|x| var_value(s, x))) == TropValue::Finite(v) {
            let lead = c.leading_coefficient().cloned().ok_or_else(|| {
                Error::InternalInvariantViolation(
                    "finite valuation without a leading coefficient".into(),
                )
            })?;
            out.push((m.clone(), nu, lead));
        }
    }
    Ok(Some(out))
}

/// `In_S(P)`; zero exactly when `trop(P)(S) = ∞`.
pub fn initial_part(p: &DiffPolynomial, s: &[NatSet]) -> Result<ResiduePolynomial> {
    let Some(terms) = minimal_terms(p, s)? else {
        return Ok(ResiduePolynomial::zero(p.n_vars()));
    };
    let out = ResiduePolynomial::from_terms(p.n_vars(), terms.into_iter().map(|(m, _, c)| (m, c)));
    if out.is_zero() {
        return Err(Error::InternalInvariantViolation(
            "initial part vanishes at a finite tropical value".into(),
        ));
    }
    Ok(out)
}

/// The Hu–Gao initial part `Σ_{M ∈ Υ} lc(φ_M) t^{ν(φ_M)} x^M`. Setting
/// `t = 1` must give [`initial_part`]; this is checked.
pub fn initial_part_hu_gao(p: &DiffPolynomial, s: &[NatSet]) -> Result<DiffPolynomial> {
    let Some(terms) = minimal_terms(p, s)? else {
        return Ok(DiffPolynomial::zero(p.n_vars()));
    };
    let out = DiffPolynomial::from_terms(
        p.n_vars(),
        terms
            .into_iter()
            .map(|(m, nu, c)| (m, TruncatedSeries::monomial(c, nu as usize))),
    )?;
    let at_one = out.at_t_equals_one().ok_or_else(|| {
        Error::InternalInvariantViolation("Hu-Gao initial part has a truncated coefficient".into())
    })?;
    if at_one != initial_part(p, s)? {
        return Err(Error::InternalInvariantViolation(
            "Hu-Gao initial part at t = 1 differs from In_S".into(),
        ));
    }
    Ok(out)
}

/// One summand `alpha · x^M · G` of a target `Σ alpha · x^M · In_S(G)`.
#[derive(Clone, Debug)]
pub struct LiftPart {
    pub alpha: Rational,
    pub multiplier: DiffMonomial,
    pub generator: DiffPolynomial,
}

/// Build `H = Σ alpha · t^{A - A_M} · x^M · G_M` with
/// `A_M = trop(G_M)(S) + Σ M_ij Val_{S_i}(j)` and `A = max A_M`, so that
/// `In_S(H) = Σ alpha · x^M · In_S(G_M)`.
///
/// Parts with `alpha = 0` contribute nothing and are skipped. When the target
/// sum is zero the zero polynomial is returned. The identity for `In_S(H)` is
/// verified before returning.
pub fn lift_initial_combination(parts: &[LiftPart], s: &[NatSet]) -> Result<DiffPolynomial> {
    let n = s.len();
    let mut target = ResiduePolynomial::zero(n);
    let mut shifts = Vec::with_capacity(parts.len());
    for (index, part) in parts.iter().enumerate() {
        check_point(&part.generator, s)?;
        let g_value = tropicalize(&part.generator)?.eval(s)?;
        let a_m = g_value.odot(part.multiplier.weight(|v| var_value(s, v)));
        let TropValue::Finite(a_m) = a_m else {
            return Err(Error::InfiniteTropValue { index });
        };
        shifts.push(a_m);
        if part.alpha.is_zero() {
            continue;
        }
        let term = initial_part(&part.generator, s)?.mul_term(&part.alpha, &part.multiplier);
        target = target.add(&term)?;
    }
    if target.is_zero() {
        return Ok(DiffPolynomial::zero(n));
    }
    let a = shifts.iter().copied().max().unwrap_or(0);
    let mut h = DiffPolynomial::zero(n);
    for (part, a_m) in parts.iter().zip(&shifts) {
        if part.alpha.is_zero() {
            continue;
        }
        let c = TruncatedSeries::monomial(part.alpha.clone(), (a - a_m) as usize);
        h = h.add(&part.generator.mul_term(&c, &part.multiplier))?;
    }
    let got = initial_part(&h, s)?;
    if got != target {
        return Err(Error::PostconditionFailure(format!(
            "In_S(H) = {got}, expected {target}"
        )));
    }
    Ok(h)
}
