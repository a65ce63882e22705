use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::parse::parse_poly;
use crate::series::{Rational, TruncatedSeries};

/// `φ_1 = Σ_{j<N} t^j / Π_{k=0}^{j} (k - φ_2)` modulo `t^N`, the only
/// candidate first component of a solution of
/// `t x11 - (x20 + t) x10 - 1 = x21 = 0` with constant `φ_2`.
///
/// The substitution is checked before returning whenever `N ≥ 2`; at
/// `N = 1` the derivative `x11` leaves no known coefficient to check.
pub fn denef_series(phi2: &Rational, n: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::EmptyPrecision);
    }
    let mut coeffs = Vec::with_capacity(n);
    let mut denom = Rational::one();
    for k in 0..n {
        let factor = Rational::from_integer(k.into()) - phi2;
        if factor.is_zero() {
            return Err(Error::NaturalPole { k });
        }
        denom *= factor;
        coeffs.push(denom.recip());
    }
    let phi1 = TruncatedSeries::new(coeffs, n);
    if n < 2 {
        return Ok(phi1);
    }
    let phi = [phi1.clone(), TruncatedSeries::constant(phi2.clone())];
    for text in ["t*x(1,1) - (x(2,0) + t)*x(1,0) - 1", "x(2,1)"] {
        let residual = parse_poly(text, n)?.evaluate(&phi)?;
        if !residual.vanishes() {
            return Err(Error::PostconditionFailure(format!(
                "{text} evaluates to {residual}"
            )));
        }
    }
    Ok(phi1)
}
