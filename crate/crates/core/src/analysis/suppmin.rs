use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::UniPoly;
use crate::diffalg::DiffPolynomial;
use crate::error::{Error, Result};
use crate::series::Valuation;

/// Coefficients `f_j` of a linear form `Σ f_j x(i,j)` in one variable.
fn linear_coefficients(f: &DiffPolynomial) -> Result<BTreeMap<usize, Valuation>> {
    let mut var = None;
    let mut out = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut vars = m.iter();
        let (Some((v, 1)), None) = (vars.next(), vars.next()) else {
            return Err(Error::NotLinearForm);
        };
        if *var.get_or_insert(v.i) != v.i {
            return Err(Error::NotLinearForm);
        }
        let nu = c.valuation();
        if !nu.is_certified() {
            return Err(Error::UncertifiedValuation(m.clone()));
        }
        out.insert(v.j, nu);
    }
    if out.is_empty() {
        return Err(Error::NotLinearForm);
    }
    Ok(out)
}

/// `argmin_j ν(f_j)` for a nonzero linear form `Σ f_j x(i,j)`.
pub fn supp_min(f: &DiffPolynomial) -> Result<BTreeSet<usize>> {
    let coeffs = linear_coefficients(f)?;
    let min = coeffs.values().filter_map(|v| v.value().finite()).min();
    Ok(coeffs
        .into_iter()
        .filter(|(_, v)| v.value().finite() == min)
        .map(|(j, _)| j)
        .collect())
}

/// A linear form `Σ f_j x1j` whose coefficients are polynomials in `t`
/// over `Q[s]`: `coeffs[j][k]` is the coefficient of `t^k` in `f_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericLinearForm {
    pub coeffs: Vec<Vec<UniPoly>>,
}

impl GenericLinearForm {
    /// `ν(f_j)` in `t`, `None` for a zero coefficient.
    pub fn valuation(&self, j: usize) -> Option<usize> {
        self.coeffs.get(j)?.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        (0..self.coeffs.len()).all(|j| self.valuation(j).is_none())
    }
}

/// `Σ_i v_i · d^i(x12 + s x11 + x10)` with `v_i ∈ Q[s][t]` given by their
/// coefficient lists in `t`; an element of the truncation `I_r` for
/// `r = v.len() + 1`.
pub fn generic_ideal_element(v: &[Vec<UniPoly>]) -> GenericLinearForm {
    let width = v.iter().map(Vec::len).max().unwrap_or(0);
    let zero = UniPoly::zero();
    let s = UniPoly::s();
    let coeffs = (0..v.len() + 2)
        .map(|j| {
            (0..width)
                .map(|k| {
                    let at = |i: Option<usize>| {
                        i.and_then(|i| v.get(i))
                            .and_then(|c| c.get(k))
                            .unwrap_or(&zero)
                    };
                    let a = at(j.checked_sub(2));
                    let b = &s * at(j.checked_sub(1));
                    let c = at(Some(j));
                    &(a + &b) + c
                })
                .collect()
        })
        .collect();
    GenericLinearForm { coeffs }
}

/// `supp_min` of a form over `Q[s][t]`, with `s` treated as generic.
pub fn supp_min_generic(f: &GenericLinearForm) -> Result<BTreeSet<usize>> {
    let vals: Vec<(usize, usize)> = (0..f.coeffs.len())
        .filter_map(|j| f.valuation(j).map(|v| (j, v)))
        .collect();
    let min = vals
        .iter()
        .map(|&(_, v)| v)
        .min()
        .ok_or(Error::NotLinearForm)?;
    Ok(vals
        .into_iter()
        .filter(|&(_, v)| v == min)
        .map(|(j, _)| j)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StabilizationOutcome {
    /// `supp_min(d^k g) = {k + l : l ∈ L}` for `k_stable ≤ k ≤ k_max`.
    Stabilized {
        l: BTreeSet<i64>,
        k_stable: usize,
    },
    NotStabilized,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stabilization {
    pub k_max: usize,
    /// `supp_min(d^k g)` for `k = 0, …, k_max`.
    pub observations: Vec<BTreeSet<usize>>,
    pub outcome: StabilizationOutcome,
}

/// Watch `supp_min(d^k g) - k` for `k ≤ k_max`. The pattern counts as
/// stabilized when its last two observations agree (or `k_max = 0`);
/// `k_stable` is the start of the final constant run.
pub fn suppmin_stabilization(g: &DiffPolynomial, k_max: usize) -> Result<Stabilization> {
    let mut observations = Vec::with_capacity(k_max + 1);
    let mut shifted: Vec<BTreeSet<i64>> = Vec::with_capacity(k_max + 1);
    let mut d = g.clone();
    for k in 0..=k_max {
        let sm = supp_min(&d)?;
        shifted.push(sm.iter().map(|&j| j as i64 - k as i64).collect());
        observations.push(sm);
        d = d.derive(1);
    }
    let last = shifted[k_max].clone();
    let outcome = if k_max > 0 && shifted[k_max - 1] != last {
        StabilizationOutcome::NotStabilized
    } else {
        let k_stable = (0..=k_max)
            .rev()
            .take_while(|&k| shifted[k] == last)
            .last()
            .unwrap_or(k_max);
        StabilizationOutcome::Stabilized { l: last, k_stable }
    };
    Ok(Stabilization {
        k_max,
        observations,
        outcome,
    })
}

/// A member `f = d^k g` of `d^*G` at which `q_ab` is not a tropical solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QabWitness {
    pub generator: usize,
    pub derivative: usize,
    pub polynomial: String,
    pub supp_min: BTreeSet<usize>,
    /// The index `j` attaining `min_j ν(f_j) + (q_ab)_j` uniquely.
    pub minimizer: usize,
    pub value: u64,
}

/// The vector `(q_ab)_j`, `j ≤ horizon`: zero except `1` at `a` and `b`.
pub fn qab_vector(a: usize, b: usize, horizon: usize) -> Vec<u64> {
    (0..=horizon).map(|j| u64::from(j == a || j == b)).collect()
}

fn check_pair(a: usize, b: usize) -> Result<()> {
    if b < a + 2 {
        Err(Error::BadPair { a, b })
    } else {
        Ok(())
    }
}

/// Test one linear form against `q_ab`; every coordinate outside `{a, b}`
/// is `0`, however large the index.
fn qab_minimizer(f: &DiffPolynomial, a: usize, b: usize) -> Result<Option<(usize, u64)>> {
    let coeffs = linear_coefficients(f)?;
    let mut best: Option<(usize, u64)> = None;
    let mut tie = false;
    for (j, nu) in coeffs {
        let Some(nu) = nu.value().finite() else {
            continue;
        };
        let v = nu + u64::from(j == a || j == b);
        match best {
            Some((_, b0)) if v > b0 => {}
            Some((_, b0)) if v == b0 => tie = true,
            _ => {
                best = Some((j, v));
                tie = false;
            }
        }
    }
    Ok(best.filter(|_| !tie))
}

/// The first `f = d^k g` (generators in order, then `k = 0, …, depth`) at
/// which `q_ab` has a unique minimizing coordinate. A witness with
/// `|supp_min(f)| ≥ 3` must have `supp_min(f) = {a, b, j}`; this is checked.
pub fn qab_witness_search(
    gens: &[DiffPolynomial],
    a: usize,
    b: usize,
    depth: usize,
) -> Result<Option<QabWitness>> {
    check_pair(a, b)?;
    for (generator, g) in gens.iter().enumerate() {
        let mut d = g.clone();
        for derivative in 0..=depth {
            if let Some((minimizer, value)) = qab_minimizer(&d, a, b)? {
                let sm = supp_min(&d)?;
                if sm.len() >= 3 && sm != BTreeSet::from([a, b, minimizer]) {
                    return Err(Error::InternalInvariantViolation(format!(
                        "witness d^{derivative} g{generator} has supp_min {sm:?}, expected {{{a}, {b}, {minimizer}}}"
                    )));
                }
                return Ok(Some(QabWitness {
                    generator,
                    derivative,
                    polynomial: d.to_string(),
                    supp_min: sm,
                    minimizer,
                    value,
                }));
            }
            d = d.derive(1);
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCoverage {
    pub a: usize,
    pub b: usize,
    pub witness: Option<QabWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub r: usize,
    pub depth: usize,
    pub pairs: Vec<PairCoverage>,
    pub uncovered: Vec<(usize, usize)>,
    /// `|G_r|`: members `d^k g`, `k ≤ depth`, with `|supp_min| = 3` meeting
    /// `{0, …, r}`.
    pub g_r_size: usize,
    /// The distinct `supp_min` of members of `G_r`.
    pub size_three_supp_mins: Vec<BTreeSet<usize>>,
    /// Pairs whose witness lies in `G_r`.
    pub covered_by_g_r: usize,
    /// `|{supp_min(f) : f ∈ G_r}| ≥ covered_by_g_r / 3`.
    pub inequality_holds: bool,
    /// `C(r+1, 2) - r` pairs exceed `3 |G_r|`.
    pub counting_forces_failure: bool,
}

/// Run the `q_ab` witness search for every pair `b - a ≥ 2` inside
/// `{0, …, r}`.
pub fn coverage_audit(gens: &[DiffPolynomial], r: usize, depth: usize) -> Result<CoverageReport> {
    let pair_list: Vec<(usize, usize)> = (0..=r)
        .flat_map(|a| (a + 2..=r).map(move |b| (a, b)))
        .collect();
    let pairs: Vec<PairCoverage> = pair_list
        .par_iter()
        .map(|&(a, b)| {
            Ok(PairCoverage {
                a,
                b,
                witness: qab_witness_search(gens, a, b, depth)?,
            })
        })
        .collect::<Result<_>>()?;

    let mut g_r = 0;
    let mut supp_mins = BTreeSet::new();
    for g in gens {
        let mut d = g.clone();
        for _ in 0..=depth {
            let sm = supp_min(&d)?;
            if sm.len() == 3 && sm.iter().any(|&j| j <= r) {
                g_r += 1;
                supp_mins.insert(sm);
            }
            d = d.derive(1);
        }
    }
    let uncovered: Vec<(usize, usize)> = pairs
        .iter()
        .filter(|p| p.witness.is_none())
        .map(|p| (p.a, p.b))
        .collect();
    let covered_by_g_r = pairs
        .iter()
        .filter(|p| {
            p.witness
                .as_ref()
                .is_some_and(|w| w.supp_min.len() == 3 && supp_mins.contains(&w.supp_min))
        })
        .count();
    let inequality_holds = 3 * supp_mins.len() >= covered_by_g_r;
    if !inequality_holds {
        return Err(Error::InternalInvariantViolation(format!(
            "{} supp_min sets cannot cover {covered_by_g_r} pairs",
            supp_mins.len()
        )));
    }
    Ok(CoverageReport {
        r,
        depth,
        counting_forces_failure: 3 * g_r < pair_list.len(),
        pairs,
        uncovered,
        g_r_size: g_r,
        size_three_supp_mins: supp_mins.into_iter().collect(),
        covered_by_g_r,
        inequality_holds,
    })
}
