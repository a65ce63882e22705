//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

pub mod cli;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tropdiff::diffalg::{DiffMonomial, DiffPolynomial, Var};
use tropdiff::series::TruncatedSeries;
use tropdiff::tropical::NatSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn natset(rng: &mut impl Rng) -> NatSet {
    let fin: Vec<u64> = (0..8).filter(|_| rng.gen_bool(0.35)).collect();
    let threshold = rng.gen_range(0..6);
    let period = rng.gen_range(0..5);
    let residues: Vec<u64> = if period == 0 {
        Vec::new()
    } else {
        (0..period).filter(|_| rng.gen_bool(0.5)).collect()
    };
    NatSet::new(fin, threshold, period, residues).expect("valid description")
}

/// Exact polynomial in `t` with small integer coefficients.
pub fn exact_series(rng: &mut impl Rng, max_len: usize) -> TruncatedSeries {
    let len = rng.gen_range(1..=max_len);
    let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
    TruncatedSeries::poly_ints(&c)
}

/// Series known modulo `t^n`, coefficients in `[-5, 5]`.
pub fn truncated_series(rng: &mut impl Rng, n: usize) -> TruncatedSeries {
    let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
    TruncatedSeries::from_ints(&c, n)
}

pub fn monomial(rng: &mut impl Rng, n_vars: usize, max_order: usize) -> DiffMonomial {
    let k = rng.gen_range(0..=2);
    DiffMonomial::from_pairs((0..k).map(|_| {
        let v = Var::new(rng.gen_range(1..=n_vars), rng.gen_range(0..=max_order));
        (v, rng.gen_range(1..=2))
    }))
}

/// Differential polynomial with exact coefficients; may be zero.
pub fn poly(rng: &mut impl Rng, n_vars: usize, max_order: usize) -> DiffPolynomial {
    let k = rng.gen_range(1..=4);
    let terms: Vec<_> = (0..k)
        .map(|_| (monomial(rng, n_vars, max_order), exact_series(rng, 4)))
        .collect();
    DiffPolynomial::from_terms(n_vars, terms).expect("variables in range")
}

pub fn pick<'a, T>(rng: &mut impl Rng, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("nonempty")
}
