//! Shared proptest strategies for unit tests.

use proptest::prelude::*;

use crate::diffalg::{DiffMonomial, DiffPolynomial, Var};
use crate::series::TruncatedSeries;
use crate::tropical::NatSet;

pub(crate) fn natset() -> impl Strategy<Value = NatSet> {
    (
        prop::collection::btree_set(0u64..8, 0..5),
        0u64..6,
        0u64..5,
        prop::collection::btree_set(0u64..5, 0..4),
    )
        .prop_map(|(fin, t, p, res)| {
            let res: Vec<u64> = if p == 0 {
                vec![]
            } else {
                res.into_iter().map(|r| r % p).collect()
            };
            NatSet::new(fin, t, p, res).unwrap()
        })
}

/// Exact polynomial in `t` of degree below `len`.
pub(crate) fn exact_series(len: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-3i64..=3, 1..=len).prop_map(|c| TruncatedSeries::poly_ints(&c))
}

pub(crate) fn monomial(n_vars: usize, max_order: usize) -> impl Strategy<Value = DiffMonomial> {
    prop::collection::vec((1..=n_vars, 0..=max_order, 1u32..=2), 0..=2).prop_map(|vs| {
        DiffMonomial::from_pairs(vs.into_iter().map(|(i, j, e)| (Var::new(i, j), e)))
    })
}

/// Differential polynomial with exact coefficients.
pub(crate) fn poly(n_vars: usize, max_order: usize) -> impl Strategy<Value = DiffPolynomial> {
    prop::collection::vec((monomial(n_vars, max_order), exact_series(4)), 1..=4)
        .prop_map(move |terms| DiffPolynomial::from_terms(n_vars, terms).unwrap())
}
