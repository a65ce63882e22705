use rayon::prelude::*;
use serde::Serialize;

use super::UniPoly;
use crate::error::{Error, Result};

/// Dense matrix over `Q[s]`, row-major.
pub type PolyMatrix = Vec<Vec<UniPoly>>;

/// The `(r+1) × (r-1)` band matrix whose column `c` holds `1, s, 1` in rows
/// `c, c+1, c+2`. Its transpose applied to `(x10, …, x1r)` lists
/// `d^c (x12 + s x11 + x10)` for `c ≤ r - 2`.
pub fn band_matrix(r: usize) -> Result<PolyMatrix> {
    if r < 2 {
        return Err(Error::BadDimension(r));
    }
    let mut a = vec![vec![UniPoly::zero(); r - 1]; r + 1];
    for c in 0..r - 1 {
        a[c][c] = UniPoly::one();
        a[c + 1][c] = UniPoly::s();
        a[c + 2][c] = UniPoly::one();
    }
    Ok(a)
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn determinant(m: &[Vec<UniPoly>]) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut a: PolyMatrix = m.to_vec();
    let mut prev = UniPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub determinant: UniPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatroidCheck {
    pub r: usize,
    pub minors: Vec<Minor>,
    /// No maximal minor is the zero polynomial.
    pub uniform: bool,
}

/// All maximal minors of the band matrix, one per pair of deleted rows.
pub fn check_uniform_matroid(r: usize) -> Result<MatroidCheck> {
    let a = band_matrix(r)?;
    let pairs: Vec<(usize, usize)> = (0..=r)
        .flat_map(|i| (i + 1..=r).map(move |j| (i, j)))
        .collect();
    let minors: Vec<Minor> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let rows: Vec<usize> = (0..=r).filter(|&k| k != i && k != j).collect();
            let sub: PolyMatrix = rows.iter().map(|&k| a[k].clone()).collect();
            Minor {
                determinant: determinant(&sub),
                rows,
            }
        })
        .collect();
    let uniform = minors.iter().all(|m| !m.determinant.is_zero());
    Ok(MatroidCheck { r, minors, uniform })
}
