//! Scalar linear algebra over a coefficient field: determinants, solves and
//! nullspaces by Gaussian elimination.

use super::coeff::Coeff;
use super::matrix::RingMatrix;
use super::poly::LaurentPoly;
use crate::error::{Error, Result};

/// Determinant of a square scalar matrix given as rows.
pub fn field_det<K: Coeff>(mut a: Vec<Vec<K>>, ctx: K::Ctx) -> Result<K> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("determinant of non-square matrix".into()));
    }
    let mut det = K::one(ctx);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(K::zero(ctx));
        };
        if p != k {
            a.swap(p, k);
            det = det.neg();
        }
        let pivot = a[k][k].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().expect("nonzero pivot");
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].mul(&inv);
            for j in k..n {
                let v = a[i][j].sub(&f.mul(&a[k][j]));
                a[i][j] = v;
            }
        }
    }
    Ok(det)
}

/// Solves `a x = b`; `None` when `a` is singular.
pub fn field_solve<K: Coeff>(
    mut a: Vec<Vec<K>>,
    mut b: Vec<K>,
    ctx: K::Ctx,
) -> Result<Option<Vec<K>>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) || b.len() != n {
        return Err(Error::Dimension("solve needs a square system".into()));
    }
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(None);
        };
        a.swap(p, k);
        b.swap(p, k);
        let inv = a[k][k].inv().expect("nonzero pivot");
        for j in k..n {
            a[k][j] = a[k][j].mul(&inv);
        }
        b[k] = b[k].mul(&inv);
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in k..n {
                let v = a[i][j].sub(&f.mul(&a[k][j]));
                a[i][j] = v;
            }
            b[i] = b[i].sub(&f.mul(&b[k]));
        }
    }
    let _ = ctx;
    Ok(Some(b))
}

/// Basis of the right nullspace `{x : a x = 0}` via reduced row echelon form.
pub fn nullspace<K: Coeff>(mut a: Vec<Vec<K>>, cols: usize, ctx: K::Ctx) -> Vec<Vec<K>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in 0..cols {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = a[i][j].sub(&f.mul(&a[r][j]));
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![K::zero(ctx); cols];
            v[f] = K::one(ctx);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][f].neg();
            }
            v
        })
        .collect()
}

/// Evaluates every entry at `x`, producing a scalar matrix.
pub fn eval_matrix<K: Coeff>(m: &RingMatrix<K>, x: &K) -> Result<Vec<Vec<K>>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|p: &LaurentPoly<K>| p.eval(x))
                .collect()
        })
        .collect()
}
