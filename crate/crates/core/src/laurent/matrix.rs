use std::fmt;

use super::coeff::Coeff;
use super::poly::LaurentPoly;
use crate::error::{Error, Result};

/// Dense matrix over `K[t, t^{-1}]`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix<K: Coeff> {
    rows: usize,
    cols: usize,
    ctx: K::Ctx,
    entries: Vec<LaurentPoly<K>>,
}

/// Size below which `det` expands by cofactors instead of eliminating.
const COFACTOR_CUTOFF: usize = 5;

impl<K: Coeff> RingMatrix<K> {
    pub fn zeros(rows: usize, cols: usize, ctx: K::Ctx) -> Self {
        RingMatrix {
            rows,
            cols,
            ctx,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, ctx: K::Ctx) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(ctx));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly<K>>>, ctx: K::Ctx) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RingMatrix {
            rows: r,
            cols: c,
            ctx,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> K::Ctx {
        self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<K> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly<K>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &LaurentPoly<K>) {
        let idx = i * self.cols + j;
        self.entries[idx] = &self.entries[idx] + v;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly<K>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<LaurentPoly<K>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<F: Fn(&LaurentPoly<K>) -> LaurentPoly<K>>(&self, f: F) -> Self {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len(), self.ctx);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Deletes the listed rows and columns.
    pub fn minor(&self, del_rows: &[usize], del_cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|i| !del_rows.contains(i)).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|j| !del_cols.contains(j)).collect();
        self.select(&rows, &cols)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a - b;
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols, self.ctx);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> LaurentPoly<K> {
        (0..self.rows.min(self.cols)).fold(LaurentPoly::zero(), |acc, i| &acc + self.get(i, i))
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    /// Exact determinant. Small matrices expand by cofactors, larger ones go
    /// through [`det_bareiss`](Self::det_bareiss).
    pub fn det(&self) -> Result<LaurentPoly<K>> {
        let n = self.require_square()?;
        if n < COFACTOR_CUTOFF {
            Ok(self.det_cofactor())
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along the first row. Exponential; for small sizes.
    pub fn det_cofactor(&self) -> LaurentPoly<K> {
        assert!(self.is_square());
        let cols: Vec<usize> = (0..self.cols).collect();
        self.cofactor_rec(0, &cols)
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> LaurentPoly<K> {
        if cols.is_empty() {
            return LaurentPoly::one(self.ctx);
        }
        let mut acc = LaurentPoly::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a * &self.cofactor_rec(row + 1, &rest);
            acc = if pos % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    /// Fraction-free (Bareiss) elimination over `K[t]`.
    ///
    /// Each row is first multiplied by `t^k` to clear negative exponents; the
    /// accumulated shift is divided back out at the end.
    pub fn det_bareiss(&self) -> Result<LaurentPoly<K>> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(LaurentPoly::one(self.ctx));
        }
        let mut a = self.row_vecs();
        let mut total_shift = 0i64;
        for row in a.iter_mut() {
            let Some(m) = row.iter().filter_map(LaurentPoly::min_exp).min() else {
                return Ok(LaurentPoly::zero());
            };
            if m < 0 {
                for x in row.iter_mut() {
                    *x = x.shift(-m);
                }
                total_shift += -m;
            }
        }
        let mut negate = false;
        let mut prev = LaurentPoly::one(self.ctx);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(LaurentPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .div_exact(&prev)
                        .ok_or_else(|| Error::Internal("Bareiss step left a remainder".into()))?;
                }
                a[i][k] = LaurentPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].shift(-total_shift);
        Ok(if negate { -d } else { d })
    }
}

impl<K: Coeff> fmt::Debug for RingMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RingMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
