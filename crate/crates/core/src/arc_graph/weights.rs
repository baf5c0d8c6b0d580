use std::collections::BTreeSet;

use num_rational::BigRational;

use super::WeightLabel;
use crate::error::{Error, Result};
use crate::laurent::{Coeff, LaurentPoly, RingMatrix};

/// Values assigned to the four edge labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec<K: Coeff> {
    pub t1: LaurentPoly<K>,
    pub t2: LaurentPoly<K>,
    pub s1: LaurentPoly<K>,
    pub s2: LaurentPoly<K>,
    ctx: K::Ctx,
}

impl<K: Coeff> WeightSpec<K> {
    pub fn new(
        t1: LaurentPoly<K>,
        t2: LaurentPoly<K>,
        s1: LaurentPoly<K>,
        s2: LaurentPoly<K>,
        ctx: K::Ctx,
    ) -> Self {
        WeightSpec {
            t1,
            t2,
            s1,
            s2,
            ctx,
        }
    }

    /// `T1 = t, T2 = t^-1, S1 = 1 - t, S2 = 1 - t^-1`.
    pub fn alexander(ctx: K::Ctx) -> Self {
        let one = LaurentPoly::one(ctx);
        let t = LaurentPoly::t_pow(1, ctx);
        let ti = LaurentPoly::t_pow(-1, ctx);
        WeightSpec {
            s1: &one - &t,
            s2: &one - &ti,
            t1: t,
            t2: ti,
            ctx,
        }
    }

    pub fn ctx(&self) -> K::Ctx {
        self.ctx
    }

    pub fn weight(&self, label: WeightLabel) -> &LaurentPoly<K> {
        match label {
            WeightLabel::T1 => &self.t1,
            WeightLabel::T2 => &self.t2,
            WeightLabel::S1 => &self.s1,
            WeightLabel::S2 => &self.s2,
        }
    }

    /// Every label evaluated at `x`.
    pub fn eval(&self, x: &K) -> Result<Self> {
        let c = |p: &LaurentPoly<K>| p.eval(x).map(LaurentPoly::constant);
        Ok(WeightSpec {
            t1: c(&self.t1)?,
            t2: c(&self.t2)?,
            s1: c(&self.s1)?,
            s2: c(&self.s2)?,
            ctx: self.ctx,
        })
    }
}

pub fn alexander_spec() -> WeightSpec<BigRational> {
    WeightSpec::alexander(())
}

/// The Alexander spec evaluated at `u`: constants `u, 1/u, 1-u, 1-1/u`.
pub fn alexander_spec_at<K: Coeff>(u: &K, ctx: K::Ctx) -> Result<WeightSpec<K>> {
    WeightSpec::alexander(ctx).eval(u)
}

/// All labels set to 1: the plain adjacency structure.
pub fn unit_spec<K: Coeff>(ctx: K::Ctx) -> WeightSpec<K> {
    let one = LaurentPoly::one(ctx);
    WeightSpec {
        t1: one.clone(),
        t2: one.clone(),
        s1: one.clone(),
        s2: one,
        ctx,
    }
}

/// A directed graph on `0..n` with at most one weighted edge per ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph<K: Coeff> {
    n: usize,
    edges: Vec<(usize, usize, LaurentPoly<K>)>,
    ctx: K::Ctx,
}

impl<K: Coeff> WeightedDigraph<K> {
    pub fn new(
        n: usize,
        mut edges: Vec<(usize, usize, LaurentPoly<K>)>,
        ctx: K::Ctx,
    ) -> Result<Self> {
        edges.sort_by_key(|e| (e.0, e.1));
        let mut seen = BTreeSet::new();
        for (u, v, _) in &edges {
            if *u >= n || *v >= n {
                return Err(Error::Dimension(format!(
                    "edge {u} -> {v} outside {n} vertices"
                )));
            }
            if !seen.insert((*u, *v)) {
                return Err(Error::DuplicateEdge {
                    from: u + 1,
                    to: v + 1,
                });
            }
        }
        Ok(WeightedDigraph { n, edges, ctx })
    }

    pub(crate) fn from_sorted(
        n: usize,
        edges: Vec<(usize, usize, LaurentPoly<K>)>,
        ctx: K::Ctx,
    ) -> Self {
        WeightedDigraph { n, edges, ctx }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> K::Ctx {
        self.ctx
    }

    /// Edges sorted by `(from, to)`.
    pub fn edges(&self) -> &[(usize, usize, LaurentPoly<K>)] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[(usize, usize, LaurentPoly<K>)] {
        let lo = self.edges.partition_point(|e| e.0 < v);
        let hi = self.edges.partition_point(|e| e.0 <= v);
        &self.edges[lo..hi]
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&LaurentPoly<K>> {
        self.out_edges(u).iter().find(|e| e.1 == v).map(|e| &e.2)
    }

    pub fn weight_matrix(&self) -> RingMatrix<K> {
        let mut w = RingMatrix::zeros(self.n, self.n, self.ctx);
        for (u, v, p) in &self.edges {
            w.set(*u, *v, p.clone());
        }
        w
    }

    /// `D - W` with `D` the diagonal of weighted out-degrees, then the
    /// rows and columns of `roots` deleted.
    pub fn laplacian(&self, roots: &[usize]) -> Result<RingMatrix<K>> {
        if let Some(r) = roots.iter().find(|&&r| r >= self.n) {
            return Err(Error::UnknownArc(r + 1));
        }
        let mut l = RingMatrix::zeros(self.n, self.n, self.ctx);
        for (u, v, p) in &self.edges {
            l.add_to(*u, *u, p);
            l.add_to(*u, *v, &-p);
        }
        Ok(l.minor(roots, roots))
    }

    /// Every weight evaluated at `x`.
    pub fn eval(&self, x: &K) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .map(|(u, v, p)| Ok((*u, *v, LaurentPoly::constant(p.eval(x)?))))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightedDigraph {
            n: self.n,
            edges,
            ctx: self.ctx,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{parse_rational, QPoly};

    #[test]
    fn spec_values_at_minus_one() {
        let s = alexander_spec_at(&parse_rational("-1").unwrap(), ()).unwrap();
        let c = |v: i64| QPoly::from_ints(&[(0, v)]);
        assert_eq!((s.t1, s.t2, s.s1, s.s2), (c(-1), c(-1), c(2), c(2)));
        let s = alexander_spec_at(&parse_rational("1").unwrap(), ()).unwrap();
        assert_eq!(
            (s.t1, s.t2, s.s1.is_zero(), s.s2.is_zero()),
            (c(1), c(1), true, true)
        );
    }

    #[test]
    fn go_plus_jump_is_one() {
        let s = alexander_spec();
        assert_eq!(&s.t1 + &s.s1, QPoly::q_one());
        assert_eq!(&s.t2 + &s.s2, QPoly::q_one());
    }

    #[test]
    fn loops_cancel_in_laplacian() {
        let g =
            WeightedDigraph::new(2, vec![(0, 0, QPoly::t()), (0, 1, QPoly::q_one())], ()).unwrap();
        let l = g.laplacian(&[]).unwrap();
        assert_eq!(l.get(0, 0), &QPoly::q_one());
        assert!(WeightedDigraph::new(2, vec![(0, 1, QPoly::t()), (0, 1, QPoly::t())], ()).is_err());
        assert!(WeightedDigraph::new(1, vec![(0, 1, QPoly::t())], ()).is_err());
    }
}
