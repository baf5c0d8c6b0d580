use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::fox::fox_derivative;
use crate::arborescence::tangle_tree_polynomial;
use crate::arc_graph::{alexander_spec, ArcGraph, WeightSpec};
use crate::error::{Error, Result};
use crate::knot_model::{
    connected_sum, split_union, wirtinger, ArcId, KnotDiagram, Presentation, Tangle,
};
use crate::laurent::{
    canonicalize, divide_exact, CanonicalPoly, Coeff, LaurentPoly, QMatrix, QPoly, Quotient,
    RingMatrix,
};

/// Normalization of the polynomial taken from a Fox minor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Convention {
    /// The minor itself.
    #[default]
    Minor,
    /// The minor divided by `t - 1`.
    DividedByTMinusOne,
}

/// Fox matrix with every generator sent to `t`: one row per relator, one
/// column per generator.
pub fn abelianized_fox_matrix<K: Coeff>(p: &Presentation, ctx: K::Ctx) -> RingMatrix<K> {
    let n = p.n_generators();
    let mut m = RingMatrix::zeros(p.relators.len(), n, ctx);
    for (i, r) in p.relators.iter().enumerate() {
        for j in 0..n {
            let d = fox_derivative(r, j);
            let entry = d.map(
                LaurentPoly::zero(),
                |w| LaurentPoly::t_pow(w.total_exponent(), ctx),
                |acc, v, c| &acc + &v.scale(&K::from_i64(c, ctx)),
            );
            m.set(i, j, entry);
        }
    }
    m
}

pub fn alexander_matrix(p: &Presentation) -> QMatrix {
    abelianized_fox_matrix(p, ())
}

/// Fox matrix with rows reordered so row `a` is the relator of the crossing
/// under which arc `a` passes. Needs every arc to pass under exactly once.
pub fn aligned_alexander_matrix(d: &KnotDiagram) -> Result<QMatrix> {
    let p = wirtinger(d);
    let m = alexander_matrix(&p);
    if p.relators.len() != d.n_arcs() {
        return Err(Error::Precondition(
            "diagram has arcs that never pass under".into(),
        ));
    }
    let rows: Vec<usize> = {
        let mut by_arc = vec![0; d.n_arcs()];
        for (i, a) in p.relator_arcs.iter().enumerate() {
            by_arc[a.index()] = i;
        }
        by_arc
    };
    Ok(m.select(&rows, &(0..d.n_arcs()).collect::<Vec<_>>()))
}

/// Determinant of the Fox matrix with the row of arc `i` and column `j`
/// deleted. Diagrams without crossings give 1.
pub fn alexander_minor(d: &KnotDiagram, i: ArcId, j: ArcId) -> Result<QPoly> {
    for a in [i, j] {
        if a.0 == 0 || a.0 > d.n_arcs() {
            return Err(Error::UnknownArc(a.0));
        }
    }
    if d.crossings().is_empty() && d.n_arcs() == 1 {
        return Ok(QPoly::q_one());
    }
    aligned_alexander_matrix(d)?
        .minor(&[i.index()], &[j.index()])
        .det()
}

fn require_knot(d: &KnotDiagram) -> Result<()> {
    if d.is_knot() {
        Ok(())
    } else {
        Err(Error::Precondition(
            "Alexander polynomial needs a single-component diagram".into(),
        ))
    }
}

/// Canonical Alexander polynomial from the minor deleting the last row and
/// column.
pub fn alexander_polynomial(d: &KnotDiagram) -> Result<CanonicalPoly<BigRational>> {
    require_knot(d)?;
    let n = ArcId(d.n_arcs());
    Ok(canonicalize(&alexander_minor(d, n, n)?, ()))
}

/// The same minor divided by `t - 1`; usually not a polynomial.
pub fn alexander_polynomial_divided(d: &KnotDiagram) -> Result<Quotient<BigRational>> {
    require_knot(d)?;
    let n = ArcId(d.n_arcs());
    divide_exact(
        &alexander_minor(d, n, n)?,
        &QPoly::from_ints(&[(1, 1), (0, -1)]),
    )
}

/// `|Delta(-1)|`.
pub fn knot_determinant(d: &KnotDiagram) -> Result<u64> {
    let delta = alexander_polynomial(d)?;
    let v = delta
        .poly
        .eval(&BigRational::from_integer(BigInt::from(-1)))?;
    v.abs()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Internal("determinant does not fit in 64 bits".into()))
}

/// Determinant of `I - W` over every vertex of a tangle's arc graph.
pub fn cut_graph_det<K: Coeff>(t: &Tangle, spec: &WeightSpec<K>) -> Result<LaurentPoly<K>> {
    let g = ArcGraph::build(t)?;
    let w = g.weight_matrix(spec);
    RingMatrix::identity(g.n_vertices(), spec.ctx())
        .try_sub(&w)?
        .det()
}

/// The Alexander polynomial along three routes, each canonicalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleAgreement {
    pub minor: CanonicalPoly<BigRational>,
    pub trees: CanonicalPoly<BigRational>,
    pub zeta: CanonicalPoly<BigRational>,
}

impl TripleAgreement {
    pub fn agree(&self) -> bool {
        self.minor.poly == self.trees.poly && self.trees.poly == self.zeta.poly
    }
}

/// Fox minor, arborescence sum of the diagram cut at `cut_arc`, and
/// `det(I - W)` of the same cut graph.
pub fn triple_agreement(d: &KnotDiagram, cut_arc: ArcId) -> Result<TripleAgreement> {
    require_knot(d)?;
    let spec = alexander_spec();
    let t = Tangle::cut(d, &[cut_arc])?;
    Ok(TripleAgreement {
        minor: canonicalize(&alexander_minor(d, cut_arc, cut_arc)?, ()),
        trees: canonicalize(&tangle_tree_polynomial(&t, &spec)?, ()),
        zeta: canonicalize(&cut_graph_det(&t, &spec)?, ()),
    })
}

/// Entrywise comparison of the aligned Fox matrix with `I - W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoxCheck {
    /// `(row, col, fox entry, I - W entry)`, 1-based.
    pub mismatches: Vec<(usize, usize, QPoly, QPoly)>,
}

impl FoxCheck {
    pub fn equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn fox_equals_arcgraph_check(d: &KnotDiagram) -> Result<FoxCheck> {
    let fox = aligned_alexander_matrix(d)?;
    let g = ArcGraph::from_diagram(d)?;
    let i_minus_w =
        QMatrix::identity(d.n_arcs(), ()).try_sub(&g.weight_matrix(&alexander_spec()))?;
    let mut mismatches = Vec::new();
    for r in 0..d.n_arcs() {
        for c in 0..d.n_arcs() {
            if fox.get(r, c) != i_minus_w.get(r, c) {
                mismatches.push((
                    r + 1,
                    c + 1,
                    fox.get(r, c).clone(),
                    i_minus_w.get(r, c).clone(),
                ));
            }
        }
    }
    Ok(FoxCheck { mismatches })
}

/// Two sides of an identity between canonical polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdentity {
    pub lhs: CanonicalPoly<BigRational>,
    pub rhs: CanonicalPoly<BigRational>,
}

impl PolyIdentity {
    pub fn holds(&self) -> bool {
        self.lhs.poly == self.rhs.poly
    }
}

/// `Delta(d1 # d2)` against `Delta(d1) Delta(d2)`.
pub fn multiplicativity_check(d1: &KnotDiagram, d2: &KnotDiagram) -> Result<PolyIdentity> {
    let sum = connected_sum(d1, d2)?;
    let product = &alexander_polynomial(d1)?.poly * &alexander_polynomial(d2)?.poly;
    Ok(PolyIdentity {
        lhs: alexander_polynomial(&sum)?,
        rhs: canonicalize(&product, ()),
    })
}

/// Minor of the split union's Fox matrix (last row and column deleted);
/// it vanishes identically.
pub fn split_check(d1: &KnotDiagram, d2: &KnotDiagram) -> Result<QPoly> {
    let l = split_union(d1, d2)?;
    let n = l.n_arcs();
    if l.crossings().len() != n {
        // a crossingless component contributes a zero column
        return Ok(QPoly::zero());
    }
    aligned_alexander_matrix(&l)?
        .minor(&[n - 1], &[n - 1])
        .det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_model::parse_pd;

    fn trefoil() -> KnotDiagram {
        parse_pd("X+ 3 1 2 / X+ 1 2 3 / X+ 2 3 1").unwrap()
    }

    fn fig8() -> KnotDiagram {
        parse_pd("X- 4 1 2 / X+ 1 2 3 / X- 2 3 4 / X+ 3 4 1").unwrap()
    }

    #[test]
    fn trefoil_matrix_rows() {
        let m = alexander_matrix(&wirtinger(&trefoil()));
        let t = QPoly::t();
        let row0 = [QPoly::q_one(), -&t, &t - &QPoly::q_one()];
        assert_eq!(m.row(0), &row0[..]);
        for i in 0..3 {
            let at_one: BigRational = m
                .row(i)
                .iter()
                .map(|p| p.eval(&BigRational::from_integer(1.into())).unwrap())
                .sum();
            assert_eq!(at_one, BigRational::from_integer(0.into()));
        }
    }

    #[test]
    fn polynomials_and_determinants() {
        assert_eq!(
            alexander_polynomial(&trefoil()).unwrap().poly,
            QPoly::from_ints(&[(0, 1), (1, -1), (2, 1)])
        );
        assert_eq!(
            alexander_polynomial(&fig8()).unwrap().poly,
            QPoly::from_ints(&[(0, 1), (1, -3), (2, 1)])
        );
        assert_eq!(
            alexander_polynomial(&KnotDiagram::unknot()).unwrap().poly,
            QPoly::q_one()
        );
        assert_eq!(knot_determinant(&trefoil()).unwrap(), 3);
        assert_eq!(knot_determinant(&fig8()).unwrap(), 5);
        assert_eq!(knot_determinant(&KnotDiagram::unknot()).unwrap(), 1);
    }

    #[test]
    fn divided_form_is_a_fraction() {
        assert!(!alexander_polynomial_divided(&trefoil())
            .unwrap()
            .is_polynomial());
    }

    #[test]
    fn links_are_rejected() {
        let l = split_union(&trefoil(), &trefoil()).unwrap();
        assert!(matches!(
            alexander_polynomial(&l),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn fox_matches_arc_graph() {
        for d in [trefoil(), fig8(), parse_pd("X+ 1 1 2 / X- 2 2 1").unwrap()] {
            assert!(fox_equals_arcgraph_check(&d).unwrap().equal());
        }
    }

    #[test]
    fn triple_on_trefoil() {
        for a in 1..=3 {
            assert!(triple_agreement(&trefoil(), ArcId(a)).unwrap().agree());
        }
        assert!(triple_agreement(&KnotDiagram::unknot(), ArcId(1))
            .unwrap()
            .agree());
    }

    #[test]
    fn sums_and_splits() {
        let m = multiplicativity_check(&trefoil(), &trefoil()).unwrap();
        assert!(m.holds());
        assert_eq!(
            m.lhs.poly,
            QPoly::from_ints(&[(0, 1), (1, -2), (2, 3), (3, -2), (4, 1)])
        );
        assert!(multiplicativity_check(&fig8(), &KnotDiagram::unknot())
            .unwrap()
            .holds());
        assert!(split_check(&trefoil(), &trefoil()).unwrap().is_zero());
        assert!(split_check(&KnotDiagram::unknot(), &KnotDiagram::unknot())
            .unwrap()
            .is_zero());
    }
}
