use std::collections::BTreeMap;

use super::diagram::{ArcId, Crossing, KnotDiagram, Sign};
use super::tangle::{Strand, Tangle};
use crate::error::{Error, Result};

/// Cuts the listed arcs open. See [`Tangle::cut`].
pub fn cut(d: &KnotDiagram, arcs: &[ArcId]) -> Result<Tangle> {
    Tangle::cut(d, arcs)
}

/// Connected sum of two knot diagrams, formed by cutting each at its last arc,
/// composing and closing. Arcs of `d1` keep their labels; arc `b` of `d2`
/// becomes `n1 + b`.
pub fn connected_sum(d1: &KnotDiagram, d2: &KnotDiagram) -> Result<KnotDiagram> {
    if !d1.is_knot() || !d2.is_knot() {
        return Err(Error::Precondition("connected sum needs two knots".into()));
    }
    let t1 = Tangle::cut(d1, &[ArcId(d1.n_arcs())])?;
    let t2 = Tangle::cut(d2, &[ArcId(d2.n_arcs())])?;
    t1.compose(&t2)?.close()
}

/// Disjoint union with `d2` drawn apart from `d1`; arcs of `d2` are shifted
/// by the arc count of `d1`.
pub fn split_union(d1: &KnotDiagram, d2: &KnotDiagram) -> Result<KnotDiagram> {
    let n1 = d1.n_arcs();
    let s = |a: ArcId| ArcId(a.0 + n1);
    let mut crossings = d1.crossings().to_vec();
    crossings.extend(d2.crossings().iter().map(|c| Crossing {
        over: s(c.over),
        under_in: s(c.under_in),
        under_out: s(c.under_out),
        sign: c.sign,
    }));
    let mut free = d1.free_arcs();
    free.extend(d2.free_arcs().into_iter().map(s));
    KnotDiagram::new(crossings, &free)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Piece {
    Main(ArcId, usize),
    // crossing index, under copy, position 1..n-1
    Inter(usize, usize, usize),
}

/// The `n`-cable of a 1-string tangle in the blackboard framing.
///
/// Every arc is replaced by `n` parallel copies and every crossing by an
/// `n x n` grid of crossings of the same sign. An under copy passes the over
/// copies in the order `n-1, ..., 0` at a positive crossing and `0, ..., n-1`
/// at a negative one. Arcs are numbered along the strands, copy 0 first.
pub fn cable(t: &Tangle, n: usize) -> Result<Tangle> {
    if n == 0 {
        return Err(Error::Precondition("cable needs n >= 1".into()));
    }
    if !t.is_one_string() {
        return Err(Error::Precondition("cable needs a 1-string tangle".into()));
    }
    let path = &t.strands()[0].arcs;
    let index_of: BTreeMap<ArcId, usize> = t
        .crossings()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.under_in, i))
        .collect();

    let mut order = Vec::new();
    for q in 0..n {
        for (p, &a) in path.iter().enumerate() {
            order.push(Piece::Main(a, q));
            if let (true, Some(&ci)) = (p + 1 < path.len(), index_of.get(&a)) {
                order.extend((1..n).map(|r| Piece::Inter(ci, q, r)));
            }
        }
    }
    let label: BTreeMap<Piece, ArcId> = order
        .iter()
        .enumerate()
        .map(|(i, &pc)| (pc, ArcId(i + 1)))
        .collect();

    let mut crossings = Vec::with_capacity(n * n * t.crossings().len());
    for (ci, c) in t.crossings().iter().enumerate() {
        for p in 0..n {
            let seg = |r: usize| {
                if r == 0 {
                    Piece::Main(c.under_in, p)
                } else if r == n {
                    Piece::Main(c.under_out, p)
                } else {
                    Piece::Inter(ci, p, r)
                }
            };
            for r in 0..n {
                let q = match c.sign {
                    Sign::Positive => n - 1 - r,
                    Sign::Negative => r,
                };
                crossings.push(Crossing {
                    over: label[&Piece::Main(c.over, q)],
                    under_in: label[&seg(r)],
                    under_out: label[&seg(r + 1)],
                    sign: c.sign,
                });
            }
        }
    }
    let per_copy = order.len() / n;
    let strands = (0..n)
        .map(|q| Strand {
            arcs: (q * per_copy + 1..=(q + 1) * per_copy).map(ArcId).collect(),
            closed: false,
        })
        .collect();
    Tangle::from_parts(order.len(), crossings, strands)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_model::parse_pd;

    fn trefoil() -> KnotDiagram {
        parse_pd("X+ 3 1 2 / X+ 1 2 3 / X+ 2 3 1").unwrap()
    }

    fn figure_eight() -> KnotDiagram {
        parse_pd("X- 4 1 2 / X+ 1 2 3 / X- 2 3 4 / X+ 3 4 1").unwrap()
    }

    #[test]
    fn connected_sum_numbering() {
        let s = connected_sum(&trefoil(), &figure_eight()).unwrap();
        assert_eq!(s.n_arcs(), 7);
        assert_eq!(s.crossings().len(), 7);
        assert!(s.is_knot());
        assert_eq!(s.writhe(), 3);
        let u = KnotDiagram::unknot();
        assert_eq!(connected_sum(&trefoil(), &u).unwrap(), trefoil());
        assert_eq!(connected_sum(&u, &u).unwrap().n_arcs(), 1);
    }

    #[test]
    fn connected_sum_rejects_links() {
        let link = split_union(&trefoil(), &trefoil()).unwrap();
        assert!(matches!(
            connected_sum(&link, &trefoil()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn split_union_counts() {
        let l = split_union(&trefoil(), &KnotDiagram::unknot()).unwrap();
        assert_eq!(l.components().len(), 2);
        assert_eq!(l.free_arcs(), vec![ArcId(4)]);
        assert_eq!(l.crossings().len(), 3);
    }

    #[test]
    fn cable_counts() {
        let t = Tangle::cut(&trefoil(), &[ArcId(1)]).unwrap();
        assert_eq!(cable(&t, 1).unwrap().renumbered(), t.renumbered());
        for n in 1..=3 {
            let c = cable(&t, n).unwrap();
            assert_eq!(c.crossings().len(), 3 * n * n);
            assert_eq!(c.n_arcs(), n * t.n_arcs() + n * (n - 1) * 3);
            assert_eq!(c.endpoints().len(), 2 * n);
        }
        assert!(matches!(cable(&t, 0), Err(Error::Precondition(_))));
        assert!(cable(&Tangle::from_knot(&trefoil()), 2).is_err());
    }

    #[test]
    fn cable_of_cut_unknot() {
        let t = Tangle::cut(&KnotDiagram::unknot(), &[ArcId(1)]).unwrap();
        let c = cable(&t, 3).unwrap();
        assert_eq!(c.n_arcs(), 6);
        assert!(c.crossings().is_empty());
    }
}
