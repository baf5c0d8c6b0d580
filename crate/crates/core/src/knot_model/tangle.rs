use std::collections::{BTreeMap, BTreeSet};

use super::diagram::{ArcId, Crossing, KnotDiagram};
use crate::error::{Error, Result};

/// A strand of a tangle: arcs in orientation order. Open strands run from an
/// initial endpoint arc to a terminal endpoint arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Strand {
    pub arcs: Vec<ArcId>,
    pub closed: bool,
}

/// A diagram some of whose arcs have been cut open.
///
/// Cutting arc `a` places the cut just before `a` passes under its crossing:
/// the initial half keeps the label `a` and only passes under that crossing,
/// while the terminal half gets a fresh label and inherits everything else
/// (it emerges from the previous crossing and carries all of `a`'s
/// overpasses). The terminal half never passes under anything.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tangle {
    n_arcs: usize,
    crossings: Vec<Crossing>,
    strands: Vec<Strand>,
}

impl Tangle {
    pub(crate) fn from_parts(
        n_arcs: usize,
        mut crossings: Vec<Crossing>,
        strands: Vec<Strand>,
    ) -> Result<Self> {
        crossings.sort_by_key(|c| c.under_in);
        let mut seen = BTreeSet::new();
        for s in &strands {
            if s.arcs.is_empty() {
                return Err(Error::Internal("empty strand".into()));
            }
            for &a in &s.arcs {
                if a.0 == 0 || a.0 > n_arcs || !seen.insert(a) {
                    return Err(Error::Internal(format!("arc {a} misplaced in strands")));
                }
            }
        }
        if seen.len() != n_arcs {
            return Err(Error::Internal("strands do not cover all arcs".into()));
        }
        let by_under: BTreeMap<ArcId, &Crossing> =
            crossings.iter().map(|c| (c.under_in, c)).collect();
        if by_under.len() != crossings.len() {
            return Err(Error::Internal("arc passes under twice".into()));
        }
        let mut used = 0;
        for s in &strands {
            let k = s.arcs.len();
            let steps = if s.closed { k } else { k - 1 };
            for p in 0..steps {
                let (a, b) = (s.arcs[p], s.arcs[(p + 1) % k]);
                match by_under.get(&a) {
                    Some(c) if c.under_out == b => used += 1,
                    // a free arc: closed on itself, or cut into two bare halves
                    None if k == 1 || (!s.closed && k == 2) => {}
                    _ => {
                        return Err(Error::Internal(format!(
                            "no crossing takes arc {a} to arc {b}"
                        )))
                    }
                }
            }
            if !s.closed && by_under.contains_key(s.arcs.last().unwrap()) {
                return Err(Error::Internal(
                    "terminal arc passes under a crossing".into(),
                ));
            }
        }
        if used != crossings.len() {
            return Err(Error::Internal("crossing not on any strand".into()));
        }
        if crossings.iter().any(|c| !seen.contains(&c.over)) {
            return Err(Error::Internal("overpass on unknown arc".into()));
        }
        Ok(Tangle {
            n_arcs,
            crossings,
            strands,
        })
    }

    /// The 0-cut tangle of a diagram.
    pub fn from_knot(d: &KnotDiagram) -> Self {
        Tangle {
            n_arcs: d.n_arcs(),
            crossings: d.crossings().to_vec(),
            strands: d
                .components()
                .iter()
                .map(|c| Strand {
                    arcs: c.clone(),
                    closed: true,
                })
                .collect(),
        }
    }

    /// Cuts each listed arc into an initial and a terminal half. Terminal
    /// halves are labelled `n+1, n+2, ...` in increasing order of the cut arc.
    pub fn cut(d: &KnotDiagram, arcs: &[ArcId]) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::Precondition("cut needs at least one arc".into()));
        }
        let cut: BTreeSet<ArcId> = arcs.iter().copied().collect();
        if let Some(a) = cut.iter().find(|a| a.0 == 0 || a.0 > d.n_arcs()) {
            return Err(Error::UnknownArc(a.0));
        }
        let n = d.n_arcs();
        let terminal: BTreeMap<ArcId, ArcId> = cut
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, ArcId(n + 1 + i)))
            .collect();
        let retarget = |a: ArcId| terminal.get(&a).copied().unwrap_or(a);
        let crossings = d
            .crossings()
            .iter()
            .map(|c| Crossing {
                over: retarget(c.over),
                under_out: retarget(c.under_out),
                ..*c
            })
            .collect();

        let mut strands = Vec::new();
        for comp in d.components() {
            let starts: Vec<usize> = (0..comp.len())
                .filter(|&p| cut.contains(&comp[p]))
                .collect();
            if starts.is_empty() {
                strands.push(Strand {
                    arcs: comp.clone(),
                    closed: true,
                });
                continue;
            }
            for (idx, &p) in starts.iter().enumerate() {
                let q = starts[(idx + 1) % starts.len()];
                let mut arcs = vec![comp[p]];
                let mut r = (p + 1) % comp.len();
                while r != q {
                    arcs.push(comp[r]);
                    r = (r + 1) % comp.len();
                }
                arcs.push(terminal[&comp[q]]);
                strands.push(Strand {
                    arcs,
                    closed: false,
                });
            }
        }
        strands.sort_by_key(|s| s.arcs[0]);
        Tangle::from_parts(n + cut.len(), crossings, strands)
    }

    pub fn n_arcs(&self) -> usize {
        self.n_arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    /// `(initial, terminal)` endpoint arcs of every open strand.
    pub fn cut_arcs(&self) -> Vec<(ArcId, ArcId)> {
        self.strands
            .iter()
            .filter(|s| !s.closed)
            .map(|s| (s.arcs[0], *s.arcs.last().unwrap()))
            .collect()
    }

    /// All endpoint arcs, initial and terminal.
    pub fn endpoints(&self) -> Vec<ArcId> {
        let mut v: Vec<ArcId> = self
            .cut_arcs()
            .into_iter()
            .flat_map(|(a, b)| [a, b])
            .collect();
        v.sort();
        v
    }

    pub fn string_count(&self) -> usize {
        self.strands.iter().filter(|s| !s.closed).count()
    }

    pub fn is_one_string(&self) -> bool {
        self.strands.len() == 1 && !self.strands[0].closed
    }

    pub fn crossing_under(&self, arc: ArcId) -> Option<&Crossing> {
        self.crossings
            .binary_search_by_key(&arc, |c| c.under_in)
            .ok()
            .map(|i| &self.crossings[i])
    }

    /// Relabels arcs consecutively along the strands, in strand order.
    pub fn renumbered(&self) -> Self {
        let order: Vec<ArcId> = self
            .strands
            .iter()
            .flat_map(|s| s.arcs.iter().copied())
            .collect();
        self.relabel(&order)
    }

    fn relabel(&self, order: &[ArcId]) -> Self {
        let map: BTreeMap<ArcId, ArcId> = order
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, ArcId(i + 1)))
            .collect();
        let f = |a: ArcId| map[&a];
        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                over: f(c.over),
                under_in: f(c.under_in),
                under_out: f(c.under_out),
                sign: c.sign,
            })
            .collect();
        crossings.sort_by_key(|c| c.under_in);
        let strands = self
            .strands
            .iter()
            .map(|s| Strand {
                arcs: s.arcs.iter().map(|&a| f(a)).collect(),
                closed: s.closed,
            })
            .collect();
        Tangle {
            n_arcs: self.n_arcs,
            crossings,
            strands,
        }
    }

    /// Glues the terminal end of `self` to the initial end of `other`. Both
    /// must be 1-string tangles; the glued halves become a single arc.
    pub fn compose(&self, other: &Tangle) -> Result<Tangle> {
        if !self.is_one_string() || !other.is_one_string() {
            return Err(Error::Precondition(
                "composition needs two 1-string tangles".into(),
            ));
        }
        // a bare strand is the identity for composition
        if other.crossings.is_empty() {
            return Ok(self.clone());
        }
        if self.crossings.is_empty() {
            return Ok(other.clone());
        }
        let n1 = self.n_arcs;
        let (_, t1_end) = self.cut_arcs()[0];
        let (t2_start, _) = other.cut_arcs()[0];
        let shift = |a: ArcId| {
            if a == t2_start {
                t1_end
            } else {
                ArcId(n1 + a.0)
            }
        };
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing {
            over: shift(c.over),
            under_in: shift(c.under_in),
            under_out: shift(c.under_out),
            sign: c.sign,
        }));
        let mut arcs = self.strands[0].arcs.clone();
        arcs.extend(other.strands[0].arcs[1..].iter().map(|&a| shift(a)));
        let spread = Tangle {
            n_arcs: n1 + other.n_arcs,
            crossings,
            strands: vec![Strand {
                arcs: arcs.clone(),
                closed: false,
            }],
        };
        let t = spread.relabel(&arcs);
        Tangle::from_parts(n1 + other.n_arcs - 1, t.crossings, t.strands)
    }

    /// Closes every open strand by merging its terminal half into its initial
    /// half. The merged arc is numbered last within its component.
    pub fn close(&self) -> Result<KnotDiagram> {
        let mut merge = BTreeMap::new();
        for (a, b) in self.cut_arcs() {
            merge.insert(b, a);
        }
        let m = |a: ArcId| merge.get(&a).copied().unwrap_or(a);
        let mut order = Vec::new();
        for s in &self.strands {
            if s.closed {
                order.extend(s.arcs.iter().copied());
            } else {
                order.extend(s.arcs[1..s.arcs.len() - 1].iter().copied());
                order.push(s.arcs[0]);
            }
        }
        let map: BTreeMap<ArcId, ArcId> = order
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, ArcId(i + 1)))
            .collect();
        let f = |a: ArcId| map[&m(a)];
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                over: f(c.over),
                under_in: f(c.under_in),
                under_out: f(c.under_out),
                sign: c.sign,
            })
            .collect();
        let unders: BTreeSet<ArcId> = crossings.iter().map(|c| c.under_in).collect();
        let free: Vec<ArcId> = (1..=order.len())
            .map(ArcId)
            .filter(|a| !unders.contains(a))
            .collect();
        KnotDiagram::new(crossings, &free)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_model::parse_pd;

    fn trefoil() -> KnotDiagram {
        parse_pd("X+ 3 1 2 / X+ 1 2 3 / X+ 2 3 1").unwrap()
    }

    #[test]
    fn cut_trefoil_one_arc() {
        let t = Tangle::cut(&trefoil(), &[ArcId(1)]).unwrap();
        assert_eq!(t.n_arcs(), 4);
        assert!(t.is_one_string());
        assert_eq!(t.cut_arcs(), vec![(ArcId(1), ArcId(4))]);
        assert_eq!(
            t.strands()[0].arcs,
            vec![ArcId(1), ArcId(2), ArcId(3), ArcId(4)]
        );
        // crossing 2 had arc 1 over it; the overpass moves to the terminal half
        assert_eq!(t.crossing_under(ArcId(2)).unwrap().over, ArcId(4));
        assert_eq!(t.crossing_under(ArcId(3)).unwrap().under_out, ArcId(4));
        assert!(t.crossing_under(ArcId(4)).is_none());
    }

    #[test]
    fn cut_two_arcs() {
        let t = Tangle::cut(&trefoil(), &[ArcId(2), ArcId(1)]).unwrap();
        assert_eq!(t.string_count(), 2);
        assert_eq!(t.n_arcs(), 5);
        assert_eq!(
            t.cut_arcs(),
            vec![(ArcId(1), ArcId(5)), (ArcId(2), ArcId(4))]
        );
    }

    #[test]
    fn cut_errors() {
        assert!(matches!(
            Tangle::cut(&trefoil(), &[]),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            Tangle::cut(&trefoil(), &[ArcId(9)]),
            Err(Error::UnknownArc(9))
        );
    }

    #[test]
    fn close_undoes_cut() {
        let d = trefoil();
        assert_eq!(Tangle::cut(&d, &[ArcId(3)]).unwrap().close().unwrap(), d);
        let rotated = Tangle::cut(&d, &[ArcId(1)]).unwrap().close().unwrap();
        assert_eq!(rotated.crossings().len(), 3);
        let u = KnotDiagram::unknot();
        assert_eq!(Tangle::cut(&u, &[ArcId(1)]).unwrap().close().unwrap(), u);
    }

    #[test]
    fn compose_counts() {
        let t = Tangle::cut(&trefoil(), &[ArcId(3)]).unwrap();
        let tt = t.compose(&t).unwrap();
        assert_eq!(tt.crossings().len(), 6);
        assert_eq!(tt.n_arcs(), 7);
        assert!(tt.is_one_string());
        assert!(t.compose(&Tangle::from_knot(&trefoil())).is_err());
    }
}
