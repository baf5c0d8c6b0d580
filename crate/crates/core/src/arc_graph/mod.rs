//! The weighted oriented arc diagram of a tangle: one vertex per arc, a
//! go-under edge and a jump-up edge out of every arc that passes under a
//! crossing.

mod weights;

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::knot_model::{ArcId, KnotDiagram, Sign, Tangle};
use crate::laurent::{Coeff, RingMatrix};

pub use weights::{alexander_spec, alexander_spec_at, unit_spec, WeightSpec, WeightedDigraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeightLabel {
    T1,
    T2,
    S1,
    S2,
}

impl WeightLabel {
    pub fn go_under(sign: Sign) -> Self {
        match sign {
            Sign::Positive => WeightLabel::T1,
            Sign::Negative => WeightLabel::T2,
        }
    }

    pub fn jump_up(sign: Sign) -> Self {
        match sign {
            Sign::Positive => WeightLabel::S1,
            Sign::Negative => WeightLabel::S2,
        }
    }

    pub fn is_go_under(self) -> bool {
        matches!(self, WeightLabel::T1 | WeightLabel::T2)
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Edge between 0-based vertices; `crossing` indexes the tangle's crossing
/// list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: WeightLabel,
    pub crossing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl ArcGraph {
    /// Builds the arc diagram. A crossing with over arc equal to its under-out
    /// arc would produce a repeated edge and is rejected.
    pub fn build(t: &Tangle) -> Result<Self> {
        let mut edges = Vec::with_capacity(2 * t.crossings().len());
        for (ci, c) in t.crossings().iter().enumerate() {
            let from = c.under_in.index();
            edges.push(Edge {
                from,
                to: c.under_out.index(),
                label: WeightLabel::go_under(c.sign),
                crossing: ci,
            });
            edges.push(Edge {
                from,
                to: c.over.index(),
                label: WeightLabel::jump_up(c.sign),
                crossing: ci,
            });
        }
        edges.sort();
        let mut pairs = BTreeSet::new();
        for e in &edges {
            if !pairs.insert((e.from, e.to)) {
                return Err(Error::DuplicateEdge {
                    from: e.from + 1,
                    to: e.to + 1,
                });
            }
        }
        Ok(ArcGraph {
            n: t.n_arcs(),
            edges,
        })
    }

    pub fn from_diagram(d: &KnotDiagram) -> Result<Self> {
        ArcGraph::build(&Tangle::from_knot(d))
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = ArcId> {
        (0..self.n).map(ArcId::from_index)
    }

    /// Edges sorted by `(from, to)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[Edge] {
        let lo = self.edges.partition_point(|e| e.from < v);
        let hi = self.edges.partition_point(|e| e.from <= v);
        &self.edges[lo..hi]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_edges(v).len()
    }

    /// Specializes labels to ring elements.
    pub fn weighted<K: Coeff>(&self, spec: &WeightSpec<K>) -> WeightedDigraph<K> {
        let edges = self
            .edges
            .iter()
            .map(|e| (e.from, e.to, spec.weight(e.label).clone()))
            .collect();
        WeightedDigraph::from_sorted(self.n, edges, spec.ctx())
    }

    pub fn weight_matrix<K: Coeff>(&self, spec: &WeightSpec<K>) -> RingMatrix<K> {
        self.weighted(spec).weight_matrix()
    }

    /// Laplacian with the rows and columns of `roots` (0-based) removed.
    pub fn laplacian<K: Coeff>(
        &self,
        spec: &WeightSpec<K>,
        roots: &[usize],
    ) -> Result<RingMatrix<K>> {
        self.weighted(spec).laplacian(roots)
    }

    /// Block weight matrix: each edge contributes an `m x m` block.
    pub fn block_weight_matrix<K: Coeff>(
        &self,
        m: usize,
        ctx: K::Ctx,
        block: impl Fn(&Edge) -> RingMatrix<K>,
    ) -> Result<RingMatrix<K>> {
        let mut w = RingMatrix::zeros(self.n * m, self.n * m, ctx);
        for e in &self.edges {
            let b = block(e);
            if b.rows() != m || b.cols() != m {
                return Err(Error::Dimension(format!(
                    "edge block is {}x{}, expected {m}x{m}",
                    b.rows(),
                    b.cols()
                )));
            }
            for r in 0..m {
                for c in 0..m {
                    w.add_to(e.from * m + r, e.to * m + c, b.get(r, c));
                }
            }
        }
        Ok(w)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": (1..=self.n).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "from": e.from + 1,
                "to": e.to + 1,
                "label": e.label.to_string(),
                "crossing": e.crossing + 1,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph arcs {\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  a{v} [label=\"{v}\"];");
        }
        for e in &self.edges {
            let style = if e.label.is_go_under() {
                "solid"
            } else {
                "dashed"
            };
            let _ = writeln!(
                out,
                "  a{} -> a{} [label=\"{} c{}\", style={style}];",
                e.from + 1,
                e.to + 1,
                e.label,
                e.crossing + 1
            );
        }
        out.push_str("}\n");
        out
    }
}
