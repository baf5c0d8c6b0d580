//! Rooted spanning arborescences: exhaustive enumeration, tree polynomials
//! and the directed matrix-tree identity.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::arc_graph::{ArcGraph, Edge, WeightSpec, WeightedDigraph};
use crate::error::{Error, Result};
use crate::knot_model::{ArcId, KnotDiagram, Tangle};
use crate::laurent::{Coeff, LaurentPoly};
use crate::par;

pub const DEFAULT_CAP: usize = 1_000_000;

const NONE: usize = usize::MAX;

/// One out-edge per non-root vertex, every out-path ending at a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arborescence {
    pub roots: Vec<usize>,
    pub edges: Vec<Edge>,
    /// go-under edges
    pub go_straight: usize,
    /// jump-up edges
    pub jumps: usize,
}

/// Runs `visit` on the parent array of every arborescence of `adj` rooted at
/// `roots`, in lexicographic order of the chosen targets. The search splits
/// over the first free vertex's choices; one accumulator per branch is
/// returned in order.
pub fn search_arborescences<A, M, V>(
    adj: &[Vec<usize>],
    roots: &[usize],
    cap: usize,
    make: M,
    visit: V,
) -> Result<Vec<A>>
where
    A: Send,
    M: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[usize]) + Sync + Send,
{
    let n = adj.len();
    if roots.is_empty() {
        return Err(Error::Precondition(
            "arborescences need at least one root".into(),
        ));
    }
    if let Some(r) = roots.iter().find(|&&r| r >= n) {
        return Err(Error::UnknownArc(r + 1));
    }
    let mut is_root = vec![false; n];
    for &r in roots {
        is_root[r] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !is_root[v]).collect();
    let Some(&first) = free.first() else {
        let mut acc = make();
        visit(&mut acc, &vec![NONE; n]);
        return Ok(vec![acc]);
    };
    let count = AtomicUsize::new(0);
    let branches = par::map(&adj[first], |&w| {
        let mut acc = make();
        let mut parent = vec![NONE; n];
        let mut st = Search {
            adj,
            is_root: &is_root,
            free: &free,
            cap,
            count: &count,
        };
        if st.creates_cycle(&parent, first, w) {
            return Ok(acc);
        }
        parent[first] = w;
        st.descend(1, &mut parent, &mut |p| visit(&mut acc, p))?;
        Ok(acc)
    });
    branches.into_iter().collect()
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    is_root: &'a [bool],
    free: &'a [usize],
    cap: usize,
    count: &'a AtomicUsize,
}

impl Search<'_> {
    fn creates_cycle(&self, parent: &[usize], v: usize, w: usize) -> bool {
        let mut x = w;
        loop {
            if x == v {
                return true;
            }
            if self.is_root[x] || parent[x] == NONE {
                return false;
            }
            x = parent[x];
        }
    }

    fn descend(
        &mut self,
        depth: usize,
        parent: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        if depth == self.free.len() {
            if self.count.fetch_add(1, Ordering::Relaxed) >= self.cap {
                return Err(Error::EnumerationCap(self.cap));
            }
            visit(parent);
            return Ok(());
        }
        let v = self.free[depth];
        for &w in &self.adj[v] {
            if self.creates_cycle(parent, v, w) {
                continue;
            }
            parent[v] = w;
            self.descend(depth + 1, parent, visit)?;
            parent[v] = NONE;
        }
        Ok(())
    }
}

fn arc_adjacency(g: &ArcGraph) -> Vec<Vec<usize>> {
    (0..g.n_vertices())
        .map(|v| g.out_edges(v).iter().map(|e| e.to).collect())
        .collect()
}

fn digraph_adjacency<K: Coeff>(g: &WeightedDigraph<K>) -> Vec<Vec<usize>> {
    (0..g.n_vertices())
        .map(|v| g.out_edges(v).iter().map(|e| e.1).collect())
        .collect()
}

/// All arborescences of an arc graph rooted at `roots` (0-based vertices).
pub fn enumerate_arborescences(g: &ArcGraph, roots: &[usize]) -> Result<Vec<Arborescence>> {
    enumerate_with_cap(g, roots, DEFAULT_CAP)
}

pub fn enumerate_with_cap(g: &ArcGraph, roots: &[usize], cap: usize) -> Result<Vec<Arborescence>> {
    let mut sorted_roots = roots.to_vec();
    sorted_roots.sort_unstable();
    sorted_roots.dedup();
    let branches = search_arborescences(
        &arc_adjacency(g),
        roots,
        cap,
        Vec::new,
        |acc: &mut Vec<Arborescence>, parent| {
            let edges: Vec<Edge> = parent
                .iter()
                .enumerate()
                .filter(|(_, &w)| w != NONE)
                .map(|(v, &w)| {
                    *g.out_edges(v)
                        .iter()
                        .find(|e| e.to == w)
                        .expect("edge exists")
                })
                .collect();
            let go_straight = edges.iter().filter(|e| e.label.is_go_under()).count();
            acc.push(Arborescence {
                roots: sorted_roots.clone(),
                jumps: edges.len() - go_straight,
                go_straight,
                edges,
            });
        },
    )?;
    Ok(branches.into_iter().flatten().collect())
}

/// Sum over arborescences of the product of edge weights.
pub fn digraph_tree_polynomial<K: Coeff>(
    g: &WeightedDigraph<K>,
    roots: &[usize],
) -> Result<LaurentPoly<K>> {
    let ctx = g.ctx();
    let parts = search_arborescences(
        &digraph_adjacency(g),
        roots,
        DEFAULT_CAP,
        LaurentPoly::zero,
        |acc, parent| {
            let mut term = LaurentPoly::one(ctx);
            for (v, &w) in parent.iter().enumerate() {
                if w != NONE {
                    term = &term * g.weight(v, w).expect("edge exists");
                }
            }
            *acc = &*acc + &term;
        },
    )?;
    Ok(parts.iter().fold(LaurentPoly::zero(), |a, b| &a + b))
}

pub fn tree_polynomial<K: Coeff>(
    g: &ArcGraph,
    spec: &WeightSpec<K>,
    roots: &[usize],
) -> Result<LaurentPoly<K>> {
    digraph_tree_polynomial(&g.weighted(spec), roots)
}

/// Tree polynomial of a cut tangle rooted at all of its endpoint halves.
pub fn tangle_tree_polynomial<K: Coeff>(
    t: &Tangle,
    spec: &WeightSpec<K>,
) -> Result<LaurentPoly<K>> {
    let g = ArcGraph::build(t)?;
    let roots: Vec<usize> = t.endpoints().iter().map(|a| a.index()).collect();
    tree_polynomial(&g, spec, &roots)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTreeCheck<K: Coeff> {
    pub det: LaurentPoly<K>,
    pub trees: LaurentPoly<K>,
}

impl<K: Coeff> MatrixTreeCheck<K> {
    pub fn equal(&self) -> bool {
        self.det == self.trees
    }
}

/// Compares the reduced Laplacian determinant with the tree polynomial.
pub fn matrix_tree_check<K: Coeff>(
    g: &WeightedDigraph<K>,
    roots: &[usize],
) -> Result<MatrixTreeCheck<K>> {
    Ok(MatrixTreeCheck {
        det: g.laplacian(roots)?.det()?,
        trees: digraph_tree_polynomial(g, roots)?,
    })
}

/// Signed count `sum (-1)^go_straight 2^jumps` over arborescences of the
/// uncut arc graph rooted at `root_arc`.
pub fn determinant_via_trees(d: &KnotDiagram, root_arc: ArcId) -> Result<i64> {
    if root_arc.0 == 0 || root_arc.0 > d.n_arcs() {
        return Err(Error::UnknownArc(root_arc.0));
    }
    let g = ArcGraph::from_diagram(d)?;
    let trees = enumerate_arborescences(&g, &[root_arc.index()])?;
    Ok(trees
        .iter()
        .map(|a| if a.go_straight % 2 == 0 { 1i64 } else { -1 } << a.jumps)
        .sum())
}
