use std::fmt;

use crate::arc_graph::{ArcGraph, WeightedDigraph};
use crate::laurent::{Coeff, LaurentPoly};
use crate::par;

/// A closed walk given by its vertex sequence `v_0 -> v_1 -> ... -> v_0`,
/// stored in its lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedWalk {
    vertices: Vec<usize>,
}

impl ClosedWalk {
    /// Canonical rotation of the given cycle.
    pub fn new(vertices: Vec<usize>) -> Self {
        let k = vertices.len();
        let best = (0..k)
            .min_by(|&a, &b| {
                (0..k)
                    .map(|i| vertices[(a + i) % k])
                    .cmp((0..k).map(|i| vertices[(b + i) % k]))
            })
            .unwrap_or(0);
        let mut v = vertices;
        v.rotate_left(best);
        ClosedWalk { vertices: v }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True when the walk is not a proper power of a shorter walk.
    pub fn is_primitive(&self) -> bool {
        let k = self.len();
        (1..k)
            .filter(|&d| k.is_multiple_of(d))
            .all(|d| (0..k).any(|i| self.vertices[i] != self.vertices[i % d]))
    }

    /// Ordered product of edge weights; `None` if some step is not an edge.
    pub fn weight<K: Coeff>(&self, g: &WeightedDigraph<K>) -> Option<LaurentPoly<K>> {
        let k = self.len();
        let mut w = LaurentPoly::one(g.ctx());
        for i in 0..k {
            w = &w * g.weight(self.vertices[i], self.vertices[(i + 1) % k])?;
        }
        Some(w)
    }
}

impl fmt::Display for ClosedWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            write!(f, "{}->", v + 1)?;
        }
        write!(f, "{}", self.vertices.first().map_or(0, |v| v + 1))
    }
}

/// Successor lists, sorted.
pub fn adjacency_of_arc_graph(g: &ArcGraph) -> Vec<Vec<usize>> {
    (0..g.n_vertices())
        .map(|v| g.out_edges(v).iter().map(|e| e.to).collect())
        .collect()
}

pub fn adjacency_of_digraph<K: Coeff>(g: &WeightedDigraph<K>) -> Vec<Vec<usize>> {
    (0..g.n_vertices())
        .map(|v| g.out_edges(v).iter().map(|e| e.1).collect())
        .collect()
}

/// Every prime cycle of length at most `max_len`, each once, sorted by length
/// then vertex sequence.
///
/// Primes are exactly the closed walks whose vertex sequence is a Lyndon word,
/// so the search only extends prenecklaces and keeps those of full period.
pub fn prime_cycles_adj(adj: &[Vec<usize>], max_len: usize) -> Vec<ClosedWalk> {
    let n = adj.len();
    let has_edge = |u: usize, v: usize| adj[u].binary_search(&v).is_ok();
    let per_start = par::map_range(n, |s| {
        let mut out = Vec::new();
        let mut word = vec![s];
        extend(adj, &has_edge, max_len, &mut word, 1, &mut out);
        out
    });
    let mut all: Vec<ClosedWalk> = per_start
        .into_iter()
        .flatten()
        .map(|vertices| ClosedWalk { vertices })
        .collect();
    all.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    all
}

fn extend(
    adj: &[Vec<usize>],
    has_edge: &dyn Fn(usize, usize) -> bool,
    max_len: usize,
    word: &mut Vec<usize>,
    period: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let k = word.len();
    if period == k && has_edge(word[k - 1], word[0]) {
        out.push(word.clone());
    }
    if k == max_len {
        return;
    }
    let last = word[k - 1];
    let pivot = word[k - period];
    for &b in &adj[last] {
        if b < pivot {
            continue;
        }
        let p = if b == pivot { period } else { k + 1 };
        word.push(b);
        extend(adj, has_edge, max_len, word, p, out);
        word.pop();
    }
}

pub fn prime_cycles(g: &ArcGraph, max_len: usize) -> Vec<ClosedWalk> {
    prime_cycles_adj(&adjacency_of_arc_graph(g), max_len)
}

pub fn prime_cycles_digraph<K: Coeff>(g: &WeightedDigraph<K>, max_len: usize) -> Vec<ClosedWalk> {
    prime_cycles_adj(&adjacency_of_digraph(g), max_len)
}

/// Sum of weights of all closed walks of length `m` with a marked start,
/// by direct search.
pub fn closed_walk_sum<K: Coeff>(g: &WeightedDigraph<K>, m: usize) -> LaurentPoly<K> {
    fn go<K: Coeff>(
        g: &WeightedDigraph<K>,
        start: usize,
        at: usize,
        left: usize,
        acc: &LaurentPoly<K>,
        out: &mut LaurentPoly<K>,
    ) {
        if left == 0 {
            if at == start {
                *out = &*out + acc;
            }
            return;
        }
        for (_, v, w) in g.out_edges(at) {
            go(g, start, *v, left - 1, &(acc * w), out);
        }
    }
    let parts = par::map_range(g.n_vertices(), |s| {
        let mut out = LaurentPoly::zero();
        if m > 0 {
            go(g, s, s, m, &LaurentPoly::one(g.ctx()), &mut out);
        }
        out
    });
    parts.iter().fold(LaurentPoly::zero(), |a, b| &a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc_graph::unit_spec;
    use crate::knot_model::{parse_pd, ArcId, KnotDiagram, Tangle};

    fn trefoil() -> KnotDiagram {
        parse_pd("X+ 3 1 2 / X+ 1 2 3 / X+ 2 3 1").unwrap()
    }

    /// Every closed walk up to rotation, filtered to primitive ones.
    fn brute_primes(adj: &[Vec<usize>], max_len: usize) -> Vec<ClosedWalk> {
        let n = adj.len();
        let mut found = std::collections::BTreeSet::new();
        fn walks(
            adj: &[Vec<usize>],
            w: &mut Vec<usize>,
            max_len: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            if adj[*w.last().unwrap()].contains(&w[0]) {
                out.push(w.clone());
            }
            if w.len() == max_len {
                return;
            }
            for &b in &adj[*w.last().unwrap()] {
                w.push(b);
                walks(adj, w, max_len, out);
                w.pop();
            }
        }
        for s in 0..n {
            let mut out = Vec::new();
            walks(adj, &mut vec![s], max_len, &mut out);
            for w in out {
                let c = ClosedWalk::new(w);
                if c.is_primitive() {
                    found.insert(c);
                }
            }
        }
        let mut v: Vec<_> = found.into_iter().collect();
        v.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.vertices.cmp(&b.vertices))
        });
        v
    }

    #[test]
    fn cut_trefoil_has_one_prime() {
        let t = Tangle::cut(&trefoil(), &[ArcId(1)]).unwrap();
        let g = ArcGraph::build(&t).unwrap();
        let primes = prime_cycles(&g, 6);
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].vertices(), &[1, 2]);
    }

    #[test]
    fn uncut_trefoil_small_primes() {
        let g = ArcGraph::from_diagram(&trefoil()).unwrap();
        let primes = prime_cycles(&g, 3);
        assert_eq!(primes.iter().filter(|p| p.len() == 2).count(), 3);
        assert_eq!(primes.iter().filter(|p| p.len() == 3).count(), 2);
        assert!(primes.contains(&ClosedWalk::new(vec![0, 1, 2])));
        assert!(primes.contains(&ClosedWalk::new(vec![0, 2, 1])));
    }

    #[test]
    fn matches_brute_force() {
        for text in [
            "X- 4 1 2 / X+ 1 2 3 / X- 2 3 4 / X+ 3 4 1",
            "X+ 1 1 2 / X- 2 2 1",
            "X+ 3 1 2 / X+ 1 2 3 / X+ 2 3 1",
        ] {
            let g = ArcGraph::from_diagram(&parse_pd(text).unwrap()).unwrap();
            let adj = adjacency_of_arc_graph(&g);
            assert_eq!(prime_cycles_adj(&adj, 7), brute_primes(&adj, 7));
        }
    }

    #[test]
    fn no_cycles() {
        let g = ArcGraph::from_diagram(&KnotDiagram::unknot()).unwrap();
        assert!(prime_cycles(&g, 5).is_empty());
    }

    #[test]
    fn canonical_rotation_and_powers() {
        assert_eq!(ClosedWalk::new(vec![2, 0, 1]).vertices(), &[0, 1, 2]);
        assert!(!ClosedWalk::new(vec![0, 1, 0, 1]).is_primitive());
        assert!(ClosedWalk::new(vec![0, 0, 1]).is_primitive());
        assert_eq!(ClosedWalk::new(vec![1, 0]).to_string(), "1->2->1");
    }

    #[test]
    fn walk_sum_counts_walks() {
        let g = ArcGraph::from_diagram(&trefoil())
            .unwrap()
            .weighted(&unit_spec::<num_rational::BigRational>(()));
        // every vertex has out-degree 2 and the adjacency matrix is J - I
        let c = |v: i64| LaurentPoly::from_i64_terms(&[(0, v)], ());
        assert_eq!(closed_walk_sum(&g, 1), c(0));
        assert_eq!(closed_walk_sum(&g, 2), c(6));
        assert_eq!(closed_walk_sum(&g, 3), c(6));
    }
}
