use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One-based arc label, consecutive along the orientation of each component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcId(pub usize);

impl ArcId {
    /// Zero-based position, used as a matrix or vertex index.
    pub fn index(self) -> usize {
        self.0 - 1
    }

    pub fn from_index(i: usize) -> Self {
        ArcId(i + 1)
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_i64(s: i64) -> Option<Self> {
        match s {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// A signed crossing: `under_in` passes beneath `over` and continues as
/// `under_out`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub over: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: Sign,
}

impl Crossing {
    pub fn new(sign: Sign, over: usize, under_in: usize, under_out: usize) -> Self {
        Crossing {
            over: ArcId(over),
            under_in: ArcId(under_in),
            under_out: ArcId(under_out),
            sign,
        }
    }
}

/// A validated diagram of a knot or link.
///
/// Crossings are stored sorted by `under_in`. Every component is a cyclic run
/// of consecutive arc labels; a component without undercrossings is a single
/// free arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    n_arcs: usize,
    crossings: Vec<Crossing>,
    components: Vec<Vec<ArcId>>,
}

impl KnotDiagram {
    /// Validates crossing data. `free_arcs` lists components that never pass
    /// under anything (each is a single arc).
    pub fn new(crossings: Vec<Crossing>, free_arcs: &[ArcId]) -> Result<Self> {
        if crossings.is_empty() && free_arcs.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let mut referenced = BTreeSet::new();
        let mut under_in = BTreeSet::new();
        let mut under_out = BTreeSet::new();
        for c in &crossings {
            for a in [c.over, c.under_in, c.under_out] {
                if a.0 == 0 {
                    return Err(Error::ArcNumbering("arc labels start at 1".into()));
                }
                referenced.insert(a);
            }
            if !under_in.insert(c.under_in) {
                return Err(Error::ArcNumbering(format!(
                    "arc {} passes under twice",
                    c.under_in
                )));
            }
            if !under_out.insert(c.under_out) {
                return Err(Error::ArcNumbering(format!(
                    "arc {} emerges twice",
                    c.under_out
                )));
            }
        }
        let mut free = BTreeSet::new();
        for &a in free_arcs {
            if a.0 == 0 {
                return Err(Error::ArcNumbering("arc labels start at 1".into()));
            }
            if under_in.contains(&a) || under_out.contains(&a) {
                return Err(Error::ArcNumbering(format!(
                    "free arc {a} also passes under a crossing"
                )));
            }
            if !free.insert(a) {
                return Err(Error::ArcNumbering(format!("free arc {a} declared twice")));
            }
            referenced.insert(a);
        }
        for c in &crossings {
            if !under_in.contains(&c.over)
                && !under_out.contains(&c.over)
                && !free.contains(&c.over)
            {
                return Err(Error::DanglingArc(c.over.0));
            }
        }
        let n_arcs = referenced.iter().next_back().map_or(0, |a| a.0);
        for k in 1..=n_arcs {
            let a = ArcId(k);
            if free.contains(&a) {
                continue;
            }
            match (under_in.contains(&a), under_out.contains(&a)) {
                (true, true) => {}
                (false, false) => return Err(Error::ArcNumbering(format!("arc {k} is missing"))),
                _ => return Err(Error::NonClosedComponent(k)),
            }
        }

        let mut succ = vec![None; n_arcs + 1];
        for c in &crossings {
            succ[c.under_in.0] = Some(c.under_out.0);
        }
        let mut components = Vec::new();
        let mut k = 1;
        while k <= n_arcs {
            let start = k;
            if free.contains(&ArcId(k)) {
                components.push(vec![ArcId(k)]);
                k += 1;
                continue;
            }
            let mut comp = vec![ArcId(start)];
            let mut cur = start;
            loop {
                let next = succ[cur].expect("checked above");
                if next == start {
                    break;
                }
                if next != cur + 1 {
                    return Err(Error::ArcNumbering(format!(
                        "arc {cur} continues as arc {next}, expected {} or {start}",
                        cur + 1
                    )));
                }
                comp.push(ArcId(next));
                cur = next;
            }
            k = cur + 1;
            components.push(comp);
        }

        let mut crossings = crossings;
        crossings.sort_by_key(|c| c.under_in);
        Ok(KnotDiagram {
            n_arcs,
            crossings,
            components,
        })
    }

    /// The crossingless unknot: one free arc.
    pub fn unknot() -> Self {
        KnotDiagram {
            n_arcs: 1,
            crossings: Vec::new(),
            components: vec![vec![ArcId(1)]],
        }
    }

    pub fn n_arcs(&self) -> usize {
        self.n_arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<ArcId>] {
        &self.components
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> {
        (1..=self.n_arcs).map(ArcId)
    }

    /// The crossing at which `arc` passes under, if any.
    pub fn crossing_under(&self, arc: ArcId) -> Option<&Crossing> {
        self.crossings
            .binary_search_by_key(&arc, |c| c.under_in)
            .ok()
            .map(|i| &self.crossings[i])
    }

    pub fn free_arcs(&self) -> Vec<ArcId> {
        self.components
            .iter()
            .filter(|c| c.len() == 1 && self.crossing_under(c[0]).is_none())
            .map(|c| c[0])
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.as_i64()).sum()
    }

    /// Reflection in the projection plane: same arcs, all signs flipped.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                sign: c.sign.flipped(),
                ..*c
            })
            .collect();
        KnotDiagram {
            crossings,
            ..self.clone()
        }
    }

    /// Canonical text form: one crossing per line sorted by `under_in`, then
    /// one `O <arc>` line per free arc.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.crossings {
            out.push_str(&format!(
                "X{} {} {} {}\n",
                c.sign.symbol(),
                c.over,
                c.under_in,
                c.under_out
            ));
        }
        for a in self.free_arcs() {
            out.push_str(&format!("O {a}\n"));
        }
        out
    }

    /// Inline form accepted by the CLI, crossings separated by ` / `.
    pub fn render_inline(&self) -> String {
        self.render().lines().collect::<Vec<_>>().join(" / ")
    }
}
