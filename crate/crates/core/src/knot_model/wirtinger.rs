use super::diagram::{ArcId, KnotDiagram};
use crate::alexander::GroupWord;

/// Wirtinger presentation of a diagram group: one generator per arc, one
/// relator per crossing, ordered like the crossings (by `under_in`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<ArcId>,
    pub relators: Vec<GroupWord>,
    /// `under_in` arc of the crossing each relator comes from.
    pub relator_arcs: Vec<ArcId>,
}

impl Presentation {
    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    /// The presentation with relator `idx` removed.
    pub fn without_relator(&self, idx: usize) -> Presentation {
        let mut p = self.clone();
        if idx < p.relators.len() {
            p.relators.remove(idx);
            p.relator_arcs.remove(idx);
        }
        p
    }
}

/// Relator for crossing (over `j`, under `i -> k`, sign `e`) is
/// `x_i x_j^e x_k^-1 x_j^-e`. Generator `x_a` has index `a - 1`.
pub fn wirtinger(d: &KnotDiagram) -> Presentation {
    let relators = d
        .crossings()
        .iter()
        .map(|c| {
            let e = c.sign.as_i64() as i8;
            let j = c.over.index();
            GroupWord::from_letters(vec![
                (c.under_in.index(), 1),
                (j, e),
                (c.under_out.index(), -1),
                (j, -e),
            ])
        })
        .collect();
    Presentation {
        generators: d.arcs().collect(),
        relators,
        relator_arcs: d.crossings().iter().map(|c| c.under_in).collect(),
    }
}
