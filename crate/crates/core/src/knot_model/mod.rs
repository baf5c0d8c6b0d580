//! Oriented knot and link diagrams as arcs plus signed crossings, tangles
//! obtained by cutting arcs, and the diagram surgeries built on them.

mod diagram;
mod ops;
mod parse;
mod tangle;
mod wirtinger;

pub use diagram::{ArcId, Crossing, KnotDiagram, Sign};
pub use ops::{cable, connected_sum, cut, split_union};
pub use parse::{parse_pd, DiagramJson};
pub use tangle::{Strand, Tangle};
pub use wirtinger::{wirtinger, Presentation};
