//! Alexander and twisted Alexander invariants of knot diagrams, computed
//! exactly along three routes that must agree: Fox-calculus determinants,
//! arborescence sums over the arc diagram, and the determinant formula for
//! the arc diagram's Ihara zeta function.

#![allow(clippy::needless_range_loop)]

pub mod alexander;
pub mod arborescence;
pub mod arc_graph;
pub mod corpus;
pub mod error;
pub mod knot_model;
pub mod laurent;
pub mod par;
pub mod twisted;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
