//! Twisted Alexander polynomials over prime fields, from the twisted Fox
//! matrix and from the arc diagram with matrix-valued weights.

mod poly;
mod rep;

pub use poly::{
    block_row_sums_at_one, column_independence_check, edge_block, image_matrix, phi,
    twisted_alexander_matrix, twisted_alexander_polynomial, twisted_fox_matrix,
    twisted_trace_check, twisted_weight_check, twisted_weight_matrix, TwistedAlexander,
    TwistedTraceRow,
};
pub use rep::{
    dihedral_rep, f_det, f_identity, f_inverse, f_mul, fox_colorings, least_prime_one_mod,
    verify_representation, ColoringSpace, FMat, Representation, RepresentationJson,
};
