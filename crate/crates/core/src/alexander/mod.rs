//! Fox free calculus, Alexander matrices and polynomials, and the identities
//! linking them to the arc graph.

mod fox;
mod polynomial;

pub use fox::{fox_derivative, GroupRingElem, GroupWord};
pub use polynomial::{
    abelianized_fox_matrix, alexander_matrix, alexander_minor, alexander_polynomial,
    alexander_polynomial_divided, aligned_alexander_matrix, cut_graph_det,
    fox_equals_arcgraph_check, knot_determinant, multiplicativity_check, split_check,
    triple_agreement, Convention, FoxCheck, PolyIdentity, TripleAgreement,
};
