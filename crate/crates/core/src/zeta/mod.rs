//! Prime cycles of weighted digraphs and the determinant formula for their
//! zeta function, with the path-sum, composition and cabling identities.

mod checks;
mod primes;

pub use checks::{
    cabling_check, composition_check, det_i_minus_w_at, determinant_formula_check, path_sum_check,
    random_samples, spectral_radius_estimate, trace_identity_check, zeta_partial_product,
    zeta_partial_product_approx, DeterminantFormulaCheck, EulerProduct, ExactIdentity, PathSum,
    TraceCheck, TraceRow, DEFAULT_TRACE_HORIZON, EULER_TOLERANCE, EXACT_EULER_LIMIT,
};
pub use primes::{
    adjacency_of_arc_graph, adjacency_of_digraph, closed_walk_sum, prime_cycles, prime_cycles_adj,
    prime_cycles_digraph, ClosedWalk,
};
