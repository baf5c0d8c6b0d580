//! Exact coefficient arithmetic: Laurent polynomials over the rationals or a
//! prime field, matrices over them, and unit normalization.

mod canonical;
mod coeff;
pub mod linalg;
mod matrix;
mod poly;

pub use canonical::{
    canonical_json, canonicalize, coeff_map, divide_exact, int_coeff_map, CanonicalPoly, Quotient,
    UnitDisplay,
};
pub use coeff::{
    format_rational, is_prime, parse_rational, Coeff, CoeffDisplay, Fp, PrimeField, MAX_MODULUS,
};
pub use matrix::RingMatrix;
pub use poly::{FpPoly, LaurentPoly, QPoly};

pub type QMatrix = RingMatrix<num_rational::BigRational>;
pub type FpMatrix = RingMatrix<Fp>;
