//! Computer-algebra kernel for finite-dimensional associative algebras
//! given by structure constants.
//!
//! The crate provides exact element arithmetic (rational or `f64`
//! backends), the conjugation / scalar-vector split, noncommutative
//! polynomials with two-sided coefficients and their canonical tensors,
//! division by linear divisors with an exact recomposition contract,
//! quadratic solvers over the quaternions with full root-set
//! classification (finite pairs, double zero, root spheres), the linear
//! Sylvester equation `ax − xa = b`, and a deterministic multistart Newton
//! root scanner.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod conjugation;
pub mod divide;
pub mod linalg;
pub mod onesided;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod solve;
pub mod verify;

pub use algebra::{AlgebraError, AlgebraSpec, Element};
pub use conjugation::{analyze, ConjugationError, ConjugationProfile};
pub use divide::{divide_linear, DivisionResult, LinearDivisor};
pub use onesided::OneSidedPoly;
pub use parse::{parse_element, parse_polynomial, ParseError};
pub use poly::{
    build_question_poly, expand_cube, expand_prod, expand_square, identity_b2_minus_a2,
    viete_expand, CoeffTensor, Monomial, NcPolynomial, PolyError,
};
pub use scalar::{Backend, Scalar};
pub use solve::{
    newton_root_scan, shifted_square, shifted_square_residual_coords, sqrt_conjugation,
    sqrt_quaternion, square_residual_coords, sylvester_linear, RootSet, ScanConfig, SolveError,
};
pub use verify::{run_identity_suite, CheckReport};
