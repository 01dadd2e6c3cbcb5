//! Exact computational engine for q-deformed Fock spaces.
//!
//! For a deformation parameter −1 < q < 1 and a finite real orthonormal
//! basis, this crate computes in the algebraic (pre-completion) q-Fock
//! space: the permutation-weighted inner product, creation and
//! annihilation operators, normal-ordered Wick expansions of the field
//! operators `W(ξ)`, second quantization, the conditional expectation
//! onto the subalgebra generated by a single field variable, and the
//! mixing coefficients `C_N` whose decay that subalgebra's structure
//! hinges on.
//!
//! Two scalar backends implement the [`scalar::Scalar`] contract:
//! arbitrary-precision rationals (every advertised identity holds with
//! exact equality) and `f64` (for quick numeric exploration). The backend
//! is a compile-time type parameter, so exact and float values can never
//! mix inside one computation.
//!
//! Organization: [`scalar`] hosts q-arithmetic ([n]_q, q-factorials,
//! q-binomials), [`fock`] the vector space and inner product, [`ops`] the
//! operator layer, [`mixing`] the conditional expectation and decay
//! diagnostics, and [`sample`] seeded generators for randomized checks.

pub mod error;
pub mod fock;
pub mod mixing;
pub mod ops;
pub mod sample;
pub mod scalar;

pub use error::{Error, Result};
pub use fock::{Basis, Contraction, FockVector, Limits, Word};
pub use scalar::{parse_q, ParsedQ, QParam, Rational, Scalar};
