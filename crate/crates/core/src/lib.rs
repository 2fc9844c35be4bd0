//! Exact computations around maximal subfields generated by values of
//! multilinear polynomials and group words.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`], [`poly`], [`matrix`]: exact scalars (ℚ, 𝔽_p, 𝔽_{p^k}),
//!   univariate polynomials and square matrices with characteristic and
//!   minimal polynomials.
//! - [`quaternion`]: symbol algebras (a,b/F).
//! - [`algebra`]: the common interface used for evaluation.
//! - [`expr`]: noncommutative Laurent polynomials and group words.
//! - [`gn`]: the alternating polynomial g_n and bounded-degree tests.
//! - [`witness`]: P_m/Q_m targets, preimage searches, block assembly,
//!   maximal-subfield witnesses and degree-bound audits.

pub mod algebra;
pub mod expr;
pub mod field;
pub mod gn;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod quaternion;
pub mod search;
pub mod witness;

pub use algebra::{algebraic_degree, Algebra, DegreeCertificate, MatrixAlgebra};
pub use field::{Fe, Field};
pub use matrix::Matrix;
pub use poly::UnivariatePoly;
pub use quaternion::{Quaternion, QuaternionAlgebra};
