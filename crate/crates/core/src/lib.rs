//! Exact computations with polar data of loop Lie algebra duals.
//!
//! The crate classifies Laurent tails on (possibly twisted) maximal tori into
//! polar strata `(M, λ)`, extracts the ladder of twisted Levi subgroups and
//! depth breaks attached to a stratum, and builds the Moy-Prasad graded
//! lattices 𝔍 together with the character ψ_λ in the type A matrix
//! realization. All arithmetic is exact, over cyclotomic fields.

pub mod chevmap;
pub mod error;
pub mod exactfield;
pub mod linalg;
pub mod looplie;
pub mod polar;
pub mod rootdata;
pub mod scalar;
pub mod tails;
pub mod tori;
pub mod yuseq;

pub use error::{Error, ErrorKind, Result};
pub use exactfield::Cyclotomic;
pub use scalar::{Field, RationalField};

/// Arbitrary-precision rationals; the scalar type used throughout.
pub type Rational = num_rational::BigRational;

/// Elements of ℚ(ζ_L) with arbitrary-precision rational coefficients.
pub type CycloNumber = Cyclotomic<Rational>;
