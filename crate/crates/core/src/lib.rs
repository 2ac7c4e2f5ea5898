//! Ranks, first Chern classes and F-curve intersection numbers of type A
//! conformal blocks bundles on the moduli space of stable pointed rational
//! curves, together with checkable vanishing and nonvanishing certificates.
//!
//! Exact arithmetic throughout, except for the Verlinde cross-check.

pub mod criteria;
pub mod divisor;
pub mod error;
pub mod fusion;
pub mod hassett;
pub mod reproduce;
pub mod scalar;
pub mod syntax;
pub mod tensor;
pub mod weights;

pub use criteria::{Certificate, Rule, Verdict};
pub use divisor::{
    degree_on_m04, fcurve_intersection, intersection_vector, is_zero, DivisorClass, FCurve,
};
pub use error::{Error, Result};
pub use fusion::{fusion_rank, rank_quantum, rank_verlinde, BundleSpec};
pub use hassett::HassettWeights;
pub use scalar::ExactScalar;
pub use weights::{LeveledAlgebra, Weight};

/// Arbitrary precision rational, the default exact scalar.
pub type Rational = num_rational::BigRational;

/// Machine-word rational, for hot paths with bounded values.
pub type Rational64 = num_rational::Ratio<i64>;
