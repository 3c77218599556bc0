//! Exact arithmetic over Q and number fields Q(alpha), and exact matrix rank.

mod field;
mod matrix;
pub mod poly;
mod rank;

pub use field::{parse_rational, FieldElement, NumberField};
pub use matrix::ExactMatrix;
pub use rank::{companion_embed, multiplication_matrix, rank_exact};

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;
