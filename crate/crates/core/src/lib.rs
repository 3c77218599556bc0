//! Exact Sylvester rank functions on group algebras, twisted homology of
//! finitely presented groups with coefficients in irreducible representations
//! of products of SL2, and finite-quotient rank approximations.
//!
//! Every rank that appears anywhere in this crate is an exact matrix rank over
//! a number field divided by a declared integer; there is no floating point on
//! any rank path. Floats appear only in [`limitlab`] when fitting convergence
//! rates to already-exact values.

pub mod census;
pub mod error;
pub mod exactalg;
pub mod foxhomology;
pub mod groupcore;
pub mod limitlab;
pub mod padicharris;
pub mod rankfun;
pub mod repweights;

pub use error::{Error, Result};
