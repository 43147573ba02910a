//! Separability analysis for bosonic (permutation-symmetric) multi-qubit
//! states, with machine-checkable certificates.
//!
//! The core result implemented here: a general diagonal symmetric state with
//! Dicke-basis weights `chi_0..chi_N` is separable if and only if the two
//! Hankel matrices built from those weights are positive semidefinite. On the
//! separable side the crate recovers an explicit product-state decomposition
//! by solving a truncated Stieltjes moment problem (allowing an atom at
//! infinity); on the entangled side it produces a diagonal witness that is a
//! sum of squares on the half-line and evaluates strictly negative on the
//! state. Companion modules cover bipartite PPT checks on symmetric cuts and
//! the qudit two-copy case via completely positive matrix factorization.

pub mod batch;
pub mod dicke;
pub mod error;
pub mod gds;
pub mod generate;
pub mod moments;
pub mod numerics;
pub mod par;
pub mod ppt;
pub mod quditcp;
pub mod selftest;
pub mod witness;

pub use error::{Error, Result};
pub use gds::{separability_verdict, Certificate, ChiVector, Status, Verdict};
pub use numerics::ToleranceProfile;
