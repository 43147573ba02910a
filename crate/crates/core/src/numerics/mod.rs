//! Deterministic dense-matrix and polynomial kernels the rest of the crate
//! builds on: symmetric eigendecomposition, PSD tests, polynomial roots,
//! nonnegativity on the half-line, and small least-squares solvers.

pub mod lsq;
pub mod matrix;
pub mod poly;
mod tolerance;

pub use lsq::{lstsq, nnls, pinv_solve_sym};
pub use matrix::{min_eig_hermitian, min_eig_sym, psd_check, SymEigen, SymMatrix};
pub use poly::{complex_poly_mul, nonneg_on_halfline, real_roots, RealPolynomial};
pub use tolerance::ToleranceProfile;
