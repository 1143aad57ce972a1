//! Root finding, weighted quadrature and a tridiagonal eigensolver.

mod brent;
mod cubic;
mod quadrature;
mod tridiag;

pub use brent::brent_root;
pub use cubic::{cubic_real_roots, Cubic};
pub use quadrature::{
    integrate_inv_sqrt_weight, integrate_inv_sqrt_weight_adaptive, integrate_sqrt_weight,
    integrate_sqrt_weight_adaptive, QuadratureOptions,
};
pub use tridiag::{tridiag_eigenvalues, tridiag_eigenvalues_tol, TridiagonalSym};
