//! Classical, quantum and spectral monodromy of the champagne-bottle system
//! `H = |ξ|²/2 + |x|⁴ - |x|²`, `J = x1 ξ2 - x2 ξ1`.
//!
//! * [`numerics`]: cubic roots, Chebyshev-weighted quadrature, Brent, tridiagonal eigenvalues.
//! * [`classical`]: momentum map, critical values, singularity types, actions, monodromy.
//! * [`quantum`]: sector discretisation, joint spectrum, the `P_ε` spectrum and `χ`.
//! * [`lattice`]: cell estimation and transport on lattice-like point clouds.
//!
//! ```
//! use champagne::classical::{classical_monodromy, EllipseLoop};
//! use champagne::IntMatrix2;
//!
//! let lp = EllipseLoop::default_enclosing().vertices();
//! assert_eq!(classical_monodromy(&lp).unwrap(), IntMatrix2::new(1, 0, 1, 1));
//! ```

pub mod classical;
mod error;
pub mod lattice;
mod matrix;
pub mod numerics;
pub mod quantum;

pub use error::{Error, Result};
pub use matrix::IntMatrix2;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/classical.md")]
    mod classical {}
    #[doc = include_str!("../../../book/src/actions.md")]
    mod actions {}
    #[doc = include_str!("../../../book/src/quantum.md")]
    mod quantum {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
