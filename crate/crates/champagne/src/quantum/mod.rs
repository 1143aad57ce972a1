//! Quantised champagne bottle: `Ĥ = -(h²/2)Δ + r⁴ - r²`, `Ĵ = (h/i)∂θ`.
//!
//! `Ĵ` is diagonal in the angular Fourier modes `e^{imθ}` with eigenvalue
//! `m h`, so `Ĥ` splits into one radial operator per `m`.

mod radial;
mod spectrum;

pub use radial::{radial_matrix, sector_eigenvalues, sector_matrix};
pub use spectrum::{
    chi, chi_inverse, joint_spectrum, perturbed_spectrum, spectral_lattice, ComplexSpectrumPoint, SpectrumPoint,
};

use crate::classical::potential;
use crate::error::{Error, Result};

/// Discretisation and cut-offs for the quantum computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumConfig {
    /// Semiclassical parameter.
    pub h: f64,
    /// Dirichlet radius.
    pub radius: f64,
    /// Radial grid cells.
    pub grid_n: usize,
    /// Largest `|m|`; `None` widens until a sector has no level below `e_max`.
    pub m_max: Option<u32>,
    pub e_max: f64,
    /// Strength of the `iεĴ` perturbation.
    pub epsilon: f64,
}

impl Default for QuantumConfig {
    fn default() -> Self {
        Self {
            h: 0.1,
            radius: 2.2,
            grid_n: 4000,
            m_max: None,
            e_max: 1.5,
            epsilon: 0.1f64.sqrt(),
        }
    }
}

impl QuantumConfig {
    pub const MIN_GRID: usize = 200;
    /// Required gap between `V(R)` and `e_max`.
    pub const WALL_MARGIN: f64 = 1.0;

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.h > 0.0 && self.h.is_finite()) {
            return bad(format!("h must be positive, got {}", self.h));
        }
        if self.grid_n < Self::MIN_GRID {
            return bad(format!("grid_n must be >= {}, got {}", Self::MIN_GRID, self.grid_n));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return bad(format!("radius must be positive, got {}", self.radius));
        }
        if !self.e_max.is_finite() {
            return bad("e_max must be finite".into());
        }
        if !(potential(self.radius) >= self.e_max + Self::WALL_MARGIN) {
            return bad(format!(
                "V(R) = {} must exceed e_max + {} = {}",
                potential(self.radius),
                Self::WALL_MARGIN,
                self.e_max + Self::WALL_MARGIN
            ));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon must be >= 0, got {}", self.epsilon));
        }
        Ok(())
    }

    /// Radial grid spacing `R / N`.
    pub fn dr(&self) -> f64 {
        self.radius / self.grid_n as f64
    }
}
