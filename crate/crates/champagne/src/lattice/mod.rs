//! Integer holonomy of point clouds that are locally lattices.
//!
//! A cell (anchor plus two edge vectors) is carried along a loop by unit
//! lattice steps, re-reading its edges from the cloud after every step.
//! Back at the start, the carried edges are an integer recombination of
//! the original ones; that matrix is the monodromy.

mod cell;
mod hash;
mod transport;

pub use cell::{estimate_cell, estimate_cell_with};
pub use hash::SpatialHash;
pub use transport::{lattice_monodromy, transport_cell, TransportResult};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix2;

pub type Point2 = [f64; 2];

/// Per-axis normalisation: coordinates are divided by `(s1, s2)` so that
/// the lattice pitch is of order one in both directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeScale {
    pub s1: f64,
    pub s2: f64,
}

impl LatticeScale {
    pub fn new(s1: f64, s2: f64) -> Result<Self> {
        if !(s1 > 0.0 && s2 > 0.0 && s1.is_finite() && s2.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "scale must be positive, got ({s1}, {s2})"
            )));
        }
        Ok(Self { s1, s2 })
    }

    /// Default for a joint spectrum with parameter `h`. The energy pitch
    /// near the bottom of the well is about `2h` and grows with `E`, while
    /// the `j` pitch is exactly `h`; `3h` keeps cells close to square.
    pub fn for_joint_spectrum(h: f64) -> Self {
        Self { s1: 3.0 * h, s2: h }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        [p[0] / self.s1, p[1] / self.s2]
    }

    pub fn unapply(&self, p: Point2) -> Point2 {
        [p[0] * self.s1, p[1] * self.s2]
    }
}

/// Anchor and edge vectors of a lattice cell, in cloud coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeCell {
    pub anchor: Point2,
    pub v1: Point2,
    pub v2: Point2,
}

impl LatticeCell {
    pub fn det(&self) -> f64 {
        self.v1[0] * self.v2[1] - self.v1[1] * self.v2[0]
    }

    /// The four corners, counter-clockwise from the anchor when `det > 0`.
    pub fn corners(&self) -> [Point2; 4] {
        let a = self.anchor;
        [
            a,
            [a[0] + self.v1[0], a[1] + self.v1[1]],
            [a[0] + self.v1[0] + self.v2[0], a[1] + self.v1[1] + self.v2[1]],
            [a[0] + self.v2[0], a[1] + self.v2[1]],
        ]
    }
}

/// Tolerances of cell matching and holonomy extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportOptions {
    /// Snap distance limit as a fraction of the shorter rescaled edge.
    pub snap_fraction: f64,
    /// Largest accepted distance of a holonomy entry from an integer.
    pub rounding_threshold: f64,
    /// Cap on lattice steps towards a single loop vertex.
    pub max_steps_per_vertex: usize,
    /// Neighbours of the anchor examined by [`estimate_cell`].
    pub neighbours: usize,
    /// A step towards an intermediate loop vertex must gain at least this
    /// fraction of the shorter edge; stops the anchor hopping back and forth
    /// while the target creeps along.
    pub hysteresis: f64,
}

impl Default for TransportOptions {
    fn default() -> Self {
        Self {
            snap_fraction: 0.35,
            rounding_threshold: 0.2,
            max_steps_per_vertex: 64,
            neighbours: 11,
            hysteresis: 0.25,
        }
    }
}

/// `(trace, det, M is unipotent and not I)` of a unimodular matrix.
pub fn conjugacy_invariants(m: &IntMatrix2) -> Result<(i64, i64, bool)> {
    let det = m.det();
    if det.abs() != 1 {
        return Err(Error::NotUnimodular { det });
    }
    let n = IntMatrix2::new(m.a - 1, m.b, m.c, m.d - 1);
    let unipotent = n * n == IntMatrix2::new(0, 0, 0, 0) && *m != IntMatrix2::IDENTITY;
    Ok((m.trace(), det, unipotent))
}
