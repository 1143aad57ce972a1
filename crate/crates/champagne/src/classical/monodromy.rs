use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;

use super::{action_data_with, is_regular_value, j_max, EMValue};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix2;
use crate::numerics::QuadratureOptions;

/// Ellipse `(E, j) = (cE - aE cos t, cj + aj sin t)`, `t = phase + 2πk/samples`.
///
/// With `phase = 0` it starts at the left end and runs clockwise in the
/// `(E, j)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseLoop {
    pub center: EMValue,
    pub semi_e: f64,
    pub semi_j: f64,
    pub samples: usize,
    pub phase: f64,
}

impl EllipseLoop {
    pub fn new(center: EMValue, semi_e: f64, semi_j: f64, samples: usize) -> Self {
        Self {
            center,
            semi_e,
            semi_j,
            samples,
            phase: 0.0,
        }
    }

    /// Loop around `(0, 0)` used by the classical computation.
    pub fn default_enclosing() -> Self {
        let c = 0.3;
        let jm = j_max(c).expect("0.3 is in the image");
        Self::new(EMValue::new(c, 0.0), 0.4, 0.8 * jm, 256)
    }

    /// Loop around `(0, 0)` used on the quantum lattices.
    pub fn default_quantum() -> Self {
        Self::new(EMValue::new(0.2, 0.0), 0.3, 0.5, 256).with_phase(5.0)
    }

    /// Small loop in the regular region away from `(0, 0)`.
    pub fn default_non_enclosing() -> Self {
        Self::new(EMValue::new(0.8, 0.5), 0.2, 0.2, 256)
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn vertices(&self) -> Vec<EMValue> {
        (0..self.samples)
            .map(|k| {
                let t = self.phase + TAU * k as f64 / self.samples as f64;
                EMValue::new(
                    self.center.e - self.semi_e * t.cos(),
                    self.center.j + self.semi_j * t.sin(),
                )
            })
            .collect()
    }

    pub fn points(&self) -> Vec<[f64; 2]> {
        self.vertices().into_iter().map(|c| [c.e, c.j]).collect()
    }

    /// `p` is strictly inside the ellipse.
    pub fn encloses(&self, p: EMValue) -> bool {
        let x = (p.e - self.center.e) / self.semi_e;
        let y = (p.j - self.center.j) / self.semi_j;
        x * x + y * y < 1.0
    }

    /// Distance from `p` to the ellipse, measured on its vertices.
    pub fn distance_to(&self, p: EMValue) -> f64 {
        self.vertices()
            .iter()
            .map(|v| (v.e - p.e).hypot(v.j - p.j))
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks shape parameters and that every vertex is a regular value.
    pub fn validate(&self) -> Result<()> {
        if !(self.semi_e > 0.0 && self.semi_j > 0.0) || self.samples < 3 {
            return Err(Error::InvalidArgument(format!(
                "loop needs positive semi-axes and >= 3 samples, got ({}, {}, {})",
                self.semi_e, self.semi_j, self.samples
            )));
        }
        for v in self.vertices() {
            if !is_regular_value(v) {
                return Err(Error::NotRegular { e: v.e, j: v.j });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonodromyOptions {
    pub quadrature: QuadratureOptions,
    /// Largest accepted jump of `Θ` between consecutive vertices.
    pub unwrap_limit: f64,
    pub winding_tol: f64,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        Self {
            quadrature: QuadratureOptions::default(),
            unwrap_limit: FRAC_PI_2,
            winding_tol: 1e-3,
        }
    }
}

/// `Θ` along a loop and its unwrapped total variation `2πk`.
#[derive(Debug, Clone, PartialEq)]
pub struct Winding {
    pub thetas: Vec<f64>,
    pub total: f64,
    pub k: i64,
}

fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

fn strip_closing_vertex(lp: &[EMValue]) -> &[EMValue] {
    match (lp.first(), lp.last()) {
        (Some(a), Some(b)) if lp.len() > 1 && a == b => &lp[..lp.len() - 1],
        _ => lp,
    }
}

/// Unwrapped variation of `Θ` around the closed polyline `lp` (the closing
/// edge back to the first vertex is implied).
pub fn classical_winding(lp: &[EMValue], opts: &MonodromyOptions) -> Result<Winding> {
    let lp = strip_closing_vertex(lp);
    if lp.len() < 3 {
        return Err(Error::InvalidArgument("loop needs at least 3 vertices".into()));
    }
    if let Some(v) = lp.iter().find(|v| !is_regular_value(**v)) {
        return Err(Error::NotRegular { e: v.e, j: v.j });
    }
    let thetas = lp
        .par_iter()
        .map(|c| action_data_with(*c, &opts.quadrature).map(|d| d.theta))
        .collect::<Result<Vec<_>>>()?;
    let n = thetas.len();
    let mut total = 0.0;
    for i in 0..n {
        let delta = wrap(thetas[(i + 1) % n] - thetas[i]);
        if delta.abs() >= opts.unwrap_limit {
            return Err(Error::RefineLoop {
                index: i,
                delta: delta.abs(),
            });
        }
        total += delta;
    }
    let k = (total / TAU).round();
    if (total - TAU * k).abs() > opts.winding_tol {
        return Err(Error::Degenerate(format!("winding {total} is not a multiple of 2π")));
    }
    Ok(Winding {
        thetas,
        total,
        k: k as i64,
    })
}

/// `[[1, 0], [k, 1]]` in the basis (S¹ orbit, radial cycle), `k` the winding of `Θ`.
pub fn classical_monodromy(lp: &[EMValue]) -> Result<IntMatrix2> {
    let w = classical_winding(lp, &MonodromyOptions::default())?;
    Ok(IntMatrix2::new(1, 0, w.k, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_loops_are_valid() {
        let enc = EllipseLoop::default_enclosing();
        enc.validate().unwrap();
        assert!(enc.encloses(EMValue::new(0.0, 0.0)));
        let q = EllipseLoop::default_quantum();
        q.validate().unwrap();
        assert!(q.encloses(EMValue::new(0.0, 0.0)));
        let non = EllipseLoop::default_non_enclosing();
        non.validate().unwrap();
        assert!(!non.encloses(EMValue::new(0.0, 0.0)));
    }

    #[test]
    fn wrap_range() {
        assert!((wrap(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap(PI), PI);
        assert!((wrap(-PI) - PI).abs() < 1e-15);
    }

    #[test]
    fn boundary_loop_rejected() {
        let lp = EllipseLoop::new(EMValue::new(0.3, 0.0), 0.4, 2.0, 64).vertices();
        assert!(matches!(classical_monodromy(&lp), Err(Error::NotRegular { .. })));
    }

    #[test]
    fn coarse_loop_needs_refining() {
        let lp = EllipseLoop::default_enclosing().with_samples(4).vertices();
        assert!(matches!(classical_monodromy(&lp), Err(Error::RefineLoop { .. })));
    }
}
