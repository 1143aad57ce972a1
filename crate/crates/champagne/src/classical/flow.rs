use super::{grad_hamiltonian, PhasePoint};
use crate::error::{Error, Result};

/// Leapfrog (kick–drift–kick) trajectory of the `H` flow; `steps + 1` points
/// including `p0`.
pub fn integrate_flow(p0: PhasePoint, dt: f64, steps: usize) -> Result<Vec<PhasePoint>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
    }
    if !p0.is_finite() {
        return Err(Error::NonFinite("initial phase point"));
    }
    let mut out = Vec::with_capacity(steps + 1);
    out.push(p0);
    let mut p = p0;
    let mut g = grad_hamiltonian(&p);
    for _ in 0..steps {
        let xi1 = p.xi1 - 0.5 * dt * g[0];
        let xi2 = p.xi2 - 0.5 * dt * g[1];
        let x1 = p.x1 + dt * xi1;
        let x2 = p.x2 + dt * xi2;
        let q = PhasePoint::new(x1, x2, xi1, xi2);
        g = grad_hamiltonian(&q);
        p = PhasePoint::new(x1, x2, xi1 - 0.5 * dt * g[0], xi2 - 0.5 * dt * g[1]);
        if !p.is_finite() {
            return Err(Error::NonFinite("flow state"));
        }
        out.push(p);
    }
    Ok(out)
}
