use super::QuantumConfig;
use crate::classical::potential;
use crate::error::{Error, Result};
use crate::numerics::{tridiag_eigenvalues, TridiagonalSym};

/// Sector operator `Ĥ_m` on `L²(r dr)` as a symmetric tridiagonal matrix.
///
/// Finite volumes on cells `[iΔr, (i+1)Δr]` centred at `r_i = (i+½)Δr`,
/// with the flux through each face weighted by its radius, then
/// symmetrised by `√r_i`:
///
/// ```text
/// d_i = h²/Δr² + m²h²/(2 r_i²) + V(r_i)
/// e_i = -(h²/(2Δr²)) (i+1) / √((i+½)(i+3/2))
/// ```
///
/// The face at `r = 0` carries no flux, so no boundary condition is needed
/// there; `u = 0` is imposed at the face `r = R`.
pub fn radial_matrix(m: i32, cfg: &QuantumConfig) -> Result<TridiagonalSym> {
    cfg.validate()?;
    sector_matrix(m, cfg.h, cfg.radius, cfg.grid_n)
}

/// [`radial_matrix`] from raw parameters, without the config's grid and
/// wall requirements.
pub fn sector_matrix(m: i32, h: f64, radius: f64, n: usize) -> Result<TridiagonalSym> {
    if n == 0 || !(h > 0.0) || !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "sector matrix needs n >= 1, h > 0, R > 0; got ({n}, {h}, {radius})"
        )));
    }
    let dr = radius / n as f64;
    let h2 = h * h;
    let kin = h2 / (dr * dr);
    let m2 = (m as f64) * (m as f64);
    let d = (0..n)
        .map(|i| {
            let r = (i as f64 + 0.5) * dr;
            kin + 0.5 * m2 * h2 / (r * r) + potential(r)
        })
        .collect();
    let e = (0..n - 1)
        .map(|i| {
            let x = i as f64;
            -0.5 * kin * (x + 1.0) / ((x + 0.5) * (x + 1.5)).sqrt()
        })
        .collect();
    TridiagonalSym::new(d, e)
}

/// Levels of `Ĥ_m` up to `cfg.e_max`, ascending.
pub fn sector_eigenvalues(m: i32, cfg: &QuantumConfig) -> Result<Vec<f64>> {
    let t = radial_matrix(m, cfg)?;
    let (lo, _) = t.gershgorin();
    if lo > cfg.e_max {
        return Ok(Vec::new());
    }
    tridiag_eigenvalues(&t, (lo - 1.0, cfg.e_max))
}
