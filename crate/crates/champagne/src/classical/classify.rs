use nalgebra::{Complex, Matrix4};

use super::{grad_angular_momentum, grad_hamiltonian, hessian_angular_momentum, hessian_hamiltonian, PhasePoint};
use crate::error::{Error, Result};

/// Williamson type of a point; the list is exhaustive for this system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularityType {
    Regular,
    RankOneTransverseElliptic,
    RankZeroFocusFocus,
}

/// Eigenvalues closer than this to an axis make `b` non-generic.
const AXIS_TOL: f64 = 1e-8;
const FALLBACK_B: f64 = std::f64::consts::SQRT_2 / 3.0;

/// `Ω · d²(H + bJ)` with `Ω = [[0, I], [-I, 0]]`: the linearised flow of `H + bJ` at `p`.
pub fn linearization(p: &PhasePoint, b: f64) -> [[f64; 4]; 4] {
    let hh = hessian_hamiltonian(p);
    let hj = hessian_angular_momentum();
    let mut k = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            k[i][j] = hh[i][j] + b * hj[i][j];
        }
    }
    // Rows 0,1 take +K[2..4]; rows 2,3 take -K[0..2].
    let mut a = [[0.0; 4]; 4];
    for j in 0..4 {
        a[0][j] = k[2][j];
        a[1][j] = k[3][j];
        a[2][j] = -k[0][j];
        a[3][j] = -k[1][j];
    }
    a
}

/// Eigenvalues of [`linearization`], sorted by real then imaginary part.
pub fn linearization_eigenvalues(p: &PhasePoint, b: f64) -> [Complex<f64>; 4] {
    eigenvalues(&linearization(p, b))
}

fn eigenvalues(a: &[[f64; 4]; 4]) -> [Complex<f64>; 4] {
    let m = Matrix4::from_fn(|i, j| a[i][j]);
    let ev = m.complex_eigenvalues();
    let mut out = [ev[0], ev[1], ev[2], ev[3]];
    out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    out
}

fn norm(v: &[f64; 4]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Classifies `p` by the rank of `{∇H, ∇J}` (threshold `tol`) and, at
/// critical points, by the eigenvalue pattern of the linearised flow.
pub fn classify_point(p: &PhasePoint, tol: f64) -> Result<SingularityType> {
    if !p.is_finite() {
        return Err(Error::NonFinite("phase point"));
    }
    let gh = grad_hamiltonian(p);
    let gj = grad_angular_momentum(p);
    let (nh, nj) = (norm(&gh), norm(&gj));
    if nh <= tol && nj <= tol {
        return classify_rank_zero(p);
    }
    // Component of ∇H orthogonal to ∇J (or ∇J itself when ∇H vanishes).
    let lambda = if nj > tol { dot(&gh, &gj) / (nj * nj) } else { 0.0 };
    let mut resid = [0.0; 4];
    for i in 0..4 {
        resid[i] = gh[i] - lambda * gj[i];
    }
    if nj > tol && norm(&resid) <= tol * nh.max(1.0) {
        return classify_rank_one(p, lambda);
    }
    Ok(SingularityType::Regular)
}

fn classify_rank_zero(p: &PhasePoint) -> Result<SingularityType> {
    for b in [1.0, FALLBACK_B] {
        let ev = linearization_eigenvalues(p, b);
        let off_axes = ev.iter().all(|z| z.re.abs() > AXIS_TOL && z.im.abs() > AXIS_TOL);
        if off_axes {
            return Ok(SingularityType::RankZeroFocusFocus);
        }
    }
    Err(Error::Degenerate(
        "rank-0 point without a focus-focus eigenvalue quadruple".into(),
    ))
}

fn classify_rank_one(p: &PhasePoint, lambda: f64) -> Result<SingularityType> {
    // The flow of H - λJ fixes p; its linearisation is 0 ⊕ (transverse block).
    let ev = linearization_eigenvalues(p, -lambda);
    let mut by_size = ev;
    by_size.sort_by(|x, y| x.norm().total_cmp(&y.norm()));
    let omega = by_size[3].norm();
    let scale = omega.max(1.0);
    let kernel_ok = by_size[0].norm() <= 1e-6 * scale && by_size[1].norm() <= 1e-6 * scale;
    let elliptic = by_size[2..]
        .iter()
        .all(|z| z.re.abs() <= 1e-8 * scale && z.im.abs() > AXIS_TOL);
    if kernel_ok && elliptic {
        Ok(SingularityType::RankOneTransverseElliptic)
    } else {
        Err(Error::Degenerate(format!(
            "rank-1 point with non-elliptic transverse spectrum {ev:?}"
        )))
    }
}
