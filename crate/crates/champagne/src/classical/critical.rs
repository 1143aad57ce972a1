use std::f64::consts::FRAC_1_SQRT_2;

use super::{EMValue, PhasePoint};
use crate::error::{Error, Result};
use crate::numerics::{cubic_real_roots, Cubic};

/// Radius of the circle of minima of `r⁴ - r²`.
pub const RING_RADIUS: f64 = FRAC_1_SQRT_2;
/// Minimum of `H`.
pub const MIN_ENERGY: f64 = -0.25;

/// `j² / (2r²) + r⁴ - r²`.
pub fn effective_potential(r: f64, j: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let u = r * r;
    Ok(0.5 * j * j / u + u * u - u)
}

/// Critical values at radius `r`: `(E, +j)` and `(E, -j)` with
/// `E = 3r⁴ - 2r²`, `j = √(4r⁶ - 2r⁴)`.
pub fn critical_value_curve(r: f64) -> Result<(EMValue, EMValue)> {
    if !(r >= RING_RADIUS) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "critical curve needs r >= 1/sqrt(2), got {r}"
        )));
    }
    let u = r * r;
    let e = (3.0 * u - 2.0) * u;
    let j = u * lambda_abs(r);
    Ok((EMValue::new(e, j), EMValue::new(e, -j)))
}

/// `√(4r² - 2)`, factored so that it vanishes exactly at `RING_RADIUS`.
fn lambda_abs(r: f64) -> f64 {
    2.0 * ((r - RING_RADIUS) * (r + RING_RADIUS)).max(0.0).sqrt()
}

/// Rank-one point over `critical_value_curve(r)` with sign `sign` of `j`,
/// together with the multiplier `λ` in `∇H = λ ∇J`.
pub fn critical_phase_point(r: f64, sign: f64) -> Result<(PhasePoint, f64)> {
    critical_value_curve(r)?;
    let lambda = sign.signum() * lambda_abs(r);
    Ok((PhasePoint::new(r, 0.0, 0.0, lambda * r), lambda))
}

/// Largest `|j|` in the image at energy `e`.
pub fn j_max(e: f64) -> Result<f64> {
    if !(e >= MIN_ENERGY) || !e.is_finite() {
        return Err(Error::InvalidArgument(format!("energy {e} is below the image")));
    }
    // 3u² - 2u = e for the outer branch u >= 1/2.
    let u = (1.0 + (1.0 + 3.0 * e).sqrt()) / 3.0;
    Ok((u * u * (4.0 * u - 2.0)).max(0.0).sqrt())
}

/// `c` lies in the closed image of the momentum map.
pub fn in_image(c: EMValue) -> bool {
    match j_max(c.e) {
        Ok(jm) => c.j.abs() <= jm,
        Err(_) => false,
    }
}

/// `c` is in the open image, off the critical curve, and not `(0, 0)`.
pub fn is_regular_value(c: EMValue) -> bool {
    in_open_image(c) && !(c.e == 0.0 && c.j == 0.0)
}

/// Open image: strictly inside, off the critical curve. Unlike
/// [`is_regular_value`] this admits `(0, 0)`.
fn in_open_image(c: EMValue) -> bool {
    if !(c.e.is_finite() && c.j.is_finite()) || c.e <= MIN_ENERGY {
        return false;
    }
    match j_max(c.e) {
        Ok(jm) => c.j.abs() < jm * (1.0 - 1e-12),
        Err(_) => false,
    }
}

/// Roots `u0 <= u_min < u_max` of `2u³ - 2u² - 2Eu + j²`, `u = r²`.
/// The radial motion lives on `[u_min, u_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RadialRoots {
    pub u0: f64,
    pub umin: f64,
    pub umax: f64,
}

pub(crate) fn radial_roots(c: EMValue) -> Result<RadialRoots> {
    let fail = Error::NoClassicalAnnulus { e: c.e, j: c.j };
    if !in_open_image(c) {
        return Err(fail);
    }
    if c.j == 0.0 {
        // 2u(u² - u - E): closed form, arranged to avoid cancellation.
        let s = (1.0 + 4.0 * c.e).sqrt();
        let upper = 0.5 * (1.0 + s);
        let lower = -2.0 * c.e / (1.0 + s);
        return Ok(if c.e > 0.0 {
            RadialRoots {
                u0: lower,
                umin: 0.0,
                umax: upper,
            }
        } else {
            RadialRoots {
                u0: 0.0,
                umin: lower,
                umax: upper,
            }
        });
    }
    let roots = cubic_real_roots(&Cubic::new(2.0, -2.0, -2.0 * c.e, c.j * c.j))?;
    if roots.len() != 3 || !(roots[1] > 0.0) || !(roots[1] < roots[2]) {
        return Err(fail);
    }
    Ok(RadialRoots {
        u0: roots[0].min(0.0),
        umin: roots[1],
        umax: roots[2],
    })
}

/// Radial turning points `(r_min, r_max)` for `c` strictly inside the image.
/// At `(0, 0)` this is the separatrix range `(0, 1)`.
pub fn turning_points(c: EMValue) -> Result<(f64, f64)> {
    let r = radial_roots(c)?;
    Ok((r.umin.sqrt(), r.umax.sqrt()))
}

/// Euclidean distance in the `(E, j)` plane from `c` to the critical curve.
pub fn distance_to_critical_curve(c: EMValue) -> f64 {
    let dist = |r: f64| {
        let u = r * r;
        let e = (3.0 * u - 2.0) * u;
        let j = u * lambda_abs(r);
        (e - c.e).hypot(j - c.j.abs())
    };
    // Past this radius the curve's energy exceeds c.e by more than the
    // distance from c to the curve's endpoint.
    let bound = (c.e - MIN_ENERGY).hypot(c.j) + c.e.max(0.0) + 1.0;
    let u_hi = (1.0 + (1.0 + 3.0 * bound).sqrt()) / 3.0;
    let (lo, hi) = (RING_RADIUS, u_hi.sqrt());
    let n = 2000;
    let step = (hi - lo) / n as f64;
    let mut best = (dist(lo), 0usize);
    for i in 1..=n {
        let d = dist(lo + step * i as f64);
        if d < best.0 {
            best = (d, i);
        }
    }
    // Golden-section refinement around the best sample.
    let mut a = lo + step * (best.1.max(1) - 1) as f64;
    let mut b = (lo + step * (best.1 + 1) as f64).min(hi);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let x1 = b - g * (b - a);
        let x2 = a + g * (b - a);
        if dist(x1) < dist(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    best.0.min(dist(0.5 * (a + b)))
}

/// Boundary of the image for `E <= e_max` as a polyline: upper branch from
/// `e_max` down to `(-1/4, 0)`, then the lower branch back out.
pub fn image_boundary(e_max: f64, samples: usize) -> Result<Vec<EMValue>> {
    if !(e_max > MIN_ENERGY) || samples < 2 {
        return Err(Error::InvalidArgument(
            "image boundary needs e_max > -1/4 and >= 2 samples".into(),
        ));
    }
    let u_top = (1.0 + (1.0 + 3.0 * e_max).sqrt()) / 3.0;
    let (r_lo, r_hi) = (RING_RADIUS, u_top.sqrt());
    let mut upper = Vec::with_capacity(samples);
    for i in 0..samples {
        let r = r_hi - (r_hi - r_lo) * i as f64 / (samples - 1) as f64;
        upper.push(critical_value_curve(r.max(r_lo))?.0);
    }
    let mut out = upper.clone();
    out.extend(upper.iter().rev().skip(1).map(|c| EMValue::new(c.e, -c.j)));
    Ok(out)
}
