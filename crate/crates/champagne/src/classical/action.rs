use std::f64::consts::PI;

use super::critical::{radial_roots, RadialRoots};
use super::{is_regular_value, EMValue};
use crate::error::{Error, Result};
use crate::numerics::{integrate_inv_sqrt_weight_adaptive, integrate_sqrt_weight_adaptive, QuadratureOptions};

/// Radial action, radial period and rotation angle of the torus over a regular value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionData {
    pub i_r: f64,
    pub t_r: f64,
    pub theta: f64,
}

pub fn action_data(c: EMValue) -> Result<ActionData> {
    action_data_with(c, &QuadratureOptions::default())
}

/// Works in `u = r²`, where `2(E - V_eff) = 2(u - u0)(u - a)(b - u) / u`
/// with `[a, b]` the radial range and `u0 <= 0` the spurious root. The
/// square-root endpoint factor goes into the Chebyshev weight; the `1/u`
/// pole (which touches `a = 0` when `j = 0`) is split off in closed form.
pub fn action_data_with(c: EMValue, opts: &QuadratureOptions) -> Result<ActionData> {
    if !is_regular_value(c) {
        return Err(Error::NotRegular { e: c.e, j: c.j });
    }
    let RadialRoots { u0, umin: a, umax: b } = radial_roots(c)?;
    let s0 = (-2.0 * u0).sqrt();
    let w = move |u: f64| (2.0 * (u - u0)).sqrt();

    // w/u = s0/u + 2/(w + s0); ∫ sqrt((u-a)(b-u))/u du = (π/2)(√b - √a)².
    let pole = s0 * 0.5 * PI * (b.sqrt() - a.sqrt()).powi(2);
    let smooth = integrate_sqrt_weight_adaptive(|u| 2.0 / (w(u) + s0), a, b, opts)?;
    let i_r = (pole + smooth) / (2.0 * PI);

    let t_r = integrate_inv_sqrt_weight_adaptive(|u| 1.0 / w(u), a, b, opts)?;

    let theta = if c.j == 0.0 {
        // Limit from either side is ±π when the range reaches the origin.
        if c.e > 0.0 {
            PI
        } else {
            0.0
        }
    } else {
        // 1/(u w) = 1/(s0 u) + ψ(u); ∫ du / (u sqrt((u-a)(b-u))) = π / sqrt(ab).
        let pole = PI / (s0 * (a * b).sqrt());
        let psi = |u: f64| {
            let wu = w(u);
            -2.0 / ((s0 + wu) * wu * s0)
        };
        let rest = integrate_inv_sqrt_weight_adaptive(psi, a, b, opts)?;
        c.j * (pole + rest)
    };

    if !(i_r.is_finite() && t_r.is_finite() && theta.is_finite()) {
        return Err(Error::NonFinite("action integrals"));
    }
    Ok(ActionData { i_r, t_r, theta })
}
