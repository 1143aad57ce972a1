//! Gauss–Chebyshev rules for integrands with square-root endpoint behaviour.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Node schedule for the adaptive wrappers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub initial_nodes: usize,
    pub rel_tol: f64,
    pub max_nodes: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            initial_nodes: 128,
            rel_tol: 1e-10,
            max_nodes: 1 << 20,
        }
    }
}

fn check_interval(a: f64, b: f64, n: usize) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite("quadrature interval"));
    }
    if a >= b {
        return Err(Error::EmptyInterval { a, b });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
    }
    Ok(())
}

/// `∫_a^b sqrt((r-a)(b-r)) g(r) dr`, second-kind Gauss–Chebyshev with `n` nodes.
pub fn integrate_sqrt_weight<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, n: usize) -> Result<f64> {
    Ok(sqrt_weight_sum(&g, a, b, n)?.0)
}

/// `∫_a^b g(r) / sqrt((r-a)(b-r)) dr`, first-kind Gauss–Chebyshev with `n` nodes.
pub fn integrate_inv_sqrt_weight<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, n: usize) -> Result<f64> {
    Ok(inv_sqrt_weight_sum(&g, a, b, n)?.0)
}

// Both helpers return (value, sum of |w g|); the second is the size scale
// used to judge convergence of integrals that cancel to ~0.
fn sqrt_weight_sum<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64, n: usize) -> Result<(f64, f64)> {
    check_interval(a, b, n)?;
    let c = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let step = PI / (n + 1) as f64;
    let (mut sum, mut mag) = (0.0, 0.0);
    for i in 1..=n {
        let theta = i as f64 * step;
        let s = theta.sin();
        let term = s * s * g(c + half * theta.cos());
        sum += term;
        mag += term.abs();
    }
    let w = step * half * half;
    finite(sum * w, mag * w)
}

fn inv_sqrt_weight_sum<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64, n: usize) -> Result<(f64, f64)> {
    check_interval(a, b, n)?;
    let c = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let step = PI / n as f64;
    let (mut sum, mut mag) = (0.0, 0.0);
    for i in 0..n {
        let theta = (i as f64 + 0.5) * step;
        let term = g(c + half * theta.cos());
        sum += term;
        mag += term.abs();
    }
    finite(sum * step, mag * step)
}

fn finite(v: f64, m: f64) -> Result<(f64, f64)> {
    if v.is_finite() {
        Ok((v, m))
    } else {
        Err(Error::NonFinite("quadrature sum"))
    }
}

fn adaptive<F>(rule: F, opts: &QuadratureOptions) -> Result<f64>
where
    F: Fn(usize) -> Result<(f64, f64)>,
{
    let mut n = opts.initial_nodes.max(1);
    let (mut prev, _) = rule(n)?;
    while n < opts.max_nodes {
        n *= 2;
        let (cur, mag) = rule(n)?;
        let diff = (cur - prev).abs();
        if diff <= opts.rel_tol * cur.abs() || diff <= 1e-15 * mag {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureNoConvergence { nodes: n })
}

/// [`integrate_sqrt_weight`] with the node count doubled until successive
/// results agree to `opts.rel_tol`.
pub fn integrate_sqrt_weight_adaptive<G: Fn(f64) -> f64>(
    g: G,
    a: f64,
    b: f64,
    opts: &QuadratureOptions,
) -> Result<f64> {
    adaptive(|n| sqrt_weight_sum(&g, a, b, n), opts)
}

/// Adaptive counterpart of [`integrate_inv_sqrt_weight`].
pub fn integrate_inv_sqrt_weight_adaptive<G: Fn(f64) -> f64>(
    g: G,
    a: f64,
    b: f64,
    opts: &QuadratureOptions,
) -> Result<f64> {
    adaptive(|n| inv_sqrt_weight_sum(&g, a, b, n), opts)
}
