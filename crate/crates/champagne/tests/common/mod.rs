//! Brute-force reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's numerics; each routine is the
//! slow, obvious way of getting the same number.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Bisection to the last representable bit.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign changes of `f` on a uniform grid, each refined by bisection.
pub fn scan_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).ceil() as usize;
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=n {
        let x1 = (lo + i as f64 * step).min(hi);
        let f1 = f(x1);
        if f0 == 0.0 {
            out.push(x0);
        } else if f0 * f1 < 0.0 {
            out.push(bisect(&f, x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 {
        out.push(x0);
    }
    out
}

/// Midpoint rule on `[0, π/2]`, doubled until two passes agree.
fn midpoint_converged(f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let pass = |n: usize| {
        let h = 0.5 * PI / n as f64;
        (0..n).map(|i| f((i as f64 + 0.5) * h)).sum::<f64>() * h
    };
    let mut n = 16;
    let mut prev = pass(n);
    loop {
        n *= 2;
        let cur = pass(n);
        if (cur - prev).abs() <= tol * cur.abs().max(1e-300) || n > 1 << 22 {
            return cur;
        }
        prev = cur;
    }
}

/// `∫_a^b sqrt((r-a)(b-r)) g(r) dr` through `r = a + (b-a) sin²θ`.
pub fn sqrt_weight_oracle(g: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let w = b - a;
    midpoint_converged(
        |t| {
            let (s, c) = t.sin_cos();
            let jac = 2.0 * w * s * c;
            (w * s * c) * g(a + w * s * s) * jac
        },
        1e-15,
    )
}

/// `∫_a^b g(r) / sqrt((r-a)(b-r)) dr` through the same substitution.
pub fn inv_sqrt_weight_oracle(g: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let w = b - a;
    midpoint_converged(
        |t| {
            let s = t.sin();
            2.0 * g(a + w * s * s)
        },
        1e-15,
    )
}

/// Real roots of a cubic by sign changes on `[-2, 2]` at step `1e-6`.
pub fn cubic_roots_oracle(a3: f64, a2: f64, a1: f64, a0: f64) -> Vec<f64> {
    scan_roots(|u| ((a3 * u + a2) * u + a1) * u + a0, -2.0, 2.0, 1e-6)
}

/// Determinant of `T - λ` by the three-term recurrence.
pub fn char_poly(d: &[f64], e: &[f64], lambda: f64) -> f64 {
    let mut p_prev = 1.0;
    let mut p = d[0] - lambda;
    for k in 1..d.len() {
        let next = (d[k] - lambda) * p - e[k - 1] * e[k - 1] * p_prev;
        p_prev = p;
        p = next;
    }
    p
}

/// Eigenvalues from sign changes of the characteristic polynomial on a grid
/// over the Gershgorin interval.
pub fn tridiag_oracle(d: &[f64], e: &[f64], step: f64) -> Vec<f64> {
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut rad = 0.0;
        if i > 0 {
            rad += e[i - 1].abs();
        }
        if i + 1 < n {
            rad += e[i].abs();
        }
        lo = lo.min(d[i] - rad);
        hi = hi.max(d[i] + rad);
    }
    scan_roots(|x| char_poly(d, e, x), lo - 1e-3, hi + 1e-3, step)
}

/// Coefficients of det(λ - A) for a 4×4 by Faddeev–LeVerrier.
pub fn char_poly_4(a: &[[f64; 4]; 4]) -> [f64; 5] {
    let mul = |x: &[[f64; 4]; 4], y: &[[f64; 4]; 4]| {
        let mut z = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                z[i][j] = (0..4).map(|k| x[i][k] * y[k][j]).sum();
            }
        }
        z
    };
    let mut c = [0.0; 5];
    c[4] = 1.0;
    let mut m = [[0.0; 4]; 4];
    for k in 1..=4 {
        let mut next = mul(a, &m);
        for i in 0..4 {
            next[i][i] += c[5 - k];
        }
        m = next;
        let am = mul(a, &m);
        let tr: f64 = (0..4).map(|i| am[i][i]).sum();
        c[4 - k] = -tr / k as f64;
    }
    c
}

pub fn v_eff(r: f64, j: f64) -> f64 {
    j * j / (2.0 * r * r) + r.powi(4) - r * r
}

/// Radial interval of the torus over `(e, j)`, from a scan of `V_eff - E`
/// at step `1e-6`.
pub fn turning_points_oracle(e: f64, j: f64) -> (f64, f64) {
    let roots = scan_roots(|r| v_eff(r, j) - e, 1e-6, 3.0, 1e-6);
    assert_eq!(roots.len(), 2, "expected two turning points, got {roots:?}");
    (roots[0], roots[1])
}

/// `(I_r, T_r, Θ)` by direct quadrature in `r`, `j != 0`.
pub fn action_oracle(e: f64, j: f64) -> (f64, f64, f64) {
    let (lo, hi) = turning_points_oracle(e, j);
    let w = hi - lo;
    let r_of = |t: f64| lo + w * t.sin().powi(2);
    let dr = |t: f64| 2.0 * w * t.sin() * t.cos();
    // E - V_eff(r) as V_eff(s) - V_eff(r) for the nearer turning point s,
    // so nothing cancels near the edges:
    // V_eff(r) - V_eff(s) = (r² - s²) (r² + s² - 1 - j²/(2 r² s²)).
    let gap = |t: f64| {
        let r = r_of(t);
        let (s, d) = if t < PI / 4.0 {
            (lo, -w * t.sin().powi(2))
        } else {
            (hi, w * t.cos().powi(2))
        };
        d * (r + s) * (r * r + s * s - 1.0 - j * j / (2.0 * r * r * s * s))
    };
    let p = |t: f64| (2.0 * gap(t)).max(0.0).sqrt();
    let i_r = midpoint_converged(|t| p(t) * dr(t), 1e-14) / PI;
    let t_r = 2.0 * midpoint_converged(|t| dr(t) / p(t), 1e-14);
    let theta = 2.0 * j * midpoint_converged(|t| dr(t) / (r_of(t).powi(2) * p(t)), 1e-14);
    (i_r, t_r, theta)
}

/// Lowest eigenvalue of the `m = 0` radial operator by plain bisection on
/// the LDLᵀ inertia count, with the matrix assembled from scratch.
pub fn lowest_radial_level(h: f64, radius: f64, n: usize) -> f64 {
    let dr = radius / n as f64;
    let k = h * h / (dr * dr);
    let d: Vec<f64> = (0..n)
        .map(|i| {
            let r = (i as f64 + 0.5) * dr;
            k + r.powi(4) - r * r
        })
        .collect();
    let e: Vec<f64> = (0..n - 1)
        .map(|i| {
            let (a, b) = (i as f64 + 0.5, i as f64 + 1.5);
            -0.5 * k * (i as f64 + 1.0) / (a * b).sqrt()
        })
        .collect();
    let below = |x: f64| {
        let mut count = 0;
        let mut q = d[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..n {
            let qq = if q == 0.0 { 1e-300 } else { q };
            q = d[i] - x - e[i - 1] * e[i - 1] / qq;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    let (mut lo, mut hi) = (-1.0, 0.0);
    assert_eq!(below(lo), 0);
    assert!(below(hi) >= 1);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Monte Carlo estimate of the phase-space volume `{H <= e}` in `ℝ⁴`: the
/// momentum disc over `x` has area `2π (e - V(x))`.
pub fn energy_shell_volume(e: f64, samples: usize, seed: u64) -> f64 {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    // V(r) <= e needs r⁴ - r² <= e.
    let rmax = ((1.0 + (1.0 + 4.0 * e).sqrt()) / 2.0).sqrt();
    let mut acc = 0.0;
    for _ in 0..samples {
        let x: f64 = rng.gen_range(-rmax..rmax);
        let y: f64 = rng.gen_range(-rmax..rmax);
        let r2 = x * x + y * y;
        let v = r2 * r2 - r2;
        if v < e {
            acc += 2.0 * PI * (e - v);
        }
    }
    acc / samples as f64 * (2.0 * rmax).powi(2)
}
