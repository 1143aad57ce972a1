use crate::error::{Error, Result};

/// `a3 u^3 + a2 u^2 + a1 u + a0`. Not required to be monic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic {
    pub a3: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl Cubic {
    pub fn new(a3: f64, a2: f64, a1: f64, a0: f64) -> Self {
        Self { a3, a2, a1, a0 }
    }

    pub fn eval(&self, u: f64) -> f64 {
        ((self.a3 * u + self.a2) * u + self.a1) * u + self.a0
    }

    pub fn derivative(&self, u: f64) -> f64 {
        (3.0 * self.a3 * u + 2.0 * self.a2) * u + self.a1
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.a3.abs().max(self.a2.abs()).max(self.a1.abs()).max(self.a0.abs())
    }

    fn is_finite(&self) -> bool {
        self.a3.is_finite() && self.a2.is_finite() && self.a1.is_finite() && self.a0.is_finite()
    }
}

/// Real roots of `c`, ascending, repeated according to multiplicity.
///
/// Closed form (Cardano / trigonometric) followed by Newton polishing on the
/// original coefficients. A zero leading coefficient falls back to the
/// quadratic or linear formula.
pub fn cubic_real_roots(c: &Cubic) -> Result<Vec<f64>> {
    if !c.is_finite() {
        return Err(Error::NonFinite("cubic coefficients"));
    }
    if c.scale() < f64::MIN_POSITIVE {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = if c.a3 != 0.0 {
        closed_form(c)
    } else if c.a2 != 0.0 {
        quadratic_roots(c.a2, c.a1, c.a0)
    } else if c.a1 != 0.0 {
        vec![-c.a0 / c.a1]
    } else {
        Vec::new()
    };
    for r in roots.iter_mut() {
        *r = polish(c, *r);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn closed_form(c: &Cubic) -> Vec<f64> {
    let b = c.a2 / c.a3;
    let cc = c.a1 / c.a3;
    let d = c.a0 / c.a3;
    let shift = b / 3.0;
    let p = cc - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
    let half_q = 0.5 * q;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;
    // Cancellation in disc is at the level of its two terms; anything below
    // that is treated as a (near-)double root.
    let noise = 1e-14 * (half_q * half_q + third_p.abs().powi(3));

    if disc <= noise {
        if third_p >= 0.0 {
            // p == 0 and q == 0 up to rounding: triple root.
            let t = (-q).cbrt();
            return vec![t - shift; 3];
        }
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        (0..3).map(|k| m * (phi - tau * k as f64).cos() - shift).collect()
    } else {
        let s = disc.sqrt();
        let big = -half_q.signum() * (half_q.abs() + s).cbrt();
        let small = if big != 0.0 { -third_p / big } else { 0.0 };
        vec![big + small - shift]
    }
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    let noise = 1e-14 * (b * b + (4.0 * a * c).abs());
    if disc < -noise {
        return Vec::new();
    }
    let s = disc.max(0.0).sqrt();
    let q = -0.5 * (b + b.signum() * s);
    if q == 0.0 {
        return vec![0.0, 0.0];
    }
    vec![q / a, c / q]
}

fn polish(c: &Cubic, mut u: f64) -> f64 {
    let mut fu = c.eval(u).abs();
    for _ in 0..16 {
        if fu == 0.0 {
            break;
        }
        let d = c.derivative(u);
        if d == 0.0 {
            break;
        }
        let next = u - c.eval(u) / d;
        let fn_ = c.eval(next).abs();
        if !(fn_ < fu) {
            break;
        }
        u = next;
        fu = fn_;
    }
    u
}
