//! The classical champagne bottle `H = |ξ|²/2 + r⁴ - r²`, `J = x1 ξ2 - x2 ξ1`.

mod action;
mod classify;
mod critical;
mod flow;
mod monodromy;

pub use action::{action_data, action_data_with, ActionData};
pub use classify::{classify_point, linearization, linearization_eigenvalues, SingularityType};
pub use critical::{
    critical_phase_point, critical_value_curve, distance_to_critical_curve, effective_potential, image_boundary,
    in_image, is_regular_value, j_max, turning_points, MIN_ENERGY, RING_RADIUS,
};
pub use flow::integrate_flow;
pub use monodromy::{classical_monodromy, classical_winding, EllipseLoop, MonodromyOptions, Winding};

/// Point `(x1, x2, ξ1, ξ2)` of phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub x1: f64,
    pub x2: f64,
    pub xi1: f64,
    pub xi2: f64,
}

impl PhasePoint {
    pub const ORIGIN: Self = Self::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(x1: f64, x2: f64, xi1: f64, xi2: f64) -> Self {
        Self { x1, x2, xi1, xi2 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.x2, self.xi1, self.xi2]
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

/// Value `(E, j)` of the momentum map. Always ordered energy first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EMValue {
    pub e: f64,
    pub j: f64,
}

impl EMValue {
    pub const fn new(e: f64, j: f64) -> Self {
        Self { e, j }
    }
}

/// `V(r) = r⁴ - r²` as a function of `s = r²`.
fn potential_s(s: f64) -> f64 {
    s * s - s
}

/// Radial potential `r⁴ - r²`.
pub fn potential(r: f64) -> f64 {
    potential_s(r * r)
}

pub fn hamiltonian(p: &PhasePoint) -> f64 {
    let s = p.x1 * p.x1 + p.x2 * p.x2;
    0.5 * (p.xi1 * p.xi1 + p.xi2 * p.xi2) + potential_s(s)
}

pub fn angular_momentum(p: &PhasePoint) -> f64 {
    p.x1 * p.xi2 - p.x2 * p.xi1
}

pub fn momentum_map(p: &PhasePoint) -> EMValue {
    EMValue::new(hamiltonian(p), angular_momentum(p))
}

/// `∇H` in the order `(∂x1, ∂x2, ∂ξ1, ∂ξ2)`.
pub fn grad_hamiltonian(p: &PhasePoint) -> [f64; 4] {
    let s = p.x1 * p.x1 + p.x2 * p.x2;
    let k = 4.0 * s - 2.0;
    [k * p.x1, k * p.x2, p.xi1, p.xi2]
}

pub fn grad_angular_momentum(p: &PhasePoint) -> [f64; 4] {
    [p.xi2, -p.xi1, -p.x2, p.x1]
}

/// `{H, J}` assembled from the closed-form gradients.
pub fn poisson_bracket_hj(p: &PhasePoint) -> f64 {
    let gh = grad_hamiltonian(p);
    let gj = grad_angular_momentum(p);
    gh[0] * gj[2] + gh[1] * gj[3] - gh[2] * gj[0] - gh[3] * gj[1]
}

pub fn hessian_hamiltonian(p: &PhasePoint) -> [[f64; 4]; 4] {
    let (x, y) = (p.x1, p.x2);
    let vxx = 12.0 * x * x + 4.0 * y * y - 2.0;
    let vyy = 4.0 * x * x + 12.0 * y * y - 2.0;
    let vxy = 8.0 * x * y;
    [
        [vxx, vxy, 0.0, 0.0],
        [vxy, vyy, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

/// Hessian of `J`; constant.
pub fn hessian_angular_momentum() -> [[f64; 4]; 4] {
    [
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ]
}
