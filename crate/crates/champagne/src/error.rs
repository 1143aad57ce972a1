use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("empty interval [{a}, {b}]")]
    EmptyInterval { a: f64, b: f64 },
    #[error("no sign change on [{a}, {b}]")]
    NoSignChange { a: f64, b: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quadrature did not converge with {nodes} nodes")]
    QuadratureNoConvergence { nodes: usize },
    #[error("no classical annulus at (E, j) = ({e}, {j})")]
    NoClassicalAnnulus { e: f64, j: f64 },
    #[error("({e}, {j}) is not a regular value")]
    NotRegular { e: f64, j: f64 },
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("refine loop: |dTheta| = {delta} at vertex {index}")]
    RefineLoop { index: usize, delta: f64 },
    #[error("invalid quantum config: {0}")]
    InvalidConfig(String),
    #[error("chi_inverse needs epsilon > 0")]
    SingularChi,
    #[error("not locally a lattice near ({x}, {y})")]
    NotLocallyLattice { x: f64, y: f64 },
    #[error("transport broke at step {step}: {reason}")]
    TransportBroke { step: usize, reason: String },
    #[error("non-integral holonomy (rounding residual {residual})")]
    NonIntegralHolonomy { residual: f64 },
    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
