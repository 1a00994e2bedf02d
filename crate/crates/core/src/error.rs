use num_complex::Complex64;
use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient vanishes; cannot normalize polynomial")]
    DegenerateLeadingCoefficient,

    #[error("{what} did not converge (residual {residual:e})")]
    NoConvergence { what: &'static str, residual: f64 },

    #[error("evaluation point {at} coincides with a pole")]
    PoleHit { at: Complex64 },

    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("quadrature did not reach tolerance {tolerance:e} (estimated error {estimate:e})")]
    QuadratureNoConvergence { tolerance: f64, estimate: f64 },

    #[error("S-matrix core pole at q = {at} (|1 - V0 Q0| = {residual:e})")]
    CorePole { at: Complex64, residual: f64 },

    #[error("amplitudes are undefined at zero momentum")]
    ZeroMomentum,

    #[error("quadratic S-matrix eigenvalues disagree with the separable form by {mismatch:e}")]
    BranchMismatch { mismatch: f64 },

    #[error("model has no closed-form rational resolvent")]
    NotRational,

    #[error("parameter {name} = {value} left its domain during continuation")]
    DomainExit { name: &'static str, value: f64 },

    #[error("pole matching could not be resolved near parameter value {at}")]
    MatchingAmbiguity { at: f64 },

    #[error("no root collision inside bracket [{lo}, {hi}] (closest approach {closest:e})")]
    NoCollisionInBracket { lo: f64, hi: f64, closest: f64 },

    #[error("kernel has not decayed at the box edge (edge/peak = {ratio:e}); increase L")]
    BoxTooSmall { ratio: f64 },

    #[error("could not draw a nondegenerate spectrum after {attempts} attempts")]
    DegenerateSpectrum { attempts: usize },

    #[error("eigenvector matrix is ill-conditioned (condition number {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("eigenvalue {value} has no complex-conjugate partner")]
    UnpairedEigenvalue { value: Complex64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
