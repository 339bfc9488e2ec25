use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by kernel evaluators, special functions and probes.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("modulus k = {0} outside the open interval (0, 1)")]
    ModulusOutOfRange(f64),

    #[error("parameter {0} inadmissible for family {1}")]
    InadmissibleParameter(Complex64, &'static str),

    #[error("point {z} not in the domain for parameter {zeta}")]
    PointOutsideDomain { zeta: Complex64, z: Complex64 },

    #[error("argument {0} within {1:e} of a pole")]
    NearPole(Complex64, f64),

    #[error("evaluation point within {0:e} of the domain boundary")]
    BoundaryGuard(f64),

    #[error("endpoint {0} hits a singularity of the elliptic integrand")]
    SingularEndpoint(Complex64),

    #[error("argument {0} lands on the branch cut [1/4, inf)")]
    BranchCut(Complex64),

    #[error("root solve did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("finite-difference stencil at {zeta} with step {h:e} exits the domain")]
    StencilExitsDomain { zeta: Complex64, h: f64 },

    #[error("truncation tail bound {bound:e} exceeds requested tolerance {tol:e}")]
    TailBound { bound: f64, tol: f64 },

    #[error("quadrature failed to reach tolerance {0:e}")]
    QuadratureFailure(f64),

    #[error("orthonormalization lost more than 8 digits at degree {0}")]
    IllConditioned(usize),

    #[error("fewer than {0} usable points along the approach path")]
    InsufficientPoints(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
