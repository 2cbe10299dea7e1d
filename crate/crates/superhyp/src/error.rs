//! Error type shared by all modules.

use thiserror::Error;

/// Every failure mode surfaced by the library.
///
/// Residuals and bodies are widened to `f64` so the error type is not generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two operands were built over different generator counts.
    #[error("generator context mismatch: {left} vs {right}")]
    ContextMismatch { left: usize, right: usize },

    /// A generator index outside `1..=N`, a non-increasing index list, or `N` too large.
    #[error("invalid generator index data: {0}")]
    InvalidIndex(String),

    /// A JSON document that does not have the expected shape.
    #[error("invalid document: {0}")]
    InvalidDocument(String),

    /// Division by (or sign of) an element whose body vanishes.
    #[error("zero body in {context}")]
    ZeroBody { context: &'static str },

    /// An analytic lift was asked outside the scalar function's domain.
    #[error("{function} is not defined at body {body}")]
    DomainViolation { function: &'static str, body: f64 },

    /// An argument had the wrong parity (e.g. an even number where a fermion is required).
    #[error("parity violation: {0}")]
    ParityViolation(String),

    /// A point or group element fails its defining constraint.
    #[error("constraint violation: {what} (residual {residual:e})")]
    ConstraintViolation { what: String, residual: f64 },

    /// Two vertices are (numerically) the same point.
    #[error("coincident points: body of pairing minus one is {gap:e}")]
    CoincidentPoints { gap: f64 },

    /// Three vertices lie on a common geodesic.
    #[error("collinear vertices: angle cosine body {cosine}")]
    CollinearVertices { cosine: f64 },

    /// A genericity assumption fails (vanishing denominator of a closed form).
    #[error("genericity violation: {0}")]
    GenericityViolation(String),

    /// A formula valid only for normalized triangles was applied elsewhere.
    #[error("normalization required: {0}")]
    NormalizationRequired(String),

    /// The normalization search found no admissible candidate.
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    /// `arccos` applied to a number whose body is not inside (-1, 1).
    #[error("arccos domain: body {body}")]
    ArccosDomain { body: f64 },

    /// Light-cone points whose pairing has a non-positive body.
    #[error("non-positive pairing: {0}")]
    NonPositivePairing(String),

    /// An adaptive quadrature exhausted its evaluation budget.
    #[error("quadrature tolerance {tol:e} not met after {evaluations} evaluations (estimate {estimate:e})")]
    ToleranceNotMet { tol: f64, evaluations: usize, estimate: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
