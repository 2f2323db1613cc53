use thiserror::Error;

/// Errors raised by model construction, formula evaluation and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain (e.g. `theta < 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// Model parameters violate a structural invariant.
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// A theorem hypothesis does not hold for the model (e.g. `psi'(0+) <= 0`).
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("root finding did not converge: {0}")]
    Convergence(String),

    #[error("quadrature did not reach tolerance: {0}")]
    Quadrature(String),

    #[error("scale function backend construction failed: {0}")]
    Backend(String),

    /// Monte Carlo configuration is invalid or outside the oracle's scope.
    #[error("simulation config: {0}")]
    SimConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
