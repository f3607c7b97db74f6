use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual subsystems; none of them is ever used for control flow on the
/// happy path.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// An operator produced a monomial outside the graded basis it was
    /// claimed to preserve. Signals a transcription error or a non-QES
    /// parameter choice; never silently truncated.
    #[error("flag violation: operator leaves the degree-{max_degree} basis at monomial {monomial}")]
    FlagViolation { max_degree: u32, monomial: String },

    /// A gauge/measure operation was asked to evaluate on the boundary of
    /// the physical domain (degenerate tetrahedron or vanishing factor).
    #[error("singular point: {0}")]
    SingularPoint(String),

    /// A ground-state parameter that must be positive is not.
    #[error("non-normalizable ground state: {0}")]
    NonNormalizable(String),

    /// Newton iteration failed to reach the residual tolerance.
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// Newton converged, but to a branch with a non-positive component.
    #[error("converged to a non-normalizable branch: gauge params {0:?}")]
    NegativeRoot(Vec<f64>),

    /// An infinite-mass limit was requested with a gauge parameter that must
    /// vanish for the limit to stay finite.
    #[error("bad limit: {0}")]
    BadLimit(String),

    /// A normative identity that the build relies on failed. Build-stopping.
    #[error("identity failure: {0}")]
    IdentityFailure(String),

    /// Richardson fit on the Born-Oppenheimer gap found non-monotone
    /// residuals.
    #[error("no fit: {0}")]
    NoFit(String),

    /// Malformed run configuration.
    #[error("config error: {0}")]
    Config(String),

    /// An operator of derivative order > 2 was passed to the chain-rule
    /// evaluator.
    #[error("unsupported derivative order {0} (chain-rule evaluation is closed only up to order 2)")]
    UnsupportedOrder(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
