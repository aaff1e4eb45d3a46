//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while validating inputs or running an
/// analysis pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("evaluation grid too small: need at least {need} points, got {got}")]
    GridTooSmall { need: usize, got: usize },

    #[error("symbol is not normal-valued on the circle (residual {residual:.3e})")]
    NotNormalValued { residual: f64 },

    #[error("compression window {got} is smaller than the symbol support {need}")]
    WindowTooSmall { need: usize, got: usize },

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("matrix is not an orthogonal projection (deviation {0:.3e})")]
    NotProjection(f64),

    #[error("Blaschke zero must lie strictly inside the unit disk (|alpha| = {0})")]
    AlphaOnBoundary(f64),

    #[error("projection trace {0} is not near an integer")]
    TraceNotNearInteger(f64),

    #[error("leading analytic coefficient is singular or ill-conditioned (cond = {0:.3e})")]
    LeadingCoefficientSingular(f64),

    #[error(
        "coanalytic degree m = {m} exceeds analytic degree N = {n}; \
         such an operator is never hyponormal"
    )]
    DegreeViolation { m: usize, n: usize },

    #[error("shift r = {r} exceeds N - m = {max}")]
    ShiftTooLarge { r: usize, max: usize },

    #[error("no constant unitary certificate exists: {0}")]
    NoSolution(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("symbol has negative Fourier support (lowest index {0})")]
    NotAnalytic(i64),

    #[error("symbol is constant; the kernel is all of the Hardy space")]
    ConstantSymbol,

    #[error("wandering subspace has dimension {got}, expected the matrix dimension {expected}")]
    WanderingDimensionMismatch { got: usize, expected: usize },

    #[error("certificate membership failed: {0}")]
    MembershipFailed(String),

    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            detail: detail.into(),
        }
    }
}
