use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid primitive: {0}")]
    InvalidPrimitive(String),
    #[error("scene induces an empty set")]
    EmptySet,
    #[error("scene file: {0}")]
    SceneFormat(String),
    #[error("projection set at {0:?} is a continuum and no minimizer of r could be isolated")]
    DegenerateProjection([f64; 2]),
    #[error("point {0:?} is not on the boundary of S")]
    NotBoundary([f64; 2]),
    #[error("no proximal normal at {0:?} meets the sphere-realization requirement")]
    NoValidNormal([f64; 2]),
    #[error("point {0:?} lies in S, not in its complement")]
    NotInComplement([f64; 2]),
    #[error("gamma = {0} outside the admissible range [1/(2 sqrt 3 - 2), 1)")]
    GammaOutOfRange(f64),
    #[error("t = {t} outside [0, {varrho}]")]
    BadT { t: f64, varrho: f64 },
    #[error("query point is not inside the given ball")]
    XNotInBall,
    #[error("segment nesting precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("normal oracle failed its audit at {at:?}: {reason}")]
    NormalOracleFailure { at: [f64; 2], reason: String },
    #[error("certificate at {at:?} failed verification (margin {margin:e}); the scene likely violates the exterior sphere hypothesis")]
    VerificationFailure { at: [f64; 2], margin: f64 },
    #[error("analytic and sampled checks disagree: analytic {analytic:e}, sampled {sampled:e}")]
    OracleDisagreement { analytic: f64, sampled: f64 },
    #[error("no finite supremum detected; largest radius probed {largest_probe}")]
    Unbounded { largest_probe: f64 },
    #[error("random scene generation exhausted after {attempts} attempts")]
    GenerationExhausted { attempts: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable identifier used in machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::InvalidPrimitive(_) => "InvalidPrimitive",
            Error::EmptySet => "EmptySet",
            Error::SceneFormat(_) => "SceneFormat",
            Error::DegenerateProjection(_) => "DegenerateProjection",
            Error::NotBoundary(_) => "NotBoundary",
            Error::NoValidNormal(_) => "NoValidNormal",
            Error::NotInComplement(_) => "NotInComplement",
            Error::GammaOutOfRange(_) => "GammaOutOfRange",
            Error::BadT { .. } => "BadT",
            Error::XNotInBall => "XNotInBall",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::NormalOracleFailure { .. } => "NormalOracleFailure",
            Error::VerificationFailure { .. } => "VerificationFailure",
            Error::OracleDisagreement { .. } => "OracleDisagreement",
            Error::Unbounded { .. } => "Unbounded",
            Error::GenerationExhausted { .. } => "GenerationExhausted",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
        }
    }

    /// Whether the error means a check failed, as opposed to bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::VerificationFailure { .. }
                | Error::OracleDisagreement { .. }
                | Error::NormalOracleFailure { .. }
                | Error::NoValidNormal(_)
        )
    }
}
