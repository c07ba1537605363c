use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e}, scale {scale:e})")]
    NotHermitian { asymmetry: f64, scale: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),

    #[error("rotation axis is not a unit vector (norm {0})")]
    NotUnitAxis(f64),

    #[error("washboard has no local minimum at bias {0}")]
    NoMinimum(f64),

    #[error("Josephson inductance is singular at flux {0} (in flux quanta)")]
    InductanceSingular(f64),

    #[error("integration unstable at step {step}: pair number went non-positive")]
    StepUnstable { step: usize },

    #[error("envelope fit failed: {0}")]
    FitFailed(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable variant name, used on the CLI diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::TruncationTooSmall(_) => "TruncationTooSmall",
            Error::NotUnitAxis(_) => "NotUnitAxis",
            Error::NoMinimum(_) => "NoMinimum",
            Error::InductanceSingular(_) => "InductanceSingular",
            Error::StepUnstable { .. } => "StepUnstable",
            Error::FitFailed(_) => "FitFailed",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }

    /// True for failures that originate in the numerics rather than in the
    /// caller's arguments.
    pub fn is_numerical(&self) -> bool {
        !matches!(
            self,
            Error::InvalidParameter(_)
                | Error::DimensionMismatch { .. }
                | Error::NotUnitAxis(_)
                | Error::NoMinimum(_)
                | Error::InductanceSingular(_)
        )
    }
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}
