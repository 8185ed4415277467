use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter failed its construction invariant.
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    /// The inputs fall outside the regime where a closed-form model holds.
    #[error("outside model regime: {0}")]
    Regime(String),

    /// An operation was asked of a geometry it is not defined for.
    #[error("unsupported geometry: {0}")]
    Geometry(String),

    #[error("quadrature did not converge: estimated error {error:.3e} exceeds tolerance {tolerance:.3e}")]
    Quadrature { error: f64, tolerance: f64 },

    #[error("numerical derivative unreliable: {0}")]
    Derivative(String),

    #[error("time grid too coarse: estimated discretization error {error:.3e} exceeds {limit:.3e}")]
    GridTooCoarse { error: f64, limit: f64 },

    #[error("no swap: the phonon trace is identically zero")]
    NoSwap,

    #[error("no trapping: {0}")]
    NoTrapping(String),

    #[error("quality factor is unbounded (zero damping)")]
    UnboundedQuality,

    #[error("unknown sweep axis `{0}`")]
    UnknownAxis(String),

    #[error("scenario: {0}")]
    Scenario(String),

    /// Wraps an error raised while evaluating one stage of a scenario.
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }

    /// True for failures of a numerical method (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Quadrature { .. }
            | Error::Derivative(_)
            | Error::GridTooCoarse { .. }
            | Error::NoSwap
            | Error::NoTrapping(_)
            | Error::UnboundedQuality => true,
            Error::Stage { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| Error::Stage {
            stage,
            source: Box::new(e),
        })
    }
}

/// Checks that `value` is finite and strictly positive.
pub(crate) fn positive(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(what, format!("must be positive, got {value}")))
    }
}

pub(crate) fn non_negative(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(what, format!("must be non-negative, got {value}")))
    }
}
