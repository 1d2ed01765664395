use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request is valid physics but not supported by this model.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Adaptive quadrature ran out of subdivisions before reaching tolerance.
    #[error("quadrature did not converge after {subdivisions} subdivisions: estimated error {estimate:e} > requested {requested:e}")]
    Convergence {
        estimate: f64,
        requested: f64,
        subdivisions: usize,
    },

    /// The oscillatory integral cannot be resolved at this time scale.
    #[error("range error: {0}")]
    Range(String),

    /// Adaptive ODE stepping collapsed.
    #[error("step size underflow at t = {t:e} (h = {step:e}); system appears stiff")]
    StepSizeUnderflow { t: f64, step: f64 },

    /// The ODE integrator exceeded its step budget.
    #[error("integrator exceeded {0} steps")]
    MaxSteps(usize),

    /// Zero dissipation leaves no unique fixed point.
    #[error("no unique steady state: dissipation rate is zero")]
    NoSteadyState,

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    /// A sub-stage failed inside a composite pipeline.
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Innermost error, with stage annotations stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for failures of a numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self.root(),
            Error::Convergence { .. }
                | Error::Range(_)
                | Error::StepSizeUnderflow { .. }
                | Error::MaxSteps(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
