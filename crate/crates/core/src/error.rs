use thiserror::Error;

/// Errors raised by evaluation, resummation and verification routines.
///
/// Values are carried as preformatted strings so the type stays
/// independent of the scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("invalid base: {0}")]
    InvalidBase(String),

    #[error("invalid hypergeometric parameters: {0}")]
    InvalidSpec(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("no convergence after {terms} terms in {context}")]
    NonConvergence { context: String, terms: usize },

    #[error("theta product and bilateral sum disagree at x = {x} (rel err {rel_err:e})")]
    Consistency { x: String, rel_err: f64 },

    #[error("divergent series {0}: r - s > 1 needs q-Borel/q-Laplace resummation")]
    DivergentSeries(String),

    #[error("argument outside the unit disc for {0}: the series has radius 1")]
    ConvergenceRadius(String),

    #[error("x = {x} lies on the excluded spiral {spiral}")]
    SpiralPole { x: String, spiral: String },

    #[error("spiral sum not converged at window {window}: tail/sum = {ratio:e}")]
    Tail { window: usize, ratio: f64 },

    #[error("contour quadrature not converged at {points} points (last change {change:e})")]
    Quadrature { points: usize, change: f64 },

    #[error("{0} is too close to a theta zero")]
    ZeroProximity(String),

    #[error("negative shift sigma_q^{0} is not supported")]
    NegativeShift(i64),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<QError>,
    },
}

impl QError {
    /// Wraps an error with the name of the sub-expression that produced it.
    pub fn context(self, context: impl Into<String>) -> Self {
        QError::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// Innermost error, skipping context wrappers.
    pub fn root(&self) -> &QError {
        match self {
            QError::Context { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for errors caused by the evaluation point itself (poles, zeros,
    /// excluded spirals, out-of-domain arguments) rather than by numerics.
    pub fn is_domain(&self) -> bool {
        matches!(
            self.root(),
            QError::Domain(_)
                | QError::Pole(_)
                | QError::SpiralPole { .. }
                | QError::ZeroProximity(_)
                | QError::DivergentSeries(_)
                | QError::ConvergenceRadius(_)
                | QError::InvalidBase(_)
                | QError::InvalidSpec(_)
                | QError::NegativeShift(_)
        )
    }
}

pub type Result<T, E = QError> = std::result::Result<T, E>;

pub(crate) trait ResultExt<T> {
    fn ctx(self, context: &str) -> Result<T>;
}

impl<T> ResultExt<T> for Result<T> {
    fn ctx(self, context: &str) -> Result<T> {
        self.map_err(|e| e.context(context))
    }
}
