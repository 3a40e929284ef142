use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("function `{name}` is two-dimensional, got dimension {got}")]
    Dimension { name: String, got: usize },

    #[error("non-finite input coordinate x[{index}] = {value}")]
    NonFiniteInput { index: usize, value: f64 },

    #[error("objective returned {value} at {point:?}")]
    Evaluation { point: Vec<f64>, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown optimizer `{0}`")]
    UnknownOptimizer(String),

    #[error("unknown parameter `{param}` for optimizer `{optimizer}`")]
    UnknownParameter { optimizer: String, param: String },

    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures raised by the objective rather than by configuration.
    pub fn is_evaluation(&self) -> bool {
        matches!(self, Error::Evaluation { .. } | Error::NonFiniteInput { .. })
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

/// Evaluate `f` at `x`, rejecting NaN and infinities.
pub(crate) fn checked_eval<F>(f: &F, x: &[f64]) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let value = f(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Evaluation {
            point: x.to_vec(),
            value,
        })
    }
}
