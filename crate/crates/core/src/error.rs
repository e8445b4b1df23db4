use thiserror::Error;

/// Errors raised by the transformation engine, the closed forms and the verifier.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PctError {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("domain error: {what} = {value} lies outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    #[error("power-law branch does not accept gamma = -2; use the inverse-square mass")]
    UnsupportedBranch,

    #[error("effective angular index is complex: radicand {radicand} < 0")]
    ComplexIndex { radicand: f64 },

    #[error("target potential has a pole at r = {r}")]
    Pole { r: f64 },

    #[error("no bound state: {0}")]
    NoBoundState(String),

    #[error("wavefunction is not normalizable: {0}")]
    Unnormalizable(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl PctError {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Self::Validation(msg.into())
    }

    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Self::Numerical(_) | Self::Pole { .. })
    }
}

pub type Result<T> = std::result::Result<T, PctError>;
