use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Quantity undefined at this point (e.g. eigenvector coefficients at zero hopping).
    #[error("singular parameter: {0}")]
    SingularParameter(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("size exceeded: n = {n} is above the dense limit {limit}")]
    SizeExceeded { n: usize, limit: usize },

    #[error("closed form only valid for {expected}, got r = {r}")]
    RegimeViolation { expected: &'static str, r: f64 },

    #[error("schedule never reaches the critical coupling (r = {r})")]
    NoCrossing { r: f64 },

    #[error("unreachable target: adiabatic-limit success probability {limit:.6} <= target {target}")]
    UnreachableTarget { target: f64, limit: f64 },

    #[error("bracket failure: P(tau) stayed below target {target} up to tau = {tau_hi:e} (best P = {best:.6})")]
    BracketFailure { target: f64, tau_hi: f64, best: f64 },
}

impl Error {
    /// True for failures of a computation on valid inputs, as opposed to bad input.
    pub fn is_computational(&self) -> bool {
        matches!(
            self,
            Error::UnreachableTarget { .. } | Error::BracketFailure { .. }
        )
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
