use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failures of the domain-free numerical kernels.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum NumericsError {
    #[error("no convergence within {limit} refinements")]
    NonConvergence { limit: usize },
    #[error("non-finite value encountered at {at}")]
    NonFinite { at: f64 },
    #[error("root is not bracketed: g(lo) = {g_lo}, g(hi) = {g_hi}")]
    NoBracket { g_lo: f64, g_hi: f64 },
    #[error("invalid argument: {what}")]
    InvalidArgument { what: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    /// Rejected at the boundary: non-finite, non-positive or otherwise
    /// malformed input.
    #[error("invalid {what}: {value}")]
    Invalid { what: &'static str, value: f64 },
    /// The argument lies outside the set where a formula is defined.
    #[error("{what} = {value} lies outside the domain")]
    Domain { what: &'static str, value: f64 },
    /// A formula produced a value outside its admissible range.
    #[error("{what} = {value} is out of range")]
    Range { what: &'static str, value: f64 },
    #[error("the continuous engine requires a path-independent fee rule")]
    PathDependentRule,
    #[error("row has {got} values but the table has {expected} columns")]
    RowShape { expected: usize, got: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Domain,
    Range,
    NonConvergence,
    NonFinite,
    NoBracket,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Invalid { .. } | Error::PathDependentRule | Error::RowShape { .. } => {
                ErrorKind::Validation
            }
            Error::Domain { .. } => ErrorKind::Domain,
            Error::Range { .. } => ErrorKind::Range,
            Error::Numerics(e) => match e {
                NumericsError::NonConvergence { .. } => ErrorKind::NonConvergence,
                NumericsError::NonFinite { .. } => ErrorKind::NonFinite,
                NumericsError::NoBracket { .. } => ErrorKind::NoBracket,
                NumericsError::InvalidArgument { .. } => ErrorKind::Validation,
            },
        }
    }

    /// True for failures of the numerical kernels rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self.kind(),
            ErrorKind::NonConvergence | ErrorKind::NonFinite | ErrorKind::NoBracket
        )
    }
}

/// Checks that `value` is finite and strictly positive.
pub(crate) fn positive(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Invalid { what, value })
    }
}

/// Checks that `value` is finite and non-negative.
pub(crate) fn non_negative(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Invalid { what, value })
    }
}
