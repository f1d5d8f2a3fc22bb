use std::fmt;

/// Errors surfaced by the numeric kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the operation's domain (out-of-range argument, negative
    /// weight, ratio argument at or past its pole, ...).
    Domain(String),
    /// The functional has no sign change on the admissible interval, so no
    /// root exists there.
    NoSignChange { lo: f64, hi: f64 },
    /// The solver exhausted its iteration budget.
    IterationBudget { budget: u32 },
    /// The converged bracket could not certify the requested residual.
    Tolerance { residual: f64, allowed: f64 },
    /// A truncated series cannot certify the requested remainder bound.
    Truncation { required: f64, achieved: f64 },
    /// The quadrature refinement stalled above its target accuracy.
    Quadrature { achieved: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain(msg) => write!(f, "domain error: {msg}"),
            Self::NoSignChange { lo, hi } => {
                write!(f, "no sign change on [{lo}, {hi}]: no root in the admissible interval")
            }
            Self::IterationBudget { budget } => {
                write!(f, "root solver exceeded its iteration budget of {budget}")
            }
            Self::Tolerance { residual, allowed } => {
                write!(f, "residual {residual:e} exceeds the allowed tolerance {allowed:e}")
            }
            Self::Truncation { required, achieved } => write!(
                f,
                "truncation remainder {achieved:e} cannot certify the required bound {required:e}"
            ),
            Self::Quadrature { achieved } => {
                write!(f, "quadrature refinement stalled at error estimate {achieved:e}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
