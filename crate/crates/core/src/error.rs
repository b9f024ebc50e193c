use alloc::string::String;
use core::fmt;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    Domain(String),
    /// The reported error bound exceeds the requested tolerance.
    AccuracyLoss { bound: f64, tolerance: f64 },
    /// A root could not be bracketed inside the given interval.
    RootBracket { lo: f64, hi: f64 },
    /// Fewer eigenfrequencies were found than predicted.
    MissedRoot { expected: usize, found: usize },
    /// Two consecutive eigenfrequencies are closer than the degeneracy threshold.
    NearDegenerate { index: usize, spacing: f64 },
    /// Adaptive quadrature ran out of subdivisions.
    Quadrature { lo: f64, hi: f64, error: f64 },
    /// The requested truncation exceeds what the inputs provide.
    Truncation { requested: usize, available: usize },
    /// An acceleration profile is malformed or violates the rigidity bound.
    Profile(String),
    /// A closed-form denominator vanished.
    Singular(String),
    /// The operation does not apply to this kind of input.
    Unsupported(String),
}

impl Error {
    /// True for failures of an iterative solver, as opposed to invalid input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::AccuracyLoss { .. }
                | Error::RootBracket { .. }
                | Error::MissedRoot { .. }
                | Error::NearDegenerate { .. }
                | Error::Quadrature { .. }
                | Error::Singular(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::AccuracyLoss { bound, tolerance } => {
                write!(f, "accuracy loss: error bound {bound:e} exceeds tolerance {tolerance:e}")
            }
            Error::RootBracket { lo, hi } => write!(f, "no sign change bracketing a root in [{lo}, {hi}]"),
            Error::MissedRoot { expected, found } => {
                write!(f, "suspected spectral gap: expected {expected} roots, found {found}")
            }
            Error::NearDegenerate { index, spacing } => {
                write!(f, "near-degenerate eigenfrequencies at index {index} (spacing {spacing:e})")
            }
            Error::Quadrature { lo, hi, error } => {
                write!(f, "quadrature on [{lo}, {hi}] did not converge (error estimate {error:e})")
            }
            Error::Truncation { requested, available } => {
                write!(f, "truncation {requested} exceeds available size {available}")
            }
            Error::Profile(msg) => write!(f, "invalid acceleration profile: {msg}"),
            Error::Singular(msg) => write!(f, "singular closed form: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
