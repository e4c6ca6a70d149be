use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Variants are grouped by the layer that raises them; callers that map
/// errors onto process exit codes use [`Error::class`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("interval [{lo}, {hi}] is not contained in the domain [{domain_lo}, {domain_hi}]")]
    IntervalOutOfDomain {
        lo: String,
        hi: String,
        domain_lo: String,
        domain_hi: String,
    },
    #[error("piecewise domains differ: {0}")]
    DomainMismatch(String),
    #[error("exponent overflow: |eta| * |alpha| = {product:.3} exceeds bound {bound}")]
    Overflow { product: f64, bound: f64 },
    #[error("bad bracket: phi(lo) = {f_lo:e}, phi(hi) = {f_hi:e}; need phi(lo) > 0 > phi(hi)")]
    BadBracket { f_lo: f64, f_hi: f64 },
    #[error("no convergence after {iterations} iterations (last x = {last_x})")]
    NoConvergence { iterations: usize, last_x: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("weighted volume vanishes")]
    DegenerateVolume,
    #[error("no exponential weight exists: {0}")]
    NoRoot(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("not log Fano: {0}")]
    NotLogFano(String),
    #[error("not a weight: Fut_g = {futaki} (relative first moment {relative:.3e})")]
    NotAWeight { futaki: f64, relative: f64 },
    #[error("fixed-curve coefficient mu = {0} lies outside (0, 1)")]
    MuOutOfRange(f64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Coarse error classes, used by the command line for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input: unknown names, malformed documents, invalid data.
    Input,
    /// A mathematical precondition of the requested computation fails.
    Precondition,
    /// Numerical or internal failure.
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_)
            | Error::Validation(_)
            | Error::UnknownName(_)
            | Error::UnknownPoint(_)
            | Error::IntervalOutOfDomain { .. }
            | Error::DomainMismatch(_) => ErrorClass::Input,
            Error::NoRoot(_)
            | Error::NotLogFano(_)
            | Error::NotAWeight { .. }
            | Error::MuOutOfRange(_)
            | Error::PreconditionFailed(_)
            | Error::BadBracket { .. }
            | Error::Overflow { .. } => ErrorClass::Precondition,
            Error::NoConvergence { .. }
            | Error::DegenerateVolume
            | Error::InternalInconsistency(_) => ErrorClass::Internal,
        }
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IntervalOutOfDomain { .. } => "IntervalOutOfDomain",
            Error::DomainMismatch(_) => "DomainMismatch",
            Error::Overflow { .. } => "Overflow",
            Error::BadBracket { .. } => "BadBracket",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::Parse(_) => "ParseError",
            Error::Validation(_) => "ValidationError",
            Error::UnknownName(_) => "UnknownName",
            Error::DegenerateVolume => "DegenerateVolume",
            Error::NoRoot(_) => "NoRoot",
            Error::UnknownPoint(_) => "UnknownPoint",
            Error::NotLogFano(_) => "NotLogFano",
            Error::NotAWeight { .. } => "NotAWeight",
            Error::MuOutOfRange(_) => "MuOutOfRange",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::InternalInconsistency(_) => "InternalInconsistency",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
