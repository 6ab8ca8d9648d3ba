use std::fmt;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A point fell outside the map's domain.
    Domain(String),
    /// The requested operation is not available for this map kind or parameter set.
    Capability(String),
    /// A guaranteed accuracy could not be met (error ledger busted, epsilon below
    /// the precision floor, branch region beyond the truncation depth, ...).
    Precision(String),
    /// A precision or size request exceeded a configured hard cap.
    Resource(String),
    /// A cover did not contain an orbit point, or coding preconditions failed.
    Coding(String),
    /// A query point is not covered by any net center at the working scale.
    Coverage(String),
    /// A scale list is incompatible with the point set (below its resolution).
    Scale(String),
    /// Not enough data for the requested statistic.
    SampleSize(String),
    /// An operation was called with inconsistent arguments.
    Usage(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Capability(m) => write!(f, "capability error: {m}"),
            Error::Precision(m) => write!(f, "precision error: {m}"),
            Error::Resource(m) => write!(f, "resource error: {m}"),
            Error::Coding(m) => write!(f, "coding error: {m}"),
            Error::Coverage(m) => write!(f, "coverage error: {m}"),
            Error::Scale(m) => write!(f, "scale error: {m}"),
            Error::SampleSize(m) => write!(f, "sample-size error: {m}"),
            Error::Usage(m) => write!(f, "usage error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
