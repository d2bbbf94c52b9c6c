//! Error type shared by the analytic core.

use alloc::string::String;
use core::fmt;

/// Errors surfaced by the analytic core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The caller violated an operation's contract (bad parameters, empty
    /// input where nonempty input is required, mismatched spaces).
    Usage(String),
    /// Input data is corrupt or exceeds a quality threshold (unsorted
    /// serialized triples, zero degrees, out-of-order timestamps).
    DataQuality(String),
    /// A 64-bit packet accumulator overflowed; the input is corrupt.
    CountOverflow,
    /// Malformed address or label text; the payload is the offending input.
    AddrParse(String),
    /// A curve fit cannot proceed on this input (for example an all-zero
    /// correlation curve).
    DegenerateFit(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::DataQuality(msg) => write!(f, "data quality error: {msg}"),
            Error::CountOverflow => write!(f, "packet count overflowed 64-bit accumulator"),
            Error::AddrParse(text) => write!(f, "malformed address: {text:?}"),
            Error::DegenerateFit(msg) => write!(f, "degenerate fit: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
