use std::fmt;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside an operation's domain.
    Domain(String),
    /// An outcome vector is inconsistent with every valid consecutive positive set.
    Decode(String),
    /// Malformed textual input.
    Parse(String),
    /// The request would enumerate or materialize something too large.
    TooLarge(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Decode(msg) => write!(f, "decode error: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::TooLarge(msg) => write!(f, "too large: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
