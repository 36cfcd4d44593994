use std::path::PathBuf;

use thiserror::Error;

use crate::quad::QuadratureError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where the physics is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inconsistent or malformed configuration (atom files, CLI options).
    #[error("configuration error: {0}")]
    Config(String),

    /// The requested channel/regime pair has no closed form.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),

    /// A quadrature failure inside a named potential channel.
    #[error("channel {channel} at distance {distance:e}: {source}")]
    Channel {
        channel: String,
        distance: f64,
        #[source]
        source: QuadratureError,
    },

    #[error("{path}: {message}")]
    AtomFile { path: PathBuf, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Quadrature(QuadratureError::InvalidSpec(_)) => false,
            Error::Quadrature(_) | Error::Channel { .. } => true,
            _ => false,
        }
    }
}
