use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid noise parameter q = {0}: must satisfy 0 <= q < 0.5")]
    InvalidNoise(f64),

    /// NCOMP was asked to design for a noiseless channel. Its threshold slack
    /// has `q` in the denominator; use COMP instead.
    #[error("q = 0 is the noiseless case: use COMP instead of NCOMP")]
    UseNoiseless,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid experiment: {0}")]
    InvalidSpec(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub(crate) fn check_noise(q: f64) -> Result<()> {
    if (0.0..0.5).contains(&q) {
        Ok(())
    } else {
        Err(Error::InvalidNoise(q))
    }
}

pub(crate) fn check_instance(n: usize, d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidInstance(format!("d must be at least 1 (got n = {n}, d = 0)")));
    }
    if d >= n {
        return Err(Error::InvalidInstance(format!("d = {d} must be smaller than n = {n}")));
    }
    Ok(())
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && delta >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("delta = {delta} must be non-negative")))
    }
}
