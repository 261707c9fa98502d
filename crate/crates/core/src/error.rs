use thiserror::Error;

/// Errors produced by the fusion pipeline and its stages.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pnm: {message} (at byte {offset})")]
    Pnm { offset: usize, message: String },

    #[error("dimension mismatch: {left_w}x{left_h} vs {right_w}x{right_h}")]
    DimensionMismatch {
        left_w: usize,
        left_h: usize,
        right_w: usize,
        right_h: usize,
    },

    #[error("invalid dimensions {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },

    #[error("expected {expected} image, got {actual}")]
    WrongColorSpace {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("{levels} decomposition levels is too many for a {width}x{height} plane (max {max})")]
    TooManyLevels {
        levels: usize,
        width: usize,
        height: usize,
        max: usize,
    },

    #[error("wavelet pyramid is inconsistent: {0}")]
    InvalidPyramid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn pnm(offset: usize, message: impl Into<String>) -> Self {
        Error::Pnm {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn mismatch(left: (usize, usize), right: (usize, usize)) -> Self {
        Error::DimensionMismatch {
            left_w: left.0,
            left_h: left.1,
            right_w: right.0,
            right_h: right.1,
        }
    }
}
