//! Crate-wide error type.

use crate::core::{BitRole, Dimension};
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite {0}")]
    NonFinite(&'static str),

    #[error("SNR must be finite and non-negative, got gamma = {0}")]
    InvalidSnr(f64),

    #[error("gamma = 0 implies infinite noise; handle zero SNR analytically")]
    InfiniteNoise,

    #[error("amplitude must be positive and finite, got {0}")]
    InvalidAmplitude(f64),

    #[error("mean symbol energy must be positive and finite, got {0}")]
    InvalidEnergy(f64),

    #[error("bit value {value} at index {index} is not 0 or 1")]
    InvalidBit { index: usize, value: u8 },

    #[error("expected a {expected:?} stream, got {actual:?}")]
    RoleMismatch { expected: BitRole, actual: BitRole },

    #[error("CB stream exhausted: no CB bit left for symbol index {symbol_index}")]
    CbUnderrun { symbol_index: usize },

    #[error("in-phase and quadrature OB streams differ in length: {in_phase} vs {quadrature}")]
    ObLengthMismatch { in_phase: usize, quadrature: usize },

    #[error("noise standard deviation must be positive, got {0}")]
    InvalidSigma(f64),

    #[error("genie OB stream required in GenieOb mode")]
    MissingGenie,

    #[error("genie OB stream length {actual} does not match frame length {expected}")]
    GenieLengthMismatch { expected: usize, actual: usize },

    #[error("expected a {expected:?} SNR spec, got {actual:?}")]
    DimensionMismatch { expected: Dimension, actual: Dimension },

    #[error("invalid estimator: {0}")]
    InvalidEstimator(String),

    #[error("invalid discrete source: {0}")]
    InvalidSource(String),

    #[error("invalid SNR grid: {0}")]
    InvalidGrid(String),

    #[error("need at least {min} symbols, got {actual}")]
    TooFewSymbols { min: usize, actual: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
