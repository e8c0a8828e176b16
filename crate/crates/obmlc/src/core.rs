//! Shared domain types: bit streams, constellation normalization and SNR
//! arithmetic.
//!
//! Conventions used throughout the crate:
//!
//! - `mean_symbol_energy` is the per-real-dimension average symbol energy
//!   `E = A^2/2` of the ternary source `{+A, 0, -A}` with priors
//!   `{1/4, 1/2, 1/4}`. The CB symbol itself carries `A^2 = 2E`.
//! - SNR `gamma` is `E/sigma^2` per real dimension. The two-dimensional
//!   convention (`2E` total energy over `2 sigma^2` total noise power) is
//!   numerically the same value, so [`SnrSpec`] only records which
//!   convention the caller means.
//! - All energies and variances are plain `f64` values in these units.

use crate::error::{Error, Result};
use rand::Rng;

/// Whether a bit stream feeds the low (OB) or high (CB) level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitRole {
    Ob,
    Cb,
}

/// An immutable sequence of bits with a fixed level role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitStream {
    bits: Vec<u8>,
    role: BitRole,
}

impl BitStream {
    /// Builds a stream, rejecting any element other than 0 or 1.
    pub fn new(bits: Vec<u8>, role: BitRole) -> Result<Self> {
        for (index, &value) in bits.iter().enumerate() {
            if value > 1 {
                return Err(Error::InvalidBit { index, value });
            }
        }
        Ok(Self { bits, role })
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>, role: BitRole) -> Self {
        Self {
            bits: bits.into_iter().map(u8::from).collect(),
            role,
        }
    }

    /// Uniform i.i.d. bits from the given generator.
    pub fn random(len: usize, role: BitRole, rng: &mut impl Rng) -> Self {
        Self {
            bits: (0..len).map(|_| u8::from(rng.random_bool(0.5))).collect(),
            role,
        }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn role(&self) -> BitRole {
        self.role
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of 1-bits.
    pub fn popcount(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Positions where the difference with `other` is nonzero.
    pub fn hamming_distance(&self, other: &BitStream) -> usize {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .filter(|(a, b)| a != b)
            .count()
    }
}

/// Constellation scaling: BPSK amplitude `A` and the implied mean symbol
/// energy `A^2/2` of the ternary OB-MLC source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstellationConfig {
    amplitude: f64,
    mean_symbol_energy: f64,
}

impl ConstellationConfig {
    pub fn from_amplitude(amplitude: f64) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude > 0.0) {
            return Err(Error::InvalidAmplitude(amplitude));
        }
        Ok(Self {
            amplitude,
            mean_symbol_energy: amplitude * amplitude / 2.0,
        })
    }

    pub fn from_mean_energy(mean_symbol_energy: f64) -> Result<Self> {
        if !(mean_symbol_energy.is_finite() && mean_symbol_energy > 0.0) {
            return Err(Error::InvalidEnergy(mean_symbol_energy));
        }
        // Re-derive the stored energy from the rounded amplitude so the
        // identity mean = A^2/2 holds bit-exactly.
        Self::from_amplitude((2.0 * mean_symbol_energy).sqrt())
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Per-real-dimension average symbol energy, `A^2/2`.
    pub fn mean_symbol_energy(&self) -> f64 {
        self.mean_symbol_energy
    }

    /// Energy of one CB symbol, exactly twice the mean symbol energy.
    pub fn cb_symbol_energy(&self) -> f64 {
        2.0 * self.mean_symbol_energy
    }
}

impl Default for ConstellationConfig {
    /// Unit mean symbol energy, hence `A = sqrt(2)`.
    fn default() -> Self {
        Self::from_mean_energy(1.0).expect("unit energy is valid")
    }
}

/// Which SNR convention a [`SnrSpec`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    /// gamma = E/sigma^2 on one real dimension.
    OneDim,
    /// gamma = (2E)/(2 sigma^2) over the complex channel; numerically equal
    /// to the one-dimensional value for the same physical scenario.
    TwoDim,
}

/// Linear SNR below which an operating point is treated as carrying no
/// signal at all.
pub const EFFECTIVELY_ZERO_SNR: f64 = 1e-30;

/// A signal-to-noise operating point: linear ratio plus dB view.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrSpec {
    gamma: f64,
    dimension: Dimension,
}

impl SnrSpec {
    pub fn from_linear(gamma: f64, dimension: Dimension) -> Result<Self> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidSnr(gamma));
        }
        Ok(Self { gamma, dimension })
    }

    pub fn from_db(db: f64, dimension: Dimension) -> Result<Self> {
        if !db.is_finite() {
            return Err(Error::NonFinite("SNR in dB"));
        }
        Ok(Self {
            gamma: 10f64.powf(db / 10.0),
            dimension,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn db(&self) -> f64 {
        10.0 * self.gamma.log10()
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    /// True when gamma is positive but too small to matter (for example an
    /// operating point constructed from a hugely negative dB value).
    pub fn is_effectively_zero(&self) -> bool {
        self.gamma < EFFECTIVELY_ZERO_SNR
    }
}

/// `gamma = 10^(db/10)`; dimension supplied by the caller's context.
pub fn snr_from_db(db: f64, dimension: Dimension) -> Result<SnrSpec> {
    SnrSpec::from_db(db, dimension)
}

/// Per-real-dimension noise standard deviation realizing the operating
/// point: `sigma = sqrt(E / gamma)`.
///
/// Valid for both conventions because the two-dimensional gamma equals the
/// per-dimension one. Zero SNR is rejected; mutual-information code handles
/// that limit analytically instead of through an infinite sigma.
pub fn noise_sigma_for(config: &ConstellationConfig, snr: &SnrSpec) -> Result<f64> {
    if snr.gamma() == 0.0 {
        return Err(Error::InfiniteNoise);
    }
    Ok((config.mean_symbol_energy() / snr.gamma()).sqrt())
}
