//! Bit-to-symbol mapping and demapping for the two-level OB-MLC scheme.
//!
//! Mapping: each OB bit occupies one channel use. An OB bit of 1 consumes
//! the next unconsumed CB bit and transmits its BPSK symbol
//! (`+A` for CB 0, `-A` for CB 1); an OB bit of 0 transmits the vacant
//! symbol 0. The two-dimensional mapper applies the same rule independently
//! on the in-phase and quadrature rails.
//!
//! Demapping: exact log-domain LLRs. The sign convention is that a positive
//! LLR favors bit value 0 on both levels, so downstream soft decoders must
//! negate if they expect the opposite orientation. Hard multistage detection
//! decides the OB level first and only demodulates CB values at positions it
//! believes carry a CB symbol (or at the true positions in genie-aided mode).

use crate::core::{BitRole, BitStream, ConstellationConfig};
use crate::error::{Error, Result};
use crate::numerics::log_sum_exp;
use num_complex::Complex64;
use std::f64::consts::LN_2;

/// A mapped one-dimensional frame: one real symbol per OB bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolFrame {
    symbols: Vec<f64>,
    config: ConstellationConfig,
    cb_positions: Vec<usize>,
}

impl SymbolFrame {
    pub fn symbols(&self) -> &[f64] {
        &self.symbols
    }

    pub fn config(&self) -> &ConstellationConfig {
        &self.config
    }

    /// Indices of symbols that carry a CB symbol, in increasing order.
    pub fn cb_positions(&self) -> &[usize] {
        &self.cb_positions
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Exact number of information bits the frame conveys: one OB bit per
    /// symbol plus one CB bit per occupied position.
    pub fn bits_conveyed(&self) -> usize {
        self.symbols.len() + self.cb_positions.len()
    }
}

/// A mapped two-dimensional frame: one complex symbol per OB-bit pair, with
/// independent CB occupancy per rail.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFrame {
    symbols: Vec<Complex64>,
    config: ConstellationConfig,
    cb_positions_i: Vec<usize>,
    cb_positions_q: Vec<usize>,
}

impl ComplexFrame {
    pub fn symbols(&self) -> &[Complex64] {
        &self.symbols
    }

    pub fn config(&self) -> &ConstellationConfig {
        &self.config
    }

    pub fn cb_positions_i(&self) -> &[usize] {
        &self.cb_positions_i
    }

    pub fn cb_positions_q(&self) -> &[usize] {
        &self.cb_positions_q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The in-phase rail as a one-dimensional frame.
    pub fn in_phase(&self) -> SymbolFrame {
        SymbolFrame {
            symbols: self.symbols.iter().map(|s| s.re).collect(),
            config: self.config,
            cb_positions: self.cb_positions_i.clone(),
        }
    }

    /// The quadrature rail as a one-dimensional frame.
    pub fn quadrature(&self) -> SymbolFrame {
        SymbolFrame {
            symbols: self.symbols.iter().map(|s| s.im).collect(),
            config: self.config,
            cb_positions: self.cb_positions_q.clone(),
        }
    }
}

/// Per-symbol soft decisions. `llr_ob` is defined at every index; `llr_cb`
/// only at the positions the detector treats as CB-bearing.
#[derive(Debug, Clone)]
pub struct LlrFrame {
    llr_ob: Vec<f64>,
    llr_cb: Vec<(usize, f64)>,
}

impl LlrFrame {
    pub fn llr_ob(&self) -> &[f64] {
        &self.llr_ob
    }

    /// `(position, llr)` pairs in increasing position order.
    pub fn llr_cb(&self) -> &[(usize, f64)] {
        &self.llr_cb
    }
}

/// Whether the detector locates CB symbols from its own OB decisions or
/// from the true OB stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionMode {
    GenieOb,
    EstimatedOb,
}

/// Hard multistage detection output.
#[derive(Debug, Clone)]
pub struct DetectionResult {
    pub ob_hat: BitStream,
    pub cb_hat: BitStream,
    pub cb_positions_hat: Vec<usize>,
    pub mode: DetectionMode,
}

fn validate_sigma(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSigma(sigma))
    }
}

/// BPSK mapping of one CB bit: `+A` for 0, `-A` for 1.
pub fn map_cb_symbol(v_c: u8, config: &ConstellationConfig) -> f64 {
    debug_assert!(v_c <= 1);
    if v_c == 0 {
        config.amplitude()
    } else {
        -config.amplitude()
    }
}

/// Maps an OB stream and a CB stream onto a one-dimensional frame.
///
/// Consumes exactly `popcount(ob)` CB bits, in order. Fails identifying the
/// first starved symbol index if the CB stream runs out.
pub fn map_one_dim(
    ob: &BitStream,
    cb: &BitStream,
    config: &ConstellationConfig,
) -> Result<SymbolFrame> {
    if ob.role() != BitRole::Ob {
        return Err(Error::RoleMismatch {
            expected: BitRole::Ob,
            actual: ob.role(),
        });
    }
    if cb.role() != BitRole::Cb {
        return Err(Error::RoleMismatch {
            expected: BitRole::Cb,
            actual: cb.role(),
        });
    }
    let mut symbols = Vec::with_capacity(ob.len());
    let mut cb_positions = Vec::new();
    let mut next_cb = 0usize;
    for (index, &v_o) in ob.bits().iter().enumerate() {
        if v_o == 1 {
            let Some(&v_c) = cb.bits().get(next_cb) else {
                return Err(Error::CbUnderrun {
                    symbol_index: index,
                });
            };
            next_cb += 1;
            symbols.push(map_cb_symbol(v_c, config));
            cb_positions.push(index);
        } else {
            symbols.push(0.0);
        }
    }
    Ok(SymbolFrame {
        symbols,
        config: *config,
        cb_positions,
    })
}

/// Maps independent OB/CB stream pairs onto the in-phase and quadrature
/// rails of a complex frame.
pub fn map_two_dim(
    ob_i: &BitStream,
    cb_i: &BitStream,
    ob_q: &BitStream,
    cb_q: &BitStream,
    config: &ConstellationConfig,
) -> Result<ComplexFrame> {
    if ob_i.len() != ob_q.len() {
        return Err(Error::ObLengthMismatch {
            in_phase: ob_i.len(),
            quadrature: ob_q.len(),
        });
    }
    let re = map_one_dim(ob_i, cb_i, config)?;
    let im = map_one_dim(ob_q, cb_q, config)?;
    let symbols = re
        .symbols
        .iter()
        .zip(&im.symbols)
        .map(|(&r, &i)| Complex64::new(r, i))
        .collect();
    Ok(ComplexFrame {
        symbols,
        config: *config,
        cb_positions_i: re.cb_positions,
        cb_positions_q: im.cb_positions,
    })
}

#[inline]
fn llr_ob_raw(z: f64, a: f64, inv_two_sigma_sq: f64) -> f64 {
    LN_2 - z * z * inv_two_sigma_sq
        - log_sum_exp(
            -(z - a) * (z - a) * inv_two_sigma_sq,
            -(z + a) * (z + a) * inv_two_sigma_sq,
        )
}

/// OB-level LLR `ln[2 p(z|x=0) / (p(z|x=+A) + p(z|x=-A))]`, evaluated in the
/// log domain so it stays finite for any `|z|` and any positive sigma.
/// Positive favors OB bit 0 (vacant symbol).
pub fn llr_ob(z: f64, config: &ConstellationConfig, sigma: f64) -> Result<f64> {
    validate_sigma(sigma)?;
    Ok(llr_ob_raw(z, config.amplitude(), 1.0 / (2.0 * sigma * sigma)))
}

/// CB-level LLR. The exponent ratio `ln[p(z|+A)/p(z|-A)]` collapses to the
/// closed form `2 A z / sigma^2`. Positive favors CB bit 0 (`+A`).
pub fn llr_cb(z: f64, config: &ConstellationConfig, sigma: f64) -> Result<f64> {
    validate_sigma(sigma)?;
    Ok(2.0 * config.amplitude() * z / (sigma * sigma))
}

/// Soft demapper: OB LLRs everywhere, CB LLRs at the given positions.
pub fn soft_demap(
    received: &[f64],
    config: &ConstellationConfig,
    sigma: f64,
    cb_positions: &[usize],
) -> Result<LlrFrame> {
    validate_sigma(sigma)?;
    let a = config.amplitude();
    let inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    let llr_ob = received
        .iter()
        .map(|&z| llr_ob_raw(z, a, inv_two_sigma_sq))
        .collect();
    let llr_cb = cb_positions
        .iter()
        .map(|&p| (p, 2.0 * a * received[p] / (sigma * sigma)))
        .collect();
    Ok(LlrFrame { llr_ob, llr_cb })
}

/// Multistage hard detection: threshold the OB LLRs (ties decide 0), locate
/// CB symbols from those decisions (or from `genie_ob` in genie-aided mode),
/// then threshold the CB LLRs at the located positions.
pub fn detect_multistage(
    received: &[f64],
    config: &ConstellationConfig,
    sigma: f64,
    mode: DetectionMode,
    genie_ob: Option<&BitStream>,
) -> Result<DetectionResult> {
    validate_sigma(sigma)?;
    let a = config.amplitude();
    let inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    let ob_hat: Vec<u8> = received
        .iter()
        .map(|&z| u8::from(llr_ob_raw(z, a, inv_two_sigma_sq) < 0.0))
        .collect();
    let cb_positions_hat: Vec<usize> = match mode {
        DetectionMode::EstimatedOb => ob_hat
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (b == 1).then_some(i))
            .collect(),
        DetectionMode::GenieOb => {
            let genie = genie_ob.ok_or(Error::MissingGenie)?;
            if genie.len() != received.len() {
                return Err(Error::GenieLengthMismatch {
                    expected: received.len(),
                    actual: genie.len(),
                });
            }
            genie
                .bits()
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| (b == 1).then_some(i))
                .collect()
        }
    };
    let cb_hat: Vec<u8> = cb_positions_hat
        .iter()
        .map(|&p| u8::from(2.0 * a * received[p] / (sigma * sigma) < 0.0))
        .collect();
    Ok(DetectionResult {
        ob_hat: BitStream::new(ob_hat, BitRole::Ob)?,
        cb_hat: BitStream::new(cb_hat, BitRole::Cb)?,
        cb_positions_hat,
        mode,
    })
}
