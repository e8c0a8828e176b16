//! Simulation library for opportunistic-bit multilevel coding (OB-MLC).
//!
//! OB-MLC splits the transmit bits into two levels: *opportunistic bits*
//! (OB) select between a vacant (zero-energy) symbol and a BPSK symbol,
//! while *conventional bits* (CB) pick the polarity of that BPSK symbol.
//! Because half of the channel uses carry no energy on average, the CB
//! symbol runs at twice the mean symbol energy, and each channel use
//! conveys 1.5 bits on average instead of 1.
//!
//! The crate provides:
//!
//! - [`modem`]: bit-to-symbol mapping (1D real and 2D complex), exact
//!   log-domain LLR demapping and multistage hard detection,
//! - [`channel`]: a reproducible, substream-seeded AWGN channel,
//! - [`infotheory`]: mutual-information evaluation for every level of the
//!   scheme plus the BPSK/QPSK/MLC-QPSK baselines, via Gauss-Hermite
//!   quadrature or Monte Carlo, together with an independent brute-force
//!   MI oracle for arbitrary discrete constellations,
//! - [`experiments`]: SNR-grid sweeps and uncoded BER studies including
//!   OB-error propagation into the CB level,
//! - [`cli`]: the `obmlc` command-line front end (CSV/SVG emission and
//!   run manifests).

// Frozen reference constants are kept at full printed precision.
#![allow(clippy::excessive_precision)]

pub mod channel;
pub mod cli;
pub mod core;
pub mod error;
pub mod experiments;
pub mod infotheory;
pub mod modem;
pub mod numerics;

pub use error::{Error, Result};
