//! Mutual-information evaluation for the OB-MLC scheme and its baselines.
//!
//! All quantities are in bits (base-2 logs). Expectations over the
//! normalized Gaussian `W ~ N(0, 1/2)` (or `W2 ~ CN(0, 1)` for the
//! two-dimensional kernels) are evaluated either by Gauss-Hermite
//! quadrature (deterministic, `std_err = 0`) or by Monte Carlo with a
//! reported standard error.
//!
//! The normalization bridge is fixed once here: a physical constellation
//! point `a` observed through noise of per-dimension standard deviation
//! `sigma` maps to the normalized point `a / (sigma sqrt(2))`. Under this
//! bridge the ternary source `{+A, 0, -A}` lands on `{+sqrt(gamma), 0,
//! -sqrt(gamma)}` with `gamma = E/sigma^2` and `E = A^2/2`, and every
//! kernel below is a function of `gamma` alone.
//!
//! The Monte Carlo estimators draw from an SNR-adaptive Gaussian proposal
//! (importance sampling). At high SNR the integrands are rare-event tails:
//! sampling `W` from its nominal `N(0, 1/2)` misses the transition region
//! entirely, which biases the estimate *and* collapses the plug-in
//! standard error to zero. Widening the proposal to cover the transition
//! keeps the estimate unbiased and the reported error honest across the
//! whole SNR range. At low SNR the proposal equals the nominal
//! distribution and the weights are identically 1.

use crate::channel::substream;
use crate::core::{ConstellationConfig, Dimension, SnrSpec};
use crate::error::{Error, Result};
use crate::numerics::{
    log2_1p_exp, log_sum_exp, log_sum_exp_slice, splitmix64, GaussHermite,
};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI};
use std::fmt;

const STREAM_TAG_OB: u64 = 0x0B;
const STREAM_TAG_BPSK: u64 = 0xB5;
const STREAM_TAG_MLC: u64 = 0x41C;
const STREAM_TAG_ORACLE: u64 = 0x04AC1E;

/// A mutual-information value in bits with the estimator's standard error
/// (zero for quadrature).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiEstimate {
    pub bits: f64,
    pub std_err: f64,
}

impl MiEstimate {
    fn exact(bits: f64) -> Self {
        Self { bits, std_err: 0.0 }
    }
}

/// How to evaluate the Gaussian expectations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorSpec {
    GaussHermite { order: usize },
    MonteCarlo { samples: usize, seed: u64 },
}

impl EstimatorSpec {
    pub const DEFAULT_GH_ORDER: usize = 64;

    pub fn validate(&self) -> Result<()> {
        match *self {
            EstimatorSpec::GaussHermite { order } if order < 8 => Err(Error::InvalidEstimator(
                format!("Gauss-Hermite order must be at least 8, got {order}"),
            )),
            EstimatorSpec::MonteCarlo { samples, .. } if samples < 10_000 => {
                Err(Error::InvalidEstimator(format!(
                    "Monte Carlo needs at least 10000 samples, got {samples}"
                )))
            }
            _ => Ok(()),
        }
    }
}

impl Default for EstimatorSpec {
    fn default() -> Self {
        EstimatorSpec::GaussHermite {
            order: Self::DEFAULT_GH_ORDER,
        }
    }
}

impl fmt::Display for EstimatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorSpec::GaussHermite { order } => write!(f, "gh(order={order})"),
            EstimatorSpec::MonteCarlo { samples, seed } => {
                write!(f, "mc(samples={samples};seed={seed})")
            }
        }
    }
}

/// `f(w, a) = exp(-(w - a)^2)`.
pub fn f_kernel(w: f64, a: f64) -> f64 {
    log_f_kernel(w, a).exp()
}

/// `-(w - a)^2`, the exact log of [`f_kernel`].
pub fn log_f_kernel(w: f64, a: f64) -> f64 {
    -(w - a) * (w - a)
}

/// Complex-argument kernel `exp(-|w - a|^2)`.
pub fn f_kernel_c(w: Complex64, a: Complex64) -> f64 {
    log_f_kernel_c(w, a).exp()
}

/// `-|w - a|^2`.
pub fn log_f_kernel_c(w: Complex64, a: Complex64) -> f64 {
    let d = w - a;
    -(d.re * d.re + d.im * d.im)
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidSnr(gamma));
    }
    Ok(())
}

fn mc_stream(tag: u64, param: f64) -> u64 {
    splitmix64(splitmix64(tag) ^ param.to_bits())
}

/// Importance-sampling proposal width covering the integrand transition at
/// `|w| ~ reach`; equals the nominal width when no widening is needed.
fn proposal_sigma(reach: f64) -> f64 {
    FRAC_1_SQRT_2.max(reach / 3.0)
}

/// `E[g(W)]` for `W ~ N(0, 1/2)` by Gauss-Hermite quadrature.
fn expect_w_gh(order: usize, g: impl Fn(f64) -> f64) -> f64 {
    let q = GaussHermite::new(order);
    q.integrate(g) / PI.sqrt()
}

/// `E[g(W)]` for `W ~ N(0, 1/2)` by (importance-sampled) Monte Carlo.
fn expect_w_mc(
    samples: usize,
    rng: &mut ChaCha8Rng,
    reach: f64,
    g: impl Fn(f64) -> f64,
) -> (f64, f64) {
    let sigma_p = proposal_sigma(reach);
    let half_inv_nominal = 1.0 / (2.0 * FRAC_1_SQRT_2 * FRAC_1_SQRT_2);
    let half_inv_proposal = 1.0 / (2.0 * sigma_p * sigma_p);
    let ln_ratio = (sigma_p / FRAC_1_SQRT_2).ln();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let w = sigma_p * rng.sample::<f64, _>(StandardNormal);
        let log_weight = ln_ratio - w * w * (half_inv_nominal - half_inv_proposal);
        let v = log_weight.exp() * g(w);
        sum += v;
        sum_sq += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    (mean, (var / n).sqrt())
}

/// `E[g(W2)]` for `W2 ~ CN(0, 1)` by tensor Gauss-Hermite quadrature.
fn expect_w2_gh(order: usize, g: impl Fn(Complex64) -> f64) -> f64 {
    let q = GaussHermite::new(order);
    let mut total = 0.0;
    for (&xr, &wr) in q.nodes().iter().zip(q.weights()) {
        for (&xi, &wi) in q.nodes().iter().zip(q.weights()) {
            total += wr * wi * g(Complex64::new(xr, xi));
        }
    }
    total / PI
}

/// `E[g(W2)]` for `W2 ~ CN(0, 1)` by (importance-sampled) Monte Carlo.
fn expect_w2_mc(
    samples: usize,
    rng: &mut ChaCha8Rng,
    reach: f64,
    g: impl Fn(Complex64) -> f64,
) -> (f64, f64) {
    let sigma_p = proposal_sigma(reach);
    let half_inv_nominal = 1.0 / (2.0 * FRAC_1_SQRT_2 * FRAC_1_SQRT_2);
    let half_inv_proposal = 1.0 / (2.0 * sigma_p * sigma_p);
    let ln_ratio = 2.0 * (sigma_p / FRAC_1_SQRT_2).ln();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let wr = sigma_p * rng.sample::<f64, _>(StandardNormal);
        let wi = sigma_p * rng.sample::<f64, _>(StandardNormal);
        let log_weight = ln_ratio - (wr * wr + wi * wi) * (half_inv_nominal - half_inv_proposal);
        let v = log_weight.exp() * g(Complex64::new(wr, wi));
        sum += v;
        sum_sq += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    (mean, (var / n).sqrt())
}

/// Mutual information of the OB (low) level of the ternary source, in bits.
///
/// `I_o(gamma) = 1 - E[ g(W) ]` where `g` collects the three conditional
/// mixture terms of the source partition `{0}` versus `{+A, -A}`, each a
/// stable log-domain `log2(1 + ratio)` of kernel sums.
pub fn mi_ob(gamma: f64, est: &EstimatorSpec) -> Result<MiEstimate> {
    est.validate()?;
    check_gamma(gamma)?;
    if gamma == 0.0 {
        return Ok(MiEstimate::exact(0.0));
    }
    let rg = gamma.sqrt();
    let integrand = move |w: f64| {
        let l_pg = log_f_kernel(w, rg);
        let l_ng = log_f_kernel(w, -rg);
        let l_0 = log_f_kernel(w, 0.0);
        let r1 = log_sum_exp(l_pg, l_ng) - (LN_2 + l_0);
        let r2 = LN_2 + l_ng - log_sum_exp(l_0, log_f_kernel(w, -2.0 * rg));
        let r3 = LN_2 + l_pg - log_sum_exp(l_0, log_f_kernel(w, 2.0 * rg));
        0.5 * log2_1p_exp(r1) + 0.25 * log2_1p_exp(r2) + 0.25 * log2_1p_exp(r3)
    };
    let (mean, std_err) = match *est {
        EstimatorSpec::GaussHermite { order } => (expect_w_gh(order, integrand), 0.0),
        EstimatorSpec::MonteCarlo { samples, seed } => {
            let mut rng = substream(seed, mc_stream(STREAM_TAG_OB, gamma));
            expect_w_mc(samples, &mut rng, rg / 2.0 + 1.0, integrand)
        }
    };
    Ok(MiEstimate {
        bits: 1.0 - mean,
        std_err,
    })
}

/// Mutual information of BPSK at symbol-energy-to-noise ratio
/// `s = Es/sigma^2` (per real dimension), in bits.
///
/// `I_B(s) = 1 - E[ log2(1 + f(W, -2a)/f(W, 0)) ]` with the normalized
/// amplitude `a = sqrt(s/2)`.
pub fn mi_bpsk(s: f64, est: &EstimatorSpec) -> Result<MiEstimate> {
    est.validate()?;
    check_gamma(s)?;
    if s == 0.0 {
        return Ok(MiEstimate::exact(0.0));
    }
    let a = (s / 2.0).sqrt();
    let integrand = move |w: f64| {
        log2_1p_exp(log_f_kernel(w, -2.0 * a) - log_f_kernel(w, 0.0))
    };
    let (mean, std_err) = match *est {
        EstimatorSpec::GaussHermite { order } => (expect_w_gh(order, integrand), 0.0),
        EstimatorSpec::MonteCarlo { samples, seed } => {
            let mut rng = substream(seed, mc_stream(STREAM_TAG_BPSK, s));
            expect_w_mc(samples, &mut rng, a + 1.0, integrand)
        }
    };
    Ok(MiEstimate {
        bits: 1.0 - mean,
        std_err,
    })
}

/// Total one-dimensional OB-MLC mutual information:
/// `I_o(gamma) + (1/2) I_B(2 gamma)` (chain rule over the two levels; the
/// CB level runs at doubled symbol energy and is active half the time).
pub fn mi_total_1d(gamma: f64, est: &EstimatorSpec) -> Result<MiEstimate> {
    let low = mi_ob(gamma, est)?;
    let high = mi_bpsk(2.0 * gamma, est)?;
    Ok(MiEstimate {
        bits: low.bits + 0.5 * high.bits,
        std_err: (low.std_err * low.std_err + 0.25 * high.std_err * high.std_err).sqrt(),
    })
}

/// Total two-dimensional OB-MLC mutual information. The quadrature rail
/// mirrors the in-phase rail, so this is exactly twice [`mi_total_1d`]
/// (equivalently `2 I_o(gamma) + I_B(2 gamma)`).
pub fn mi_total_2d(snr: &SnrSpec, est: &EstimatorSpec) -> Result<MiEstimate> {
    if snr.dimension() != Dimension::TwoDim {
        return Err(Error::DimensionMismatch {
            expected: Dimension::TwoDim,
            actual: snr.dimension(),
        });
    }
    let one = mi_total_1d(snr.gamma(), est)?;
    Ok(MiEstimate {
        bits: 2.0 * one.bits,
        std_err: 2.0 * one.std_err,
    })
}

/// Conventional QPSK mutual information at `gamma = E/sigma^2` (2D
/// convention): two independent per-dimension BPSKs, each at per-dimension
/// ratio `gamma`.
pub fn mi_qpsk(snr: &SnrSpec, est: &EstimatorSpec) -> Result<MiEstimate> {
    if snr.dimension() != Dimension::TwoDim {
        return Err(Error::DimensionMismatch {
            expected: Dimension::TwoDim,
            actual: snr.dimension(),
        });
    }
    let b = mi_bpsk(snr.gamma(), est)?;
    Ok(MiEstimate {
        bits: 2.0 * b.bits,
        std_err: 2.0 * b.std_err,
    })
}

/// Mutual information of the low level of set-partitioned QPSK under
/// conventional two-level MLC, in bits.
///
/// The partition splits the axis-oriented QPSK `{+-sqrt(gamma),
/// +-j sqrt(gamma)}` into its real-axis and imaginary-axis antipodal
/// pairs; `I_LQ(gamma) = 1 - E[ g(W2) ]` over the four conditional mixture
/// terms with the complex kernel.
pub fn mi_mlc_qpsk_low(gamma: f64, est: &EstimatorSpec) -> Result<MiEstimate> {
    est.validate()?;
    check_gamma(gamma)?;
    if gamma == 0.0 {
        return Ok(MiEstimate::exact(0.0));
    }
    let rg = gamma.sqrt();
    let integrand = move |w: Complex64| {
        let lfc = |re: f64, im: f64| log_f_kernel_c(w, Complex64::new(re, im));
        let term = |n1: f64, n2: f64, n3: f64, n4: f64, d1: f64, d2: f64, d3: f64, d4: f64| {
            log2_1p_exp(
                log_sum_exp(lfc(n1, n2), lfc(n3, n4)) - log_sum_exp(lfc(d1, d2), lfc(d3, d4)),
            )
        };
        let t1 = term(-rg, rg, -rg, -rg, 0.0, 0.0, -2.0 * rg, 0.0);
        let t2 = term(rg, rg, rg, -rg, 2.0 * rg, 0.0, 0.0, 0.0);
        let t3 = term(rg, -rg, -rg, -rg, 0.0, 0.0, 0.0, -2.0 * rg);
        let t4 = term(rg, rg, -rg, rg, 0.0, 2.0 * rg, 0.0, 0.0);
        0.25 * (t1 + t2 + t3 + t4)
    };
    let (mean, std_err) = match *est {
        EstimatorSpec::GaussHermite { order } => (expect_w2_gh(order, integrand), 0.0),
        EstimatorSpec::MonteCarlo { samples, seed } => {
            let mut rng = substream(seed, mc_stream(STREAM_TAG_MLC, gamma));
            expect_w2_mc(samples, &mut rng, rg / 2.0 + 1.0, integrand)
        }
    };
    Ok(MiEstimate {
        bits: 1.0 - mean,
        std_err,
    })
}

/// One-dimensional OB-MLC gain over BPSK at the same average symbol
/// energy: `mi_total_1d(gamma) - I_B(gamma)`.
pub fn mi_gain_1d(gamma: f64, est: &EstimatorSpec) -> Result<MiEstimate> {
    let total = mi_total_1d(gamma, est)?;
    let baseline = mi_bpsk(gamma, est)?;
    Ok(MiEstimate {
        bits: total.bits - baseline.bits,
        std_err: (total.std_err * total.std_err + baseline.std_err * baseline.std_err).sqrt(),
    })
}

/// Two-dimensional low-level gain of OB-MLC over MLC-partitioned QPSK:
/// `2 I_o(gamma) - I_LQ(gamma)`. The high levels of the two schemes are
/// identical, so this is also the total 2D gain over QPSK.
pub fn mi_gain_2d(gamma: f64, est: &EstimatorSpec) -> Result<MiEstimate> {
    let low = mi_ob(gamma, est)?;
    let mlc = mi_mlc_qpsk_low(gamma, est)?;
    Ok(MiEstimate {
        bits: 2.0 * low.bits - mlc.bits,
        std_err: (4.0 * low.std_err * low.std_err + mlc.std_err * mlc.std_err).sqrt(),
    })
}

/// A finite constellation with priors, fed to the brute-force MI oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSource {
    points: Vec<Complex64>,
    priors: Vec<f64>,
}

impl DiscreteSource {
    pub fn new(points: Vec<Complex64>, priors: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSource("no constellation points".into()));
        }
        if points.len() != priors.len() {
            return Err(Error::InvalidSource(format!(
                "{} points but {} priors",
                points.len(),
                priors.len()
            )));
        }
        if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
            return Err(Error::InvalidSource("non-finite point".into()));
        }
        if priors.iter().any(|&p| !(p.is_finite() && p >= 0.0)) {
            return Err(Error::InvalidSource("negative or non-finite prior".into()));
        }
        let sum: f64 = priors.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSource(format!("priors sum to {sum}")));
        }
        Ok(Self { points, priors })
    }

    /// The ternary OB-MLC source `{+A, 0, -A}` with priors `{1/4, 1/2, 1/4}`.
    pub fn obmlc_ternary(config: &ConstellationConfig) -> Self {
        let a = config.amplitude();
        Self {
            points: vec![
                Complex64::new(a, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-a, 0.0),
            ],
            priors: vec![0.25, 0.5, 0.25],
        }
    }

    /// Equiprobable antipodal pair `{+a, -a}` on the real axis.
    pub fn bpsk(amplitude: f64) -> Self {
        Self {
            points: vec![Complex64::new(amplitude, 0.0), Complex64::new(-amplitude, 0.0)],
            priors: vec![0.5, 0.5],
        }
    }

    /// Equiprobable diagonal QPSK with the given total symbol energy.
    pub fn qpsk_diagonal(symbol_energy: f64) -> Self {
        let c = (symbol_energy / 2.0).sqrt();
        Self {
            points: vec![
                Complex64::new(c, c),
                Complex64::new(c, -c),
                Complex64::new(-c, c),
                Complex64::new(-c, -c),
            ],
            priors: vec![0.25; 4],
        }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    /// True when every point lies on the real axis, in which case the
    /// oracle integrates over a real channel.
    pub fn is_real(&self) -> bool {
        self.points.iter().all(|p| p.im == 0.0)
    }

    /// Prior entropy `H(X)` in bits, an upper bound on any MI estimate.
    pub fn prior_entropy_bits(&self) -> f64 {
        -self
            .priors
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.log2())
            .sum::<f64>()
    }
}

/// How the brute-force oracle evaluates its integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    Quadrature { order: usize },
    MonteCarlo { samples: usize, seed: u64 },
}

impl Default for OracleMethod {
    fn default() -> Self {
        OracleMethod::Quadrature { order: 128 }
    }
}

/// Brute-force `I(X; Z)` in bits for `Z = X + AWGN` (real channel when the
/// source is real, complex otherwise), straight from the mixture
/// definition `I = sum_k pi_k E[ log2 p(z|x_k) - log2 p(z) ]`.
///
/// This is the independent oracle for the closed-form chain: it never
/// touches the normalized kernels used by [`mi_ob`] and [`mi_bpsk`],
/// only the physical conditional densities in log form.
pub fn mi_discrete_oracle(
    source: &DiscreteSource,
    sigma_per_dim: f64,
    method: &OracleMethod,
) -> Result<MiEstimate> {
    if !(sigma_per_dim > 0.0 && sigma_per_dim.is_finite()) {
        return Err(Error::InvalidSigma(sigma_per_dim));
    }
    let active: Vec<(Complex64, f64)> = source
        .points
        .iter()
        .zip(&source.priors)
        .filter(|(_, &p)| p > 0.0)
        .map(|(&x, &p)| (x, p))
        .collect();
    if active.len() <= 1 {
        return Ok(MiEstimate::exact(0.0));
    }
    let log_priors: Vec<f64> = active.iter().map(|(_, p)| p.ln()).collect();
    let inv_two_var = 1.0 / (2.0 * sigma_per_dim * sigma_per_dim);
    // log p(z|x_l) up to a common additive constant that cancels in the
    // posterior residual
    let log_lik = |z: Complex64, l: usize| {
        let d = z - active[l].0;
        -(d.re * d.re + d.im * d.im) * inv_two_var
    };
    let residual = |z: Complex64, k: usize| {
        let logs: Vec<f64> = (0..active.len())
            .map(|l| log_priors[l] + log_lik(z, l))
            .collect();
        (log_lik(z, k) - log_sum_exp_slice(&logs)) / LN_2
    };
    let real_channel = source.is_real();
    match *method {
        OracleMethod::Quadrature { order } => {
            let q = GaussHermite::new(order);
            let scale = sigma_per_dim * std::f64::consts::SQRT_2;
            let mut total = 0.0;
            for (k, &(x, prior)) in active.iter().enumerate() {
                let expectation = if real_channel {
                    q.nodes()
                        .iter()
                        .zip(q.weights())
                        .map(|(&u, &w)| w * residual(x + Complex64::new(scale * u, 0.0), k))
                        .sum::<f64>()
                        / PI.sqrt()
                } else {
                    let mut acc = 0.0;
                    for (&ur, &wr) in q.nodes().iter().zip(q.weights()) {
                        for (&ui, &wi) in q.nodes().iter().zip(q.weights()) {
                            acc += wr * wi * residual(x + scale * Complex64::new(ur, ui), k);
                        }
                    }
                    acc / PI
                };
                total += prior * expectation;
            }
            Ok(MiEstimate::exact(total))
        }
        OracleMethod::MonteCarlo { samples, seed } => {
            let mut rng = substream(seed, mc_stream(STREAM_TAG_ORACLE, sigma_per_dim));
            let mut cumulative = Vec::with_capacity(active.len());
            let mut acc = 0.0;
            for &(_, p) in &active {
                acc += p;
                cumulative.push(acc);
            }
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..samples {
                let u: f64 = rng.random();
                let k = cumulative.iter().position(|&c| u < c).unwrap_or(active.len() - 1);
                let noise = if real_channel {
                    Complex64::new(sigma_per_dim * rng.sample::<f64, _>(StandardNormal), 0.0)
                } else {
                    Complex64::new(
                        sigma_per_dim * rng.sample::<f64, _>(StandardNormal),
                        sigma_per_dim * rng.sample::<f64, _>(StandardNormal),
                    )
                };
                let v = residual(active[k].0 + noise, k);
                sum += v;
                sum_sq += v * v;
            }
            let n = samples as f64;
            let mean = sum / n;
            let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
            Ok(MiEstimate {
                bits: mean,
                std_err: (var / n).sqrt(),
            })
        }
    }
}

/// One row of a figure-reproduction table.
#[derive(Debug, Clone, PartialEq)]
pub struct MiPoint {
    pub snr_db: f64,
    pub mi_bits: f64,
    pub std_err: f64,
    pub scenario: String,
    pub estimator: String,
}

/// A swept MI curve, one row per SNR grid point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MiCurve {
    rows: Vec<MiPoint>,
}

impl MiCurve {
    pub fn new(rows: Vec<MiPoint>) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[MiPoint] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }
}
