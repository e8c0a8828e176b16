//! Numerical building blocks: stable log-domain helpers and Gauss-Hermite
//! quadrature.

use std::f64::consts::LN_2;

/// log(exp(a) + exp(b)) without overflow.
#[inline]
pub fn log_sum_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY && b == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if a > b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// log(sum(exp(x))) over a slice.
pub fn log_sum_exp_slice(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + xs.iter().map(|&x| (x - m).exp()).sum::<f64>().ln()
}

/// log(1 + exp(r)), stable for any r.
#[inline]
pub fn log1p_exp(r: f64) -> f64 {
    if r > 0.0 {
        r + (-r).exp().ln_1p()
    } else {
        r.exp().ln_1p()
    }
}

/// log2(1 + exp(r)).
#[inline]
pub fn log2_1p_exp(r: f64) -> f64 {
    log1p_exp(r) / LN_2
}

/// SplitMix64 mixing step, used to derive independent RNG substream ids.
#[inline]
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Gauss-Hermite quadrature rule: nodes and weights approximating
/// `integral f(x) exp(-x^2) dx ~= sum(w_i f(x_i))`.
///
/// Nodes are found by Newton iteration on the orthonormal Hermite
/// recurrence, which stays bounded for any practical order.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be at least 1");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        // Positive roots in descending order; the rest follow by symmetry.
        let m = n.div_ceil(2);
        let mut roots = vec![0.0f64; m];
        let nf = n as f64;
        let mut z = 0.0f64;
        for i in 0..m {
            z = match i {
                0 => {
                    let s = (2.0 * nf + 1.0).sqrt();
                    s - 1.85575 * s.powf(-1.0 / 3.0)
                }
                1 => z - 1.14 * nf.powf(0.426) / z,
                2 => 1.86 * z - 0.86 * roots[0],
                3 => 1.91 * z - 0.91 * roots[1],
                _ => 2.0 * z - roots[i - 2],
            };
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = Self::orthonormal_hermite(n, z);
                dp = d;
                let step = p / d;
                z -= step;
                if step.abs() <= 1e-15 * (1.0 + z.abs()) {
                    let (p2, d2) = Self::orthonormal_hermite(n, z);
                    dp = d2;
                    z -= p2 / d2;
                    break;
                }
            }
            roots[i] = z;
            let w = 2.0 / (dp * dp);
            nodes[n - 1 - i] = z;
            nodes[i] = -z;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let (_, d) = Self::orthonormal_hermite(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        Self { nodes, weights }
    }

    /// Value and derivative of the degree-n orthonormal Hermite polynomial.
    fn orthonormal_hermite(n: usize, x: f64) -> (f64, f64) {
        let mut p_prev = 0.0f64;
        let mut p = std::f64::consts::PI.powf(-0.25);
        for k in 0..n {
            let kf = k as f64;
            let p_next = x * (2.0 / (kf + 1.0)).sqrt() * p - (kf / (kf + 1.0)).sqrt() * p_prev;
            p_prev = p;
            p = p_next;
        }
        let dp = (2.0 * n as f64).sqrt() * p_prev;
        (p, dp)
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// integral f(x) exp(-x^2) dx.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn log_sum_exp_basic() {
        // log(exp(0.5) + exp(2)), reference value from high-precision eval
        assert_relative_eq!(
            log_sum_exp(0.5, 2.0),
            2.201413277982752,
            max_relative = 1e-15
        );
        // symmetric in its arguments, bit for bit
        assert_eq!(log_sum_exp(0.5, 2.0), log_sum_exp(2.0, 0.5));
    }

    #[test]
    fn log_sum_exp_no_overflow() {
        let v = log_sum_exp(1234.0, 1232.0);
        assert_relative_eq!(v, 1234.126928011043, max_relative = 1e-15);
        assert!((1234f64.exp() + 1232f64.exp()).is_infinite());
    }

    #[test]
    fn log_sum_exp_neg_infinity() {
        assert_eq!(
            log_sum_exp(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
        assert_relative_eq!(log_sum_exp(f64::NEG_INFINITY, 2.0), 2.0);
    }

    #[test]
    fn log_sum_exp_slice_matches_pairwise() {
        let xs = [0.3, -1.2, 4.5];
        let expected = log_sum_exp(log_sum_exp(0.3, -1.2), 4.5);
        assert_relative_eq!(log_sum_exp_slice(&xs), expected, max_relative = 1e-14);
        assert_eq!(log_sum_exp_slice(&[]), f64::NEG_INFINITY);
    }

    #[test]
    fn log1p_exp_extremes() {
        assert_eq!(log1p_exp(-800.0), 0.0);
        assert_relative_eq!(log1p_exp(800.0), 800.0, max_relative = 1e-15);
        assert_relative_eq!(log1p_exp(0.0), std::f64::consts::LN_2);
    }

    #[test]
    fn splitmix64_reference_vectors() {
        assert_eq!(splitmix64(0), 16294208416658607535);
        assert_eq!(splitmix64(1), 10451216379200822465);
        assert_eq!(splitmix64(42), 13679457532755275413);
    }

    #[test]
    fn gh_order_two_is_exact() {
        let q = GaussHermite::new(2);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(q.nodes()[0], -r, max_relative = 1e-14);
        assert_relative_eq!(q.nodes()[1], r, max_relative = 1e-14);
        assert_relative_eq!(q.weights()[0], 0.8862269254527579, max_relative = 1e-14);
    }

    #[test]
    fn gh_order_eight_matches_reference() {
        // Reference nodes/weights for n = 8.
        let nodes = [
            -2.930637420257244,
            -1.981656756695843,
            -1.1571937124467802,
            -0.3811869902073221,
            0.3811869902073221,
            1.1571937124467802,
            1.981656756695843,
            2.930637420257244,
        ];
        let weights = [
            1.9960407221136783e-04,
            1.7077983007413467e-02,
            2.0780232581489183e-01,
            6.6114701255824149e-01,
            6.6114701255824149e-01,
            2.0780232581489183e-01,
            1.7077983007413467e-02,
            1.9960407221136783e-04,
        ];
        let q = GaussHermite::new(8);
        for i in 0..8 {
            assert_relative_eq!(q.nodes()[i], nodes[i], max_relative = 1e-13);
            assert_relative_eq!(q.weights()[i], weights[i], max_relative = 1e-12);
        }
    }

    #[test]
    fn gh_order_64_extremes_and_weight_sum() {
        let q = GaussHermite::new(64);
        assert_relative_eq!(q.nodes()[63], 10.526123167960547, max_relative = 1e-13);
        assert_relative_eq!(
            q.weights()[63],
            5.5357065358567023e-49,
            max_relative = 1e-10
        );
        let sum: f64 = q.weights().iter().sum();
        assert!((sum - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn gh_polynomial_exactness() {
        // integral x^(2k) exp(-x^2) dx = sqrt(pi) (2k-1)!! / 2^k
        let q = GaussHermite::new(64);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let mut dfact = 1.0;
        for k in 0..8usize {
            if k > 0 {
                dfact *= 2.0 * k as f64 - 1.0;
            }
            let expected = sqrt_pi * dfact / 2f64.powi(k as i32);
            let got = q.integrate(|x| x.powi(2 * k as i32));
            assert_relative_eq!(got, expected, max_relative = 1e-12);
            // odd moments vanish by symmetry
            assert!(q.integrate(|x| x.powi(2 * k as i32 + 1)).abs() < 1e-12);
        }
    }
}
