//! Numerical inversion of Laplace transforms on the Bromwich contour.
//!
//! [`EulerInverter`] is the Euler-summation Fourier-series method written in
//! the unified weights/nodes form `f(t) ~ (1/t) sum_k eta_k Re F(beta_k / t)`.
//! [`gaver_stehfest`] works on the real axis only and serves as an
//! independent cross-check.

use num_complex::Complex64;

/// Euler-summation inverter with `2M + 1` transform evaluations per point.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerInverter {
    m: usize,
    nodes: Vec<Complex64>,
    weights: Vec<f64>,
}

/// `M` used by default; larger values lose accuracy to round-off in `f64`.
pub const DEFAULT_EULER_M: usize = 16;

impl Default for EulerInverter {
    fn default() -> Self {
        EulerInverter::new(DEFAULT_EULER_M)
    }
}

impl EulerInverter {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "Euler inverter needs M >= 1");
        let mf = m as f64;
        let shift = mf * std::f64::consts::LN_10 / 3.0;
        let nodes = (0..=2 * m)
            .map(|k| Complex64::new(shift, std::f64::consts::PI * k as f64))
            .collect();

        // xi_0 = 1/2, xi_k = 1 for 1 <= k <= M, xi_2M = 2^-M,
        // xi_{2M-k} = xi_{2M-k+1} + 2^-M C(M, k) for 0 < k < M.
        let mut xi = vec![0.0; 2 * m + 1];
        xi[0] = 0.5;
        for x in xi.iter_mut().take(m + 1).skip(1) {
            *x = 1.0;
        }
        let two_m = 0.5_f64.powi(m as i32);
        xi[2 * m] = two_m;
        let mut binom = 1.0;
        for k in 1..m {
            binom *= (m - k + 1) as f64 / k as f64;
            xi[2 * m - k] = xi[2 * m - k + 1] + two_m * binom;
        }
        let scale = 10f64.powf(mf / 3.0);
        let weights = xi
            .iter()
            .enumerate()
            .map(|(k, x)| if k % 2 == 0 { scale * x } else { -scale * x })
            .collect();
        EulerInverter { m, nodes, weights }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `f(t)` for `t > 0` from its transform `F`.
    pub fn invert<F: Fn(Complex64) -> Complex64>(&self, transform: F, t: f64) -> f64 {
        debug_assert!(t > 0.0);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(beta, eta)| eta * transform(beta / t).re)
            .sum();
        sum / t
    }
}

/// Gaver–Stehfest inversion with `n` (even) real transform evaluations.
pub fn gaver_stehfest<F: Fn(f64) -> f64>(transform: F, t: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2) && n >= 2, "Stehfest order must be even");
    let half = n / 2;
    let fact = |k: usize| (1..=k).map(|j| j as f64).product::<f64>();
    let ln2_t = std::f64::consts::LN_2 / t;
    let mut total = 0.0;
    for k in 1..=n {
        let mut v = 0.0;
        for j in k.div_ceil(2)..=k.min(half) {
            v += (j as f64).powi(half as i32) * fact(2 * j)
                / (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
        }
        if (k + half) % 2 == 1 {
            v = -v;
        }
        total += v * transform(k as f64 * ln2_t);
    }
    total * ln2_t
}
