//! Spectrally negative Lévy processes built from a drift, a Gaussian part and
//! compound Poisson downward jumps with phase-type-like claim sizes.
//!
//! The Laplace exponent is
//!
//! ```text
//! psi(theta) = gamma * theta + sigma^2 theta^2 / 2 + beta * (E[exp(-theta C)] - 1)
//! ```
//!
//! where `C > 0` is the claim size. For every supported claim law the jump
//! transform is a ratio of polynomials, so `psi` is rational plus a
//! quadratic. All jump families have finite activity, so `gamma` is the
//! drift of the bounded-variation process when `sigma = 0`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Real or complex scalar on which the Laplace exponent can be evaluated.
pub(crate) trait Scalar:
    Copy
    + From<f64>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Copy
        + From<f64>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

fn c<T: Scalar>(v: f64) -> T {
    T::from(v)
}

/// Law of a (positive) claim size. Jumps of the process are `-C`.
#[derive(Debug, Clone, PartialEq)]
pub enum ClaimDistribution {
    Exponential { rate: f64 },
    HyperExponential { weights: Vec<f64>, rates: Vec<f64> },
    Erlang { shape: u32, rate: f64 },
}

impl ClaimDistribution {
    pub fn exponential(rate: f64) -> Result<Self> {
        let claim = ClaimDistribution::Exponential { rate };
        claim.validate()?;
        Ok(claim)
    }

    pub fn hyper_exponential(weights: Vec<f64>, rates: Vec<f64>) -> Result<Self> {
        let claim = ClaimDistribution::HyperExponential { weights, rates };
        claim.validate()?;
        Ok(claim)
    }

    pub fn erlang(shape: u32, rate: f64) -> Result<Self> {
        let claim = ClaimDistribution::Erlang { shape, rate };
        claim.validate()?;
        Ok(claim)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |r: f64| r.is_finite() && r > 0.0;
        match self {
            ClaimDistribution::Exponential { rate } => {
                if !positive(*rate) {
                    return Err(Error::InvalidModel(format!(
                        "exponential claim rate must be positive, got {rate}"
                    )));
                }
            }
            ClaimDistribution::HyperExponential { weights, rates } => {
                if weights.is_empty() || weights.len() != rates.len() {
                    return Err(Error::InvalidModel(
                        "hyperexponential claim needs equally many (>= 1) weights and rates"
                            .into(),
                    ));
                }
                if let Some(w) = weights.iter().find(|w| !positive(**w)) {
                    return Err(Error::InvalidModel(format!(
                        "hyperexponential weights must be strictly positive, got {w}"
                    )));
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidModel(format!(
                        "hyperexponential weights must sum to 1, got {total}"
                    )));
                }
                if let Some(r) = rates.iter().find(|r| !positive(**r)) {
                    return Err(Error::InvalidModel(format!(
                        "hyperexponential rates must be strictly positive, got {r}"
                    )));
                }
                for (i, a) in rates.iter().enumerate() {
                    if rates[i + 1..].iter().any(|b| a == b) {
                        return Err(Error::InvalidModel(format!(
                            "hyperexponential rates must be pairwise distinct, {a} repeats"
                        )));
                    }
                }
            }
            ClaimDistribution::Erlang { shape, rate } => {
                if *shape == 0 {
                    return Err(Error::InvalidModel("Erlang shape must be >= 1".into()));
                }
                if !positive(*rate) {
                    return Err(Error::InvalidModel(format!(
                        "Erlang rate must be positive, got {rate}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn mean(&self) -> f64 {
        match self {
            ClaimDistribution::Exponential { rate } => 1.0 / rate,
            ClaimDistribution::HyperExponential { weights, rates } => {
                weights.iter().zip(rates).map(|(p, m)| p / m).sum()
            }
            ClaimDistribution::Erlang { shape, rate } => f64::from(*shape) / rate,
        }
    }

    /// Smallest exponential rate; the transform `E[exp(-s C)]` is analytic for
    /// `Re s > -min_rate`.
    pub fn min_rate(&self) -> f64 {
        match self {
            ClaimDistribution::Exponential { rate } | ClaimDistribution::Erlang { rate, .. } => {
                *rate
            }
            ClaimDistribution::HyperExponential { rates, .. } => {
                rates.iter().copied().fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// `E[exp(-s C)] - 1`, written without the cancellation of the naive form.
    pub(crate) fn transform_minus_one<T: Scalar>(&self, s: T) -> T {
        match self {
            ClaimDistribution::Exponential { rate } => -s / (s + c(*rate)),
            ClaimDistribution::HyperExponential { weights, rates } => weights
                .iter()
                .zip(rates)
                .fold(c(0.0), |acc: T, (p, m)| acc - c::<T>(*p) * s / (s + c(*m))),
            ClaimDistribution::Erlang { shape, rate } => {
                let r = c::<T>(*rate) / (s + c(*rate));
                let mut geometric: T = c(0.0);
                let mut power: T = c(1.0);
                for _ in 0..*shape {
                    geometric = geometric + power;
                    power = power * r;
                }
                -(s / (s + c(*rate))) * geometric
            }
        }
    }

    /// `d/ds E[exp(-s C)] = -E[C exp(-s C)]`.
    pub(crate) fn transform_derivative<T: Scalar>(&self, s: T) -> T {
        match self {
            ClaimDistribution::Exponential { rate } => {
                let den = s + c(*rate);
                -c::<T>(*rate) / (den * den)
            }
            ClaimDistribution::HyperExponential { weights, rates } => {
                weights.iter().zip(rates).fold(c(0.0), |acc: T, (p, m)| {
                    let den = s + c(*m);
                    acc - c::<T>(p * m) / (den * den)
                })
            }
            ClaimDistribution::Erlang { shape, rate } => {
                let den = s + c(*rate);
                let r = c::<T>(*rate) / den;
                let mut power: T = c(1.0);
                for _ in 0..*shape {
                    power = power * r;
                }
                -c::<T>(f64::from(*shape)) * power / den
            }
        }
    }

    /// `P{C > y}` for `y >= 0`.
    pub fn survival(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 1.0;
        }
        match self {
            ClaimDistribution::Exponential { rate } => (-rate * y).exp(),
            ClaimDistribution::HyperExponential { weights, rates } => weights
                .iter()
                .zip(rates)
                .map(|(p, m)| p * (-m * y).exp())
                .sum(),
            ClaimDistribution::Erlang { shape, rate } => poisson_cdf(*shape - 1, rate * y),
        }
    }

    /// Density of `C` at `y > 0`.
    pub fn density(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        match self {
            ClaimDistribution::Exponential { rate } => rate * (-rate * y).exp(),
            ClaimDistribution::HyperExponential { weights, rates } => weights
                .iter()
                .zip(rates)
                .map(|(p, m)| p * m * (-m * y).exp())
                .sum(),
            ClaimDistribution::Erlang { shape, rate } => {
                let k = *shape;
                let z = rate * y;
                // rate * z^(k-1) e^{-z} / (k-1)!
                let log_term = f64::from(k - 1) * z.ln() - z - ln_factorial(k - 1);
                rate * log_term.exp()
            }
        }
    }

    /// Stop-loss transform `E[(C - s)^+] = int_s^inf P{C > y} dy`, `s >= 0`.
    pub fn stop_loss(&self, s: f64) -> f64 {
        let s = s.max(0.0);
        match self {
            ClaimDistribution::Exponential { rate } => (-rate * s).exp() / rate,
            ClaimDistribution::HyperExponential { weights, rates } => weights
                .iter()
                .zip(rates)
                .map(|(p, m)| p * (-m * s).exp() / m)
                .sum(),
            ClaimDistribution::Erlang { shape, rate } => {
                // int_s^inf P{Poisson(rate y) <= k-1} dy = (1/rate) sum_{n<k} P{Poisson(rate s) <= n}
                (0..*shape).map(|n| poisson_cdf(n, rate * s)).sum::<f64>() / rate
            }
        }
    }

    /// Numerator and denominator of `E[exp(-theta C)]` as polynomials in
    /// `theta`, coefficients in ascending order.
    pub(crate) fn rational_transform(&self) -> (Vec<f64>, Vec<f64>) {
        use crate::poly;
        match self {
            ClaimDistribution::Exponential { rate } => (vec![*rate], vec![*rate, 1.0]),
            ClaimDistribution::HyperExponential { weights, rates } => {
                let den = rates
                    .iter()
                    .fold(vec![1.0], |acc, m| poly::mul(&acc, &[*m, 1.0]));
                let mut num = vec![0.0];
                for (i, (p, m)) in weights.iter().zip(rates).enumerate() {
                    let others = rates
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .fold(vec![1.0], |acc, (_, r)| poly::mul(&acc, &[*r, 1.0]));
                    num = poly::add(&num, &poly::scale(&others, p * m));
                }
                (num, den)
            }
            ClaimDistribution::Erlang { shape, rate } => {
                let den = (0..*shape).fold(vec![1.0], |acc, _| poly::mul(&acc, &[*rate, 1.0]));
                (vec![rate.powi(*shape as i32)], den)
            }
        }
    }
}

/// `P{Poisson(mean) <= n}`.
fn poisson_cdf(n: u32, mean: f64) -> f64 {
    let mut term = (-mean).exp();
    let mut total = term;
    for j in 1..=n {
        term *= mean / f64::from(j);
        total += term;
    }
    total.min(1.0)
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|j| f64::from(j).ln()).sum()
}

/// Compound Poisson part: jumps of size `-C` arriving at rate `rate`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jumps {
    pub rate: f64,
    pub claim: ClaimDistribution,
}

/// Path-variation classification of a model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathRegularity {
    pub bounded_variation: bool,
    /// Drift `d` of the bounded-variation process; only meaningful when
    /// `bounded_variation` is set.
    pub drift_d: f64,
}

/// A spectrally negative Lévy process given by `(gamma, sigma, Pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevyModel {
    gamma: f64,
    sigma: f64,
    jumps: Option<Jumps>,
}

const PHI_MAX_ITER: usize = 400;

impl LevyModel {
    pub fn new(gamma: f64, sigma: f64, jumps: Option<Jumps>) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::InvalidModel(format!("gamma must be finite, got {gamma}")));
        }
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::InvalidModel(format!(
                "sigma must be finite and >= 0, got {sigma}"
            )));
        }
        if let Some(j) = &jumps {
            if !(j.rate.is_finite() && j.rate > 0.0) {
                return Err(Error::InvalidModel(format!(
                    "jump rate must be positive, got {}",
                    j.rate
                )));
            }
            j.claim.validate()?;
        }
        if sigma == 0.0 && jumps.is_none() && gamma <= 0.0 {
            return Err(Error::InvalidModel(
                "a model without Gaussian part or jumps must be a pure positive drift (gamma > 0)"
                    .into(),
            ));
        }
        Ok(LevyModel { gamma, sigma, jumps })
    }

    /// `X_t = m t + sigma B_t`.
    pub fn brownian(drift: f64, sigma: f64) -> Result<Self> {
        LevyModel::new(drift, sigma, None)
    }

    /// Jump diffusion `gamma t + sigma B_t - sum_{i <= N_t} C_i`.
    pub fn jump_diffusion(
        gamma: f64,
        sigma: f64,
        rate: f64,
        claim: ClaimDistribution,
    ) -> Result<Self> {
        LevyModel::new(gamma, sigma, Some(Jumps { rate, claim }))
    }

    /// Classical Cramér–Lundberg surplus with premium rate `premium`.
    pub fn cramer_lundberg(premium: f64, rate: f64, claim: ClaimDistribution) -> Result<Self> {
        LevyModel::jump_diffusion(premium, 0.0, rate, claim)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn jumps(&self) -> Option<&Jumps> {
        self.jumps.as_ref()
    }

    /// Total mass of the Lévy measure, `Pi(-inf, 0)`.
    pub fn jump_rate(&self) -> f64 {
        self.jumps.as_ref().map_or(0.0, |j| j.rate)
    }

    /// `beta * E[C]`, the mean downward jump per unit time.
    pub fn mean_jump_intensity(&self) -> f64 {
        self.jumps.as_ref().map_or(0.0, |j| j.rate * j.claim.mean())
    }

    pub fn path_regularity(&self) -> PathRegularity {
        PathRegularity {
            bounded_variation: self.sigma == 0.0,
            drift_d: self.gamma,
        }
    }

    /// True for a pure positive drift, which has monotone paths.
    pub fn is_pure_drift(&self) -> bool {
        self.sigma == 0.0 && self.jumps.is_none()
    }

    /// Non-monotone paths: the process genuinely fluctuates.
    pub fn is_non_monotone(&self) -> bool {
        self.sigma > 0.0 || (self.jumps.is_some() && self.gamma > 0.0)
    }

    /// `psi'(0+) = E[X_1]`.
    pub fn psi_prime_at_zero(&self) -> f64 {
        self.gamma - self.mean_jump_intensity()
    }

    pub fn psi(&self, theta: f64) -> Result<f64> {
        if !(theta >= 0.0) {
            return Err(Error::Domain(format!("psi requires theta >= 0, got {theta}")));
        }
        Ok(self.psi_unchecked(theta))
    }

    pub fn psi_prime(&self, theta: f64) -> Result<f64> {
        if !(theta >= 0.0) {
            return Err(Error::Domain(format!(
                "psi_prime requires theta >= 0, got {theta}"
            )));
        }
        Ok(self.psi_prime_unchecked(theta))
    }

    /// `psi` without the domain check; valid for `theta > -min claim rate`.
    pub(crate) fn psi_unchecked(&self, theta: f64) -> f64 {
        self.psi_generic(theta)
    }

    pub(crate) fn psi_prime_unchecked(&self, theta: f64) -> f64 {
        self.psi_prime_generic(theta)
    }

    pub(crate) fn psi_complex(&self, s: Complex64) -> Complex64 {
        self.psi_generic(s)
    }

    pub(crate) fn psi_prime_complex(&self, s: Complex64) -> Complex64 {
        self.psi_prime_generic(s)
    }

    fn psi_generic<T: Scalar>(&self, s: T) -> T {
        let mut v = c::<T>(self.gamma) * s + c::<T>(0.5 * self.sigma * self.sigma) * s * s;
        if let Some(j) = &self.jumps {
            v = v + c::<T>(j.rate) * j.claim.transform_minus_one(s);
        }
        v
    }

    fn psi_prime_generic<T: Scalar>(&self, s: T) -> T {
        let mut v = c::<T>(self.gamma) + c::<T>(self.sigma * self.sigma) * s;
        if let Some(j) = &self.jumps {
            v = v + c::<T>(j.rate) * j.claim.transform_derivative(s);
        }
        v
    }

    /// Sum of absolute values of the terms of `psi(theta)`; the natural scale
    /// for residual tolerances.
    fn psi_scale(&self, theta: f64) -> f64 {
        let jump = self
            .jumps
            .as_ref()
            .map_or(0.0, |j| j.rate * j.claim.transform_minus_one(theta).abs());
        (self.gamma * theta).abs() + 0.5 * self.sigma * self.sigma * theta * theta + jump
    }

    /// Right inverse `Phi(q) = sup{xi >= 0 : psi(xi) = q}`.
    pub fn phi(&self, q: f64) -> Result<f64> {
        if !(q >= 0.0) || !q.is_finite() {
            return Err(Error::Domain(format!("phi requires finite q >= 0, got {q}")));
        }
        if self.is_pure_drift() {
            return Ok(q / self.gamma);
        }
        let slope0 = self.psi_prime_at_zero();
        if q == 0.0 && slope0 >= 0.0 {
            return Ok(0.0);
        }

        // On [lo, hi] psi is increasing with psi(lo) <= q < psi(hi).
        let lo = if slope0 >= 0.0 {
            0.0
        } else {
            self.psi_minimiser()?
        };
        let mut hi = lo.max(1.0);
        let mut doublings = 0;
        while self.psi_unchecked(hi) <= q {
            hi *= 2.0;
            doublings += 1;
            if doublings > 2000 || !hi.is_finite() {
                return Err(Error::Convergence(format!(
                    "could not bracket Phi({q}): psi stays below q"
                )));
            }
        }

        let mut lo = lo;
        let mut x = hi;
        let mut best = (f64::INFINITY, x);
        for _ in 0..PHI_MAX_ITER {
            let fx = self.psi_unchecked(x) - q;
            let scale = q.max(self.psi_scale(x));
            if fx.abs() < best.0 {
                best = (fx.abs(), x);
            }
            if fx.abs() <= 4.0 * f64::EPSILON * scale {
                return Ok(x);
            }
            if fx > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            if hi - lo <= 4.0 * f64::EPSILON * hi {
                break;
            }
            // Newton from the right of the root is monotone for convex psi;
            // the bracket only guards against round-off.
            let mut next = x - fx / self.psi_prime_unchecked(x);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            x = next;
        }
        let (residual, x) = best;
        let scale = q.max(self.psi_scale(x));
        if residual <= 1e-12 * scale {
            Ok(x)
        } else {
            Err(Error::Convergence(format!(
                "Phi({q}): residual {residual:e} after {PHI_MAX_ITER} iterations"
            )))
        }
    }

    /// Minimiser of `psi` on `[0, inf)` when `psi'(0+) < 0`.
    fn psi_minimiser(&self) -> Result<f64> {
        let mut hi = 1.0;
        let mut guard = 0;
        while self.psi_prime_unchecked(hi) <= 0.0 {
            hi *= 2.0;
            guard += 1;
            if guard > 2000 {
                return Err(Error::Convergence("psi' never becomes positive".into()));
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.psi_prime_unchecked(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(lo)
    }

    /// Density of the Lévy measure at `x < 0`.
    pub fn levy_density(&self, x: f64) -> f64 {
        match &self.jumps {
            Some(j) if x < 0.0 => j.rate * j.claim.density(-x),
            _ => 0.0,
        }
    }

    /// Tail of the Lévy measure, `nu(x) = Pi(-inf, x)` for `x < 0`.
    pub fn levy_tail(&self, x: f64) -> Result<f64> {
        if !(x < 0.0) {
            return Err(Error::Domain(format!("levy_tail requires x < 0, got {x}")));
        }
        Ok(self.levy_tail_unchecked(x))
    }

    pub(crate) fn levy_tail_unchecked(&self, x: f64) -> f64 {
        self.jumps.as_ref().map_or(0.0, |j| j.rate * j.claim.survival(-x))
    }

    /// `int_{-inf}^{x} nu(u) du = beta E[(C + x)^+]` for `x <= 0`.
    pub fn levy_tail_integral(&self, x: f64) -> f64 {
        self.jumps
            .as_ref()
            .map_or(0.0, |j| j.rate * j.claim.stop_loss(-x.min(0.0)))
    }

    /// Point `x_min < 0` below which `nu(x) < tol`.
    pub(crate) fn levy_tail_cutoff(&self, tol: f64) -> f64 {
        if self.jumps.is_none() {
            return -1.0;
        }
        let mut x = -1.0;
        while self.levy_tail_unchecked(x) >= tol && x > -1e8 {
            x *= 2.0;
        }
        x
    }

    /// Lundberg exponent `R > 0` with `psi(-R) = 0`, when `psi'(0+) > 0`.
    /// `P_x{tau_0^- < inf} <= exp(-R x)`.
    pub fn adjustment_coefficient(&self) -> Result<f64> {
        if !(self.psi_prime_at_zero() > 0.0) {
            return Err(Error::Hypothesis(
                "adjustment coefficient needs the net profit condition psi'(0+) > 0".into(),
            ));
        }
        if self.is_pure_drift() {
            return Ok(f64::INFINITY);
        }
        let limit = self.jumps.as_ref().map_or(f64::INFINITY, |j| j.claim.min_rate());
        // psi < 0 just left of zero and psi -> +inf towards -limit (or -inf).
        let mut lo = -1.0_f64.min(0.5 * limit);
        let mut k = 1;
        while self.psi_unchecked(lo) <= 0.0 {
            lo = if limit.is_finite() {
                -limit * (1.0 - 0.5_f64.powi(k + 1))
            } else {
                2.0 * lo
            };
            k += 1;
            if k > 200 {
                return Err(Error::Convergence("no negative root of psi found".into()));
            }
        }
        let mut hi = 0.0;
        let mut probe = lo;
        // move hi off zero where psi(hi) < 0
        for _ in 0..200 {
            probe *= 0.5;
            if self.psi_unchecked(probe) < 0.0 {
                hi = probe;
                break;
            }
        }
        if hi == 0.0 {
            return Err(Error::Convergence("psi not negative near 0-".into()));
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.psi_unchecked(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(-0.5 * (lo + hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bm_drift() -> LevyModel {
        LevyModel::brownian(1.0, 2f64.sqrt()).unwrap()
    }

    fn exp_claims() -> LevyModel {
        LevyModel::cramer_lundberg(1.0, 1.0, ClaimDistribution::exponential(2.0).unwrap())
            .unwrap()
    }

    fn hyper() -> ClaimDistribution {
        ClaimDistribution::hyper_exponential(vec![0.5, 0.5], vec![1.0, 3.0]).unwrap()
    }

    fn gauss_legendre_on(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        // composite Simpson, independent of the crate's quadrature
        let n = 2 * panels;
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn psi_examples() {
        assert_relative_eq!(bm_drift().psi(1.0).unwrap(), 2.0, epsilon = 1e-15);
        assert_eq!(exp_claims().psi(0.0).unwrap(), 0.0);
        assert_eq!(bm_drift().psi(0.0).unwrap(), 0.0);
        assert_relative_eq!(exp_claims().psi(1.0).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn psi_matches_levy_integral() {
        // gamma theta + beta int (e^{theta z} - 1) pi(z) dz by Simpson
        let m = exp_claims();
        let theta = 1.0;
        let integral =
            gauss_legendre_on(|z| ((theta * z).exp() - 1.0) * m.levy_density(z), -40.0, 0.0, 4000);
        assert_relative_eq!(m.psi(theta).unwrap(), theta + integral, epsilon = 1e-9);
    }

    #[test]
    fn psi_rejects_negative_theta() {
        assert!(matches!(exp_claims().psi(-0.1), Err(Error::Domain(_))));
        assert!(matches!(exp_claims().psi_prime(-0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn psi_prime_examples() {
        assert_eq!(bm_drift().psi_prime(0.0).unwrap(), 1.0);
        assert_relative_eq!(exp_claims().psi_prime(0.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(bm_drift().psi_prime(1.0).unwrap(), 3.0, epsilon = 1e-15);
        assert_relative_eq!(exp_claims().psi_prime_at_zero(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn phi_examples() {
        assert_relative_eq!(bm_drift().phi(2.0).unwrap(), 1.0, epsilon = 1e-14);
        assert_eq!(exp_claims().phi(0.0).unwrap(), 0.0);
        assert_eq!(bm_drift().phi(0.0).unwrap(), 0.0);
        // theta^2 + (1 - q) theta - 2 q = 0 at q = 1
        assert_relative_eq!(exp_claims().phi(1.0).unwrap(), 2f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn phi_with_negative_drift_is_positive_root() {
        // E[X_1] = 0.5 - 1 < 0, psi(theta) = 0.5 theta + theta^2/2 - theta/(1+theta)
        let m = LevyModel::jump_diffusion(0.5, 1.0, 1.0, ClaimDistribution::exponential(1.0).unwrap())
            .unwrap();
        let phi0 = m.phi(0.0).unwrap();
        assert!(phi0 > 0.0);
        assert!(m.psi(phi0).unwrap().abs() < 1e-13);
    }

    #[test]
    fn phi_rejects_negative_q() {
        assert!(matches!(exp_claims().phi(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn levy_tail_examples() {
        let m = exp_claims();
        assert_relative_eq!(m.levy_tail(-1.0).unwrap(), (-2.0f64).exp(), epsilon = 1e-16);
        assert_eq!(bm_drift().levy_tail(-3.0).unwrap(), 0.0);
        let h = LevyModel::cramer_lundberg(5.0, 2.0, hyper()).unwrap();
        let expected = 2.0 * (0.5 * (-1.0f64).exp() + 0.5 * (-3.0f64).exp());
        assert_relative_eq!(h.levy_tail(-1.0).unwrap(), expected, epsilon = 1e-15);
        assert_relative_eq!(expected, 0.417_666_5, epsilon = 1e-7);
        // cross-check by integrating the density
        let by_density = gauss_legendre_on(|z| h.levy_density(z), -60.0, -1.0, 6000);
        assert_relative_eq!(by_density, expected, epsilon = 1e-9);
        assert!(matches!(m.levy_tail(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn erlang_tail_and_stop_loss() {
        let claim = ClaimDistribution::erlang(3, 2.0).unwrap();
        assert_relative_eq!(claim.mean(), 1.5, epsilon = 1e-15);
        let surv = gauss_legendre_on(|y| claim.density(y), 0.7, 60.0, 6000);
        assert_relative_eq!(claim.survival(0.7), surv, epsilon = 1e-10);
        let sl = gauss_legendre_on(|y| claim.survival(y), 0.7, 60.0, 6000);
        assert_relative_eq!(claim.stop_loss(0.7), sl, epsilon = 1e-10);
        assert_relative_eq!(claim.stop_loss(0.0), claim.mean(), epsilon = 1e-14);
    }

    #[test]
    fn rational_transform_matches_direct() {
        use crate::poly;
        for claim in [
            ClaimDistribution::exponential(2.0).unwrap(),
            hyper(),
            ClaimDistribution::erlang(4, 3.0).unwrap(),
        ] {
            let (num, den) = claim.rational_transform();
            for theta in [0.0, 0.3, 2.0, 10.0] {
                let direct = 1.0 + claim.transform_minus_one(theta);
                assert_relative_eq!(
                    poly::eval(&num, theta) / poly::eval(&den, theta),
                    direct,
                    epsilon = 1e-13
                );
            }
        }
    }

    #[test]
    fn model_validation() {
        assert!(LevyModel::new(0.0, -1.0, None).is_err());
        assert!(LevyModel::new(-1.0, 0.0, None).is_err());
        assert!(LevyModel::new(1.0, 0.0, None).unwrap().is_pure_drift());
        assert!(ClaimDistribution::hyper_exponential(vec![0.5, 0.4], vec![1.0, 2.0]).is_err());
        assert!(ClaimDistribution::hyper_exponential(vec![0.5, 0.5], vec![1.0, 1.0]).is_err());
        assert!(ClaimDistribution::hyper_exponential(vec![1.2, -0.2], vec![1.0, 2.0]).is_err());
        assert!(ClaimDistribution::erlang(0, 1.0).is_err());
        assert!(ClaimDistribution::exponential(0.0).is_err());
        assert!(LevyModel::jump_diffusion(1.0, 0.0, 0.0, ClaimDistribution::exponential(1.0).unwrap())
            .is_err());
    }

    #[test]
    fn path_regularity() {
        let r = exp_claims().path_regularity();
        assert!(r.bounded_variation);
        assert_eq!(r.drift_d, 1.0);
        assert!(!bm_drift().path_regularity().bounded_variation);
    }

    #[test]
    fn adjustment_coefficient_exponential_claims() {
        // theta - theta/(2+theta) = 0 at theta = -1
        assert_relative_eq!(exp_claims().adjustment_coefficient().unwrap(), 1.0, epsilon = 1e-12);
        // m theta + theta^2 = 0 at -1 for (m = 1, sigma^2 = 2)
        assert_relative_eq!(bm_drift().adjustment_coefficient().unwrap(), 1.0, epsilon = 1e-12);
        let jd = LevyModel::jump_diffusion(1.0, 1.0, 1.0, ClaimDistribution::exponential(2.0).unwrap())
            .unwrap();
        assert_relative_eq!(
            jd.adjustment_coefficient().unwrap(),
            2.0 - 2f64.sqrt(),
            epsilon = 1e-12
        );
    }
}
