//! Monte Carlo oracle: path simulation of the supported jump-diffusions,
//! used to check the closed-form results independently.
//!
//! Runs are reproducible bit for bit: path `i` draws all of its randomness
//! from a counter-based generator keyed by `(seed, i)`, paths are collected
//! in index order, and means use compensated summation in that order.
//!
//! Paths stop early when their outcome is settled:
//!
//! * above an escape level `L`, with `P(return below 0) <= exp(-R L) = 1e-10`
//!   where `R` is the Lundberg exponent (jump models with `psi'(0+) > 0`);
//! * without jumps, a path above `3 sigma` either never returns to zero or
//!   restarts from zero, decided by one uniform with the exact return
//!   probability `exp(-2 m x / sigma^2)`;
//! * once the occupation exceeds `40 / lambda_min`, where `exp(-lambda occ)`
//!   is below `e^-40`.
//!
//! Anything still open at the horizon is flagged in [`BiasNote`].

mod path;
pub mod rng;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy_model::LevyModel;
use path::{PathOutcome, Walker};
use rng::{PathStream, Tag};

const ESCAPE_TAIL: f64 = 1e-10;
const CAP_EXPONENT: f64 = 40.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub n_paths: usize,
    /// Leaf length of the Brownian refinement; unused when `sigma = 0`.
    pub dt: f64,
    pub horizon: f64,
    pub seed: u64,
    /// Barrier depth for runs stopped at the first passage below `-b`.
    pub b: Option<f64>,
    pub bridge_correction: bool,
}

impl SimConfig {
    pub fn new(n_paths: usize, dt: f64, horizon: f64, seed: u64) -> Self {
        SimConfig {
            n_paths,
            dt,
            horizon,
            seed,
            b: None,
            bridge_correction: true,
        }
    }

    pub fn with_barrier(mut self, b: f64) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_bridge_correction(mut self, on: bool) -> Self {
        self.bridge_correction = on;
        self
    }

    /// `200 / psi'(0+)`, or 200 when the mean is not positive.
    pub fn default_horizon(model: &LevyModel) -> f64 {
        let m = model.psi_prime_at_zero();
        if m > 0.0 {
            200.0 / m
        } else {
            200.0
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_paths < 100 {
            return Err(Error::SimConfig(format!("need at least 100 paths, got {}", self.n_paths)));
        }
        if self.n_paths > u32::MAX as usize {
            return Err(Error::SimConfig("path index must fit in 32 bits".into()));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::SimConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.horizon > 0.0) {
            return Err(Error::SimConfig(format!("horizon must be positive, got {}", self.horizon)));
        }
        if self.dt > self.horizon {
            return Err(Error::SimConfig(format!(
                "dt = {} exceeds the horizon {}",
                self.dt, self.horizon
            )));
        }
        if let Some(b) = self.b {
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::SimConfig(format!("barrier depth b must be positive, got {b}")));
            }
        }
        Ok(())
    }
}

/// Known sources of bias in an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiasNote {
    None,
    GridDiscretization,
    HorizonTruncation,
    Both,
}

impl BiasNote {
    fn from_flags(grid: bool, horizon: bool) -> Self {
        match (grid, horizon) {
            (false, false) => BiasNote::None,
            (true, false) => BiasNote::GridDiscretization,
            (false, true) => BiasNote::HorizonTruncation,
            (true, true) => BiasNote::Both,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BiasNote::None => "none",
            BiasNote::GridDiscretization => "grid_discretization",
            BiasNote::HorizonTruncation => "horizon_truncation",
            BiasNote::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(n_paths)`.
    pub std_error: f64,
    pub n_paths: usize,
    pub bias_note: BiasNote,
}

impl McEstimate {
    /// `(value - mean) / std_error`; zero when both agree exactly.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = value - self.mean;
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// Neumaier-compensated sum in slice order.
fn compensated_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

fn summarize(samples: &[f64], bias_note: BiasNote) -> McEstimate {
    let n = samples.len();
    let first = samples[0];
    if samples.iter().all(|&s| s == first) {
        return McEstimate {
            mean: first,
            std_error: 0.0,
            n_paths: n,
            bias_note,
        };
    }
    let mean = compensated_sum(samples.iter().copied()) / n as f64;
    let ss = compensated_sum(samples.iter().map(|s| (s - mean) * (s - mean)));
    let var = ss / (n - 1) as f64;
    McEstimate {
        mean,
        std_error: (var / n as f64).sqrt(),
        n_paths: n,
        bias_note,
    }
}

struct Run<'a> {
    walker: Walker<'a>,
    seed: u64,
    n_paths: usize,
}

impl Run<'_> {
    fn outcomes(&self) -> Vec<PathOutcome> {
        (0..self.n_paths)
            .into_par_iter()
            .map(|i| self.walker.run(&PathStream::new(self.seed, i as u32)))
            .collect()
    }
}

fn walker<'a>(model: &'a LevyModel, cfg: &SimConfig, start: f64) -> Result<Walker<'a>> {
    cfg.validate()?;
    if model.sigma() == 0.0 && !(model.gamma() > 0.0) {
        return Err(Error::SimConfig(
            "paths without a Gaussian part need a positive drift".into(),
        ));
    }
    let escape = if model.jumps().is_some() && model.psi_prime_at_zero() > 0.0 {
        let r = model.adjustment_coefficient()?;
        (1.0 / ESCAPE_TAIL).ln() / r
    } else {
        f64::INFINITY
    };
    Ok(Walker {
        gamma: model.gamma(),
        sigma: model.sigma(),
        jump_rate: model.jump_rate(),
        claim: model.jumps().map(|j| &j.claim),
        dt: cfg.dt,
        horizon: cfg.horizon,
        bridge_correction: cfg.bridge_correction,
        barrier: None,
        escape: escape.max(start + 1.0),
        occupation_cap: f64::INFINITY,
        track_excursions: false,
        start,
    })
}

fn require_positive_mean(model: &LevyModel, what: &str) -> Result<()> {
    let m = model.psi_prime_at_zero();
    if !(m > 0.0) {
        return Err(Error::SimConfig(format!(
            "{what} without a barrier needs psi'(0+) > 0 (got {m}); the occupation is infinite"
        )));
    }
    Ok(())
}

fn check_lambdas(lambdas: &[f64]) -> Result<f64> {
    if lambdas.is_empty() {
        return Err(Error::SimConfig("no lambda values given".into()));
    }
    if let Some(l) = lambdas.iter().find(|l| !(**l >= 0.0 && l.is_finite())) {
        return Err(Error::SimConfig(format!("lambda must be finite and >= 0, got {l}")));
    }
    let min_positive = lambdas.iter().copied().filter(|&l| l > 0.0).fold(f64::INFINITY, f64::min);
    Ok(CAP_EXPONENT / min_positive)
}

/// Estimate of `E[exp(-lambda O)]` where `O` is the time spent in
/// `(-inf, 0]`, up to the first passage below `-b` if `cfg.b` is set.
pub fn simulate_occupation(model: &LevyModel, lambda: f64, cfg: &SimConfig) -> Result<McEstimate> {
    Ok(simulate_occupation_from(model, &[lambda], 0.0, cfg)?[0])
}

/// Several `lambda` values on the same paths.
pub fn simulate_occupation_multi(
    model: &LevyModel,
    lambdas: &[f64],
    cfg: &SimConfig,
) -> Result<Vec<McEstimate>> {
    simulate_occupation_from(model, lambdas, 0.0, cfg)
}

/// As [`simulate_occupation_multi`] for paths started at `x >= 0`.
pub fn simulate_occupation_from(
    model: &LevyModel,
    lambdas: &[f64],
    x: f64,
    cfg: &SimConfig,
) -> Result<Vec<McEstimate>> {
    let cap = check_lambdas(lambdas)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::SimConfig(format!("starting point must be x >= 0, got {x}")));
    }
    if cfg.b.is_none() {
        require_positive_mean(model, "occupation simulation")?;
    }
    let mut w = walker(model, cfg, x)?;
    if lambdas.iter().all(|&l| l == 0.0) {
        cfg.validate()?;
        let one = McEstimate {
            mean: 1.0,
            std_error: 0.0,
            n_paths: cfg.n_paths,
            bias_note: BiasNote::None,
        };
        return Ok(vec![one; lambdas.len()]);
    }
    w.barrier = cfg.b.map(|b| -b);
    w.occupation_cap = cap;
    let run = Run {
        walker: w,
        seed: cfg.seed,
        n_paths: cfg.n_paths,
    };
    let outcomes = run.outcomes();
    let truncated = outcomes.iter().any(|o| o.truncated);
    let note = BiasNote::from_flags(model.sigma() > 0.0, truncated);
    Ok(lambdas
        .iter()
        .map(|&l| {
            let samples: Vec<f64> = outcomes.iter().map(|o| (-l * o.occupation).exp()).collect();
            summarize(&samples, note)
        })
        .collect())
}

/// Frequency of `{tau_0^- < T}` from `x`.
pub fn simulate_ruin(model: &LevyModel, x: f64, cfg: &SimConfig) -> Result<McEstimate> {
    let (outcomes, note) = ruin_outcomes(model, x, cfg)?;
    let samples: Vec<f64> = outcomes
        .iter()
        .map(|o| if o.killed_at.is_some() { 1.0 } else { 0.0 })
        .collect();
    Ok(summarize(&samples, note))
}

fn ruin_outcomes(model: &LevyModel, x: f64, cfg: &SimConfig) -> Result<(Vec<PathOutcome>, BiasNote)> {
    let m = model.psi_prime_at_zero();
    if m < 0.0 {
        return Err(Error::SimConfig(format!("ruin simulation needs psi'(0+) >= 0, got {m}")));
    }
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::SimConfig(format!("starting point must be x >= 0, got {x}")));
    }
    let mut w = walker(model, cfg, x)?;
    w.barrier = Some(0.0);
    let run = Run {
        walker: w,
        seed: cfg.seed,
        n_paths: cfg.n_paths,
    };
    let outcomes = run.outcomes();
    let truncated = outcomes.iter().any(|o| o.truncated);
    Ok((outcomes, BiasNote::from_flags(model.sigma() > 0.0, truncated)))
}

/// Histogram of the position at ruin, with the creeping frequency and the
/// estimate of `E_x[exp(r X_{tau_0^-}); tau_0^- < T]`.
#[derive(Debug, Clone)]
pub struct DeficitSample {
    /// `bins + 1` edges spanning `[lower, 0]`.
    pub edges: Vec<f64>,
    /// Counts of strictly negative deficits per bin; anything below
    /// `lower` falls in the first bin.
    pub counts: Vec<u64>,
    pub creeping: McEstimate,
    pub ruin: McEstimate,
    pub laplace: McEstimate,
    /// Strictly negative deficits in path order.
    pub deficits: Vec<f64>,
}

pub fn simulate_deficit(model: &LevyModel, x: f64, r: f64, cfg: &SimConfig) -> Result<DeficitSample> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::SimConfig(format!("r must be positive, got {r}")));
    }
    let (outcomes, note) = ruin_outcomes(model, x, cfg)?;
    let bins = 50;
    let lower = -10.0 / model.jumps().map_or(1.0, |j| j.claim.min_rate());
    let edges: Vec<f64> = (0..=bins).map(|i| lower * (1.0 - i as f64 / bins as f64)).collect();
    let mut counts = vec![0u64; bins];
    let mut deficits = Vec::new();
    let mut creep = Vec::with_capacity(outcomes.len());
    let mut ruin = Vec::with_capacity(outcomes.len());
    let mut lap = Vec::with_capacity(outcomes.len());
    for o in &outcomes {
        match o.killed_at {
            Some(z) if z < 0.0 => {
                deficits.push(z);
                let k = (((z - lower) / -lower * bins as f64).floor().max(0.0) as usize).min(bins - 1);
                counts[k] += 1;
                creep.push(0.0);
                ruin.push(1.0);
                lap.push((r * z).exp());
            }
            Some(_) => {
                creep.push(1.0);
                ruin.push(1.0);
                lap.push(1.0);
            }
            None => {
                creep.push(0.0);
                ruin.push(0.0);
                lap.push(0.0);
            }
        }
    }
    Ok(DeficitSample {
        edges,
        counts,
        creeping: summarize(&creep, note),
        ruin: summarize(&ruin, note),
        laplace: summarize(&lap, note),
        deficits,
    })
}

/// Kolmogorov–Smirnov distance between the empirical law of `samples` and
/// the distribution function `cdf`.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = cdf(v);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Parisian ruin estimates for several delay rates on the same paths.
#[derive(Debug, Clone)]
pub struct ParisianEstimates {
    /// Frequency of an implementation clock ringing before its excursion ends.
    pub clocks: Vec<McEstimate>,
    /// `1 - exp(-d O)` averaged over paths, `O` the total occupation.
    pub occupation: Vec<McEstimate>,
}

/// Parisian ruin probability with `Exp(d)` delays, bounded-variation models only.
pub fn simulate_parisian(model: &LevyModel, d: f64, cfg: &SimConfig) -> Result<McEstimate> {
    Ok(simulate_parisian_multi(model, &[d], cfg)?.clocks[0])
}

pub fn simulate_parisian_multi(model: &LevyModel, ds: &[f64], cfg: &SimConfig) -> Result<ParisianEstimates> {
    if model.sigma() > 0.0 {
        return Err(Error::SimConfig(
            "Parisian simulation needs a bounded-variation model (sigma = 0); \
             excursions of a Brownian path cannot be listed exactly"
                .into(),
        ));
    }
    require_positive_mean(model, "Parisian simulation")?;
    if let Some(d) = ds.iter().find(|d| !(**d > 0.0 && d.is_finite())) {
        return Err(Error::SimConfig(format!("delay rate d must be positive, got {d}")));
    }
    let cap = check_lambdas(ds)?;
    let mut w = walker(model, cfg, 0.0)?;
    w.track_excursions = true;
    w.occupation_cap = cap;
    let run = Run {
        walker: w,
        seed: cfg.seed,
        n_paths: cfg.n_paths,
    };
    let outcomes = run.outcomes();
    let truncated = outcomes.iter().any(|o| o.truncated);
    let note = BiasNote::from_flags(false, truncated);
    let mut clocks = Vec::with_capacity(ds.len());
    let mut occupation = Vec::with_capacity(ds.len());
    for &d in ds {
        let rung: Vec<f64> = outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| {
                let stream = PathStream::new(cfg.seed, i as u32);
                // one Exp(1) per excursion, scaled by 1/d: coupled across d
                let ruined = o
                    .excursions
                    .iter()
                    .enumerate()
                    .any(|(e, len)| stream.exponential(Tag::Clock, e as u32, 0) < d * len);
                if ruined {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        clocks.push(summarize(&rung, note));
        let occ: Vec<f64> = outcomes.iter().map(|o| -(-d * o.occupation).exp_m1()).collect();
        occupation.push(summarize(&occ, note));
    }
    Ok(ParisianEstimates { clocks, occupation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy_model::ClaimDistribution;
    use crate::{fluctuation, occupation};

    fn exp_claims() -> LevyModel {
        LevyModel::cramer_lundberg(1.0, 1.0, ClaimDistribution::exponential(2.0).unwrap()).unwrap()
    }

    fn jump_diffusion() -> LevyModel {
        LevyModel::jump_diffusion(1.0, 1.0, 1.0, ClaimDistribution::exponential(2.0).unwrap())
            .unwrap()
    }

    fn within(est: &McEstimate, value: f64, k: f64) -> bool {
        (est.mean - value).abs() <= k * est.std_error
    }

    #[test]
    fn config_validation() {
        assert!(SimConfig::new(99, 0.01, 10.0, 1).validate().is_err());
        assert!(SimConfig::new(100, 0.0, 10.0, 1).validate().is_err());
        assert!(SimConfig::new(100, 20.0, 10.0, 1).validate().is_err());
        assert!(SimConfig::new(100, 0.01, 10.0, 1).with_barrier(-1.0).validate().is_err());
        assert!(SimConfig::new(100, 0.01, 10.0, 1).with_barrier(1.0).validate().is_ok());
        let critical = LevyModel::brownian(0.0, 1.0).unwrap();
        let cfg = SimConfig::new(100, 0.01, 10.0, 1);
        assert!(matches!(simulate_occupation(&critical, 1.0, &cfg), Err(Error::SimConfig(_))));
        assert!(matches!(simulate_parisian(&jump_diffusion(), 1.0, &cfg), Err(Error::SimConfig(_))));
    }

    #[test]
    fn zero_variance_cases() {
        let cfg = SimConfig::new(500, 0.01, 50.0, 3);
        let e = simulate_occupation(&jump_diffusion(), 0.0, &cfg).unwrap();
        assert_eq!((e.mean, e.std_error), (1.0, 0.0));
        let drift = LevyModel::new(1.0, 0.0, None).unwrap();
        let e = simulate_ruin(&drift, 0.0, &cfg).unwrap();
        assert_eq!((e.mean, e.std_error), (0.0, 0.0));
        let e = simulate_ruin(&drift, 2.0, &cfg).unwrap();
        assert_eq!((e.mean, e.std_error), (0.0, 0.0));
        // regular for the lower half-line: ruin at once from zero
        let e = simulate_ruin(&LevyModel::brownian(1.0, 1.0).unwrap(), 0.0, &cfg).unwrap();
        assert_eq!((e.mean, e.std_error), (1.0, 0.0));
    }

    #[test]
    fn independent_of_thread_count() {
        let cfg = SimConfig::new(3000, 1e-2, 100.0, 42).with_barrier(2.0);
        let model = jump_diffusion();
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| simulate_occupation_multi(&model, &[0.5, 1.0], &cfg).unwrap())
        };
        let one = run(1);
        let many = run(4);
        for (a, b) in one.iter().zip(&many) {
            assert_eq!(a.mean.to_bits(), b.mean.to_bits());
            assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        }
        let p = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| simulate_parisian_multi(&exp_claims(), &[1.0], &SimConfig::new(3000, 1e-2, 400.0, 9)).unwrap())
        };
        assert_eq!(p(1).clocks[0], p(3).clocks[0]);
    }

    #[test]
    fn total_occupation_of_compound_poisson() {
        let model = exp_claims();
        let cfg = SimConfig::new(40_000, 1e-2, SimConfig::default_horizon(&model), 5);
        let lambdas = [0.25, 1.0, 4.0];
        let est = simulate_occupation_multi(&model, &lambdas, &cfg).unwrap();
        for (l, e) in lambdas.iter().zip(&est) {
            let f = occupation::occupation_total_lt(&model, *l).unwrap();
            assert!(within(e, f, 4.0), "lambda {l}: {e:?} vs {f}");
            assert_eq!(e.bias_note, BiasNote::None);
        }
    }

    #[test]
    fn occupation_from_a_positive_start() {
        let model = exp_claims();
        let cfg = SimConfig::new(40_000, 1e-2, SimConfig::default_horizon(&model), 6);
        let e = simulate_occupation_from(&model, &[1.0], 1.0, &cfg).unwrap()[0];
        let f = occupation::occupation_total_lt_from(&model, 1.0, 1.0).unwrap();
        assert!(within(&e, f, 4.0), "{e:?} vs {f}");
    }

    #[test]
    fn brownian_occupation_until_passage() {
        let model = LevyModel::brownian(0.0, 1.0).unwrap();
        let cfg = SimConfig::new(20_000, 1e-3, 200.0, 8).with_barrier(1.0);
        let e = simulate_occupation(&model, 0.5, &cfg).unwrap();
        let f = 1.0 / 1f64.cosh();
        // grid bias at dt = 1e-3 is well inside the band at this size
        assert!(within(&e, f, 4.0), "{e:?} vs {f}");
        assert_ne!(e.bias_note, BiasNote::None);
    }

    #[test]
    fn ruin_frequencies() {
        let model = exp_claims();
        let cfg = SimConfig::new(40_000, 1e-2, SimConfig::default_horizon(&model), 10);
        for x in [0.0, 1.0] {
            let e = simulate_ruin(&model, x, &cfg).unwrap();
            let f = fluctuation::ruin_probability(&model, x).unwrap();
            assert!(within(&e, f, 4.0), "x {x}: {e:?} vs {f}");
        }
        let hyper = LevyModel::cramer_lundberg(
            1.0,
            1.0,
            ClaimDistribution::hyper_exponential(vec![0.3, 0.7], vec![1.0, 4.0]).unwrap(),
        )
        .unwrap();
        let erlang =
            LevyModel::cramer_lundberg(1.0, 1.0, ClaimDistribution::erlang(3, 5.0).unwrap()).unwrap();
        for m in [hyper, erlang] {
            let cfg = SimConfig::new(40_000, 1e-2, SimConfig::default_horizon(&m), 11);
            let e = simulate_ruin(&m, 0.5, &cfg).unwrap();
            let f = fluctuation::ruin_probability(&m, 0.5).unwrap();
            assert!(within(&e, f, 4.0), "{e:?} vs {f}");
        }
    }

    #[test]
    fn deficit_of_exponential_claims_is_exponential() {
        let model = exp_claims();
        let cfg = SimConfig::new(40_000, 1e-2, SimConfig::default_horizon(&model), 12);
        let s = simulate_deficit(&model, 0.0, 1.0, &cfg).unwrap();
        assert_eq!(s.creeping.mean, 0.0);
        let ks = ks_distance(&s.deficits, |z| (2.0 * z).exp());
        assert!(ks < 0.02, "{ks}");
        assert_eq!(s.counts.iter().sum::<u64>() as usize, s.deficits.len());
        let f = fluctuation::deficit_laplace(&model, 1.0, 0.0).unwrap();
        assert!(within(&s.laplace, f, 4.0), "{:?} vs {f}", s.laplace);
    }

    #[test]
    fn jump_diffusion_deficit_and_creeping() {
        let model = jump_diffusion();
        let cfg = SimConfig::new(20_000, 1e-3, SimConfig::default_horizon(&model), 13);
        let x = 0.5;
        let s = simulate_deficit(&model, x, 1.0, &cfg).unwrap();
        let law = fluctuation::deficit_law(&model, x).unwrap();
        assert!(within(&s.creeping, law.atom_at_zero, 4.0), "{:?} vs {}", s.creeping, law.atom_at_zero);
        let f = fluctuation::deficit_laplace(&model, 1.0, x).unwrap();
        assert!(within(&s.laplace, f, 4.0), "{:?} vs {f}", s.laplace);
    }

    #[test]
    fn parisian_clocks_and_occupation_agree() {
        let model = exp_claims();
        let cfg = SimConfig::new(40_000, 1e-2, SimConfig::default_horizon(&model), 14);
        let ds = [0.5, 1.0, 2.0];
        let est = simulate_parisian_multi(&model, &ds, &cfg).unwrap();
        for (i, d) in ds.iter().enumerate() {
            let f = occupation::parisian_ruin(&model, *d, 0.0).unwrap();
            assert!(within(&est.clocks[i], f, 4.0), "d {d}: {:?} vs {f}", est.clocks[i]);
            assert!(within(&est.occupation[i], f, 4.0));
            let spread = (est.clocks[i].std_error.powi(2) + est.occupation[i].std_error.powi(2)).sqrt();
            assert!((est.clocks[i].mean - est.occupation[i].mean).abs() < 4.0 * spread);
        }
        let tiny = simulate_parisian(&model, 1e-6, &cfg).unwrap();
        assert!(tiny.mean < 1e-3);
    }

    #[test]
    fn compensated_sum_is_exact_on_hard_input() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(xs.iter().copied()), 2.0);
    }

    #[test]
    fn ks_of_exact_quantiles_is_small() {
        let n = 1000;
        let s: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        assert!(ks_distance(&s, |u| u) <= 0.5 / n as f64 + 1e-12);
    }
}
