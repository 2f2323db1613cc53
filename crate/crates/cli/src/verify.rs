//! `verify`: a closed-form value against the Monte Carlo oracle.

use clap::{Args, ValueEnum};
use occupation_core::{fluctuation, mc_oracle, occupation, LevyModel, McEstimate, SimConfig};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Total occupation from zero.
    Thm1,
    /// Occupation until the first passage below `-b`.
    Thm2,
    /// Total occupation from `x`.
    Cor1,
    Parisian,
    Ruin,
    /// Laplace transform of the position at ruin.
    Deficit,
}

#[derive(Debug, Clone, Args)]
pub struct SimFlags {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub paths: usize,
    /// Leaf length of the Brownian refinement.
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Simulation horizon; defaults to `200 / psi'(0+)`.
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Turn off the Brownian-bridge crossing correction.
    #[arg(long)]
    pub no_bridge: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TargetArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct Report {
    pub formula: f64,
    pub estimate: McEstimate,
    pub z_score: f64,
    pub pass: bool,
}

pub fn sim_config(model: &LevyModel, flags: &SimFlags) -> Result<SimConfig, CliError> {
    let horizon = flags.horizon.unwrap_or_else(|| SimConfig::default_horizon(model));
    let cfg = SimConfig::new(flags.paths, flags.dt, horizon, flags.seed)
        .with_bridge_correction(!flags.no_bridge);
    cfg.validate().map_err(|e| CliError::usage(e.to_string()))?;
    Ok(cfg)
}

pub fn run(model: &LevyModel, target: Target, args: &TargetArgs, flags: &SimFlags) -> Result<Report, CliError> {
    let cfg = sim_config(model, flags)?;
    if target == Target::Parisian && model.sigma() > 0.0 {
        return Err(CliError::scope(
            "parisian verification requires a bounded-variation model (sigma = 0): \
             excursions below zero are listed exactly only for paths of bounded variation",
        ));
    }
    let (formula, estimate) = match target {
        Target::Thm1 => (
            occupation::occupation_total_lt(model, args.lambda)?,
            mc_oracle::simulate_occupation(model, args.lambda, &cfg)?,
        ),
        Target::Thm2 => {
            let formula = occupation::occupation_until_passage_lt(model, args.lambda, args.b)?;
            let cfg = cfg.with_barrier(args.b);
            (formula, mc_oracle::simulate_occupation(model, args.lambda, &cfg)?)
        }
        Target::Cor1 => (
            occupation::occupation_total_lt_from(model, args.lambda, args.x)?,
            mc_oracle::simulate_occupation_from(model, &[args.lambda], args.x, &cfg)?[0],
        ),
        Target::Parisian => (
            occupation::parisian_ruin(model, args.d, 0.0)?,
            mc_oracle::simulate_parisian(model, args.d, &cfg)?,
        ),
        Target::Ruin => (
            fluctuation::ruin_probability(model, args.x)?,
            mc_oracle::simulate_ruin(model, args.x, &cfg)?,
        ),
        Target::Deficit => (
            fluctuation::deficit_laplace(model, args.r, args.x)?,
            mc_oracle::simulate_deficit(model, args.x, args.r, &cfg)?.laplace,
        ),
    };
    let z_score = estimate.z_score(formula);
    Ok(Report {
        formula,
        estimate,
        z_score,
        pass: z_score.abs() <= 3.0,
    })
}
