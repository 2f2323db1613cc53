//! `occtime`: evaluate scale-function and occupation-time formulas for a
//! model read from JSON, tabulate them over a grid, or check them against
//! the Monte Carlo oracle.
//!
//! Exit codes: 0 success, 2 usage or config error, 3 domain, hypothesis or
//! oracle-scope violation, 4 verification failure, 1 numerical failure.

pub mod output;
pub mod quantity;
pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use occupation_core::{Error, LevyModel, ModelConfig};

use quantity::{Point, Quantity};
use verify::{SimFlags, Target, TargetArgs};

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn scope(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidModel(_) => EXIT_USAGE,
            // configuration flags are checked before any simulation runs, so
            // what is left is the model falling outside the oracle's scope
            Error::Domain(_) | Error::Hypothesis(_) | Error::SimConfig(_) => EXIT_DOMAIN,
            Error::Convergence(_) | Error::Quadrature(_) | Error::Backend(_) => EXIT_FAILURE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "occtime", version, about = "Occupation times of spectrally negative Lévy processes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity at one point and print a JSON record.
    Eval {
        #[arg(long)]
        config: PathBuf,
        quantity: Quantity,
        #[command(flatten)]
        point: Point,
    },
    /// Tabulate a quantity along one input and write CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        quantity: Quantity,
        #[arg(long, value_enum)]
        axis: Axis,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        point: Point,
    },
    /// Compare a formula with the Monte Carlo oracle and print a JSON report.
    Verify {
        #[arg(long)]
        config: PathBuf,
        target: Target,
        #[command(flatten)]
        sim: SimFlags,
        #[command(flatten)]
        args: TargetArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Lambda,
    X,
    B,
    D,
    Q,
}

impl Axis {
    fn name(self) -> &'static str {
        match self {
            Axis::Lambda => "lambda",
            Axis::X => "x",
            Axis::B => "b",
            Axis::D => "d",
            Axis::Q => "q",
        }
    }
}

pub fn load_model(path: &Path) -> Result<LevyModel, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let config = ModelConfig::from_json(&text)?;
    Ok(config.to_model()?)
}

/// Evenly spaced grid with exact endpoints.
pub fn grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(CliError::usage(format!("a sweep needs at least 2 points, got {points}")));
    }
    if !(from.is_finite() && to.is_finite()) || from == to {
        return Err(CliError::usage(format!(
            "a sweep needs a finite range with distinct ends, got [{from}, {to}]"
        )));
    }
    let n = points - 1;
    Ok((0..=n)
        .map(|i| if i == n { to } else { from + (to - from) * i as f64 / n as f64 })
        .collect())
}

fn eval(config: &Path, quantity: Quantity, point: &Point) -> Result<String, CliError> {
    let model = load_model(config)?;
    let inputs = quantity.resolve(point)?;
    let (value, backend) = quantity.evaluate(&model, point)?;
    Ok(output::eval_record(quantity.name(), &inputs, value, backend))
}

pub fn sweep_csv(model: &LevyModel, quantity: Quantity, axis: Axis, values: &[f64], point: &Point) -> Result<String, CliError> {
    if !quantity.inputs().iter().any(|(name, _)| *name == axis.name()) {
        return Err(CliError::usage(format!(
            "{} is not an input of {}",
            axis.name(),
            quantity.name()
        )));
    }
    let mut csv = String::from("axis,value,backend\n");
    let mut p = point.clone();
    for &v in values {
        p.set(axis.name(), v);
        let (value, backend) = quantity.evaluate(model, &p)?;
        writeln!(csv, "{},{},{}", output::format_number(v), output::format_number(value), backend)
            .expect("writing to a string");
    }
    Ok(csv)
}

fn dispatch(cli: Cli) -> Result<(String, i32), CliError> {
    match cli.command {
        Command::Eval { config, quantity, point } => Ok((eval(&config, quantity, &point)?, 0)),
        Command::Sweep {
            config,
            quantity,
            axis,
            from,
            to,
            points,
            out,
            point,
        } => {
            let model = load_model(&config)?;
            let values = grid(from, to, points)?;
            let csv = sweep_csv(&model, quantity, axis, &values, &point)?;
            std::fs::write(&out, csv)
                .map_err(|e| CliError::usage(format!("cannot write {}: {e}", out.display())))?;
            Ok((String::new(), 0))
        }
        Command::Verify { config, target, sim, args } => {
            let model = load_model(&config)?;
            let report = verify::run(&model, target, &args, &sim)?;
            let text = output::verify_record(
                report.formula,
                report.estimate.mean,
                report.estimate.std_error,
                report.z_score,
                report.pass,
                report.estimate.bias_note,
            );
            Ok((text, if report.pass { 0 } else { EXIT_VERIFY }))
        }
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok((text, code)) => {
            if !text.is_empty() {
                println!("{text}");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
