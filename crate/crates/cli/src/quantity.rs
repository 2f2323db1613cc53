//! Formula quantities reachable from `eval` and `sweep`.

use clap::{Args, ValueEnum};
use occupation_core::{fluctuation, make_evaluator, occupation, LevyModel};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    #[value(name = "psi")]
    Psi,
    #[value(name = "phi")]
    Phi,
    #[value(name = "W")]
    W,
    #[value(name = "Z")]
    Z,
    #[value(name = "Wprime")]
    WPrime,
    #[value(name = "ruin")]
    Ruin,
    #[value(name = "deficit_laplace")]
    DeficitLaplace,
    #[value(name = "occ_total")]
    OccTotal,
    #[value(name = "occ_from_x")]
    OccFromX,
    #[value(name = "occ_barrier")]
    OccBarrier,
    #[value(name = "parisian")]
    Parisian,
}

/// Point arguments; which ones a quantity reads is given by [`Quantity::inputs`].
#[derive(Debug, Clone, Default, Args)]
pub struct Point {
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
}

impl Point {
    pub fn get(&self, name: &str) -> Option<f64> {
        match name {
            "theta" => self.theta,
            "q" => self.q,
            "lambda" => self.lambda,
            "x" => self.x,
            "b" => self.b,
            "d" => self.d,
            "r" => self.r,
            _ => None,
        }
    }

    pub fn set(&mut self, name: &str, v: f64) {
        let slot = match name {
            "theta" => &mut self.theta,
            "q" => &mut self.q,
            "lambda" => &mut self.lambda,
            "x" => &mut self.x,
            "b" => &mut self.b,
            "d" => &mut self.d,
            "r" => &mut self.r,
            _ => return,
        };
        *slot = Some(v);
    }
}

/// A point argument with its default, `None` when it is required.
type Input = (&'static str, Option<f64>);

const LAPLACE_EXPONENT: &str = "laplace_exponent";

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Psi => "psi",
            Quantity::Phi => "phi",
            Quantity::W => "W",
            Quantity::Z => "Z",
            Quantity::WPrime => "Wprime",
            Quantity::Ruin => "ruin",
            Quantity::DeficitLaplace => "deficit_laplace",
            Quantity::OccTotal => "occ_total",
            Quantity::OccFromX => "occ_from_x",
            Quantity::OccBarrier => "occ_barrier",
            Quantity::Parisian => "parisian",
        }
    }

    pub fn inputs(self) -> &'static [Input] {
        match self {
            Quantity::Psi => &[("theta", None)],
            Quantity::Phi => &[("q", None)],
            Quantity::W | Quantity::Z | Quantity::WPrime => &[("q", Some(0.0)), ("x", None)],
            Quantity::Ruin => &[("x", None)],
            Quantity::DeficitLaplace => &[("r", None), ("x", None)],
            Quantity::OccTotal => &[("lambda", None)],
            Quantity::OccFromX => &[("lambda", None), ("x", None)],
            Quantity::OccBarrier => &[("lambda", None), ("b", None)],
            Quantity::Parisian => &[("d", None), ("x", Some(0.0))],
        }
    }

    /// Resolves the inputs of `self` from `point`, in declaration order.
    pub fn resolve(self, point: &Point) -> Result<Vec<(&'static str, f64)>, CliError> {
        self.inputs()
            .iter()
            .map(|&(name, default)| {
                point
                    .get(name)
                    .or(default)
                    .map(|v| (name, v))
                    .ok_or_else(|| CliError::usage(format!("quantity {} needs --{name}", self.name())))
            })
            .collect()
    }

    /// Value and the name of the algorithm that produced it.
    pub fn evaluate(self, model: &LevyModel, point: &Point) -> Result<(f64, &'static str), CliError> {
        let args = self.resolve(point)?;
        let arg = |name: &str| args.iter().find(|(k, _)| *k == name).map(|&(_, v)| v).unwrap();
        let scale_backend = |q: f64| -> Result<&'static str, CliError> {
            Ok(make_evaluator(model, q)?.backend_kind().as_str())
        };
        let out = match self {
            Quantity::Psi => (model.psi(arg("theta"))?, LAPLACE_EXPONENT),
            Quantity::Phi => (model.phi(arg("q"))?, LAPLACE_EXPONENT),
            Quantity::W | Quantity::Z | Quantity::WPrime => {
                let ev = make_evaluator(model, arg("q"))?;
                let x = arg("x");
                let v = match self {
                    Quantity::W => ev.w(x),
                    Quantity::Z => ev.z(x),
                    _ => ev.w_prime(x),
                };
                (v, ev.backend_kind().as_str())
            }
            Quantity::Ruin => {
                let v = fluctuation::ruin_probability(model, arg("x"))?;
                let backend = if model.is_pure_drift() {
                    LAPLACE_EXPONENT
                } else {
                    scale_backend(0.0)?
                };
                (v, backend)
            }
            Quantity::DeficitLaplace => {
                let v = fluctuation::deficit_laplace(model, arg("r"), arg("x"))?;
                (v, scale_backend(0.0)?)
            }
            Quantity::OccTotal => (occupation::occupation_total_lt(model, arg("lambda"))?, LAPLACE_EXPONENT),
            Quantity::OccFromX => {
                let v = occupation::occupation_total_lt_from(model, arg("lambda"), arg("x"))?;
                (v, scale_backend(0.0)?)
            }
            Quantity::OccBarrier => {
                let lambda = arg("lambda");
                let v = occupation::occupation_until_passage_lt(model, lambda, arg("b"))?;
                let backend = if lambda == 0.0 {
                    LAPLACE_EXPONENT
                } else {
                    scale_backend(lambda)?
                };
                (v, backend)
            }
            Quantity::Parisian => {
                let x = arg("x");
                let v = occupation::parisian_ruin(model, arg("d"), x)?;
                let backend = if x == 0.0 {
                    LAPLACE_EXPONENT
                } else {
                    scale_backend(0.0)?
                };
                (v, backend)
            }
        };
        Ok(out)
    }
}
