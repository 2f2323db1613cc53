//! Scale functions, fluctuation identities and occupation-time Laplace
//! transforms for spectrally negative Lévy processes, with a Monte Carlo
//! path simulator used as an independent oracle.

// `!(x >= 0.0)` is used on purpose so that NaN arguments are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod fluctuation;
pub mod inversion;
pub mod levy_model;
pub mod mc_oracle;
pub mod occupation;
mod poly;
pub mod quadrature;
pub mod scale_fn;

pub use error::{Error, Result};
pub use levy_model::{ClaimDistribution, Jumps, LevyModel, PathRegularity};
pub use scale_fn::{make_evaluator, Backend, BackendKind, PoleTerm, ScaleEvaluator};
pub use config::{ClaimConfig, JumpsConfig, ModelConfig};
pub use fluctuation::DeficitLaw;
pub use mc_oracle::{BiasNote, DeficitSample, McEstimate, ParisianEstimates, SimConfig};
