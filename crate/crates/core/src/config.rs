//! JSON model description read by the command-line tool.
//!
//! ```json
//! {"gamma": 1.0, "sigma": 0.0,
//!  "jumps": {"rate": 1.0, "claim": {"type": "exp", "rate": 2.0}}}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levy_model::{ClaimDistribution, Jumps, LevyModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub gamma: f64,
    pub sigma: f64,
    #[serde(default)]
    pub jumps: Option<JumpsConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JumpsConfig {
    pub rate: f64,
    pub claim: ClaimConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum ClaimConfig {
    #[serde(rename = "exp")]
    Exponential { rate: f64 },
    #[serde(rename = "hyperexp")]
    HyperExponential { weights: Vec<f64>, rates: Vec<f64> },
    #[serde(rename = "erlang")]
    Erlang { shape: u32, rate: f64 },
}

impl ModelConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidModel(format!("config: {e}")))
    }

    pub fn to_model(&self) -> Result<LevyModel> {
        LevyModel::try_from(self)
    }
}

impl From<&ClaimConfig> for ClaimDistribution {
    fn from(c: &ClaimConfig) -> Self {
        match c {
            ClaimConfig::Exponential { rate } => ClaimDistribution::Exponential { rate: *rate },
            ClaimConfig::HyperExponential { weights, rates } => ClaimDistribution::HyperExponential {
                weights: weights.clone(),
                rates: rates.clone(),
            },
            ClaimConfig::Erlang { shape, rate } => ClaimDistribution::Erlang {
                shape: *shape,
                rate: *rate,
            },
        }
    }
}

impl TryFrom<&ModelConfig> for LevyModel {
    type Error = Error;

    fn try_from(c: &ModelConfig) -> Result<LevyModel> {
        let jumps = match &c.jumps {
            None => None,
            Some(j) => {
                let claim = ClaimDistribution::from(&j.claim);
                claim.validate()?;
                Some(Jumps { rate: j.rate, claim })
            }
        };
        LevyModel::new(c.gamma, c.sigma, jumps)
    }
}

impl From<&LevyModel> for ModelConfig {
    fn from(m: &LevyModel) -> Self {
        let jumps = m.jumps().map(|j| JumpsConfig {
            rate: j.rate,
            claim: match &j.claim {
                ClaimDistribution::Exponential { rate } => ClaimConfig::Exponential { rate: *rate },
                ClaimDistribution::HyperExponential { weights, rates } => {
                    ClaimConfig::HyperExponential {
                        weights: weights.clone(),
                        rates: rates.clone(),
                    }
                }
                ClaimDistribution::Erlang { shape, rate } => ClaimConfig::Erlang {
                    shape: *shape,
                    rate: *rate,
                },
            },
        });
        ModelConfig {
            gamma: m.gamma(),
            sigma: m.sigma(),
            jumps,
        }
    }
}
