use std::fmt;
use std::path::Path;
use std::str::FromStr;

use ibreg_core::binary::BinaryModel;
use ibreg_core::gaussian::{CdibX1X2Y, CdibX1YX2, Encoder, GaussianTwcibModel};
use ibreg_core::info::JointPmf;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// A model file: `kind` plus the parameters of that kind, validated by the
/// core constructors while parsing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelConfig {
    Binary(BinaryModel<f64>),
    GaussianTwcib(GaussianTwcibModel<f64>),
    GaussianCdibX1x2y(CdibX1X2Y<f64>),
    GaussianCdibX1yx2(CdibX1YX2<f64>),
    Discrete { pmf: JointPmf<f64> },
}

impl ModelConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelConfig::Binary(_) => "binary",
            ModelConfig::GaussianTwcib(_) => "gaussian-twcib",
            ModelConfig::GaussianCdibX1x2y(_) => "gaussian-cdib-x1x2y",
            ModelConfig::GaussianCdibX1yx2(_) => "gaussian-cdib-x1yx2",
            ModelConfig::Discrete { .. } => "discrete",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("model serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[clap(rename_all = "snake_case")]
pub enum Quantity {
    MuEd,
    MuD,
    MuInt,
    TwcibRate,
    CdibMuSurface,
    OuterFrontier,
    InnerBound,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::MuEd => "mu_ed",
            Quantity::MuD => "mu_d",
            Quantity::MuInt => "mu_int",
            Quantity::TwcibRate => "twcib_rate",
            Quantity::CdibMuSurface => "cdib_mu_surface",
            Quantity::OuterFrontier => "outer_frontier",
            Quantity::InnerBound => "inner_bound",
        }
    }

    pub fn is_stochastic(self) -> bool {
        self == Quantity::MuInt
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `min:max:n` sweep of the curve's free variable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, n: usize) -> CliResult<Self> {
        if n < 2 {
            return Err(CliError::Config(format!("grid needs n >= 2, got {n}")));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(CliError::Config(format!("grid needs finite min < max, got {min}:{max}")));
        }
        Ok(Self { min, max, n })
    }

    /// Evenly spaced points with both ends exact.
    pub fn points(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.n - 1) as f64;
        (0..self.n).map(|i| if i + 1 == self.n { self.max } else { self.min + step * i as f64 }).collect()
    }
}

impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let bad = || CliError::Config(format!("grid `{s}` is not of the form min:max:n"));
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else { return Err(bad()) };
        Grid::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?)
    }
}

/// Quantity-specific knobs. `r2` fixes the second rate of a Gaussian
/// distributed curve, `level` fixes the relevance of an `(R1, R2)`
/// trade-off, `encoder` picks the link of a two-way rate curve and `r1` the
/// first description rate of the interactive search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encoder: Option<Encoder>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r1: Option<f64>,
}

impl Params {
    /// Fields of `other` override those of `self`.
    pub fn merged(self, other: Params) -> Params {
        Params {
            r2: other.r2.or(self.r2),
            level: other.level.or(self.level),
            encoder: other.encoder.or(self.encoder),
            r1: other.r1.or(self.r1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRequest {
    pub model: ModelConfig,
    pub quantity: Quantity,
    pub grid: Grid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default)]
    pub params: Params,
}

impl CurveRequest {
    pub fn validate(&self) -> CliResult<()> {
        Grid::new(self.grid.min, self.grid.max, self.grid.n)?;
        let q = self.quantity;
        let stochastic = self.seed.is_some() || self.budget.is_some();
        if q.is_stochastic() && (self.seed.is_none() || self.budget.is_none()) {
            return Err(CliError::Config(format!("{q} needs both --seed and --budget")));
        }
        if !q.is_stochastic() && stochastic {
            return Err(CliError::Config(format!("{q} is deterministic; drop --seed and --budget")));
        }
        if self.budget == Some(0) {
            return Err(CliError::Config("budget must be positive".into()));
        }
        let kind = self.model.kind();
        let fits = matches!(
            (&self.model, q),
            (ModelConfig::Binary(_), Quantity::MuEd | Quantity::MuD | Quantity::MuInt)
                | (ModelConfig::GaussianTwcib(_), Quantity::TwcibRate)
                | (ModelConfig::GaussianCdibX1x2y(_), Quantity::CdibMuSurface)
                | (ModelConfig::GaussianCdibX1yx2(_), Quantity::OuterFrontier | Quantity::InnerBound)
        );
        if !fits {
            return Err(CliError::Config(format!("quantity {q} is not defined for model kind {kind}")));
        }
        let p = &self.params;
        let unused = |name: &str| CliError::Config(format!("parameter `{name}` does not apply to {q}"));
        match q {
            Quantity::CdibMuSurface => match (p.r2, p.level) {
                (Some(_), Some(_)) => return Err(CliError::Config("cdib_mu_surface takes either `r2` or `level`, not both".into())),
                (None, None) => return Err(CliError::Config("cdib_mu_surface needs `r2` (relevance curve) or `level` (rate trade-off)".into())),
                _ => {}
            },
            Quantity::OuterFrontier | Quantity::InnerBound if p.r2.is_none() => {
                return Err(CliError::Config(format!("{q} needs the fixed second rate `r2`")));
            }
            _ => {}
        }
        if p.r2.is_some() && !matches!(q, Quantity::CdibMuSurface | Quantity::OuterFrontier | Quantity::InnerBound) {
            return Err(unused("r2"));
        }
        if p.level.is_some() && q != Quantity::CdibMuSurface {
            return Err(unused("level"));
        }
        if p.encoder.is_some() && q != Quantity::TwcibRate {
            return Err(unused("encoder"));
        }
        if p.r1.is_some() && q != Quantity::MuInt {
            return Err(unused("r1"));
        }
        Ok(())
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.display().to_string(), source })
}

/// A model file may hold a bare model or a full request; returns the model
/// and, for the latter, the rest of the request.
pub fn read_model_or_request(path: &Path) -> CliResult<(ModelConfig, Option<CurveRequest>)> {
    let value: serde_json::Value = read_json(path)?;
    let json_err = |source| CliError::Json { path: path.display().to_string(), source };
    if value.get("model").is_some() {
        let req: CurveRequest = serde_json::from_value(value).map_err(json_err)?;
        Ok((req.model.clone(), Some(req)))
    } else {
        Ok((serde_json::from_value(value).map_err(json_err)?, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: Grid = "0:0.5:3".parse().unwrap();
        assert_eq!(g.points(), vec![0.0, 0.25, 0.5]);
        for bad in ["0:1", "1:0:4", "0:1:1", "a:1:3", "0:1:2:3"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }

    #[test]
    fn model_kinds_parse_and_validate() {
        let m: ModelConfig = serde_json::from_str(r#"{"kind":"binary","p":0.1,"q":0.1}"#).unwrap();
        assert_eq!(m.kind(), "binary");
        assert!(serde_json::from_str::<ModelConfig>(r#"{"kind":"binary","p":0.6,"q":0.1}"#).is_err());
        let m: ModelConfig = serde_json::from_str(r#"{"kind":"gaussian-cdib-x1yx2","rho_x1y":0.8,"rho_x2y":0.6}"#).unwrap();
        assert_eq!(m.kind(), "gaussian-cdib-x1yx2");
        let d = r#"{"kind":"discrete","pmf":{"axes":[{"name":"X","card":2}],"table":[0.5,0.5]}}"#;
        assert_eq!(serde_json::from_str::<ModelConfig>(d).unwrap().kind(), "discrete");
        assert!(serde_json::from_str::<ModelConfig>(r#"{"kind":"ternary"}"#).is_err());
    }

    #[test]
    fn request_rules() {
        let model: ModelConfig = serde_json::from_str(r#"{"kind":"binary","p":0.1,"q":0.1}"#).unwrap();
        let base = CurveRequest { model, quantity: Quantity::MuD, grid: Grid::new(0.0, 0.4, 5).unwrap(), seed: None, budget: None, params: Params::default() };
        assert!(base.validate().is_ok());
        assert!(CurveRequest { seed: Some(1), ..base.clone() }.validate().is_err());
        assert!(CurveRequest { quantity: Quantity::MuInt, ..base.clone() }.validate().is_err());
        assert!(CurveRequest { quantity: Quantity::MuInt, seed: Some(1), budget: Some(10), ..base.clone() }.validate().is_ok());
        assert!(CurveRequest { quantity: Quantity::TwcibRate, ..base.clone() }.validate().is_err());
        let p = Params { level: Some(0.1), ..Params::default() };
        assert!(CurveRequest { params: p, ..base }.validate().is_err());
    }
}
