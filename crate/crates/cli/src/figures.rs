use std::path::Path;

use ibreg_core::binary::{BinaryModel, MuD};
use ibreg_core::gaussian::{CdibX1X2Y, CdibX1YX2, Encoder};
use serde_json::{json, Value};

use crate::compute;
use crate::config::{CurveRequest, Grid, ModelConfig, Params, Quantity};
use crate::error::{CliError, CliResult};
use crate::output::{self, Format};

const FIG3_LEVELS: [f64; 6] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
const FIG4_R2: [f64; 3] = [0.25, 0.5, 1.0];
const GAUSS_R1_MAX: f64 = 3.0;

/// Key numbers of a model, printed by `validate`.
pub fn summary(model: &ModelConfig) -> CliResult<Value> {
    Ok(match model {
        ModelConfig::Binary(m) => {
            let d = MuD::new(*m);
            json!({
                "max_rate": m.max_rate(),
                "base_relevance": m.base_relevance(),
                "full_relevance": m.full_relevance(),
                "critical": d.critical(),
            })
        }
        ModelConfig::GaussianTwcib(m) => json!({
            "relevance_limit_1": m.relevance_limit(Encoder::One),
            "relevance_limit_2": m.relevance_limit(Encoder::Two),
        }),
        ModelConfig::GaussianCdibX1x2y(m) => json!({ "mu_limit": m.mu_limit(), "mu_x1": m.mu_x1() }),
        ModelConfig::GaussianCdibX1yx2(m) => json!({ "mu_limit": m.mu_limit(), "rho_x1x2": m.rho_x1x2() }),
        ModelConfig::Discrete { pmf } => {
            let mut h = serde_json::Map::new();
            for name in pmf.axis_names() {
                h.insert(name.to_string(), json!(pmf.entropy(&[name])?));
            }
            json!({ "axes": pmf.axes(), "entropy": h })
        }
    })
}

fn request(model: ModelConfig, quantity: Quantity, grid: Grid, params: Params) -> CurveRequest {
    CurveRequest { model, quantity, grid, seed: None, budget: None, params }
}

/// Writes every figure curve as `<name>.csv` plus sidecar under `dir`.
pub fn run(dir: &Path, seed: u64, budget: u64, points: usize) -> CliResult<()> {
    let n = points;
    let r1_grid = Grid::new(0.0, GAUSS_R1_MAX, n)?;
    let mut jobs: Vec<(String, CurveRequest)> = Vec::new();

    let fig3 = ModelConfig::GaussianCdibX1x2y(CdibX1X2Y::new(0.8, 0.8)?);
    for mu in FIG3_LEVELS {
        let p = Params { level: Some(mu), ..Params::default() };
        jobs.push((format!("fig3_mu{mu}"), request(fig3.clone(), Quantity::CdibMuSurface, r1_grid, p)));
    }

    let fig4 = ModelConfig::GaussianCdibX1yx2(CdibX1YX2::new(0.8, 0.6)?);
    for r2 in FIG4_R2 {
        let p = Params { r2: Some(r2), ..Params::default() };
        jobs.push((format!("fig4_outer_r2_{r2}"), request(fig4.clone(), Quantity::OuterFrontier, r1_grid, p)));
        jobs.push((format!("fig4_inner_r2_{r2}"), request(fig4.clone(), Quantity::InnerBound, r1_grid, p)));
    }

    let b = BinaryModel::new(0.1, 0.1)?;
    let fig6 = ModelConfig::Binary(b);
    let rate_grid = Grid::new(0.0, b.max_rate(), n)?;
    for q in [Quantity::MuD, Quantity::MuEd] {
        jobs.push((format!("fig6_{q}"), request(fig6.clone(), q, rate_grid, Params::default())));
    }
    let mut int = request(fig6, Quantity::MuInt, rate_grid, Params::default());
    int.seed = Some(seed);
    int.budget = Some(budget);
    jobs.push(("fig6_mu_int".into(), int));

    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    for (name, req) in &jobs {
        let c = compute::run(req)?;
        let path = dir.join(format!("{name}.csv"));
        output::emit(&c.curve, &c.xy, Some(&path), Format::Csv)?;
        println!("{}", path.display());
    }
    Ok(())
}
