use ibreg_core::binary::MuD;
use ibreg_core::gaussian::Encoder;
use ibreg_core::search::{CurvePoint, MuIntSearch, RegionCurve};

use crate::config::{CurveRequest, ModelConfig, Quantity};
use crate::error::{CliError, CliResult};

/// A computed curve: the serializable record and the `(x, y)` columns of
/// its CSV form, where `x` is the swept variable.
pub struct Computed {
    pub curve: RegionCurve,
    pub xy: Vec<(f64, f64)>,
}

pub fn run(req: &CurveRequest) -> CliResult<Computed> {
    req.validate()?;
    let grid = req.grid.points();
    let p = req.params;
    let mut level = None;
    // (x, y) in sweep order, and whether `x` is the rate of the stored curve.
    let (xy, x_is_rate): (Vec<(f64, f64)>, bool) = match (&req.model, req.quantity) {
        (ModelConfig::Binary(m), Quantity::MuEd) => (sweep(&grid, |r| m.mu_ed(r))?, true),
        (ModelConfig::Binary(m), Quantity::MuD) => {
            let f = MuD::new(*m);
            (sweep(&grid, |r| f.eval(r))?, true)
        }
        (ModelConfig::Binary(m), Quantity::MuInt) => {
            let mut search = MuIntSearch::new(*m);
            if let Some(r1) = p.r1 {
                search = search.r1(r1);
            }
            let budget = usize::try_from(req.budget.expect("validated")).map_err(|_| CliError::Config("budget too large".into()))?;
            let res = search.run(budget, req.seed.expect("validated"))?;
            (res.sample(&grid)?.into_iter().map(|e| (e.x, e.y)).collect(), true)
        }
        (ModelConfig::GaussianTwcib(m), Quantity::TwcibRate) => {
            let which = p.encoder.unwrap_or(Encoder::One);
            (sweep(&grid, |mu| m.rate_for_relevance(which, mu))?, false)
        }
        (ModelConfig::GaussianCdibX1x2y(m), Quantity::CdibMuSurface) => match (p.r2, p.level) {
            (Some(r2), _) => {
                level = Some(r2);
                (sweep(&grid, |r1| m.mu(r1, r2))?, true)
            }
            (None, Some(mu)) => {
                level = Some(mu);
                (sweep(&grid, |r1| m.r2(r1, mu))?, true)
            }
            (None, None) => unreachable!("validated"),
        },
        (ModelConfig::GaussianCdibX1yx2(m), Quantity::OuterFrontier) => {
            let r2 = p.r2.expect("validated");
            level = Some(r2);
            (sweep(&grid, |r1| m.outer_frontier(r1, r2))?, true)
        }
        (ModelConfig::GaussianCdibX1yx2(m), Quantity::InnerBound) => {
            let r2 = p.r2.expect("validated");
            level = Some(r2);
            (sweep(&grid, |r1| m.inner_bound(r1, r2).map(|b| b.mu))?, true)
        }
        _ => unreachable!("validated"),
    };
    let points = xy.iter().map(|&(x, y)| if x_is_rate { CurvePoint { r: x, mu: y } } else { CurvePoint { r: y, mu: x } }).collect();
    let mut curve = RegionCurve::new(req.model.to_json(), method(req), req.seed, points);
    curve.budget = req.budget;
    curve.level = level;
    Ok(Computed { curve, xy })
}

/// Quantity name, qualified by the parameters that change its meaning.
fn method(req: &CurveRequest) -> String {
    let q = req.quantity;
    let p = req.params;
    match q {
        Quantity::TwcibRate => match p.encoder.unwrap_or(Encoder::One) {
            Encoder::One => "twcib_rate:R1(mu2)".into(),
            Encoder::Two => "twcib_rate:R2(mu1)".into(),
        },
        Quantity::CdibMuSurface if p.level.is_some() => "cdib_mu_surface:R2(R1)|mu".into(),
        Quantity::CdibMuSurface => "cdib_mu_surface:mu(R1)|R2".into(),
        Quantity::OuterFrontier | Quantity::InnerBound => format!("{q}:mu(R1)|R2"),
        Quantity::MuInt => match p.r1 {
            Some(r1) => format!("mu_int:r1={r1}"),
            None => "mu_int".into(),
        },
        _ => q.name().into(),
    }
}

fn sweep(grid: &[f64], f: impl Fn(f64) -> ibreg_core::Result<f64>) -> CliResult<Vec<(f64, f64)>> {
    grid.iter().map(|&x| Ok((x, f(x)?))).collect()
}
