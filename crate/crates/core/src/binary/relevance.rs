//! Relevance-rate functions of the binary half-round problem.

use serde::{Deserialize, Serialize};

use super::BinaryModel;
use crate::error::{Error, Result};
use crate::info::{h2_inv_raw, h2_raw, star_raw};
use crate::optim::{bisect, golden_max, golden_min};
use crate::scalar::Real;

const SCAN_POINTS: usize = 2048;
const SCAN_EDGE: f64 = 1e-6;
/// Below this value of `g` the ratio `f/g` is dominated by cancellation error.
const RELIABLE_G: f64 = 1e-7;
const ROOT_ITERS: usize = 100;

const DUAL_GRID: usize = 4096;
const DUAL_ALPHA_TOL: f64 = 1e-8;

/// Tangency point of the line through the origin and the curve
/// `r -> (g(r), f(r))`: below `rate` the optimal scheme time-shares.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint<T> {
    pub r_c: T,
    #[serde(rename = "R_c")]
    pub rate: T,
    pub alpha_star: T,
}

fn check_rate<T: Real>(rate: T) -> Result<()> {
    if rate >= T::zero() && rate.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("rate", rate.to_f64_lossy(), "[0, inf)"))
    }
}

impl<T: Real> BinaryModel<T> {
    /// `1 - h2(p*q)`: relevance from the side information alone.
    pub fn base_relevance(&self) -> T {
        T::one() - h2_raw(star_raw(self.p, self.q))
    }

    /// `1 - h2(p)`: relevance when `X1` is fully described.
    pub fn full_relevance(&self) -> T {
        T::one() - h2_raw(self.p)
    }

    /// `h2(q) = H(X1|X2)`, the rate beyond which nothing is gained.
    pub fn max_rate(&self) -> T {
        h2_raw(self.q)
    }

    fn tangency_residual(&self, r: T) -> T {
        self.f_prime_raw(r) * self.g_raw(r) - self.f_raw(r) * self.g_prime_raw(r)
    }

    /// Solves `f'(r)/g'(r) = f(r)/g(r)` for the interior maximizer of `f/g`.
    ///
    /// Fails with a solver error when `f/g` is largest as `r -> 1/2`; the
    /// relevance-rate curve then has no time-sharing segment.
    pub fn critical_point(&self) -> Result<CriticalPoint<T>> {
        let lo = T::c(SCAN_EDGE);
        let hi = T::c(0.5 - SCAN_EDGE);
        let step = (hi - lo) / T::c((SCAN_POINTS - 1) as f64);
        let reliable = T::tolerance(RELIABLE_G);
        let grid: Vec<T> = (0..SCAN_POINTS)
            .map(|i| lo + step * T::c(i as f64))
            .take_while(|&r| self.g_raw(r) >= reliable)
            .collect();
        if grid.len() < 3 {
            return Err(Error::Solver("critical point scan grid is empty".into()));
        }
        let ratio = |r: T| self.f_raw(r) / self.g_raw(r);
        let mut best: Option<(T, T)> = None;
        let mut brackets = 0usize;
        let mut prev = self.tangency_residual(grid[0]);
        for w in grid.windows(2) {
            let next = self.tangency_residual(w[1]);
            if prev > T::zero() && next <= T::zero() {
                brackets += 1;
                let r = bisect(|r| self.tangency_residual(r), w[0], w[1], ROOT_ITERS);
                let v = ratio(r);
                if best.is_none_or(|(_, b)| v > b) {
                    best = Some((r, v));
                }
            }
            prev = next;
        }
        let edge = *grid.last().expect("nonempty grid");
        let edge_ratio = ratio(edge);
        match best {
            Some((r_c, alpha_star)) if alpha_star > edge_ratio => {
                Ok(CriticalPoint { r_c, rate: self.g_raw(r_c), alpha_star })
            }
            _ => Err(Error::Solver(format!(
                "f/g has no interior maximum on [{}, {}]: {brackets} sign change(s) of f'g - fg', \
                 ratio at the scan edge {edge_ratio}",
                lo, edge
            ))),
        }
    }

    /// Relevance-rate function with side information at both encoder and
    /// decoder: `1 - h2(h2_inv([h2(q) - R]^+) * p)`.
    pub fn mu_ed(&self, rate: T) -> Result<T> {
        check_rate(rate)?;
        let residual = (self.max_rate() - rate).max(T::zero());
        Ok(T::one() - h2_raw(star_raw(h2_inv_raw(residual), self.p)))
    }

    /// Relevance-rate function with side information only at the decoder.
    /// Builds the critical point on every call; use [`MuD`] for sweeps.
    pub fn mu_d(&self, rate: T) -> Result<T> {
        MuD::new(*self).eval(rate)
    }

    /// Independent evaluation of `mu_d` through the min-max dual. Builds the
    /// oracle grid on every call; use [`DualOracle`] for sweeps.
    pub fn mu_d_dual(&self, rate: T) -> Result<T> {
        DualOracle::new(*self).eval(rate)
    }

    /// Brute-force time-sharing of two BSC descriptions on a `grid_n`-point
    /// grid of crossovers. A lower bound on `mu_d` by construction.
    pub fn mu_d_timeshare_oracle(&self, rate: T, grid_n: usize) -> Result<T> {
        if grid_n < 64 {
            return Err(Error::Argument(format!("timeshare grid needs >= 64 points, got {grid_n}")));
        }
        let top = self.max_rate();
        if !(rate >= T::zero() && rate <= top) {
            return Err(Error::domain("rate", rate.to_f64_lossy(), format!("[0, {top}]")));
        }
        let step = T::c(0.5) / T::c((grid_n - 1) as f64);
        let pts: Vec<(T, T)> = (0..grid_n)
            .map(|i| {
                let r = if i == grid_n - 1 { T::c(0.5) } else { step * T::c(i as f64) };
                (self.g_raw(r), self.f_raw(r))
            })
            .collect();
        let mut best = T::neg_infinity();
        for &(g1, f1) in &pts {
            if g1 < rate {
                continue;
            }
            for &(g2, f2) in &pts {
                if g2 > rate {
                    continue;
                }
                let v = if g1 == g2 {
                    f1.max(f2)
                } else {
                    let lambda = (rate - g2) / (g1 - g2);
                    lambda * f1 + (T::one() - lambda) * f2
                };
                best = best.max(v);
            }
        }
        Ok(self.base_relevance() + best)
    }
}

/// `mu_d` with the critical point solved once.
#[derive(Clone, Copy, Debug)]
pub struct MuD<T> {
    model: BinaryModel<T>,
    critical: Option<CriticalPoint<T>>,
}

impl<T: Real> MuD<T> {
    pub fn new(model: BinaryModel<T>) -> Self {
        Self { model, critical: model.critical_point().ok() }
    }

    pub fn model(&self) -> &BinaryModel<T> {
        &self.model
    }

    /// `None` when the curve has no time-sharing segment.
    pub fn critical(&self) -> Option<&CriticalPoint<T>> {
        self.critical.as_ref()
    }

    /// Critical rate, zero when there is no time-sharing segment.
    pub fn critical_rate(&self) -> T {
        self.critical.map_or(T::zero(), |c| c.rate)
    }

    pub fn eval(&self, rate: T) -> Result<T> {
        check_rate(rate)?;
        let m = &self.model;
        if rate > m.max_rate() {
            return Ok(m.full_relevance());
        }
        if let Some(c) = self.critical.filter(|c| rate <= c.rate) {
            return Ok(m.base_relevance() + c.alpha_star * rate);
        }
        if rate == T::zero() {
            return Ok(m.base_relevance());
        }
        Ok(m.base_relevance() + m.f_raw(m.g_inverse_raw(rate)))
    }
}

/// `1 - h2(p*q) + min_{α in [0,1]} max_{r in [0,1/2]} {f(r) + α(R - g(r))}`,
/// with `f` and `g` tabulated once on a uniform crossover grid.
#[derive(Clone, Debug)]
pub struct DualOracle<T> {
    model: BinaryModel<T>,
    r: Vec<T>,
    f: Vec<T>,
    g: Vec<T>,
}

impl<T: Real> DualOracle<T> {
    pub fn new(model: BinaryModel<T>) -> Self {
        let n = DUAL_GRID;
        let step = T::c(0.5) / T::c((n - 1) as f64);
        let r: Vec<T> = (0..n).map(|i| if i == n - 1 { T::c(0.5) } else { step * T::c(i as f64) }).collect();
        let f = r.iter().map(|&x| model.f_raw(x)).collect();
        let g = r.iter().map(|&x| model.g_raw(x)).collect();
        Self { model, r, f, g }
    }

    fn inner_max(&self, alpha: T, rate: T) -> T {
        let mut k = 0;
        let mut best = T::neg_infinity();
        for i in 0..self.r.len() {
            let v = self.f[i] + alpha * (rate - self.g[i]);
            if v > best {
                best = v;
                k = i;
            }
        }
        let lo = self.r[k.saturating_sub(1)];
        let hi = self.r[(k + 1).min(self.r.len() - 1)];
        let m = &self.model;
        let (_, refined) =
            golden_max(|x| m.f_raw(x) + alpha * (rate - m.g_raw(x)), lo, hi, T::epsilon().sqrt() * T::c(1e-2));
        best.max(refined)
    }

    pub fn eval(&self, rate: T) -> Result<T> {
        let top = self.model.max_rate();
        if !(rate >= T::zero() && rate <= top) {
            return Err(Error::domain("rate", rate.to_f64_lossy(), format!("[0, {top}]")));
        }
        let (_, psi) = golden_min(|a| self.inner_max(a, rate), T::zero(), T::one(), T::tolerance(DUAL_ALPHA_TOL));
        Ok(self.model.base_relevance() + psi)
    }
}
