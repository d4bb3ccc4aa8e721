//! Collaborative distributed models with a broadcast decoder learning `Y`.

use serde::{Deserialize, Serialize};

use super::linalg::inverse;
use super::twcib::{check_rho, check_var};
use super::vector::GaussianVector;
use crate::error::{Error, Result};
use crate::optim::grid_golden_max;
use crate::scalar::Real;

/// Stand-in for an unbounded rate: `2^-128` is far below every tolerance.
pub const RATE_CAP: f64 = 64.0;

const FRONTIER_GRID: usize = 24;
const INNER_GRID: usize = 96;
const OPT_TOL: f64 = 1e-11;

fn exp2m2<T: Real>(x: T) -> T {
    T::c(2.0).powf(-T::c(2.0) * x)
}

fn half_log2<T: Real>(x: T) -> T {
    T::c(0.5) * x.log2()
}

fn check_rate<T: Real>(what: &'static str, r: T) -> Result<()> {
    if r >= T::zero() && !r.is_nan() {
        Ok(())
    } else {
        Err(Error::domain(what, r.to_f64_lossy(), "[0, inf)"))
    }
}

/// `X1 - X2 - Y`: `Y = a X2 + Za`, `X2 = b X1 + Zb`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChain<T>", bound(deserialize = "T: Real"))]
pub struct CdibX1X2Y<T> {
    pub rho_x1x2: T,
    pub rho_x2y: T,
    /// Variances of `(X1, X2, Y)`.
    pub sigma_sq: [T; 3],
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
struct RawChain<T> {
    rho_x1x2: T,
    rho_x2y: T,
    #[serde(default = "unit_variances")]
    sigma_sq: [T; 3],
}

fn unit_variances<T: Real>() -> [T; 3] {
    [T::one(); 3]
}

impl<T: Real> TryFrom<RawChain<T>> for CdibX1X2Y<T> {
    type Error = Error;

    fn try_from(r: RawChain<T>) -> Result<Self> {
        Self::with_variances(r.rho_x1x2, r.rho_x2y, r.sigma_sq)
    }
}

fn check_cdib_rho<T: Real>(what: &'static str, r: T) -> Result<()> {
    check_rho(what, r)?;
    if r == T::zero() {
        return Err(Error::domain(what, 0.0, "0 < |rho| < 1"));
    }
    Ok(())
}

impl<T: Real> CdibX1X2Y<T> {
    pub fn new(rho_x1x2: T, rho_x2y: T) -> Result<Self> {
        Self::with_variances(rho_x1x2, rho_x2y, unit_variances())
    }

    pub fn with_variances(rho_x1x2: T, rho_x2y: T, sigma_sq: [T; 3]) -> Result<Self> {
        check_cdib_rho("rho_x1x2", rho_x1x2)?;
        check_cdib_rho("rho_x2y", rho_x2y)?;
        for v in sigma_sq {
            check_var(v)?;
        }
        Ok(Self { rho_x1x2, rho_x2y, sigma_sq })
    }

    fn s12(&self) -> T {
        self.rho_x1x2 * self.rho_x1x2
    }

    fn s2y(&self) -> T {
        self.rho_x2y * self.rho_x2y
    }

    /// Covariance of `(X1, X2, Y)`; `rho_x1y = rho_x1x2 rho_x2y`.
    pub fn vector(&self) -> Result<GaussianVector<T>> {
        let r13 = self.rho_x1x2 * self.rho_x2y;
        let one = T::one();
        let corr = vec![one, self.rho_x1x2, r13, self.rho_x1x2, one, self.rho_x2y, r13, self.rho_x2y, one];
        let sigma = self.sigma_sq.map(|v| v.sqrt());
        GaussianVector::from_correlation(vec!["X1".into(), "X2".into(), "Y".into()], &sigma, &corr)
    }

    /// `I(Y; X2)`, the relevance ceiling.
    pub fn mu_limit(&self) -> T {
        -half_log2(T::one() - self.s2y())
    }

    /// `I(Y; X1)`.
    pub fn mu_x1(&self) -> T {
        -half_log2(T::one() - self.s12() * self.s2y())
    }

    /// Largest relevance with rates `(R1, R2)`.
    pub fn mu(&self, r1: T, r2: T) -> Result<T> {
        check_rate("R1", r1)?;
        check_rate("R2", r2)?;
        let one = T::one();
        let (s12, s2) = (self.s12(), self.s2y());
        let d = one - s2 + s2 * exp2m2(r2) * (one - s12 + s12 * exp2m2(r1));
        Ok(-half_log2(d))
    }

    /// Smallest `R2` reaching relevance `mu` when encoder 1 uses `R1`.
    pub fn r2(&self, r1: T, mu: T) -> Result<T> {
        check_rate("R1", r1)?;
        let limit = self.mu_limit();
        if !(mu >= T::zero() && mu < limit) {
            return Err(Error::domain("relevance", mu.to_f64_lossy(), format!("[0, {limit})")));
        }
        let one = T::one();
        let (s12, s2) = (self.s12(), self.s2y());
        let num = s2 * s12 * exp2m2(r1) + s2 * (one - s12);
        let den = exp2m2(mu) - (one - s2);
        Ok(half_log2(num / den).max(T::zero()))
    }

    /// Smallest `R1` at which `R2 = 0` suffices for relevance `mu`; `None`
    /// when `mu > I(Y; X1)` and infinite at equality.
    pub fn critical_r1(&self, mu: T) -> Result<Option<T>> {
        let limit = self.mu_limit();
        if !(mu >= T::zero() && mu < limit) {
            return Err(Error::domain("relevance", mu.to_f64_lossy(), format!("[0, {limit})")));
        }
        if mu > self.mu_x1() {
            return Ok(None);
        }
        let k = self.s12() * self.s2y();
        let den = exp2m2(mu) - (T::one() - k);
        if den <= T::zero() {
            return Ok(Some(T::infinity()));
        }
        Ok(Some(half_log2(k / den).max(T::zero())))
    }

    /// Argument of the `[log]^+` bracket in [`r2`](Self::r2); equals one at
    /// the critical rate.
    pub fn r2_bracket(&self, r1: T, mu: T) -> T {
        let one = T::one();
        let (s12, s2) = (self.s12(), self.s2y());
        (s2 * s12 * exp2m2(r1) + s2 * (one - s12)) / (exp2m2(mu) - (one - s2))
    }
}

/// Reading of the `R2` constraint of the outer bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum R2Reading {
    /// Last numerator term carries `2^{-2 r2}`, as in the relevance constraint.
    #[default]
    MuConsistent,
    /// Last numerator term without `2^{-2 r2}`, as obtained by conditioning
    /// on the first description only.
    R2Free,
}

/// `X1 - Y - X2`: `Y = a1 X1 + a2 X2 + Z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCeo<T>", bound(deserialize = "T: Real"))]
pub struct CdibX1YX2<T> {
    pub rho_x1y: T,
    pub rho_x2y: T,
    /// Variances of `(X1, X2, Y)`.
    pub sigma_sq: [T; 3],
    #[serde(default)]
    pub r2_reading: R2Reading,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
struct RawCeo<T> {
    rho_x1y: T,
    rho_x2y: T,
    #[serde(default = "unit_variances")]
    sigma_sq: [T; 3],
    #[serde(default)]
    r2_reading: R2Reading,
}

impl<T: Real> TryFrom<RawCeo<T>> for CdibX1YX2<T> {
    type Error = Error;

    fn try_from(r: RawCeo<T>) -> Result<Self> {
        Ok(Self::with_variances(r.rho_x1y, r.rho_x2y, r.sigma_sq)?.with_reading(r.r2_reading))
    }
}

/// The four outer-bound right-hand sides at auxiliary rates `(r1, r2)`,
/// evaluated at `mu = mu_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OuterBoundPoint<T> {
    pub r1: T,
    pub r2: T,
    #[serde(rename = "R1_min")]
    pub r1_min: T,
    #[serde(rename = "R2_min")]
    pub r2_min: T,
    pub sum_min: T,
    pub mu_max: T,
}

/// Operating point of the additive inner bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InnerBoundPoint<T> {
    pub mu: T,
    /// Noise variances of `V1 = X1 + P1` and `V2 = X2 + V1 + P2`, infinite
    /// when the description is absent.
    pub sigma_p1_sq: T,
    pub sigma_p2_sq: T,
}

impl<T: Real> CdibX1YX2<T> {
    pub fn new(rho_x1y: T, rho_x2y: T) -> Result<Self> {
        Self::with_variances(rho_x1y, rho_x2y, unit_variances())
    }

    pub fn with_variances(rho_x1y: T, rho_x2y: T, sigma_sq: [T; 3]) -> Result<Self> {
        check_cdib_rho("rho_x1y", rho_x1y)?;
        check_cdib_rho("rho_x2y", rho_x2y)?;
        for v in sigma_sq {
            check_var(v)?;
        }
        Ok(Self { rho_x1y, rho_x2y, sigma_sq, r2_reading: R2Reading::default() })
    }

    pub fn with_reading(mut self, reading: R2Reading) -> Self {
        self.r2_reading = reading;
        self
    }

    /// Implied `rho_x1x2 = rho_x1y rho_x2y`.
    pub fn rho_x1x2(&self) -> T {
        self.rho_x1y * self.rho_x2y
    }

    fn s(&self) -> (T, T) {
        (self.rho_x1y * self.rho_x1y, self.rho_x2y * self.rho_x2y)
    }

    /// Covariance of `(X1, X2, Y)`.
    pub fn vector(&self) -> Result<GaussianVector<T>> {
        let one = T::one();
        let r12 = self.rho_x1x2();
        let corr = vec![one, r12, self.rho_x1y, r12, one, self.rho_x2y, self.rho_x1y, self.rho_x2y, one];
        let sigma = self.sigma_sq.map(|v| v.sqrt());
        GaussianVector::from_correlation(vec!["X1".into(), "X2".into(), "Y".into()], &sigma, &corr)
    }

    /// `I(Y; X1 X2)`.
    pub fn mu_limit(&self) -> T {
        let (s1, s2) = self.s();
        let one = T::one();
        half_log2((one - s1 * s2) / ((one - s1) * (one - s2)))
    }

    /// `I(Y; X2)`.
    fn c2(&self) -> T {
        -half_log2(T::one() - self.s().1)
    }

    fn mu_bound(&self, r1: T, r2: T) -> T {
        let (s1, s2) = self.s();
        let one = T::one();
        let d = (one - s1) * (one - s2);
        half_log2((one - s1 * s2 - s1 * (one - s2) * exp2m2(r1) - s2 * (one - s1) * exp2m2(r2)) / d)
    }

    /// Log term subtracted in the `R2` constraint.
    fn r2_log(&self, r1: T, r2: T) -> T {
        let (s1, s2) = self.s();
        let one = T::one();
        let d = (one - s1) * (one - s2);
        let last = match self.r2_reading {
            R2Reading::MuConsistent => exp2m2(r2),
            R2Reading::R2Free => one,
        };
        half_log2((one - s1 * s2 - s1 * (one - s2) * exp2m2(r1) - s2 * (one - s1) * last) / d)
    }

    /// The outer-bound constraints at auxiliary rates `(r1, r2)`.
    pub fn outer_point(&self, r1: T, r2: T) -> Result<OuterBoundPoint<T>> {
        check_rate("r1", r1)?;
        check_rate("r2", r2)?;
        let mu_max = self.mu_bound(r1, r2);
        let l2 = self.r2_log(r1, r2);
        if !mu_max.is_finite() || !l2.is_finite() {
            return Err(Error::DegenerateModel("outer bound log argument is not positive".into()));
        }
        let zero = T::zero();
        Ok(OuterBoundPoint {
            r1,
            r2,
            r1_min: (r1 - self.c2() + mu_max).max(zero),
            r2_min: (r2 - l2 + mu_max).max(zero),
            sum_min: r1 + r2 + mu_max,
            mu_max,
        })
    }

    /// Largest `mu` admitted by the outer bound at `(r1, r2)` for rates `(R1, R2)`.
    fn outer_value(&self, rate1: T, rate2: T, r1: T, r2: T) -> T {
        let m = self.mu_bound(r1, r2);
        let a = rate1 - r1 + self.c2();
        let b = rate2 - r2 + self.r2_log(r1, r2);
        let c = rate1 + rate2 - r1 - r2;
        m.min(a).min(b).min(c)
    }

    /// Largest relevance in the outer bound at rates `(R1, R2)`; zero when
    /// no auxiliary rates are admissible.
    pub fn outer_frontier(&self, rate1: T, rate2: T) -> Result<T> {
        check_rate("R1", rate1)?;
        check_rate("R2", rate2)?;
        let cap = T::c(RATE_CAP);
        let (rate1, rate2) = (rate1.min(cap), rate2.min(cap));
        let r1_hi = (rate1 + self.c2()).min(cap);
        let r2_hi = (rate1 + rate2).min(cap);
        let tol = T::tolerance(OPT_TOL);
        let best_r2 = |r1: T| grid_golden_max(|r2| self.outer_value(rate1, rate2, r1, r2), T::zero(), r2_hi, FRONTIER_GRID, tol).1;
        let (_, v) = grid_golden_max(best_r2, T::zero(), r1_hi, FRONTIER_GRID, tol);
        Ok(v.max(T::zero()))
    }

    /// Posterior variances given `V1 = sqrt(t1) X1 + N1`, `V2' = sqrt(t2) X2 + N2`
    /// (unit-variance model): returns `(Var(X2|V1), Var(Y|V1,V2'))`.
    fn posterior(&self, t1: T, t2: T) -> (T, T) {
        let one = T::one();
        let r12 = self.rho_x1x2();
        let var_x2_v1 = one - r12 * r12 * t1 / (one + t1);
        let corr = [one, r12, self.rho_x1y, r12, one, self.rho_x2y, self.rho_x1y, self.rho_x2y, one];
        let var_y = match inverse(&corr, 3) {
            Some(mut lam) => {
                lam[0] = lam[0] + t1;
                lam[4] = lam[4] + t2;
                inverse(&lam, 3).map_or(one, |c| c[8])
            }
            None => one,
        };
        (var_x2_v1, var_y)
    }

    /// Additive-noise inner bound at rates `(R1, R2)`.
    ///
    /// For a given first description the second is chosen as fine as the
    /// rate constraints allow; the first is searched on a grid of its rate
    /// `I(X1; V1 | X2)` with golden-section refinement.
    pub fn inner_bound(&self, rate1: T, rate2: T) -> Result<InnerBoundPoint<T>> {
        check_rate("R1", rate1)?;
        check_rate("R2", rate2)?;
        let cap = T::c(RATE_CAP);
        let (rate1, rate2) = (rate1.min(cap), rate2.min(cap));
        let one = T::one();
        let r12 = self.rho_x1x2();
        let v12 = one - r12 * r12;
        let sum = rate1 + rate2;
        let eval = |s: T| -> (T, T, T) {
            let t1 = (T::c(2.0).powf(T::c(2.0) * s) - one) / v12;
            let i1 = half_log2(one + t1);
            if i1 > sum {
                return (T::neg_infinity(), t1, T::zero());
            }
            let budget = rate2.min(sum - i1);
            let (var_x2, _) = self.posterior(t1, T::zero());
            let t2 = (T::c(2.0).powf(T::c(2.0) * budget) - one) / var_x2;
            let (_, var_y) = self.posterior(t1, t2);
            ((-half_log2(var_y)).max(T::zero()), t1, t2)
        };
        // I(X1;V1) <= R1 + R2 bounds s from above as well.
        let s_sum = half_log2(one + (T::c(2.0).powf(T::c(2.0) * sum) - one) * v12);
        let s_hi = rate1.min(s_sum);
        let tol = T::tolerance(OPT_TOL);
        let (s, mu) = grid_golden_max(|s| eval(s).0, T::zero(), s_hi, INNER_GRID, tol);
        let (_, t1, t2) = eval(s);
        let var = |t: T, v: T| if t > T::zero() { v / t } else { T::infinity() };
        Ok(InnerBoundPoint {
            mu: mu.max(T::zero()),
            sigma_p1_sq: var(t1, self.sigma_sq[0]),
            sigma_p2_sq: var(t2, self.sigma_sq[1]),
        })
    }

    /// `I(Y; V1 V2)` and the three rate terms of the inner bound for the
    /// additive test channels, evaluated from explicit covariances.
    pub fn inner_rates(&self, sigma_p1_sq: T, sigma_p2_sq: T) -> Result<[T; 4]> {
        let v = self.vector()?;
        let v = v.with_linear("V1", &[("X1", T::one())], sigma_p1_sq)?;
        let v = v.with_linear("V2", &[("X2", T::one()), ("V1", T::one())], sigma_p2_sq)?;
        Ok([
            v.conditional_mutual_information(&["X1"], &["V1"], &["X2"])?,
            v.conditional_mutual_information(&["X2"], &["V2"], &["V1"])?,
            v.mutual_information(&["X1", "X2"], &["V1", "V2"])?,
            v.mutual_information(&["Y"], &["V1", "V2"])?,
        ])
    }
}

/// A collaborative distributed Gaussian model, tagged by its Markov chain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "chain", bound(deserialize = "T: Real"))]
pub enum GaussianCdibModel<T> {
    #[serde(rename = "X1-X2-Y")]
    X1X2Y(CdibX1X2Y<T>),
    #[serde(rename = "X1-Y-X2")]
    X1YX2(CdibX1YX2<T>),
}
