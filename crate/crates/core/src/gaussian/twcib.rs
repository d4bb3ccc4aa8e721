//! Two-way model: `Y1 = a11 X1 + a12 X2 + Z1`, `Y2 = a21 X1 + a22 X2 + Z2`.

use serde::{Deserialize, Serialize};

use super::vector::GaussianVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which encoder's rate is requested: `One` gives `R1` as a function of
/// `mu2`, `Two` gives `R2` as a function of `mu1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoder {
    One,
    Two,
}

/// Variances of `(X1, X2, Y1, Y2)` and the five correlations that determine
/// the model. `Z1` and `Z2` are taken independent of each other.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTwcib<T>", bound(deserialize = "T: Real"))]
pub struct GaussianTwcibModel<T> {
    pub sigma_sq: [T; 4],
    pub rho_x1x2: T,
    pub rho_x1y1: T,
    pub rho_x2y1: T,
    pub rho_x2y2: T,
    pub rho_x1y2: T,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
struct RawTwcib<T> {
    sigma_sq: [T; 4],
    rho_x1x2: T,
    rho_x1y1: T,
    rho_x2y1: T,
    rho_x2y2: T,
    rho_x1y2: T,
}

impl<T: Real> TryFrom<RawTwcib<T>> for GaussianTwcibModel<T> {
    type Error = Error;

    fn try_from(r: RawTwcib<T>) -> Result<Self> {
        Self::new(r.sigma_sq, r.rho_x1x2, r.rho_x1y1, r.rho_x2y1, r.rho_x2y2, r.rho_x1y2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwcibCoefficients<T> {
    pub a11: T,
    pub a12: T,
    pub a21: T,
    pub a22: T,
    pub sigma_z1_sq: T,
    pub sigma_z2_sq: T,
    pub beta: T,
    pub delta: T,
}

/// Noise variances of the test channels `V1 = X1 + P1` and `V2 = X2 + P2`;
/// infinite when no description is needed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestChannelVariances<T> {
    pub sigma_p1_sq: T,
    pub sigma_p2_sq: T,
}

pub(crate) fn check_rho<T: Real>(what: &'static str, r: T) -> Result<()> {
    if r.abs() < T::one() {
        Ok(())
    } else {
        Err(Error::domain(what, r.to_f64_lossy(), "(-1, 1)"))
    }
}

pub(crate) fn check_var<T: Real>(v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("variance", v.to_f64_lossy(), "(0, inf)"))
    }
}

impl<T: Real> GaussianTwcibModel<T> {
    pub fn new(sigma_sq: [T; 4], rho_x1x2: T, rho_x1y1: T, rho_x2y1: T, rho_x2y2: T, rho_x1y2: T) -> Result<Self> {
        for v in sigma_sq {
            check_var(v)?;
        }
        check_rho("rho_x1x2", rho_x1x2)?;
        check_rho("rho_x1y1", rho_x1y1)?;
        check_rho("rho_x2y1", rho_x2y1)?;
        check_rho("rho_x2y2", rho_x2y2)?;
        check_rho("rho_x1y2", rho_x1y2)?;
        let m = Self { sigma_sq, rho_x1x2, rho_x1y1, rho_x2y1, rho_x2y2, rho_x1y2 };
        let c = m.coefficients_unchecked();
        if !(c.beta > T::zero()) || !(c.delta > T::zero()) {
            return Err(Error::DegenerateModel(format!("beta = {}, delta = {} must be positive", c.beta, c.delta)));
        }
        m.vector()?;
        Ok(m)
    }

    fn coefficients_unchecked(&self) -> TwcibCoefficients<T> {
        let one = T::one();
        let two = T::c(2.0);
        let (r12, r1y1, r2y1, r2y2, r1y2) = (self.rho_x1x2, self.rho_x1y1, self.rho_x2y1, self.rho_x2y2, self.rho_x1y2);
        let [sx1, sx2, sy1, sy2] = self.sigma_sq.map(|v| v.sqrt());
        let d = one - r12 * r12;
        let beta = one - r12 * r12 - r1y1 * r1y1 - r2y1 * r2y1 + two * r12 * r1y1 * r2y1;
        let delta = one - r12 * r12 - r2y2 * r2y2 - r1y2 * r1y2 + two * r12 * r2y2 * r1y2;
        TwcibCoefficients {
            a11: sy1 / sx1 * (r1y1 - r2y1 * r12) / d,
            a12: sy1 / sx2 * (r2y1 - r1y1 * r12) / d,
            a21: sy2 / sx1 * (r1y2 - r2y2 * r12) / d,
            a22: sy2 / sx2 * (r2y2 - r1y2 * r12) / d,
            sigma_z1_sq: self.sigma_sq[2] * beta / d,
            sigma_z2_sq: self.sigma_sq[3] * delta / d,
            beta,
            delta,
        }
    }

    /// Regression coefficients, noise variances, `beta` and `delta`.
    pub fn coefficients(&self) -> TwcibCoefficients<T> {
        self.coefficients_unchecked()
    }

    /// Joint covariance of `(X1, X2, Y1, Y2)` with `Z1` independent of `Z2`.
    pub fn vector(&self) -> Result<GaussianVector<T>> {
        let c = self.coefficients_unchecked();
        let [vx1, vx2, _, _] = self.sigma_sq;
        let x = GaussianVector::new(
            vec!["X1".into(), "X2".into()],
            vec![vx1, self.rho_x1x2 * (vx1 * vx2).sqrt(), self.rho_x1x2 * (vx1 * vx2).sqrt(), vx2],
        )?;
        let x = x.with_linear("Y1", &[("X1", c.a11), ("X2", c.a12)], c.sigma_z1_sq)?;
        let x = x.with_linear("Y2", &[("X1", c.a21), ("X2", c.a22)], c.sigma_z2_sq)?;
        GaussianVector::new(x.names().to_vec(), x.covariance().to_vec())
    }

    /// `(corr(own X, target Y), beta or delta)` for the link ending at the
    /// decoder that observes the other encoder's source.
    fn link(&self, which: Encoder) -> (T, T) {
        let c = self.coefficients_unchecked();
        match which {
            Encoder::One => (self.rho_x2y2, c.delta),
            Encoder::Two => (self.rho_x1y1, c.beta),
        }
    }

    /// Largest relevance for the link, `I(Y; X1 X2)`.
    pub fn relevance_limit(&self, which: Encoder) -> T {
        let (_, b) = self.link(which);
        let d = T::one() - self.rho_x1x2 * self.rho_x1x2;
        T::c(0.5) * (d / b).log2()
    }

    fn check_mu(&self, which: Encoder, mu: T) -> Result<()> {
        let limit = self.relevance_limit(which);
        if mu >= T::zero() && mu < limit {
            Ok(())
        } else {
            Err(Error::domain("relevance", mu.to_f64_lossy(), format!("[0, {limit})")))
        }
    }

    /// Minimal rate of `which` for the other decoder to reach relevance `mu`;
    /// zero while the decoder's own source already provides `mu`.
    pub fn rate_for_relevance(&self, which: Encoder, mu: T) -> Result<T> {
        self.check_mu(which, mu)?;
        let (rho_own, b) = self.link(which);
        let one = T::one();
        let d = one - self.rho_x1x2 * self.rho_x1x2;
        let num = d * (one - rho_own * rho_own) - b;
        let den = T::c(2.0).powf(-T::c(2.0) * mu) * d - b;
        if num <= T::zero() {
            return Ok(T::zero());
        }
        Ok((T::c(0.5) * (num / den).log2()).max(T::zero()))
    }

    /// Noise variance of `X + P` meeting relevance `mu` with equality on the
    /// link of `which`; infinite when no description is needed.
    fn test_variance(&self, which: Encoder, mu: T) -> Result<T> {
        self.check_mu(which, mu)?;
        let (rho_own, b) = self.link(which);
        let one = T::one();
        let d = one - self.rho_x1x2 * self.rho_x1x2;
        let e = T::c(2.0).powf(-T::c(2.0) * mu);
        let den = one - rho_own * rho_own - e;
        if den <= T::zero() {
            return Ok(T::infinity());
        }
        let var = match which {
            Encoder::One => self.sigma_sq[0],
            Encoder::Two => self.sigma_sq[1],
        };
        Ok(var * (e * d - b) / den)
    }

    /// Test channels of the one-round scheme for relevances `(mu1, mu2)`.
    pub fn test_channel_variances(&self, mu1: T, mu2: T) -> Result<TestChannelVariances<T>> {
        Ok(TestChannelVariances {
            sigma_p1_sq: self.test_variance(Encoder::One, mu2)?,
            sigma_p2_sq: self.test_variance(Encoder::Two, mu1)?,
        })
    }
}
