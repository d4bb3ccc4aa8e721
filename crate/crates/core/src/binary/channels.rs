//! Optimal test channels and the binary source distributions.

use serde::{Deserialize, Serialize};

use super::relevance::MuD;
use super::BinaryModel;
use crate::error::{Error, Result};
use crate::info::{Axis, Channel, JointPmf};
use crate::scalar::Real;

/// Shape of the description `U` of `X1` achieving `mu_d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TestChannelSpec<T> {
    /// `U` carries nothing.
    Constant,
    /// `U = X1`.
    Identity,
    /// `U = X1 xor Bern(r)`.
    Direct { r: T },
    /// With probability `lambda`, `U = X1 xor Bern(r_c)`; otherwise `U` is an
    /// erasure symbol independent of everything.
    Timeshared { lambda: T, r_c: T },
}

impl<T: Real> TestChannelSpec<T> {
    /// Output alphabet size of the realised channel.
    pub fn cardinality(&self) -> usize {
        match self {
            TestChannelSpec::Constant => 1,
            TestChannelSpec::Identity | TestChannelSpec::Direct { .. } => 2,
            TestChannelSpec::Timeshared { .. } => 3,
        }
    }

    /// Realises the channel on the binary axis `input`.
    pub fn to_channel(&self, input: Axis, output_name: &str) -> Result<Channel<T>> {
        self.to_channel_padded(input, output_name, self.cardinality())
    }

    /// As [`to_channel`](Self::to_channel) with `card - cardinality()` extra
    /// output symbols that are never used.
    pub fn to_channel_padded(&self, input: Axis, output_name: &str, card: usize) -> Result<Channel<T>> {
        if input.card != 2 {
            return Err(Error::Argument(format!("test channel input `{}` must be binary", input.name)));
        }
        if card < self.cardinality() {
            return Err(Error::Argument(format!(
                "test channel needs {} output symbols, {card} requested",
                self.cardinality()
            )));
        }
        let (zero, one) = (T::zero(), T::one());
        let spec = *self;
        Channel::from_fn(vec![input], Axis::new(output_name, card), move |i, v| {
            let x = i[0];
            match spec {
                TestChannelSpec::Constant => if v == 0 { one } else { zero },
                TestChannelSpec::Identity => if v == x { one } else { zero },
                TestChannelSpec::Direct { r } => match v {
                    _ if v == x => one - r,
                    0 | 1 => r,
                    _ => zero,
                },
                TestChannelSpec::Timeshared { lambda, r_c } => match v {
                    _ if v == x => lambda * (one - r_c),
                    0 | 1 => lambda * r_c,
                    2 => one - lambda,
                    _ => zero,
                },
            }
        })
    }
}

impl<T: Real> MuD<T> {
    /// Description of `X1` achieving `mu_d(rate)`.
    pub fn optimal_channel(&self, rate: T) -> Result<TestChannelSpec<T>> {
        if !(rate >= T::zero() && rate.is_finite()) {
            return Err(Error::domain("rate", rate.to_f64_lossy(), "[0, inf)"));
        }
        let m = self.model();
        if rate == T::zero() {
            return Ok(TestChannelSpec::Constant);
        }
        if rate >= m.max_rate() {
            return Ok(TestChannelSpec::Identity);
        }
        if let Some(c) = self.critical().filter(|c| rate <= c.rate) {
            return Ok(TestChannelSpec::Timeshared { lambda: rate / c.rate, r_c: c.r_c });
        }
        Ok(TestChannelSpec::Direct { r: m.g_inverse_raw(rate) })
    }
}

impl<T: Real> BinaryModel<T> {
    /// See [`MuD::optimal_channel`].
    pub fn optimal_channel(&self, rate: T) -> Result<TestChannelSpec<T>> {
        MuD::new(*self).optimal_channel(rate)
    }

    /// `p(x1, x2, y)` with `X2 ~ Bern(1/2)`, `X1 = X2 xor Bern(q)` and
    /// `Y = X1 xor Bern(p)`; axes `X1, X2, Y`.
    pub fn half_round_source(&self) -> Result<JointPmf<T>> {
        let (p, q, half) = (self.p, self.q, T::c(0.5));
        let flip = |a: usize, b: usize, e: T| if a == b { T::one() - e } else { e };
        JointPmf::from_fn(vec![Axis::new("X1", 2), Axis::new("X2", 2), Axis::new("Y", 2)], |i| {
            half * flip(i[0], i[1], q) * flip(i[0], i[2], p)
        })
    }

    /// `p(x1, x2, y1, y2)` of the two-way model: `Y1 = X2 xor Bern(p)` and
    /// `Y2 = X1 xor Bern(p)`; axes `X1, X2, Y1, Y2`.
    pub fn two_way_source(&self) -> Result<JointPmf<T>> {
        let (p, q, half) = (self.p, self.q, T::c(0.5));
        let flip = |a: usize, b: usize, e: T| if a == b { T::one() - e } else { e };
        let axes = vec![Axis::new("X1", 2), Axis::new("X2", 2), Axis::new("Y1", 2), Axis::new("Y2", 2)];
        JointPmf::from_fn(axes, |i| half * flip(i[0], i[1], q) * flip(i[1], i[2], p) * flip(i[0], i[3], p))
    }
}
