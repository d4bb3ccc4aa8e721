//! Binary half-round relevance-rate functions.
//!
//! Source: `X2 ~ Bern(1/2)`, `X1 = X2 xor Bern(q)`, `Y = X1 xor Bern(p)`. The
//! encoder observes `X1`, the decoder observes `X2` and wants `Y`.

mod channels;
mod functions;
mod relevance;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use channels::TestChannelSpec;
pub use relevance::{CriticalPoint, DualOracle, MuD};

/// Crossovers `(p, q)`, both in the open interval `(0, 1/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel<T>", bound(deserialize = "T: Real"))]
pub struct BinaryModel<T> {
    pub(crate) p: T,
    pub(crate) q: T,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
struct RawModel<T> {
    p: T,
    q: T,
}

impl<T: Real> TryFrom<RawModel<T>> for BinaryModel<T> {
    type Error = Error;

    fn try_from(raw: RawModel<T>) -> Result<Self> {
        Self::new(raw.p, raw.q)
    }
}

impl<T: Real> BinaryModel<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        let open = |x: T| x > T::zero() && x < T::c(0.5);
        if !open(p) {
            return Err(Error::domain("p", p.to_f64_lossy(), "(0, 1/2)"));
        }
        if !open(q) {
            return Err(Error::domain("q", q.to_f64_lossy(), "(0, 1/2)"));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_interval_is_enforced() {
        assert!(BinaryModel::new(0.1, 0.1).is_ok());
        for (p, q) in [(0.0, 0.1), (0.5, 0.1), (0.1, 0.0), (0.1, 0.5), (0.6, 0.1), (f64::NAN, 0.1)] {
            assert!(matches!(BinaryModel::new(p, q), Err(Error::Domain { .. })));
        }
        let bad: std::result::Result<BinaryModel<f64>, _> = serde_json::from_str(r#"{"p":0.6,"q":0.1}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn f32_model_evaluates() {
        let b = BinaryModel::new(0.1f32, 0.1).unwrap();
        assert!((b.mu_d(0.0).unwrap() - 0.319_923).abs() < 1e-5);
        assert!((b.g(0.25).unwrap() - 0.070_013).abs() < 1e-5);
    }
}
