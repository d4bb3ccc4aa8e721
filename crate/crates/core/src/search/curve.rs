use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One `(R, mu)` sample of a relevance-rate curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    #[serde(rename = "R")]
    pub r: f64,
    pub mu: f64,
}

/// Serialized curve: the model it came from, how it was computed and its
/// samples in increasing rate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionCurve {
    pub model: serde_json::Value,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Sample budget of a stochastic curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Fixed parameter of a curve family member, e.g. the relevance of an
    /// `(R1, R2)` trade-off curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<f64>,
    pub points: Vec<CurvePoint>,
}

impl RegionCurve {
    pub fn new(model: serde_json::Value, method: impl Into<String>, seed: Option<u64>, points: Vec<CurvePoint>) -> Self {
        Self { model, method: method.into(), seed, budget: None, level: None, points }
    }

    /// Linear interpolation; `None` outside the sampled span.
    pub fn value_at(&self, r: f64) -> Option<f64> {
        let pts = &self.points;
        let (first, last) = (pts.first()?, pts.last()?);
        if r < first.r || r > last.r {
            return None;
        }
        let k = pts.partition_point(|p| p.r < r).max(1).min(pts.len() - 1);
        if pts.len() == 1 {
            return Some(first.mu);
        }
        let (a, b) = (pts[k - 1], pts[k]);
        if b.r == a.r {
            return Some(a.mu.max(b.mu));
        }
        Some(a.mu + (b.mu - a.mu) * (r - a.r) / (b.r - a.r))
    }
}

/// Point where `inner` exceeds `outer` the most.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "R")]
    pub r: f64,
    pub inner_mu: f64,
    pub outer_mu: f64,
    /// `inner_mu - outer_mu`.
    pub gap: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inclusion {
    pub holds: bool,
    pub tol: f64,
    pub compared: usize,
    pub worst: Witness,
}

/// Whether `inner` lies below `outer + tol` at every rate of `inner` inside
/// the span of `outer`.
pub fn check_inclusion(inner: &RegionCurve, outer: &RegionCurve, tol: f64) -> Result<Inclusion> {
    if !(tol >= 0.0) {
        return Err(Error::domain("tolerance", tol, "[0, inf)"));
    }
    let mut worst: Option<Witness> = None;
    let mut compared = 0;
    for p in &inner.points {
        let Some(o) = outer.value_at(p.r) else { continue };
        compared += 1;
        let w = Witness { r: p.r, inner_mu: p.mu, outer_mu: o, gap: p.mu - o };
        if worst.is_none_or(|b| w.gap > b.gap) {
            worst = Some(w);
        }
    }
    let worst = worst.ok_or_else(|| Error::Comparison("rate ranges do not overlap".into()))?;
    Ok(Inclusion { holds: worst.gap <= tol, tol, compared, worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(pts: &[(f64, f64)]) -> RegionCurve {
        RegionCurve::new(serde_json::json!({"kind": "test"}), "test", None, pts.iter().map(|&(r, mu)| CurvePoint { r, mu }).collect())
    }

    #[test]
    fn self_inclusion_and_witness() {
        let a = curve(&[(0.0, 0.0), (1.0, 1.0), (2.0, 1.2)]);
        let v = check_inclusion(&a, &a, 0.0).unwrap();
        assert!(v.holds && v.worst.gap == 0.0);
        let b = curve(&[(0.0, 0.0), (2.0, 1.2)]);
        let v = check_inclusion(&a, &b, 0.0).unwrap();
        assert!(!v.holds);
        assert_eq!(v.worst.r, 1.0);
        assert!((v.worst.gap - 0.4).abs() < 1e-15);
        assert!(check_inclusion(&b, &a, 0.0).unwrap().holds);
    }

    #[test]
    fn disjoint_ranges_are_an_error() {
        let a = curve(&[(0.0, 0.0), (1.0, 1.0)]);
        let b = curve(&[(2.0, 0.0), (3.0, 1.0)]);
        assert!(matches!(check_inclusion(&a, &b, 0.0), Err(Error::Comparison(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = RegionCurve { seed: Some(7), ..curve(&[(0.0, 0.1), (0.5, 0.25)]) };
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("\"R\":0.5"));
        assert_eq!(serde_json::from_str::<RegionCurve>(&s).unwrap(), a);
    }
}
