use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopePoint<T> {
    pub x: T,
    pub y: T,
    pub is_vertex: bool,
}

/// Upper concave envelope of a point cloud by Andrew's monotone chain.
///
/// Returns the hull vertices in strictly increasing `x` with strictly
/// decreasing chord slopes; collinear interior points are dropped.
pub fn upper_concave_envelope<T: Real>(points: &[(T, T)]) -> Result<Vec<EnvelopePoint<T>>> {
    if points.len() < 2 {
        return Err(Error::Argument(format!("envelope needs at least 2 points, got {}", points.len())));
    }
    if let Some(p) = points.iter().find(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(Error::Argument(format!("non-finite point ({}, {})", p.0, p.1)));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(b.1.partial_cmp(&a.1).unwrap()));
    pts.dedup_by(|b, a| a.0 == b.0);

    let mut hull: Vec<(T, T)> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Pop `a` unless o -> a -> p turns strictly clockwise.
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross >= T::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    Ok(hull.into_iter().map(|(x, y)| EnvelopePoint { x, y, is_vertex: true }).collect())
}

/// Piecewise-linear value of an envelope at `x`; `None` outside its span.
pub fn envelope_value<T: Real>(env: &[EnvelopePoint<T>], x: T) -> Option<T> {
    let (first, last) = (env.first()?, env.last()?);
    if x < first.x || x > last.x {
        return None;
    }
    let k = env.partition_point(|p| p.x < x);
    if k == 0 {
        return Some(first.y);
    }
    let (a, b) = (env[k - 1], env[k]);
    if b.x == x {
        return Some(b.y);
    }
    Some(a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x))
}

/// Envelope sampled at `grid`; grid points beyond the right end take the
/// last vertex value, points left of the span are an error.
pub fn sample_envelope<T: Real>(env: &[EnvelopePoint<T>], grid: &[T]) -> Result<Vec<EnvelopePoint<T>>> {
    let last = *env.last().ok_or_else(|| Error::Argument("empty envelope".into()))?;
    grid.iter()
        .map(|&x| {
            let y = if x > last.x { Some(last.y) } else { envelope_value(env, x) };
            let y = y.ok_or_else(|| Error::domain("rate", x.to_f64_lossy(), format!("[{}, inf)", env[0].x)))?;
            let is_vertex = env.iter().any(|p| p.x == x);
            Ok(EnvelopePoint { x, y, is_vertex })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collinear_points_keep_endpoints() {
        let pts: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 2.0 * i as f64 + 1.0)).collect();
        let e = upper_concave_envelope(&pts).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!((e[0].x, e[1].x), (0.0, 9.0));
    }

    #[test]
    fn concave_points_are_all_vertices() {
        let pts: Vec<(f64, f64)> = (0..20).map(|i| (i as f64, (i as f64).sqrt())).collect();
        assert_eq!(upper_concave_envelope(&pts).unwrap().len(), 20);
    }

    #[test]
    fn rejects_short_or_nonfinite_input() {
        assert!(upper_concave_envelope(&[(0.0f64, 1.0)]).is_err());
        assert!(upper_concave_envelope(&[(0.0f64, 1.0), (f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn interpolation_and_sampling() {
        let e = upper_concave_envelope(&[(0.0f64, 0.0), (1.0, 1.0), (2.0, 1.5), (1.0, 0.2)]).unwrap();
        assert_eq!(envelope_value(&e, 0.5), Some(0.5));
        assert_eq!(envelope_value(&e, 1.5), Some(1.25));
        assert_eq!(envelope_value(&e, 2.5), None);
        let s = sample_envelope(&e, &[1.0, 3.0]).unwrap();
        assert!(s[0].is_vertex && !s[1].is_vertex);
        assert_eq!(s[1].y, 1.5);
    }
}
