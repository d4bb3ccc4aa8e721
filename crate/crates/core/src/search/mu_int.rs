//! Seeded random search for the interactive binary relevance-rate curve.
//!
//! Encoder 1 first sends the description of `X1` that is optimal without
//! interaction. Encoder 2 then describes `X2` using that description as
//! side information; its channel `p(v2 | x2, v1)` is drawn at random, and
//! each draw contributes the point `(I(X2; V2 | X1 V1), I(Y1; V2 X1))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::envelope::{sample_envelope, upper_concave_envelope, EnvelopePoint};
use crate::binary::{BinaryModel, TestChannelSpec};
use crate::error::{Error, Result};
use crate::info::{h2, Axis};

/// Samples drawn from one `(seed, stream)` pair.
pub const CHUNK: usize = 4096;
pub const DEFAULT_V2_CARD: usize = 7;
pub const DEFAULT_BUCKETS: usize = 64;

const V1_CARD: usize = 3;

/// Best channel seen in one rate bucket.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BucketRecord {
    #[serde(rename = "R")]
    pub rate: f64,
    pub mu: f64,
    /// Global sample index; chunk `index / CHUNK`, offset `index % CHUNK`.
    pub sample: u64,
    /// `p(v2 | x2, v1)`, row-major over `(x2, v1)` with `v2` fastest.
    pub channel: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuIntResult {
    pub r1: f64,
    pub v1: TestChannelSpec<f64>,
    pub seed: u64,
    pub samples: usize,
    pub envelope: Vec<EnvelopePoint<f64>>,
    pub buckets: Vec<Option<BucketRecord>>,
}

impl MuIntResult {
    /// Envelope evaluated at `grid`, flat beyond the largest sampled rate.
    pub fn sample(&self, grid: &[f64]) -> Result<Vec<EnvelopePoint<f64>>> {
        sample_envelope(&self.envelope, grid)
    }
}

/// `p(x1, x2, y1, v1)` for the half-round problem with `Y1 = X2 xor Bern(p)`.
#[derive(Clone, Debug)]
struct HalfRound {
    joint: [f64; 2 * 2 * 2 * V1_CARD],
    v2: usize,
}

impl HalfRound {
    fn new(model: &BinaryModel<f64>, v1: &TestChannelSpec<f64>, v2: usize) -> Result<Self> {
        let ch = v1.to_channel_padded(Axis::new("X1", 2), "V1", V1_CARD)?;
        let (p, q) = (model.p(), model.q());
        let flip = |a: usize, b: usize, e: f64| if a == b { 1.0 - e } else { e };
        let mut joint = [0.0; 2 * 2 * 2 * V1_CARD];
        for x1 in 0..2 {
            for x2 in 0..2 {
                for y1 in 0..2 {
                    for v1 in 0..V1_CARD {
                        joint[((x1 * 2 + x2) * 2 + y1) * V1_CARD + v1] =
                            0.5 * flip(x1, x2, q) * flip(x2, y1, p) * ch.prob(&[x1], v1);
                    }
                }
            }
        }
        Ok(Self { joint, v2 })
    }

    fn p(&self, x1: usize, x2: usize, y1: usize, v1: usize) -> f64 {
        self.joint[((x1 * 2 + x2) * 2 + y1) * V1_CARD + v1]
    }

    fn w(&self, w: &[f64], x2: usize, v1: usize, v2: usize) -> f64 {
        w[(x2 * V1_CARD + v1) * self.v2 + v2]
    }

    /// `(I(X2; V2 | X1 V1), I(Y1; V2 X1))` in bits.
    fn evaluate(&self, w: &[f64]) -> (f64, f64) {
        let n = self.v2;
        let mut rate = 0.0;
        let mut mix = vec![0.0; n];
        for x1 in 0..2 {
            for v1 in 0..V1_CARD {
                let q = |x2| self.p(x1, x2, 0, v1) + self.p(x1, x2, 1, v1);
                let m = q(0) + q(1);
                if m <= 0.0 {
                    continue;
                }
                for (v2, s) in mix.iter_mut().enumerate() {
                    *s = (q(0) * self.w(w, 0, v1, v2) + q(1) * self.w(w, 1, v1, v2)) / m;
                }
                for x2 in 0..2 {
                    for (v2, &s) in mix.iter().enumerate() {
                        let c = self.w(w, x2, v1, v2);
                        if c > 0.0 {
                            rate += q(x2) * c * (c / s).log2();
                        }
                    }
                }
            }
        }
        let mut h_cond = 0.0;
        let mut py = [0.0; 2];
        for x1 in 0..2 {
            for v2 in 0..n {
                let mut r = [0.0; 2];
                for (y1, ry) in r.iter_mut().enumerate() {
                    for x2 in 0..2 {
                        for v1 in 0..V1_CARD {
                            *ry += self.p(x1, x2, y1, v1) * self.w(w, x2, v1, v2);
                        }
                    }
                }
                h_cond += plogp_cond(&r);
                py[0] += r[0];
                py[1] += r[1];
            }
        }
        (rate.max(0.0), (plogp_cond(&py) - h_cond).max(0.0))
    }
}

/// `-sum r log2(r / sum r)`.
fn plogp_cond(r: &[f64; 2]) -> f64 {
    let t = r[0] + r[1];
    r.iter().filter(|&&x| x > 0.0).map(|&x| -x * (x / t).log2()).sum()
}

/// Symmetric Dirichlet row; with probability 1/2 the concentration is 1,
/// otherwise log-uniform on `[0.01, 1]` so that sparse channels are drawn too.
fn draw_channel(rng: &mut ChaCha8Rng, rows: usize, card: usize) -> Vec<f64> {
    let alpha: f64 = if rng.random::<bool>() { 1.0 } else { 10f64.powf(rng.random_range(-2.0..0.0)) };
    let gamma = Gamma::new(alpha, 1.0).expect("positive shape");
    let mut w = vec![0.0; rows * card];
    for row in w.chunks_mut(card) {
        for x in row.iter_mut() {
            *x = gamma.sample(rng);
        }
        let s: f64 = row.iter().sum();
        if s > 0.0 && s.is_finite() {
            row.iter_mut().for_each(|x| *x /= s);
        } else {
            row.fill(0.0);
            row[rng.random_range(0..card)] = 1.0;
        }
    }
    w
}

/// Search configuration; see [`search_mu_int`] for the defaults.
#[derive(Clone, Debug)]
pub struct MuIntSearch {
    model: BinaryModel<f64>,
    r1: f64,
    v2_card: usize,
    buckets: usize,
}

impl MuIntSearch {
    /// First-description rate defaults to the critical rate when it exists
    /// (the most informative time-shared description), else `h2(q) / 2`.
    pub fn new(model: BinaryModel<f64>) -> Self {
        let r1 = model.critical_point().map(|c| c.rate).unwrap_or_else(|_| model.max_rate() / 2.0);
        Self { model, r1, v2_card: DEFAULT_V2_CARD, buckets: DEFAULT_BUCKETS }
    }

    pub fn r1(mut self, r1: f64) -> Self {
        self.r1 = r1;
        self
    }

    pub fn v2_card(mut self, card: usize) -> Self {
        self.v2_card = card;
        self
    }

    pub fn buckets(mut self, n: usize) -> Self {
        self.buckets = n;
        self
    }

    /// Draws `budget` channels. Sample `i` comes from stream `i / CHUNK` of
    /// `seed`, so a larger budget always contains every smaller one.
    pub fn run(&self, budget: usize, seed: u64) -> Result<MuIntResult> {
        if budget == 0 {
            return Err(Error::Argument("search budget must be at least 1".into()));
        }
        let bound = 2 * V1_CARD + 1;
        if self.v2_card < 2 || self.v2_card > bound {
            return Err(Error::Cardinality(format!("|V2| = {} outside [2, {bound}]", self.v2_card)));
        }
        if self.buckets == 0 {
            return Err(Error::Argument("need at least one rate bucket".into()));
        }
        let v1 = self.model.optimal_channel(self.r1)?;
        let setup = HalfRound::new(&self.model, &v1, self.v2_card)?;
        let rows = 2 * V1_CARD;
        let top = self.model.max_rate();
        let width = top / self.buckets as f64;
        let bucket_of = |r: f64| ((r / width) as usize).min(self.buckets - 1);

        let chunks = budget.div_ceil(CHUNK);
        type Chunk = (Vec<(usize, f64, f64)>, Vec<Option<BucketRecord>>);
        let per_chunk: Vec<Chunk> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c as u64);
                let n = CHUNK.min(budget - c * CHUNK);
                let mut pts = Vec::with_capacity(n);
                let mut best: Vec<Option<BucketRecord>> = vec![None; self.buckets];
                for k in 0..n {
                    let w = draw_channel(&mut rng, rows, self.v2_card);
                    let (r, mu) = setup.evaluate(&w);
                    let b = bucket_of(r);
                    pts.push((b, r, mu));
                    if best[b].as_ref().is_none_or(|rec| mu > rec.mu) {
                        best[b] = Some(BucketRecord { rate: r, mu, sample: (c * CHUNK + k) as u64, channel: w });
                    }
                }
                (pts, best)
            })
            .collect();

        let mut points: Vec<Vec<(f64, f64)>> = vec![Vec::new(); self.buckets];
        let mut best: Vec<Option<BucketRecord>> = vec![None; self.buckets];
        for (pts, recs) in per_chunk {
            for (b, r, mu) in pts {
                points[b].push((r, mu));
            }
            for (slot, rec) in best.iter_mut().zip(recs) {
                if let Some(rec) = rec {
                    if slot.as_ref().is_none_or(|s| rec.mu > s.mu) {
                        *slot = Some(rec);
                    }
                }
            }
        }

        let mut cloud = Vec::new();
        for pts in points {
            match pts.len() {
                0 => {}
                1 => cloud.push(pts[0]),
                _ => cloud.extend(upper_concave_envelope(&pts)?.into_iter().map(|e| (e.x, e.y))),
            }
        }
        let constant = setup.evaluate(&anchor(rows, self.v2_card, |_| 0));
        let identity = setup.evaluate(&anchor(rows, self.v2_card, |row| row / V1_CARD));
        cloud.push((0.0, constant.1));
        cloud.push((top.max(identity.0), identity.1));
        let envelope = upper_concave_envelope(&cloud)?;
        Ok(MuIntResult { r1: self.r1, v1, seed, samples: budget, envelope, buckets: best })
    }
}

/// Deterministic channel sending row `(x2, v1)` to symbol `pick(row)`.
fn anchor(rows: usize, card: usize, pick: impl Fn(usize) -> usize) -> Vec<f64> {
    let mut w = vec![0.0; rows * card];
    for row in 0..rows {
        w[row * card + pick(row)] = 1.0;
    }
    w
}

/// Interactive relevance at each rate of `grid` (increasing, from 0) using
/// the default first description, `|V2| = 7` and 64 rate buckets.
pub fn search_mu_int(model: &BinaryModel<f64>, grid: &[f64], budget: usize, seed: u64) -> Result<Vec<EnvelopePoint<f64>>> {
    if grid.windows(2).any(|w| !(w[0] < w[1])) || grid.first().is_some_and(|&x| !(x >= 0.0)) {
        return Err(Error::Argument("rate grid must be nonnegative and strictly increasing".into()));
    }
    MuIntSearch::new(*model).run(budget, seed)?.sample(grid)
}

/// `1 - h2(p)`: relevance once decoder 1 knows `X2` exactly.
pub fn mu_int_limit(model: &BinaryModel<f64>) -> Result<f64> {
    Ok(1.0 - h2(model.p())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::{compose_markov, Channel};

    #[test]
    fn fast_evaluation_matches_generic_path() {
        let m = BinaryModel::new(0.1, 0.15).unwrap();
        let spec = m.optimal_channel(0.2).unwrap();
        let setup = HalfRound::new(&m, &spec, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let src = m.two_way_source().unwrap();
        let v1 = spec.to_channel_padded(Axis::new("X1", 2), "V1", V1_CARD).unwrap();
        let j1 = compose_markov(&src, &v1).unwrap();
        for _ in 0..20 {
            let w = draw_channel(&mut rng, 2 * V1_CARD, 5);
            let ch = Channel::new(vec![Axis::new("X2", 2), Axis::new("V1", V1_CARD)], Axis::new("V2", 5), w.clone()).unwrap();
            let j = compose_markov(&j1, &ch).unwrap();
            let (r, mu) = setup.evaluate(&w);
            assert!((r - j.conditional_mutual_information(&["X2"], &["V2"], &["X1", "V1"]).unwrap()).abs() < 1e-12);
            assert!((mu - j.mutual_information(&["Y1"], &["V2", "X1"]).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn anchors_and_determinism() {
        let m = BinaryModel::new(0.1, 0.1).unwrap();
        let a = MuIntSearch::new(m).run(5000, 11).unwrap();
        assert_eq!(a.envelope[0].x, 0.0);
        assert!((a.envelope[0].y - m.base_relevance()).abs() < 1e-12);
        let last = a.envelope.last().unwrap();
        assert!((last.y - mu_int_limit(&m).unwrap()).abs() < 1e-12);
        assert!((last.y - 0.531_004_406_410_718_8).abs() < 1e-12);
        let b = MuIntSearch::new(m).run(5000, 11).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.envelope, MuIntSearch::new(m).run(5000, 12).unwrap().envelope);
    }

    #[test]
    fn larger_budget_never_lowers_the_envelope() {
        let m = BinaryModel::new(0.1, 0.1).unwrap();
        let grid: Vec<f64> = (0..=40).map(|i| m.max_rate() * i as f64 / 40.0).collect();
        let small = search_mu_int(&m, &grid, 3000, 5).unwrap();
        let large = search_mu_int(&m, &grid, 6000, 5).unwrap();
        for (s, l) in small.iter().zip(&large) {
            assert!(l.y >= s.y - 1e-15, "R = {}: {} < {}", s.x, l.y, s.y);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let m = BinaryModel::new(0.1, 0.1).unwrap();
        assert!(search_mu_int(&m, &[0.0, 0.1], 0, 1).is_err());
        assert!(search_mu_int(&m, &[0.1, 0.0], 10, 1).is_err());
        assert!(matches!(MuIntSearch::new(m).v2_card(8).run(10, 1), Err(Error::Cardinality(_))));
    }
}
