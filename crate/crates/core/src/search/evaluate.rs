use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::schedule::{Problem, RoundSchedule};
use crate::error::{Error, Result};
use crate::info::{compose_markov, Channel, JointPmf};
use crate::scalar::Real;

/// A single-letter operating point.
///
/// For the two-way problem `mu1`/`mu2` are the two decoders' relevances and
/// `sum_rate = R1 + R2`; for the distributed problem `mu1` is the common
/// decoder's relevance, `mu2` is absent and `sum_rate` is its own constraint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionPoint<T> {
    #[serde(rename = "R1")]
    pub r1: T,
    #[serde(rename = "R2")]
    pub r2: T,
    pub sum_rate: T,
    pub mu1: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu2: Option<T>,
    /// SHA-256 of the serialized channel stack.
    pub stack_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl<T> RegionPoint<T> {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

pub(crate) fn stack_hash<T: Real>(channels: &[&Channel<T>]) -> String {
    let mut h = Sha256::new();
    for ch in channels {
        let json = serde_json::to_vec(ch).expect("channels serialize");
        h.update((json.len() as u64).to_le_bytes());
        h.update(&json);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn compose_all<T: Real>(source: &JointPmf<T>, sched: &RoundSchedule<T>) -> Result<JointPmf<T>> {
    for a in [sched.x1(), sched.x2()] {
        if source.axis(&a.name)? != a {
            return Err(Error::Argument(format!("source axis `{}` does not match the schedule", a.name)));
        }
    }
    sched.channels().iter().try_fold(source.clone(), |p, ch| compose_markov(&p, ch))
}

fn hash_of<T: Real>(sched: &RoundSchedule<T>) -> String {
    stack_hash(&sched.channels().iter().collect::<Vec<_>>())
}

fn require<T: Real>(sched: &RoundSchedule<T>, problem: Problem) -> Result<()> {
    if sched.problem() != problem {
        return Err(Error::Argument(format!("schedule was built for {:?}", sched.problem())));
    }
    Ok(())
}

/// Rates and relevances of a two-way schedule on a source over
/// `(X1, X2, Y1, Y2)`; decoder 1 sits with encoder 1 and learns `Y1`.
pub fn evaluate_twcib<T: Real>(source: &JointPmf<T>, sched: &RoundSchedule<T>) -> Result<RegionPoint<T>> {
    require(sched, Problem::TwoWay)?;
    let j = compose_all(source, sched)?;
    let (x1, x2) = (sched.x1().name.as_str(), sched.x2().name.as_str());
    let w = sched.descriptions();
    let (w1, w2): (Vec<&str>, Vec<&str>) = (w.iter().copied().chain([x1]).collect(), w.iter().copied().chain([x2]).collect());
    let r1 = j.conditional_mutual_information(&[x1], &w, &[x2])?;
    let r2 = j.conditional_mutual_information(&[x2], &w, &[x1])?;
    Ok(RegionPoint {
        r1,
        r2,
        sum_rate: r1 + r2,
        mu1: j.mutual_information(&["Y1"], &w1)?,
        mu2: Some(j.mutual_information(&["Y2"], &w2)?),
        stack_hash: hash_of(sched),
        seed: None,
    })
}

/// Inner-bound right-hand sides of a distributed schedule on a source over
/// `(X1, X2, Y)`.
pub fn evaluate_cdib_inner<T: Real>(source: &JointPmf<T>, sched: &RoundSchedule<T>) -> Result<RegionPoint<T>> {
    require(sched, Problem::Distributed)?;
    let j = compose_all(source, sched)?;
    let (x1, x2) = (sched.x1().name.as_str(), sched.x2().name.as_str());
    let w = sched.descriptions();
    let (last, w2k) = w.split_last().expect("schedules are nonempty");
    let r2 = if w2k.is_empty() {
        j.mutual_information(&[x2], &[last])?
    } else {
        j.conditional_mutual_information(&[x2], &[last], w2k)? + j.conditional_mutual_information(&[x2], w2k, &[x1])?
    };
    Ok(RegionPoint {
        r1: j.conditional_mutual_information(&[x1], &w, &[x2])?,
        r2,
        sum_rate: j.mutual_information(&[x1, x2], &w)?,
        mu1: j.mutual_information(&["Y"], &w)?,
        mu2: None,
        stack_hash: hash_of(sched),
        seed: None,
    })
}

/// The four corner points induced by `U1 - X1` and `U2 - (U1, X2)` on a
/// source over `(X1, X2, Y)`, as `(R1, R2, mu)`; negative relevance
/// coordinates are clamped to zero.
pub fn corner_points_outer<T: Real>(source: &JointPmf<T>, u1: &Channel<T>, u2: &Channel<T>) -> Result<[RegionPoint<T>; 4]> {
    let (a, b) = (u1.output().name.as_str(), u2.output().name.as_str());
    if u1.input_names() != ["X1"] {
        return Err(Error::Structure(format!("`{a}` must depend on X1 only")));
    }
    let mut ins = u2.input_names();
    ins.sort_unstable();
    let mut want = vec![a, "X2"];
    want.sort_unstable();
    if ins != want {
        return Err(Error::Structure(format!("`{b}` must depend on ({a}, X2) only")));
    }
    let j = compose_markov(&compose_markov(source, u1)?, u2)?;
    let i = |x: &[&str], y: &[&str], z: &[&str]| j.conditional_mutual_information(x, y, z);
    let hash = stack_hash(&[u1, u2]);
    let zero = T::zero();
    let point = |r1: T, r2: T, mu: T| RegionPoint {
        r1,
        r2,
        sum_rate: r1 + r2,
        mu1: mu.max(zero),
        mu2: None,
        stack_hash: hash.clone(),
        seed: None,
    };
    let i1_x2 = i(&["X1"], &[a], &["X2"])?;
    let i1 = i(&["X1"], &[a], &[])?;
    let rel = i(&["Y"], &[a, b], &[])?;
    Ok([
        point(i1_x2, i(&[a, b], &["X2"], &[])?, rel),
        point(i1, i(&[b], &["X2"], &[a])?, rel),
        point(i1, zero, i(&["Y"], &[a], &[])? - i(&[b], &["X2"], &[a, "Y"])?),
        point(i1_x2, zero, i1_x2 - i(&[a, b], &["X1", "X2"], &["Y"])?),
    ])
}
