use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::{Axis, Channel};
use crate::scalar::Real;

/// Which problem the schedule serves; fixes the alphabet-size bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    /// Two-way exchange, each encoder learning the other's hidden variable.
    TwoWay,
    /// Two cooperating encoders feeding a common decoder.
    Distributed,
}

impl Problem {
    /// Additive slack in `|V| <= |X| |W| + slack` for encoder `enc` (1 or 2)
    /// at round `l` of `k` (both 1-based).
    fn slack(self, enc: usize, l: usize, k: usize) -> usize {
        let last = l == k;
        match (self, enc) {
            (Problem::TwoWay, 1) => 3,
            (Problem::TwoWay, _) => if last { 1 } else { 3 },
            (Problem::Distributed, 1) => if last { 3 } else { 4 },
            (Problem::Distributed, _) => if last { 1 } else { 4 },
        }
    }
}

/// `2K` channels alternating encoder 1 / encoder 2, each reading its own
/// source and every description produced before it.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundSchedule<T> {
    problem: Problem,
    x1: Axis,
    x2: Axis,
    channels: Vec<Channel<T>>,
}

impl<T: Real> RoundSchedule<T> {
    pub fn new(problem: Problem, x1: Axis, x2: Axis, channels: Vec<Channel<T>>) -> Result<Self> {
        if channels.is_empty() || channels.len() % 2 != 0 {
            return Err(Error::Argument(format!("schedule needs 2K >= 2 channels, got {}", channels.len())));
        }
        let k = channels.len() / 2;
        let mut history: Vec<Axis> = Vec::new();
        for (i, ch) in channels.iter().enumerate() {
            let (enc, l) = (i % 2 + 1, i / 2 + 1);
            let own = if enc == 1 { &x1 } else { &x2 };
            let mut expected: Vec<&Axis> = history.iter().collect();
            expected.push(own);
            let inputs = ch.inputs();
            let same = inputs.len() == expected.len() && expected.iter().all(|a| inputs.contains(a));
            if !same {
                let names: Vec<&str> = expected.iter().map(|a| a.name.as_str()).collect();
                return Err(Error::Structure(format!(
                    "channel `{}` must read exactly {names:?}",
                    ch.output().name
                )));
            }
            let out = ch.output();
            if out.name == x1.name || out.name == x2.name || history.iter().any(|a| a.name == out.name) {
                return Err(Error::DuplicateAxis(out.name.clone()));
            }
            let w: usize = history.iter().map(|a| a.card).product();
            let bound = own.card * w + problem.slack(enc, l, k);
            if out.card > bound {
                return Err(Error::Cardinality(format!(
                    "|{}| = {} exceeds {} (round {l}, encoder {enc})",
                    out.name, out.card, bound
                )));
            }
            history.push(out.clone());
        }
        Ok(Self { problem, x1, x2, channels })
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn rounds(&self) -> usize {
        self.channels.len() / 2
    }

    pub fn channels(&self) -> &[Channel<T>] {
        &self.channels
    }

    pub fn x1(&self) -> &Axis {
        &self.x1
    }

    pub fn x2(&self) -> &Axis {
        &self.x2
    }

    /// Output names in production order.
    pub fn descriptions(&self) -> Vec<&str> {
        self.channels.iter().map(|c| c.output().name.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: &str) -> Axis {
        Axis::new(n, 2)
    }

    #[test]
    fn accepts_well_formed_rounds() {
        let v1 = Channel::<f64>::constant(vec![x("X1")], "V1").unwrap();
        let v2 = Channel::constant(vec![x("X2"), Axis::new("V1", 1)], "V2").unwrap();
        let s = RoundSchedule::new(Problem::TwoWay, x("X1"), x("X2"), vec![v1, v2]).unwrap();
        assert_eq!(s.rounds(), 1);
        assert_eq!(s.descriptions(), ["V1", "V2"]);
    }

    fn fixed(inputs: Vec<Axis>, out: Axis) -> Channel<f64> {
        Channel::from_fn(inputs, out, |_, v| if v == 0 { 1.0 } else { 0.0 }).unwrap()
    }

    #[test]
    fn rejects_wrong_inputs_and_sizes() {
        let v1 = fixed(vec![x("X1")], Axis::new("V1", 1));
        let bad = fixed(vec![x("X2")], Axis::new("V2", 1));
        let r = RoundSchedule::new(Problem::TwoWay, x("X1"), x("X2"), vec![v1.clone(), bad]);
        assert!(matches!(r, Err(Error::Structure(_))));

        let wide = fixed(vec![x("X1")], Axis::new("V1", 6));
        let v2 = fixed(vec![x("X2"), Axis::new("V1", 6)], Axis::new("V2", 1));
        let r = RoundSchedule::new(Problem::TwoWay, x("X1"), x("X2"), vec![wide, v2]);
        assert!(matches!(r, Err(Error::Cardinality(_))));

        // Last encoder-2 description: |V2| <= 2 |V1| + 1.
        let v2 = fixed(vec![x("X2"), Axis::new("V1", 1)], Axis::new("V2", 4));
        for problem in [Problem::TwoWay, Problem::Distributed] {
            let r = RoundSchedule::new(problem, x("X1"), x("X2"), vec![v1.clone(), v2.clone()]);
            assert!(matches!(r, Err(Error::Cardinality(_))));
        }
        let v2 = fixed(vec![x("X2"), Axis::new("V1", 1)], Axis::new("V2", 3));
        assert!(RoundSchedule::new(Problem::TwoWay, x("X1"), x("X2"), vec![v1, v2]).is_ok());
    }
}
