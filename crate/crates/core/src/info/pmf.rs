use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Absolute deviation from 1 accepted as-is on construction.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Largest deviation from 1 that is silently renormalized.
pub const RENORMALIZE_TOL: f64 = 1e-9;
/// Conditioning events below this probability are rejected.
pub const MIN_EVENT_PROB: f64 = 1e-15;

/// A named finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub card: usize,
}

impl Axis {
    pub fn new(name: impl Into<String>, card: usize) -> Self {
        Self { name: name.into(), card }
    }
}

/// Dense joint probability table over named axes, row-major with the last
/// axis varying fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPmf<T>", bound(deserialize = "T: Real"))]
pub struct JointPmf<T> {
    axes: Vec<Axis>,
    table: Vec<T>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
struct RawPmf<T> {
    axes: Vec<RawAxis>,
    table: Vec<T>,
}

#[derive(Deserialize)]
struct RawAxis {
    name: String,
    card: usize,
}

impl<T: Real> TryFrom<RawPmf<T>> for JointPmf<T> {
    type Error = Error;

    fn try_from(raw: RawPmf<T>) -> Result<Self> {
        let axes = raw.axes.into_iter().map(|a| Axis::new(a.name, a.card)).collect();
        JointPmf::new(axes, raw.table)
    }
}

pub(crate) fn check_axes(axes: &[Axis]) -> Result<usize> {
    let mut size = 1usize;
    for (i, a) in axes.iter().enumerate() {
        if a.card == 0 {
            return Err(Error::Argument(format!("axis `{}` has cardinality 0", a.name)));
        }
        if axes[..i].iter().any(|b| b.name == a.name) {
            return Err(Error::DuplicateAxis(a.name.clone()));
        }
        size = size
            .checked_mul(a.card)
            .ok_or_else(|| Error::Argument("table size overflows".into()))?;
    }
    Ok(size)
}

/// Validates a block of probabilities that must sum to one, renormalizing
/// small deviations in place.
pub(crate) fn normalize_block<T: Real>(block: &mut [T], what: impl Fn() -> String) -> Result<()> {
    if let Some(bad) = block.iter().find(|v| !v.is_finite() || **v < T::zero()) {
        return Err(Error::NotNormalized(format!("{}: entry {bad} is negative or not finite", what())));
    }
    let sum: T = block.iter().copied().sum();
    let dev = (sum - T::one()).abs();
    if dev <= T::tolerance(NORMALIZATION_TOL) {
        return Ok(());
    }
    if dev <= T::tolerance(RENORMALIZE_TOL) {
        block.iter_mut().for_each(|v| *v = *v / sum);
        return Ok(());
    }
    Err(Error::NotNormalized(format!("{}: entries sum to {sum}", what())))
}

/// Row-major strides for `axes`.
pub(crate) fn strides(axes: &[Axis]) -> Vec<usize> {
    let mut s = vec![1usize; axes.len()];
    for k in (0..axes.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * axes[k + 1].card;
    }
    s
}

/// Walks every cell of a table with the given cardinalities, calling
/// `f(flat, mapped)` where `mapped = Σ idx[k] * map_strides[k]`.
pub(crate) fn for_each_mapped(cards: &[usize], map_strides: &[usize], mut f: impl FnMut(usize, usize)) {
    let n: usize = cards.iter().product();
    let mut idx = vec![0usize; cards.len()];
    let mut mapped = 0usize;
    for flat in 0..n {
        f(flat, mapped);
        // odometer increment
        for k in (0..cards.len()).rev() {
            idx[k] += 1;
            mapped += map_strides[k];
            if idx[k] < cards[k] {
                break;
            }
            mapped -= map_strides[k] * idx[k];
            idx[k] = 0;
        }
    }
}

impl<T: Real> JointPmf<T> {
    pub fn new(axes: Vec<Axis>, mut table: Vec<T>) -> Result<Self> {
        let size = check_axes(&axes)?;
        if table.len() != size {
            return Err(Error::Argument(format!(
                "table has {} entries, axes require {size}",
                table.len()
            )));
        }
        normalize_block(&mut table, || "joint pmf".to_string())?;
        Ok(Self { axes, table })
    }

    /// Builds a table by evaluating `f` on every multi-index.
    pub fn from_fn(axes: Vec<Axis>, mut f: impl FnMut(&[usize]) -> T) -> Result<Self> {
        let size = check_axes(&axes)?;
        let cards: Vec<usize> = axes.iter().map(|a| a.card).collect();
        let mut table = Vec::with_capacity(size);
        let mut idx = vec![0usize; axes.len()];
        for _ in 0..size {
            table.push(f(&idx));
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < cards[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        Self::new(axes, table)
    }

    pub fn uniform(axes: Vec<Axis>) -> Result<Self> {
        let size = check_axes(&axes)?;
        let v = T::one() / T::c(size as f64);
        Self::new(axes, vec![v; size])
    }

    /// Point mass on `at`.
    pub fn point_mass(axes: Vec<Axis>, at: &[usize]) -> Result<Self> {
        if at.len() != axes.len() || at.iter().zip(&axes).any(|(i, a)| *i >= a.card) {
            return Err(Error::Argument("point-mass index out of range".into()));
        }
        Self::from_fn(axes, |idx| if idx == at { T::one() } else { T::zero() })
    }

    /// Independent product `p(a) q(b)`; axis names must be disjoint.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut axes = self.axes.clone();
        axes.extend(other.axes.iter().cloned());
        check_axes(&axes)?;
        let mut table = Vec::with_capacity(self.table.len() * other.table.len());
        for a in &self.table {
            for b in &other.table {
                table.push(*a * *b);
            }
        }
        Ok(Self { axes, table })
    }

    pub(crate) fn from_parts_unchecked(axes: Vec<Axis>, table: Vec<T>) -> Self {
        debug_assert_eq!(axes.iter().map(|a| a.card).product::<usize>(), table.len());
        Self { axes, table }
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn table(&self) -> &[T] {
        &self.table
    }

    pub fn axis_names(&self) -> Vec<&str> {
        self.axes.iter().map(|a| a.name.as_str()).collect()
    }

    pub fn axis_index(&self, name: &str) -> Result<usize> {
        self.axes
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownAxis(name.to_string()))
    }

    pub fn axis(&self, name: &str) -> Result<&Axis> {
        Ok(&self.axes[self.axis_index(name)?])
    }

    pub fn has_axis(&self, name: &str) -> bool {
        self.axes.iter().any(|a| a.name == name)
    }

    pub fn card(&self, name: &str) -> Result<usize> {
        Ok(self.axis(name)?.card)
    }

    /// Probability of one cell.
    pub fn prob(&self, idx: &[usize]) -> T {
        let s = strides(&self.axes);
        self.table[idx.iter().zip(&s).map(|(i, s)| i * s).sum::<usize>()]
    }

    pub(crate) fn cards(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.card).collect()
    }

    /// Resolves names to positions, rejecting unknown and repeated names.
    pub(crate) fn resolve(&self, names: &[&str]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Argument(format!("axis `{n}` listed twice")));
            }
            out.push(self.axis_index(n)?);
        }
        Ok(out)
    }

    /// Marginal table over the axes at `positions`, in that order.
    pub(crate) fn marginal_table(&self, positions: &[usize]) -> Vec<T> {
        let kept: Vec<Axis> = positions.iter().map(|&k| self.axes[k].clone()).collect();
        let ks = strides(&kept);
        let mut map = vec![0usize; self.axes.len()];
        for (j, &k) in positions.iter().enumerate() {
            map[k] = ks[j];
        }
        let size: usize = kept.iter().map(|a| a.card).product();
        let mut out = vec![T::zero(); size];
        for_each_mapped(&self.cards(), &map, |flat, m| out[m] = out[m] + self.table[flat]);
        out
    }

    /// Marginal over `keep`, with axes in the order given.
    pub fn marginalize(&self, keep: &[&str]) -> Result<Self> {
        let pos = self.resolve(keep)?;
        if pos.is_empty() {
            return Err(Error::Argument("marginalize needs at least one axis".into()));
        }
        let axes = pos.iter().map(|&k| self.axes[k].clone()).collect();
        Ok(Self { axes, table: self.marginal_table(&pos) })
    }

    /// Conditional pmf of the remaining axes given `axis = value`.
    pub fn condition(&self, axis: &str, value: usize) -> Result<Self> {
        let k = self.axis_index(axis)?;
        if value >= self.axes[k].card {
            return Err(Error::Argument(format!("value {value} out of range for `{axis}`")));
        }
        if self.axes.len() == 1 {
            return Err(Error::Argument("cannot condition away the only axis".into()));
        }
        let rest: Vec<Axis> = self.axes.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, a)| a.clone()).collect();
        let s = strides(&self.axes);
        let mut table = Vec::with_capacity(self.table.len() / self.axes[k].card);
        for (flat, v) in self.table.iter().enumerate() {
            if (flat / s[k]) % self.axes[k].card == value {
                table.push(*v);
            }
        }
        let mass: T = table.iter().copied().sum();
        if mass <= T::c(MIN_EVENT_PROB) {
            return Err(Error::DegenerateEvent {
                axis: axis.to_string(),
                value,
                prob: mass.to_f64_lossy(),
            });
        }
        table.iter_mut().for_each(|v| *v = *v / mass);
        Ok(Self { axes: rest, table })
    }

    /// Renames one axis.
    pub fn rename(mut self, from: &str, to: &str) -> Result<Self> {
        let k = self.axis_index(from)?;
        if from != to && self.has_axis(to) {
            return Err(Error::DuplicateAxis(to.to_string()));
        }
        self.axes[k].name = to.to_string();
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> JointPmf<f64> {
        JointPmf::new(
            vec![Axis::new("A", 2), Axis::new("B", 3)],
            vec![0.1, 0.2, 0.05, 0.15, 0.3, 0.2],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_tables() {
        let axes = vec![Axis::new("A", 2)];
        assert!(matches!(JointPmf::new(axes.clone(), vec![0.5, 0.6]), Err(Error::NotNormalized(_))));
        assert!(matches!(JointPmf::new(axes.clone(), vec![1.1, -0.1]), Err(Error::NotNormalized(_))));
        assert!(matches!(JointPmf::<f64>::new(axes, vec![1.0]), Err(Error::Argument(_))));
        let dup = vec![Axis::new("A", 2), Axis::new("A", 2)];
        assert!(matches!(JointPmf::<f64>::uniform(dup), Err(Error::DuplicateAxis(_))));
    }

    #[test]
    fn small_deviation_is_renormalized() {
        let p = JointPmf::new(vec![Axis::new("A", 2)], vec![0.5, 0.5 + 5e-10]).unwrap();
        let s: f64 = p.table().iter().sum();
        assert!((s - 1.0).abs() < 1e-15);
    }

    #[test]
    fn marginalize_all_axes_is_identity() {
        let p = pair();
        assert_eq!(p.marginalize(&["A", "B"]).unwrap(), p);
    }

    #[test]
    fn marginalize_reorders() {
        let p = pair();
        let q = p.marginalize(&["B", "A"]).unwrap();
        assert_eq!(q.prob(&[2, 1]), p.prob(&[1, 2]));
        assert_eq!(q.axis_names(), vec!["B", "A"]);
    }

    #[test]
    fn marginal_of_product_is_factor() {
        let a = JointPmf::new(vec![Axis::new("A", 2)], vec![0.3f64, 0.7]).unwrap();
        let b = JointPmf::new(vec![Axis::new("B", 3)], vec![0.2, 0.5, 0.3]).unwrap();
        let ab = a.product(&b).unwrap();
        let m = ab.marginalize(&["B"]).unwrap();
        for (x, y) in m.table().iter().zip(b.table()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn condition_uniform_pair() {
        let p = JointPmf::<f64>::uniform(vec![Axis::new("A", 2), Axis::new("B", 4)]).unwrap();
        let c = p.condition("A", 1).unwrap();
        assert_eq!(c.axis_names(), vec!["B"]);
        assert!(c.table().iter().all(|v| (v - 0.25).abs() < 1e-15));
    }

    #[test]
    fn condition_on_null_event_fails() {
        let p = JointPmf::new(vec![Axis::new("A", 2), Axis::new("B", 2)], vec![0.5, 0.5, 0.0, 0.0]).unwrap();
        assert!(matches!(p.condition("A", 1), Err(Error::DegenerateEvent { .. })));
        assert!(matches!(p.condition("C", 0), Err(Error::UnknownAxis(_))));
    }

    #[test]
    fn json_shape() {
        let p = JointPmf::new(vec![Axis::new("X", 2)], vec![0.25, 0.75]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"axes":[{"name":"X","card":2}],"table":[0.25,0.75]}"#);
        let back: JointPmf<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"axes":[{"name":"X","card":2}],"table":[0.25,0.25]}"#;
        assert!(serde_json::from_str::<JointPmf<f64>>(bad).is_err());
    }
}
