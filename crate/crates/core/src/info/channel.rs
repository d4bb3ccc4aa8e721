use serde::{Deserialize, Serialize};

use super::pmf::{check_axes, for_each_mapped, normalize_block, strides, Axis, JointPmf};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Conditional pmf `p(output | inputs)`, stored row-major over the input
/// axes with the output symbol varying fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChannel<T>", bound(deserialize = "T: Real"))]
pub struct Channel<T> {
    inputs: Vec<Axis>,
    output: Axis,
    table: Vec<T>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
struct RawChannel<T> {
    inputs: Vec<Axis>,
    output: Axis,
    table: Vec<T>,
}

impl<T: Real> TryFrom<RawChannel<T>> for Channel<T> {
    type Error = Error;

    fn try_from(raw: RawChannel<T>) -> Result<Self> {
        Channel::new(raw.inputs, raw.output, raw.table)
    }
}

impl<T: Real> Channel<T> {
    pub fn new(inputs: Vec<Axis>, output: Axis, mut table: Vec<T>) -> Result<Self> {
        let mut all = inputs.clone();
        all.push(output.clone());
        let size = check_axes(&all)?;
        if table.len() != size {
            return Err(Error::Argument(format!(
                "channel table has {} entries, axes require {size}",
                table.len()
            )));
        }
        for (row, block) in table.chunks_mut(output.card).enumerate() {
            normalize_block(block, || format!("channel `{}` row {row}", output.name))?;
        }
        Ok(Self { inputs, output, table })
    }

    /// Builds a channel from `f(input_index, output_symbol)`.
    pub fn from_fn(inputs: Vec<Axis>, output: Axis, mut f: impl FnMut(&[usize], usize) -> T) -> Result<Self> {
        let rows: usize = inputs.iter().map(|a| a.card).product();
        let cards: Vec<usize> = inputs.iter().map(|a| a.card).collect();
        let mut table = Vec::with_capacity(rows * output.card);
        let mut idx = vec![0usize; inputs.len()];
        for _ in 0..rows {
            for v in 0..output.card {
                table.push(f(&idx, v));
            }
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < cards[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        Self::new(inputs, output, table)
    }

    /// `V = X` on a single input axis.
    pub fn identity(input: Axis, output_name: impl Into<String>) -> Result<Self> {
        let output = Axis::new(output_name, input.card);
        Self::from_fn(vec![input], output, |i, v| if i[0] == v { T::one() } else { T::zero() })
    }

    /// Output with a single symbol: carries no information.
    pub fn constant(inputs: Vec<Axis>, output_name: impl Into<String>) -> Result<Self> {
        Self::from_fn(inputs, Axis::new(output_name, 1), |_, _| T::one())
    }

    /// Binary symmetric channel with the given crossover.
    pub fn bsc(input: Axis, output_name: impl Into<String>, crossover: T) -> Result<Self> {
        if input.card != 2 {
            return Err(Error::Argument(format!("BSC input `{}` must be binary", input.name)));
        }
        if !(crossover >= T::zero() && crossover <= T::one()) {
            return Err(Error::domain("crossover", crossover.to_f64_lossy(), "[0, 1]"));
        }
        Self::from_fn(vec![input], Axis::new(output_name, 2), |i, v| {
            if i[0] == v {
                T::one() - crossover
            } else {
                crossover
            }
        })
    }

    pub fn inputs(&self) -> &[Axis] {
        &self.inputs
    }

    pub fn input_names(&self) -> Vec<&str> {
        self.inputs.iter().map(|a| a.name.as_str()).collect()
    }

    pub fn output(&self) -> &Axis {
        &self.output
    }

    pub fn table(&self) -> &[T] {
        &self.table
    }

    /// `p(v | inputs = idx)`.
    pub fn prob(&self, idx: &[usize], v: usize) -> T {
        let s = strides(&self.inputs);
        let row: usize = idx.iter().zip(&s).map(|(i, s)| i * s).sum();
        self.table[row * self.output.card + v]
    }

    /// Same channel with its output symbols permuted: new symbol `perm[v]`
    /// carries the mass of old symbol `v`.
    pub fn relabel_output(&self, perm: &[usize]) -> Result<Self> {
        let n = self.output.card;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
            return Err(Error::Argument("relabeling is not a permutation".into()));
        }
        let mut table = self.table.clone();
        for (row, block) in self.table.chunks(n).enumerate() {
            for v in 0..n {
                table[row * n + perm[v]] = block[v];
            }
        }
        Ok(Self { inputs: self.inputs.clone(), output: self.output.clone(), table })
    }

    /// Same channel with its output axis renamed.
    pub fn with_output_name(mut self, name: impl Into<String>) -> Self {
        self.output.name = name.into();
        self
    }
}

/// Extends `p` with a new axis `V` drawn from `ch` given its inputs, so that
/// `V` is conditionally independent of every other axis given the inputs.
///
/// The last output symbol absorbs the rounding remainder of each cell, which
/// keeps the marginal on the original axes bit-equal to `p` when summed in
/// symbol order.
pub fn compose_markov<T: Real>(p: &JointPmf<T>, ch: &Channel<T>) -> Result<JointPmf<T>> {
    let out = ch.output();
    if p.has_axis(&out.name) {
        return Err(Error::DuplicateAxis(out.name.clone()));
    }
    let mut map = vec![0usize; p.axes().len()];
    let in_strides = strides(ch.inputs());
    for (j, a) in ch.inputs().iter().enumerate() {
        let k = p.axis_index(&a.name)?;
        if p.axes()[k].card != a.card {
            return Err(Error::Argument(format!(
                "channel input `{}` has cardinality {}, pmf axis has {}",
                a.name,
                a.card,
                p.axes()[k].card
            )));
        }
        map[k] = in_strides[j];
    }
    let n = out.card;
    let src = p.table();
    let mut table = vec![T::zero(); src.len() * n];
    for_each_mapped(&p.cards(), &map, |flat, row| {
        let mass = src[flat];
        let cond = &ch.table[row * n..(row + 1) * n];
        let cell = &mut table[flat * n..(flat + 1) * n];
        // Largest prefix whose running sum stays at or below `mass`; the
        // next cell takes the remainder so the sequential sum is exact.
        let mut acc = T::zero();
        let mut k = 0;
        while k < n - 1 {
            let c = mass * cond[k];
            if acc + c > mass {
                break;
            }
            cell[k] = c;
            acc = acc + c;
            k += 1;
        }
        // A rounding tie can make `mass` unreachable from `acc`; shaving the
        // previous cell by growing half-ulp steps moves `acc` off the tie.
        let prev = if k > 0 { cell[k - 1] } else { T::zero() };
        for i in 1..=64 {
            if let Some(x) = remainder(mass, acc) {
                cell[k] = x;
                break;
            }
            if k == 0 {
                break;
            }
            cell[k - 1] = (prev - acc * T::epsilon() * T::c(0.5 * i as f64)).max(T::zero());
            acc = cell[..k].iter().fold(T::zero(), |a, &c| a + c);
        }
    });
    let mut axes = p.axes().to_vec();
    axes.push(out.clone());
    Ok(JointPmf::from_parts_unchecked(axes, table))
}

/// Nonnegative `x` with `acc + x == total` in floating point, found by
/// bisection on the monotone map `x -> acc + x`; `None` when no such `x`
/// exists.
fn remainder<T: Real>(total: T, acc: T) -> Option<T> {
    if acc > total {
        return None;
    }
    let x = total - acc;
    if acc + x == total {
        return Some(x);
    }
    let (mut lo, mut hi) = (T::zero(), x + x + total * T::epsilon());
    for _ in 0..256 {
        let mid = lo + (hi - lo) * T::c(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = acc + mid;
        if s == total {
            return Some(mid);
        }
        if s < total {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    [lo, hi].into_iter().find(|&x| acc + x == total)
}
