//! Scalar binary-entropy utilities.

use super::pmf::{Axis, JointPmf};
use crate::error::{Error, Result};
use crate::scalar::Real;

const H2_INV_ITERS: usize = 60;

fn unit_interval<T: Real>(what: &'static str, x: T) -> Result<()> {
    if x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(Error::domain(what, x.to_f64_lossy(), "[0, 1]"))
    }
}

/// Binary entropy without range checks; 0·log 0 = 0.
#[inline]
pub(crate) fn h2_raw<T: Real>(x: T) -> T {
    if x <= T::zero() || x >= T::one() {
        return T::zero();
    }
    let y = T::one() - x;
    -(x * x.log2() + y * y.log2())
}

/// Derivative of `h2`: `log2((1 - x) / x)`.
#[inline]
pub(crate) fn h2_prime<T: Real>(x: T) -> T {
    ((T::one() - x) / x).log2()
}

/// Binary convolution `a(1-b) + b(1-a)`.
#[inline]
pub(crate) fn star_raw<T: Real>(a: T, b: T) -> T {
    a * (T::one() - b) + b * (T::one() - a)
}

/// Inverse of `h2` on `[0, 1/2]` by bisection.
pub(crate) fn h2_inv_raw<T: Real>(y: T) -> T {
    if y <= T::zero() {
        return T::zero();
    }
    if y >= T::one() {
        return T::c(0.5);
    }
    let (mut lo, mut hi) = (T::zero(), T::c(0.5));
    for _ in 0..H2_INV_ITERS {
        let mid = (lo + hi) * T::c(0.5);
        if h2_raw(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * T::c(0.5)
}

/// Binary entropy `h2(x)` in bits.
pub fn h2<T: Real>(x: T) -> Result<T> {
    unit_interval("h2 argument", x)?;
    Ok(h2_raw(x))
}

/// The unique `x` in `[0, 1/2]` with `h2(x) = y`.
pub fn h2_inv<T: Real>(y: T) -> Result<T> {
    unit_interval("h2_inv argument", y)?;
    Ok(h2_inv_raw(y))
}

/// Binary convolution, the crossover of two cascaded BSCs.
pub fn star<T: Real>(a: T, b: T) -> Result<T> {
    unit_interval("star argument", a)?;
    unit_interval("star argument", b)?;
    Ok(star_raw(a, b))
}

/// Mrs. Gerber lower bound `h2(h2_inv(h) * p)` on the output conditional
/// entropy of a BSC with crossover `p` whose input has conditional entropy `h`.
pub fn gerber_bound<T: Real>(h: T, p: T) -> Result<T> {
    unit_interval("conditional entropy", h)?;
    if !(p >= T::zero() && p <= T::c(0.5)) {
        return Err(Error::domain("crossover", p.to_f64_lossy(), "[0, 1/2]"));
    }
    Ok(h2_raw(star_raw(h2_inv_raw(h), p)))
}

/// Doubly symmetric binary pair: `a` uniform, `b = a xor Bern(crossover)`.
pub fn binary_pair<T: Real>(a: &str, b: &str, crossover: T) -> Result<JointPmf<T>> {
    unit_interval("crossover", crossover)?;
    let half = T::c(0.5);
    JointPmf::from_fn(vec![Axis::new(a, 2), Axis::new(b, 2)], |i| {
        if i[0] == i[1] {
            half * (T::one() - crossover)
        } else {
            half * crossover
        }
    })
}
