//! Derivative-free scalar solvers.

use crate::scalar::Real;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal `f` on `[a, b]` by golden-section search until the
/// bracket is narrower than `tol`. Returns `(argmax, max)`.
pub fn golden_max<T: Real>(f: impl Fn(T) -> T, mut a: T, mut b: T, tol: T) -> (T, T) {
    let r = T::c(INV_PHI);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimizes a unimodal `f` on `[a, b]`.
pub fn golden_min<T: Real>(f: impl Fn(T) -> T, a: T, b: T, tol: T) -> (T, T) {
    let (x, v) = golden_max(|x| -f(x), a, b, tol);
    (x, -v)
}

/// Root of `f` in `[lo, hi]` given `f(lo)` and `f(hi)` of opposite sign.
pub fn bisect<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, iters: usize) -> T {
    let lo_sign = f(lo) > T::zero();
    for _ in 0..iters {
        let mid = (lo + hi) * T::c(0.5);
        if (f(mid) > T::zero()) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * T::c(0.5)
}

/// Grid scan followed by golden-section refinement around the best grid
/// point. Suited to smooth objectives with a few local maxima.
pub fn grid_golden_max<T: Real>(f: impl Fn(T) -> T, a: T, b: T, n: usize, tol: T) -> (T, T) {
    let n = n.max(2);
    let step = (b - a) / T::c((n - 1) as f64);
    let mut best = (a, f(a));
    for i in 1..n {
        let x = if i == n - 1 { b } else { a + step * T::c(i as f64) };
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    let lo = (best.0 - step).max(a);
    let hi = (best.0 + step).min(b);
    let refined = golden_max(&f, lo, hi, tol);
    if refined.1 > best.1 {
        refined
    } else {
        best
    }
}
