//! Small dense symmetric-matrix helpers (row-major, `n <= ~6`).

use crate::scalar::Real;

/// Determinant by LU factorization with partial pivoting.
pub(crate) fn det<T: Real>(a: &[T], n: usize) -> T {
    let mut m = a.to_vec();
    let mut d = T::one();
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| m[i * n + k].abs().partial_cmp(&m[j * n + k].abs()).unwrap()).unwrap();
        if m[piv * n + k] == T::zero() {
            return T::zero();
        }
        if piv != k {
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            d = -d;
        }
        let p = m[k * n + k];
        d = d * p;
        for i in k + 1..n {
            let f = m[i * n + k] / p;
            for j in k..n {
                m[i * n + j] = m[i * n + j] - f * m[k * n + j];
            }
        }
    }
    d
}

/// Inverse by Gauss-Jordan elimination with partial pivoting; `None` when singular.
pub(crate) fn inverse<T: Real>(a: &[T], n: usize) -> Option<Vec<T>> {
    let mut m = a.to_vec();
    let mut inv = vec![T::zero(); n * n];
    for i in 0..n {
        inv[i * n + i] = T::one();
    }
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| m[i * n + k].abs().partial_cmp(&m[j * n + k].abs()).unwrap()).unwrap();
        if m[piv * n + k] == T::zero() {
            return None;
        }
        for j in 0..n {
            m.swap(k * n + j, piv * n + j);
            inv.swap(k * n + j, piv * n + j);
        }
        let p = m[k * n + k];
        for j in 0..n {
            m[k * n + j] = m[k * n + j] / p;
            inv[k * n + j] = inv[k * n + j] / p;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i * n + k];
            if f == T::zero() {
                continue;
            }
            for j in 0..n {
                m[i * n + j] = m[i * n + j] - f * m[k * n + j];
                inv[i * n + j] = inv[i * n + j] - f * inv[k * n + j];
            }
        }
    }
    Some(inv)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub(crate) fn symmetric_eigenvalues<T: Real>(a: &[T], n: usize) -> Vec<T> {
    let mut m = a.to_vec();
    for _ in 0..64 {
        let off: T = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| m[i * n + j] * m[i * n + j]).sum();
        if off <= T::epsilon() * T::epsilon() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (T::c(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| m[i * n + i]).collect()
}

/// Principal submatrix on `idx`.
pub(crate) fn submatrix<T: Real>(a: &[T], n: usize, idx: &[usize]) -> Vec<T> {
    idx.iter().flat_map(|&i| idx.iter().map(move |&j| a[i * n + j])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse_of_3x3() {
        let a = [4.0, 1.0, 0.5, 1.0, 3.0, 0.2, 0.5, 0.2, 2.0f64];
        let d = det(&a, 3);
        let expected = 4.0 * (6.0 - 0.04) - 1.0 * (2.0 - 0.1) + 0.5 * (0.2 - 1.5);
        assert!((d - expected).abs() < 1e-12);
        let inv = inverse(&a, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| a[i * 3 + k] * inv[k * 3 + j]).sum();
                assert!((v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
        assert!(inverse(&[1.0, 2.0, 2.0, 4.0f64], 2).is_none());
    }

    #[test]
    fn jacobi_eigenvalues() {
        let a = [2.0, 1.0, 1.0, 2.0f64];
        let mut e = symmetric_eigenvalues(&a, 2);
        e.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((e[0] - 1.0).abs() < 1e-12 && (e[1] - 3.0).abs() < 1e-12);
    }
}
