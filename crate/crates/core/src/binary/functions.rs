//! The crossover-parametrized rate `g` and relevance gain `f`, their
//! derivatives and the inverse of `g` on `[0, 1/2]`.

use super::BinaryModel;
use crate::error::{Error, Result};
use crate::info::{h2_prime, h2_raw, star_raw};
use crate::scalar::Real;

const G_INV_ITERS: usize = 100;

fn check_r<T: Real>(r: T) -> Result<()> {
    if r >= T::zero() && r <= T::one() {
        Ok(())
    } else {
        Err(Error::domain("crossover r", r.to_f64_lossy(), "[0, 1]"))
    }
}

/// `d/dr h2(r * c) = (1 - 2c) h2'(r * c)`, with the `c = 1/2` case exact.
#[inline]
fn dh2_star<T: Real>(r: T, c: T) -> T {
    let k = T::one() - T::c(2.0) * c;
    if k == T::zero() {
        T::zero()
    } else {
        k * h2_prime(star_raw(r, c))
    }
}

impl<T: Real> BinaryModel<T> {
    /// Crossovers of the two conditional links of `Y` given `X1` and `V`
    /// appearing in the second form of `f`.
    fn gamma_delta(&self) -> (T, T, T) {
        let pq = star_raw(self.p, self.q);
        let gamma = self.p * self.q / (T::one() - pq);
        let delta = self.p * (T::one() - self.q) / pq;
        (pq, gamma, delta)
    }

    pub(crate) fn g_raw(&self, r: T) -> T {
        h2_raw(star_raw(r, self.q)) - h2_raw(r)
    }

    pub(crate) fn f_raw(&self, r: T) -> T {
        let (p, q) = (self.p, self.q);
        let one = T::one();
        let qr = star_raw(q, r);
        let pq = star_raw(p, q);
        let a = q * r / (one - qr);
        let b = (one - q) * r / qr;
        h2_raw(pq) - (one - qr) * h2_raw(star_raw(p, a)) - qr * h2_raw(star_raw(p, b))
    }

    pub(crate) fn f_alt_raw(&self, r: T) -> T {
        let (pq, gamma, delta) = self.gamma_delta();
        h2_raw(star_raw(r, self.q)) - (T::one() - pq) * h2_raw(star_raw(r, gamma)) - pq * h2_raw(star_raw(r, delta))
    }

    pub(crate) fn g_prime_raw(&self, r: T) -> T {
        dh2_star(r, self.q) - h2_prime(r)
    }

    pub(crate) fn f_prime_raw(&self, r: T) -> T {
        let (pq, gamma, delta) = self.gamma_delta();
        dh2_star(r, self.q) - (T::one() - pq) * dh2_star(r, gamma) - pq * dh2_star(r, delta)
    }

    pub(crate) fn g_inverse_raw(&self, rate: T) -> T {
        let (mut lo, mut hi) = (T::zero(), T::c(0.5));
        for _ in 0..G_INV_ITERS {
            let mid = (lo + hi) * T::c(0.5);
            if self.g_raw(mid) > rate {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= T::epsilon() * T::c(0.25) {
                break;
            }
        }
        (lo + hi) * T::c(0.5)
    }

    /// Rate `g(r) = h2(r * q) - h2(r)` of a BSC(r) description of `X1`
    /// decoded with side information `X2`.
    pub fn g(&self, r: T) -> Result<T> {
        check_r(r)?;
        Ok(self.g_raw(r))
    }

    /// Relevance gain of a BSC(r) description over the side information alone:
    ///
    /// `f(r) = h2(p*q) - (1 - q*r) h2(p * qr/(1 - q*r)) - (q*r) h2(p * (1-q)r/(q*r))`.
    pub fn f(&self, r: T) -> Result<T> {
        check_r(r)?;
        Ok(self.f_raw(r))
    }

    /// Equivalent form `h2(r*q) - (1 - p*q) h2(r*γ) - (p*q) h2(r*δ)` with
    /// `γ = pq/(1 - p*q)` and `δ = p(1-q)/(p*q)`.
    pub fn f_alt(&self, r: T) -> Result<T> {
        check_r(r)?;
        Ok(self.f_alt_raw(r))
    }

    /// `g'(r)`; infinite at `r = 0`.
    pub fn g_prime(&self, r: T) -> Result<T> {
        check_r(r)?;
        Ok(self.g_prime_raw(r))
    }

    /// `f'(r)`, differentiating the second form term by term.
    pub fn f_prime(&self, r: T) -> Result<T> {
        check_r(r)?;
        Ok(self.f_prime_raw(r))
    }

    /// The unique `r` in `[0, 1/2]` with `g(r) = rate`.
    pub fn g_inverse(&self, rate: T) -> Result<T> {
        let top = h2_raw(self.q);
        if !(rate >= T::zero() && rate <= top) {
            return Err(Error::domain("rate", rate.to_f64_lossy(), format!("[0, h2(q)] = [0, {}]", top)));
        }
        if rate == top {
            return Ok(T::zero());
        }
        if rate == T::zero() {
            return Ok(T::c(0.5));
        }
        Ok(self.g_inverse_raw(rate))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: f64, q: f64) -> BinaryModel<f64> {
        BinaryModel::new(p, q).unwrap()
    }

    #[test]
    fn g_examples() {
        let b = m(0.1, 0.1);
        assert!((b.g(0.0).unwrap() - 0.468_995_593_589_281_2).abs() < 1e-15);
        assert!(b.g(0.5).unwrap().abs() < 1e-15);
        assert!((b.g(0.25).unwrap() - 0.070_012_774_771_559_8).abs() < 1e-12);
        assert!(b.g(1.5).is_err());
    }

    #[test]
    fn f_examples() {
        let b = m(0.1, 0.1);
        assert!((b.f(0.0).unwrap() - 0.211_081_452_138_998_6).abs() < 1e-12);
        assert!(b.f(0.5).unwrap().abs() < 1e-15);
        for (p, q) in [(0.1, 0.1), (0.05, 0.3), (0.3, 0.2)] {
            let b = m(p, q);
            assert!((b.f(0.2).unwrap() - b.f_alt(0.2).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn g_inverse_round_trip() {
        let b = m(0.1, 0.1);
        assert_eq!(b.g_inverse(h2_raw(0.1)).unwrap(), 0.0);
        assert_eq!(b.g_inverse(0.0).unwrap(), 0.5);
        let r = b.g_inverse(0.1).unwrap();
        assert!((b.g(r).unwrap() - 0.1).abs() < 1e-10);
        assert!(b.g_inverse(0.5).is_err());
    }

    #[test]
    fn derivatives_match_central_differences() {
        let h = 1e-6;
        for (p, q) in [(0.1, 0.1), (0.05, 0.3), (0.3, 0.05)] {
            let b = m(p, q);
            for i in 1..50 {
                let r = 0.01 + 0.96 * i as f64 / 50.0;
                let fd_g = (b.g_raw(r + h) - b.g_raw(r - h)) / (2.0 * h);
                let fd_f = (b.f_raw(r + h) - b.f_raw(r - h)) / (2.0 * h);
                assert!((b.g_prime_raw(r) - fd_g).abs() < 1e-5, "g' at {r}");
                assert!((b.f_prime_raw(r) - fd_f).abs() < 1e-5, "f' at {r}");
            }
        }
    }
}
