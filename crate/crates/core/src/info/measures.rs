//! Entropy and mutual-information functionals, in bits.

use super::pmf::JointPmf;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Negative information values above `-CLAMP_TOL` are reported as zero.
pub const CLAMP_TOL: f64 = 1e-10;

fn table_entropy<T: Real>(table: &[T]) -> T {
    table
        .iter()
        .filter(|p| **p > T::zero())
        .map(|&p| -p * p.log2())
        .sum()
}

fn clamp<T: Real>(v: T) -> T {
    if v < T::zero() && v > -T::tolerance(CLAMP_TOL) {
        T::zero()
    } else {
        v
    }
}

fn disjoint(sets: &[&[&str]]) -> Result<()> {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if let Some(n) = a.iter().find(|n| b.contains(n)) {
                return Err(Error::OverlappingAxes(n.to_string()));
            }
        }
    }
    Ok(())
}

impl<T: Real> JointPmf<T> {
    /// Joint entropy of the given axes; the empty set has entropy 0.
    pub(crate) fn entropy_of(&self, axes: &[&str]) -> Result<T> {
        if axes.is_empty() {
            return Ok(T::zero());
        }
        let pos = self.resolve(axes)?;
        if pos.len() == self.axes().len() {
            return Ok(table_entropy(self.table()));
        }
        Ok(table_entropy(&self.marginal_table(&pos)))
    }

    /// `H(axes)`.
    pub fn entropy(&self, axes: &[&str]) -> Result<T> {
        if axes.is_empty() {
            return Err(Error::Argument("entropy needs at least one axis".into()));
        }
        self.entropy_of(axes)
    }

    /// `I(A;B) = H(A) + H(B) - H(A,B)`.
    pub fn mutual_information(&self, a: &[&str], b: &[&str]) -> Result<T> {
        self.conditional_mutual_information(a, b, &[])
    }

    /// `I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)`.
    pub fn conditional_mutual_information(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<T> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::Argument("mutual information needs nonempty axis sets".into()));
        }
        disjoint(&[a, b, c])?;
        let ac: Vec<&str> = a.iter().chain(c).copied().collect();
        let bc: Vec<&str> = b.iter().chain(c).copied().collect();
        let abc: Vec<&str> = a.iter().chain(b).chain(c).copied().collect();
        let v = self.entropy_of(&ac)? + self.entropy_of(&bc)? - self.entropy_of(&abc)? - self.entropy_of(c)?;
        Ok(clamp(v))
    }
}

pub fn entropy<T: Real>(p: &JointPmf<T>, axes: &[&str]) -> Result<T> {
    p.entropy(axes)
}

pub fn mutual_information<T: Real>(p: &JointPmf<T>, a: &[&str], b: &[&str]) -> Result<T> {
    p.mutual_information(a, b)
}

pub fn conditional_mutual_information<T: Real>(p: &JointPmf<T>, a: &[&str], b: &[&str], c: &[&str]) -> Result<T> {
    p.conditional_mutual_information(a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::{binary_pair, h2, Axis};

    #[test]
    fn entropy_examples() {
        let u = JointPmf::<f64>::uniform(vec![Axis::new("A", 2)]).unwrap();
        assert_eq!(u.entropy(&["A"]).unwrap(), 1.0);
        let d = JointPmf::<f64>::point_mass(vec![Axis::new("A", 3)], &[1]).unwrap();
        assert_eq!(d.entropy(&["A"]).unwrap(), 0.0);
        let b = JointPmf::new(vec![Axis::new("A", 2)], vec![0.9f64, 0.1]).unwrap();
        assert!((b.entropy(&["A"]).unwrap() - 0.468_995_593_589_281_2).abs() < 1e-12);
        assert!(matches!(b.entropy(&["Q"]), Err(Error::UnknownAxis(_))));
        assert!(b.entropy(&[]).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let a = JointPmf::new(vec![Axis::new("A", 2)], vec![0.3f64, 0.7]).unwrap();
        let b = JointPmf::new(vec![Axis::new("B", 3)], vec![0.2, 0.5, 0.3]).unwrap();
        let ab = a.product(&b).unwrap();
        assert!(ab.mutual_information(&["A"], &["B"]).unwrap().abs() < 1e-15);

        let copy = JointPmf::new(vec![Axis::new("A", 2), Axis::new("B", 2)], vec![0.3f64, 0.0, 0.0, 0.7]).unwrap();
        let h = copy.entropy(&["A"]).unwrap();
        assert!((copy.mutual_information(&["A"], &["B"]).unwrap() - h).abs() < 1e-15);

        let sym = binary_pair::<f64>("A", "B", 0.18).unwrap();
        let i = sym.mutual_information(&["A"], &["B"]).unwrap();
        assert!((i - 0.319_922_954_271_720_2).abs() < 1e-12);
        assert!((i - (1.0 - h2(0.18).unwrap())).abs() < 1e-14);

        assert!(matches!(
            sym.mutual_information(&["A"], &["A", "B"]),
            Err(Error::OverlappingAxes(_))
        ));
    }

    #[test]
    fn cmi_with_empty_condition_is_mi() {
        let sym = binary_pair::<f64>("A", "B", 0.3).unwrap();
        assert_eq!(
            sym.conditional_mutual_information(&["A"], &["B"], &[]).unwrap(),
            sym.mutual_information(&["A"], &["B"]).unwrap()
        );
    }

    #[test]
    fn cmi_overlap_rejected() {
        let sym = binary_pair::<f64>("A", "B", 0.3).unwrap();
        assert!(matches!(
            sym.conditional_mutual_information(&["A"], &["B"], &["B"]),
            Err(Error::OverlappingAxes(_))
        ));
    }

    #[test]
    fn cmi_binary_chain_by_brute_force() {
        // X2 ~ Bern(1/2), X1 = X2 xor Bern(q), Y = X1 xor Bern(p), summed cell by cell.
        let (p, q) = (0.1f64, 0.1f64);
        let mut cells = [[[0.0f64; 2]; 2]; 2];
        for x1 in 0..2 {
            for x2 in 0..2 {
                for y in 0..2 {
                    let pz = if x1 == x2 { 1.0 - q } else { q };
                    let pw = if y == x1 { 1.0 - p } else { p };
                    cells[x1][x2][y] = 0.5 * pz * pw;
                }
            }
        }
        let m = |f: &dyn Fn(usize, usize, usize) -> (usize, usize)| {
            let mut joint = std::collections::HashMap::new();
            for x1 in 0..2 {
                for x2 in 0..2 {
                    for y in 0..2 {
                        *joint.entry(f(x1, x2, y)).or_insert(0.0) += cells[x1][x2][y];
                    }
                }
            }
            joint.values().filter(|v: &&f64| **v > 0.0).map(|v| -v * v.log2()).sum::<f64>()
        };
        let h_x1x2 = m(&|a, b, _| (a, b));
        let h_yx2 = m(&|_, b, c| (b, c));
        let h_all = m(&|a, b, c| (a * 2 + b, c));
        let h_x2 = m(&|_, b, _| (b, 0));
        let brute = h_x1x2 + h_yx2 - h_all - h_x2;
        assert!((brute - 0.211_081_452_138_998_6).abs() < 1e-12);

        let flat: Vec<f64> = cells.iter().flatten().flatten().copied().collect();
        let pmf = JointPmf::new(vec![Axis::new("X1", 2), Axis::new("X2", 2), Axis::new("Y", 2)], flat).unwrap();
        let v = pmf.conditional_mutual_information(&["X1"], &["Y"], &["X2"]).unwrap();
        assert!((v - brute).abs() < 1e-12);
    }
}
