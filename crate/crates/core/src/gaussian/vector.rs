use super::linalg::{det, inverse, submatrix, symmetric_eigenvalues};
use crate::error::{Error, Result};
use crate::scalar::Real;

const PSD_TOL: f64 = 1e-10;

/// Zero-mean jointly Gaussian vector with named components.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianVector<T> {
    names: Vec<String>,
    cov: Vec<T>,
}

impl<T: Real> GaussianVector<T> {
    /// Validates symmetry and positive semidefiniteness (smallest eigenvalue
    /// `>= -1e-10`).
    pub fn new(names: Vec<String>, cov: Vec<T>) -> Result<Self> {
        let n = names.len();
        if cov.len() != n * n {
            return Err(Error::Argument(format!("covariance needs {} entries, got {}", n * n, cov.len())));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateAxis(a.clone()));
            }
        }
        let tol = T::tolerance(PSD_TOL);
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (cov[i * n + j], cov[j * n + i]);
                if !a.is_finite() || (a - b).abs() > tol * (T::one() + a.abs()) {
                    return Err(Error::DegenerateModel("covariance is not symmetric".into()));
                }
            }
        }
        let min = symmetric_eigenvalues(&cov, n).into_iter().fold(T::infinity(), T::min);
        if !(min >= -tol) {
            return Err(Error::DegenerateModel(format!("covariance has eigenvalue {min}")));
        }
        Ok(Self { names, cov })
    }

    /// Covariance from standard deviations and a correlation matrix.
    pub fn from_correlation(names: Vec<String>, sigma: &[T], corr: &[T]) -> Result<Self> {
        let n = names.len();
        if sigma.len() != n || corr.len() != n * n {
            return Err(Error::Argument("correlation shape mismatch".into()));
        }
        let cov = (0..n * n).map(|k| corr[k] * sigma[k / n] * sigma[k % n]).collect();
        Self::new(names, cov)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn covariance(&self) -> &[T] {
        &self.cov
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|a| a == name).ok_or_else(|| Error::UnknownAxis(name.to_string()))
    }

    fn indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|a| self.index(a)).collect()
    }

    fn cov_at(&self, i: usize, j: usize) -> T {
        self.cov[i * self.names.len() + j]
    }

    /// Appends `name = sum_k coeff_k * X_k + N` with `N ~ N(0, noise_var)`
    /// independent of every existing component.
    pub fn with_linear(&self, name: &str, terms: &[(&str, T)], noise_var: T) -> Result<Self> {
        if self.names.iter().any(|a| a == name) {
            return Err(Error::DuplicateAxis(name.to_string()));
        }
        if !(noise_var >= T::zero() && noise_var.is_finite()) {
            return Err(Error::domain("noise variance", noise_var.to_f64_lossy(), "[0, inf)"));
        }
        let n = self.names.len();
        let mut w = vec![T::zero(); n];
        for (a, c) in terms {
            let k = self.index(a)?;
            w[k] = w[k] + *c;
        }
        let cross: Vec<T> = (0..n).map(|i| (0..n).map(|k| self.cov_at(i, k) * w[k]).sum()).collect();
        let var: T = (0..n).map(|i| w[i] * cross[i]).sum::<T>() + noise_var;
        let m = n + 1;
        let mut cov = vec![T::zero(); m * m];
        for i in 0..n {
            for j in 0..n {
                cov[i * m + j] = self.cov_at(i, j);
            }
            cov[i * m + n] = cross[i];
            cov[n * m + i] = cross[i];
        }
        cov[n * m + n] = var;
        let mut names = self.names.clone();
        names.push(name.to_string());
        Ok(Self { names, cov })
    }

    fn log2_det(&self, idx: &[usize]) -> T {
        if idx.is_empty() {
            return T::zero();
        }
        det(&submatrix(&self.cov, self.names.len(), idx), idx.len()).log2()
    }

    /// `I(A;B|C)` in bits from covariance determinants.
    pub fn conditional_mutual_information(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<T> {
        let (ia, ib, ic) = (self.indices(a)?, self.indices(b)?, self.indices(c)?);
        if a.is_empty() || b.is_empty() {
            return Err(Error::Argument("mutual information needs nonempty sets".into()));
        }
        for (x, y) in [(&ia, &ib), (&ia, &ic), (&ib, &ic)] {
            if let Some(k) = x.iter().find(|k| y.contains(k)) {
                return Err(Error::OverlappingAxes(self.names[*k].clone()));
            }
        }
        let cat = |x: &[usize], y: &[usize]| [x, y].concat();
        let v = self.log2_det(&cat(&ia, &ic)) + self.log2_det(&cat(&ib, &ic))
            - self.log2_det(&[ia.as_slice(), &ib, &ic].concat())
            - self.log2_det(&ic);
        Ok((v * T::c(0.5)).max(T::zero()))
    }

    pub fn mutual_information(&self, a: &[&str], b: &[&str]) -> Result<T> {
        self.conditional_mutual_information(a, b, &[])
    }

    /// `Var(target | given)`.
    pub fn conditional_variance(&self, target: &str, given: &[&str]) -> Result<T> {
        let t = self.index(target)?;
        let g = self.indices(given)?;
        let n = self.names.len();
        if g.is_empty() {
            return Ok(self.cov_at(t, t));
        }
        let inv = inverse(&submatrix(&self.cov, n, &g), g.len())
            .ok_or_else(|| Error::DegenerateModel("singular conditioning covariance".into()))?;
        let k = g.len();
        let mut v = self.cov_at(t, t);
        for i in 0..k {
            for j in 0..k {
                v = v - self.cov_at(t, g[i]) * inv[i * k + j] * self.cov_at(g[j], t);
            }
        }
        Ok(v)
    }
}
