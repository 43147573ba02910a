use crate::error::{Error, Result};
use crate::numerics::ToleranceProfile;

/// Dense real symmetric matrix, row-major storage.
///
/// Symmetry is enforced on construction: entry (i, j) and (j, i) are averaged,
/// so `get(i, j) == get(j, i)` holds exactly afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

/// Eigendecomposition of a [`SymMatrix`]: `a = V diag(values) V^T`.
///
/// Eigenvalues are sorted ascending; `vectors[k]` is the unit eigenvector for
/// `values[k]`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl SymMatrix {
    /// Builds a symmetric matrix from an entry generator, averaging (i,j) and (j,i).
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("matrix dimension must be >= 1".into()));
        }
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = 0.5 * (f(i, j) + f(j, i));
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        let m = Self { dim, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("matrix rows must be square".into()));
        }
        Self::from_fn(dim, |i, j| rows[i][j])
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Self { dim, data }
    }

    fn check_finite(&self) -> Result<()> {
        if self.data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("symmetric matrix entries"));
        }
        Ok(())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| self.data[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    /// `v^T A v` for a vector of matching length.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        assert_eq!(v.len(), self.dim);
        let mut acc = 0.0;
        for (i, vi) in v.iter().enumerate() {
            let mut row = 0.0;
            for (j, vj) in v.iter().enumerate() {
                row += self.get(i, j) * vj;
            }
            acc += vi * row;
        }
        acc
    }

    /// Full eigendecomposition by cyclic Jacobi rotations.
    ///
    /// Unconditionally convergent for real symmetric input; intended for the
    /// small dense matrices of this toolkit (dim up to a few hundred).
    pub fn eigen(&self) -> Result<SymEigen> {
        self.check_finite()?;
        let n = self.dim;
        let mut a = self.data.clone();
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }

        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        let stop = 1e-15 * scale * (n as f64);
        const MAX_SWEEPS: usize = 64;

        for _ in 0..MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[p * n + q].abs();
                }
            }
            if off <= stop {
                break;
            }
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq.abs() <= 1e-300 {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    let theta = 0.5 * (aqq - app) / apq;
                    // smaller-magnitude tan for stability
                    let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);

                    a[p * n + p] = app - t * apq;
                    a[q * n + q] = aqq + t * apq;
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    for k in 0..n {
                        if k != p && k != q {
                            let akp = a[k * n + p];
                            let akq = a[k * n + q];
                            let new_kp = akp - s * (akq + tau * akp);
                            let new_kq = akq + s * (akp - tau * akq);
                            a[k * n + p] = new_kp;
                            a[p * n + k] = new_kp;
                            a[k * n + q] = new_kq;
                            a[q * n + k] = new_kq;
                        }
                    }
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp - s * (vkq + tau * vkp);
                        v[k * n + q] = vkq + s * (vkp - tau * vkq);
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
        let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
        let vectors: Vec<Vec<f64>> = order
            .iter()
            .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
            .collect();
        Ok(SymEigen { values, vectors })
    }

    /// Minimum eigenvalue.
    pub fn min_eig(&self) -> Result<f64> {
        Ok(self.eigen()?.values[0])
    }

    /// Numerical rank: count of eigenvalues with magnitude above
    /// `rank_eps * max(|eigenvalue|)`.
    pub fn numerical_rank(&self, tol: &ToleranceProfile) -> Result<usize> {
        let eig = self.eigen()?;
        let top = eig.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if top == 0.0 {
            return Ok(0);
        }
        Ok(eig
            .values
            .iter()
            .filter(|v| v.abs() > tol.rank_eps * top)
            .count())
    }
}

/// Minimum eigenvalue of a symmetric matrix.
pub fn min_eig_sym(m: &SymMatrix) -> Result<f64> {
    m.min_eig()
}

/// Scale-aware positive semidefiniteness test:
/// `min_eig >= -psd_eps * max(1, max |entry|)`.
pub fn psd_check(m: &SymMatrix, tol: &ToleranceProfile) -> Result<bool> {
    Ok(m.min_eig()? >= -tol.psd_slack(m.max_abs()))
}

/// Minimum eigenvalue of a Hermitian matrix given as row-major
/// (re, im) pairs, via the real symmetric embedding [[A, -B], [B, A]].
pub fn min_eig_hermitian(dim: usize, entries: &[(f64, f64)]) -> Result<f64> {
    if entries.len() != dim * dim {
        return Err(Error::Dimension(format!(
            "expected {} entries, got {}",
            dim * dim,
            entries.len()
        )));
    }
    let embed = SymMatrix::from_fn(2 * dim, |i, j| {
        let (bi, ii) = (i / dim, i % dim);
        let (bj, ij) = (j / dim, j % dim);
        let (re, im) = entries[ii * dim + ij];
        match (bi, bj) {
            (0, 0) | (1, 1) => re,
            (0, 1) => -im,
            (1, 0) => im,
            _ => unreachable!(),
        }
    })?;
    embed.min_eig()
}
