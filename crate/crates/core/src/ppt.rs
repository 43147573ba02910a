//! Bipartite matrix form of a GDS state and its partial transpose.
//!
//! Splitting N qubits at a cut k leaves each Dicke state supported on the
//! orthonormal product basis |d_{k,j}> (x) |d_{N-k,l}>, so the full state is
//! a real symmetric matrix of side (k+1)(N-k+1). For this class PPT is not
//! merely necessary: the partial transpose contains both Hankel matrices as
//! principal submatrices up to positive diagonal congruence, which is what
//! makes the PPT test equivalent to separability here.

use crate::dicke::binomial;
use crate::error::{Error, Result};
use crate::gds::{build_hankels, ChiVector};
use crate::numerics::{psd_check, SymMatrix, ToleranceProfile};

/// A bipartition of N qubits into blocks of size k and N - k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteCut {
    n_qubits: usize,
    k: usize,
}

impl BipartiteCut {
    pub fn new(n_qubits: usize, k: usize) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::Invalid("a cut needs at least two qubits".into()));
        }
        if k == 0 || k >= n_qubits {
            return Err(Error::Invalid(format!(
                "cut must satisfy 1 <= k <= N-1, got k={k} for N={n_qubits}"
            )));
        }
        Ok(Self { n_qubits, k })
    }

    /// The floor(N/2) : ceil(N/2) cut used by the congruence identity.
    pub fn canonical(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, n_qubits / 2)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Dimensions (k + 1, N - k + 1) of the two bosonic factors.
    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.k + 1, self.n_qubits - self.k + 1)
    }
}

/// Real symmetric matrix indexed by product pairs (j, l), j < k + 1,
/// l < N - k + 1, flattened row-major as j * (N - k + 1) + l.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteMatrix {
    cut: BipartiteCut,
    matrix: SymMatrix,
}

impl BipartiteMatrix {
    pub fn cut(&self) -> BipartiteCut {
        self.cut
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    #[inline]
    fn flat(&self, j: usize, l: usize) -> usize {
        j * self.cut.dims().1 + l
    }

    #[inline]
    pub fn get(&self, jl: (usize, usize), jl2: (usize, usize)) -> f64 {
        self.matrix.get(self.flat(jl.0, jl.1), self.flat(jl2.0, jl2.1))
    }

    pub fn trace(&self) -> f64 {
        (0..self.matrix.dim())
            .map(|i| self.matrix.get(i, i))
            .sum()
    }

    /// Transpose the second factor: out[(j,l),(j',l')] = in[(j,l'),(j',l)].
    /// An involution that preserves symmetry and the diagonal.
    pub fn partial_transpose(&self) -> Result<Self> {
        let (dk, dl) = self.cut.dims();
        let matrix = SymMatrix::from_fn(dk * dl, |a, b| {
            let (j, l) = (a / dl, a % dl);
            let (j2, l2) = (b / dl, b % dl);
            self.get((j, l2), (j2, l))
        })?;
        Ok(Self {
            cut: self.cut,
            matrix,
        })
    }
}

/// rho = sum_n chi_n v_n v_n^T with v_n[(j, n-j)] = sqrt(C(k,j) C(N-k,n-j)):
/// the coordinates of the Dicke state |D_{N,n}> in the orthonormal product
/// basis across the cut.
pub fn assemble(chi: &ChiVector, cut: BipartiteCut) -> Result<BipartiteMatrix> {
    if cut.n_qubits() != chi.n_qubits() {
        return Err(Error::Dimension(format!(
            "cut is for N={}, state has N={}",
            cut.n_qubits(),
            chi.n_qubits()
        )));
    }
    let n = chi.n_qubits();
    let k = cut.k();
    let (dk, dl) = cut.dims();
    let dim = dk * dl;
    let mut dense = vec![0.0; dim * dim];
    for (nn, &w) in chi.chi().iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let lo = nn.saturating_sub(n - k);
        let hi = nn.min(k);
        let support: Vec<(usize, f64)> = (lo..=hi)
            .map(|j| {
                let c = (binomial(k, j) * binomial(n - k, nn - j)).sqrt();
                (j * dl + (nn - j), c)
            })
            .collect();
        for &(a, ca) in &support {
            for &(b, cb) in &support {
                dense[a * dim + b] += w * ca * cb;
            }
        }
    }
    let matrix = SymMatrix::from_fn(dim, |a, b| dense[a * dim + b])?;
    Ok(BipartiteMatrix { cut, matrix })
}

/// PPT test at the given cut: partial transpose PSD within tolerance.
pub fn ppt_verdict(chi: &ChiVector, cut: BipartiteCut, tol: &ToleranceProfile) -> Result<bool> {
    let pt = assemble(chi, cut)?.partial_transpose()?;
    psd_check(pt.matrix(), tol)
}

/// Verifies that the partial transpose at the canonical cut contains both
/// Hankel matrices of `chi` as diagonally congruent principal submatrices:
///
/// * rows (j, j):      PT block = D M0 D,  D_j  = sqrt(C(m0,j)  C(m1,j)),
/// * rows (j-1, j):    PT block = D' M1 D', D'_j = sqrt(C(m0,j-1) C(m1,j)).
///
/// Returns the largest absolute discrepancy over both blocks (exact zero up
/// to rounding for every chi).
pub fn submatrix_congruence_check(chi: &ChiVector) -> Result<f64> {
    let n = chi.n_qubits();
    if n < 2 {
        return Err(Error::Invalid(
            "the congruence identity needs at least two qubits".into(),
        ));
    }
    let cut = BipartiteCut::canonical(n)?;
    let m0 = chi.m0();
    let m1 = chi.m1();
    let pt = assemble(chi, cut)?.partial_transpose()?;
    let hankels = build_hankels(chi);

    let mut worst = 0.0_f64;

    let d0: Vec<f64> = (0..=m0)
        .map(|j| (binomial(m0, j) * binomial(m1, j)).sqrt())
        .collect();
    for j in 0..=m0 {
        for j2 in 0..=m0 {
            let lhs = pt.get((j, j), (j2, j2));
            let rhs = d0[j] * hankels.m0_matrix.get(j, j2) * d0[j2];
            worst = worst.max((lhs - rhs).abs());
        }
    }

    let d1: Vec<f64> = (1..=m1)
        .map(|j| (binomial(m0, j - 1) * binomial(m1, j)).sqrt())
        .collect();
    for j in 1..=m1 {
        for j2 in 1..=m1 {
            let lhs = pt.get((j - 1, j), (j2 - 1, j2));
            let rhs = d1[j - 1] * hankels.m1_matrix.get(j - 1, j2 - 1) * d1[j2 - 1];
            worst = worst.max((lhs - rhs).abs());
        }
    }

    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    #[test]
    fn cut_validation() {
        assert!(BipartiteCut::new(4, 0).is_err());
        assert!(BipartiteCut::new(4, 4).is_err());
        let c = BipartiteCut::new(5, 2).unwrap();
        assert_eq!(c.dims(), (3, 4));
        assert_eq!(BipartiteCut::canonical(5).unwrap().k(), 2);
    }

    #[test]
    fn dicke_pair_assembly_and_pt_spectrum() {
        // N=2, chi = (0, 1, 0): the two-qubit Dicke pair |01> + |10>
        let chi = ChiVector::new(2, vec![0.0, 1.0, 0.0]).unwrap();
        let cut = BipartiteCut::new(2, 1).unwrap();
        let rho = assemble(&chi, cut).unwrap();
        assert_eq!(rho.matrix().dim(), 4);
        assert_abs_diff_eq!(rho.get((0, 1), (0, 1)), 1.0);
        assert_abs_diff_eq!(rho.get((0, 1), (1, 0)), 1.0);
        assert_abs_diff_eq!(rho.get((1, 0), (1, 0)), 1.0);
        assert_abs_diff_eq!(rho.get((0, 0), (0, 0)), 0.0);
        assert_abs_diff_eq!(rho.trace(), chi.trace(), epsilon = 1e-12);

        let pt = rho.partial_transpose().unwrap();
        // diagonal preserved, coherence moved to the antidiagonal corners
        assert_abs_diff_eq!(pt.get((0, 0), (1, 1)), 1.0);
        assert_abs_diff_eq!(pt.get((0, 1), (1, 0)), 0.0);
        let eig = pt.matrix().eigen().unwrap();
        let expect = [-1.0, 1.0, 1.0, 1.0];
        for (got, want) in eig.values.iter().zip(expect) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn partial_transpose_is_involution() {
        let chi = ChiVector::new(4, vec![0.3, 0.1, 0.25, 0.05, 0.4]).unwrap();
        for k in 1..4 {
            let cut = BipartiteCut::new(4, k).unwrap();
            let rho = assemble(&chi, cut).unwrap();
            let twice = rho.partial_transpose().unwrap().partial_transpose().unwrap();
            assert_eq!(rho.matrix().dim(), twice.matrix().dim());
            for a in 0..rho.matrix().dim() {
                for b in 0..rho.matrix().dim() {
                    assert_abs_diff_eq!(
                        rho.matrix().get(a, b),
                        twice.matrix().get(a, b),
                        epsilon = 0.0
                    );
                }
            }
            // trace is invariant under partial transposition
            let pt = rho.partial_transpose().unwrap();
            assert_abs_diff_eq!(pt.trace(), rho.trace(), epsilon = 1e-12);
        }
    }

    #[test]
    fn ppt_examples() {
        let t = tol();
        let pair = ChiVector::new(2, vec![0.0, 1.0, 0.0]).unwrap();
        let cut = BipartiteCut::new(2, 1).unwrap();
        assert!(!ppt_verdict(&pair, cut, &t).unwrap());

        let product = ChiVector::new(2, vec![0.0, 0.0, 1.0]).unwrap();
        assert!(ppt_verdict(&product, cut, &t).unwrap());

        // geometric chi_n = 2^n over N=4 is separable, hence PPT at all cuts
        let geo = ChiVector::new(4, vec![1.0, 2.0, 4.0, 8.0, 16.0]).unwrap();
        for k in 1..4 {
            assert!(ppt_verdict(&geo, BipartiteCut::new(4, k).unwrap(), &t).unwrap());
        }
    }

    #[test]
    fn congruence_identity_is_exact() {
        let cases: Vec<ChiVector> = vec![
            ChiVector::new(2, vec![0.4, 0.3, 0.6]).unwrap(),
            ChiVector::new(3, vec![1.0, 0.5, 0.25, 2.0]).unwrap(),
            ChiVector::new(4, vec![0.9, 0.2, 0.8, 0.1, 0.7]).unwrap(),
            ChiVector::new(5, vec![0.11, 0.7, 0.23, 0.05, 0.61, 0.37]).unwrap(),
        ];
        for chi in cases {
            let worst = submatrix_congruence_check(&chi).unwrap();
            assert!(
                worst <= 1e-12,
                "N={} discrepancy {worst:.3e}",
                chi.n_qubits()
            );
        }
    }
}
