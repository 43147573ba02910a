//! Conventions and combinatorics for the bosonic (permutation-symmetric)
//! subspace of N qubits.
//!
//! The unnormalized Dicke vector |D_{N,n}> is the sum, with unit
//! coefficients, of all C(N,n) computational basis states containing exactly
//! n zeros. Under this convention both of the identities everything else
//! relies on hold exactly:
//!
//! * generating identity: (|1> + z|0>)^(x)N = sum_j z^j |D_{N,j}>,
//! * dual basis: |D~_{N,n}> = |D_{N,n}> / C(N,n) satisfies
//!   <D_{N,m}|D~_{N,n}> = delta_{mn}.
//!
//! The index n counts |0> factors (forced by z multiplying |0> above).

use crate::error::{Error, Result};
use crate::numerics::ToleranceProfile;
use num_complex::Complex64;

/// Index (N, n) of the Dicke vector with n zeros among N qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DickeIndex {
    n_qubits: usize,
    n_zeros: usize,
}

impl DickeIndex {
    pub fn new(n_qubits: usize, n_zeros: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Invalid("need at least one qubit".into()));
        }
        if n_zeros > n_qubits {
            return Err(Error::Invalid(format!(
                "n_zeros {} exceeds qubit count {}",
                n_zeros, n_qubits
            )));
        }
        Ok(Self { n_qubits, n_zeros })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn n_zeros(&self) -> usize {
        self.n_zeros
    }
}

/// Exact binomial coefficient in u128; None on overflow.
pub fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128; // exact: product of i+1 consecutive integers
    }
    Some(acc)
}

/// Binomial coefficient as f64: exact while it fits in u128, multiplicative
/// formula beyond that.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    if let Some(v) = binomial_u128(n, k) {
        return v as f64;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Squared norm of the unnormalized Dicke vector: C(N, n).
pub fn dicke_norm_sq(idx: DickeIndex) -> Result<u128> {
    binomial_u128(idx.n_qubits, idx.n_zeros).ok_or_else(|| {
        Error::Invalid(format!(
            "C({},{}) overflows u128",
            idx.n_qubits, idx.n_zeros
        ))
    })
}

/// Coefficients (1, z, z^2, ..., z^N) of (|1> + z|0>)^(x)N over the
/// unnormalized Dicke basis.
pub fn product_expansion_coeffs(z: Complex64, n_qubits: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n_qubits + 1);
    let mut pow = Complex64::new(1.0, 0.0);
    for _ in 0..=n_qubits {
        out.push(pow);
        pow *= z;
    }
    out
}

/// Bipartite splitting of |D_{N,n}> across `cut` vs `N - cut` qubits:
/// all pairs (j, n - j) in range, each with coefficient exactly 1.
pub fn split_coeffs(n_qubits: usize, cut: usize, n: usize) -> Result<Vec<(usize, usize)>> {
    if cut == 0 || cut >= n_qubits {
        return Err(Error::Invalid(format!(
            "cut must satisfy 1 <= cut <= N-1, got cut={} N={}",
            cut, n_qubits
        )));
    }
    if n > n_qubits {
        return Err(Error::Invalid(format!(
            "n={} out of range for N={}",
            n, n_qubits
        )));
    }
    let rest = n_qubits - cut;
    let lo = n.saturating_sub(rest);
    let hi = n.min(cut);
    Ok((lo..=hi).map(|j| (j, n - j)).collect())
}

/// Maximum qubit count for dense 2^N representations.
pub const DENSE_QUBIT_CAP: usize = 14;

/// Dense state vector over the computational basis; qubit 0 is the most
/// significant bit of the index.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n_qubits: usize,
    entries: Vec<Complex64>,
}

impl DenseState {
    pub fn new(n_qubits: usize, entries: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > DENSE_QUBIT_CAP {
            return Err(Error::Dimension(format!(
                "dense states support 1..={} qubits, got {}",
                DENSE_QUBIT_CAP, n_qubits
            )));
        }
        if entries.len() != 1 << n_qubits {
            return Err(Error::Dimension(format!(
                "expected {} amplitudes, got {}",
                1usize << n_qubits,
                entries.len()
            )));
        }
        if entries.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("dense state amplitudes"));
        }
        Ok(Self { n_qubits, entries })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// <self|other>, conjugating self.
    pub fn inner(&self, other: &DenseState) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Dimension("inner product across sizes".into()));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn add_scaled(&mut self, scale: Complex64, other: &DenseState) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Dimension("add_scaled across sizes".into()));
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += scale * b;
        }
        Ok(())
    }

    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, vec![Complex64::ZERO; 1 << n_qubits])
    }
}

#[inline]
fn qubit_bit(n_qubits: usize, index: usize, qubit: usize) -> usize {
    (index >> (n_qubits - 1 - qubit)) & 1
}

/// Dense form of the unnormalized |D_{N,n}>: amplitude 1 on every basis
/// index with exactly n zero bits.
pub fn dense_dicke(idx: DickeIndex) -> Result<DenseState> {
    let n_q = idx.n_qubits();
    let ones_wanted = (n_q - idx.n_zeros()) as u32;
    let entries = (0..1usize << n_q)
        .map(|b| {
            if (b as u64).count_ones() == ones_wanted {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::ZERO
            }
        })
        .collect();
    DenseState::new(n_q, entries)
}

/// Dense form of (amp0|0> + amp1|1>)^(x)N.
pub fn product_state_dense(n_qubits: usize, amp0: Complex64, amp1: Complex64) -> Result<DenseState> {
    let entries = (0..1usize << n_qubits)
        .map(|b| {
            let ones = (b as u64).count_ones() as i32;
            let zeros = n_qubits as i32 - ones;
            amp0.powi(zeros) * amp1.powi(ones)
        })
        .collect();
    DenseState::new(n_qubits, entries)
}

/// Tensor product; `a`'s qubits come first (most significant).
pub fn tensor(a: &DenseState, b: &DenseState) -> Result<DenseState> {
    let n = a.n_qubits + b.n_qubits;
    let mut entries = Vec::with_capacity(1 << n);
    for x in &a.entries {
        for y in &b.entries {
            entries.push(x * y);
        }
    }
    DenseState::new(n, entries)
}

/// True iff the state is invariant, within residual_eps, under swapping
/// every pair of qubit positions.
pub fn is_bosonic(s: &DenseState, tol: &ToleranceProfile) -> Result<bool> {
    let n = s.n_qubits;
    let scale = s
        .entries
        .iter()
        .fold(0.0_f64, |m, c| m.max(c.norm()))
        .max(1.0);
    let slack = tol.residual_eps * scale;
    for i in 0..n {
        for j in (i + 1)..n {
            for (b, amp) in s.entries.iter().enumerate() {
                let bi = qubit_bit(n, b, i);
                let bj = qubit_bit(n, b, j);
                if bi == bj {
                    continue;
                }
                let swapped = b ^ (1 << (n - 1 - i)) ^ (1 << (n - 1 - j));
                if (amp - s.entries[swapped]).norm() > slack {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn norm_sq_examples() {
        assert_eq!(dicke_norm_sq(DickeIndex::new(3, 1).unwrap()).unwrap(), 3);
        assert_eq!(dicke_norm_sq(DickeIndex::new(2, 0).unwrap()).unwrap(), 1);
        assert_eq!(dicke_norm_sq(DickeIndex::new(4, 2).unwrap()).unwrap(), 6);
    }

    #[test]
    fn expansion_coeff_examples() {
        let v = product_expansion_coeffs(c(0.0, 0.0), 3);
        assert_eq!(v, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let v = product_expansion_coeffs(c(1.0, 0.0), 2);
        assert_eq!(v, vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let v = product_expansion_coeffs(c(0.0, 2.0), 2);
        assert_abs_diff_eq!(v[2].re, -4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v[2].im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn split_coeff_examples() {
        assert_eq!(split_coeffs(2, 1, 1).unwrap(), vec![(0, 1), (1, 0)]);
        assert_eq!(split_coeffs(4, 2, 0).unwrap(), vec![(0, 0)]);
        assert_eq!(split_coeffs(4, 2, 3).unwrap(), vec![(1, 2), (2, 1)]);
        assert!(split_coeffs(4, 0, 1).is_err());
        assert!(split_coeffs(4, 4, 1).is_err());
    }

    #[test]
    fn dense_dicke_two_one() {
        let d = dense_dicke(DickeIndex::new(2, 1).unwrap()).unwrap();
        let want = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        assert_eq!(d.entries(), &want);
    }

    #[test]
    fn bosonic_examples() {
        let tol = ToleranceProfile::default();
        let d21 = dense_dicke(DickeIndex::new(2, 1).unwrap()).unwrap();
        assert!(is_bosonic(&d21, &tol).unwrap());
        let asym = DenseState::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(!is_bosonic(&asym, &tol).unwrap());
        let d32 = dense_dicke(DickeIndex::new(3, 2).unwrap()).unwrap();
        assert!(is_bosonic(&d32, &tol).unwrap());
    }

    #[test]
    fn generating_identity_dense() {
        // (|1> + z|0>)^(x)N == sum_j z^j |D_{N,j}> for a non-trivial z
        let n = 4;
        let z = c(0.7, -0.3);
        let lhs = product_state_dense(n, z, c(1.0, 0.0)).unwrap();
        let mut rhs = DenseState::zero(n).unwrap();
        let mut pow = c(1.0, 0.0);
        for j in 0..=n {
            let d = dense_dicke(DickeIndex::new(n, j).unwrap()).unwrap();
            rhs.add_scaled(pow, &d).unwrap();
            pow *= z;
        }
        for (a, b) in lhs.entries().iter().zip(rhs.entries()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn dicke_orthogonality_dense() {
        let n = 5;
        for m in 0..=n {
            for k in 0..=n {
                let dm = dense_dicke(DickeIndex::new(n, m).unwrap()).unwrap();
                let dk = dense_dicke(DickeIndex::new(n, k).unwrap()).unwrap();
                let ip = dm.inner(&dk).unwrap();
                let want = if m == k { binomial(n, m) } else { 0.0 };
                assert_abs_diff_eq!(ip.re, want, epsilon = 1e-12);
                assert_abs_diff_eq!(ip.im, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn split_identity_dense() {
        let n = 4;
        let cut = 2;
        for nn in 0..=n {
            let whole = dense_dicke(DickeIndex::new(n, nn).unwrap()).unwrap();
            let mut sum = DenseState::zero(n).unwrap();
            for (j, k) in split_coeffs(n, cut, nn).unwrap() {
                let left = dense_dicke(DickeIndex::new(cut, j).unwrap()).unwrap();
                let right = dense_dicke(DickeIndex::new(n - cut, k).unwrap()).unwrap();
                sum.add_scaled(c(1.0, 0.0), &tensor(&left, &right).unwrap())
                    .unwrap();
            }
            assert_eq!(whole.entries(), sum.entries());
        }
    }

    #[test]
    fn binomial_large_values() {
        assert_eq!(binomial_u128(14, 7).unwrap(), 3432);
        assert_eq!(binomial(20, 10), 184_756.0);
        // beyond u128: falls back to multiplicative form, stays finite
        assert!(binomial(200, 100).is_finite());
        assert!(binomial(200, 100) > 1e58);
    }
}
