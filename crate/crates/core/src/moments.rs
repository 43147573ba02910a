//! Truncated Stieltjes moment problem on (chi_0, ..., chi_N) with an allowed
//! atom at infinity, and the explicit product-state decomposition built from
//! its solution.
//!
//! A separable GDS state's weights are the moments chi_n = sum_k w_k r_k^n of
//! a finite nonnegative measure on [0, inf), except that the top moment may
//! carry extra mass m_inf from the |0>^(x)N direction (the z -> inf limit of
//! product states). The solver recovers atom positions with a rank-truncated
//! symmetric matrix pencil (Prony / Gauss quadrature); for odd N it retries
//! with the top moment peeled down to its minimal corner completion, which
//! restores an exactly atomic sequence when mass sits at infinity. Weights
//! and the mass at infinity are then fit jointly by nonnegative least
//! squares over all N+1 moments, and an adaptive grid serves as a fallback
//! when the exact-atomic structure is degraded by noise.

use crate::dicke::binomial;
use crate::error::{Error, Result};
use crate::gds::{build_hankels, ChiVector};
use crate::numerics::{lstsq, min_eig_sym, nnls, pinv_solve_sym, SymMatrix, ToleranceProfile};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One point mass: position r >= 0, weight w > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub r: f64,
    pub w: f64,
}

/// Finite nonnegative measure on [0, inf) plus a point mass "at infinity"
/// that contributes only to the top moment chi_N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
    mass_at_infinity: f64,
}

impl AtomicMeasure {
    pub fn new(mut atoms: Vec<Atom>, mass_at_infinity: f64) -> Result<Self> {
        if !mass_at_infinity.is_finite() || mass_at_infinity < 0.0 {
            return Err(Error::Invalid(format!(
                "mass_at_infinity must be finite and >= 0, got {mass_at_infinity}"
            )));
        }
        for a in &atoms {
            if !a.r.is_finite() || !a.w.is_finite() || a.r < 0.0 || a.w <= 0.0 {
                return Err(Error::Invalid(format!(
                    "atom (r={}, w={}) outside [0,inf) x (0,inf)",
                    a.r, a.w
                )));
            }
        }
        atoms.sort_by(|x, y| x.r.total_cmp(&y.r));
        Ok(Self {
            atoms,
            mass_at_infinity,
        })
    }

    #[inline]
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    #[inline]
    pub fn mass_at_infinity(&self) -> f64 {
        self.mass_at_infinity
    }
}

/// Mixture term: weight * projector of (a1|1> + a0|0>)^(x)N, amplitudes as
/// [re, im] pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductTerm {
    pub w: f64,
    pub a0: [f64; 2],
    pub a1: [f64; 2],
}

impl ProductTerm {
    pub fn amp0(&self) -> Complex64 {
        Complex64::new(self.a0[0], self.a0[1])
    }

    pub fn amp1(&self) -> Complex64 {
        Complex64::new(self.a1[0], self.a1[1])
    }
}

/// Explicit separable mixture; at most (N+1)(N+2) terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductDecomposition {
    pub terms: Vec<ProductTerm>,
}

/// chi_n = sum_k w_k r_k^n, with mass_at_infinity added to chi_N.
pub fn reconstruct(measure: &AtomicMeasure, n_qubits: usize) -> Result<ChiVector> {
    let mut chi = vec![0.0; n_qubits + 1];
    for (n, c) in chi.iter_mut().enumerate() {
        for a in measure.atoms() {
            *c += a.w * a.r.powi(n as i32);
        }
    }
    chi[n_qubits] += measure.mass_at_infinity();
    ChiVector::new(n_qubits, chi)
}

/// Raw moment reconstruction without ChiVector validation (used internally
/// while candidate measures may still be invalid).
fn raw_moments(atoms: &[Atom], mass_inf: f64, n_qubits: usize) -> Vec<f64> {
    let mut chi = vec![0.0; n_qubits + 1];
    for (n, c) in chi.iter_mut().enumerate() {
        for a in atoms {
            *c += a.w * a.r.powi(n as i32);
        }
    }
    chi[n_qubits] += mass_inf;
    chi
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Solves the truncated Stieltjes problem for a chi vector passing the
/// Hankel criterion. See module docs for the path structure.
pub fn stieltjes_solve(chi: &ChiVector, tol: &ToleranceProfile) -> Result<AtomicMeasure> {
    let pair = build_hankels(chi);
    let slack0 = tol.psd_slack(pair.m0_matrix.max_abs());
    let slack1 = tol.psd_slack(pair.m1_matrix.max_abs());
    if min_eig_sym(&pair.m0_matrix)? < -slack0 || min_eig_sym(&pair.m1_matrix)? < -slack1 {
        return Err(Error::Infeasible(
            "a Hankel matrix is not positive semidefinite".into(),
        ));
    }

    let n = chi.n_qubits();
    let c = chi.chi();
    let residual_slack = tol.residual_slack(chi.max_abs());

    // Only the top moment is populated: pure mass at infinity.
    if c[..n].iter().all(|&v| v == 0.0) {
        return AtomicMeasure::new(Vec::new(), c[n]);
    }

    // Candidate corners for the pencil's top moment. The full corner chi_N
    // is exact whenever the sequence is atomic (even N never reads it, and
    // for odd N with a positive-definite pencil the Gauss nodes absorb it).
    // For odd N with a rank-deficient pencil, excess mass at infinity sits
    // inside chi_N and distorts the shift operator; peeling the corner down
    // to its minimal completion restores the atomic sequence, so that is
    // tried second.
    let mut corners = vec![c[n]];
    if n % 2 == 1 {
        let q = minimal_corner(chi, tol)?;
        if q < c[n] {
            corners.push(q);
        }
    }

    let mut worst: Option<f64> = None;
    for corner in corners {
        if let Ok(measure) = pencil_path(chi, tol, corner) {
            let rec = raw_moments(measure.atoms(), measure.mass_at_infinity(), n);
            let resid = max_abs_diff(&rec, c);
            if resid <= residual_slack {
                return Ok(measure);
            }
            worst = Some(worst.map_or(resid, |w: f64| w.min(resid)));
        }
    }

    match grid_path(chi, tol) {
        Ok(measure) => {
            let rec = raw_moments(measure.atoms(), measure.mass_at_infinity(), n);
            let resid = max_abs_diff(&rec, c);
            if resid <= residual_slack {
                Ok(measure)
            } else {
                Err(Error::Numerical {
                    context: "stieltjes reconstruction".into(),
                    residual: worst.map_or(resid, |w| w.min(resid)),
                })
            }
        }
        Err(e) => Err(e),
    }
}

/// Minimal feasible value of the top moment: the corner completion
/// q = h^T A^+ h of the Hankel matrix whose corner is chi_N
/// (M0 for even N, M1 for odd N). The gap chi_N - q is the largest mass
/// placeable at infinity; peeling it restores an exactly atomic sequence.
fn minimal_corner(chi: &ChiVector, tol: &ToleranceProfile) -> Result<f64> {
    let c = chi.chi();
    let n = chi.n_qubits();
    let pair = build_hankels(chi);
    let corner_matrix = if n.is_multiple_of(2) {
        &pair.m0_matrix
    } else {
        &pair.m1_matrix
    };
    let dim = corner_matrix.dim();
    if dim == 1 {
        // no principal block: the corner can drop all the way to zero
        return Ok(0.0);
    }
    let a = SymMatrix::from_fn(dim - 1, |i, j| corner_matrix.get(i, j))?;
    let h: Vec<f64> = (0..dim - 1).map(|i| corner_matrix.get(i, dim - 1)).collect();
    let x = pinv_solve_sym(&a, &h, tol.rank_eps)?;
    let q: f64 = h.iter().zip(&x).map(|(hi, xi)| hi * xi).sum();
    Ok(q.clamp(0.0, c[n]))
}

/// Prony-type primary path: rank-truncated matrix pencil on the sequence
/// with the top moment replaced by `corner`, then a joint NNLS fit of the
/// weights and the mass at infinity against all of chi_0..chi_N.
fn pencil_path(chi: &ChiVector, tol: &ToleranceProfile, corner: f64) -> Result<AtomicMeasure> {
    let n = chi.n_qubits();
    let c = chi.chi();
    let mut mu = c.to_vec();
    mu[n] = corner;

    // Square pencil size s = m1: H0 uses mu_0..mu_{2s-2}, H1 uses mu_1..mu_{2s-1}.
    let s = chi.m1();
    let h0 = SymMatrix::from_fn(s, |i, j| mu[i + j])?;
    let h1 = SymMatrix::from_fn(s, |i, j| mu[i + j + 1])?;

    let eig = h0.eigen()?;
    let top = eig.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if top == 0.0 {
        return AtomicMeasure::new(Vec::new(), c[n]);
    }
    let kept: Vec<usize> = (0..s)
        .filter(|&k| eig.values[k] > tol.rank_eps * top)
        .collect();
    let rank = kept.len();
    if rank == 0 {
        return AtomicMeasure::new(Vec::new(), c[n]);
    }

    // Whitened shift operator: A = W^T H1 W with W = U_r Lambda_r^{-1/2};
    // its eigenvalues are the atom positions.
    let shift = SymMatrix::from_fn(rank, |a, b| {
        let (ka, kb) = (kept[a], kept[b]);
        let mut acc = 0.0;
        for i in 0..s {
            for j in 0..s {
                acc += eig.vectors[ka][i] * h1.get(i, j) * eig.vectors[kb][j];
            }
        }
        acc / (eig.values[ka] * eig.values[kb]).sqrt()
    })?;
    let mut positions = shift.eigen()?.values;

    // Clamp noise-level negatives; anything genuinely negative disqualifies
    // the pencil output and the caller falls through to the grid.
    let pos_scale = positions.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    for r in &mut positions {
        if *r < 0.0 {
            if *r >= -10.0 * tol.rank_eps * pos_scale {
                *r = 0.0;
            } else {
                return Err(Error::Numerical {
                    context: "pencil produced a negative atom".into(),
                    residual: -*r,
                });
            }
        }
    }
    positions.sort_by(f64::total_cmp);
    positions.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));

    finish_measure(&positions, chi, tol)
}

/// Vandermonde rows 0..=N for the given positions, with one extra column for
/// the mass at infinity (contributing only to the chi_N row).
fn moment_rows(positions: &[f64], n: usize) -> Vec<Vec<f64>> {
    (0..=n)
        .map(|m| {
            let mut row: Vec<f64> = positions.iter().map(|r| r.powi(m as i32)).collect();
            row.push(if m == n { 1.0 } else { 0.0 });
            row
        })
        .collect()
}

/// Weights and mass at infinity by a joint NNLS fit against all of
/// chi_0..chi_N; zero-weight atoms are dropped.
fn finish_measure(
    positions: &[f64],
    chi: &ChiVector,
    _tol: &ToleranceProfile,
) -> Result<AtomicMeasure> {
    let n = chi.n_qubits();
    let c = chi.chi();
    if positions.is_empty() {
        return AtomicMeasure::new(Vec::new(), c[n]);
    }
    let rows = moment_rows(positions, n);
    let solution = nnls(&rows, c)?;
    let (weights, mass_inf) = solution.split_at(positions.len());
    let wsum: f64 = weights.iter().sum();
    let atoms: Vec<Atom> = positions
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 1e-14 * wsum.max(1.0))
        .map(|(&r, &w)| Atom { r, w })
        .collect();
    AtomicMeasure::new(atoms, mass_inf[0].max(0.0))
}

/// Fallback: adaptive grid + NNLS + support refinement + damped Gauss-Newton,
/// pruned to at most m0+1 atoms.
fn grid_path(chi: &ChiVector, tol: &ToleranceProfile) -> Result<AtomicMeasure> {
    let n = chi.n_qubits();
    let c = chi.chi();

    // Measures supported on [0, R] satisfy mu_{m+1} <= R mu_m.
    let mut r_max = 1.0_f64;
    for m in 0..n.saturating_sub(1) {
        if c[m] > 0.0 {
            r_max = r_max.max(c[m + 1] / c[m]);
        }
    }
    r_max *= 1.5;

    let mut grid: Vec<f64> = Vec::new();
    grid.push(0.0);
    let coarse = 256;
    for k in 1..=coarse {
        grid.push(r_max * k as f64 / coarse as f64);
    }
    // log-spaced points resolve small atoms under a large r_max
    let mut v = r_max / coarse as f64;
    while v > 1e-8 * r_max {
        grid.push(v);
        v *= 0.5;
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let mut support = nnls_support(&grid, chi)?;
    for _ in 0..3 {
        if support.is_empty() {
            break;
        }
        let mut refined: Vec<f64> = vec![0.0];
        let spacing = r_max / coarse as f64;
        for &r in &support {
            for k in -4i32..=4 {
                let cand = r + spacing * k as f64 / 4.0;
                if cand >= 0.0 {
                    refined.push(cand);
                }
            }
        }
        refined.sort_by(f64::total_cmp);
        refined.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
        support = nnls_support(&refined, chi)?;
    }

    // Prune to m0+1 atoms (a minimal representation never needs more),
    // weakest weight first.
    let budget = chi.m0() + 1;
    let mut measure = finish_measure(&support, chi, tol)?;
    while measure.atoms().len() > budget {
        let mut atoms = measure.atoms().to_vec();
        let drop_idx = atoms
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.w.total_cmp(&b.1.w))
            .map(|(i, _)| i)
            .expect("nonempty");
        atoms.remove(drop_idx);
        let positions: Vec<f64> = atoms.iter().map(|a| a.r).collect();
        measure = finish_measure(&positions, chi, tol)?;
    }

    gauss_newton_polish(measure, chi, tol)
}

fn nnls_support(grid: &[f64], chi: &ChiVector) -> Result<Vec<f64>> {
    let rows = moment_rows(grid, chi.n_qubits());
    let w = nnls(&rows, chi.chi())?;
    let wmax = w[..grid.len()].iter().fold(0.0_f64, |m, v| m.max(*v));
    Ok(grid
        .iter()
        .zip(&w)
        .filter(|(_, &wi)| wi > 1e-10 * wmax.max(1.0))
        .map(|(&r, _)| r)
        .collect())
}

/// Joint (r, w, m_inf) refinement on all N+1 moments with backtracking
/// damping; parameters are projected back onto r >= 0, w >= 0, m_inf >= 0
/// after each step.
fn gauss_newton_polish(
    measure: AtomicMeasure,
    chi: &ChiVector,
    tol: &ToleranceProfile,
) -> Result<AtomicMeasure> {
    let n = chi.n_qubits();
    let c = chi.chi();
    let mut atoms = measure.atoms().to_vec();
    let mut mass_inf = measure.mass_at_infinity();
    if atoms.is_empty() {
        return Ok(measure);
    }

    let resid_norm = |atoms: &[Atom], mass_inf: f64| -> f64 {
        let rec = raw_moments(atoms, mass_inf, n);
        (0..=n).map(|m| (rec[m] - c[m]).powi(2)).sum::<f64>().sqrt()
    };

    let mut current = resid_norm(&atoms, mass_inf);
    for _ in 0..12 {
        if current <= 1e-14 * chi.max_abs().max(1.0) {
            break;
        }
        let k = atoms.len();
        let mut jac: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        let mut rhs: Vec<f64> = Vec::with_capacity(n + 1);
        for (m, &cm) in c.iter().enumerate() {
            let mut row = Vec::with_capacity(2 * k + 1);
            for a in &atoms {
                row.push(a.r.powi(m as i32)); // d/dw
                let dr = if m == 0 {
                    0.0
                } else {
                    a.w * m as f64 * a.r.powi(m as i32 - 1)
                };
                row.push(dr); // d/dr
            }
            row.push(if m == n { 1.0 } else { 0.0 }); // d/dm_inf
            jac.push(row);
            let rec: f64 = atoms.iter().map(|a| a.w * a.r.powi(m as i32)).sum::<f64>()
                + if m == n { mass_inf } else { 0.0 };
            rhs.push(cm - rec);
        }
        let step = lstsq(&jac, &rhs)?;
        let mut damping = 1.0;
        let mut improved = false;
        while damping > 1e-6 {
            let trial: Vec<Atom> = atoms
                .iter()
                .enumerate()
                .map(|(i, a)| Atom {
                    w: (a.w + damping * step[2 * i]).max(0.0),
                    r: (a.r + damping * step[2 * i + 1]).max(0.0),
                })
                .collect();
            let trial_inf = (mass_inf + damping * step[2 * k]).max(0.0);
            let t = resid_norm(&trial, trial_inf);
            if t < current {
                atoms = trial;
                mass_inf = trial_inf;
                current = t;
                improved = true;
                break;
            }
            damping *= 0.5;
        }
        if !improved {
            break;
        }
    }

    let positions: Vec<f64> = atoms
        .iter()
        .filter(|a| a.w > 0.0)
        .map(|a| a.r)
        .collect();
    finish_measure(&positions, chi, tol)
}

/// Expands the measure into explicit product states. Each atom (r, w) with
/// r > 0 becomes N+1 equal-weight terms (|1> + sqrt(r) e^(2 pi i t/(N+1))|0>)^(x)N:
/// averaging over the (N+1)-st roots of unity cancels every Dicke cross term
/// z^j conj(z)^k with j != k, because |j - k| <= N. An atom at r = 0 is the
/// single term |1>^(x)N; mass at infinity is the single term |0>^(x)N.
pub fn product_states(measure: &AtomicMeasure, n_qubits: usize) -> Result<ProductDecomposition> {
    let mut terms = Vec::new();
    let grid = n_qubits + 1;
    for atom in measure.atoms() {
        if atom.r == 0.0 {
            terms.push(ProductTerm {
                w: atom.w,
                a0: [0.0, 0.0],
                a1: [1.0, 0.0],
            });
            continue;
        }
        let radius = atom.r.sqrt();
        for t in 0..grid {
            let phase = std::f64::consts::TAU * t as f64 / grid as f64;
            let z = Complex64::from_polar(radius, phase);
            terms.push(ProductTerm {
                w: atom.w / grid as f64,
                a0: [z.re, z.im],
                a1: [1.0, 0.0],
            });
        }
    }
    if measure.mass_at_infinity() > 0.0 {
        terms.push(ProductTerm {
            w: measure.mass_at_infinity(),
            a0: [1.0, 0.0],
            a1: [0.0, 0.0],
        });
    }
    let bound = (n_qubits + 1) * (n_qubits + 2);
    if terms.len() > bound {
        return Err(Error::Numerical {
            context: format!("term count {} exceeds bound {}", terms.len(), bound),
            residual: terms.len() as f64,
        });
    }
    Ok(ProductDecomposition { terms })
}

/// Max-norm error, over the (N+1) x (N+1) Dicke coefficient matrix, between
/// the mixture sum_t w_t |psi_t><psi_t| and the GDS state diag(chi).
/// A product state (a1|1> + a0|0>)^(x)N has Dicke coefficients
/// c_j = a1^(N-j) a0^j by the generating identity.
pub fn verify_decomposition(dec: &ProductDecomposition, chi: &ChiVector) -> Result<f64> {
    let n = chi.n_qubits();
    let dim = n + 1;
    let mut gram = vec![Complex64::ZERO; dim * dim];
    for term in &dec.terms {
        if term.w <= 0.0 || !term.w.is_finite() {
            return Err(Error::Invalid(format!(
                "term weight {} must be positive",
                term.w
            )));
        }
        let a0 = term.amp0();
        let a1 = term.amp1();
        let coeffs: Vec<Complex64> = (0..dim)
            .map(|j| a1.powi((n - j) as i32) * a0.powi(j as i32))
            .collect();
        for j in 0..dim {
            for k in 0..dim {
                gram[j * dim + k] += term.w * coeffs[j] * coeffs[k].conj();
            }
        }
    }
    let mut err = 0.0_f64;
    for j in 0..dim {
        for k in 0..dim {
            let target = if j == k {
                Complex64::new(chi.chi()[j], 0.0)
            } else {
                Complex64::ZERO
            };
            err = err.max((gram[j * dim + k] - target).norm());
        }
    }
    Ok(err)
}

/// Physical trace of the mixture: sum_t w_t * ||psi_t||^2 with
/// ||psi_t||^2 = (|a0|^2 + |a1|^2)^N.
pub fn decomposition_trace(dec: &ProductDecomposition, n_qubits: usize) -> f64 {
    dec.terms
        .iter()
        .map(|t| t.w * (t.amp0().norm_sqr() + t.amp1().norm_sqr()).powi(n_qubits as i32))
        .sum()
}

/// Sanity identity: the mixture trace equals sum_n chi_n C(N,n) when the
/// decomposition reconstructs chi.
pub fn expected_trace(chi: &ChiVector) -> f64 {
    chi.chi()
        .iter()
        .enumerate()
        .map(|(n, v)| v * binomial(chi.n_qubits(), n))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn chi(n: usize, v: &[f64]) -> ChiVector {
        ChiVector::new(n, v.to_vec()).unwrap()
    }

    #[test]
    fn solve_single_atom() {
        let m = stieltjes_solve(&chi(2, &[1.0, 1.0, 1.0]), &tol()).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert_abs_diff_eq!(m.atoms()[0].r, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(m.atoms()[0].w, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(m.mass_at_infinity(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn solve_pure_infinity() {
        let m = stieltjes_solve(&chi(2, &[0.0, 0.0, 1.0]), &tol()).unwrap();
        assert!(m.atoms().is_empty());
        assert_abs_diff_eq!(m.mass_at_infinity(), 1.0);
    }

    #[test]
    fn solve_two_scale_moments() {
        // chi_n = 1^n + 4^n: one of several valid representations must be
        // found; only reconstruction and the atom budget are pinned.
        let target = chi(2, &[2.0, 5.0, 17.0]);
        let m = stieltjes_solve(&target, &tol()).unwrap();
        assert!(m.atoms().len() <= 2);
        let rec = reconstruct(&m, 2).unwrap();
        for (a, b) in rec.chi().iter().zip(target.chi()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn solve_atom_plus_infinity_odd_n() {
        let target = chi(3, &[1.0, 1.0, 1.0, 2.0]);
        let m = stieltjes_solve(&target, &tol()).unwrap();
        assert_abs_diff_eq!(m.mass_at_infinity(), 1.0, epsilon = 1e-8);
        let rec = reconstruct(&m, 3).unwrap();
        for (a, b) in rec.chi().iter().zip(target.chi()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn solve_geometric_rank_one() {
        let target = chi(4, &[1.0, 2.0, 4.0, 8.0, 16.0]);
        let m = stieltjes_solve(&target, &tol()).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert_abs_diff_eq!(m.atoms()[0].r, 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(m.mass_at_infinity(), 0.0, epsilon = 1e-8);
    }

    #[test]
    fn solve_rejects_infeasible() {
        let c = chi(2, &[0.0, 1.0, 0.0]);
        assert!(matches!(
            stieltjes_solve(&c, &tol()),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn reconstruct_examples() {
        let m = AtomicMeasure::new(vec![Atom { r: 1.0, w: 1.0 }], 0.0).unwrap();
        assert_eq!(reconstruct(&m, 2).unwrap().chi(), &[1.0, 1.0, 1.0]);

        let m = AtomicMeasure::new(Vec::new(), 1.0).unwrap();
        assert_eq!(reconstruct(&m, 3).unwrap().chi(), &[0.0, 0.0, 0.0, 1.0]);

        let m = AtomicMeasure::new(vec![Atom { r: 2.0, w: 3.0 }], 0.0).unwrap();
        assert_eq!(reconstruct(&m, 2).unwrap().chi(), &[3.0, 6.0, 12.0]);
    }

    #[test]
    fn product_states_single_atom() {
        let m = AtomicMeasure::new(vec![Atom { r: 1.0, w: 1.0 }], 0.0).unwrap();
        let dec = product_states(&m, 2).unwrap();
        assert_eq!(dec.terms.len(), 3);
        for t in &dec.terms {
            assert_abs_diff_eq!(t.w, 1.0 / 3.0, epsilon = 1e-15);
            assert_abs_diff_eq!(t.amp0().norm(), 1.0, epsilon = 1e-12);
        }
        // phases are the cube roots of unity
        let mut phases: Vec<f64> = dec
            .terms
            .iter()
            .map(|t| t.amp0().arg().rem_euclid(std::f64::consts::TAU))
            .collect();
        phases.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(phases[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(phases[1], std::f64::consts::TAU / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(phases[2], 2.0 * std::f64::consts::TAU / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn product_states_degenerate() {
        let m = AtomicMeasure::new(Vec::new(), 1.0).unwrap();
        let dec = product_states(&m, 2).unwrap();
        assert_eq!(dec.terms.len(), 1);
        assert_eq!(dec.terms[0].a1, [0.0, 0.0]);

        let m = AtomicMeasure::new(vec![Atom { r: 0.0, w: 0.7 }], 0.0).unwrap();
        let dec = product_states(&m, 3).unwrap();
        assert_eq!(dec.terms.len(), 1);
        assert_eq!(dec.terms[0].a0, [0.0, 0.0]);
        assert_abs_diff_eq!(dec.terms[0].w, 0.7);
    }

    #[test]
    fn verify_examples() {
        let target = chi(2, &[1.0, 1.0, 1.0]);
        let m = stieltjes_solve(&target, &tol()).unwrap();
        let dec = product_states(&m, 2).unwrap();
        assert!(verify_decomposition(&dec, &target).unwrap() <= 1e-10);

        let zerozero = chi(2, &[0.0, 0.0, 1.0]);
        let dec = ProductDecomposition {
            terms: vec![ProductTerm {
                w: 1.0,
                a0: [1.0, 0.0],
                a1: [0.0, 0.0],
            }],
        };
        assert_abs_diff_eq!(verify_decomposition(&dec, &zerozero).unwrap(), 0.0);

        // perturbing one weight moves the error by about the perturbation
        let mut bad = product_states(&m, 2).unwrap();
        bad.terms[0].w += 1e-3;
        let err = verify_decomposition(&bad, &target).unwrap();
        assert!(err > 1e-4 && err < 1e-2, "err = {err}");
    }

    #[test]
    fn trace_identity() {
        let target = chi(3, &[1.0, 1.0, 1.0, 2.0]);
        let m = stieltjes_solve(&target, &tol()).unwrap();
        let dec = product_states(&m, 3).unwrap();
        assert_abs_diff_eq!(
            decomposition_trace(&dec, 3),
            expected_trace(&target),
            epsilon = 1e-8
        );
    }

    #[test]
    fn measure_validation() {
        assert!(AtomicMeasure::new(vec![Atom { r: -0.1, w: 1.0 }], 0.0).is_err());
        assert!(AtomicMeasure::new(vec![Atom { r: 0.1, w: 0.0 }], 0.0).is_err());
        assert!(AtomicMeasure::new(Vec::new(), -0.1).is_err());
    }
}
