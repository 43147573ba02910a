//! Separable witnesses for the bosonic system.
//!
//! A witness W = sum m_ij |D~_i><D~_j| over the dual Dicke basis is separable
//! iff its coefficient matrix M satisfies z'^dag M z' >= 0 for every
//! z' = (1, z, ..., z^N) (power positivity). Phase twirling projects any
//! witness onto its diagonal, where admissibility becomes a scalar statement:
//! g(r) = sum_k m_kk r^k >= 0 on the half-line. Every such g splits as
//! g(x) = sum_i x P_i(x)^2 + sum_i Q_i(x)^2 (the half-line analogue of the
//! sum-of-two-squares decomposition), which is the machine-checkable
//! admissibility proof attached to entanglement certificates.

use crate::error::{Error, Result};
use crate::gds::{build_hankels, ChiVector};
use crate::numerics::{
    complex_poly_mul, min_eig_sym, nonneg_on_halfline, RealPolynomial, SymMatrix,
    ToleranceProfile,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Hermitian coefficient matrix m_{i,j} of a witness over the dual Dicke
/// basis; (N+1) x (N+1), row-major.
#[derive(Debug, Clone)]
pub struct WitnessMatrix {
    n_qubits: usize,
    entries: Vec<Complex64>,
}

impl WitnessMatrix {
    /// Validates Hermiticity within machine tolerance, then symmetrizes
    /// exactly: m[i][j] <- (m[i][j] + conj(m[j][i])) / 2.
    pub fn new(n_qubits: usize, entries: Vec<Complex64>) -> Result<Self> {
        let dim = n_qubits + 1;
        if n_qubits == 0 {
            return Err(Error::Invalid("need at least one qubit".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite("witness matrix entries"));
        }
        let scale = entries.iter().fold(1.0_f64, |m, c| m.max(c.norm()));
        let mut sym = entries.clone();
        for i in 0..dim {
            for j in i..dim {
                let a = entries[i * dim + j];
                let b = entries[j * dim + i].conj();
                if (a - b).norm() > 1e-10 * scale {
                    return Err(Error::Invalid(format!(
                        "matrix is not Hermitian at ({i},{j})"
                    )));
                }
                let avg = (a + b) * 0.5;
                sym[i * dim + j] = avg;
                sym[j * dim + i] = avg.conj();
            }
        }
        Ok(Self {
            n_qubits,
            entries: sym,
        })
    }

    pub fn from_diag(n_qubits: usize, diag: &[f64]) -> Result<Self> {
        let dim = n_qubits + 1;
        if diag.len() != dim {
            return Err(Error::Dimension(format!(
                "expected {} diagonal entries, got {}",
                dim,
                diag.len()
            )));
        }
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for (k, &d) in diag.iter().enumerate() {
            entries[k * dim + k] = Complex64::new(d, 0.0);
        }
        Self::new(n_qubits, entries)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * (self.n_qubits + 1) + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, c| m.max(c.norm()))
    }
}

/// Diagonal witness: coefficients (m_00, ..., m_NN), i.e. the polynomial
/// g(r) = sum_k m_kk r^k that must be nonnegative on [0, inf).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalWitness {
    #[serde(rename = "N")]
    n_qubits: usize,
    diag: Vec<f64>,
}

impl DiagonalWitness {
    pub fn new(n_qubits: usize, diag: Vec<f64>) -> Result<Self> {
        if diag.len() != n_qubits + 1 {
            return Err(Error::Dimension(format!(
                "expected {} diagonal entries for N={}, got {}",
                n_qubits + 1,
                n_qubits,
                diag.len()
            )));
        }
        if diag.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("witness diagonal"));
        }
        Ok(Self { n_qubits, diag })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn polynomial(&self) -> RealPolynomial {
        RealPolynomial::new(self.diag.clone()).expect("validated diagonal is finite")
    }

    /// Admissibility: g(r) >= 0 on the half-line.
    pub fn is_valid(&self) -> Result<bool> {
        nonneg_on_halfline(&self.polynomial())
    }

    /// Rescales so max |diag entry| = 1 (positive scaling, verdict-neutral).
    pub fn normalized(&self) -> Self {
        let m = self.diag.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if m == 0.0 {
            return self.clone();
        }
        Self {
            n_qubits: self.n_qubits,
            diag: self.diag.iter().map(|v| v / m).collect(),
        }
    }
}

/// Phase twirl: averaging U_theta^(x)N W U_theta^dag(x)N over theta kills
/// every off-diagonal coefficient exactly, leaving the diagonal.
pub fn twirl(w: &WitnessMatrix) -> DiagonalWitness {
    let diag = (0..=w.n_qubits).map(|k| w.get(k, k).re).collect();
    DiagonalWitness::new(w.n_qubits, diag).expect("diagonal of validated matrix")
}

/// tr(W rho) for a diagonal witness on a GDS state: sum_k m_kk chi_k.
/// (The dual-basis pairing <D~_j|D_n> = delta_jn makes this exact.)
pub fn eval_on_gds(w: &DiagonalWitness, chi: &ChiVector) -> Result<f64> {
    if w.n_qubits != chi.n_qubits() {
        return Err(Error::Dimension(format!(
            "witness N={} vs state N={}",
            w.n_qubits,
            chi.n_qubits()
        )));
    }
    Ok(w.diag.iter().zip(chi.chi()).map(|(m, c)| m * c).sum())
}

/// Extreme S-form witness from a vector of length m0+1:
/// diag[k] = sum_{i+j=k} a_i a_j, the coefficients of A(x)^2.
pub fn extreme_s(a: &[f64], n_qubits: usize) -> Result<DiagonalWitness> {
    let m0 = n_qubits / 2;
    if a.len() != m0 + 1 {
        return Err(Error::Dimension(format!(
            "S-form needs {} coefficients for N={}, got {}",
            m0 + 1,
            n_qubits,
            a.len()
        )));
    }
    let mut diag = vec![0.0; n_qubits + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in a.iter().enumerate() {
            diag[i + j] += x * y;
        }
    }
    DiagonalWitness::new(n_qubits, diag)
}

/// Extreme T-form witness from a vector of length m1:
/// diag[k] = sum_{i+j+1=k} b_i b_j, the coefficients of x * B(x)^2.
pub fn extreme_t(b: &[f64], n_qubits: usize) -> Result<DiagonalWitness> {
    let m1 = n_qubits.div_ceil(2);
    if b.len() != m1 {
        return Err(Error::Dimension(format!(
            "T-form needs {} coefficients for N={}, got {}",
            m1,
            n_qubits,
            b.len()
        )));
    }
    let mut diag = vec![0.0; n_qubits + 1];
    for (i, x) in b.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            diag[i + j + 1] += x * y;
        }
    }
    DiagonalWitness::new(n_qubits, diag)
}

/// Entanglement certificate from a failing Hankel matrix: the unit
/// eigenvector of the most negative eigenvalue becomes an S-form (M0 failure)
/// or T-form (M1 failure) witness. For the unit eigenvector a,
/// eval_on_gds = a^T M a = the failing eigenvalue < 0 exactly; the returned
/// witness is rescaled to max |diag| = 1, which preserves the sign.
///
/// The witness polynomial is c A(x)^2 (S-form) or c x B(x)^2 (T-form) with
/// c > 0 the normalization factor, so its half-line nonnegativity proof is
/// available in closed form; it is returned alongside the witness rather
/// than re-derived by root analysis, which can misjudge the tangent double
/// roots of a perfect square.
pub fn certificate_from_hankel_failure(
    chi: &ChiVector,
    tol: &ToleranceProfile,
) -> Result<(DiagonalWitness, SosDecomposition)> {
    let pair = build_hankels(chi);
    let min0 = min_eig_sym(&pair.m0_matrix)?;
    let min1 = min_eig_sym(&pair.m1_matrix)?;
    let fail0 = min0 < -tol.psd_slack(pair.m0_matrix.max_abs());
    let fail1 = min1 < -tol.psd_slack(pair.m1_matrix.max_abs());
    if !fail0 && !fail1 {
        return Err(Error::Invalid(
            "certificate requested for a state passing the Hankel criterion".into(),
        ));
    }
    let use_m0 = fail0 && (!fail1 || min0 <= min1);
    let (matrix, s_form): (&SymMatrix, bool) = if use_m0 {
        (&pair.m0_matrix, true)
    } else {
        (&pair.m1_matrix, false)
    };
    let eig = matrix.eigen()?;
    let vec = &eig.vectors[0];
    let w = if s_form {
        extreme_s(vec, chi.n_qubits())?
    } else {
        extreme_t(vec, chi.n_qubits())?
    };
    let amp = w.diag().iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if amp <= 0.0 {
        return Err(Error::Numerical {
            context: "hankel failure eigenvector produced a zero witness".into(),
            residual: 0.0,
        });
    }
    let root = RealPolynomial::new(vec.iter().map(|v| v / amp.sqrt()).collect())?;
    let sos = if s_form {
        SosDecomposition {
            p_polys: Vec::new(),
            q_polys: vec![root],
        }
    } else {
        SosDecomposition {
            p_polys: vec![root],
            q_polys: Vec::new(),
        }
    };
    Ok((w.normalized(), sos))
}

/// Half-line sum-of-squares decomposition:
/// source(x) = sum_i x * P_i(x)^2 + sum_i Q_i(x)^2, with at most two
/// polynomials on each side.
#[derive(Debug, Clone, Serialize)]
pub struct SosDecomposition {
    pub p_polys: Vec<RealPolynomial>,
    pub q_polys: Vec<RealPolynomial>,
}

impl SosDecomposition {
    /// Expands sum x P_i^2 + sum Q_i^2.
    pub fn expand(&self) -> RealPolynomial {
        let mut acc = RealPolynomial::zero();
        for p in &self.p_polys {
            acc = acc.add(&p.mul(p).shift_up(1));
        }
        for q in &self.q_polys {
            acc = acc.add(&q.mul(q));
        }
        acc
    }

    /// Max coefficient discrepancy against a target, relative to
    /// max(1, largest target coefficient).
    pub fn residual_against(&self, target: &RealPolynomial) -> f64 {
        let got = self.expand();
        let n = got.coeffs().len().max(target.coeffs().len());
        let scale = target.max_abs_coeff().max(1.0);
        (0..n)
            .map(|k| {
                let a = got.coeffs().get(k).copied().unwrap_or(0.0);
                let b = target.coeffs().get(k).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0_f64, f64::max)
            / scale
    }
}

/// Constructive decomposition of a polynomial nonnegative on the half-line
/// into x * sum P_i^2 + sum Q_i^2 (the classical Stieltjes splitting, built
/// here from the root structure).
///
/// Substituting x = t^2 turns each admissible factor into a complex factor
/// of a polynomial w(t) with p(t^2) = |w(t)|^2 on the real line:
/// roots at 0 contribute t, positive roots r (even multiplicity 2s)
/// contribute (t^2 - r)^s, negative roots -u contribute (t - i sqrt(u)),
/// and complex pairs contribute (t^2 - z) for the Im z > 0 representative.
/// Writing w = G + iH and splitting even/odd parts G = G_e(t^2) + t G_o(t^2)
/// (likewise H) gives p = (G_e^2 + H_e^2) + x (G_o^2 + H_o^2); the odd
/// cross-terms cancel identically because p(t^2) is even. Multiplying the
/// complex factors is exactly the repeated two-squares identity.
pub fn decompose_nonneg(p: &RealPolynomial) -> Result<SosDecomposition> {
    if p.is_zero() {
        return Ok(SosDecomposition {
            p_polys: Vec::new(),
            q_polys: Vec::new(),
        });
    }
    if !nonneg_on_halfline(p)? {
        return Err(Error::Invalid(
            "polynomial is negative somewhere on the half-line".into(),
        ));
    }
    if p.degree() == 0 {
        return Ok(SosDecomposition {
            p_polys: Vec::new(),
            q_polys: vec![RealPolynomial::constant(p.coeffs()[0].sqrt())?],
        });
    }

    let mut roots = p.all_roots()?;
    // Deterministic factor order; ties in pairing broken by ascending (re, im).
    roots.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());

    const NEAR_ZERO: f64 = 1e-7;
    let mut w = vec![Complex64::new(p.leading().sqrt(), 0.0)];
    for (z, mult) in roots {
        if z.im > 0.0 {
            // complex pair representative: (t^2 - z)^mult
            let factor = [-z, Complex64::ZERO, Complex64::new(1.0, 0.0)];
            for _ in 0..mult {
                w = complex_poly_mul(&w, &factor);
            }
        } else if z.im < 0.0 {
            // conjugate of a pair already handled via the Im > 0 member
            continue;
        } else if z.re.abs() <= NEAR_ZERO {
            // root at the origin: t^mult
            let factor = [Complex64::ZERO, Complex64::new(1.0, 0.0)];
            for _ in 0..mult {
                w = complex_poly_mul(&w, &factor);
            }
        } else if z.re > 0.0 {
            // positive root with even multiplicity 2s: (t^2 - r)^s
            if mult % 2 != 0 {
                return Err(Error::Numerical {
                    context: format!("odd multiplicity {mult} at positive root {:.6e}", z.re),
                    residual: z.re,
                });
            }
            let factor = [
                Complex64::new(-z.re, 0.0),
                Complex64::ZERO,
                Complex64::new(1.0, 0.0),
            ];
            for _ in 0..mult / 2 {
                w = complex_poly_mul(&w, &factor);
            }
        } else {
            // negative root -u: (t - i sqrt(u))^mult
            let factor = [
                Complex64::new(0.0, -(-z.re).sqrt()),
                Complex64::new(1.0, 0.0),
            ];
            for _ in 0..mult {
                w = complex_poly_mul(&w, &factor);
            }
        }
    }

    // Split w = G + iH, then each into even/odd parts in t.
    let take = |sel: fn(&Complex64) -> f64, parity: usize| -> Result<RealPolynomial> {
        RealPolynomial::new(
            w.iter()
                .enumerate()
                .filter(|(k, _)| k % 2 == parity)
                .map(|(_, c)| sel(c))
                .collect(),
        )
    };
    let g_e = take(|c| c.re, 0)?;
    let g_o = take(|c| c.re, 1)?;
    let h_e = take(|c| c.im, 0)?;
    let h_o = take(|c| c.im, 1)?;

    let q_polys: Vec<RealPolynomial> = [g_e, h_e].into_iter().filter(|p| !p.is_zero()).collect();
    let p_polys: Vec<RealPolynomial> = [g_o, h_o].into_iter().filter(|p| !p.is_zero()).collect();
    Ok(SosDecomposition { p_polys, q_polys })
}

/// Outcome of the power-positivity search.
#[derive(Debug, Clone, Serialize)]
pub struct PowerPositivity {
    /// Heuristic verdict: no violation found. Not a proof.
    pub is_positive: bool,
    /// Violating point and normalized value when one was found.
    pub violation: Option<PowerViolation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerViolation {
    pub z: [f64; 2],
    pub value: f64,
}

/// Heuristic power-positivity test: minimizes the Rayleigh-normalized
/// objective q(z) = z'^dag M z' / ||z'||^2 with z' = (1, z, ..., z^N) by
/// gradient descent from `samples` seeded random starts (plus z = 0 and the
/// |z| -> inf limit, which are the corner coefficients m_00 and m_NN).
/// `false` comes with a violating z; `true` is one-sided evidence only.
pub fn power_positive_heuristic(
    w: &WitnessMatrix,
    samples: usize,
    seed: u64,
) -> PowerPositivity {
    let n = w.n_qubits;
    let dim = n + 1;
    let scale = w.max_abs().max(1.0);
    let threshold = -1e-10 * scale;

    let objective = |z: Complex64| -> f64 {
        let mut zvec = Vec::with_capacity(dim);
        let mut pow = Complex64::new(1.0, 0.0);
        for _ in 0..dim {
            zvec.push(pow);
            pow *= z;
        }
        let mut f = 0.0;
        let mut n2 = 0.0;
        for i in 0..dim {
            n2 += zvec[i].norm_sqr();
            for j in 0..dim {
                f += (zvec[i].conj() * w.get(i, j) * zvec[j]).re;
            }
        }
        f / n2
    };

    // Wirtinger gradient of the normalized objective, returned as the complex
    // steepest-ascent direction 2 * d/d(conj z).
    let gradient = |z: Complex64| -> Complex64 {
        let mut zvec = Vec::with_capacity(dim);
        let mut dvec = Vec::with_capacity(dim);
        let mut pow = Complex64::new(1.0, 0.0);
        let mut dprev = Complex64::ZERO;
        for k in 0..dim {
            zvec.push(pow);
            dvec.push(dprev * k as f64);
            dprev = pow;
            pow *= z;
        }
        let mut mz = vec![Complex64::ZERO; dim];
        for (i, mzi) in mz.iter_mut().enumerate() {
            for (j, zj) in zvec.iter().enumerate() {
                *mzi += w.get(i, j) * zj;
            }
        }
        let f: f64 = (0..dim).map(|i| (zvec[i].conj() * mz[i]).re).sum();
        let n2: f64 = zvec.iter().map(|v| v.norm_sqr()).sum();
        let df: Complex64 = (0..dim).map(|i| dvec[i].conj() * mz[i]).sum();
        let dn: Complex64 = (0..dim).map(|i| dvec[i].conj() * zvec[i]).sum();
        (df * n2 - dn * f) * (2.0 / (n2 * n2))
    };

    let mut best_val = objective(Complex64::ZERO);
    let mut best_z = Complex64::ZERO;
    // |z| -> inf limit: the normalized objective tends to m_NN.
    if w.get(n, n).re < best_val {
        best_val = w.get(n, n).re;
        best_z = Complex64::new(f64::INFINITY, 0.0);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        // radius ladder covers both tiny and large |z|
        let radius = rng.random_range(-3.0_f64..3.0).exp2();
        let angle = rng.random_range(0.0..std::f64::consts::TAU);
        let mut z = Complex64::from_polar(radius, angle);
        let mut fz = objective(z);
        let mut step = 0.25;
        for _ in 0..80 {
            let g = gradient(z);
            let gn = g.norm();
            if gn < 1e-12 {
                break;
            }
            let mut advanced = false;
            while step > 1e-18 {
                let trial = z - g * step;
                let ft = objective(trial);
                if ft < fz - 0.1 * step * gn * gn {
                    z = trial;
                    fz = ft;
                    advanced = true;
                    break;
                }
                step *= 0.5;
            }
            if !advanced {
                break;
            }
            step = (step * 2.0).min(4.0);
        }
        if fz < best_val {
            best_val = fz;
            best_z = z;
        }
    }

    if best_val < threshold {
        PowerPositivity {
            is_positive: false,
            violation: Some(PowerViolation {
                z: [best_z.re, best_z.im],
                value: best_val,
            }),
        }
    } else {
        PowerPositivity {
            is_positive: true,
            violation: None,
        }
    }
}
