//! General diagonal symmetric (GDS) states and the Hankel separability
//! criterion.
//!
//! A GDS state on N qubits is rho = sum_n chi_n |D_{N,n}><D_{N,n}| with
//! nonnegative weights against the unnormalized Dicke vectors. Such a state
//! is separable if and only if the two Hankel matrices
//!
//! ```text
//! M0[i][j] = chi_{i+j}      (size m0+1, m0 = floor(N/2))
//! M1[i][j] = chi_{i+j+1}    (size m1,   m1 = floor((N+1)/2))
//! ```
//!
//! are both positive semidefinite — exactly the solvability condition of a
//! truncated Stieltjes moment problem with an allowed atom at infinity.

use crate::dicke::binomial;
use crate::error::{Error, Result};
use crate::moments::{self, AtomicMeasure, ProductDecomposition};
use crate::numerics::{min_eig_sym, SymMatrix, ToleranceProfile};
use crate::quditcp::CpFactorization;
use crate::witness::{self, DiagonalWitness, SosDecomposition};
use serde::{Deserialize, Serialize};

/// Dicke-diagonal weights (chi_0, ..., chi_N) of a GDS state, stored against
/// the unnormalized Dicke basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiVector {
    n_qubits: usize,
    chi: Vec<f64>,
}

impl ChiVector {
    /// Validates and canonicalizes: entries below the PSD slack are rejected,
    /// tiny negatives are clamped to zero, all-zero input is rejected.
    pub fn with_tolerance(n_qubits: usize, chi: Vec<f64>, tol: &ToleranceProfile) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Invalid("need at least one qubit".into()));
        }
        if chi.len() != n_qubits + 1 {
            return Err(Error::Dimension(format!(
                "expected {} weights for N={}, got {}",
                n_qubits + 1,
                n_qubits,
                chi.len()
            )));
        }
        if chi.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("chi entries"));
        }
        let max_abs = chi.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let slack = tol.psd_slack(max_abs);
        let mut canon = chi;
        for v in &mut canon {
            if *v < -slack {
                return Err(Error::Invalid(format!(
                    "negative eigenvalue {v:.3e} beyond tolerance"
                )));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        if canon.iter().all(|&v| v == 0.0) {
            return Err(Error::Invalid("all-zero chi vector".into()));
        }
        Ok(Self {
            n_qubits,
            chi: canon,
        })
    }

    pub fn new(n_qubits: usize, chi: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(n_qubits, chi, &ToleranceProfile::default())
    }

    /// Ingests physically normalized diagonal weights p_n (against the unit
    /// Dicke vectors) by dividing out the norm: chi_n = p_n / C(N, n).
    pub fn from_normalized(n_qubits: usize, diag: Vec<f64>) -> Result<Self> {
        if diag.len() != n_qubits + 1 {
            return Err(Error::Dimension(format!(
                "expected {} weights for N={}, got {}",
                n_qubits + 1,
                n_qubits,
                diag.len()
            )));
        }
        let chi = diag
            .iter()
            .enumerate()
            .map(|(n, p)| p / binomial(n_qubits, n))
            .collect();
        Self::new(n_qubits, chi)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn chi(&self) -> &[f64] {
        &self.chi
    }

    #[inline]
    pub fn m0(&self) -> usize {
        self.n_qubits / 2
    }

    #[inline]
    pub fn m1(&self) -> usize {
        self.n_qubits.div_ceil(2)
    }

    pub fn max_abs(&self) -> f64 {
        self.chi.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Physical trace of rho: sum_n chi_n * C(N, n).
    pub fn trace(&self) -> f64 {
        self.chi
            .iter()
            .enumerate()
            .map(|(n, v)| v * binomial(self.n_qubits, n))
            .sum()
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        if c <= 0.0 || !c.is_finite() {
            return Err(Error::Invalid("scale factor must be positive".into()));
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            chi: self.chi.iter().map(|v| v * c).collect(),
        })
    }
}

/// The two Hankel matrices of the separability criterion: M0[i][j] =
/// chi_{i+j} and M1[i][j] = chi_{i+j+1}.
#[derive(Debug, Clone)]
pub struct HankelPair {
    pub m0_matrix: SymMatrix,
    pub m1_matrix: SymMatrix,
}

pub fn build_hankels(chi: &ChiVector) -> HankelPair {
    let c = chi.chi();
    let m0 = chi.m0();
    let m1 = chi.m1();
    let m0_matrix = SymMatrix::from_fn(m0 + 1, |i, j| c[i + j])
        .expect("validated chi entries are finite");
    let m1_matrix = SymMatrix::from_fn(m1, |i, j| c[i + j + 1])
        .expect("validated chi entries are finite");
    HankelPair {
        m0_matrix,
        m1_matrix,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Separable,
    Entangled,
    Inconclusive,
}

/// Machine-checkable evidence attached to a decided verdict.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Separable GDS state: representing measure plus the explicit
    /// product-state mixture and its reconstruction residual.
    ProductDecomposition {
        measure: AtomicMeasure,
        decomposition: ProductDecomposition,
        residual: f64,
    },
    /// Entangled GDS state: diagonal witness with its (negative) expectation
    /// and a sum-of-squares proof that the witness is admissible.
    Witness {
        witness: DiagonalWitness,
        value: f64,
        sos: SosDecomposition,
    },
    /// Separable d (x) d instance: completely positive factorization.
    CpFactorization {
        factorization: CpFactorization,
        residual: f64,
    },
    /// Entangled d (x) d instance: vector v with v^T chi v < 0.
    DnnViolation { vector: Vec<f64>, value: f64 },
}

/// Decision with optional certificate. SEPARABLE and ENTANGLED always carry
/// one; INCONCLUSIVE never does.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn separable(certificate: Certificate) -> Self {
        Self {
            status: Status::Separable,
            certificate: Some(certificate),
        }
    }

    pub fn entangled(certificate: Certificate) -> Self {
        Self {
            status: Status::Entangled,
            certificate: Some(certificate),
        }
    }

    pub fn inconclusive() -> Self {
        Self {
            status: Status::Inconclusive,
            certificate: None,
        }
    }
}

/// Full separability decision with certificate construction. Never returns
/// INCONCLUSIVE: the Hankel criterion is complete for the GDS class.
///
/// Borderline policy: when the deciding eigenvalue sits within 10x the PSD
/// slack of zero, the verdict follows its sign, but a certificate that fails
/// to validate surfaces as a tolerance diagnostic instead of a silent flip.
pub fn separability_verdict(chi: &ChiVector, tol: &ToleranceProfile) -> Result<Verdict> {
    let pair = build_hankels(chi);
    let min0 = min_eig_sym(&pair.m0_matrix)?;
    let min1 = min_eig_sym(&pair.m1_matrix)?;
    let slack0 = tol.psd_slack(pair.m0_matrix.max_abs());
    let slack1 = tol.psd_slack(pair.m1_matrix.max_abs());
    let psd = min0 >= -slack0 && min1 >= -slack1;
    let borderline = (min0.abs() <= 10.0 * slack0 && min0 < slack0)
        || (min1.abs() <= 10.0 * slack1 && min1 < slack1);

    let diagnose = |err: Error| -> Error {
        if borderline {
            Error::Tolerance(format!(
                "deciding eigenvalues ({min0:.3e}, {min1:.3e}) are borderline and the \
                 certificate failed to validate: {err}"
            ))
        } else {
            err
        }
    };

    if psd {
        let measure = moments::stieltjes_solve(chi, tol).map_err(diagnose)?;
        let decomposition = moments::product_states(&measure, chi.n_qubits())?;
        let residual = moments::verify_decomposition(&decomposition, chi)?;
        if residual > tol.residual_slack(chi.max_abs()) {
            return Err(diagnose(Error::Numerical {
                context: "product decomposition reconstruction".into(),
                residual,
            }));
        }
        Ok(Verdict::separable(Certificate::ProductDecomposition {
            measure,
            decomposition,
            residual,
        }))
    } else {
        let (witness, sos) = witness::certificate_from_hankel_failure(chi, tol).map_err(diagnose)?;
        let value = witness::eval_on_gds(&witness, chi)?;
        if value >= 0.0 {
            return Err(diagnose(Error::Numerical {
                context: "entanglement witness evaluation".into(),
                residual: value,
            }));
        }
        Ok(Verdict::entangled(Certificate::Witness {
            witness,
            value,
            sos,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn validate_accepts_and_clamps() {
        let tol = ToleranceProfile::default();
        assert!(ChiVector::new(2, vec![0.0, 1.0, 0.0]).is_ok());
        assert!(ChiVector::new(2, vec![1.0, -1.0, 0.0]).is_err());
        let clamped = ChiVector::with_tolerance(2, vec![1.0, -1e-13, 0.5], &tol).unwrap();
        assert_eq!(clamped.chi()[1], 0.0);
    }

    #[test]
    fn validate_rejects_shape_errors() {
        assert!(ChiVector::new(2, vec![1.0, 1.0]).is_err());
        assert!(ChiVector::new(0, vec![1.0]).is_err());
        assert!(ChiVector::new(2, vec![0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn trace_examples() {
        assert_abs_diff_eq!(
            ChiVector::new(2, vec![0.0, 1.0, 0.0]).unwrap().trace(),
            2.0
        );
        assert_abs_diff_eq!(
            ChiVector::new(2, vec![0.0, 0.0, 1.0]).unwrap().trace(),
            1.0
        );
        assert_abs_diff_eq!(
            ChiVector::new(2, vec![0.25, 0.25, 0.25]).unwrap().trace(),
            1.0
        );
    }

    #[test]
    fn normalized_ingestion_divides_by_binomial() {
        let v = ChiVector::from_normalized(2, vec![0.0, 2.0, 0.0]).unwrap();
        assert_eq!(v.chi(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn hankel_shapes() {
        let n2 = ChiVector::new(2, vec![1.0, 2.0, 3.0]).unwrap();
        let p = build_hankels(&n2);
        assert_eq!(p.m0_matrix.rows(), vec![vec![1.0, 2.0], vec![2.0, 3.0]]);
        assert_eq!(p.m1_matrix.rows(), vec![vec![2.0]]);

        let n3 = ChiVector::new(3, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let p = build_hankels(&n3);
        assert_eq!(p.m0_matrix.rows(), vec![vec![1.0, 2.0], vec![2.0, 3.0]]);
        assert_eq!(p.m1_matrix.rows(), vec![vec![2.0, 3.0], vec![3.0, 4.0]]);

        let n4 = ChiVector::new(4, vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let p = build_hankels(&n4);
        assert_eq!(
            p.m0_matrix.rows(),
            vec![
                vec![1.0, 2.0, 3.0],
                vec![2.0, 3.0, 4.0],
                vec![3.0, 4.0, 5.0]
            ]
        );
        assert_eq!(p.m1_matrix.rows(), vec![vec![2.0, 3.0], vec![3.0, 4.0]]);
    }

    #[test]
    fn verdict_entangled_dicke_one() {
        let tol = ToleranceProfile::default();
        let chi = ChiVector::new(2, vec![0.0, 1.0, 0.0]).unwrap();
        let v = separability_verdict(&chi, &tol).unwrap();
        assert_eq!(v.status, Status::Entangled);
        match v.certificate.unwrap() {
            Certificate::Witness { value, .. } => {
                assert_abs_diff_eq!(value, -1.0, epsilon = 1e-10);
            }
            other => panic!("expected witness certificate, got {other:?}"),
        }
    }

    #[test]
    fn verdict_separable_all_zeros_state() {
        let tol = ToleranceProfile::default();
        let chi = ChiVector::new(2, vec![0.0, 0.0, 1.0]).unwrap();
        let v = separability_verdict(&chi, &tol).unwrap();
        assert_eq!(v.status, Status::Separable);
        match v.certificate.unwrap() {
            Certificate::ProductDecomposition {
                measure, residual, ..
            } => {
                assert!(measure.atoms().is_empty());
                assert_abs_diff_eq!(measure.mass_at_infinity(), 1.0, epsilon = 1e-12);
                assert!(residual <= 1e-10);
            }
            other => panic!("expected decomposition certificate, got {other:?}"),
        }
    }

    #[test]
    fn verdict_separable_geometric() {
        let tol = ToleranceProfile::default();
        let chi = ChiVector::new(4, vec![1.0, 2.0, 4.0, 8.0, 16.0]).unwrap();
        let v = separability_verdict(&chi, &tol).unwrap();
        assert_eq!(v.status, Status::Separable);
    }

    #[test]
    fn status_serializes_screaming() {
        let s = serde_json::to_string(&Status::Separable).unwrap();
        assert_eq!(s, "\"SEPARABLE\"");
    }
}
