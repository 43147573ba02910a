use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by every test in the toolkit.
///
/// `psd_eps` is relative to the largest absolute matrix entry, so unnormalized
/// states are handled uniformly. `residual_eps` gates certificate
/// reconstruction; `rank_eps` is the relative singular-value cutoff for
/// numerical rank decisions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    pub psd_eps: f64,
    pub residual_eps: f64,
    pub rank_eps: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            psd_eps: 1e-10,
            residual_eps: 1e-8,
            rank_eps: 1e-10,
        }
    }
}

impl ToleranceProfile {
    pub fn new(psd_eps: f64, residual_eps: f64, rank_eps: f64) -> Result<Self> {
        let all = [psd_eps, residual_eps, rank_eps];
        if all.iter().any(|&e| !e.is_finite() || e <= 0.0) {
            return Err(Error::Invalid(
                "tolerances must be strictly positive and finite".into(),
            ));
        }
        Ok(Self {
            psd_eps,
            residual_eps,
            rank_eps,
        })
    }

    /// Scale-aware PSD slack for a matrix with largest absolute entry `max_abs`.
    pub fn psd_slack(&self, max_abs: f64) -> f64 {
        self.psd_eps * max_abs.max(1.0)
    }

    /// Scale-aware reconstruction slack.
    pub fn residual_slack(&self, max_abs: f64) -> f64 {
        self.residual_eps * max_abs.max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_contract() {
        let tol = ToleranceProfile::default();
        assert_eq!(tol.psd_eps, 1e-10);
        assert_eq!(tol.residual_eps, 1e-8);
        assert_eq!(tol.rank_eps, 1e-10);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(ToleranceProfile::new(0.0, 1e-8, 1e-10).is_err());
        assert!(ToleranceProfile::new(1e-10, -1.0, 1e-10).is_err());
        assert!(ToleranceProfile::new(1e-10, 1e-8, f64::NAN).is_err());
    }
}
