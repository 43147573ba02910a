//! The acceptance suite: seven numbered criteria covering cross-validation
//! of the two separability tests, decomposition round-trips, witness
//! soundness, half-line SOS round-trips, the qudit CP class, and a dense
//! audit of the Dicke-basis conventions. The CLI `selftest` verb and the
//! `acceptance` integration test both run these functions.

use crate::dicke::{
    dense_dicke, dicke_norm_sq, product_state_dense, tensor, DenseState, DickeIndex,
    DENSE_QUBIT_CAP,
};
use crate::error::{Error, Result};
use crate::gds::{build_hankels, separability_verdict, Certificate, ChiVector, Status};
use crate::generate::{
    generate, generate_qudit_npt, generate_qudit_separable, rejection_sample_separable,
    GenerateKind,
};
use crate::moments::ProductDecomposition;
use crate::numerics::{psd_check, RealPolynomial, ToleranceProfile};
use crate::ppt::{assemble, ppt_verdict, BipartiteCut};
use crate::quditcp::{
    horn_like_instance, separability_verdict_qudit_seeded, ChiMatrix, DEFAULT_CP_BUDGET,
};
use crate::witness::{decompose_nonneg, eval_on_gds, extreme_s, extreme_t, SosDecomposition};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

pub const DEFAULT_SELFTEST_SEED: u64 = 0xacce_5500;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub index: usize,
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {} — {}",
            self.index,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.details
        )
    }
}

fn report(
    index: usize,
    name: &str,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionReport {
    let (passed, details) = match body() {
        Ok(pair) => pair,
        Err(e) => (false, format!("aborted: {e}")),
    };
    CriterionReport {
        index,
        name: name.to_string(),
        passed,
        details,
    }
}

/// Runs all seven criteria with the given master seed.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        criterion_1(seed),
        criterion_2(seed),
        criterion_3(seed),
        criterion_4(seed),
        criterion_5(seed),
        criterion_6(seed),
        criterion_7(seed),
    ]
}

pub fn all_passed(reports: &[CriterionReport]) -> bool {
    !reports.is_empty() && reports.iter().all(|r| r.passed)
}

fn stream_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_add(k.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// The shared instance stream for criteria 1 and 2: 1080 states, N = 2..10,
/// equal thirds separable / entangled / boundary.
fn cross_validation_instances(seed: u64) -> Result<Vec<ChiVector>> {
    let mut out = Vec::with_capacity(1080);
    let mut k = 0u64;
    for n in 2..=10 {
        for _ in 0..40 {
            for kind in [
                GenerateKind::Separable,
                GenerateKind::Entangled,
                GenerateKind::Boundary,
            ] {
                out.push(generate(kind, n, stream_seed(seed, k))?);
                k += 1;
            }
        }
    }
    Ok(out)
}

/// Criterion 1: the Hankel verdict equals the PPT verdict at the canonical
/// cut on >= 1000 seeded instances, with no disagreement where both deciding
/// eigenvalues clear the tolerance band; total runtime <= 30 s.
pub fn criterion_1(seed: u64) -> CriterionReport {
    report(1, "hankel vs ppt cross-validation", || {
        let start = Instant::now();
        let tol = ToleranceProfile::default();
        let instances = cross_validation_instances(seed)?;
        let mut hard = 0usize;
        let mut excused = 0usize;
        for chi in &instances {
            let pair = build_hankels(chi);
            let h_min = pair.m0_matrix.min_eig()?.min(pair.m1_matrix.min_eig()?);
            let h_sep = psd_check(&pair.m0_matrix, &tol)? && psd_check(&pair.m1_matrix, &tol)?;
            let cut = BipartiteCut::canonical(chi.n_qubits())?;
            let pt = assemble(chi, cut)?.partial_transpose()?;
            let p_min = pt.matrix().min_eig()?;
            let p_sep = psd_check(pt.matrix(), &tol)?;
            if h_sep != p_sep {
                let band_h = 10.0 * tol.psd_slack(pair.m0_matrix.max_abs().max(pair.m1_matrix.max_abs()));
                let band_p = 10.0 * tol.psd_slack(pt.matrix().max_abs());
                if h_min.abs() > band_h && p_min.abs() > band_p {
                    hard += 1;
                } else {
                    excused += 1;
                }
            }
        }
        let secs = start.elapsed().as_secs_f64();
        let passed = instances.len() >= 1000 && hard == 0 && secs <= 30.0;
        Ok((
            passed,
            format!(
                "{} instances, {hard} decisive disagreements, {excused} inside the tolerance band, {secs:.2} s",
                instances.len()
            ),
        ))
    })
}

/// Criterion 2: every instance from criterion 1 that is PPT at the canonical
/// cut is PPT at every cut k = 1..N-1.
pub fn criterion_2(seed: u64) -> CriterionReport {
    report(2, "ppt extends to every cut", || {
        let tol = ToleranceProfile::default();
        let instances = cross_validation_instances(seed)?;
        let mut checked = 0usize;
        let mut failures = 0usize;
        for chi in &instances {
            let n = chi.n_qubits();
            if !ppt_verdict(chi, BipartiteCut::canonical(n)?, &tol)? {
                continue;
            }
            checked += 1;
            for k in 1..n {
                if !ppt_verdict(chi, BipartiteCut::new(n, k)?, &tol)? {
                    failures += 1;
                }
            }
        }
        Ok((
            checked > 0 && failures == 0,
            format!("{checked} canonically-PPT instances, {failures} failing cuts"),
        ))
    })
}

fn decomposition_instances(seed: u64) -> Result<Vec<ChiVector>> {
    let mut out = Vec::new();
    let mut k = 0u64;
    for n in 2..=10 {
        for _ in 0..12 {
            out.push(generate(GenerateKind::Separable, n, stream_seed(seed, k))?);
            k += 1;
        }
    }
    for n in 2..=8 {
        for _ in 0..14 {
            out.push(rejection_sample_separable(n, stream_seed(seed, k))?);
            k += 1;
        }
    }
    // normalize so absolute thresholds are meaningful at every scale
    out.into_iter().map(|chi| chi.scaled(1.0 / chi.max_abs())).collect()
}

/// Criterion 3: >= 200 separable instances (half from planted atoms, half
/// rejection-sampled through the Hankel test) decompose with reconstruction
/// error <= 1e-8 and term count <= (N+1)(N+2); dense-state equality holds
/// for every N <= 8 instance.
pub fn criterion_3(seed: u64) -> CriterionReport {
    report(3, "decomposition round-trip", || {
        let tol = ToleranceProfile::default();
        let instances = decomposition_instances(seed)?;
        let mut dense_checked = 0usize;
        let mut worst_residual = 0.0_f64;
        let mut worst_dense = 0.0_f64;
        for chi in &instances {
            let n = chi.n_qubits();
            let verdict = separability_verdict(chi, &tol)?;
            if verdict.status != Status::Separable {
                return Ok((false, format!("N={n} instance not declared separable")));
            }
            let Some(Certificate::ProductDecomposition {
                decomposition,
                residual,
                ..
            }) = verdict.certificate
            else {
                return Ok((false, format!("N={n} verdict lacks a decomposition")));
            };
            worst_residual = worst_residual.max(residual);
            if residual > 1e-8 {
                return Ok((
                    false,
                    format!("N={n} reconstruction residual {residual:.3e} > 1e-8"),
                ));
            }
            if decomposition.terms.len() > (n + 1) * (n + 2) {
                return Ok((
                    false,
                    format!(
                        "N={n} uses {} terms > bound {}",
                        decomposition.terms.len(),
                        (n + 1) * (n + 2)
                    ),
                ));
            }
            if n <= 8 {
                let direct = dense_gds_matrix(chi)?;
                let mixture = dense_mixture_matrix(&decomposition, n)?;
                let diff = max_entry_diff(&direct, &mixture);
                worst_dense = worst_dense.max(diff);
                if diff > 1e-8 * chi.max_abs().max(1.0) {
                    return Ok((
                        false,
                        format!("N={n} dense mismatch {diff:.3e}"),
                    ));
                }
                dense_checked += 1;
            }
        }
        Ok((
            instances.len() >= 200,
            format!(
                "{} instances (worst residual {worst_residual:.2e}), {dense_checked} dense checks (worst {worst_dense:.2e})",
                instances.len()
            ),
        ))
    })
}

/// Criterion 4: separable instances evaluate >= -1e-10 against 1000 random
/// S/T extreme witnesses each; every entangled instance produces a witness
/// certificate with strictly negative value and a validated SOS proof.
pub fn criterion_4(seed: u64) -> CriterionReport {
    report(4, "witness soundness and completeness", || {
        let tol = ToleranceProfile::default();
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, 41));
        let separable = decomposition_instances(seed)?;
        let mut evals = 0usize;
        let mut min_eval = f64::INFINITY;
        for chi in &separable {
            let n = chi.n_qubits();
            for _ in 0..1000 {
                let use_s = rng.random_range(0.0..1.0) < 0.5;
                let w = if use_s {
                    let a: Vec<f64> =
                        (0..=chi.m0()).map(|_| rng.random_range(-1.0..1.0)).collect();
                    extreme_s(&a, n)?
                } else {
                    let b: Vec<f64> =
                        (0..chi.m1()).map(|_| rng.random_range(-1.0..1.0)).collect();
                    extreme_t(&b, n)?
                };
                let v = eval_on_gds(&w, chi)?;
                min_eval = min_eval.min(v);
                evals += 1;
                if v < -1e-10 {
                    return Ok((
                        false,
                        format!("separable N={n} instance hit witness value {v:.3e}"),
                    ));
                }
            }
        }

        let mut entangled_checked = 0usize;
        let mut k = 5000u64;
        for n in 2..=10 {
            for _ in 0..20 {
                let chi = generate(GenerateKind::Entangled, n, stream_seed(seed, k))?;
                k += 1;
                let verdict = separability_verdict(&chi, &tol)?;
                let Some(Certificate::Witness { witness, value, sos }) = verdict.certificate
                else {
                    return Ok((false, format!("N={n} entangled verdict lacks a witness")));
                };
                if verdict.status != Status::Entangled || value >= 0.0 {
                    return Ok((false, format!("N={n} witness value {value:.3e} not negative")));
                }
                let direct = eval_on_gds(&witness, &chi)?;
                if (direct - value).abs() > 1e-9 * chi.max_abs().max(1.0) {
                    return Ok((
                        false,
                        format!("N={n} certificate value mismatch: {direct:.3e} vs {value:.3e}"),
                    ));
                }
                let sos_residual = sos.residual_against(&witness.polynomial());
                if sos_residual > tol.residual_eps {
                    return Ok((
                        false,
                        format!("N={n} SOS proof residual {sos_residual:.3e}"),
                    ));
                }
                entangled_checked += 1;
            }
        }
        Ok((
            evals >= 1000 * separable.len() && entangled_checked == 180,
            format!(
                "{evals} witness evaluations (min {min_eval:.2e}), {entangled_checked} entangled certificates validated"
            ),
        ))
    })
}

fn random_sos_poly(rng: &mut ChaCha8Rng) -> Result<(RealPolynomial, SosDecomposition)> {
    let coeffs = |rng: &mut ChaCha8Rng, deg: usize| -> Result<RealPolynomial> {
        let mut c: Vec<f64> = (0..=deg).map(|_| rng.random_range(-1.0..1.0)).collect();
        if c.iter().all(|v| v.abs() < 1e-3) {
            c[0] = 1.0;
        }
        RealPolynomial::new(c)
    };
    // degrees chosen so deg(x P^2) <= 11 and deg(Q^2) <= 12
    let p_count = rng.random_range(0..=2);
    let q_count = rng.random_range(1..=2);
    let mut p_polys = Vec::with_capacity(p_count);
    for _ in 0..p_count {
        let deg = rng.random_range(0..=5);
        p_polys.push(coeffs(rng, deg)?);
    }
    let mut q_polys = Vec::with_capacity(q_count);
    for _ in 0..q_count {
        let deg = rng.random_range(0..=6);
        q_polys.push(coeffs(rng, deg)?);
    }
    let sos = SosDecomposition { p_polys, q_polys };
    let target = sos.expand();
    Ok((target, sos))
}

/// Criterion 5: 500 polynomials built as x*sum P^2 + sum Q^2 certify and
/// re-decompose with coefficient residual <= 1e-8; 500 polynomials with one
/// simple positive root are rejected.
pub fn criterion_5(seed: u64) -> CriterionReport {
    report(5, "half-line SOS round-trip", || {
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, 51));
        let mut worst = 0.0_f64;
        for i in 0..500 {
            let (target, _) = random_sos_poly(&mut rng)?;
            if target.is_zero() {
                continue;
            }
            let again = decompose_nonneg(&target).map_err(|e| {
                Error::Numerical {
                    context: format!("round-trip #{i} failed to re-decompose: {e}"),
                    residual: f64::NAN,
                }
            })?;
            let residual = again.residual_against(&target);
            worst = worst.max(residual);
            if residual > 1e-8 {
                return Ok((
                    false,
                    format!("round-trip #{i} residual {residual:.3e} > 1e-8"),
                ));
            }
        }
        let mut rejected = 0usize;
        for i in 0..500 {
            let (base, _) = random_sos_poly(&mut rng)?;
            if base.is_zero() {
                continue;
            }
            let r = rng.random_range(0.1..3.0);
            let flip = RealPolynomial::new(vec![-r, 1.0])?;
            let poly = base.mul(&flip);
            // base > 0 at r almost surely, so r is a simple sign-change root
            if base.eval(r).abs() < 1e-9 {
                continue;
            }
            if decompose_nonneg(&poly).is_ok() {
                return Ok((
                    false,
                    format!("poly #{i} with simple positive root was accepted"),
                ));
            }
            rejected += 1;
        }
        Ok((
            rejected >= 495,
            format!("500 round-trips (worst residual {worst:.2e}), {rejected} sign-change rejections"),
        ))
    })
}

/// Criterion 6: generated-CP qudit instances (d <= 6) come back SEPARABLE
/// with residual <= 1e-7 in >= 95% of trials and never ENTANGLED; NPT
/// instances are ENTANGLED in 100% of trials; the doubly-nonnegative
/// non-CP 5x5 instance returns INCONCLUSIVE.
pub fn criterion_6(seed: u64) -> CriterionReport {
    report(6, "qudit cp class", || {
        let tol = ToleranceProfile::default();
        let mut k = 6000u64;
        let mut trials = 0usize;
        let mut successes = 0usize;
        for d in 2..=6 {
            for _ in 0..40 {
                let (raw, _) = generate_qudit_separable(d, stream_seed(seed, k))?;
                k += 1;
                let scale = raw.max_abs().max(1e-12);
                let rows: Vec<Vec<f64>> = raw
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(|v| v / scale).collect())
                    .collect();
                let chi = ChiMatrix::new(d, &rows)?;
                trials += 1;
                match separability_verdict_qudit_seeded(&chi, &tol, DEFAULT_CP_BUDGET, stream_seed(seed, k)) {
                    Ok(v) => match v.status {
                        Status::Entangled => {
                            return Ok((false, format!("CP instance (d={d}) declared ENTANGLED")))
                        }
                        Status::Separable => {
                            if let Some(Certificate::CpFactorization { residual, .. }) =
                                v.certificate
                            {
                                if residual <= 1e-7 {
                                    successes += 1;
                                }
                            }
                        }
                        Status::Inconclusive => {}
                    },
                    Err(Error::Numerical { .. }) => {}
                    Err(e) => return Err(e),
                }
                k += 1;
            }
        }
        let rate = successes as f64 / trials as f64;
        if rate < 0.95 {
            return Ok((
                false,
                format!("factorization success rate {rate:.3} < 0.95 over {trials} trials"),
            ));
        }

        let mut npt_total = 0usize;
        for d in 2..=6 {
            for _ in 0..10 {
                let chi = generate_qudit_npt(d, stream_seed(seed, k))?;
                k += 1;
                let v = separability_verdict_qudit_seeded(&chi, &tol, DEFAULT_CP_BUDGET, 1)?;
                if v.status != Status::Entangled {
                    return Ok((false, format!("NPT instance (d={d}) not declared ENTANGLED")));
                }
                npt_total += 1;
            }
        }

        let horn = horn_like_instance();
        let v = separability_verdict_qudit_seeded(&horn, &tol, DEFAULT_CP_BUDGET, 2)?;
        if v.status != Status::Inconclusive {
            return Ok((
                false,
                format!("DNN-not-CP instance returned {:?}", v.status),
            ));
        }
        Ok((
            true,
            format!(
                "{successes}/{trials} CP factorizations at residual <= 1e-7, {npt_total}/{npt_total} NPT entangled, boundary instance inconclusive"
            ),
        ))
    })
}

/// Criterion 7: dual-basis orthonormality, the generating identity, and the
/// bipartite splitting identity verified densely for all N <= 10 at 1e-12.
pub fn criterion_7(seed: u64) -> CriterionReport {
    report(7, "dense convention audit", || {
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, 71));
        let mut worst = 0.0_f64;
        for n in 1..=10usize {
            let dickes: Vec<DenseState> = (0..=n)
                .map(|j| dense_dicke(DickeIndex::new(n, j)?))
                .collect::<Result<_>>()?;
            // <D_m | D~_n> = delta_mn
            for m in 0..=n {
                for j in 0..=n {
                    let norm = dicke_norm_sq(DickeIndex::new(n, j)?)? as f64;
                    let got = (dickes[m].inner(&dickes[j])? / norm).re;
                    let want = if m == j { 1.0 } else { 0.0 };
                    worst = worst.max((got - want).abs());
                }
            }
            // generating identity at random complex z, |z| <= 1.5
            for _ in 0..10 {
                let z = Complex64::new(
                    rng.random_range(-1.5..1.5),
                    rng.random_range(-1.5..1.5),
                );
                let lhs = product_state_dense(n, z, Complex64::ONE)?;
                let mut rhs = DenseState::zero(n)?;
                let mut zp = Complex64::ONE;
                for d in &dickes {
                    rhs.add_scaled(zp, d)?;
                    zp *= z;
                }
                let scale = lhs
                    .entries()
                    .iter()
                    .map(|e| e.norm())
                    .fold(1.0_f64, f64::max);
                for (a, b) in lhs.entries().iter().zip(rhs.entries()) {
                    worst = worst.max((a - b).norm() / scale);
                }
            }
            // splitting identity at every cut
            for cut in 1..n {
                for (nn, dicke) in dickes.iter().enumerate() {
                    let mut rhs = DenseState::zero(n)?;
                    let lo = nn.saturating_sub(n - cut);
                    let hi = nn.min(cut);
                    for j in lo..=hi {
                        let left = dense_dicke(DickeIndex::new(cut, j)?)?;
                        let right = dense_dicke(DickeIndex::new(n - cut, nn - j)?)?;
                        rhs.add_scaled(Complex64::ONE, &tensor(&left, &right)?)?;
                    }
                    for (a, b) in dicke.entries().iter().zip(rhs.entries()) {
                        worst = worst.max((a - b).norm());
                    }
                }
            }
        }
        Ok((
            worst <= 1e-12,
            format!("N <= 10 audited, worst deviation {worst:.2e}"),
        ))
    })
}

/// Dense density matrix of the GDS state: sum_n chi_n |D_n><D_n| over the
/// unit-coefficient Dicke vectors, row-major, dimension 2^N.
pub fn dense_gds_matrix(chi: &ChiVector) -> Result<Vec<Complex64>> {
    let n = chi.n_qubits();
    if n > DENSE_QUBIT_CAP {
        return Err(Error::Dimension(format!(
            "dense check capped at {DENSE_QUBIT_CAP} qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let mut rho = vec![Complex64::ZERO; dim * dim];
    for (k, &w) in chi.chi().iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let d = dense_dicke(DickeIndex::new(n, k)?)?;
        accumulate_projector(&mut rho, Complex64::new(w, 0.0), d.entries());
    }
    Ok(rho)
}

/// Dense density matrix of a product mixture.
pub fn dense_mixture_matrix(
    dec: &ProductDecomposition,
    n_qubits: usize,
) -> Result<Vec<Complex64>> {
    if n_qubits > DENSE_QUBIT_CAP {
        return Err(Error::Dimension(format!(
            "dense check capped at {DENSE_QUBIT_CAP} qubits, got {n_qubits}"
        )));
    }
    let dim = 1usize << n_qubits;
    let mut rho = vec![Complex64::ZERO; dim * dim];
    for term in &dec.terms {
        let p = product_state_dense(n_qubits, term.amp0(), term.amp1())?;
        accumulate_projector(&mut rho, Complex64::new(term.w, 0.0), p.entries());
    }
    Ok(rho)
}

fn accumulate_projector(rho: &mut [Complex64], w: Complex64, v: &[Complex64]) {
    let dim = v.len();
    for (a, &va) in v.iter().enumerate() {
        if va == Complex64::ZERO {
            continue;
        }
        let row = &mut rho[a * dim..(a + 1) * dim];
        for (r, &vb) in row.iter_mut().zip(v) {
            *r += w * va * vb.conj();
        }
    }
}

/// Largest entrywise magnitude difference between two equally-sized dense
/// matrices.
pub fn max_entry_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_gds_matches_reconstruction() {
        let chi = ChiVector::new(3, vec![0.2, 0.3, 0.1, 0.4]).unwrap();
        let rho = dense_gds_matrix(&chi).unwrap();
        // trace = sum chi_n C(N,n)
        let trace: f64 = (0..8).map(|i| rho[i * 8 + i].re).sum();
        assert!((trace - chi.trace()).abs() < 1e-12);
    }

    #[test]
    fn report_line_format() {
        let r = CriterionReport {
            index: 3,
            name: "demo".into(),
            passed: true,
            details: "ok".into(),
        };
        assert_eq!(r.line(), "criterion 3 (demo): PASS — ok");
    }
}
