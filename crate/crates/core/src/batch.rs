//! Batch separability verdicts. Each input is independent and the verdict
//! path is pure, so the batch distributes over threads with no shared state;
//! results come back in input order.

use crate::error::Error;
use crate::gds::{separability_verdict, ChiVector, Verdict};
use crate::numerics::ToleranceProfile;
use crate::par::{par_map, seq_map};

/// One verdict per input, in order; parallel when the `parallel` feature is
/// enabled (the default).
pub fn batch_verdicts(
    inputs: &[ChiVector],
    tol: &ToleranceProfile,
) -> Vec<Result<Verdict, Error>> {
    par_map(inputs, |chi| separability_verdict(chi, tol))
}

/// Sequential twin of [`batch_verdicts`], used as the benchmark baseline.
pub fn batch_verdicts_sequential(
    inputs: &[ChiVector],
    tol: &ToleranceProfile,
) -> Vec<Result<Verdict, Error>> {
    seq_map(inputs, |chi| separability_verdict(chi, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gds::Status;
    use crate::generate::{generate, GenerateKind};

    #[test]
    fn parallel_and_sequential_agree() {
        let mut inputs = Vec::new();
        for seed in 0..12 {
            inputs.push(generate(GenerateKind::Separable, 5, seed).unwrap());
            inputs.push(generate(GenerateKind::Entangled, 5, seed).unwrap());
        }
        let tol = ToleranceProfile::default();
        let par = batch_verdicts(&inputs, &tol);
        let seq = batch_verdicts_sequential(&inputs, &tol);
        assert_eq!(par.len(), seq.len());
        for (p, s) in par.iter().zip(&seq) {
            let p = p.as_ref().unwrap();
            let s = s.as_ref().unwrap();
            assert_eq!(p.status, s.status);
        }
        // order is preserved: even indices separable, odd entangled
        for (i, v) in par.iter().enumerate() {
            let want = if i % 2 == 0 {
                Status::Separable
            } else {
                Status::Entangled
            };
            assert_eq!(v.as_ref().unwrap().status, want);
        }
    }
}
