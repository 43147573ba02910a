//! Acceptance gate: one test per criterion. Each prints a single
//! `criterion K (<name>): PASS/FAIL — details` line (run with
//! `cargo test --test acceptance -- --nocapture` to see them all).

use bosonic_sep::selftest::{
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
    CriterionReport, DEFAULT_SELFTEST_SEED,
};

fn check(report: CriterionReport) {
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_1_hankel_vs_ppt_cross_validation() {
    check(criterion_1(DEFAULT_SELFTEST_SEED));
}

#[test]
fn criterion_2_ppt_extends_to_every_cut() {
    check(criterion_2(DEFAULT_SELFTEST_SEED));
}

#[test]
fn criterion_3_decomposition_round_trip() {
    check(criterion_3(DEFAULT_SELFTEST_SEED));
}

#[test]
fn criterion_4_witness_soundness_and_completeness() {
    check(criterion_4(DEFAULT_SELFTEST_SEED));
}

#[test]
fn criterion_5_halfline_sos_round_trip() {
    check(criterion_5(DEFAULT_SELFTEST_SEED));
}

#[test]
fn criterion_6_qudit_cp_class() {
    check(criterion_6(DEFAULT_SELFTEST_SEED));
}

#[test]
fn criterion_7_dense_convention_audit() {
    check(criterion_7(DEFAULT_SELFTEST_SEED));
}
