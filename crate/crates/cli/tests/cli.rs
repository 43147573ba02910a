//! End-to-end tests of the binary: exit codes, JSON document shape, input
//! schemas, and round-tripping of emitted certificates.

use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::{json, Value};

static DIR_COUNTER: AtomicUsize = AtomicUsize::new(0);

/// Fresh scratch directory per test, cleaned up on drop.
struct Scratch(PathBuf);

impl Scratch {
    fn new() -> Self {
        let dir = std::env::temp_dir().join(format!(
            "bosonic-sep-cli-{}-{}",
            std::process::id(),
            DIR_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.0.join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self) -> &Path {
        &self.0
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Output {
    /// The single JSON document every successful invocation must emit.
    fn doc(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| {
            panic!("stdout is not a JSON document: {e}\n---\n{}", self.stdout)
        })
    }
}

fn run(args: &[&str]) -> Output {
    run_with_stdin(args, None)
}

fn run_with_stdin(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bosonic-sep"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    if let Some(text) = stdin {
        use std::io::Write;
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    Output {
        code: out.status.code().expect("process exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Common-field contract: verb echoed, tolerances present, timing recorded,
/// embedded exit code matches the real one.
fn assert_document_contract(out: &Output, verb: &str) {
    let doc = out.doc();
    assert_eq!(doc["verb"], json!(verb));
    assert!(doc["tolerances"]["psd_eps"].is_f64());
    assert!(doc["tolerances"]["residual_eps"].is_f64());
    assert!(doc["timing_ms"].as_f64().unwrap() >= 0.0);
    assert_eq!(doc["exit_code"].as_i64().unwrap() as i32, out.code);
}

const SEP_STATE: &str = r#"{"N": 2, "chi": [1.0, 1.0, 1.0]}"#;
const ENT_STATE: &str = r#"{"N": 2, "chi": [0.0, 1.0, 0.0]}"#;

#[test]
fn check_separable_exits_zero_with_decomposition() {
    let dir = Scratch::new();
    let state = dir.file("sep.json", SEP_STATE);
    let out = run(&["check", "--in", state.to_str().unwrap()]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_document_contract(&out, "check");
    let doc = out.doc();
    assert_eq!(doc["status"], json!("SEPARABLE"));
    assert_eq!(doc["certificate"]["kind"], json!("product_decomposition"));
    assert!(doc["certificate"]["residual"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn check_entangled_exits_one_with_witness_value_minus_one() {
    let dir = Scratch::new();
    let state = dir.file("ent.json", ENT_STATE);
    let out = run(&["check", "--in", state.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_document_contract(&out, "check");
    let doc = out.doc();
    assert_eq!(doc["status"], json!("ENTANGLED"));
    assert_eq!(doc["certificate"]["kind"], json!("witness"));
    let value = doc["certificate"]["value"].as_f64().unwrap();
    assert!(
        (value + 1.0).abs() <= 1e-9,
        "chi (0,1,0) has witness value -1, got {value}"
    );
}

#[test]
fn check_reads_stdin() {
    let out = run_with_stdin(&["check", "--in", "-"], Some(SEP_STATE));
    assert_eq!(out.code, 0);
    assert_eq!(out.doc()["status"], json!("SEPARABLE"));
}

#[test]
fn malformed_json_exits_65_with_diagnostic() {
    let dir = Scratch::new();
    let bad = dir.file("bad.json", "{ not json !!");
    let out = run(&["check", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.code, 65);
    assert!(out.stdout.is_empty(), "no document on failure");
    assert!(out.stderr.contains("malformed JSON"));
}

#[test]
fn semantically_invalid_state_exits_65() {
    let dir = Scratch::new();
    // chi length does not match N
    let bad = dir.file("bad.json", r#"{"N": 3, "chi": [1.0, 1.0]}"#);
    let out = run(&["check", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.code, 65);
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_file_exits_66() {
    let out = run(&["check", "--in", "/nonexistent/state.json"]);
    assert_eq!(out.code, 66);
}

#[test]
fn usage_errors_exit_64() {
    // neither --in nor --batch
    assert_eq!(run(&["check"]).code, 64);
    // unknown flag
    assert_eq!(run(&["check", "--frobnicate"]).code, 64);
    // npt without --d
    assert_eq!(run(&["random", "--kind", "npt", "--n", "4"]).code, 64);
    // no verb
    assert_eq!(run(&[]).code, 64);
    // nonpositive tolerance
    let dir = Scratch::new();
    let state = dir.file("sep.json", SEP_STATE);
    assert_eq!(
        run(&["check", "--in", state.to_str().unwrap(), "--tol-psd", "-1"]).code,
        64
    );
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["--version"]).code, 0);
    assert_eq!(run(&["check", "--help"]).code, 0);
}

#[test]
fn decompose_emits_three_terms_and_verifies_its_own_output() {
    let dir = Scratch::new();
    let state = dir.file("sep.json", SEP_STATE);
    let out = run(&["decompose", "--in", state.to_str().unwrap()]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_document_contract(&out, "decompose");
    let doc = out.doc();
    assert_eq!(doc["status"], json!("SEPARABLE"));
    let terms = doc["decomposition"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3, "chi (1,1,1) decomposes into 3 product terms");

    // feed the emitted decomposition back through the validator
    let dec = dir.file("dec.json", &doc["decomposition"].to_string());
    let verify = run(&[
        "decompose",
        "--in",
        state.to_str().unwrap(),
        "--verify",
        dec.to_str().unwrap(),
    ]);
    assert_eq!(verify.code, 0);
    let vdoc = verify.doc();
    assert_eq!(vdoc["verified"], json!(true));
    assert!(vdoc["residual"].as_f64().unwrap() <= 1e-8);

    // the same decomposition does not verify against a different state
    let other = dir.file("other.json", r#"{"N": 2, "chi": [5.0, 1.0, 1.0]}"#);
    let mismatch = run(&[
        "decompose",
        "--in",
        other.to_str().unwrap(),
        "--verify",
        dec.to_str().unwrap(),
    ]);
    assert_eq!(mismatch.code, 2);
    assert_eq!(mismatch.doc()["verified"], json!(false));
}

#[test]
fn decompose_entangled_exits_one() {
    let dir = Scratch::new();
    let state = dir.file("ent.json", ENT_STATE);
    let out = run(&["decompose", "--in", state.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(out.doc()["status"], json!("ENTANGLED"));
}

#[test]
fn ppt_detects_both_sides_and_respects_cut_flag() {
    let dir = Scratch::new();
    let sep = dir.file("sep.json", SEP_STATE);
    let ent = dir.file("ent.json", ENT_STATE);

    let ok = run(&["ppt", "--in", sep.to_str().unwrap()]);
    assert_eq!(ok.code, 0);
    assert_document_contract(&ok, "ppt");
    assert_eq!(ok.doc()["ppt"], json!(true));

    let bad = run(&["ppt", "--in", ent.to_str().unwrap()]);
    assert_eq!(bad.code, 1);
    assert_eq!(bad.doc()["ppt"], json!(false));
    assert!(bad.doc()["pt_min_eig"].as_f64().unwrap() < 0.0);

    let cut1 = run(&["ppt", "--in", ent.to_str().unwrap(), "--cut", "1"]);
    assert_eq!(cut1.code, 1);
    assert_eq!(cut1.doc()["cut"], json!(1));

    // cut out of range is a usage error
    assert_eq!(run(&["ppt", "--in", sep.to_str().unwrap(), "--cut", "5"]).code, 64);
}

#[test]
fn witness_certificate_round_trips_through_evaluation() {
    let dir = Scratch::new();
    let ent = dir.file("ent.json", ENT_STATE);
    let sep = dir.file("sep.json", SEP_STATE);

    let made = run(&["witness", "--in", ent.to_str().unwrap()]);
    assert_eq!(made.code, 1);
    assert_document_contract(&made, "witness");
    let doc = made.doc();
    assert_eq!(doc["certificate"]["kind"], json!("witness"));

    // the emitted witness is itself valid input for evaluation
    let w = dir.file("w.json", &doc["certificate"]["witness"].to_string());
    let eval = run(&[
        "witness",
        "--in",
        ent.to_str().unwrap(),
        "--witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(eval.code, 1);
    let edoc = eval.doc();
    assert_eq!(edoc["admissible"], json!(true));
    assert_eq!(edoc["certifies_entanglement"], json!(true));
    assert!(edoc["value"].as_f64().unwrap() < 0.0);

    // an admissible witness never goes negative on a separable state
    let on_sep = run(&[
        "witness",
        "--in",
        sep.to_str().unwrap(),
        "--witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(on_sep.code, 0);
    assert_eq!(on_sep.doc()["certifies_entanglement"], json!(false));
}

#[test]
fn witness_accepts_full_matrix_and_twirls_it() {
    let dir = Scratch::new();
    let ent = dir.file("ent.json", ENT_STATE);
    // diag(1, -1, 1) with off-diagonal noise that twirling must discard;
    // x^2 - x + 1 > 0 on the half-line, so the witness is admissible
    let w = dir.file(
        "w.json",
        r#"{"N": 2, "matrix": [[1.0, [0.0, 0.5], 0.0],
                               [[0.0, -0.5], -1.0, 0.25],
                               [0.0, 0.25, 1.0]]}"#,
    );
    let out = run(&[
        "witness",
        "--in",
        ent.to_str().unwrap(),
        "--witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 1, "stderr: {}", out.stderr);
    let doc = out.doc();
    assert_eq!(doc["witness"]["diag"], json!([1.0, -1.0, 1.0]));
    assert!((doc["value"].as_f64().unwrap() + 1.0).abs() <= 1e-12);
}

#[test]
fn qudit_check_classifies_reference_instances() {
    let dir = Scratch::new();
    // NPT: [[1,2],[2,1]] fails PSD
    let npt = dir.file("npt.json", r#"{"d": 2, "chi": [[1.0, 2.0], [2.0, 1.0]]}"#);
    let out = run(&["qudit-check", "--in", npt.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_document_contract(&out, "qudit-check");
    let doc = out.doc();
    assert_eq!(doc["status"], json!("ENTANGLED"));
    assert_eq!(doc["certificate"]["kind"], json!("dnn_violation"));
    assert!(doc["certificate"]["value"].as_f64().unwrap() < 0.0);

    // doubly nonnegative 2x2 is completely positive
    let cp = dir.file("cp.json", r#"{"d": 2, "chi": [[2.0, 1.0], [1.0, 2.0]]}"#);
    let out = run(&["qudit-check", "--in", cp.to_str().unwrap(), "--seed", "7"]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    let doc = out.doc();
    assert_eq!(doc["status"], json!("SEPARABLE"));
    assert_eq!(doc["certificate"]["kind"], json!("cp_factorization"));
    assert_eq!(doc["seed"], json!(7));
}

#[test]
fn qudit_factorize_emits_factors_and_counts_product_states() {
    let dir = Scratch::new();
    let cp = dir.file("cp.json", r#"{"d": 2, "chi": [[2.0, 1.0], [1.0, 2.0]]}"#);
    let out = run(&["qudit-factorize", "--in", cp.to_str().unwrap()]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_document_contract(&out, "qudit-factorize");
    let doc = out.doc();
    let factors = doc["certificate"]["factorization"]["factors"]
        .as_array()
        .unwrap();
    assert!(!factors.is_empty());
    // grid modulus is the smallest prime above 2(d-1)^2 = 2
    assert_eq!(doc["phase_grid_modulus"], json!(3));
    let count = doc["product_state_count"].as_u64().unwrap();
    assert_eq!(count, 9 * factors.len() as u64);
    assert!(doc.get("product_states").is_none(), "terms only on request");

    let full = run(&[
        "qudit-factorize",
        "--in",
        cp.to_str().unwrap(),
        "--emit-product-states",
    ]);
    let fdoc = full.doc();
    assert_eq!(
        fdoc["product_states"].as_array().unwrap().len() as u64,
        count
    );
}

#[test]
fn random_is_deterministic_and_feeds_back_into_check() {
    let dir = Scratch::new();
    for (kind, expect) in [("separable", 0), ("entangled", 1), ("boundary", 0)] {
        let out = run(&["random", "--kind", kind, "--n", "4", "--seed", "11"]);
        assert_eq!(out.code, 0);
        assert_document_contract(&out, "random");
        let doc = out.doc();
        assert_eq!(doc["N"], json!(4));
        assert_eq!(doc["chi"].as_array().unwrap().len(), 5);
        assert_eq!(doc["seed"], json!(11));

        let again = run(&["random", "--kind", kind, "--n", "4", "--seed", "11"]);
        assert_eq!(doc["chi"], again.doc()["chi"], "same seed, same instance");

        let state = dir.file(&format!("{kind}.json"), &doc.to_string());
        let check = run(&["check", "--in", state.to_str().unwrap()]);
        assert_eq!(check.code, expect, "kind {kind}");
    }

    // qudit flavors
    let qsep = run(&["random", "--kind", "separable", "--d", "3", "--seed", "5"]);
    assert_eq!(qsep.code, 0);
    let qdoc = qsep.doc();
    assert_eq!(qdoc["d"], json!(3));
    let state = dir.file("qsep.json", &qdoc.to_string());
    let check = run(&["qudit-check", "--in", state.to_str().unwrap()]);
    assert_eq!(check.code, 0, "stderr: {}", check.stderr);

    let qnpt = run(&["random", "--kind", "npt", "--d", "3", "--seed", "5"]);
    let state = dir.file("qnpt.json", &qnpt.doc().to_string());
    let check = run(&["qudit-check", "--in", state.to_str().unwrap()]);
    assert_eq!(check.code, 1);
}

#[test]
fn normalized_convention_rescales_by_binomials() {
    let dir = Scratch::new();
    // p = (1, 2, 1) with C(2,n) = (1, 2, 1) means chi = (1, 1, 1)
    let inline = dir.file(
        "norm.json",
        r#"{"N": 2, "chi": [1.0, 2.0, 1.0], "convention": "normalized"}"#,
    );
    let a = run(&["check", "--in", inline.to_str().unwrap()]);
    assert_eq!(a.code, 0);

    // same file without the field, selected by the flag instead
    let bare = dir.file("bare.json", r#"{"N": 2, "chi": [1.0, 2.0, 1.0]}"#);
    let b = run(&[
        "check",
        "--in",
        bare.to_str().unwrap(),
        "--convention",
        "normalized",
    ]);
    assert_eq!(b.code, 0);

    // unknown convention string is an input error
    let bad = dir.file("badconv.json", r#"{"N": 2, "chi": [1, 2, 1], "convention": "dual"}"#);
    assert_eq!(run(&["check", "--in", bad.to_str().unwrap()]).code, 65);
}

#[test]
fn batch_reports_every_file_and_takes_worst_exit() {
    let dir = Scratch::new();
    dir.file("a_sep.json", SEP_STATE);
    dir.file("b_ent.json", ENT_STATE);
    dir.file("c_bad.json", "not json");
    dir.file("ignored.txt", "not a state");

    let out = run(&["check", "--batch", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, 1, "entangled outranks the parse failure");
    assert_document_contract(&out, "check");
    let doc = out.doc();
    let entries = doc["batch"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert_eq!(entries[0]["status"], json!("SEPARABLE"));
    assert_eq!(entries[1]["status"], json!("ENTANGLED"));
    assert_eq!(entries[1]["summary"]["kind"], json!("witness"));
    assert!(entries[2]["error"].as_str().is_some());

    // all-separable directory exits 0
    let clean = Scratch::new();
    clean.file("a.json", SEP_STATE);
    clean.file("b.json", r#"{"N": 3, "chi": [1.0, 0.5, 0.3, 0.2]}"#);
    let out = run(&["check", "--batch", clean.path().to_str().unwrap()]);
    assert_eq!(out.code, 0, "doc: {}", out.stdout);

    // empty directory is a usage error
    let empty = Scratch::new();
    assert_eq!(run(&["check", "--batch", empty.path().to_str().unwrap()]).code, 64);
}

/// The full acceptance suite through the CLI gate.
#[test]
fn selftest_passes_and_prints_criterion_lines() {
    let out = run(&["selftest"]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_document_contract(&out, "selftest");
    let doc = out.doc();
    assert_eq!(doc["all_passed"], json!(true));
    assert_eq!(doc["criteria"].as_array().unwrap().len(), 7);
    assert_eq!(out.stderr.lines().count(), 7, "one line per criterion");
}
