//! Command-line surface for the bosonic separability toolkit.
//!
//! One verb per invocation, one JSON document on standard output carrying the
//! verdict, any certificate, the tolerances used, and wall-clock timing.
//! Diagnostics go to standard error. Exit codes: 0 = SEPARABLE / true,
//! 1 = ENTANGLED / false, 2 = INCONCLUSIVE, 64 = usage error, 65 = malformed
//! input, 66 = unreadable file, 70 = internal numerical failure.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bosonic_sep::batch::batch_verdicts;
use bosonic_sep::generate::{generate, generate_qudit_npt, generate_qudit_separable, GenerateKind};
use bosonic_sep::moments::{verify_decomposition, ProductDecomposition};
use bosonic_sep::numerics::nonneg_on_halfline;
use bosonic_sep::ppt::{assemble, ppt_verdict, BipartiteCut};
use bosonic_sep::quditcp::{
    qudit_product_states, separability_verdict_qudit_seeded, ChiMatrix, DEFAULT_CP_BUDGET,
    DEFAULT_SEED,
};
use bosonic_sep::selftest::{all_passed, run_all, DEFAULT_SELFTEST_SEED};
use bosonic_sep::witness::{eval_on_gds, twirl, DiagonalWitness, WitnessMatrix};
use bosonic_sep::{separability_verdict, Certificate, ChiVector, Status, ToleranceProfile, Verdict};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "bosonic-sep",
    version,
    about = "Separability of bosonic diagonal symmetric states, with machine-checkable certificates",
    long_about = "Decides separability of N-qubit diagonal symmetric states (given by their Dicke-basis\n\
        eigenvalues chi_0..chi_N) and of d x d bosonic qudit states (given by a symmetric chi matrix).\n\
        Every invocation prints exactly one JSON document on stdout; diagnostics go to stderr.\n\
        \n\
        Exit codes: 0 SEPARABLE/true, 1 ENTANGLED/false, 2 INCONCLUSIVE,\n\
        64 usage, 65 malformed input, 66 unreadable file, 70 numerical failure.\n\
        \n\
        Input schemas: state {\"N\": int, \"chi\": [..], \"convention\"?: \"chi\"|\"normalized\"},\n\
        witness {\"N\": int, \"diag\": [..]} or {\"N\": int, \"matrix\": [[re or [re,im], ..], ..]},\n\
        decomposition {\"terms\": [{\"w\", \"a0\": [re,im], \"a1\": [re,im]}, ..]},\n\
        qudit state {\"d\": int, \"chi\": [[..], ..]}. Pass \"-\" as a file to read stdin."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Relative PSD eigenvalue tolerance (default 1e-10)
    #[arg(long, global = true, value_name = "EPS")]
    tol_psd: Option<f64>,

    /// Reconstruction-residual tolerance (default 1e-8)
    #[arg(long, global = true, value_name = "EPS")]
    tol_residual: Option<f64>,

    /// Seed for any randomized search or generation (recorded in the output)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// How to read the "chi" array when the state file does not say:
    /// "chi" = raw Dicke eigenvalues, "normalized" = physical diagonal
    /// weights p_n = chi_n * C(N,n)
    #[arg(long, global = true, value_enum)]
    convention: Option<Convention>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide separability of a qubit GDS state (Hankel criterion + certificate)
    Check {
        /// State JSON file ("-" for stdin)
        #[arg(long, value_name = "FILE", conflicts_with = "batch")]
        r#in: Option<PathBuf>,
        /// Directory of *.json state files, processed independently (in
        /// parallel when built with the default features); exit code is the
        /// worst verdict across files (1 > 2 > 0)
        #[arg(long, value_name = "DIR")]
        batch: Option<PathBuf>,
    },
    /// Produce (or verify) an explicit product-state decomposition
    Decompose {
        /// State JSON file ("-" for stdin)
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Verify a previously emitted decomposition against the state
        /// instead of computing a fresh one
        #[arg(long, value_name = "FILE")]
        verify: Option<PathBuf>,
    },
    /// Positive-partial-transpose test at one bipartite cut
    Ppt {
        /// State JSON file ("-" for stdin)
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Block size k of the cut (default: the canonical cut k = N/2)
        #[arg(long, value_name = "K")]
        cut: Option<usize>,
    },
    /// Construct a witness for an entangled state, or evaluate a given one
    Witness {
        /// State JSON file ("-" for stdin)
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Witness JSON file to evaluate on the state (diagonal, or a full
        /// Hermitian matrix which is phase-twirled first); exit 0 if the
        /// expectation is nonnegative, 1 if it certifies entanglement,
        /// 2 if negative but the witness is not admissible
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
    /// Decide separability of a d x d bosonic qudit state (CP membership)
    QuditCheck {
        /// Qudit state JSON file ("-" for stdin)
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Number of factorization restarts before giving up
        #[arg(long, value_name = "RESTARTS")]
        budget: Option<usize>,
    },
    /// Search for an explicit completely positive factorization
    QuditFactorize {
        /// Qudit state JSON file ("-" for stdin)
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Number of factorization restarts before giving up
        #[arg(long, value_name = "RESTARTS")]
        budget: Option<usize>,
        /// Also emit the full product-state mixture (one term per factor and
        /// per point of the phase grid; can be large)
        #[arg(long)]
        emit_product_states: bool,
    },
    /// Emit a reproducible random instance as a state JSON document
    Random {
        /// separable | entangled | boundary (qubit), separable | npt (qudit)
        #[arg(long, value_enum)]
        kind: RandomKind,
        /// Number of qubits (qubit instance; N >= 2)
        #[arg(long, value_name = "N")]
        n: Option<usize>,
        /// Local dimension (qudit instance; d >= 2)
        #[arg(long, value_name = "D", conflicts_with = "n")]
        d: Option<usize>,
    },
    /// Run the full acceptance suite; exits 0 iff every criterion passes
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    /// Raw Dicke-basis eigenvalues chi_n
    Chi,
    /// Physical diagonal weights p_n = chi_n * C(N,n)
    Normalized,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum RandomKind {
    Separable,
    Entangled,
    Boundary,
    Npt,
}

/// A failure that aborts the invocation: diagnostic on stderr, no JSON.
struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self { code: 64, msg: msg.into() }
    }
    fn input(msg: impl Into<String>) -> Self {
        Self { code: 65, msg: msg.into() }
    }
    fn io(msg: impl Into<String>) -> Self {
        Self { code: 66, msg: msg.into() }
    }
    fn internal(msg: impl Into<String>) -> Self {
        Self { code: 70, msg: msg.into() }
    }
}

/// Errors raised while ingesting user data are input errors (65); errors
/// raised later, during the computation itself, are internal (70).
fn bad_input(e: bosonic_sep::Error) -> Failure {
    Failure::input(e.to_string())
}

fn compute_failed(e: bosonic_sep::Error) -> Failure {
    Failure::internal(e.to_string())
}

fn main() {
    let started = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli, started) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli, started: Instant) -> Result<i32, Failure> {
    let defaults = ToleranceProfile::default();
    let tol = ToleranceProfile::new(
        cli.tol_psd.unwrap_or(defaults.psd_eps),
        cli.tol_residual.unwrap_or(defaults.residual_eps),
        defaults.rank_eps,
    )
    .map_err(|e| Failure::usage(e.to_string()))?;
    let convention = cli.convention;
    let seed = cli.seed;

    let (verb, body, echo_seed, code) = match cli.cmd {
        Cmd::Check { r#in, batch } => match (r#in, batch) {
            (Some(path), None) => {
                let chi = load_state(&path, convention)?;
                let v = separability_verdict(&chi, &tol).map_err(compute_failed)?;
                let code = status_code(v.status);
                ("check", verdict_body(v), None, code)
            }
            (None, Some(dir)) => {
                let (body, code) = run_batch(&dir, convention, &tol)?;
                ("check", body, None, code)
            }
            _ => return Err(Failure::usage("check requires exactly one of --in or --batch")),
        },
        Cmd::Decompose { r#in, verify } => {
            let chi = load_state(&r#in, convention)?;
            match verify {
                Some(dec_path) => {
                    let dec: ProductDecomposition = read_json(&dec_path)?;
                    let residual = verify_decomposition(&dec, &chi).map_err(bad_input)?;
                    let slack = tol.residual_slack(chi.max_abs());
                    let verified = residual <= slack;
                    let body = json!({
                        "verified": verified,
                        "residual": residual,
                        "residual_slack": slack,
                        "term_count": dec.terms.len(),
                    });
                    ("decompose", body, None, if verified { 0 } else { 2 })
                }
                None => {
                    let v = separability_verdict(&chi, &tol).map_err(compute_failed)?;
                    let code = status_code(v.status);
                    let mut body = verdict_body(v);
                    // surface the decomposition at the top level so the
                    // emitted document can be fed back through --verify
                    let dec = body
                        .get("certificate")
                        .and_then(|c| c.get("decomposition"))
                        .cloned();
                    if let Some(dec) = dec {
                        let obj = body.as_object_mut().expect("body is an object");
                        obj.insert("decomposition".into(), dec);
                    }
                    ("decompose", body, None, code)
                }
            }
        }
        Cmd::Ppt { r#in, cut } => {
            let chi = load_state(&r#in, convention)?;
            let n = chi.n_qubits();
            let cut = match cut {
                Some(k) => BipartiteCut::new(n, k).map_err(|e| Failure::usage(e.to_string()))?,
                None => BipartiteCut::canonical(n).map_err(|e| Failure::usage(e.to_string()))?,
            };
            let ppt = ppt_verdict(&chi, cut, &tol).map_err(compute_failed)?;
            let pt_min_eig = assemble(&chi, cut)
                .and_then(|b| b.partial_transpose())
                .and_then(|pt| pt.matrix().min_eig())
                .map_err(compute_failed)?;
            let body = json!({
                "ppt": ppt,
                "cut": cut.k(),
                "pt_min_eig": pt_min_eig,
            });
            ("ppt", body, None, if ppt { 0 } else { 1 })
        }
        Cmd::Witness { r#in, witness } => {
            let chi = load_state(&r#in, convention)?;
            match witness {
                Some(w_path) => {
                    let w = load_witness(&w_path)?;
                    let value = eval_on_gds(&w, &chi).map_err(bad_input)?;
                    let admissible = nonneg_on_halfline(&w.polynomial()).map_err(compute_failed)?;
                    let slack = tol.psd_eps * (1.0 + chi.max_abs() * w.polynomial().max_abs_coeff());
                    let certified = admissible && value < -slack;
                    let code = if certified {
                        1
                    } else if value >= -slack {
                        0
                    } else {
                        2
                    };
                    let body = json!({
                        "witness": w,
                        "value": value,
                        "admissible": admissible,
                        "certifies_entanglement": certified,
                    });
                    ("witness", body, None, code)
                }
                None => {
                    let v = separability_verdict(&chi, &tol).map_err(compute_failed)?;
                    let code = status_code(v.status);
                    ("witness", verdict_body(v), None, code)
                }
            }
        }
        Cmd::QuditCheck { r#in, budget } => {
            let chi = load_qudit(&r#in)?;
            let budget = budget.unwrap_or(DEFAULT_CP_BUDGET);
            let seed = seed.unwrap_or(DEFAULT_SEED);
            let v = separability_verdict_qudit_seeded(&chi, &tol, budget, seed)
                .map_err(compute_failed)?;
            let code = status_code(v.status);
            let mut body = verdict_body(v);
            body.as_object_mut()
                .expect("body is an object")
                .insert("budget".into(), json!(budget));
            ("qudit-check", body, Some(seed), code)
        }
        Cmd::QuditFactorize { r#in, budget, emit_product_states } => {
            let chi = load_qudit(&r#in)?;
            let budget = budget.unwrap_or(DEFAULT_CP_BUDGET);
            let seed = seed.unwrap_or(DEFAULT_SEED);
            let v = separability_verdict_qudit_seeded(&chi, &tol, budget, seed)
                .map_err(compute_failed)?;
            let code = status_code(v.status);
            let found = match &v.certificate {
                Some(Certificate::CpFactorization { factorization, .. }) => {
                    Some(factorization.clone())
                }
                _ => None,
            };
            let mut body = verdict_body(v);
            let obj = body.as_object_mut().expect("body is an object");
            obj.insert("budget".into(), json!(budget));
            if let Some(factorization) = found {
                let (grid, terms) =
                    qudit_product_states(&factorization, chi.d()).map_err(compute_failed)?;
                obj.insert("phase_grid_modulus".into(), json!(grid));
                obj.insert("product_state_count".into(), json!(terms.len()));
                if emit_product_states {
                    obj.insert(
                        "product_states".into(),
                        serde_json::to_value(&terms).expect("terms serialize"),
                    );
                }
            }
            ("qudit-factorize", body, Some(seed), code)
        }
        Cmd::Random { kind, n, d } => {
            let seed = seed.unwrap_or(0);
            let body = match (d, kind) {
                (Some(d), RandomKind::Separable) => {
                    let (m, factors) =
                        generate_qudit_separable(d, seed).map_err(|e| Failure::usage(e.to_string()))?;
                    json!({
                        "d": d,
                        "chi": m.rows(),
                        "kind": "separable",
                        "planted_rank": factors.len(),
                    })
                }
                (Some(d), RandomKind::Npt) => {
                    let m = generate_qudit_npt(d, seed).map_err(|e| Failure::usage(e.to_string()))?;
                    json!({ "d": d, "chi": m.rows(), "kind": "npt" })
                }
                (Some(_), _) => {
                    return Err(Failure::usage(
                        "--d supports only --kind separable or --kind npt",
                    ))
                }
                (None, RandomKind::Npt) => {
                    return Err(Failure::usage("--kind npt requires --d"))
                }
                (None, kind) => {
                    let n = n.ok_or_else(|| Failure::usage("random requires --n or --d"))?;
                    if n < 2 {
                        return Err(Failure::usage("random requires N >= 2"));
                    }
                    let core_kind = match kind {
                        RandomKind::Separable => GenerateKind::Separable,
                        RandomKind::Entangled => GenerateKind::Entangled,
                        RandomKind::Boundary => GenerateKind::Boundary,
                        RandomKind::Npt => unreachable!("handled above"),
                    };
                    let chi = generate(core_kind, n, seed).map_err(compute_failed)?;
                    json!({
                        "N": n,
                        "chi": chi.chi(),
                        "convention": "chi",
                        "kind": kind_name(kind),
                    })
                }
            };
            ("random", body, Some(seed), 0)
        }
        Cmd::Selftest => {
            let seed = seed.unwrap_or(DEFAULT_SELFTEST_SEED);
            let reports = run_all(seed);
            for r in &reports {
                eprintln!("{}", r.line());
            }
            let passed = all_passed(&reports);
            let body = json!({
                "all_passed": passed,
                "criteria": reports,
            });
            ("selftest", body, Some(seed), if passed { 0 } else { 1 })
        }
    };

    emit(verb, body, &tol, echo_seed, started, code);
    Ok(code)
}

fn kind_name(kind: RandomKind) -> &'static str {
    match kind {
        RandomKind::Separable => "separable",
        RandomKind::Entangled => "entangled",
        RandomKind::Boundary => "boundary",
        RandomKind::Npt => "npt",
    }
}

fn status_code(status: Status) -> i32 {
    match status {
        Status::Separable => 0,
        Status::Entangled => 1,
        Status::Inconclusive => 2,
    }
}

/// Body fields shared by every verdict-shaped verb.
fn verdict_body(v: Verdict) -> Value {
    let mut body = Map::new();
    body.insert(
        "status".into(),
        serde_json::to_value(v.status).expect("status serializes"),
    );
    if let Some(cert) = v.certificate {
        body.insert(
            "certificate".into(),
            serde_json::to_value(&cert).expect("certificate serializes"),
        );
    }
    Value::Object(body)
}

/// Print the single output document, with the common fields folded in.
fn emit(
    verb: &str,
    mut body: Value,
    tol: &ToleranceProfile,
    seed: Option<u64>,
    started: Instant,
    code: i32,
) {
    let obj = body.as_object_mut().expect("output body is a JSON object");
    obj.insert("verb".into(), json!(verb));
    if let Some(s) = seed {
        obj.insert("seed".into(), json!(s));
    }
    obj.insert(
        "tolerances".into(),
        serde_json::to_value(tol).expect("tolerances serialize"),
    );
    obj.insert(
        "timing_ms".into(),
        json!(started.elapsed().as_secs_f64() * 1e3),
    );
    obj.insert("exit_code".into(), json!(code));
    println!(
        "{}",
        serde_json::to_string_pretty(&body).expect("output serializes")
    );
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::io(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::io(format!("reading {}: {e}", path.display())))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read_source(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("malformed JSON in {}: {e}", path.display())))
}

#[derive(Deserialize)]
struct StateInput {
    #[serde(rename = "N")]
    n: usize,
    chi: Vec<f64>,
    #[serde(default)]
    convention: Option<String>,
}

fn load_state(path: &Path, flag: Option<Convention>) -> Result<ChiVector, Failure> {
    let input: StateInput = read_json(path)?;
    state_from_input(input, flag, path)
}

fn state_from_input(
    input: StateInput,
    flag: Option<Convention>,
    path: &Path,
) -> Result<ChiVector, Failure> {
    // the file's own declaration wins over the command-line default
    let convention = match input.convention.as_deref() {
        Some("chi") => Convention::Chi,
        Some("normalized") => Convention::Normalized,
        Some(other) => {
            return Err(Failure::input(format!(
                "{}: unknown convention {other:?} (expected \"chi\" or \"normalized\")",
                path.display()
            )))
        }
        None => flag.unwrap_or(Convention::Chi),
    };
    match convention {
        Convention::Chi => ChiVector::new(input.n, input.chi),
        Convention::Normalized => ChiVector::from_normalized(input.n, input.chi),
    }
    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
struct QuditInput {
    d: usize,
    chi: Vec<Vec<f64>>,
}

fn load_qudit(path: &Path) -> Result<ChiMatrix, Failure> {
    let input: QuditInput = read_json(path)?;
    ChiMatrix::new(input.d, &input.chi)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Either a real number or an [re, im] pair.
#[derive(Deserialize)]
#[serde(untagged)]
enum JsonComplex {
    Re(f64),
    Pair([f64; 2]),
}

impl JsonComplex {
    fn to_complex(&self) -> Complex64 {
        match self {
            JsonComplex::Re(re) => Complex64::new(*re, 0.0),
            JsonComplex::Pair([re, im]) => Complex64::new(*re, *im),
        }
    }
}

#[derive(Deserialize)]
struct WitnessInput {
    #[serde(rename = "N")]
    n: usize,
    #[serde(default)]
    diag: Option<Vec<f64>>,
    #[serde(default)]
    matrix: Option<Vec<Vec<JsonComplex>>>,
}

/// Diagonal witnesses pass through; full Hermitian matrices are
/// phase-twirled to their diagonal, which has the same expectation on every
/// diagonal symmetric state.
fn load_witness(path: &Path) -> Result<DiagonalWitness, Failure> {
    let input: WitnessInput = read_json(path)?;
    let fail = |e: bosonic_sep::Error| Failure::input(format!("{}: {e}", path.display()));
    match (input.diag, input.matrix) {
        (Some(diag), None) => DiagonalWitness::new(input.n, diag).map_err(fail),
        (None, Some(rows)) => {
            let dim = input.n + 1;
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(Failure::input(format!(
                    "{}: witness matrix must be {dim} x {dim} for N = {}",
                    path.display(),
                    input.n
                )));
            }
            let entries: Vec<Complex64> = rows
                .iter()
                .flat_map(|r| r.iter().map(JsonComplex::to_complex))
                .collect();
            let w = WitnessMatrix::new(input.n, entries).map_err(fail)?;
            Ok(twirl(&w))
        }
        _ => Err(Failure::input(format!(
            "{}: witness needs exactly one of \"diag\" or \"matrix\"",
            path.display()
        ))),
    }
}

/// Independent verdicts over every *.json file in a directory. Files that
/// fail to parse are reported in place and count as inconclusive for the
/// exit code; verdict severity is ENTANGLED > INCONCLUSIVE > SEPARABLE.
fn run_batch(
    dir: &Path,
    flag: Option<Convention>,
    tol: &ToleranceProfile,
) -> Result<(Value, i32), Failure> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure::io(format!("reading {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::usage(format!(
            "no .json files found in {}",
            dir.display()
        )));
    }

    let mut loaded: Vec<(String, Result<ChiVector, Failure>)> = Vec::new();
    for path in &files {
        let name = path.display().to_string();
        loaded.push((name, load_state(path, flag)));
    }
    let states: Vec<ChiVector> = loaded
        .iter()
        .filter_map(|(_, r)| r.as_ref().ok().cloned())
        .collect();
    let mut verdicts = batch_verdicts(&states, tol).into_iter();

    let mut entries = Vec::new();
    let mut worst = 0i32;
    for (name, parsed) in loaded {
        match parsed {
            Err(f) => {
                worst = worse_of(worst, 2);
                entries.push(json!({ "file": name, "error": f.msg }));
            }
            Ok(_) => {
                let outcome = verdicts.next().expect("one verdict per parsed state");
                match outcome {
                    Ok(v) => {
                        let code = status_code(v.status);
                        worst = worse_of(worst, code);
                        let mut entry = Map::new();
                        entry.insert("file".into(), json!(name));
                        entry.insert(
                            "status".into(),
                            serde_json::to_value(v.status).expect("status serializes"),
                        );
                        entry.insert("exit_code".into(), json!(code));
                        if let Some(summary) = certificate_summary(&v.certificate) {
                            entry.insert("summary".into(), summary);
                        }
                        entries.push(Value::Object(entry));
                    }
                    Err(e) => {
                        worst = worse_of(worst, 2);
                        entries.push(json!({ "file": name, "error": e.to_string() }));
                    }
                }
            }
        }
    }
    let body = json!({
        "batch": entries,
        "file_count": entries.len(),
    });
    Ok((body, worst))
}

/// Severity order for batch exit codes: ENTANGLED (1) > INCONCLUSIVE (2) >
/// SEPARABLE (0).
fn worse_of(a: i32, b: i32) -> i32 {
    let rank = |c: i32| match c {
        1 => 2,
        2 => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

/// One-line gist of a certificate for batch listings (full certificates are
/// available via single-file invocations).
fn certificate_summary(cert: &Option<Certificate>) -> Option<Value> {
    match cert.as_ref()? {
        Certificate::ProductDecomposition { decomposition, residual, .. } => Some(json!({
            "kind": "product_decomposition",
            "terms": decomposition.terms.len(),
            "residual": residual,
        })),
        Certificate::Witness { value, .. } => Some(json!({
            "kind": "witness",
            "value": value,
        })),
        Certificate::CpFactorization { residual, .. } => Some(json!({
            "kind": "cp_factorization",
            "residual": residual,
        })),
        Certificate::DnnViolation { value, .. } => Some(json!({
            "kind": "dnn_violation",
            "value": value,
        })),
    }
}
