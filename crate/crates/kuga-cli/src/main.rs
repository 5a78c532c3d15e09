//! Command-line front end: classification runs, single-candidate
//! verification, and a bundled two-field worked example with a golden
//! enumeration.
//!
//! Exit codes: 0 = verified, 2 = parse error (command line, spec file,
//! candidate key, or `KUGA_TOLERANCE`), 3 = a genuine verification
//! failure, 4 = internal inconsistency (dead-zone residuals, table
//! disagreements, realization failures on admissible data).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};

use kuga_core::hcond::Tolerances;
use kuga_core::pipeline::{certify_candidate, Certified, PipelineConfig, PipelineError};
use kuga_core::report::{
    matrix_dump, render_markdown, to_canonical_json, ToolInfo, VerificationReport,
};
use kuga_core::satake::{enumerate_candidates, parse_candidate_key, Candidate, SatakeError};
use kuga_core::spec::parse::parse_group_spec;
use kuga_core::spec::GroupSpec;

const SEC6_SPEC: &str = include_str!("../assets/sec6.spec");
const SEC6_GOLDEN: &str = include_str!("../assets/sec6.golden");
/// Dimension bound the shipped golden enumeration was computed at;
/// example runs cap their own bound here so the key comparison stays
/// meaningful.
const SEC6_GOLDEN_BOUND: u64 = 512;

const EXIT_OK: u8 = 0;
const EXIT_PARSE: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "kuga",
    version,
    about = "Classify and certify symplectic representations of hermitian groups \
             defining Kuga fiber varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every candidate under a dimension bound and certify
    /// each one end to end.
    Classify {
        /// Group description file.
        #[arg(long)]
        spec: PathBuf,
        /// Largest total real dimension to enumerate.
        #[arg(long)]
        max_dim: u64,
        /// Assemble the forms over the Gaussian rationals and demand
        /// the structural identities exactly.
        #[arg(long)]
        exact: bool,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Certify a single candidate given by its canonical key.
    Verify {
        /// Group description file.
        #[arg(long)]
        spec: PathBuf,
        /// Canonical candidate key (`factor:embedding:kind` legs joined
        /// by `⊗`, summands joined by `⊕`, optional `*mult`).
        #[arg(long)]
        candidate: String,
    },
    /// Run a bundled example against its golden enumeration.
    Example {
        /// Name of the bundled example; `sec6` is the only one.
        name: String,
        /// Dimension bound (default 512; the golden enumeration caps
        /// there, larger values are clamped).
        #[arg(long)]
        max_dim: Option<u64>,
        /// Write the assembled matrices of each family's minimal
        /// candidate to `sec6_family_<i>_{E,J,H}.txt`.
        #[arg(long)]
        dump_matrices: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tols = match tolerances_from_env() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let code = match cli.command {
        Command::Classify {
            spec,
            max_dim,
            exact,
            report,
        } => cmd_classify(&spec, max_dim, exact, report.as_deref(), tols),
        Command::Verify { spec, candidate } => cmd_verify(&spec, &candidate, tols),
        Command::Example {
            name,
            max_dim,
            dump_matrices,
        } => cmd_example(&name, max_dim, dump_matrices, tols),
    };
    ExitCode::from(code)
}

/// `KUGA_TOLERANCE` overrides the pass tolerance; the failure floor is
/// fixed.
fn tolerances_from_env() -> Result<Tolerances, String> {
    match std::env::var("KUGA_TOLERANCE") {
        Ok(raw) => {
            let pass: f64 = raw
                .trim()
                .parse()
                .map_err(|_| format!("KUGA_TOLERANCE must be a float, got `{raw}`"))?;
            if !pass.is_finite() || pass <= 0.0 {
                return Err(format!(
                    "KUGA_TOLERANCE must be a positive finite float, got `{raw}`"
                ));
            }
            Ok(Tolerances::with_pass(pass))
        }
        Err(std::env::VarError::NotPresent) => Ok(Tolerances::default()),
        Err(e) => Err(format!("KUGA_TOLERANCE is unreadable: {e}")),
    }
}

fn load_spec(path: &std::path::Path) -> Result<GroupSpec, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read `{}`: {e}", path.display());
        EXIT_PARSE
    })?;
    parse_group_spec(&text).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_PARSE
    })
}

/// Certify candidates across the available cores; results keep the
/// input order, so output is deterministic regardless of scheduling.
fn certify_all(
    spec: &GroupSpec,
    cands: &[Candidate],
    config: &PipelineConfig,
) -> Vec<Result<Certified, PipelineError>> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(cands.len().max(1));
    if workers <= 1 {
        return cands
            .iter()
            .map(|c| certify_candidate(spec, c, config))
            .collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<Certified, PipelineError>>>> =
        (0..cands.len()).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cands.len() {
                    break;
                }
                let result = certify_candidate(spec, &cands[i], config);
                *slots[i].lock().expect("no poisoned slot") = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("no poisoned slot").expect("slot filled"))
        .collect()
}

fn cmd_classify(
    spec_path: &std::path::Path,
    max_dim: u64,
    exact: bool,
    report_path: Option<&std::path::Path>,
    tols: Tolerances,
) -> u8 {
    let spec = match load_spec(spec_path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let config = PipelineConfig {
        tolerances: tols,
        exact,
        ..PipelineConfig::default()
    };
    let cands = enumerate_candidates(&spec, max_dim);
    let mut outcomes = Vec::with_capacity(cands.len());
    for result in certify_all(&spec, &cands, &config) {
        match result {
            Ok(cert) => outcomes.push(cert.outcome),
            Err(e) => {
                eprintln!("error: {e}");
                return e.exit_code() as u8;
            }
        }
    }
    let report = VerificationReport::new(&spec, ToolInfo::new(exact, tols, Some(max_dim)), outcomes);
    let json = match to_canonical_json(&report) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
    };
    match report_path {
        Some(path) => {
            if let Err(e) = fs::write(path, &json) {
                eprintln!("error: cannot write `{}`: {e}", path.display());
                return EXIT_INTERNAL;
            }
            print!("{}", render_markdown(&report));
            println!("Report written to {}", path.display());
        }
        None => print!("{json}"),
    }
    if report.pass {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}

fn cmd_verify(spec_path: &std::path::Path, key: &str, tols: Tolerances) -> u8 {
    let spec = match load_spec(spec_path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let cand = match parse_candidate_key(&spec, key) {
        Ok(c) => c,
        Err(SatakeError::BadKey(msg)) => {
            eprintln!("error: malformed candidate key: {msg}");
            return EXIT_PARSE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_VERIFY;
        }
    };
    let config = PipelineConfig {
        tolerances: tols,
        ..PipelineConfig::default()
    };
    match certify_candidate(&spec, &cand, &config) {
        Ok(cert) => {
            let report =
                VerificationReport::new(&spec, ToolInfo::new(false, tols, None), vec![cert.outcome]);
            print!("{}", render_markdown(&report));
            if report.pass {
                EXIT_OK
            } else {
                EXIT_VERIFY
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code() as u8
        }
    }
}

fn cmd_example(name: &str, max_dim: Option<u64>, dump_matrices: bool, tols: Tolerances) -> u8 {
    if name != "sec6" {
        eprintln!("error: unknown example `{name}` (available: sec6)");
        return EXIT_PARSE;
    }
    let spec = parse_group_spec(SEC6_SPEC).expect("the bundled example parses");
    let bound = max_dim.unwrap_or(SEC6_GOLDEN_BOUND).min(SEC6_GOLDEN_BOUND);
    if max_dim.is_some_and(|d| d > SEC6_GOLDEN_BOUND) {
        eprintln!(
            "note: the golden enumeration is bounded at {SEC6_GOLDEN_BOUND}; \
             clamping --max-dim to it"
        );
    }

    let golden: Vec<(u64, &str)> = SEC6_GOLDEN
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (dim, key) = l.split_once(' ').expect("golden lines read `dim key`");
            (dim.parse().expect("golden dimension is an integer"), key)
        })
        .collect();
    let expected: Vec<&str> = golden
        .iter()
        .filter(|(d, _)| *d <= bound)
        .map(|&(_, k)| k)
        .collect();

    let cands = enumerate_candidates(&spec, bound);
    let got: Vec<String> = cands.iter().map(|c| c.key(&spec)).collect();
    if got != expected {
        eprintln!("error: canonical keys differ from the golden enumeration");
        for key in expected.iter().filter(|k| !got.iter().any(|g| g == *k)) {
            eprintln!("  - missing: {key}");
        }
        for key in got.iter().filter(|g| !expected.contains(&g.as_str())) {
            eprintln!("  + extra:   {key}");
        }
        return EXIT_VERIFY;
    }
    println!(
        "Golden enumeration matches: {} candidate(s) at dimension bound {bound}.",
        got.len()
    );

    let config = PipelineConfig {
        tolerances: tols,
        keep_matrices: dump_matrices,
        ..PipelineConfig::default()
    };
    let mut certified = Vec::with_capacity(cands.len());
    for result in certify_all(&spec, &cands, &config) {
        match result {
            Ok(cert) => certified.push(cert),
            Err(e) => {
                eprintln!("error: {e}");
                return e.exit_code() as u8;
            }
        }
    }
    let outcomes: Vec<_> = certified.iter().map(|c| c.outcome.clone()).collect();
    let report = VerificationReport::new(&spec, ToolInfo::new(false, tols, Some(bound)), outcomes);
    print!("{}", render_markdown(&report));

    if dump_matrices {
        for (i, family) in report.families.iter().enumerate() {
            let cert = certified
                .iter()
                .find(|c| c.outcome.key == family.minimal_key)
                .expect("every family names one of the certified candidates");
            let matrices = cert
                .matrices
                .as_ref()
                .expect("matrix retention was requested");
            let stem = format!("sec6_family_{}", i + 1);
            for (suffix, m) in [
                ("E", &matrices.e),
                ("J", &matrices.j),
                ("H", &matrices.h),
            ] {
                let path = format!("{stem}_{suffix}.txt");
                if let Err(e) = fs::write(&path, matrix_dump(m)) {
                    eprintln!("error: cannot write `{path}`: {e}");
                    return EXIT_INTERNAL;
                }
            }
            println!(
                "Matrices of `{}` written to {stem}_{{E,J,H}}.txt",
                family.minimal_key
            );
        }
    }

    if report.pass {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}
