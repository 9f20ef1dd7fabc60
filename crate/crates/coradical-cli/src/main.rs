//! Command-line surface: ingest quiver/coalgebra documents, run the engines,
//! emit deterministic reports, and drive verification campaigns.
//!
//! Exit codes: 0 on success (including a clean "too shallow" witness
//! outcome), 1 on semantic failures (axiom violations, failed verification),
//! 2 on input errors (unreadable files, malformed documents). Diagnostics go
//! to stderr, reports to stdout.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use coradical::campaign::{
    run_prop21_campaign, run_remark_campaign, CampaignConfig, CampaignOutcome,
};
use coradical::coalgebra::Coalgebra;
use coradical::error::Error;
use coradical::filtration::{coradical_filtration, engine_summary};
use coradical::format::{
    coalgebra_from_quiver_input, emit_coalgebra, parse_coalgebra, parse_quiver,
};
use coradical::theorem::{find_gap_sequence, verify_witness, witness_functional, GapSearch};

use report::{Campaign, Engine, Fixture, Report, Rng, RNG_ALGORITHM, SCHEMA_VERSION};

#[derive(Parser)]
#[command(
    name = "coradical",
    about = "Exact-arithmetic coalgebra toolkit: dual algebras, radicals, coradical filtrations, and verification campaigns",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Prop21,
    Remark,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the coalgebra axioms of a document
    Check {
        /// Coalgebra document
        path: PathBuf,
    },
    /// Build the (truncated) path coalgebra of a quiver document
    Build {
        /// Quiver document
        path: PathBuf,
        /// Maximum path length; defaults to the document's value, or to all
        /// paths when the quiver is acyclic
        #[arg(long)]
        truncation: Option<usize>,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute radical powers, the coradical filtration, and the self-checks
    Report {
        /// Coalgebra document
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run verification campaigns over random elements
    Verify {
        /// Coalgebra document
        path: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        perturbations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build and verify the Loewy-depth witness functional
    Witness {
        /// Coalgebra document
        path: PathBuf,
        /// Number of gap-sequence steps to attempt
        #[arg(short = 'm', long, default_value_t = 2)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn semantic(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::UnknownVertex(_)
            | Error::UnknownArrow(_)
            | Error::UnknownBasisName(_)
            | Error::DuplicateName(_)
            | Error::InvalidScalar { .. }
            | Error::NonComposablePath { .. }
            | Error::NotSubpathClosed { .. }
            | Error::EmptyThickArrow
            | Error::CyclicQuiver(_)
            | Error::DimensionCapExceeded { .. }
            | Error::IndexOutOfRange { .. }
            | Error::DimensionMismatch { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Check { path } => cmd_check(&path),
        Command::Build {
            path,
            truncation,
            out,
        } => cmd_build(&path, truncation, out.as_deref()),
        Command::Report { path, format } => cmd_report(&path, format),
        Command::Verify {
            path,
            which,
            samples,
            perturbations,
            seed,
            format,
        } => cmd_verify(&path, which, samples, perturbations, seed, format),
        Command::Witness {
            path,
            steps,
            seed,
            format,
        } => cmd_witness(&path, steps, seed, format),
    }
}

fn read_input(path: &Path) -> Result<(String, Fixture), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    let sha256: String = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::input(format!("{} is not UTF-8", path.display())))?;
    Ok((
        text,
        Fixture {
            path: path.display().to_string(),
            sha256,
        },
    ))
}

fn load_coalgebra(path: &Path) -> Result<(Coalgebra, Fixture), Failure> {
    let (text, fixture) = read_input(path)?;
    let c = parse_coalgebra(&text)?;
    Ok((c, fixture))
}

/// Loads and insists on valid axioms, enumerating violations on stderr.
fn load_valid_coalgebra(path: &Path) -> Result<(Coalgebra, Fixture), Failure> {
    let (c, fixture) = load_coalgebra(path)?;
    let report = c.validate();
    if !report.is_valid() {
        for v in report.violations() {
            eprintln!("violation: {}", v.describe(&c));
        }
        return Err(Failure::semantic(format!(
            "{} violated coalgebra axiom instance(s)",
            report.violations().len()
        )));
    }
    Ok((c, fixture))
}

fn cmd_check(path: &Path) -> Result<(), Failure> {
    let (c, _) = load_coalgebra(path)?;
    let report = c.validate();
    if report.is_valid() {
        println!("check: pass ({} basis elements)", c.dim());
        Ok(())
    } else {
        for v in report.violations() {
            eprintln!("violation: {}", v.describe(&c));
        }
        println!("check: fail ({} violations)", report.violations().len());
        Err(Failure::semantic(format!(
            "{} violated coalgebra axiom instance(s)",
            report.violations().len()
        )))
    }
}

fn cmd_build(path: &Path, truncation: Option<usize>, out: Option<&Path>) -> Result<(), Failure> {
    let (text, _) = read_input(path)?;
    let input = parse_quiver(&text)?;
    let c = coalgebra_from_quiver_input(&input, truncation)?;
    let doc = emit_coalgebra(&c);
    match out {
        Some(out_path) => {
            std::fs::write(out_path, doc)
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", out_path.display())))?;
            eprintln!(
                "built {}-dimensional coalgebra at {}",
                c.dim(),
                out_path.display()
            );
        }
        None => print!("{doc}"),
    }
    Ok(())
}

fn cmd_report(path: &Path, format: Format) -> Result<(), Failure> {
    let (c, fixture) = load_valid_coalgebra(path)?;
    let summary = engine_summary(&c)?;
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: "report".into(),
        fixture,
        rng: None,
        engine: Some(Engine::from(&summary)),
        verification: None,
        witness: None,
        status: "pass".into(),
    };
    emit(&report, format);
    Ok(())
}

fn cmd_verify(
    path: &Path,
    which: Which,
    samples: usize,
    perturbations: usize,
    seed: u64,
    format: Format,
) -> Result<(), Failure> {
    let (c, fixture) = load_valid_coalgebra(path)?;
    let filtration = coradical_filtration(&c)?;
    let cfg = CampaignConfig {
        samples,
        perturbations,
        seed,
    };
    let mut campaigns = Vec::new();
    let mut all_passed = true;
    let mut record = |name: &str, outcome: CampaignOutcome| {
        all_passed &= outcome.all_passed();
        campaigns.push(Campaign::from_outcome(name, &outcome));
    };
    if matches!(which, Which::Prop21 | Which::All) {
        record("prop21", run_prop21_campaign(&c, &filtration, &cfg)?);
    }
    if matches!(which, Which::Remark | Which::All) {
        record("remark", run_remark_campaign(&c, &filtration, &cfg)?);
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: "verify".into(),
        fixture,
        rng: Some(Rng {
            algorithm: RNG_ALGORITHM.into(),
            seed,
        }),
        engine: None,
        verification: Some(campaigns),
        witness: None,
        status: if all_passed { "pass" } else { "fail" }.into(),
    };
    emit(&report, format);
    if all_passed {
        Ok(())
    } else {
        Err(Failure::semantic("verification campaign failed"))
    }
}

fn cmd_witness(path: &Path, steps: usize, seed: u64, format: Format) -> Result<(), Failure> {
    if steps == 0 {
        return Err(Failure::input("at least one witness step is required"));
    }
    let (c, fixture) = load_valid_coalgebra(path)?;
    let filtration = coradical_filtration(&c)?;
    let search = find_gap_sequence(&c, &filtration, steps)?;
    let (section, pass) = match &search {
        GapSearch::Found(seq) => {
            let w = witness_functional(&c, seq, &filtration)?;
            let table = verify_witness(&c, seq, &w, &filtration)?;
            let pass = table.all_pass();
            let section = report::witness_section(&c, steps, "found", seq, Some((&w, &table)));
            (section, pass)
        }
        GapSearch::TooShallow {
            requested,
            achieved,
        } => {
            eprintln!(
                "not-found: coalgebra too shallow, max m = {}",
                achieved.steps()
            );
            let section = report::witness_section(&c, *requested, "too-shallow", achieved, None);
            (section, true)
        }
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: "witness".into(),
        fixture,
        rng: Some(Rng {
            algorithm: RNG_ALGORITHM.into(),
            seed,
        }),
        engine: None,
        verification: None,
        witness: Some(section),
        status: if pass { "pass" } else { "fail" }.into(),
    };
    emit(&report, format);
    if pass {
        Ok(())
    } else {
        Err(Failure::semantic("witness verification failed"))
    }
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Structured => print!("{}", report.to_json()),
    }
}
