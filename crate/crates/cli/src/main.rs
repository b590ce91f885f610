//! Command-line driver: parse a JSON input, run one engine pipeline, and
//! emit a machine-readable report plus a deterministic human summary.
//!
//! Exit codes: 0 when the report status is pass or vacuous, 1 when it is
//! fail, 2 for anything that prevented a report (unreadable file, malformed
//! JSON, schema or axiom violations).

mod input;
mod report;
mod verbs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use report::Report;

#[derive(Parser)]
#[command(
    name = "gerbedual",
    version,
    about = "Exact character, descent, and twist computations over finite groups"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct VerbArgs {
    /// JSON input file for this verb.
    input: PathBuf,
    /// Write the JSON report to this path (atomically) and print the
    /// summary to stdout. Without it the report itself goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Exact character table of a finite group.
    Chartable(VerbArgs),
    /// Brute-force automorphism group of a finite group.
    Auts(VerbArgs),
    /// Transition/factor datum carried by a group extension, verified.
    Extension(VerbArgs),
    /// Check the triangle and quadruple identities of a cocycle datum.
    CocycleCheck(VerbArgs),
    /// Orbits of the irreducible rows under the transports of an extension.
    Dual(VerbArgs),
    /// Scalar twist of the datum induced from an extension, verified.
    Twist(VerbArgs),
    /// Compare transition composites with inner factor automorphisms.
    GerbeCheck(VerbArgs),
    /// Two-point algebra example or ring-map enumeration.
    AffineDemo(VerbArgs),
}

impl Verb {
    fn into_parts(self) -> (fn(&serde_json::Value) -> Result<Report>, VerbArgs) {
        match self {
            Verb::Chartable(a) => (verbs::chartable, a),
            Verb::Auts(a) => (verbs::auts, a),
            Verb::Extension(a) => (verbs::extension, a),
            Verb::CocycleCheck(a) => (verbs::cocycle_check, a),
            Verb::Dual(a) => (verbs::dual, a),
            Verb::Twist(a) => (verbs::twist, a),
            Verb::GerbeCheck(a) => (verbs::gerbe_check, a),
            Verb::AffineDemo(a) => (verbs::affine_demo, a),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (build, args) = cli.verb.into_parts();
    let report = match run(build, &args) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    };
    ExitCode::from(report.status.exit_code())
}

fn run(build: fn(&serde_json::Value) -> Result<Report>, args: &VerbArgs) -> Result<Report> {
    let value = input::load(&args.input)?;
    let report = build(&value).with_context(|| format!("{}", args.input.display()))?;
    emit(&report, &args.out)?;
    Ok(report)
}

fn emit(report: &Report, out: &Option<PathBuf>) -> Result<()> {
    let bytes = report.to_json_bytes();
    match out {
        Some(path) => {
            report::write_atomic(path, &bytes)
                .with_context(|| format!("writing report to {}", path.display()))?;
            print!("{}", report.render_summary());
        }
        None => {
            std::io::stdout()
                .lock()
                .write_all(&bytes)
                .context("writing report to stdout")?;
        }
    }
    Ok(())
}
