//! `lefschetz`: fibre sums, canonical classes and extension obstructions
//! from the command line.

mod human;
mod manifest;
mod ops;
mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use manifest::{Format, Manifest, Operation};
use ops::{Context, Failure};
use report::{Outcome, Record, Report};

#[derive(Parser)]
#[command(name = "lefschetz", version, about = "Exact fibre-sum computations on fibred 4-manifolds")]
struct Cli {
    /// Output format; overrides the manifest's `output.format`.
    #[arg(long, global = true, value_enum)]
    output: Option<Format>,
    /// Run a manifest instead of a subcommand.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args)]
struct Model {
    /// Preset name: E1, quintic, CP2, genus2.
    #[arg(long)]
    preset: String,
}

#[derive(Args)]
struct Twist {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: usize,
    /// Comma-separated gluing class `a₁,…,a₂g`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    gluing: Option<Vec<i64>>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of M(n).
    Invariants {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// M(n), or M(m,n,C) when --m is given.
    Fibresum {
        #[command(flatten)]
        model: Model,
        #[command(flatten)]
        twist: Twist,
        /// Include the Gram matrix.
        #[arg(long)]
        gram: bool,
    },
    /// Canonical class and its divisibility.
    Canonical {
        #[command(flatten)]
        model: Model,
        #[command(flatten)]
        twist: Twist,
    },
    /// Seiberg-Witten basic classes of M (n = 1) or M(n).
    SwClasses {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Product-formula table for M(n).
    Mst {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        n: usize,
    },
    /// Extension obstruction for a gluing class of divisibility a.
    Obstruction {
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        genus: Option<u32>,
    },
    /// Pencil parameters s, k with d | s and d | k + 1.
    PencilParams {
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        s0: Option<u64>,
        #[arg(long)]
        k0: Option<u64>,
    },
    /// Homeomorphism type of the intersection form of M(n).
    Classify {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a manifest.
    Run {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Randomized structural checks.
    Selftest {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

fn single(preset: Option<&str>, op: Operation) -> Result<Report, Failure> {
    let ctx = preset.map(Context::preset).transpose()?;
    let record = ops::record(ctx.as_ref(), &op)?;
    Ok(Report { model: ctx.map(|c| c.echo()), records: vec![record] })
}

fn run_manifest(path: &PathBuf) -> Result<(Report, Option<Format>), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
    let m: Manifest = manifest::parse(&text).map_err(Failure::Validation)?;
    let ctx = Context::from_spec(&m.surface, m.embedding.as_ref())?;
    let records = m.operations.iter().map(|op| ops::record(Some(&ctx), op)).collect::<Result<Vec<_>, _>>()?;
    Ok((Report { model: Some(ctx.echo()), records }, m.output.map(|o| o.format)))
}

fn dispatch(cli: &Cli) -> Result<(Report, Option<Format>), Failure> {
    let command = match (&cli.command, &cli.manifest) {
        (Some(Command::Run { manifest }), None) | (None, Some(manifest)) => return run_manifest(manifest),
        (Some(_), Some(_)) => return Err(Failure::Validation("--manifest cannot be combined with a subcommand".into())),
        (None, None) => return Err(Failure::Validation("a subcommand or --manifest is required".into())),
        (Some(c), None) => c,
    };
    let report = match command {
        Command::Invariants { model, n } => single(Some(&model.preset), Operation::Invariants { n: Some(*n) }),
        Command::Fibresum { model, twist, gram } => single(
            Some(&model.preset),
            Operation::Fibresum { m: twist.m, n: twist.n, gluing: twist.gluing.clone(), include_gram: *gram },
        ),
        Command::Canonical { model, twist } => single(
            Some(&model.preset),
            Operation::Canonical { m: twist.m, n: twist.n, gluing: twist.gluing.clone() },
        ),
        Command::SwClasses { model, n } => single(Some(&model.preset), Operation::SwClasses { n: *n }),
        Command::Mst { model, n } => single(Some(&model.preset), Operation::Mst { n: *n }),
        Command::Obstruction { preset, a, n, d, genus } => {
            single(preset.as_deref(), Operation::Obstruction { a: *a, n: *n, d: *d, genus: *genus })
        }
        Command::PencilParams { preset, d, s0, k0 } => {
            single(preset.as_deref(), Operation::PencilParams { d: *d, s0: *s0, k0: *k0 })
        }
        Command::Classify { model, n } => single(Some(&model.preset), Operation::Classify { n: *n }),
        Command::Selftest { seed, cases } => {
            let result = selftest::run(*seed, *cases);
            let input = serde_json::json!({"seed": seed, "cases": cases});
            Ok(Report {
                model: None,
                records: vec![Record { op: "selftest".into(), input, result: Outcome::Selftest(result) }],
            })
        }
        Command::Run { .. } => unreachable!("handled above"),
    }?;
    Ok((report, None))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, manifest_format) = match dispatch(&cli) {
        Ok(r) => r,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("precondition failed: {msg}");
            return ExitCode::from(3);
        }
    };
    let value = serde_json::to_value(&report).expect("report serializes");
    match cli.output.or(manifest_format).unwrap_or_default() {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("report serializes")),
        Format::Human => print!("{}", human::to_text(&value)),
    }
    let failed = report.records.iter().any(|r| matches!(&r.result, Outcome::Selftest(s) if !s.failures.is_empty()));
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
