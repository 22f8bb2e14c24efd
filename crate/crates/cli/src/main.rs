//! `nestpoly`: nesting forests of polygon instances from the command line.
//!
//! Exit codes: 0 on success, 1 when the input violates the algorithm's
//! preconditions (validation failure, detected overlap), 2 on unreadable or
//! malformed input and usage errors.

mod render;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nestpoly_core::bench::{self, Shape};
use nestpoly_core::{
    brute_force_forest, forest_document, generate, nesting_forest_with, parse_instance, serialize_instance, validate,
    Error, ForestDocument, GenConfig, NestOptions, Polygon,
};

const DEBUG_ENV: &str = "NESTPOLY_DEBUG_ASSERT";

#[derive(Parser)]
#[command(name = "nestpoly", version, about = "Nesting forests of overlap-free simple polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the nesting forest with the sweep.
    Nest {
        #[arg(short, long)]
        input: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Validate the instance first and stop with exit code 1 on violations.
        #[arg(long)]
        validate: bool,
        /// Include instance sizes and timing in the output.
        #[arg(long)]
        stats: bool,
    },
    /// Compute the nesting forest by pairwise containment tests.
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that polygons are simple, overlap-free and distinct.
    Validate {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Generate a random instance.
    Gen {
        /// Overrides the seed in the configuration.
        #[arg(long)]
        seed: Option<u64>,
        /// Generator configuration (JSON); defaults apply to missing fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw an instance as SVG, filled by nesting depth.
    Render {
        #[arg(short, long)]
        input: PathBuf,
        /// Forest to color by; computed with the sweep when omitted.
        #[arg(long)]
        forest: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the sweep (and the oracle on small sizes) on synthetic instances.
    Bench {
        /// Comma-separated polygon counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value_t = ShapeArg::Convex)]
        shape: ShapeArg,
        /// Runs per size; the median is reported.
        #[arg(long, default_value_t = 5)]
        repeat: usize,
        /// Largest size for which the oracle is timed.
        #[arg(long, default_value_t = 4096)]
        oracle_cutoff: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Convex,
    Staircase,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Shape {
        match s {
            ShapeArg::Convex => Shape::Convex,
            ShapeArg::Staircase => Shape::Staircase,
        }
    }
}

/// A failed command: the message for stderr and the exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn rejected(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::Semantic { .. }
            | Error::TooFewVertices { .. }
            | Error::DuplicateConsecutiveVertex { .. }
            | Error::DegenerateAllCollinear { .. }
            | Error::DegeneratePolygon(_)
            | Error::DuplicateId(_)
            | Error::InvalidConfig(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("cannot write to stdout: {e}"))),
    }
}

fn load_instance(path: &Path) -> Result<Vec<Polygon>, Failure> {
    Ok(parse_instance(&read(path)?)?)
}

fn debug_asserts() -> bool {
    std::env::var(DEBUG_ENV).is_ok_and(|v| v == "1")
}

fn validation_report(polygons: &[Polygon]) -> CmdResult {
    let report = validate(polygons);
    if report.ok {
        return Ok(());
    }
    let mut msg = format!("validation failed with {} violation(s):", report.violations.len());
    for v in &report.violations {
        write!(msg, "\n  {v}").expect("writing to a string");
    }
    Err(Failure::rejected(msg))
}

fn cmd_nest(input: &Path, output: Option<&Path>, check: bool, stats: bool) -> CmdResult {
    let polygons = load_instance(input)?;
    if check {
        validation_report(&polygons)?;
    }
    let opts = NestOptions { check_status_order: debug_asserts() };
    let (forest, s) = nesting_forest_with(&polygons, &opts)?;
    write_out(output, &forest_document(&forest, stats.then_some(&s)).to_json())
}

fn cmd_oracle(input: &Path, output: Option<&Path>) -> CmdResult {
    let polygons = load_instance(input)?;
    let forest = brute_force_forest(&polygons)?;
    write_out(output, &forest_document(&forest, None).to_json())
}

fn cmd_validate(input: &Path) -> CmdResult {
    let polygons = load_instance(input)?;
    validation_report(&polygons)?;
    eprintln!("ok: {} polygons", polygons.len());
    Ok(())
}

fn cmd_gen(seed: Option<u64>, config: Option<&Path>, output: Option<&Path>) -> CmdResult {
    let mut cfg: GenConfig = match config {
        Some(p) => serde_json::from_slice(&read(p)?).map_err(|e| {
            Failure::usage(format!("invalid configuration {}: {e}", p.display()))
        })?,
        None => GenConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    write_out(output, &serialize_instance(&generate(&cfg)?))
}

fn cmd_render(input: &Path, forest: Option<&Path>, output: Option<&Path>) -> CmdResult {
    let polygons = load_instance(input)?;
    let doc = match forest {
        Some(p) => ForestDocument::parse(&read(p)?)?,
        None => {
            let opts = NestOptions { check_status_order: debug_asserts() };
            forest_document(&nesting_forest_with(&polygons, &opts)?.0, None)
        }
    };
    let svg = render::svg(&polygons, &doc).map_err(Failure::usage)?;
    write_out(output, &svg)
}

fn cmd_bench(sizes: &[usize], shape: Shape, repeat: usize, cutoff: usize, output: Option<&Path>) -> CmdResult {
    if repeat == 0 || sizes.contains(&0) {
        return Err(Failure::usage("sizes and --repeat must be positive"));
    }
    let rows = bench::run(shape, sizes, repeat, cutoff)?;
    let mut csv = String::from("m,n,N,elapsed_ns_sweep,elapsed_ns_oracle\n");
    for r in rows {
        let oracle = r.oracle_ns.map(|t| t.to_string()).unwrap_or_default();
        writeln!(csv, "{},{},{},{},{oracle}", r.m, r.n, r.segments, r.sweep_ns).expect("writing to a string");
    }
    write_out(output, &csv)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Nest { input, output, validate, stats } => cmd_nest(&input, output.as_deref(), validate, stats),
        Command::Oracle { input, output } => cmd_oracle(&input, output.as_deref()),
        Command::Validate { input } => cmd_validate(&input),
        Command::Gen { seed, config, output } => cmd_gen(seed, config.as_deref(), output.as_deref()),
        Command::Render { input, forest, output } => cmd_render(&input, forest.as_deref(), output.as_deref()),
        Command::Bench { sizes, shape, repeat, oracle_cutoff, output } => {
            cmd_bench(&sizes, shape.into(), repeat, oracle_cutoff, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("nestpoly: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
