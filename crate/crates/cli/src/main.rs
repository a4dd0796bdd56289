//! `bowditch`: classify, reduce, lift and scan punctured-torus characters.
//!
//! Results are JSON on stdout. Every run also emits a metadata object with
//! the effective configuration, to stderr or to `--metadata PATH`.
//!
//! Exit codes: 0 success (classify: BQ), 1 NotBQ, 2 Unknown, 3 NoDecrease or
//! degenerate eigenvalue, 4 step limit, 64 usage, 65 invalid triple,
//! 66 unreadable or unwritable path.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bowditch_core::complex::{format_complex, parse_complex};
use bowditch_core::scan::{render_ppm, scan_slice_with, write_csv, GridSpec, ScanMetadata};
use bowditch_core::{
    bq_classify, classify_with_reduction, matrix_lift, reduce_trace, remark_b_experiment,
    AlgebraError, Branch, CharacterTriple, ClassifyError, Complex64, Coordinate, ReductionError,
    ReductionStatus, SliceSpec, Verdict,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_NOINPUT: u8 = 66;

#[derive(Parser)]
#[command(name = "bowditch", version, about = "Trace-coordinate tools for punctured-torus characters")]
struct Cli {
    /// Write run metadata here instead of stderr.
    #[arg(long, global = true, value_name = "PATH")]
    metadata: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the BQ-conditions for a character.
    Classify(ClassifyArgs),
    /// Run the trace-reduction descent.
    Reduce(ReduceArgs),
    /// Rasterize a slice of the character variety.
    Scan(ScanArgs),
    /// Print matrices realizing a character.
    Lift(TripleArgs),
    /// Sample small-trace characters and report how often the descent
    /// reaches a trace below 0.5.
    Experiment(ExperimentArgs),
}

fn complex(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Root {
    Plus,
    Minus,
}

#[derive(Args, Serialize)]
struct TripleArgs {
    /// Trace of X, as RE,IM.
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    #[serde(with = "bowditch_core::complex::reim")]
    x: Complex64,
    /// Trace of Y, as RE,IM.
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    #[serde(with = "bowditch_core::complex::reim")]
    y: Complex64,
    /// Trace of XY, as RE,IM; solved from x and y when omitted.
    #[arg(long, value_parser = complex, allow_hyphen_values = true, conflicts_with = "branch")]
    #[serde(skip)]
    z: Option<Complex64>,
    /// Root of the cubic to use when --z is omitted.
    #[arg(long, value_enum, default_value = "plus")]
    branch: Root,
}

impl TripleArgs {
    fn triple(&self) -> Result<CharacterTriple, AlgebraError> {
        match self.z {
            Some(z) => CharacterTriple::new(self.x, self.y, z),
            None => Ok(CharacterTriple::from_xy(self.x, self.y, self.branch == Root::Plus)),
        }
    }
}

#[derive(Args, Serialize)]
struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    triple: TripleArgs,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    /// Most Farey triangles to expand.
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    /// Try the reduction descent before exploring.
    #[arg(long)]
    with_reduction: bool,
    #[arg(long, default_value_t = 1_000)]
    max_steps: usize,
}

#[derive(Args, Serialize)]
struct ReduceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    triple: TripleArgs,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long, default_value_t = 1e-12)]
    floor: f64,
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
}

#[derive(Args)]
struct ScanArgs {
    /// Slice spec as JSON; replaces the inline slice flags.
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "x")]
    fixed: Coord,
    #[arg(long, value_parser = complex, allow_hyphen_values = true, default_value = "3,0")]
    fixed_value: Complex64,
    #[arg(long, value_enum, default_value = "y")]
    varied: Coord,
    #[arg(long, value_parser = complex, allow_hyphen_values = true, default_value = "0,0")]
    center: Complex64,
    #[arg(long, default_value_t = 6.0)]
    width: f64,
    #[arg(long, default_value_t = 6.0)]
    height: f64,
    #[arg(long, default_value_t = 128)]
    nx: u32,
    #[arg(long, default_value_t = 128)]
    ny: u32,
    #[arg(long, value_enum, default_value = "both")]
    branch: BranchArg,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    /// PPM output; with two layers `_plus`/`_minus` is appended to the stem.
    #[arg(long, value_name = "PATH")]
    out_ppm: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    out_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coord {
    X,
    Y,
    Z,
}

impl From<Coord> for Coordinate {
    fn from(c: Coord) -> Self {
        match c {
            Coord::X => Coordinate::X,
            Coord::Y => Coordinate::Y,
            Coord::Z => Coordinate::Z,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
    Both,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
            BranchArg::Both => Branch::Both,
        }
    }
}

#[derive(Args, Serialize)]
struct ExperimentArgs {
    #[arg(long)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A failed run: exit code and message for stderr.
struct Failure(u8, String);

type Outcome = Result<u8, Failure>;

struct Run {
    metadata: Option<PathBuf>,
}

impl Run {
    fn emit_metadata(&self, value: serde_json::Value) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(&value).expect("metadata serializes");
        match &self.metadata {
            Some(path) => write_file(path, format!("{text}\n").as_bytes()),
            None => {
                eprintln!("{text}");
                Ok(())
            }
        }
    }
}

fn meta(command: &str, config: impl Serialize) -> serde_json::Value {
    json!({
        "tool": "bowditch",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
    })
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("result serializes"));
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes)
        .map_err(|e| Failure(EX_NOINPUT, format!("cannot write {}: {e}", path.display())))
}

fn invalid_triple(e: AlgebraError) -> Failure {
    Failure(EX_DATAERR, format!("invalid triple: {e}"))
}

fn triple_config(t: &TripleArgs, triple: &CharacterTriple) -> serde_json::Value {
    let mut v = serde_json::to_value(t).expect("config serializes");
    v["z"] = json!(format_complex(triple.z()));
    v
}

fn classify(run: &Run, args: &ClassifyArgs) -> Outcome {
    let t = args.triple.triple().map_err(invalid_triple)?;
    let mut config = serde_json::to_value(args).expect("config serializes");
    config["z"] = triple_config(&args.triple, &t)["z"].clone();
    run.emit_metadata(meta("classify", config))?;
    let out = if args.with_reduction {
        classify_with_reduction(&t, args.threshold, args.budget, args.max_steps)
    } else {
        bq_classify(&t, args.threshold, args.budget)
    };
    let cl = out.map_err(|e| match e {
        ClassifyError::InvalidTriple(e) => invalid_triple(e),
        other => Failure(EX_USAGE, other.to_string()),
    })?;
    print_json(&cl);
    Ok(match cl.verdict {
        Verdict::BQ => 0,
        Verdict::NotBQ => 1,
        Verdict::Unknown => 2,
    })
}

fn reduce(run: &Run, args: &ReduceArgs) -> Outcome {
    let t = args.triple.triple().map_err(invalid_triple)?;
    let mut config = serde_json::to_value(args).expect("config serializes");
    config["z"] = triple_config(&args.triple, &t)["z"].clone();
    run.emit_metadata(meta("reduce", config))?;
    let out = reduce_trace(&t, args.threshold, args.floor, args.max_steps).map_err(|e| match e {
        ReductionError::InvalidTriple(e) => invalid_triple(e),
        other => Failure(EX_USAGE, other.to_string()),
    })?;
    print_json(&out);
    Ok(match out.status {
        ReductionStatus::ReachedRealInterval | ReductionStatus::ReachedFloor => 0,
        ReductionStatus::NoDecrease => 3,
        ReductionStatus::StepLimit => 4,
    })
}

fn lift(run: &Run, args: &TripleArgs) -> Outcome {
    let t = args.triple().map_err(invalid_triple)?;
    run.emit_metadata(meta("lift", triple_config(args, &t)))?;
    let pair = matrix_lift(&t).map_err(|e| match e {
        AlgebraError::DegenerateEigenvalue { .. } => Failure(3, e.to_string()),
        other => invalid_triple(other),
    })?;
    print_json(&json!({
        "triple": t,
        "mx": pair.mx,
        "my": pair.my,
        "commutator_trace": format_complex(pair.commutator_trace()),
        "residuals": pair.residuals(&t),
    }));
    Ok(0)
}

fn experiment(run: &Run, args: &ExperimentArgs) -> Outcome {
    run.emit_metadata(meta("experiment", args))?;
    print_json(&remark_b_experiment(args.samples, args.seed));
    Ok(0)
}

fn workers_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("BOWDITCH_WORKERS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure(EX_USAGE, format!("BOWDITCH_WORKERS must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(None),
    }
}

fn scan_spec(args: &ScanArgs) -> Result<SliceSpec, Failure> {
    match &args.spec {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure(EX_NOINPUT, format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure(EX_USAGE, format!("bad spec {}: {e}", path.display())))
        }
        None => Ok(SliceSpec {
            fixed_coordinate: args.fixed.into(),
            fixed_value: args.fixed_value,
            varied_coordinate: args.varied.into(),
            grid: GridSpec {
                center: args.center,
                width: args.width,
                height: args.height,
                nx: args.nx,
                ny: args.ny,
            },
            branch: args.branch.into(),
            threshold: args.threshold,
            budget: args.budget,
        }),
    }
}

/// `dir/stem_suffix.ext` for layer outputs.
fn layer_path(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}

fn scan(run: &Run, args: &ScanArgs) -> Outcome {
    let spec = scan_spec(args)?;
    spec.validate().map_err(|e| Failure(EX_USAGE, e.to_string()))?;
    let workers = workers_from_env()?;
    let result = scan_slice_with(&spec, workers, bq_classify)
        .map_err(|e| Failure(EX_USAGE, e.to_string()))?;

    if let Some(path) = &args.out_ppm {
        let single = result.layers.len() == 1;
        for (i, layer) in result.layers.iter().enumerate() {
            let bytes = render_ppm(&result, i).expect("layer index in range");
            let target = if single {
                path.clone()
            } else {
                layer_path(path, &layer.branch.as_str().to_lowercase())
            };
            write_file(&target, &bytes)?;
        }
    }
    if let Some(path) = &args.out_csv {
        write_file(path, &write_csv(&result))?;
    }
    let used = workers.unwrap_or_else(rayon_threads);
    let mut md = serde_json::to_value(ScanMetadata::new(&result, used)).expect("metadata serializes");
    md["tool"] = json!("bowditch");
    md["command"] = json!("scan");
    run.emit_metadata(md)?;
    Ok(0)
}

fn rayon_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EX_USAGE } else { 0 });
        }
    };
    let run = Run {
        metadata: cli.metadata,
    };
    let outcome = match &cli.command {
        Command::Classify(a) => classify(&run, a),
        Command::Reduce(a) => reduce(&run, a),
        Command::Scan(a) => scan(&run, a),
        Command::Lift(a) => lift(&run, a),
        Command::Experiment(a) => experiment(&run, a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("bowditch: {msg}");
            ExitCode::from(code)
        }
    }
}
