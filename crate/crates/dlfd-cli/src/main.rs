//! Command-line front end for the dlfd workbench.
//!
//! Exit codes follow one contract across all subcommands: `0` positive result
//! (satisfied, found, verified), `1` negative result (violated, nothing found
//! within the bounds), `2` usage, I/O, or parse error, `3` resource limit.
//! Output is byte-deterministic unless `--timings` is passed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dlfd::finder::{
    find_model, refute_bounded, RefutationOutcome, SearchBounds, SearchOutcome, SizeStats,
    SizeVerdict,
};
use dlfd::interp::{
    read_model, to_dot, write_model, AxiomOutcome, CheckOptions, CheckReport,
    FiniteInterpretation, Violation,
};
use dlfd::tiling::{
    build_torus_witness, double_tiling, reduce_to_terminology, solve_torus_upto, ReductionMode,
    TilingInstance, TorusTiling,
};
use dlfd::{parse_axiom, parse_concept, parse_terminology, print_concept, print_path, Terminology};

#[derive(Parser)]
#[command(
    name = "dlfd",
    version,
    about = "Finite-model reasoning for terminologies with path functional dependencies"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a model against every axiom of a terminology.
    Check(CheckArgs),
    /// Evaluate a concept in a model and print its extent.
    Eval(EvalArgs),
    /// Search for a finite model of a terminology realizing a goal concept.
    FindModel(FindModelArgs),
    /// Search for a finite countermodel to a subsumption axiom.
    Refute(RefuteArgs),
    /// Compile a tiling instance into a terminology plus goal concept.
    Reduce(ReduceArgs),
    /// Search for a torus tiling on small grids.
    Tile(TileArgs),
    /// Build the witness model for a solvable tiling instance.
    Witness(WitnessArgs),
    /// Run both verification directions for a tiling instance.
    Verify(VerifyArgs),
    /// Export a model as Graphviz DOT.
    ExportDot(ExportDotArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Terminology file (.dlfd).
    terminology: PathBuf,
    /// Model file (.dlfdmodel).
    model: PathBuf,
    /// Treat concept names absent from the model as empty extents.
    #[arg(long)]
    default_empty_concepts: bool,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Model file (.dlfdmodel).
    model: PathBuf,
    /// Concept to evaluate, in terminology syntax.
    concept: String,
    /// Treat concept names absent from the model as empty extents.
    #[arg(long)]
    default_empty_concepts: bool,
    /// Emit the extent as a JSON array.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FindModelArgs {
    /// Terminology file (.dlfd).
    terminology: PathBuf,
    /// Goal concept that must be non-empty, in terminology syntax.
    goal: String,
    /// Smallest domain size to try.
    #[arg(long, default_value_t = 1)]
    min: usize,
    /// Largest domain size to try.
    #[arg(long, default_value_t = 12)]
    max: usize,
    /// Where to write the model (default: terminology path with .dlfdmodel).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Emit the search report as JSON.
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings in the report (breaks byte-determinism).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct RefuteArgs {
    /// Terminology file (.dlfd).
    terminology: PathBuf,
    /// Subsumption to refute, e.g. "A <= fd(A : f -> id)".
    axiom: String,
    /// Smallest countermodel size to try.
    #[arg(long, default_value_t = 1)]
    min: usize,
    /// Largest countermodel size to try.
    #[arg(long, default_value_t = 12)]
    max: usize,
    /// Write a found countermodel here.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Emit the refutation report as JSON.
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings in the report (breaks byte-determinism).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Direct,
    Desugared,
}

impl std::fmt::Display for ModeArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ModeArg::Direct => "direct",
            ModeArg::Desugared => "desugared",
        })
    }
}

#[derive(Args)]
struct ReduceArgs {
    /// Tiling instance file (.tiles).
    tiles: PathBuf,
    /// Whether to keep the asymmetric PFDs or rewrite them via unions.
    #[arg(long, value_enum, default_value_t = ModeArg::Direct)]
    mode: ModeArg,
    /// Write the terminology here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TileArgs {
    /// Tiling instance file (.tiles).
    tiles: PathBuf,
    /// Largest grid dimension to try per axis.
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Emit the tiling as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WitnessArgs {
    /// Tiling instance file (.tiles).
    tiles: PathBuf,
    /// Largest grid dimension to try per axis.
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Where to write the model (default: tiles path with .witness.dlfdmodel).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Emit a summary as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Tiling instance file (.tiles).
    tiles: PathBuf,
    /// Largest grid dimension to try per axis.
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Largest countermodel size to try when no tiling is found.
    #[arg(long, default_value_t = 6)]
    max_size: usize,
    /// Where to write the witness model on the positive branch.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Emit the verification report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExportDotArgs {
    /// Model file (.dlfdmodel).
    model: PathBuf,
    /// Omit self-loop edges (the totalization filler).
    #[arg(long)]
    hide_selfloops: bool,
    /// Write the DOT text here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Check(a) => cmd_check(a),
        Cmd::Eval(a) => cmd_eval(a),
        Cmd::FindModel(a) => cmd_find_model(a),
        Cmd::Refute(a) => cmd_refute(a),
        Cmd::Reduce(a) => cmd_reduce(a),
        Cmd::Tile(a) => cmd_tile(a),
        Cmd::Witness(a) => cmd_witness(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::ExportDot(a) => cmd_export_dot(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------- commands

fn cmd_check(a: &CheckArgs) -> Result<u8, String> {
    let t = load_terminology(&a.terminology)?;
    let m = load_model(&a.model)?;
    let report = m
        .check_terminology(&t, &opts(a.default_empty_concepts))
        .map_err(|e| e.to_string())?;
    if a.json {
        println!("{}", to_json(&report)?);
    } else {
        print_check_report(&report);
    }
    Ok(if report.satisfied { 0 } else { 1 })
}

fn cmd_eval(a: &EvalArgs) -> Result<u8, String> {
    let m = load_model(&a.model)?;
    let concept = parse_concept(&a.concept).map_err(|e| format!("concept: {e}"))?;
    let extent = m
        .eval_concept_with(&concept, &opts(a.default_empty_concepts))
        .map_err(|e| e.to_string())?;
    if a.json {
        println!("{}", to_json(&extent.iter().collect::<Vec<_>>())?);
    } else {
        let items = extent
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        println!("{{{items}}}");
    }
    Ok(if extent.is_empty() { 1 } else { 0 })
}

fn cmd_find_model(a: &FindModelArgs) -> Result<u8, String> {
    let t = load_terminology(&a.terminology)?;
    let goal = parse_concept(&a.goal).map_err(|e| format!("goal: {e}"))?;
    let bounds = bounds(a.min, a.max)?;
    let start = Instant::now();
    let mut report = find_model(&t, &goal, &bounds).map_err(|e| e.to_string())?;
    if a.timings {
        report.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    let code = match &report.outcome {
        SearchOutcome::ModelFound { size, model } => {
            let out = output_path(&a.output, &a.terminology, "dlfdmodel");
            write_model(&out, model).map_err(|e| format!("{}: {e}", out.display()))?;
            if !a.json {
                print_sizes(&report.sizes);
                println!("model of size {size} written to {}", out.display());
            }
            0
        }
        SearchOutcome::NoModelUpTo(bound) => {
            if !a.json {
                print_sizes(&report.sizes);
                println!("no model up to size {bound}");
            }
            1
        }
        SearchOutcome::ResourceLimit { size, decisions } => {
            if !a.json {
                print_sizes(&report.sizes);
                println!("decision budget exhausted at size {size} after {decisions} decisions");
            }
            3
        }
    };
    if a.json {
        println!("{}", to_json(&report)?);
    }
    Ok(code)
}

fn cmd_refute(a: &RefuteArgs) -> Result<u8, String> {
    let t = load_terminology(&a.terminology)?;
    let axiom = parse_axiom(&a.axiom).map_err(|e| format!("axiom: {e}"))?;
    let bounds = bounds(a.min, a.max)?;
    let start = Instant::now();
    let mut report = refute_bounded(&t, &axiom, &bounds).map_err(|e| e.to_string())?;
    if a.timings {
        report.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    let code = match &report.outcome {
        RefutationOutcome::CounterexampleFound { size, model } => {
            if let Some(out) = &a.output {
                write_model(out, model).map_err(|e| format!("{}: {e}", out.display()))?;
            }
            if !a.json {
                print_sizes(&report.sizes);
                println!("counterexample of size {size} found; the subsumption does not hold in all finite models");
                if let Some(out) = &a.output {
                    println!("countermodel written to {}", out.display());
                }
            }
            0
        }
        RefutationOutcome::NoCounterexampleUpTo(bound) => {
            if !a.json {
                print_sizes(&report.sizes);
                println!("no counterexample up to size {bound}");
                println!("note: {}", report.note);
            }
            1
        }
        RefutationOutcome::ResourceLimit { size, decisions } => {
            if !a.json {
                print_sizes(&report.sizes);
                println!("decision budget exhausted at size {size} after {decisions} decisions");
            }
            3
        }
    };
    if a.json {
        println!("{}", to_json(&report)?);
    }
    Ok(code)
}

fn cmd_reduce(a: &ReduceArgs) -> Result<u8, String> {
    let inst = load_tiles(&a.tiles)?;
    let mode = match a.mode {
        ModeArg::Direct => ReductionMode::Direct,
        ModeArg::Desugared => ReductionMode::Desugared,
    };
    let (t, goal) =
        reduce_to_terminology(&inst.problem, &inst.t0, mode).map_err(|e| e.to_string())?;
    let mut text = dlfd::render_terminology(&t);
    text.push_str(&format!("# goal: {}\n", print_concept(&goal)));
    emit(&a.output, &text)?;
    Ok(0)
}

fn cmd_tile(a: &TileArgs) -> Result<u8, String> {
    let inst = load_tiles(&a.tiles)?;
    match solve_torus_upto(&inst.problem, &inst.t0, a.max_dim).map_err(|e| e.to_string())? {
        Some(s) => {
            if a.json {
                println!("{}", to_json(&s)?);
            } else {
                println!("{}x{} torus tiling:", s.width(), s.height());
                print_rows(&s);
            }
            Ok(0)
        }
        None => {
            if !a.json {
                println!("no torus tiling up to {0}x{0}", a.max_dim);
            }
            Ok(1)
        }
    }
}

#[derive(Serialize)]
struct WitnessOut<'a> {
    width: usize,
    height: usize,
    elements: usize,
    path: &'a str,
}

fn cmd_witness(a: &WitnessArgs) -> Result<u8, String> {
    let inst = load_tiles(&a.tiles)?;
    let Some(found) =
        solve_torus_upto(&inst.problem, &inst.t0, a.max_dim).map_err(|e| e.to_string())?
    else {
        if !a.json {
            println!("no torus tiling up to {0}x{0}", a.max_dim);
        }
        return Ok(1);
    };
    let tiling = ensure_even(found);
    let witness = build_torus_witness(&inst.problem, &tiling).map_err(|e| e.to_string())?;
    let out = output_path(&a.output, &a.tiles, "witness.dlfdmodel");
    write_model(&out, &witness).map_err(|e| format!("{}: {e}", out.display()))?;
    let shown = out.display().to_string();
    if a.json {
        println!(
            "{}",
            to_json(&WitnessOut {
                width: tiling.width(),
                height: tiling.height(),
                elements: witness.n(),
                path: &shown,
            })?
        );
    } else {
        println!(
            "witness model with {} elements from a {}x{} tiling written to {shown}",
            witness.n(),
            tiling.width(),
            tiling.height()
        );
    }
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, String> {
    let inst = load_tiles(&a.tiles)?;
    let bounds = bounds(1, a.max_size)?;
    let report =
        dlfd::verify_reduction_instance(&inst.problem, &inst.t0, a.max_dim, &bounds)
            .map_err(|e| e.to_string())?;
    let mut witness_path = None;
    if let Some(torus) = &report.torus {
        let summary = report.witness.as_ref().expect("positive branch has a summary");
        let verified = summary.direct_satisfied
            && summary.desugared_satisfied
            && summary.goal_nonempty
            && summary.countermodel;
        if !verified {
            return Err(format!("witness failed verification: {}", report.conclusion));
        }
        let witness = build_torus_witness(&inst.problem, torus).map_err(|e| e.to_string())?;
        let out = output_path(&a.output, &a.tiles, "witness.dlfdmodel");
        write_model(&out, &witness).map_err(|e| format!("{}: {e}", out.display()))?;
        witness_path = Some(out);
    }
    if a.json {
        println!("{}", to_json(&report)?);
        if let Some(out) = &witness_path {
            eprintln!("witness written to {}", out.display());
        }
    } else {
        println!("{}", report.conclusion);
        if let Some(out) = &witness_path {
            println!("witness written to {}", out.display());
        }
        if let Some(refutation) = &report.refutation {
            print_sizes(&refutation.sizes);
            println!("note: {}", refutation.note);
        }
    }
    Ok(match (&report.torus, &report.refutation) {
        (Some(_), _) => 0,
        (None, Some(r)) => match r.outcome {
            RefutationOutcome::CounterexampleFound { .. } => 0,
            RefutationOutcome::NoCounterexampleUpTo(_) => 1,
            RefutationOutcome::ResourceLimit { .. } => 3,
        },
        (None, None) => unreachable!("negative branch always refutes"),
    })
}

fn cmd_export_dot(a: &ExportDotArgs) -> Result<u8, String> {
    let m = load_model(&a.model)?;
    emit(&a.output, &to_dot(&m, a.hide_selfloops))?;
    Ok(0)
}

// ----------------------------------------------------------------- helpers

fn opts(default_empty_concepts: bool) -> CheckOptions {
    CheckOptions {
        default_empty_concepts,
    }
}

fn load_terminology(path: &Path) -> Result<Terminology, String> {
    let text = read_file(path)?;
    parse_terminology(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_model(path: &Path) -> Result<FiniteInterpretation, String> {
    read_model(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_tiles(path: &Path) -> Result<TilingInstance, String> {
    let text = read_file(path)?;
    TilingInstance::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Node limits come from the environment so batch runs can bound every
/// invocation uniformly.
fn bounds(min: usize, max: usize) -> Result<SearchBounds, String> {
    let node_limit = match std::env::var("DLFD_NODE_LIMIT") {
        Ok(s) => Some(
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("DLFD_NODE_LIMIT must be an unsigned integer, got {s:?}"))?,
        ),
        Err(std::env::VarError::NotPresent) => None,
        Err(e) => return Err(format!("DLFD_NODE_LIMIT: {e}")),
    };
    Ok(SearchBounds {
        min,
        max,
        node_limit,
    })
}

fn output_path(chosen: &Option<PathBuf>, input: &Path, extension: &str) -> PathBuf {
    chosen
        .clone()
        .unwrap_or_else(|| input.with_extension(extension))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}

fn ensure_even(s: TorusTiling) -> TorusTiling {
    if s.width() % 2 != 0 || s.height() % 2 != 0 {
        double_tiling(&s)
    } else {
        s
    }
}

fn print_rows(s: &TorusTiling) {
    for row in s.rows() {
        let line = row
            .iter()
            .map(|t| t.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        println!("{line}");
    }
}

fn print_sizes(sizes: &[SizeStats]) {
    for s in sizes {
        let verdict = match s.verdict {
            SizeVerdict::Model => "model",
            SizeVerdict::NoModel => "none",
            SizeVerdict::Limit => "limit",
        };
        println!("size {}: {} ({} decisions)", s.size, verdict, s.decisions);
    }
}

fn print_check_report(report: &CheckReport) {
    for status in &report.axioms {
        match &status.outcome {
            AxiomOutcome::Satisfied => {
                println!("{:>3} ok        {}", status.index, status.axiom);
            }
            AxiomOutcome::Violated(v) => {
                println!("{:>3} violated  {}", status.index, status.axiom);
                println!("    {}", describe_violation(v));
            }
        }
    }
    println!("{}", if report.satisfied { "satisfied" } else { "violated" });
}

fn describe_violation(v: &Violation) -> String {
    match v {
        Violation::Simple { element } => {
            format!("element {element} is outside the right-hand side")
        }
        Violation::Pfd {
            x,
            y,
            agreements,
            disagreement,
            ..
        } => {
            let agreed = agreements
                .iter()
                .map(|a| format!("{} = {}", print_path(&a.path), a.value))
                .collect::<Vec<_>>()
                .join(", ");
            format!(
                "elements {x} and {y} agree on {agreed} but {} maps them to {} and {}",
                print_path(&disagreement.path),
                disagreement.at_x,
                disagreement.at_y
            )
        }
    }
}
