//! `girth`: compute the girth of a cyclic word or of a subsurface map, check
//! either against its exhaustive oracle, validate maps and run corpus checks.

mod corpus;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use girth_curve::{girth_word, oracle_girth, CurveError};
use girth_map::{validate, SurfaceMap};
use girth_surface::{oracle_surface_girth, surface_girth, SurfaceError};
use girth_word::Word;
use serde_json::json;

use crate::output::{Format, Out};

const EXIT_INTERNAL: u8 = 1;
const EXIT_TRIVIAL: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_ABOVE_BOUND: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "girth", version, about = "Girth of curves and subsurfaces in a handlebody")]
struct Cli {
    /// Output style: plain lines or one JSON object per line.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Girth of a cyclic word in the free group of the given rank.
    Curve(CurveArgs),
    /// Girth of the subsurface described by a map file.
    Surface(SurfaceArgs),
    /// Map file utilities.
    Map {
        #[command(subcommand)]
        command: MapCommand,
    },
    /// Check every map and word list in a directory.
    Corpus(corpus::CorpusArgs),
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long)]
    rank: u8,
    /// Word over a/A, b/B, ...; capitals are inverses.
    #[arg(long)]
    word: String,
    /// Print each descent step and the disc realizing the girth.
    #[arg(long)]
    trace: bool,
    /// Use the exhaustive search instead of the descent.
    #[arg(long)]
    oracle: bool,
    /// States the exhaustive search may visit.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    #[arg(long)]
    map: PathBuf,
    /// Largest girth searched for.
    #[arg(long, default_value_t = 8)]
    max: usize,
    /// Use the exhaustive curve enumeration instead of the disc construction.
    #[arg(long)]
    oracle: bool,
    /// Longest dual-graph walk the enumeration tries.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    length_bound: u64,
    /// Walk steps the enumeration may take.
    #[arg(long, default_value_t = 20_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Print the recursion trace of the successful search.
    #[arg(long)]
    trace: bool,
}

#[derive(Subcommand, Debug)]
enum MapCommand {
    /// Check a map file and print its diagnostics.
    Validate {
        #[arg(long)]
        map: PathBuf,
    },
}

/// A command that could not produce its normal output.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure { code, message: message.to_string() }
    }
}

fn curve_failure(e: CurveError) -> Failure {
    let code = match e {
        CurveError::TrivialWord => EXIT_TRIVIAL,
        CurveError::BudgetExhausted { .. } => EXIT_BUDGET,
        CurveError::Word(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    };
    Failure::new(code, e)
}

fn surface_failure(e: SurfaceError) -> Failure {
    let code = match e {
        SurfaceError::BudgetExhausted { .. } => EXIT_BUDGET,
        _ => EXIT_INTERNAL,
    };
    Failure::new(code, e)
}

pub(crate) fn read_map(path: &Path) -> Result<SurfaceMap, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    SurfaceMap::parse(&text).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn run_curve(out: &Out, args: &CurveArgs) -> Result<u8, Failure> {
    let w = Word::parse(args.rank, &args.word).map_err(|e| Failure::new(EXIT_USAGE, e))?;
    if args.oracle {
        let g = oracle_girth(&w, args.budget as usize).map_err(curve_failure)?;
        out.emit(format!("girth={g}"), json!({"kind": "girth", "word": args.word, "girth": g, "method": "oracle"}));
        return Ok(0);
    }
    let cert = girth_word(&w).map_err(curve_failure)?;
    out.emit(
        format!("girth={}", cert.girth),
        json!({"kind": "girth", "word": args.word, "girth": cert.girth, "method": "descent"}),
    );
    if args.trace {
        for (i, s) in cert.descent.trace.iter().enumerate() {
            out.emit(
                format!("step {}: halfdisc={} complexity {}→{}", i + 1, s.half_disc, s.before, s.after),
                json!({"kind": "step", "index": i + 1, "halfdisc": s.half_disc.to_string(), "before": s.before, "after": s.after}),
            );
        }
        out.emit(
            format!("witness={}", cert.witness),
            json!({"kind": "witness", "interface": cert.witness.to_string(), "word": cert.descent.word.to_string()}),
        );
    }
    Ok(0)
}

fn run_surface(out: &Out, args: &SurfaceArgs) -> Result<u8, Failure> {
    let m = read_map(&args.map)?;
    validate(&m).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {}", args.map.display(), e[0])))?;
    if args.oracle {
        let o = oracle_surface_girth(&m, args.length_bound as usize, args.budget as usize).map_err(surface_failure)?;
        if args.trace {
            out.emit(
                format!("trace: words_seen={}", o.words_seen),
                json!({"kind": "trace", "words_seen": o.words_seen}),
            );
        }
        return Ok(match (o.girth, &o.witness) {
            (Some(g), Some(w)) if g <= args.max => {
                out.emit(
                    format!("girth<={g} curve={w} disc=-"),
                    json!({"kind": "girth", "bound": g, "curve": w.to_string(), "disc": null, "method": "oracle"}),
                );
                0
            }
            _ => {
                above_bound(out, args.max);
                EXIT_ABOVE_BOUND
            }
        });
    }
    let Some(run) = surface_girth(&m, args.max).map_err(surface_failure)? else {
        above_bound(out, args.max);
        return Ok(EXIT_ABOVE_BOUND);
    };
    if args.trace {
        for t in &run.trace {
            out.emit(format!("trace: {t}"), json!({"kind": "trace", "line": t}));
        }
    }
    let w = run.witness.as_ref().expect("surface_girth returns successful runs");
    out.emit(
        format!("girth<={} {w}", run.bound),
        json!({
            "kind": "girth",
            "bound": run.bound,
            "curve": w.curve.word.to_string(),
            "disc": w.disc_id(),
            "interface": w.certificate.interface.as_ref().map(|a| a.to_string()),
            "method": "construction",
        }),
    );
    Ok(0)
}

fn above_bound(out: &Out, max: usize) {
    out.emit(format!("girth>{max}"), json!({"kind": "girth", "above": max}));
}

fn run_validate(out: &Out, path: &Path) -> Result<u8, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    let errors = match SurfaceMap::parse(&text) {
        Ok(m) => match validate(&m) {
            Ok(d) => {
                out.emit(d.to_string(), json!({"kind": "diagnostics", "valid": true, "text": d.to_string()}));
                return Ok(0);
            }
            Err(errs) => errs.iter().map(|e| e.to_string()).collect(),
        },
        Err(e) => vec![e.to_string()],
    };
    for e in &errors {
        out.emit(format!("invalid: {e}"), json!({"kind": "diagnostics", "valid": false, "text": e}));
    }
    Ok(EXIT_INTERNAL)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let out = Out::new(cli.format);
    let result = match &cli.command {
        Command::Curve(a) => run_curve(&out, a),
        Command::Surface(a) => run_surface(&out, a),
        Command::Map { command: MapCommand::Validate { map } } => run_validate(&out, map),
        Command::Corpus(a) => corpus::run(&out, a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
