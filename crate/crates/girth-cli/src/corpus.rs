use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use girth_curve::{girth_word, oracle_search, CurveError};
use girth_map::{euler_char, validate, Complex, SurfaceMap};
use girth_surface::{oracle_surface_girth, surface_girth};
use girth_word::{Automorphism, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::Out;
use crate::{Failure, EXIT_INTERNAL, EXIT_USAGE};

/// Words longer than this skip the exhaustive curve check.
const ORACLE_WORD_LEN: usize = 10;
const ORACLE_BUDGET: usize = 1_000_000;
/// Maps up to this genus and arc count are checked against curve enumeration.
const ORACLE_GENUS: u8 = 2;
const ORACLE_ARCS: usize = 8;
const SURFACE_MAX: usize = 8;
const CHAINS: usize = 5;
const CHAIN_LEN: usize = 5;

#[derive(Args, Debug)]
pub struct CorpusArgs {
    /// Directory holding `*.json` maps and `*.words` lists of `rank word` lines.
    #[arg(long)]
    dir: PathBuf,
    /// Seed for the random automorphisms applied to each word.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Add wall-clock milliseconds to every case and to the summary.
    #[arg(long)]
    timings: bool,
}

enum Input {
    Map(PathBuf),
    Word { rank: u8, text: String },
}

struct Case {
    id: usize,
    name: String,
    input: Input,
}

struct Verdict {
    failure: Option<String>,
    facts: Vec<(&'static str, Value)>,
}

impl Verdict {
    fn pass(facts: Vec<(&'static str, Value)>) -> Self {
        Verdict { failure: None, facts }
    }

    fn fail(msg: String) -> Self {
        Verdict { failure: Some(msg), facts: Vec::new() }
    }
}

fn collect(dir: &Path) -> Result<Vec<Case>, Failure> {
    let io = |e: std::io::Error| Failure::new(EXIT_USAGE, format!("{}: {e}", dir.display()));
    let mut files: Vec<PathBuf> =
        std::fs::read_dir(dir).map_err(io)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>().map_err(io)?;
    files.sort();
    let mut cases = Vec::new();
    for path in files {
        let file = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
        match path.extension().and_then(|x| x.to_str()) {
            Some("json") => cases.push(Case { id: cases.len(), name: file, input: Input::Map(path) }),
            Some("words") => {
                let text = std::fs::read_to_string(&path).map_err(io)?;
                for (i, line) in text.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    let bad = || Failure::new(EXIT_USAGE, format!("{file}:{}: expected `rank word`", i + 1));
                    let (rank, word) = line.split_once(char::is_whitespace).ok_or_else(bad)?;
                    let rank = rank.parse().map_err(|_| bad())?;
                    let name = format!("{file}:{}", i + 1);
                    cases.push(Case {
                        id: cases.len(),
                        name,
                        input: Input::Word { rank, text: word.trim().to_string() },
                    });
                }
            }
            _ => {}
        }
    }
    Ok(cases)
}

fn random_nielsen(rng: &mut ChaCha8Rng, rank: u8) -> Automorphism {
    let x = rng.gen_range(1..=rank);
    if rank == 1 {
        return Automorphism::nielsen_invert(rank, x);
    }
    let mut y = rng.gen_range(1..rank);
    if y >= x {
        y += 1;
    }
    match rng.gen_range(0..4) {
        0 => Automorphism::nielsen_right(rank, x, Letter::new(y, rng.gen_bool(0.5))),
        1 => Automorphism::nielsen_left(rank, x, Letter::new(y, rng.gen_bool(0.5))),
        2 => Automorphism::nielsen_invert(rank, x),
        _ => Automorphism::nielsen_swap(rank, x, y),
    }
}

fn check_word(rank: u8, text: &str, seed: u64) -> Result<Verdict, CurveError> {
    let w = Word::parse(rank, text)?;
    let cert = girth_word(&w)?;
    let g = cert.girth;
    if rank >= 2 && g == 1 {
        return Ok(Verdict::fail(format!("girth one for {text}")));
    }
    if cert.descent.trace.iter().any(|s| s.after >= s.before) {
        return Ok(Verdict::fail(format!("descent of {text} failed to shorten at some step")));
    }
    let mut facts = vec![("girth", json!(g))];
    if w.cyclic().len() <= ORACLE_WORD_LEN {
        match oracle_search(&w, ORACLE_BUDGET) {
            Ok(run) if run.girth != g => {
                return Ok(Verdict::fail(format!("oracle gives {} for {text}, descent {g}", run.girth)));
            }
            Ok(_) => facts.push(("oracle", json!(true))),
            Err(CurveError::BudgetExhausted { .. }) => facts.push(("oracle", json!(false))),
            Err(e) => return Err(e),
        }
    }
    for m in 2..=4 {
        let p = girth_word(&w.pow(m))?.girth;
        if p != m * g {
            return Ok(Verdict::fail(format!("girth of ({text})^{m} is {p}, not {}", m * g)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CHAINS {
        let mut phi = Automorphism::identity(rank);
        for _ in 0..rng.gen_range(1..=CHAIN_LEN) {
            phi = random_nielsen(&mut rng, rank).compose(&phi)?;
        }
        let image = phi.apply(&w)?;
        let h = girth_word(&image)?.girth;
        if h != g {
            return Ok(Verdict::fail(format!("girth of {image}, an automorphic image of {text}, is {h}, not {g}")));
        }
    }
    Ok(Verdict::pass(facts))
}

/// Euler characteristic from the cells of the subsurface: polygons, less
/// shared sides, plus vertices away from the boundary.
fn chi_from_cells(m: &SurfaceMap) -> Option<i64> {
    if m.faces.iter().any(|f| f.boundary.len() > 1) {
        return None;
    }
    let (cx, _) = Complex::from_map(m).ok()?;
    let d = cx.dual_of_s();
    Some(d.polygon_len.len() as i64 - d.edges.len() as i64 + d.interior_vertices.len() as i64)
}

fn check_map(path: &Path) -> Verdict {
    let shown = path.display();
    let m = match std::fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|t| SurfaceMap::parse(&t).map_err(|e| e.to_string()))
    {
        Ok(m) => m,
        Err(e) => return Verdict::fail(format!("{shown}: {e}")),
    };
    let d = match validate(&m) {
        Ok(d) => d,
        Err(errs) => return Verdict::fail(format!("{shown}: {}", errs[0])),
    };
    let chi = match euler_char(&m) {
        Ok(c) => c,
        Err(e) => return Verdict::fail(format!("{shown}: {e}")),
    };
    if let Some(c) = chi_from_cells(&m).filter(|&c| c != chi) {
        return Verdict::fail(format!("{shown}: chi {chi} from boundary count, {c} from cells"));
    }
    if d.chi != chi {
        return Verdict::fail(format!("{shown}: validator chi {} disagrees with {chi}", d.chi));
    }
    let mut facts = vec![("chi", json!(chi))];
    let got = match surface_girth(&m, SURFACE_MAX) {
        Ok(run) => run.map(|r| r.bound),
        Err(e) => return Verdict::fail(format!("{shown}: {e}")),
    };
    facts.push(("girth", got.map_or(Value::Null, |g| json!(g))));
    if m.genus <= ORACLE_GENUS && m.arcs.len() <= ORACLE_ARCS {
        match oracle_surface_girth(&m, 12, 20_000_000) {
            Ok(o) if o.girth.filter(|&g| g <= SURFACE_MAX) != got => {
                return Verdict::fail(format!("{shown}: oracle gives {:?}, construction {got:?}", o.girth));
            }
            Ok(_) => facts.push(("oracle", json!(true))),
            Err(e) => return Verdict::fail(format!("{shown}: oracle failed: {e}")),
        }
    }
    Verdict::pass(facts)
}

fn check(case: &Case, seed: u64) -> Verdict {
    match &case.input {
        Input::Map(path) => check_map(path),
        Input::Word { rank, text } => check_word(*rank, text, seed.wrapping_add(case.id as u64))
            .unwrap_or_else(|e| Verdict::fail(format!("{text}: {e}"))),
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("GIRTH_THREADS") {
        let n: usize =
            v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
                Failure::new(EXIT_USAGE, format!("GIRTH_THREADS must be a positive integer, got {v:?}"))
            })?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Failure::new(EXIT_INTERNAL, e))
}

pub fn run(out: &Out, args: &CorpusArgs) -> Result<u8, Failure> {
    let cases = collect(&args.dir)?;
    let pool = thread_pool()?;
    out.emit(
        format!("corpus dir={} seed={} cases={}", args.dir.display(), args.seed, cases.len()),
        json!({"kind": "header", "dir": args.dir.display().to_string(), "seed": args.seed, "cases": cases.len()}),
    );
    let start = Instant::now();
    let results: Vec<(Verdict, u128)> = pool.install(|| {
        cases
            .par_iter()
            .map(|c| {
                let t = Instant::now();
                let v = check(c, args.seed);
                (v, t.elapsed().as_millis())
            })
            .collect()
    });
    let mut failed = 0;
    for (case, (v, ms)) in cases.iter().zip(&results) {
        let kind = match case.input {
            Input::Map(_) => "map",
            Input::Word { .. } => "word",
        };
        let mut line = format!("case {} {kind} {} ", case.id, case.name);
        let mut record = json!({"kind": "case", "id": case.id, "input": kind, "name": case.name});
        match &v.failure {
            None => {
                line.push_str("PASS");
                record["pass"] = json!(true);
            }
            Some(msg) => {
                failed += 1;
                line.push_str(&format!("FAIL {msg}"));
                record["pass"] = json!(false);
                record["counterexample"] = json!(msg);
            }
        }
        for (k, val) in &v.facts {
            line.push_str(&format!(" {k}={}", val.as_i64().map_or_else(|| val.to_string(), |n| n.to_string())));
            record[*k] = val.clone();
        }
        if args.timings {
            line.push_str(&format!(" ms={ms}"));
            record["ms"] = json!(ms);
        }
        out.emit(line, record);
    }
    let mut line = format!("summary cases={} pass={} fail={failed}", cases.len(), cases.len() - failed);
    let mut record = json!({"kind": "summary", "cases": cases.len(), "pass": cases.len() - failed, "fail": failed});
    if args.timings {
        let ms = start.elapsed().as_millis();
        line.push_str(&format!(" ms={ms}"));
        record["ms"] = json!(ms);
    }
    out.emit(line, record);
    Ok(if failed == 0 { 0 } else { EXIT_INTERNAL })
}
