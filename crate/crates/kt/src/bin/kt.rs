use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use knight_tour::cache::BootstrapOptions;
use knight_tour::text::{parse_edge, parse_endpoints, parse_move, parse_shape};
use knight_tour::{from_json, render, solve_parallel, to_json, Cache, Error, InstantClock};
use knight_tour_core::catalog::{default_manifest, seed_edges};
use knight_tour_core::construct2d::is_seeded;
use knight_tour_core::constructnd::construct;
use knight_tour_core::solver::{
    scan_one, scan_shapes, Budget, ScanRecord, ScanVerdict, SearchConstraints, SearchResult,
};
use knight_tour_core::{
    classify, find_sites, verify, BoardShape, ConstructError, OpenPath, Route, Site, Tour, Verdict, Walk,
};
use serde_json::{json, Value};

/// Closed knight's tours on boards of any dimension.
#[derive(Parser)]
#[command(name = "kt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Maximum search nodes per search.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Maximum seconds per search (ignored with --deterministic).
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Ignore wall-clock limits so that output depends only on the inputs.
    #[arg(long)]
    deterministic: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let default = Budget::default();
        Budget {
            max_nodes: self.budget_nodes.or(default.max_nodes),
            max_time: if self.deterministic {
                None
            } else {
                self.budget_secs.map(Duration::from_secs_f64).or(default.max_time)
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Whether a closed tour exists (exit 0 yes, 1 no).
    Exists {
        shape: String,
        #[arg(long = "move", default_value = "1,2")]
        moves: String,
    },
    /// Build a closed tour from the cached base cases.
    Construct {
        shape: String,
        /// Also check that a 2D result carries both seed edges.
        #[arg(long)]
        seeded: bool,
        /// Accepted for symmetry; construction never depends on the clock.
        #[arg(long)]
        deterministic: bool,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Check a tour file.
    Verify { file: PathBuf },
    /// List the sites of a tour file.
    Sites {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        distance: usize,
    },
    /// Search for a tour or path under constraints.
    Solve {
        shape: String,
        #[arg(long = "move", default_value = "1,2")]
        moves: String,
        /// Open path from the first cell to the second, e.g. 4,5:4,3.
        #[arg(long)]
        endpoints: Option<String>,
        /// Edge the walk must use, e.g. 0,0:1,2. Repeatable.
        #[arg(long = "force-edge")]
        force_edge: Vec<String>,
        /// Force both seed edges of a 2D board.
        #[arg(long)]
        seeded: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Search every board up to a size for a closed tour of a leaper.
    Scan {
        #[arg(long = "move", default_value = "1,2")]
        moves: String,
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Solve and cache every base case.
    Bootstrap {
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print a tour file layer by layer.
    Render {
        file: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(2, json!({ "error": e.to_string().trim() })),
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = if matches!(e, Error::Parse(_) | Error::Model(_) | Error::Json(_)) { 2 } else { 1 };
            fail(code, json!({ "error": e.to_string() }))
        }
    }
}

fn fail(code: u8, payload: Value) -> ExitCode {
    eprintln!("{payload}");
    ExitCode::from(code)
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Exists { shape, moves } => exists(&shape, &moves),
        Command::Construct { shape, seeded, deterministic: _, out } => construct_cmd(&shape, seeded, out.as_deref()),
        Command::Verify { file } => verify_cmd(&file),
        Command::Sites { file, distance } => sites_cmd(&file, distance),
        Command::Solve { shape, moves, endpoints, force_edge, seeded, jobs, budget, out } => {
            solve_cmd(&shape, &moves, endpoints.as_deref(), &force_edge, seeded, jobs, budget, out.as_deref())
        }
        Command::Scan { moves, max, jobs, budget, out } => scan_cmd(&moves, max, jobs, budget, out.as_deref()),
        Command::Bootstrap { budget } => bootstrap_cmd(budget),
        Command::Render { file, out } => {
            let (route, closed) = read_tour(&file)?;
            emit(out.as_deref(), &render(&route, closed))?;
            Ok(0)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io { path: path.into(), source: e }),
        None => {
            print!("{text}");
            std::io::stdout().flush().map_err(|e| Error::Io { path: "<stdout>".into(), source: e })
        }
    }
}

fn read_tour(file: &Path) -> Result<(Route, bool), Error> {
    let text = fs::read_to_string(file).map_err(|e| Error::Io { path: file.into(), source: e })?;
    from_json(&text)
}

fn exists(shape: &str, moves: &str) -> Result<u8, Error> {
    let shape = parse_shape(shape)?;
    let moves = parse_move(moves)?;
    let class = classify(&shape, &moves).map_err(|e| Error::Parse(e.to_string()))?;
    println!(
        "{}",
        json!({
            "shape": shape.dims(),
            "move": moves.steps(),
            "tourable": class.is_tourable(),
            "reason": format!("{:?}", class.reason),
        })
    );
    Ok(if class.is_tourable() { 0 } else { 1 })
}

fn construct_cmd(shape: &str, seeded: bool, out: Option<&Path>) -> Result<u8, Error> {
    let shape = parse_shape(shape)?;
    if seeded && shape.rank() != 2 {
        return Err(Error::Parse("--seeded applies to 2D boards only".into()));
    }
    let lib = Cache::from_env().load_complete()?;
    let tour = match construct(&lib, &shape) {
        Ok(t) => t,
        Err(ConstructError::NotTourable(reason)) => {
            eprintln!("{}", json!({ "error": "board admits no closed tour", "reason": format!("{reason:?}") }));
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    if seeded && !is_seeded(&tour) {
        return Err(ConstructError::Precondition("constructed tour is not seeded".into()).into());
    }
    emit(out, &to_json(tour.route(), true))?;
    Ok(0)
}

fn verify_cmd(file: &Path) -> Result<u8, Error> {
    let (route, closed) = read_tour(file)?;
    let verdict = verify(&route, closed);
    let payload = match verdict {
        Verdict::Valid => json!({ "valid": true, "closed": closed, "cells": route.order().len() }),
        Verdict::Invalid(why) => json!({ "valid": false, "closed": closed, "problem": why.to_string() }),
    };
    println!("{payload}");
    Ok(if verdict.is_valid() { 0 } else { 1 })
}

fn site_json(shape: &BoardShape, s: &Site) -> Value {
    let cells = |p: [usize; 2]| json!([shape.cell(p[0]).0, shape.cell(p[1]).0]);
    json!({ "e": cells(s.e), "f": cells(s.f) })
}

fn sites_cmd(file: &Path, distance: usize) -> Result<u8, Error> {
    let (route, closed) = read_tour(file)?;
    if let Verdict::Invalid(why) = verify(&route, closed) {
        return Err(Error::Invalid(why));
    }
    let shape = route.shape().clone();
    let inventory = if closed {
        find_sites(&Tour::from_route_unchecked(route), distance)
    } else {
        find_sites(&OpenPath::from_route_unchecked(route), distance)
    };
    let pair = inventory.pair().map(|(a, b)| json!([site_json(&shape, &a), site_json(&shape, &b)]));
    let sites: Vec<Value> = inventory.sites.iter().map(|s| site_json(&shape, s)).collect();
    println!(
        "{}",
        json!({ "distance": distance, "count": sites.len(), "bisited": inventory.bisited, "pair": pair, "sites": sites })
    );
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn solve_cmd(
    shape: &str,
    moves: &str,
    endpoints: Option<&str>,
    force: &[String],
    seeded: bool,
    jobs: usize,
    budget: BudgetArgs,
    out: Option<&Path>,
) -> Result<u8, Error> {
    let shape = parse_shape(shape)?;
    let moves = parse_move(moves)?;
    let mut c = match endpoints {
        Some(s) => {
            let (a, b) = parse_endpoints(&shape, s)?;
            SearchConstraints::path(a, b)
        }
        None => SearchConstraints::closed(),
    };
    for s in force {
        c = c.force(parse_edge(&shape, s)?);
    }
    if seeded {
        if shape.rank() != 2 || shape.dims().iter().any(|&d| d < 3) {
            return Err(Error::Parse("--seeded needs a 2D board with sides of at least 3".into()));
        }
        for e in seed_edges(&shape) {
            c = c.force(e);
        }
    }
    let outcome = solve_parallel(&shape, &moves, &c, budget.budget(), jobs).map_err(|e| Error::Parse(e.to_string()))?;
    match outcome.result {
        SearchResult::Found(route) => {
            emit(out, &to_json(&route, c.closed))?;
            Ok(0)
        }
        other => {
            let verdict = if other == SearchResult::Exhausted { "Exhausted" } else { "TimedOut" };
            println!("{}", json!({ "verdict": verdict, "nodes": outcome.nodes_expanded }));
            Ok(1)
        }
    }
}

fn verdict_name(v: ScanVerdict) -> &'static str {
    match v {
        ScanVerdict::Found => "Found",
        ScanVerdict::Exhausted => "Exhausted",
        ScanVerdict::TimedOut => "TimedOut",
        ScanVerdict::Disconnected => "Disconnected",
    }
}

fn scan_cmd(moves: &str, max: usize, jobs: usize, budget: BudgetArgs, out: Option<&Path>) -> Result<u8, Error> {
    let moves = parse_move(moves)?;
    let shapes = scan_shapes(&moves, max);
    let budget = budget.budget();
    let one = |s: &BoardShape| scan_one(s, &moves, budget, &InstantClock::start());
    let records: Vec<ScanRecord> = if jobs <= 1 {
        shapes.iter().map(one).collect()
    } else {
        let chunk = shapes.len().div_ceil(jobs).max(1);
        std::thread::scope(|s| {
            let workers: Vec<_> =
                shapes.chunks(chunk).map(|part| s.spawn(move || part.iter().map(one).collect::<Vec<_>>())).collect();
            workers.into_iter().flat_map(|w| w.join().expect("scan worker panicked")).collect()
        })
    };
    let mut text = String::new();
    for r in &records {
        text.push_str(
            &json!({ "shape": r.shape.dims(), "move": r.moves.steps(), "verdict": verdict_name(r.verdict) })
                .to_string(),
        );
        text.push('\n');
    }
    emit(out, &text)?;
    Ok(0)
}

fn bootstrap_cmd(budget: BudgetArgs) -> Result<u8, Error> {
    let cache = Cache::from_env();
    let opts = BootstrapOptions { budget: budget.budget(), deterministic: budget.deterministic };
    let report = cache.bootstrap(&default_manifest(), opts)?;
    println!("{}", serde_json::to_string(&report)?);
    Ok(if report.is_complete() { 0 } else { 1 })
}
