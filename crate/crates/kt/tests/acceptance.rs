//! End-to-end acceptance checks. Runs as a plain binary and prints one
//! `PASS`/`FAIL` line per criterion; exits non-zero if any fails.

use std::collections::HashSet;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use knight_tour_core::catalog::{BaseLibrary, BaseTag};
use knight_tour_core::construct2d::{
    construct_2d, construct_open_for_doubling, extend_seeded, is_seeded, make_extender,
};
use knight_tour_core::construct3d::{double_open, BisitedTour};
use knight_tour_core::constructnd::{construct, lift_ab, stack};
use knight_tour_core::solver::{
    count_tours, for_each_solution, solve, Budget, CountOutcome, NoClock, SearchConstraints, SearchResult,
    SolverOptions,
};
use knight_tour_core::{
    classify, connectivity, corner_sites, find_ab_sites, find_sites, knuth_connectivity_predicted, verify, BoardShape,
    ConstructError, Edge, MoveSpec, Route, Tour, Walk,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn board(dims: &[usize]) -> BoardShape {
    BoardShape::new(dims.to_vec()).unwrap()
}

fn knight() -> MoveSpec {
    MoveSpec::knight()
}

/// Independent check of a closed tour for any leaper: every cell once and
/// each step, including the closing one, changes exactly two coordinates by
/// the two move steps.
fn is_closed_tour(route: &Route) -> bool {
    let dims = route.shape().dims();
    let steps = route.moves().steps();
    let cells: Vec<Vec<usize>> = route.cells().map(|c| c.0).collect();
    if cells.len() != dims.iter().product::<usize>() || !cells.iter().all(|c| c.iter().zip(dims).all(|(x, n)| x < n)) {
        return false;
    }
    let mut seen = HashSet::new();
    if !cells.iter().all(|c| seen.insert(c.clone())) {
        return false;
    }
    let mut want = steps.to_vec();
    want.sort();
    (0..cells.len()).all(|i| {
        let (u, v) = (&cells[i], &cells[(i + 1) % cells.len()]);
        let mut diffs: Vec<usize> = u.iter().zip(v).map(|(a, b)| a.abs_diff(*b)).filter(|&d| d > 0).collect();
        diffs.sort();
        diffs == want
    })
}

fn checked_tour(t: &Tour) -> bool {
    verify(t.route(), true).is_valid() && is_closed_tour(t.route())
}

fn construct_matches_classification(lib: &BaseLibrary, dims: &[usize]) -> Result<(), String> {
    let shape = board(dims);
    let tourable = classify(&shape, &knight()).unwrap().is_tourable();
    match construct(lib, &shape) {
        Ok(t) => {
            ensure!(tourable, "{shape}: built a tour for an untourable board");
            ensure!(t.shape() == &shape && checked_tour(&t), "{shape}: constructed tour fails verification");
        }
        Err(e) => ensure!(!tourable, "{shape}: tourable but construction failed: {e}"),
    }
    Ok(())
}

fn classification_matches_construction(lib: &BaseLibrary) -> Outcome {
    let mut count = 0;
    for n in 1..=40 {
        for m in 1..=40 {
            construct_matches_classification(lib, &[n, m])?;
            count += 1;
        }
    }
    for p in 1..=10 {
        for q in 1..=10 {
            for r in 1..=10 {
                construct_matches_classification(lib, &[p, q, r])?;
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b74);
    let mut random = 0;
    while random < 200 {
        let rank = rng.gen_range(4..=6);
        let dims: Vec<usize> = (0..rank).map(|_| rng.gen_range(1..=8)).collect();
        if dims.iter().product::<usize>() > 20_000 {
            continue;
        }
        construct_matches_classification(lib, &dims)?;
        random += 1;
    }
    Ok(format!("{} boards of rank 2 and 3 plus {random} random boards of rank 4 to 6", count))
}

fn solver_matches_classification() -> Outcome {
    let mut shapes = Vec::new();
    for n in 1..=6 {
        for m in 1..=6 {
            shapes.push(vec![n, m]);
        }
    }
    for p in 1..=24 {
        for q in 1..=24 {
            for r in 1..=24 {
                if p * q * r <= 24 {
                    shapes.push(vec![p, q, r]);
                }
            }
        }
    }
    let mut found = 0;
    for dims in &shapes {
        let shape = board(dims);
        let tourable = classify(&shape, &knight()).unwrap().is_tourable();
        let outcome = solve(&shape, &knight(), &SearchConstraints::closed(), Budget::nodes(100_000_000)).unwrap();
        match outcome.result {
            SearchResult::Found(r) => {
                ensure!(tourable, "{shape}: solver found a tour on an untourable board");
                ensure!(is_closed_tour(&r), "{shape}: solver returned an invalid tour");
                found += 1;
            }
            SearchResult::Exhausted => ensure!(!tourable, "{shape}: classified tourable but search exhausted"),
            SearchResult::TimedOut => return Err(format!("{shape}: search timed out")),
        }
    }
    let exhausted = |d: &[usize]| {
        matches!(
            solve(&board(d), &knight(), &SearchConstraints::closed(), Budget::UNLIMITED).unwrap().result,
            SearchResult::Exhausted
        )
    };
    ensure!(
        exhausted(&[4, 3]) && exhausted(&[6, 3]) && exhausted(&[4, 2, 2]),
        "known tourless boards were not exhausted"
    );
    Ok(format!("{} boards, {found} with tours", shapes.len()))
}

fn normalized_edges(r: &Route) -> Vec<Edge> {
    let mut e: Vec<Edge> = r.edges(true).collect();
    e.sort();
    e
}

fn solver_tours_have_corner_sites() -> Outcome {
    let mut distinct = HashSet::new();
    let mut per_board = Vec::new();
    for (dims, quota) in [([5, 6], 100), ([6, 6], 20), ([3, 10], 100), ([8, 8], 15)] {
        let shape = board(&dims);
        let mut tours = Vec::new();
        for_each_solution(
            &shape,
            &knight(),
            &SearchConstraints::closed(),
            Budget::nodes(50_000_000),
            SolverOptions::default(),
            &NoClock,
            |r| {
                if distinct.insert(normalized_edges(r)) {
                    tours.push(r.clone());
                }
                tours.len() < quota
            },
        )
        .unwrap();
        for r in &tours {
            let t = Tour::from_route(r.clone()).map_err(|e| format!("{shape}: {e}"))?;
            let corners = corner_sites(&t).map_err(|e| format!("{shape}: {e}"))?;
            ensure!(corners.len() == 4, "{shape}: {} corner sites", corners.len());
            ensure!(find_sites(&t, 2).bisited, "{shape}: tour is not bi-sited");
        }
        per_board.push(format!("{} on {shape}", tours.len()));
    }
    ensure!(distinct.len() >= 50, "only {} distinct tours ({})", distinct.len(), per_board.join(", "));
    Ok(format!("{} distinct tours ({})", distinct.len(), per_board.join(", ")))
}

fn stacking_preserves_sites(lib: &BaseLibrary) -> Outcome {
    let mut bases = 0;
    for (key, route) in lib.iter() {
        if !matches!(key.tag, BaseTag::Seeded | BaseTag::Chain) {
            continue;
        }
        let t = Tour::from_route(route.clone()).map_err(|e| format!("{key}: {e}"))?;
        let Ok(bt) = BisitedTour::from_tour(t, 2) else { continue };
        bases += 1;
        let cells = bt.tour.shape().cell_count();
        for p in 2..=6 {
            let s = stack(&bt, p, bt.tour.shape().rank()).map_err(|e| format!("{key} p={p}: {e}"))?;
            ensure!(checked_tour(&s.tour), "{key} p={p}: stacked tour fails verification");
            ensure!(s.tour.shape().cell_count() == p * cells, "{key} p={p}: wrong cell count");
            ensure!(find_sites(&s.tour, 2).bisited, "{key} p={p}: stacked tour lost its sites");
        }
    }
    ensure!(bases > 0, "no bi-sited base in the library");
    Ok(format!("{bases} bi-sited bases stacked with 2..6 layers"))
}

fn extension_machinery(lib: &BaseLibrary) -> Outcome {
    let mut extenders = 0;
    for m in 3..=30 {
        let built = make_extender(lib, m);
        if m == 4 {
            ensure!(matches!(built, Err(ConstructError::Unsupported(_))), "4 x 4 extender was not rejected");
            continue;
        }
        let ext = built.map_err(|e| format!("extender 4x{m}: {e}"))?;
        let shape = ext.path.shape();
        ensure!(shape.dims() == [4, m], "extender 4x{m} has shape {shape}");
        ensure!(verify(ext.path.route(), false).is_valid(), "extender 4x{m} fails verification");
        ensure!(
            ext.path.start() == 3 * m + m - 1 && ext.path.end() == 3 * m + m - 2,
            "extender 4x{m} has wrong endpoints"
        );
        extenders += 1;
    }
    let mut grown = 0;
    for (n, m) in [(3, 10), (3, 12), (5, 6), (5, 8), (6, 6), (6, 7), (6, 8), (7, 8), (8, 8)] {
        let base = construct_2d(lib, n, m).map_err(|e| format!("{n}x{m}: {e}"))?;
        let mut row = base;
        for k in 0..=3 {
            let mut t = row.clone();
            for l in 0..=3 {
                let want = [n + 4 * k, m + 4 * l];
                ensure!(t.tour().shape().dims() == want, "grown {n}x{m} has shape {}", t.tour().shape());
                ensure!(
                    checked_tour(t.tour()) && is_seeded(t.tour()),
                    "{n}x{m} grown to {want:?} lost validity or seeds"
                );
                grown += 1;
                t = extend_seeded(lib, &t, 1).map_err(|e| format!("{want:?}: {e}"))?;
            }
            row = extend_seeded(lib, &row, 0).map_err(|e| format!("{n}x{m} rows: {e}"))?;
        }
    }
    let mut doubled = 0;
    for n in [5, 7, 9, 11] {
        for m in [5, 7, 9, 11] {
            let path = construct_open_for_doubling(lib, n, m).map_err(|e| format!("{n}x{m}: {e}"))?;
            let bt = double_open(&path).map_err(|e| format!("{n}x{m}x2: {e}"))?;
            ensure!(bt.tour.shape().dims() == [n, m, 2], "doubled {n}x{m} has shape {}", bt.tour.shape());
            ensure!(checked_tour(&bt.tour), "{n}x{m}x2 fails verification");
            ensure!(find_sites(&bt.tour, 2).bisited, "{n}x{m}x2 is not bi-sited");
            doubled += 1;
        }
    }
    Ok(format!("{extenders} extenders, {grown} grown seeded tours, {doubled} doubled prisms"))
}

fn connectivity_formula_matches_bfs() -> Outcome {
    let mut boards = 0;
    for b in 2..=5 {
        for a in 1..b {
            let moves = MoveSpec::leaper(a, b).unwrap();
            for n in 1..=2 * b + 4 {
                for m in 1..=(a + b + 4).min(n) {
                    let actual = connectivity(&board(&[n, m]), &moves).connected;
                    let predicted = knuth_connectivity_predicted(a, b, n, m);
                    ensure!(actual == predicted, "({a},{b}) on {n}x{m}: predicted {predicted}, found {actual}");
                    boards += 1;
                }
            }
        }
    }
    Ok(format!("{boards} boards over 10 leapers"))
}

/// First closed tour of `dims` for the `(a,b)` leaper with at least four
/// corner `(a,b)`-sites.
fn ab_base(a: usize, b: usize, dims: &[usize], budget: u64) -> Result<Tour, String> {
    let shape = board(dims);
    let moves = MoveSpec::leaper(a, b).unwrap();
    let mut base = None;
    let outcome = for_each_solution(
        &shape,
        &moves,
        &SearchConstraints::closed(),
        Budget::nodes(budget),
        SolverOptions::default(),
        &NoClock,
        |r| {
            let t = Tour::from_route(r.clone()).expect("solver output is a tour");
            if find_ab_sites(&t, a, b).len() >= 4 {
                base = Some(t);
                return false;
            }
            true
        },
    )
    .unwrap();
    base.ok_or_else(|| format!("({a},{b}) on {shape}: no base with four sites ({:?})", outcome.result))
}

fn lifting() -> Outcome {
    let mut notes = Vec::new();
    for (a, b, dims) in [(1, 2, [6, 6]), (2, 3, [10, 10])] {
        let base = ab_base(a, b, &dims, 5_000_000)?;
        let p = a + b + 1;
        let lifted = lift_ab(&base, a, b, p).map_err(|e| format!("({a},{b}) p={p}: {e}"))?;
        ensure!(checked_tour(&lifted), "({a},{b}) p={p}: lifted tour fails verification");
        let sites = find_ab_sites(&lifted, a, b).len();
        ensure!(sites >= 4, "({a},{b}) p={p}: lifted tour keeps only {sites} sites");
        ensure!(
            matches!(lift_ab(&base, a, b, a + b), Err(ConstructError::LayerBudget { .. })),
            "({a},{b}): p={} was not rejected",
            a + b
        );
        notes.push(format!("({a},{b}) {} -> {} with {sites} sites", base.shape(), lifted.shape()));
    }
    Ok(notes.join(", "))
}

fn kt(cache: &Path, args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_kt"))
        .args(args)
        .env("KT_CACHE_DIR", cache)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "kt {}: {}", args.join(" "), String::from_utf8_lossy(&out.stderr));
    Ok(out.stdout)
}

fn dir_contents(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    Ok(files)
}

fn golden_determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let shapes = ["5x6x2", "10x3", "4x4x3x2", "7x5x3x3x2", "12x11"];
    let mut runs = Vec::new();
    for run in ["a", "b"] {
        let cache = tmp.path().join(run);
        kt(&cache, &["bootstrap", "--deterministic"])?;
        let mut outputs = Vec::new();
        for s in shapes {
            outputs.push(kt(&cache, &["construct", s, "--deterministic"])?);
        }
        runs.push((dir_contents(&cache)?, outputs));
    }
    ensure!(runs[0].0 == runs[1].0, "cache directories differ between runs");
    ensure!(runs[0].1 == runs[1].1, "construct output differs between runs");
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(tmp.path().join("a/manifest.json")).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    let golden = manifest["golden"]["closed_tours_3x10"].as_u64().ok_or("manifest has no golden count")?;
    let counted = match count_tours(&board(&[3, 10]), &knight(), Budget::UNLIMITED) {
        CountOutcome::Counted(n) => n,
        CountOutcome::TimedOut => return Err("counting 3x10 tours timed out".into()),
    };
    ensure!(counted == golden, "counted {counted} tours of 3x10, manifest records {golden}");
    Ok(format!("{} cache files and {} constructions identical, 3x10 count {counted}", runs[0].0.len(), shapes.len()))
}

fn main() -> ExitCode {
    let lib = BaseLibrary::bootstrapped().expect("base library");
    let criteria: [(&str, Check); 8] = [
        ("classification matches construction", Box::new(|| classification_matches_construction(&lib))),
        ("exhaustive solver matches classification", Box::new(solver_matches_classification)),
        ("solver tours have four corner sites", Box::new(solver_tours_have_corner_sites)),
        ("stacking keeps tours bi-sited", Box::new(|| stacking_preserves_sites(&lib))),
        ("extenders, growth and doubling", Box::new(|| extension_machinery(&lib))),
        ("leaper connectivity formula", Box::new(connectivity_formula_matches_bfs)),
        ("(a,b) lifting", Box::new(lifting)),
        ("deterministic bootstrap and golden count", Box::new(golden_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
