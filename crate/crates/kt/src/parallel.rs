//! Wall-clock budgets and a root-split parallel search whose answer does not
//! depend on the number of workers.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use knight_tour_core::solver::{
    solve_with, Budget, Clock, ConstraintError, SearchConstraints, SearchOutcome, SearchResult, SolverOptions,
};
use knight_tour_core::{BoardShape, MoveSpec};

pub struct InstantClock(Instant);

impl InstantClock {
    pub fn start() -> Self {
        InstantClock(Instant::now())
    }
}

impl Clock for InstantClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

/// Runs each successor of the first branching point as its own search on
/// up to `jobs` threads. Branches are merged in search order: the first one
/// that is not exhausted decides, so the tour found equals the one a
/// single-threaded search returns when both finish within budget. Each
/// branch gets the full budget.
pub fn solve_parallel(
    shape: &BoardShape,
    moves: &MoveSpec,
    constraints: &SearchConstraints,
    budget: Budget,
    jobs: usize,
) -> Result<SearchOutcome, ConstraintError> {
    let clock = InstantClock::start();
    if jobs <= 1 {
        return solve_with(shape, moves, constraints, budget, SolverOptions::default(), &clock);
    }
    let branch = |i: usize| {
        let options = SolverOptions { root_branch: Some(i), ..SolverOptions::default() };
        solve_with(shape, moves, constraints, budget, options, &InstantClock::start())
    };
    let first = branch(0)?;
    let count = first.root_branches;
    if count <= 1 || matches!(first.result, SearchResult::Found(_)) {
        return Ok(SearchOutcome { elapsed: clock.elapsed(), ..first });
    }
    let mut outcomes: Vec<Option<SearchOutcome>> = vec![None; count];
    outcomes[0] = Some(first);
    let next = AtomicUsize::new(1);
    let finished: Vec<(usize, SearchOutcome)> = std::thread::scope(|s| {
        let workers: Vec<_> = (0..jobs.min(count - 1))
            .map(|_| {
                s.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= count {
                            return done;
                        }
                        done.push((i, branch(i).expect("constraints were accepted for branch 0")));
                    }
                })
            })
            .collect();
        workers.into_iter().flat_map(|w| w.join().expect("search worker panicked")).collect()
    });
    for (i, o) in finished {
        outcomes[i] = Some(o);
    }
    let outcomes: Vec<SearchOutcome> = outcomes.into_iter().map(|o| o.expect("every branch ran")).collect();
    let nodes = outcomes.iter().map(|o| o.nodes_expanded).sum();
    let decided = outcomes.iter().find(|o| !matches!(o.result, SearchResult::Exhausted));
    let result = decided.map_or(SearchResult::Exhausted, |o| o.result.clone());
    Ok(SearchOutcome { result, nodes_expanded: nodes, elapsed: clock.elapsed(), root_branches: count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use knight_tour_core::solver::solve;

    #[test]
    fn matches_the_sequential_search() {
        for dims in [vec![5, 6], vec![4, 3], vec![6, 6], vec![4, 2, 2]] {
            let shape = BoardShape::new(dims).unwrap();
            let c = SearchConstraints::closed();
            let seq = solve(&shape, &MoveSpec::knight(), &c, Budget::nodes(10_000_000)).unwrap();
            let par = solve_parallel(&shape, &MoveSpec::knight(), &c, Budget::nodes(10_000_000), 3).unwrap();
            assert_eq!(seq.result, par.result, "{shape}");
        }
    }
}
