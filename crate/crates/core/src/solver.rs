//! Constrained backtracking search for Hamiltonian cycles and paths of the
//! leaper graph.
//!
//! The search extends a single path one vertex at a time. Branches are cut
//! when an unvisited cell next to the path's tail would be left with fewer
//! than two ways in and out, when the unvisited cells stop being reachable
//! from the tail, or when a forced edge can no longer be used. Successors
//! are tried fewest-onward-moves first (Warnsdorff's rule).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use thiserror::Error;

use crate::analysis::{verify_route, Site};
use crate::graph::{color_imbalance, LeaperGraph};
use crate::model::{BoardShape, Edge, EdgeIndex, MoveSpec, Route};

const NONE: usize = usize::MAX;

/// A site of the given distance lying within `reach` of a board corner
/// along every axis. Corner bits follow axis order, most significant bit
/// for axis 0, set meaning the far end of that axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SiteRequirement {
    pub corner: usize,
    pub distance: usize,
    pub reach: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchConstraints {
    pub forced_edges: Vec<Edge>,
    pub forbidden_edges: Vec<Edge>,
    /// Start and end cell of an open path.
    pub endpoints: Option<(usize, usize)>,
    pub required_sites: Vec<SiteRequirement>,
    pub closed: bool,
}

impl SearchConstraints {
    pub fn closed() -> Self {
        SearchConstraints { closed: true, ..Default::default() }
    }

    pub fn path(start: usize, end: usize) -> Self {
        SearchConstraints { endpoints: Some((start, end)), ..Default::default() }
    }

    pub fn force(mut self, e: Edge) -> Self {
        self.forced_edges.push(e);
        self
    }

    pub fn forbid(mut self, e: Edge) -> Self {
        self.forbidden_edges.push(e);
        self
    }

    pub fn require_site(mut self, r: SiteRequirement) -> Self {
        self.required_sites.push(r);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    /// Only enforced when the caller supplies a [`Clock`].
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: Some(100_000_000), max_time: Some(Duration::from_secs(60)) }
    }
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None, max_time: None };

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n), max_time: None }
    }
}

/// Elapsed-time source for time budgets.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// A clock that never advances; time budgets are then ignored.
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    pub warnsdorff: bool,
    /// Reject disconnected graphs and unbalanced colourings before searching.
    pub prefilter: bool,
    pub connectivity_pruning: bool,
    /// Restrict the first branching point to its `i`-th successor.
    pub root_branch: Option<usize>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { warnsdorff: true, prefilter: true, connectivity_pruning: true, root_branch: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Found(Route),
    Exhausted,
    TimedOut,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub nodes_expanded: u64,
    pub elapsed: Duration,
    /// Successors at the first branching point, for splitting work.
    pub root_branches: usize,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Route> {
        match &self.result {
            SearchResult::Found(r) => Some(r),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<Route> {
        match self.result {
            SearchResult::Found(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error("cell index {0} is off the board")]
    CellOutOfBounds(usize),
    #[error("forced edge {0:?} is not a legal move")]
    IllegalForcedEdge(Edge),
    #[error("edge {0:?} is both forced and forbidden")]
    ForcedAndForbidden(Edge),
    #[error("endpoints were given for a closed tour")]
    EndpointsWithClosed,
    #[error("path endpoints coincide")]
    DegenerateEndpoints,
}

/// Whether `route` is a walk meeting every constraint. Independent of the
/// search: it re-verifies the route from scratch.
pub fn satisfies(route: &Route, c: &SearchConstraints) -> bool {
    if !verify_route(route.shape(), route.moves(), route.order(), c.closed).is_valid() {
        return false;
    }
    let order = route.order();
    if let Some((s, t)) = c.endpoints {
        if order.first() != Some(&s) || order.last() != Some(&t) {
            return false;
        }
    }
    let index = EdgeIndex::new(route, c.closed);
    c.forced_edges.iter().all(|&e| index.contains(e))
        && c.forbidden_edges.iter().all(|&e| !index.contains(e))
        && c.required_sites.iter().all(|r| has_site_near(route, c.closed, r))
}

fn has_site_near(route: &Route, closed: bool, req: &SiteRequirement) -> bool {
    let shape = route.shape();
    let rank = shape.rank();
    let mut c = vec![0; rank];
    let mut near = |x: usize| {
        shape.decode(x, &mut c);
        (0..rank).all(|j| {
            let far = req.corner >> (rank - 1 - j) & 1 == 1;
            let from = if far { shape.dims()[j] - 1 - c[j] } else { c[j] };
            from <= req.reach
        })
    };
    let edges: Vec<Edge> = route.edges(closed).filter(|e| near(e.a()) && near(e.b())).collect();
    edges.iter().enumerate().any(|(i, e)| {
        edges[i + 1..].iter().any(|f| Site::new(shape, [e.a(), e.b()], [f.a(), f.b()], req.distance).is_some())
    })
}

/// Looks for one walk satisfying `constraints`, without a time limit.
pub fn solve(
    shape: &BoardShape,
    moves: &MoveSpec,
    constraints: &SearchConstraints,
    budget: Budget,
) -> Result<SearchOutcome, ConstraintError> {
    solve_with(shape, moves, constraints, budget, SolverOptions::default(), &NoClock)
}

pub fn solve_with(
    shape: &BoardShape,
    moves: &MoveSpec,
    constraints: &SearchConstraints,
    budget: Budget,
    options: SolverOptions,
    clock: &dyn Clock,
) -> Result<SearchOutcome, ConstraintError> {
    let mut found = None;
    let mut outcome = for_each_solution(shape, moves, constraints, budget, options, clock, |r| {
        found = Some(r.clone());
        false
    })?;
    if let Some(r) = found {
        assert!(satisfies(&r, constraints), "search produced a walk violating its constraints");
        outcome.result = SearchResult::Found(r);
    }
    Ok(outcome)
}

/// Visits every solution in search order until `visit` returns `false`.
/// The outcome is `Found` (holding the last visited solution) when the
/// visitor stopped the search, otherwise `Exhausted` or `TimedOut`.
pub fn for_each_solution(
    shape: &BoardShape,
    moves: &MoveSpec,
    constraints: &SearchConstraints,
    budget: Budget,
    options: SolverOptions,
    clock: &dyn Clock,
    mut visit: impl FnMut(&Route) -> bool,
) -> Result<SearchOutcome, ConstraintError> {
    let graph = LeaperGraph::new(shape, moves);
    let problem = Problem::new(&graph, constraints)?;
    let mut outcome =
        SearchOutcome { result: SearchResult::Exhausted, nodes_expanded: 0, elapsed: Duration::ZERO, root_branches: 0 };
    if problem.hopeless(constraints) || (options.prefilter && !problem.plausible(shape, moves, constraints)) {
        return Ok(outcome);
    }
    let Some(starts) = problem.starts(constraints) else {
        return Ok(outcome);
    };
    let mut search = Search::new(&problem, shape, moves, constraints, budget, options, clock);
    for start in starts {
        let go_on = search.run(start, &mut |order| {
            let route = Route::new(shape.clone(), moves.clone(), order.to_vec());
            if !constraints.required_sites.is_empty() && !satisfies(&route, constraints) {
                return true;
            }
            visit(&route)
        });
        match go_on {
            Flow::Continue => {}
            Flow::Stopped => {
                outcome.result = SearchResult::Found(Route::new(shape.clone(), moves.clone(), search.path.clone()));
                break;
            }
            Flow::OutOfBudget => {
                outcome.result = SearchResult::TimedOut;
                break;
            }
        }
    }
    outcome.nodes_expanded = search.nodes;
    outcome.elapsed = clock.elapsed();
    outcome.root_branches = search.root_branches;
    Ok(outcome)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountOutcome {
    Counted(u64),
    TimedOut,
}

/// Number of undirected closed tours. Each cycle is counted once: from
/// cell 0, heading to the smaller of its two neighbours.
pub fn count_tours(shape: &BoardShape, moves: &MoveSpec, budget: Budget) -> CountOutcome {
    count_tours_with(shape, moves, budget, &NoClock)
}

pub fn count_tours_with(shape: &BoardShape, moves: &MoveSpec, budget: Budget, clock: &dyn Clock) -> CountOutcome {
    let graph = LeaperGraph::new(shape, moves);
    let constraints = SearchConstraints::closed();
    let problem = Problem::new(&graph, &constraints).expect("no constraints to reject");
    if problem.hopeless(&constraints) || !problem.plausible(shape, moves, &constraints) {
        return CountOutcome::Counted(0);
    }
    let mut search = Search::new(&problem, shape, moves, &constraints, budget, SolverOptions::default(), clock);
    let mut count = 0u64;
    let flow = search.run(Start { cell: 0, first: None, target: None }, &mut |order| {
        if order[1] < order[order.len() - 1] {
            count += 1;
        }
        true
    });
    match flow {
        Flow::OutOfBudget => CountOutcome::TimedOut,
        _ => CountOutcome::Counted(count),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScanVerdict {
    Found,
    Exhausted,
    TimedOut,
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRecord {
    pub shape: BoardShape,
    pub moves: MoveSpec,
    pub verdict: ScanVerdict,
    /// Step sum is odd, so the graph is bipartite.
    pub odd_step_sum: bool,
    /// Steps share no common factor.
    pub coprime: bool,
    pub nodes_expanded: u64,
}

/// Shapes scanned for a move: one axis per step, sides `n_1 >= n_2 >= ...`
/// from 1 to `max_dim`, in lexicographic order.
pub fn scan_shapes(moves: &MoveSpec, max_dim: usize) -> Vec<BoardShape> {
    let rank = moves.steps().len();
    let mut out = Vec::new();
    let mut dims = vec![1; rank];
    loop {
        out.push(BoardShape::new(dims.clone()).expect("positive dims"));
        // next non-increasing tuple
        let mut j = rank;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            let cap = if j == 0 { max_dim } else { dims[j - 1] };
            if dims[j] < cap {
                dims[j] += 1;
                for d in dims.iter_mut().skip(j + 1) {
                    *d = 1;
                }
                break;
            }
        }
    }
}

/// Closed-tour evidence for one board.
pub fn scan_one(shape: &BoardShape, moves: &MoveSpec, budget: Budget, clock: &dyn Clock) -> ScanRecord {
    let steps = moves.steps();
    let odd_step_sum = steps.iter().sum::<usize>() % 2 == 1;
    let coprime = steps.iter().fold(0, |g, &s| gcd(g, s)) == 1;
    let graph = LeaperGraph::new(shape, moves);
    let mut record = ScanRecord {
        shape: shape.clone(),
        moves: moves.clone(),
        verdict: ScanVerdict::Disconnected,
        odd_step_sum,
        coprime,
        nodes_expanded: 0,
    };
    if graph.components().1 != 1 || shape.cell_count() < 3 {
        return record;
    }
    let outcome = solve_with(shape, moves, &SearchConstraints::closed(), budget, SolverOptions::default(), clock)
        .expect("no constraints to reject");
    record.nodes_expanded = outcome.nodes_expanded;
    record.verdict = match outcome.result {
        SearchResult::Found(_) => ScanVerdict::Found,
        SearchResult::Exhausted => ScanVerdict::Exhausted,
        SearchResult::TimedOut => ScanVerdict::TimedOut,
    };
    record
}

pub fn scan(moves: &MoveSpec, max_dim: usize, budget: Budget) -> Vec<ScanRecord> {
    scan_shapes(moves, max_dim).iter().map(|s| scan_one(s, moves, budget, &NoClock)).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Graph with forbidden edges removed, plus the forced-edge table.
struct Problem {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    forced: Vec<[usize; 2]>,
    /// Some vertex has three forced edges, or forced edges close a short cycle.
    contradictory: bool,
}

#[derive(Clone, Copy, Debug)]
struct Start {
    cell: usize,
    first: Option<usize>,
    target: Option<usize>,
}

impl Problem {
    fn new(graph: &LeaperGraph, c: &SearchConstraints) -> Result<Self, ConstraintError> {
        let n = graph.len();
        let check = |x: usize| if x < n { Ok(()) } else { Err(ConstraintError::CellOutOfBounds(x)) };
        for e in c.forced_edges.iter().chain(&c.forbidden_edges) {
            check(e.a())?;
            check(e.b())?;
        }
        if let Some((s, t)) = c.endpoints {
            check(s)?;
            check(t)?;
            if c.closed {
                return Err(ConstraintError::EndpointsWithClosed);
            }
            if s == t {
                return Err(ConstraintError::DegenerateEndpoints);
            }
        }
        let mut forbidden = c.forbidden_edges.clone();
        forbidden.sort_unstable();
        forbidden.dedup();
        let mut forced_list = c.forced_edges.clone();
        forced_list.sort_unstable();
        forced_list.dedup();
        for &e in &forced_list {
            if !graph.has_edge(e.a(), e.b()) {
                return Err(ConstraintError::IllegalForcedEdge(e));
            }
            if forbidden.binary_search(&e).is_ok() {
                return Err(ConstraintError::ForcedAndForbidden(e));
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for x in 0..n {
            for &y in graph.neighbors(x) {
                if forbidden.binary_search(&Edge::new(x, y)).is_err() {
                    targets.push(y);
                }
            }
            offsets.push(targets.len());
        }
        let mut forced = vec![[NONE; 2]; n];
        let mut contradictory = false;
        for e in &forced_list {
            for (x, y) in [(e.a(), e.b()), (e.b(), e.a())] {
                match forced[x] {
                    [NONE, _] => forced[x][0] = y,
                    [_, NONE] => forced[x][1] = y,
                    _ => contradictory = true,
                }
            }
        }
        if let Some((s, t)) = c.endpoints {
            if forced[s][1] != NONE || forced[t][1] != NONE {
                contradictory = true;
            }
        }
        let mut p = Problem { offsets, targets, forced, contradictory };
        if !p.contradictory && p.forced_cycle_too_short(c.closed) {
            p.contradictory = true;
        }
        Ok(p)
    }

    fn neighbors(&self, x: usize) -> &[usize] {
        &self.targets[self.offsets[x]..self.offsets[x + 1]]
    }

    fn adjacent(&self, x: usize, y: usize) -> bool {
        self.neighbors(x).binary_search(&y).is_ok()
    }

    fn len(&self) -> usize {
        self.forced.len()
    }

    /// Forced edges must form simple paths (or, for a closed tour, possibly
    /// one cycle through every vertex).
    fn forced_cycle_too_short(&self, closed: bool) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] || self.forced[s][0] == NONE {
                continue;
            }
            // walk one direction; a cycle returns to s
            let (mut prev, mut cur, mut len) = (NONE, s, 1);
            seen[s] = true;
            loop {
                let next = self.forced[cur].iter().copied().find(|&y| y != NONE && y != prev);
                match next {
                    None => break,
                    Some(y) if y == s => return !(closed && len == n),
                    Some(y) => {
                        if seen[y] {
                            break;
                        }
                        seen[y] = true;
                        prev = cur;
                        cur = y;
                        len += 1;
                    }
                }
            }
        }
        false
    }

    fn hopeless(&self, c: &SearchConstraints) -> bool {
        self.contradictory || (c.closed && self.len() < 3)
    }

    /// Cheap necessary conditions: degrees, connectivity and colour balance.
    fn plausible(&self, shape: &BoardShape, moves: &MoveSpec, c: &SearchConstraints) -> bool {
        let n = self.len();
        if n == 1 {
            return true;
        }
        for x in 0..n {
            let end = c.endpoints.is_some_and(|(s, t)| x == s || x == t);
            let free_ends = !c.closed && c.endpoints.is_none();
            let need = if end || free_ends { 1 } else { 2 };
            if self.neighbors(x).len() < need {
                return false;
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != n {
            return false;
        }
        let Ok(imbalance) = color_imbalance(shape, moves) else {
            return true;
        };
        if c.closed {
            return imbalance == 0;
        }
        let Some((s, t)) = c.endpoints else {
            return imbalance <= 1;
        };
        let colour = |x: usize| shape.cell(x).iter().sum::<usize>() % 2;
        match imbalance {
            0 => colour(s) != colour(t),
            1 => {
                let evens = (0..n).filter(|&x| colour(x) == 0).count();
                let major = usize::from(evens < n - evens);
                colour(s) == major && colour(t) == major
            }
            _ => false,
        }
    }

    /// Where the search begins.
    fn starts(&self, c: &SearchConstraints) -> Option<Vec<Start>> {
        let n = self.len();
        if let Some((s, t)) = c.endpoints {
            let first = match self.forced[s][0] {
                NONE => None,
                f => Some(f),
            };
            return Some(vec![Start { cell: s, first, target: Some(t) }]);
        }
        if c.closed {
            if let Some(w) = (0..n).find(|&x| self.forced[x][1] != NONE) {
                let [f0, f1] = self.forced[w];
                return Some(vec![Start { cell: w, first: Some(f0), target: Some(f1) }]);
            }
            if let Some(w) = (0..n).find(|&x| self.forced[x][0] != NONE) {
                return Some(vec![Start { cell: w, first: Some(self.forced[w][0]), target: None }]);
            }
            let w = (0..n).min_by_key(|&x| (self.neighbors(x).len(), x))?;
            return Some(vec![Start { cell: w, first: None, target: None }]);
        }
        // open path with free ends: every cell may start it
        let mut order: Vec<usize> = (0..n).filter(|&x| self.forced[x][1] == NONE).collect();
        order.sort_by_key(|&x| (self.neighbors(x).len(), x));
        Some(
            order
                .into_iter()
                .map(|x| Start {
                    cell: x,
                    first: (self.forced[x][0] != NONE).then_some(self.forced[x][0]),
                    target: None,
                })
                .collect(),
        )
    }
}

enum Flow {
    Continue,
    Stopped,
    OutOfBudget,
}

struct Frame {
    begin: usize,
    end: usize,
    next: usize,
}

struct Search<'a> {
    p: &'a Problem,
    closed: bool,
    budget: Budget,
    options: SolverOptions,
    clock: &'a dyn Clock,
    visited: Vec<bool>,
    free_deg: Vec<usize>,
    path: Vec<usize>,
    start: usize,
    target: Option<usize>,
    nodes: u64,
    root_branches: usize,
    root_seen: bool,
    // scratch
    cands: Vec<usize>,
    frames: Vec<Frame>,
    mark: Vec<u32>,
    stamp: u32,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(
        p: &'a Problem,
        _shape: &BoardShape,
        _moves: &MoveSpec,
        c: &SearchConstraints,
        budget: Budget,
        options: SolverOptions,
        clock: &'a dyn Clock,
    ) -> Self {
        let n = p.len();
        Search {
            p,
            closed: c.closed,
            budget,
            options,
            clock,
            visited: vec![false; n],
            free_deg: (0..n).map(|x| p.neighbors(x).len()).collect(),
            path: Vec::with_capacity(n),
            start: 0,
            target: None,
            nodes: 0,
            root_branches: 0,
            root_seen: false,
            cands: Vec::new(),
            frames: Vec::new(),
            mark: vec![0; n],
            stamp: 0,
            queue: Vec::with_capacity(n),
        }
    }

    fn visit(&mut self, x: usize) {
        self.visited[x] = true;
        self.path.push(x);
        for &y in self.p.neighbors(x) {
            self.free_deg[y] -= 1;
        }
    }

    fn unvisit(&mut self) {
        let x = self.path.pop().expect("non-empty path");
        self.visited[x] = false;
        for &y in self.p.neighbors(x) {
            self.free_deg[y] += 1;
        }
    }

    /// Closing a cycle without a fixed last cell: any neighbour of the start
    /// may come last.
    fn anchored(&self) -> bool {
        self.closed && self.target.is_none()
    }

    /// An open path whose last cell is not fixed.
    fn free_ends(&self) -> bool {
        !self.closed && self.target.is_none()
    }

    fn bonus(&self, x: usize) -> usize {
        usize::from(self.anchored() && self.p.adjacent(x, self.start))
    }

    fn out_of_budget(&self) -> bool {
        if self.budget.max_nodes.is_some_and(|m| self.nodes >= m) {
            return true;
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(limit) = self.budget.max_time {
                return self.clock.elapsed() >= limit;
            }
        }
        false
    }

    fn run(&mut self, start: Start, on_solution: &mut dyn FnMut(&[usize]) -> bool) -> Flow {
        let n = self.p.len();
        self.start = start.cell;
        self.target = start.target;
        self.visit(start.cell);
        let flow = self.descend(start, n, on_solution);
        while !self.path.is_empty() && !matches!(flow, Flow::Stopped) {
            self.unvisit();
        }
        flow
    }

    fn descend(&mut self, start: Start, n: usize, on_solution: &mut dyn FnMut(&[usize]) -> bool) -> Flow {
        if n == 1 {
            return if self.closed || on_solution(&self.path) { Flow::Continue } else { Flow::Stopped };
        }
        let base = self.path.len();
        if let Some(f) = start.first {
            if !self.allowed(self.start, f) {
                return Flow::Continue;
            }
            self.visit(f);
            if self.path.len() == n {
                if self.complete() && !on_solution(&self.path) {
                    return Flow::Stopped;
                }
                self.unvisit();
                return Flow::Continue;
            }
        }
        self.frames.clear();
        self.cands.clear();
        if !self.push_frame() {
            while self.path.len() > base {
                self.unvisit();
            }
            return Flow::Continue;
        }
        while let Some(top) = self.frames.last_mut() {
            if top.next == top.end {
                let begin = top.begin;
                self.frames.pop();
                self.cands.truncate(begin);
                if self.frames.is_empty() {
                    break;
                }
                self.unvisit();
                continue;
            }
            let y = self.cands[top.next];
            top.next += 1;
            self.nodes += 1;
            if self.out_of_budget() {
                return Flow::OutOfBudget;
            }
            self.visit(y);
            if self.path.len() == n {
                if self.complete() && !on_solution(&self.path) {
                    return Flow::Stopped;
                }
                self.unvisit();
                continue;
            }
            if !self.push_frame() {
                self.unvisit();
            }
        }
        while self.path.len() > base {
            self.unvisit();
        }
        Flow::Continue
    }

    fn complete(&self) -> bool {
        let last = *self.path.last().expect("non-empty");
        if let Some(t) = self.target {
            if last != t {
                return false;
            }
        }
        !self.closed || self.p.adjacent(last, self.start)
    }

    /// May the path move from tail `u` to unvisited `y`?
    fn allowed(&self, u: usize, y: usize) -> bool {
        if self.visited[y] {
            return false;
        }
        let remaining = self.p.len() - self.path.len();
        if remaining > 1 && Some(y) == self.target {
            return false;
        }
        if remaining == 1 {
            if self.target.is_some_and(|t| t != y) {
                return false;
            }
            if self.anchored() && !self.p.adjacent(y, self.start) {
                return false;
            }
        }
        for f in self.p.forced[y] {
            if f == NONE || f == u {
                continue;
            }
            if self.visited[f] {
                // only the closing edge may lead back into the path
                if !(remaining == 1 && self.closed && f == self.start) {
                    return false;
                }
            } else if remaining == 1 {
                return false;
            }
        }
        if self.p.forced[y][0] != NONE && self.p.forced[y][1] != NONE && !self.p.forced[y].contains(&u) {
            let closing = remaining == 1 && self.closed && self.p.forced[y].contains(&self.start);
            if !closing {
                return false;
            }
        }
        true
    }

    /// Pushes the successors of the current tail; `false` when there are none
    /// or the position is already lost.
    fn push_frame(&mut self) -> bool {
        let u = *self.path.last().expect("non-empty");
        let pred = if self.path.len() >= 2 { self.path[self.path.len() - 2] } else { NONE };
        let remaining = self.p.len() - self.path.len();
        let begin = self.cands.len();

        if self.anchored() && self.free_deg[self.start] == 0 {
            return false;
        }
        if let Some(t) = self.target {
            if !self.visited[t] && self.free_deg[t] == 0 && !(remaining == 1 && self.p.adjacent(u, t)) {
                return false;
            }
        }

        // a forced edge out of the tail decides the next cell
        let mut must = NONE;
        for f in self.p.forced[u] {
            if f == NONE || f == pred {
                continue;
            }
            if self.visited[f] {
                return false;
            }
            must = f;
        }

        // neighbours that would be stranded unless visited next
        for &x in self.p.neighbors(u) {
            if self.visited[x] {
                continue;
            }
            let stranded = if Some(x) == self.target || self.free_ends() {
                self.free_deg[x] == 0
            } else {
                self.free_deg[x] + self.bonus(x) < 2
            };
            if stranded {
                if must != NONE && must != x {
                    return false;
                }
                must = x;
            }
        }

        if must != NONE {
            if !self.p.adjacent(u, must) || !self.allowed(u, must) {
                return false;
            }
            self.cands.push(must);
        } else {
            for &y in self.p.neighbors(u) {
                if self.allowed(u, y) {
                    self.cands.push(y);
                }
            }
            if self.options.warnsdorff {
                let free = &self.free_deg;
                self.cands[begin..].sort_by_key(|&y| (free[y], y));
            }
        }
        if self.cands.len() == begin {
            return false;
        }
        if self.options.connectivity_pruning && remaining > 2 && !self.reachable_from(u) {
            self.cands.truncate(begin);
            return false;
        }
        if !self.root_seen && self.cands.len() - begin > 1 {
            self.root_seen = true;
            self.root_branches = self.cands.len() - begin;
            if let Some(i) = self.options.root_branch {
                if i >= self.root_branches {
                    self.cands.truncate(begin);
                    return false;
                }
                let pick = self.cands[begin + i];
                self.cands.truncate(begin);
                self.cands.push(pick);
            }
        }
        let end = self.cands.len();
        self.frames.push(Frame { begin, end, next: begin });
        true
    }

    /// Every unvisited cell can still be reached from the tail through
    /// unvisited cells.
    fn reachable_from(&mut self, u: usize) -> bool {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        let mut reached = 0;
        self.queue.clear();
        self.queue.push(u);
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for &y in self.p.neighbors(x) {
                if !self.visited[y] && self.mark[y] != stamp {
                    self.mark[y] = stamp;
                    reached += 1;
                    self.queue.push(y);
                }
            }
        }
        reached == self.p.len() - self.path.len()
    }
}
