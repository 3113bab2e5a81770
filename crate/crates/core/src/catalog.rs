//! Base cases: the small tours and paths every construction starts from,
//! each described by the constraints it must satisfy and regenerated by the
//! solver.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::ConstructError;
use crate::model::{BoardShape, Edge, MoveSpec, Route};
use crate::solver::{satisfies, solve_with, Budget, Clock, SearchConstraints, SearchResult, SolverOptions};

/// What a base case is used for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseTag {
    /// Closed 2D tour containing both seed edges.
    Seeded,
    /// 4 x m open path from (3,m-1) to (3,m-2) containing both seed edges.
    Extender,
    /// 4 x 6 extender whose right half is the block appended to widen extenders.
    Growth,
    /// Odd n x m open path from (n-1,m-1) to (n-1,m-3) containing both seed edges.
    Open,
    /// Closed 3D block with a site in each end slab, for chaining along axis 0.
    Chain,
}

impl BaseTag {
    pub const ALL: [BaseTag; 5] = [BaseTag::Seeded, BaseTag::Extender, BaseTag::Growth, BaseTag::Open, BaseTag::Chain];

    pub fn as_str(&self) -> &'static str {
        match self {
            BaseTag::Seeded => "seeded",
            BaseTag::Extender => "extender",
            BaseTag::Growth => "growth",
            BaseTag::Open => "open",
            BaseTag::Chain => "chain",
        }
    }
}

impl FromStr for BaseTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BaseTag::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseKey {
    pub dims: Vec<usize>,
    pub tag: BaseTag,
}

impl BaseKey {
    pub fn new(dims: &[usize], tag: BaseTag) -> Self {
        BaseKey { dims: dims.to_vec(), tag }
    }
}

/// Renders as `5x6_seeded`.
impl fmt::Display for BaseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "_{}", self.tag.as_str())
    }
}

/// A base case to regenerate: board, move and the constraints it must meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseEntry {
    pub key: BaseKey,
    pub moves: MoveSpec,
    pub constraints: SearchConstraints,
}

impl BaseEntry {
    pub fn shape(&self) -> BoardShape {
        BoardShape::new(self.key.dims.clone()).expect("manifest dims are positive")
    }
}

/// Seed edges ((0,m-3),(1,m-1)) and ((n-3,0),(n-1,1)) of an n x m board.
pub fn seed_edges(shape: &BoardShape) -> [Edge; 2] {
    let (n, m) = (shape.dims()[0], shape.dims()[1]);
    let at = |i: usize, j: usize| i * m + j;
    [Edge::new(at(0, m - 3), at(1, m - 1)), Edge::new(at(n - 3, 0), at(n - 1, 1))]
}

/// Site patterns forced into the end slabs of a chain block `[l, a, b]`:
/// two edges of slab `x` forming a distance-2 site.
pub fn chain_site_edges(dims: &[usize], x: usize) -> [Edge; 2] {
    let (a, b) = (dims[1], dims[2]);
    let at = |i: usize, j: usize| (x * a + i) * b + j;
    if b >= 3 {
        [Edge::new(at(0, 0), at(1, 2)), Edge::new(at(0, 2), at(1, 0))]
    } else {
        [Edge::new(at(0, 0), at(2, 1)), Edge::new(at(2, 0), at(0, 1))]
    }
}

const SEEDED_BASES: [(usize, usize); 9] = [(3, 10), (3, 12), (5, 6), (5, 8), (6, 6), (6, 7), (6, 8), (7, 8), (8, 8)];
const OPEN_BASES: [(usize, usize); 4] = [(5, 5), (5, 7), (7, 5), (7, 7)];
const EXTENDER_BASES: [usize; 3] = [3, 5, 7];

/// Cross sections and block lengths of the chain families.
pub(crate) const CHAIN_FAMILIES: [((usize, usize), &[usize]); 5] =
    [((4, 4), &[2, 3]), ((4, 3), &[2, 3]), ((4, 2), &[3, 4, 5]), ((3, 2), &[4, 5, 6, 7]), ((3, 3), &[4, 6])];

pub(crate) fn seeded_bases() -> &'static [(usize, usize)] {
    &SEEDED_BASES
}

pub(crate) fn open_bases() -> &'static [(usize, usize)] {
    &OPEN_BASES
}

fn entry(dims: &[usize], tag: BaseTag, constraints: SearchConstraints) -> BaseEntry {
    BaseEntry { key: BaseKey::new(dims, tag), moves: MoveSpec::knight(), constraints }
}

/// Every base case the constructions rely on.
pub fn default_manifest() -> Vec<BaseEntry> {
    let mut out = Vec::new();
    for (n, m) in SEEDED_BASES {
        let shape = BoardShape::new(vec![n, m]).expect("positive");
        let [s1, s2] = seed_edges(&shape);
        out.push(entry(&[n, m], BaseTag::Seeded, SearchConstraints::closed().force(s1).force(s2)));
    }
    for m in EXTENDER_BASES {
        out.push(entry(&[4, m], BaseTag::Extender, extender_constraints(m)));
    }
    out.push(entry(&[4, 6], BaseTag::Growth, growth_constraints()));
    for (n, m) in OPEN_BASES {
        let shape = BoardShape::new(vec![n, m]).expect("positive");
        let [s1, s2] = seed_edges(&shape);
        let c = SearchConstraints::path((n - 1) * m + m - 1, (n - 1) * m + m - 3).force(s1).force(s2);
        out.push(entry(&[n, m], BaseTag::Open, c));
    }
    for ((a, b), lengths) in CHAIN_FAMILIES {
        for &l in lengths {
            let dims = [l, a, b];
            let mut c = SearchConstraints::closed();
            for x in [0, l - 1] {
                for e in chain_site_edges(&dims, x) {
                    c = c.force(e);
                }
            }
            out.push(entry(&dims, BaseTag::Chain, c));
        }
    }
    out
}

fn extender_constraints(m: usize) -> SearchConstraints {
    let shape = BoardShape::new(vec![4, m]).expect("positive");
    let [s1, s2] = seed_edges(&shape);
    SearchConstraints::path(3 * m + m - 1, 3 * m + m - 2).force(s1).force(s2)
}

/// A 4 x 6 extender that splits into a 4 x 3 extender on the left, two
/// joining edges, and a right block containing the new seed edge. No other
/// edge may cross between the halves.
fn growth_constraints() -> SearchConstraints {
    let m = 6;
    let at = |i: usize, j: usize| i * m + j;
    let joins = [Edge::new(at(3, 1), at(2, 3)), Edge::new(at(3, 2), at(1, 3))];
    let mut c = SearchConstraints::path(at(3, 5), at(3, 4))
        .force(joins[0])
        .force(joins[1])
        .force(Edge::new(at(0, 3), at(1, 5)));
    let shape = BoardShape::new(vec![4, m]).expect("positive");
    let graph = crate::graph::LeaperGraph::new(&shape, &MoveSpec::knight());
    for x in 0..shape.cell_count() {
        for &y in graph.neighbors(x) {
            let e = Edge::new(x, y);
            let crosses = (x % m < 3) != (y % m < 3);
            if x < y && crosses && !joins.contains(&e) {
                c = c.forbid(e);
            }
        }
    }
    c
}

/// Solved base cases keyed by board and purpose.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BaseLibrary {
    routes: BTreeMap<BaseKey, Route>,
}

impl BaseLibrary {
    pub fn new() -> Self {
        BaseLibrary::default()
    }

    /// Solves the default manifest in memory.
    pub fn bootstrapped() -> Result<Self, ConstructError> {
        let mut lib = BaseLibrary::new();
        let report = bootstrap(&mut lib, &default_manifest(), Budget::default(), &crate::solver::NoClock);
        match report.failed.first() {
            Some((key, _)) => Err(ConstructError::BootstrapIncomplete(key.to_string())),
            None => Ok(lib),
        }
    }

    pub fn get(&self, key: &BaseKey) -> Result<&Route, ConstructError> {
        self.routes.get(key).ok_or_else(|| ConstructError::BootstrapIncomplete(key.to_string()))
    }

    pub fn contains(&self, key: &BaseKey) -> bool {
        self.routes.contains_key(key)
    }

    /// Adds a route after checking it against its manifest entry.
    pub fn insert(&mut self, entry: &BaseEntry, route: Route) -> Result<(), ConstructError> {
        if route.shape().dims() != entry.key.dims.as_slice() || route.moves() != &entry.moves {
            return Err(ConstructError::Precondition(alloc::format!("route does not fit {}", entry.key)));
        }
        if !satisfies(&route, &entry.constraints) {
            return Err(ConstructError::Precondition(alloc::format!(
                "route violates the constraints of {}",
                entry.key
            )));
        }
        self.routes.insert(entry.key.clone(), route);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BaseKey, &Route)> {
        self.routes.iter()
    }

    pub fn len(&self) -> usize {
        self.routes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.routes.is_empty()
    }

    /// Names of manifest entries not yet in the library.
    pub fn missing<'a>(&self, manifest: &'a [BaseEntry]) -> Vec<&'a BaseKey> {
        manifest.iter().map(|e| &e.key).filter(|k| !self.contains(k)).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BootstrapReport {
    pub solved: Vec<BaseKey>,
    pub reused: Vec<BaseKey>,
    pub failed: Vec<(BaseKey, Failure)>,
}

impl BootstrapReport {
    pub fn is_complete(&self) -> bool {
        self.failed.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// The search proved no route meets the constraints.
    Exhausted,
    TimedOut,
    Malformed(String),
}

/// Solves every entry missing from `lib`. Entries already present are kept,
/// so running twice changes nothing.
pub fn bootstrap(lib: &mut BaseLibrary, manifest: &[BaseEntry], budget: Budget, clock: &dyn Clock) -> BootstrapReport {
    let mut report = BootstrapReport::default();
    for entry in manifest {
        if lib.contains(&entry.key) {
            report.reused.push(entry.key.clone());
            continue;
        }
        let outcome =
            solve_with(&entry.shape(), &entry.moves, &entry.constraints, budget, SolverOptions::default(), clock);
        match outcome {
            Err(e) => report.failed.push((entry.key.clone(), Failure::Malformed(e.to_string()))),
            Ok(o) => match o.result {
                SearchResult::Found(route) => {
                    lib.insert(entry, route).expect("solver output meets its constraints");
                    report.solved.push(entry.key.clone());
                }
                SearchResult::Exhausted => report.failed.push((entry.key.clone(), Failure::Exhausted)),
                SearchResult::TimedOut => report.failed.push((entry.key.clone(), Failure::TimedOut)),
            },
        }
    }
    report
}
