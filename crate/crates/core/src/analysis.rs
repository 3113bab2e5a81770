//! Verification of tours and paths, and the site inventories used for
//! splicing stacked copies together.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::model::{BoardShape, Edge, EdgeIndex, MoveSpec, Route, Tour, Walk};

/// First violated constraint found by [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invalid {
    DimensionMismatch {
        index: usize,
    },
    CellOutOfBounds {
        index: usize,
    },
    DuplicateCell {
        index: usize,
    },
    MissingCells {
        expected: usize,
        found: usize,
    },
    /// The step from position `index` to `index + 1` is not a leap.
    IllegalStep {
        index: usize,
    },
    /// Every step is legal but last and first cells are not a leap apart.
    NotClosed,
}

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invalid::DimensionMismatch { index } => write!(f, "cell {index} has the wrong number of coordinates"),
            Invalid::CellOutOfBounds { index } => write!(f, "cell {index} is off the board"),
            Invalid::DuplicateCell { index } => write!(f, "cell {index} was already visited"),
            Invalid::MissingCells { expected, found } => write!(f, "visits {found} of {expected} cells"),
            Invalid::IllegalStep { index } => write!(f, "illegal step after position {index}"),
            Invalid::NotClosed => f.write_str("open path presented as closed"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Invalid),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks that `order` visits every cell exactly once using legal leaps,
/// and, when `closed`, that it returns to its start.
pub fn verify_route(shape: &BoardShape, moves: &MoveSpec, order: &[usize], closed: bool) -> Verdict {
    let n = shape.cell_count();
    let mut seen = vec![false; n];
    let mut prev = vec![0; shape.rank()];
    let mut cur = vec![0; shape.rank()];
    for (i, &c) in order.iter().enumerate() {
        if c >= n {
            return Verdict::Invalid(Invalid::CellOutOfBounds { index: i });
        }
        if seen[c] {
            return Verdict::Invalid(Invalid::DuplicateCell { index: i });
        }
        seen[c] = true;
        shape.decode(c, &mut cur);
        if i > 0 && !moves.is_leap(&prev, &cur) {
            return Verdict::Invalid(Invalid::IllegalStep { index: i - 1 });
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    if order.len() != n {
        return Verdict::Invalid(Invalid::MissingCells { expected: n, found: order.len() });
    }
    if closed {
        if n < 3 {
            return Verdict::Invalid(Invalid::NotClosed);
        }
        shape.decode(order[0], &mut cur);
        shape.decode(order[n - 1], &mut prev);
        if !moves.is_leap(&prev, &cur) {
            return Verdict::Invalid(Invalid::NotClosed);
        }
    }
    Verdict::Valid
}

pub fn verify(route: &Route, closed: bool) -> Verdict {
    verify_route(route.shape(), route.moves(), route.order(), closed)
}

/// Two vertex-disjoint edges `e`, `f` whose paired endpoints `e[0]~f[0]`
/// and `e[1]~f[1]` each differ by `distance` in exactly one coordinate.
///
/// Sites are kept in a canonical orientation (`e[0] < e[1]`, and `e` is the
/// smaller edge), so equal sites compare equal and sort deterministically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub e: [usize; 2],
    pub f: [usize; 2],
    pub distance: usize,
}

/// Axis along which `x` and `y` differ by exactly `d`, all else equal.
pub(crate) fn single_axis_offset(
    shape: &BoardShape,
    x: usize,
    y: usize,
    d: usize,
    sx: &mut [usize],
    sy: &mut [usize],
) -> Option<usize> {
    shape.decode(x, sx);
    shape.decode(y, sy);
    let mut axis = None;
    for j in 0..sx.len() {
        let diff = sx[j].abs_diff(sy[j]);
        if diff == 0 {
            continue;
        }
        if diff != d || axis.is_some() {
            return None;
        }
        axis = Some(j);
    }
    axis
}

impl Site {
    /// The site with pairing `e[i]~f[i]`, if that pairing works.
    fn try_pairing(shape: &BoardShape, e: [usize; 2], f: [usize; 2], d: usize) -> Option<Site> {
        let mut sx = vec![0; shape.rank()];
        let mut sy = vec![0; shape.rank()];
        single_axis_offset(shape, e[0], f[0], d, &mut sx, &mut sy)?;
        single_axis_offset(shape, e[1], f[1], d, &mut sx, &mut sy)?;
        Some(Site { e, f, distance: d }.canonical())
    }

    /// The site formed by edges `e` and `f` at distance `d`, if any.
    pub fn new(shape: &BoardShape, e: [usize; 2], f: [usize; 2], d: usize) -> Option<Site> {
        if d == 0 || e[0] == e[1] || f[0] == f[1] || f.contains(&e[0]) || f.contains(&e[1]) {
            return None;
        }
        Site::try_pairing(shape, e, f, d).or_else(|| Site::try_pairing(shape, e, [f[1], f[0]], d))
    }

    fn canonical(self) -> Site {
        let orient = |s: Site| {
            if s.e[0] > s.e[1] {
                Site { e: [s.e[1], s.e[0]], f: [s.f[1], s.f[0]], distance: s.distance }
            } else {
                s
            }
        };
        let s = orient(self);
        if Edge::new(s.f[0], s.f[1]) < Edge::new(s.e[0], s.e[1]) {
            orient(Site { e: s.f, f: s.e, distance: s.distance })
        } else {
            s
        }
    }

    pub fn edge_e(&self) -> Edge {
        Edge::new(self.e[0], self.e[1])
    }

    pub fn edge_f(&self) -> Edge {
        Edge::new(self.f[0], self.f[1])
    }

    pub fn shares_edge(&self, other: &Site) -> bool {
        let mine = [self.edge_e(), self.edge_f()];
        mine.contains(&other.edge_e()) || mine.contains(&other.edge_f())
    }

    /// The same site with both edge roles swapped.
    pub fn swapped(&self) -> Site {
        Site { e: self.f, f: self.e, distance: self.distance }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SiteInventory {
    pub sites: Vec<Site>,
    pub bisited: bool,
    pub disjoint_pair: Option<(usize, usize)>,
}

impl SiteInventory {
    pub fn from_sites(mut sites: Vec<Site>) -> Self {
        sites.sort_unstable();
        sites.dedup();
        let disjoint_pair = first_disjoint_pair(&sites);
        SiteInventory { bisited: disjoint_pair.is_some(), sites, disjoint_pair }
    }

    /// The lexicographically first edge-disjoint pair of sites.
    pub fn pair(&self) -> Option<(Site, Site)> {
        self.disjoint_pair.map(|(i, j)| (self.sites[i], self.sites[j]))
    }
}

fn first_disjoint_pair(sites: &[Site]) -> Option<(usize, usize)> {
    for i in 0..sites.len() {
        for j in i + 1..sites.len() {
            if !sites[i].shares_edge(&sites[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Every site at distance `d` among the edges of `walk`.
///
/// For each walk edge only cells `d` away from one endpoint can start a
/// partner edge, which keeps the search linear in the number of cells.
pub fn find_sites<W: Walk>(walk: &W, d: usize) -> SiteInventory {
    let index = walk.edge_index();
    let sites = sites_near(walk.shape(), walk.order(), &index, d, walk.edges().into_iter(), |_| true);
    SiteInventory::from_sites(sites)
}

/// Reference enumeration over all pairs of walk edges.
pub fn find_sites_brute_force<W: Walk>(walk: &W, d: usize) -> SiteInventory {
    let edges = walk.edges();
    let mut sites = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if let Some(s) = Site::new(walk.shape(), [e.a(), e.b()], [f.a(), f.b()], d) {
                sites.push(s);
            }
        }
    }
    SiteInventory::from_sites(sites)
}

fn sites_near(
    shape: &BoardShape,
    order: &[usize],
    index: &EdgeIndex,
    d: usize,
    edges: impl Iterator<Item = Edge>,
    inside: impl Fn(usize) -> bool,
) -> Vec<Site> {
    let rank = shape.rank();
    let mut delta = vec![0isize; rank];
    let mut scratch = vec![0; rank];
    let mut sites = Vec::new();
    for e in edges {
        for (x, y) in [(e.a(), e.b()), (e.b(), e.a())] {
            for axis in 0..rank {
                for sign in [1isize, -1] {
                    delta.iter_mut().for_each(|v| *v = 0);
                    delta[axis] = sign * d as isize;
                    let Some(x2) = shape.offset(x, &delta, &mut scratch) else {
                        continue;
                    };
                    if !inside(x2) {
                        continue;
                    }
                    for y2 in index.neighbors(order, x2).into_iter().flatten() {
                        if !inside(y2) {
                            continue;
                        }
                        if let Some(s) = Site::new(shape, [x, y], [x2, y2], d) {
                            sites.push(s);
                        }
                    }
                }
            }
        }
    }
    sites.sort_unstable();
    sites.dedup();
    sites
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CornerError {
    #[error("corner sites are only defined on two-dimensional boards")]
    NotPlanar,
    #[error("corner sites need a (1,b) leaper")]
    UnsupportedMove,
    #[error("corner {0} has no site")]
    Missing(usize),
}

/// Maps corner-relative coordinates to board coordinates. Corner `k` has
/// bit 1 set when it sits at the far end of axis 0 and bit 0 for axis 1.
fn corner_cell(shape: &BoardShape, corner: usize, i: usize, j: usize) -> Option<usize> {
    let (n, m) = (shape.dims()[0], shape.dims()[1]);
    if i >= n || j >= m {
        return None;
    }
    let x = if corner & 2 != 0 { n - 1 - i } else { i };
    let y = if corner & 1 != 0 { m - 1 - j } else { j };
    Some(x * m + y)
}

/// All sites the corner argument can produce in `corner`, in preference order.
///
/// The corner cell has exactly two neighbours, so both its edges are in
/// the tour. Of the four edges at the cell `b` along either board edge,
/// three form a site with one of those forced edges.
pub(crate) fn corner_candidates(tour: &Tour, corner: usize) -> Result<Vec<Site>, CornerError> {
    let shape = tour.shape();
    if shape.rank() != 2 {
        return Err(CornerError::NotPlanar);
    }
    let steps = tour.moves().steps();
    if steps.len() != 2 || steps[0] != 1 || steps[1] < 2 {
        return Err(CornerError::UnsupportedMove);
    }
    let b = steps[1];
    let index = tour.edge_index();
    let c = |i, j| corner_cell(shape, corner, i, j);
    let mut out = Vec::new();
    // (apex, partner, forced edge) triples; the second half is the mirror image.
    let patterns = [
        ((0, b), (1, 0), (1, b)),
        ((0, b), (1, 2 * b), (1, b)),
        ((0, b), (b, b + 1), (b, 1)),
        ((b, 0), (0, 1), (b, 1)),
        ((b, 0), (2 * b, 1), (b, 1)),
        ((b, 0), (b + 1, b), (1, b)),
    ];
    let Some(origin) = c(0, 0) else {
        return Err(CornerError::Missing(corner));
    };
    for (apex, partner, forced) in patterns {
        let (Some(p), Some(q), Some(r)) = (c(apex.0, apex.1), c(partner.0, partner.1), c(forced.0, forced.1)) else {
            continue;
        };
        if !index.adjacent(p, q) || !index.adjacent(origin, r) {
            continue;
        }
        if let Some(s) = Site::new(shape, [p, q], [origin, r], b) {
            out.push(s);
        }
    }
    if out.is_empty() {
        return Err(CornerError::Missing(corner));
    }
    Ok(out)
}

/// One site per board corner, located by the degree-two corner argument.
pub fn corner_sites(tour: &Tour) -> Result<Vec<Site>, CornerError> {
    (0..4).map(|k| corner_candidates(tour, k).map(|c| c[0])).collect()
}

/// An `a`-site and a `b`-site found in the same corner neighbourhood.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbSite {
    pub corner: usize,
    pub a_site: Site,
    pub b_site: Site,
}

impl AbSite {
    fn shares_edge(&self, s: &Site) -> bool {
        self.a_site.shares_edge(s) || self.b_site.shares_edge(s)
    }
}

/// Corner-local `(a,b)`-sites: for each corner of the board (in binary
/// order over the axes, bit set meaning the far end), the first `a`-site
/// and first `b`-site lying within `2b` of that corner along every axis
/// and sharing no edge with the sites already chosen for earlier corners.
pub fn find_ab_sites<W: Walk>(walk: &W, a: usize, b: usize) -> Vec<AbSite> {
    let shape = walk.shape();
    let rank = shape.rank();
    let reach = 2 * a.max(b);
    let index = walk.edge_index();
    let order = walk.order();
    let mut chosen: Vec<AbSite> = Vec::new();
    if rank >= usize::BITS as usize {
        return chosen;
    }
    for corner in 0..(1usize << rank) {
        let near = |x: usize| {
            let mut c = vec![0; rank];
            shape.decode(x, &mut c);
            (0..rank).all(|j| {
                let n = shape.dims()[j];
                let from = if corner >> (rank - 1 - j) & 1 == 1 { n - 1 - c[j] } else { c[j] };
                from <= reach
            })
        };
        // tour edges with both ends in the neighbourhood
        let mut edges = Vec::new();
        for x in 0..shape.cell_count() {
            if !near(x) {
                continue;
            }
            for y in index.neighbors(order, x).into_iter().flatten() {
                if x < y && near(y) {
                    edges.push(Edge::new(x, y));
                }
            }
        }
        let free = |s: &Site| chosen.iter().all(|c| !c.shares_edge(s));
        let a_site = sites_near(shape, order, &index, a, edges.iter().copied(), near).into_iter().find(free);
        let b_site = sites_near(shape, order, &index, b, edges.iter().copied(), near).into_iter().find(free);
        if let (Some(a_site), Some(b_site)) = (a_site, b_site) {
            chosen.push(AbSite { corner, a_site, b_site });
        }
    }
    chosen
}
