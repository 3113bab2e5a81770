//! Bi-sited tours of p x q x r boards: stacked 2D tours, doubled open
//! paths, and chains of small prisms joined slab to slab.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::analysis::{find_sites, Site};
use crate::assembly::{layered, splice_site, Assembly};
use crate::catalog::{chain_site_edges, BaseKey, BaseLibrary, BaseTag, CHAIN_FAMILIES};
use crate::construct2d::{construct_2d, construct_open_for_doubling};
use crate::constructnd::stack;
use crate::error::ConstructError;
use crate::graph::{classify, essential_dims};
use crate::model::{axis_perm, shift, BoardShape, CellMap, Edge, MoveSpec, OpenPath, Tour, Walk};

/// A tour with two edge-disjoint sites of the same distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisitedTour {
    pub tour: Tour,
    pub sites: (Site, Site),
}

impl BisitedTour {
    /// Checks that both sites lie on the tour and share no edge.
    pub fn new(tour: Tour, sites: (Site, Site)) -> Result<Self, ConstructError> {
        let index = tour.edge_index();
        let on_tour = |s: &Site| index.contains(s.edge_e()) && index.contains(s.edge_f());
        if !on_tour(&sites.0)
            || !on_tour(&sites.1)
            || sites.0.shares_edge(&sites.1)
            || sites.0.distance != sites.1.distance
        {
            return Err(ConstructError::NotBisited);
        }
        Ok(BisitedTour { tour, sites })
    }

    /// Uses the first edge-disjoint pair of distance-`d` sites.
    pub fn from_tour(tour: Tour, d: usize) -> Result<Self, ConstructError> {
        let sites = find_sites(&tour, d).pair().ok_or(ConstructError::NotBisited)?;
        Ok(BisitedTour { tour, sites })
    }

    /// Reorders axes so the board has exactly `target` as its dims.
    pub fn permute_to(&self, target: &[usize]) -> Result<Self, ConstructError> {
        let perm = axis_perm(self.tour.shape().dims(), target)?;
        self.rearranged(&perm)
    }

    /// Axis `j` of the result is axis `perm[j]` of this tour.
    pub fn rearranged(&self, perm: &[usize]) -> Result<Self, ConstructError> {
        let map = CellMap::rigid(self.tour.shape(), perm, &vec![false; perm.len()])?;
        let tour = Tour::from_route_unchecked(crate::model::Route::new(
            map.target().clone(),
            self.tour.moves().clone(),
            map.map_all(self.tour.order()).expect("rigid maps stay on the board"),
        ));
        let move_site = |s: &Site| {
            let m = map.map_all(&[s.e[0], s.e[1], s.f[0], s.f[1]]).expect("on board");
            Site::new(map.target(), [m[0], m[1]], [m[2], m[3]], s.distance).expect("rigid maps keep sites")
        };
        let sites = (move_site(&self.sites.0), move_site(&self.sites.1));
        Ok(BisitedTour { tour, sites })
    }
}

/// Two layers of an open path joined at its endpoints into an n x m x 2 tour.
/// The certificate is the path's first distance-2 site, taken in each layer.
pub fn double_open(path: &OpenPath) -> Result<BisitedTour, ConstructError> {
    let shape = path.shape();
    if shape.rank() != 2 {
        return Err(ConstructError::Precondition(format!("{shape} is not a 2D board")));
    }
    let (n, m) = (shape.dims()[0], shape.dims()[1]);
    if m < 3
        || path.start() != shape.index(&[n - 1, m - 1]).expect("on board")
        || path.end() != shape.index(&[n - 1, m - 3]).expect("on board")
    {
        return Err(ConstructError::EndpointMismatch);
    }
    let big = BoardShape::new(vec![n, m, 2])?;
    let mut asm = Assembly::new(big, path.moves().clone());
    for z in 0..2 {
        let order: Vec<usize> = path.order().iter().map(|&x| layered(x, z, 2)).collect();
        asm.place_order(&order, false)?;
    }
    let (s, t) = (path.start(), path.end());
    asm.add_edge(layered(s, 0, 2), layered(t, 1, 2))?;
    asm.add_edge(layered(s, 1, 2), layered(t, 0, 2))?;
    let tour = asm.into_tour()?;
    let site = *find_sites(path, 2).sites.first().ok_or(ConstructError::NotBisited)?;
    let lift = |z: usize| {
        let l = |x: usize| layered(x, z, 2);
        Site::new(tour.shape(), [l(site.e[0]), l(site.e[1])], [l(site.f[0]), l(site.f[1])], 2)
            .expect("a layer keeps sites")
    };
    let sites = (lift(0), lift(1));
    BisitedTour::new(tour, sites)
}

/// Joins two tours that agree on every axis but `axis`, placing `t2` after
/// `t1`. `deletions` and `additions` are flat indices on the combined board.
pub fn splice_lateral(
    t1: &Tour,
    t2: &Tour,
    axis: usize,
    deletions: [Edge; 2],
    additions: [Edge; 2],
) -> Result<Tour, ConstructError> {
    let (d1, d2) = (t1.shape().dims(), t2.shape().dims());
    let same_elsewhere = d1.len() == d2.len() && (0..d1.len()).all(|j| j == axis || d1[j] == d2[j]);
    if axis >= d1.len() || !same_elsewhere || t1.moves() != t2.moves() {
        return Err(ConstructError::Precondition(format!(
            "cannot join {} and {} along axis {axis}",
            t1.shape(),
            t2.shape()
        )));
    }
    let mut dims = d1.to_vec();
    dims[axis] += d2[axis];
    let big = BoardShape::new(dims)?;
    let mut offset = vec![0isize; d1.len()];
    let mut asm = Assembly::new(big.clone(), t1.moves().clone());
    asm.place(&shift(t1, &offset, &big)?)?;
    offset[axis] = d1[axis] as isize;
    asm.place(&shift(t2, &offset, &big)?)?;
    for e in deletions {
        asm.remove_edge(e.a(), e.b())?;
    }
    for e in additions {
        asm.add_edge(e.a(), e.b())?;
    }
    asm.into_tour()
}

/// A closed block whose bottom slab (x = 0) and top slab (x = last) each
/// carry a distance-2 site, so blocks can be chained along axis 0.
#[derive(Clone, Debug)]
struct Block {
    tour: Tour,
    bottom: [Edge; 2],
    top: [Edge; 2],
}

impl Block {
    fn from_library(lib: &BaseLibrary, dims: [usize; 3]) -> Result<Block, ConstructError> {
        let tour = Tour::from_route(lib.get(&BaseKey::new(&dims, BaseTag::Chain))?.clone())?;
        Ok(Block { tour, bottom: chain_site_edges(&dims, 0), top: chain_site_edges(&dims, dims[0] - 1) })
    }

    /// A doubled open path turned so the two layers lie along axis 0.
    fn doubled(lib: &BaseLibrary, n: usize, m: usize) -> Result<Block, ConstructError> {
        let bt = double_open(&construct_open_for_doubling(lib, n, m)?)?.rearranged(&[2, 0, 1])?;
        let (lo, hi) = (bt.sites.0, bt.sites.1);
        Ok(Block { tour: bt.tour, bottom: [lo.edge_e(), lo.edge_f()], top: [hi.edge_e(), hi.edge_f()] })
    }
}

/// Joins blocks end to end along axis 0. The certificate is the first
/// block's bottom site and the last block's top site.
fn chain(blocks: &[Block]) -> Result<BisitedTour, ConstructError> {
    let first = blocks.first().ok_or_else(|| ConstructError::Precondition("empty chain".into()))?;
    let slab: usize = first.tour.shape().dims()[1..].iter().product();
    let length: usize = blocks.iter().map(|b| b.tour.shape().dims()[0]).sum();
    let mut dims = first.tour.shape().dims().to_vec();
    dims[0] = length;
    let big = BoardShape::new(dims)?;
    let mut asm = Assembly::new(big.clone(), first.tour.moves().clone());
    let mut starts = Vec::with_capacity(blocks.len());
    let mut x0 = 0;
    for b in blocks {
        if b.tour.shape().dims()[1..] != big.dims()[1..] {
            return Err(ConstructError::Precondition(format!("block {} does not fit {big}", b.tour.shape())));
        }
        asm.place(&shift(&b.tour, &[x0 as isize, 0, 0], &big)?)?;
        starts.push(x0 * slab);
        x0 += b.tour.shape().dims()[0];
    }
    let moved = |e: Edge, at: usize| [e.a() + at, e.b() + at];
    for (k, pair) in blocks.windows(2).enumerate() {
        let (lower, upper) = (&pair[0], &pair[1]);
        let joined = join_slabs(
            &mut asm,
            lower.top.map(|e| moved(e, starts[k])),
            upper.bottom.map(|e| moved(e, starts[k + 1])),
        )?;
        if !joined {
            return Err(ConstructError::IllegalSplice(format!("no join between blocks {k} and {}", k + 1)));
        }
    }
    let last = blocks.len() - 1;
    let site = |[e, f]: [[usize; 2]; 2]| Site::new(&big, e, f, 2).ok_or(ConstructError::NotBisited);
    let lo = site(first.bottom.map(|e| moved(e, 0)))?;
    let hi = site(blocks[last].top.map(|e| moved(e, starts[last])))?;
    BisitedTour::new(asm.into_tour()?, (lo, hi))
}

/// Deletes one edge of `lower` and one of `upper` and reconnects across,
/// trying each choice and pairing in turn.
fn join_slabs(asm: &mut Assembly, lower: [[usize; 2]; 2], upper: [[usize; 2]; 2]) -> Result<bool, ConstructError> {
    for e in lower {
        for f in upper {
            for g in [f, [f[1], f[0]]] {
                if asm.is_leap(e[0], g[0]) && asm.is_leap(e[1], g[1]) {
                    splice_site(asm, e, g)?;
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Block lengths summing to `p` for the cross section `(q, r)`: a start
/// block congruent to `p` followed by copies of the shortest block.
fn chain_lengths(q: usize, r: usize, p: usize) -> Option<Vec<usize>> {
    let (_, lengths) = CHAIN_FAMILIES.iter().find(|(cs, _)| *cs == (q, r))?;
    let step = lengths[0];
    let start = lengths.iter().copied().find(|&l| l <= p && l % step == p % step)?;
    let mut out = vec![start];
    out.extend(core::iter::repeat_n(step, (p - start) / step));
    Some(out)
}

/// A bi-sited tour of a 2D board, with its first disjoint pair of sites.
fn bisited_2d(lib: &BaseLibrary, n: usize, m: usize) -> Result<BisitedTour, ConstructError> {
    BisitedTour::from_tour(construct_2d(lib, n, m)?.into_tour(), 2)
}

/// A bi-sited knight's tour of the p x q x r board, in the caller's axis order.
pub fn construct_3d(lib: &BaseLibrary, p: usize, q: usize, r: usize) -> Result<BisitedTour, ConstructError> {
    let target = [p, q, r];
    let shape = BoardShape::new(target.to_vec())?;
    let class = classify(&shape, &MoveSpec::knight()).expect("knight moves are supported");
    if !class.is_tourable() {
        return Err(ConstructError::NotTourable(class.reason));
    }
    let ess = essential_dims(&target);
    let built = match ess.len() {
        2 => stack(&bisited_2d(lib, ess[0], ess[1])?, 1, 2)?,
        _ => sorted_3d(lib, ess[0], ess[1], ess[2])?,
    };
    built.permute_to(&target)
}

/// `p >= q >= r >= 2`, tourable.
fn sorted_3d(lib: &BaseLibrary, p: usize, q: usize, r: usize) -> Result<BisitedTour, ConstructError> {
    let tourable_2d = |a: usize, b: usize| {
        let s = BoardShape::new(vec![a, b]).expect("positive");
        classify(&s, &MoveSpec::knight()).is_ok_and(|c| c.is_tourable())
    };
    for (a, b, c) in [(p, q, r), (p, r, q), (q, r, p)] {
        if tourable_2d(a, b) {
            return stack(&bisited_2d(lib, a, b)?, c, 2);
        }
    }
    if p % 2 == 1 && q % 2 == 1 && q >= 5 && r.is_multiple_of(2) {
        let block = Block::doubled(lib, p, q)?;
        return chain(&vec![block; r / 2]);
    }
    let lengths = chain_lengths(q, r, p).ok_or_else(|| ConstructError::Unsupported(format!("{p}x{q}x{r}")))?;
    let blocks = lengths.into_iter().map(|l| Block::from_library(lib, [l, q, r])).collect::<Result<Vec<_>, _>>()?;
    chain(&blocks)
}
