//! Tours in any dimension: layer stacking, the general constructor, and
//! lifting of `{1,b}` and `{a,b}` leaper tours to one more axis.

use alloc::format;
use alloc::vec::Vec;

use crate::analysis::{corner_candidates, find_ab_sites, AbSite, Site};
use crate::assembly::{layered, splice_site, Assembly};
use crate::catalog::BaseLibrary;
use crate::construct2d::construct_2d;
use crate::construct3d::{construct_3d, BisitedTour};
use crate::error::ConstructError;
use crate::graph::{classify, essential_dims};
use crate::model::{embed_unit_axes, BoardShape, MoveSpec, Tour, Walk};

/// Stacks `p` copies of a bi-sited tour along a new axis inserted at
/// position `axis`. Layer `l` joins layer `l+1` through the smaller site
/// when `l` is even and the larger one when odd; the unused site in the
/// bottom and top layers certifies the result.
pub fn stack(bt: &BisitedTour, p: usize, axis: usize) -> Result<BisitedTour, ConstructError> {
    let rank = bt.tour.shape().rank();
    if p == 0 || axis > rank {
        return Err(ConstructError::Precondition(format!("cannot stack {p} layers at axis {axis}")));
    }
    let appended = if p == 1 { BisitedTour::new(embed_unit_axes(&bt.tour, 1)?, bt.sites)? } else { stack_last(bt, p)? };
    if axis == rank {
        return Ok(appended);
    }
    let mut perm: Vec<usize> = (0..rank).collect();
    perm.insert(axis, rank);
    appended.rearranged(&perm)
}

fn stack_last(bt: &BisitedTour, p: usize) -> Result<BisitedTour, ConstructError> {
    let shape = bt.tour.shape();
    let big = shape.with_axis(p)?;
    let mut sites = [bt.sites.0, bt.sites.1];
    sites.sort_unstable();
    let mut asm = Assembly::new(big.clone(), bt.tour.moves().clone());
    for l in 0..p {
        let order: Vec<usize> = bt.tour.order().iter().map(|&x| layered(x, l, p)).collect();
        asm.place_order(&order, true)?;
    }
    let at = |x: usize, l: usize| layered(x, l, p);
    for l in 0..p - 1 {
        let s = sites[l % 2];
        splice_site(&mut asm, [at(s.e[0], l), at(s.e[1], l)], [at(s.f[0], l + 1), at(s.f[1], l + 1)])?;
    }
    let lift = |s: Site, l: usize| {
        Site::new(&big, [at(s.e[0], l), at(s.e[1], l)], [at(s.f[0], l), at(s.f[1], l)], s.distance)
            .expect("a layer keeps sites")
    };
    let certificate = (lift(sites[1], 0), lift(sites[(p - 1) % 2], p - 1));
    BisitedTour::new(asm.into_tour()?, certificate)
}

/// A closed knight's tour of `shape`, for every board that has one.
pub fn construct(lib: &BaseLibrary, shape: &BoardShape) -> Result<Tour, ConstructError> {
    let class = classify(shape, &MoveSpec::knight()).expect("knight moves are supported");
    if !class.is_tourable() {
        return Err(ConstructError::NotTourable(class.reason));
    }
    let ess = essential_dims(shape.dims());
    let units = shape.rank() - ess.len();
    let tour = if ess.len() == 2 {
        construct_2d(lib, ess[0], ess[1])?.into_tour()
    } else {
        construct_bisited(lib, &ess)?.tour
    };
    let embedded = embed_unit_axes(&tour, units)?;
    Ok(crate::model::permute_to(&embedded, shape.dims())?)
}

/// A bi-sited tour of a board with every side at least 2 and at least
/// three sides, sorted descending.
fn construct_bisited(lib: &BaseLibrary, ess: &[usize]) -> Result<BisitedTour, ConstructError> {
    let even = |x: usize| x.is_multiple_of(2);
    let k = (2..ess.len())
        .find(|&k| even(ess[0]) || even(ess[1]) || even(ess[k]))
        .ok_or_else(|| ConstructError::Unsupported(format!("no even side in {ess:?}")))?;
    let mut bt = construct_3d(lib, ess[0], ess[1], ess[k])?;
    for (j, &len) in ess.iter().enumerate() {
        if j >= 2 && j != k {
            let rank = bt.tour.shape().rank();
            bt = stack(&bt, len, rank)?;
        }
    }
    Ok(bt)
}

/// Stacks a 2D `{1,b}` tour along one new axis per entry of `layers`,
/// using two edge-disjoint corner `b`-sites.
pub fn lift_1b(t: &Tour, b: usize, layers: &[usize]) -> Result<Tour, ConstructError> {
    let moves = MoveSpec::leaper(1, b)?;
    let dims = t.shape().dims();
    if t.moves() != &moves || dims.len() != 2 {
        return Err(ConstructError::Precondition(format!("expected a 2D (1,{b}) tour")));
    }
    if dims.iter().all(|&d| d <= 2 * b + 1) {
        return Err(ConstructError::Precondition(format!("{} needs a side longer than {}", t.shape(), 2 * b + 1)));
    }
    let mut candidates = Vec::new();
    for corner in 0..4 {
        candidates.extend(corner_candidates(t, corner).map_err(|_| ConstructError::MissingCornerSites)?);
    }
    let pair = candidates
        .iter()
        .enumerate()
        .find_map(|(i, s)| candidates[i + 1..].iter().find(|o| !s.shares_edge(o)).map(|o| (*s, *o)))
        .ok_or(ConstructError::MissingCornerSites)?;
    let mut bt = BisitedTour::new(t.clone(), pair)?;
    for &p in layers {
        let rank = bt.tour.shape().rank();
        bt = stack(&bt, p, rank)?;
    }
    Ok(bt.tour)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Stacks `p` copies of an `{a,b}` tour along a new last axis. Layers `b`
/// apart are joined through `a`-sites, which leaves one cycle per residue
/// class mod `b`; layers `a` apart are then joined through `b`-sites to
/// link the classes into one tour.
pub fn lift_ab(t: &Tour, a: usize, b: usize, p: usize) -> Result<Tour, ConstructError> {
    let moves = MoveSpec::leaper(a, b)?;
    if t.moves() != &moves || a >= b {
        return Err(ConstructError::Precondition(format!("expected an ({a},{b}) tour with a < b")));
    }
    if gcd(a, b) != 1 {
        return Err(ConstructError::Precondition(format!("gcd({a},{b}) is not 1")));
    }
    if p < a + b + 1 {
        return Err(ConstructError::LayerBudget { layers: p, needed: a + b + 1 });
    }
    let sites = find_ab_sites(t, a, b);
    if sites.len() < 4 {
        return Err(ConstructError::InsufficientSites { found: sites.len() });
    }
    lift_ab_with(t, a, b, p, &sites[..4])
}

/// [`lift_ab`] with the four corner sites given.
pub fn lift_ab_with(t: &Tour, a: usize, b: usize, p: usize, sites: &[AbSite]) -> Result<Tour, ConstructError> {
    let big = t.shape().with_axis(p)?;
    let mut asm = Assembly::new(big, t.moves().clone());
    for l in 0..p {
        let order: Vec<usize> = t.order().iter().map(|&x| layered(x, l, p)).collect();
        asm.place_order(&order, true)?;
    }
    let mut parent: Vec<usize> = (0..p).collect();
    let mut join = |asm: &mut Assembly, s: Site, lo: usize, hi: usize| -> Result<(), ConstructError> {
        let (x, y) = (find(&mut parent, lo), find(&mut parent, hi));
        if x == y {
            return Err(ConstructError::NotASingleCycle);
        }
        parent[x] = y;
        let at = |c: usize, l: usize| layered(c, l, p);
        splice_site(asm, [at(s.e[0], lo), at(s.e[1], lo)], [at(s.f[0], hi), at(s.f[1], hi)])
    };
    for l in 0..p - b {
        join(&mut asm, sites[(l / b) % 2].a_site, l, l + b)?;
    }
    for k in 0..b - 1 {
        let x = (k * a) % b;
        join(&mut asm, sites[2 + k % 2].b_site, x, x + a)?;
    }
    asm.into_tour()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{find_sites, verify};
    use crate::graph::Reason;

    fn board(d: &[usize]) -> BoardShape {
        BoardShape::new(d.to_vec()).unwrap()
    }

    #[test]
    fn construct_examples() {
        let lib = BaseLibrary::bootstrapped().unwrap();
        let t = construct(&lib, &board(&[4, 3, 2, 2])).unwrap();
        assert_eq!(t.order().len(), 48);
        assert!(verify(t.route(), true).is_valid());
        assert_eq!(construct(&lib, &board(&[7, 5, 3, 3])), Err(ConstructError::NotTourable(Reason::ParityAllOdd)));
        assert!(matches!(construct(&lib, &board(&[3, 3, 3, 2])), Err(ConstructError::NotTourable(_))));
        let t = construct(&lib, &board(&[1, 6, 5, 1])).unwrap();
        assert_eq!(t.shape().dims(), &[1, 6, 5, 1]);
    }

    #[test]
    fn stacking_keeps_two_sites() {
        let lib = BaseLibrary::bootstrapped().unwrap();
        let bt = construct_3d(&lib, 4, 3, 2).unwrap();
        for axis in [0, 2, 3] {
            let s = stack(&bt, 4, axis).unwrap();
            assert!(verify(s.tour.route(), true).is_valid());
            assert!(find_sites(&s.tour, 2).bisited);
        }
        assert_eq!(stack(&bt, 1, 3).unwrap().tour.order(), bt.tour.order());
    }

    #[test]
    fn lifting_preconditions() {
        let lib = BaseLibrary::bootstrapped().unwrap();
        let t = construct_2d(&lib, 5, 6).unwrap().into_tour();
        assert!(matches!(lift_1b(&t, 2, &[3]), Ok(ref u) if u.shape().dims() == [5, 6, 3]));
        assert_eq!(lift_ab(&t, 1, 2, 3), Err(ConstructError::LayerBudget { layers: 3, needed: 4 }));
        assert!(matches!(lift_ab(&t, 2, 4, 9), Err(ConstructError::Precondition(_))));
        let small = construct_2d(&lib, 3, 10).unwrap().into_tour();
        assert!(lift_1b(&small, 4, &[2]).is_err());
    }
}
