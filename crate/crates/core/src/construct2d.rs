//! Two-dimensional constructions: seeded tours grown four rows or columns
//! at a time with 4 x m extenders, and the seeded open paths used to build
//! n x m x 2 tours.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::assembly::Assembly;
use crate::catalog::{open_bases, seed_edges, seeded_bases, BaseKey, BaseLibrary, BaseTag};
use crate::error::ConstructError;
use crate::graph::classify;
use crate::model::{shift, transpose, BoardShape, MoveSpec, OpenPath, Tour, Walk};

/// A 2D tour containing the seed edges ((0,m-3),(1,m-1)) and ((n-3,0),(n-1,1)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeededTour(Tour);

impl SeededTour {
    pub fn new(tour: Tour) -> Result<Self, ConstructError> {
        if !is_seeded(&tour) {
            return Err(ConstructError::Precondition(format!("{} tour is not seeded", tour.shape())));
        }
        Ok(SeededTour(tour))
    }

    pub fn tour(&self) -> &Tour {
        &self.0
    }

    pub fn into_tour(self) -> Tour {
        self.0
    }
}

/// An open 4 x m path from (3,m-1) to (3,m-2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extender {
    pub path: OpenPath,
    pub seeded: bool,
}

/// Whether a 2D walk contains both seed edges.
pub fn is_seeded<W: Walk>(w: &W) -> bool {
    let dims = w.shape().dims();
    if dims.len() != 2 || dims[0] < 3 || dims[1] < 3 {
        return false;
    }
    let index = w.edge_index();
    seed_edges(w.shape()).iter().all(|&e| index.contains(e))
}

fn base_route<W: Walk>(lib: &BaseLibrary, dims: &[usize], tag: BaseTag) -> Result<W, ConstructError> {
    let route = lib.get(&BaseKey::new(dims, tag))?.clone();
    Ok(W::from_route(route)?)
}

/// Edges of the 4 x 3 block appended when widening an extender, with
/// columns relative to the block's first column.
fn growth_block(lib: &BaseLibrary) -> Result<Vec<((usize, usize), (usize, usize))>, ConstructError> {
    let growth: OpenPath = base_route(lib, &[4, 6], BaseTag::Growth)?;
    let shape = growth.shape();
    let mut block = Vec::new();
    for e in growth.edges() {
        let (u, v) = e.cells(shape);
        if u[1] >= 3 && v[1] >= 3 {
            block.push(((u[0], u[1] - 3), (v[0], v[1] - 3)));
        }
    }
    Ok(block)
}

/// A seeded 4 x m extender, for every m >= 3 except 4.
pub fn make_extender(lib: &BaseLibrary, m: usize) -> Result<Extender, ConstructError> {
    let base = match m % 3 {
        0 => 3,
        2 => 5,
        _ => 7,
    };
    if m < base {
        return Err(ConstructError::Unsupported(format!("no 4x{m} extender exists")));
    }
    let mut path: OpenPath = base_route(lib, &[4, base], BaseTag::Extender)?;
    let block = if m > base { growth_block(lib)? } else { Vec::new() };
    let mut w = base;
    while w < m {
        let wide = BoardShape::new(vec![4, w + 3])?;
        let at = |i: usize, j: usize| i * (w + 3) + j;
        let mut asm = Assembly::new(wide.clone(), MoveSpec::knight());
        asm.place(&shift(&path, &[0, 0], &wide)?)?;
        for &((i1, j1), (i2, j2)) in &block {
            asm.add_edge(at(i1, j1 + w), at(i2, j2 + w))?;
        }
        asm.add_edge(at(3, w - 2), at(2, w))?;
        asm.add_edge(at(3, w - 1), at(1, w))?;
        path = asm.into_walk(at(3, w + 2))?;
        w += 3;
    }
    let seeded = is_seeded(&path);
    Ok(Extender { path, seeded })
}

/// Adds four rows above `w` using an extender; the result keeps both seed
/// edges and, for a path, its endpoints move with the shift.
fn extend_rows<W: Walk>(lib: &BaseLibrary, w: &W) -> Result<W, ConstructError> {
    if !is_seeded(w) {
        return Err(ConstructError::Precondition(format!("{} walk is not seeded", w.shape())));
    }
    let (n, m) = (w.shape().dims()[0], w.shape().dims()[1]);
    let ext = make_extender(lib, m)?;
    let big = BoardShape::new(vec![n + 4, m])?;
    let at = |i: usize, j: usize| i * m + j;
    let mut asm = Assembly::new(big.clone(), w.moves().clone());
    asm.place(&shift(&ext.path, &[0, 0], &big)?)?;
    let moved = shift(w, &[4, 0], &big)?;
    asm.place(&moved)?;
    asm.remove_edge(at(4, m - 3), at(5, m - 1))?;
    asm.add_edge(at(3, m - 1), at(4, m - 3))?;
    asm.add_edge(at(5, m - 1), at(3, m - 2))?;
    asm.into_walk(moved.order[0])
}

/// Grows a seeded walk by four along `axis` (0 or 1).
pub fn extend_walk<W: Walk>(lib: &BaseLibrary, w: &W, axis: usize) -> Result<W, ConstructError> {
    match axis {
        0 => extend_rows(lib, w),
        1 => Ok(transpose(&extend_rows(lib, &transpose(w)?)?)?),
        _ => Err(ConstructError::Precondition(format!("axis {axis} on a 2D board"))),
    }
}

/// A seeded (n+4) x m tour from a seeded n x m tour (or n x (m+4) for axis 1).
pub fn extend_seeded(lib: &BaseLibrary, t: &SeededTour, axis: usize) -> Result<SeededTour, ConstructError> {
    extend_walk(lib, t.tour(), axis).map(SeededTour)
}

fn grow<W: Walk>(lib: &BaseLibrary, mut w: W, n: usize, m: usize) -> Result<W, ConstructError> {
    while w.shape().dims()[0] < n {
        w = extend_walk(lib, &w, 0)?;
    }
    while w.shape().dims()[1] < m {
        w = extend_walk(lib, &w, 1)?;
    }
    Ok(w)
}

/// Base board `(a, b)`, possibly transposed, with the same residues mod 4
/// as `(n, m)` and no larger.
fn pick_base(bases: &[(usize, usize)], n: usize, m: usize) -> Option<(usize, usize, bool)> {
    bases.iter().find_map(|&(a, b)| {
        [(a, b, false), (b, a, true)]
            .into_iter()
            .find(|&(x, y, _)| x % 4 == n % 4 && y % 4 == m % 4 && x <= n && y <= m)
    })
}

/// A seeded closed tour of the n x m board.
pub fn construct_2d(lib: &BaseLibrary, n: usize, m: usize) -> Result<SeededTour, ConstructError> {
    let shape = BoardShape::new(vec![n, m])?;
    let class = classify(&shape, &MoveSpec::knight()).expect("knight moves are supported");
    if !class.is_tourable() || n < 3 || m < 3 {
        return Err(ConstructError::NotTourable(class.reason));
    }
    let (a, b, flipped) = pick_base(seeded_bases(), n, m)
        .ok_or_else(|| ConstructError::Unsupported(format!("no base case for {n}x{m}")))?;
    let (x, y) = if flipped { (b, a) } else { (a, b) };
    let mut t: Tour = base_route(lib, &[x, y], BaseTag::Seeded)?;
    if flipped {
        t = transpose(&t)?;
    }
    SeededTour::new(grow(lib, t, n, m)?)
}

/// A seeded open n x m path from (n-1,m-1) to (n-1,m-3), for odd n, m >= 5.
pub fn construct_open_for_doubling(lib: &BaseLibrary, n: usize, m: usize) -> Result<OpenPath, ConstructError> {
    if n.is_multiple_of(2) || m.is_multiple_of(2) || n < 5 || m < 5 {
        return Err(ConstructError::Precondition(format!("{n}x{m} needs odd sides of at least 5")));
    }
    let (a, b, _) = pick_base(open_bases(), n, m).expect("odd residues are all covered");
    let p: OpenPath = base_route(lib, &[a, b], BaseTag::Open)?;
    grow(lib, p, n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::BaseLibrary;

    #[test]
    fn extender_sizes() {
        let lib = BaseLibrary::bootstrapped().unwrap();
        for m in [1, 2, 4] {
            assert!(matches!(make_extender(&lib, m), Err(ConstructError::Unsupported(_))));
        }
        let e = make_extender(&lib, 10).unwrap();
        let s = e.path.shape();
        assert_eq!(s.dims(), &[4, 10]);
        assert_eq!(e.path.start(), s.index(&[3, 9]).unwrap());
        assert_eq!(e.path.end(), s.index(&[3, 8]).unwrap());
        assert!(e.seeded);
    }

    #[test]
    fn grows_seeded_tours() {
        let lib = BaseLibrary::bootstrapped().unwrap();
        let t = construct_2d(&lib, 11, 14).unwrap();
        assert_eq!(t.tour().shape().dims(), &[11, 14]);
        assert!(is_seeded(t.tour()));
        assert!(matches!(construct_2d(&lib, 4, 3), Err(ConstructError::NotTourable(_))));
    }

    #[test]
    fn open_paths_keep_their_endpoints() {
        let lib = BaseLibrary::bootstrapped().unwrap();
        let p = construct_open_for_doubling(&lib, 9, 5).unwrap();
        let s = p.shape();
        assert_eq!(p.start(), s.index(&[8, 4]).unwrap());
        assert_eq!(p.end(), s.index(&[8, 2]).unwrap());
        assert!(construct_open_for_doubling(&lib, 4, 5).is_err());
    }
}
