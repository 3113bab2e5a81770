//! Board geometry, cells, leaper moves, tours and the rigid transforms used
//! by every construction.
//!
//! Cells have two forms. The coordinate form ([`Cell`]) is what callers see
//! and what the tour file format stores. Internally every cell also has a
//! row-major flat index (last axis fastest), which is what [`Route`] keeps
//! and what the search and splicing code operate on.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::analysis::{verify_route, Invalid, Verdict};
use crate::error::ModelError;

/// Side lengths `n_1 x ... x n_r` of a board.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoardShape {
    dims: Vec<usize>,
    cells: usize,
}

impl BoardShape {
    pub fn new(dims: Vec<usize>) -> Result<Self, ModelError> {
        if dims.is_empty() {
            return Err(ModelError::EmptyShape);
        }
        if dims.contains(&0) {
            return Err(ModelError::ZeroDimension);
        }
        let mut cells: usize = 1;
        for &d in &dims {
            cells = cells.checked_mul(d).ok_or(ModelError::ShapeTooLarge)?;
        }
        Ok(BoardShape { dims, cells })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn contains(&self, coords: &[usize]) -> bool {
        coords.len() == self.dims.len() && coords.iter().zip(&self.dims).all(|(c, d)| c < d)
    }

    /// Flat index of `coords`, or `None` when the cell is not on the board.
    pub fn index(&self, coords: &[usize]) -> Option<usize> {
        if !self.contains(coords) {
            return None;
        }
        Some(self.index_unchecked(coords))
    }

    pub(crate) fn index_unchecked(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.dims).fold(0, |acc, (c, d)| acc * d + c)
    }

    /// Writes the coordinates of flat index `idx` into `out`.
    pub(crate) fn decode(&self, mut idx: usize, out: &mut [usize]) {
        for (slot, d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = idx % d;
            idx /= d;
        }
    }

    pub fn cell(&self, idx: usize) -> Cell {
        let mut coords = vec![0; self.rank()];
        self.decode(idx, &mut coords);
        Cell(coords)
    }

    /// Index of the cell displaced from `idx` by `delta`, if it stays on the board.
    pub(crate) fn offset(&self, idx: usize, delta: &[isize], scratch: &mut [usize]) -> Option<usize> {
        self.decode(idx, scratch);
        for ((c, &d), &n) in scratch.iter_mut().zip(delta).zip(&self.dims) {
            let moved = *c as isize + d;
            if moved < 0 || moved as usize >= n {
                return None;
            }
            *c = moved as usize;
        }
        Some(self.index_unchecked(scratch))
    }

    /// Same shape with an extra axis of length `len` appended.
    pub fn with_axis(&self, len: usize) -> Result<Self, ModelError> {
        let mut dims = self.dims.clone();
        dims.push(len);
        BoardShape::new(dims)
    }
}

impl fmt::Display for BoardShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A board cell in coordinate form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(pub Vec<usize>);

impl Cell {
    pub fn new(coords: Vec<usize>) -> Self {
        Cell(coords)
    }
}

impl Deref for Cell {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Cell {
    fn from(coords: Vec<usize>) -> Self {
        Cell(coords)
    }
}

impl<const N: usize> From<[usize; N]> for Cell {
    fn from(coords: [usize; N]) -> Self {
        Cell(coords.to_vec())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// The step multiset of a leaper; `{1, 2}` is the classical knight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSpec {
    steps: Vec<usize>,
}

impl MoveSpec {
    pub fn new(mut steps: Vec<usize>) -> Result<Self, ModelError> {
        if steps.len() < 2 {
            return Err(ModelError::TooFewSteps);
        }
        if steps.contains(&0) {
            return Err(ModelError::ZeroStep);
        }
        steps.sort_unstable();
        Ok(MoveSpec { steps })
    }

    pub fn knight() -> Self {
        MoveSpec { steps: vec![1, 2] }
    }

    pub fn leaper(a: usize, b: usize) -> Result<Self, ModelError> {
        MoveSpec::new(vec![a, b])
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn is_knight(&self) -> bool {
        self.steps == [1, 2]
    }

    /// True when the displacement between `a` and `b` is one leap.
    pub(crate) fn is_leap(&self, a: &[usize], b: &[usize]) -> bool {
        let mut buf = [0usize; 8];
        let mut spill = Vec::new();
        let mut count = 0;
        for (x, y) in a.iter().zip(b) {
            let d = x.abs_diff(*y);
            if d == 0 {
                continue;
            }
            if count == self.steps.len() {
                return false;
            }
            if count < buf.len() {
                buf[count] = d;
            } else {
                spill.push(d);
            }
            count += 1;
        }
        if count != self.steps.len() {
            return false;
        }
        if count <= buf.len() {
            let diffs = &mut buf[..count];
            diffs.sort_unstable();
            diffs == self.steps.as_slice()
        } else {
            let mut diffs: Vec<usize> = buf.iter().copied().chain(spill).collect();
            diffs.sort_unstable();
            diffs == self.steps
        }
    }

    /// Every distinct displacement vector of this leaper on a rank-`rank` board.
    pub fn displacements(&self, rank: usize) -> Vec<Vec<isize>> {
        let mut out = Vec::new();
        if self.steps.len() > rank {
            return out;
        }
        let mut current = vec![0isize; rank];
        fn place(steps: &[usize], k: usize, current: &mut Vec<isize>, out: &mut Vec<Vec<isize>>) {
            if k == steps.len() {
                out.push(current.clone());
                return;
            }
            for axis in 0..current.len() {
                if current[axis] != 0 {
                    continue;
                }
                for sign in [1isize, -1] {
                    current[axis] = sign * steps[k] as isize;
                    place(steps, k + 1, current, out);
                }
                current[axis] = 0;
            }
        }
        place(&self.steps, 0, &mut current, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Is `u -> v` a single leap on `shape`?
pub fn legal_move(shape: &BoardShape, moves: &MoveSpec, u: &Cell, v: &Cell) -> Result<bool, ModelError> {
    for c in [u, v] {
        if c.len() != shape.rank() {
            return Err(ModelError::DimensionMismatch { expected: shape.rank(), found: c.len() });
        }
        if !shape.contains(c) {
            return Err(ModelError::OutOfBounds);
        }
    }
    Ok(moves.is_leap(u, v))
}

/// An undirected edge between two flat cell indices, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    pub fn new(x: usize, y: usize) -> Self {
        if x <= y {
            Edge { a: x, b: y }
        } else {
            Edge { a: y, b: x }
        }
    }

    pub fn from_cells(shape: &BoardShape, u: &[usize], v: &[usize]) -> Result<Self, ModelError> {
        let a = shape.index(u).ok_or(ModelError::OutOfBounds)?;
        let b = shape.index(v).ok_or(ModelError::OutOfBounds)?;
        Ok(Edge::new(a, b))
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn cells(&self, shape: &BoardShape) -> (Cell, Cell) {
        (shape.cell(self.a), shape.cell(self.b))
    }

    pub fn touches(&self, x: usize) -> bool {
        self.a == x || self.b == x
    }
}

/// A visit order on a board. Whether the order closes up is decided by the
/// wrapper type ([`Tour`] or [`OpenPath`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    shape: BoardShape,
    moves: MoveSpec,
    order: Vec<usize>,
}

impl Route {
    pub fn new(shape: BoardShape, moves: MoveSpec, order: Vec<usize>) -> Self {
        Route { shape, moves, order }
    }

    pub fn from_cells(shape: BoardShape, moves: MoveSpec, cells: &[Cell]) -> Result<Self, Invalid> {
        let mut order = Vec::with_capacity(cells.len());
        for (index, c) in cells.iter().enumerate() {
            if c.len() != shape.rank() {
                return Err(Invalid::DimensionMismatch { index });
            }
            order.push(shape.index(c).ok_or(Invalid::CellOutOfBounds { index })?);
        }
        Ok(Route { shape, moves, order })
    }

    pub fn shape(&self) -> &BoardShape {
        &self.shape
    }

    pub fn moves(&self) -> &MoveSpec {
        &self.moves
    }

    /// Flat cell indices in visit order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.order.iter().map(move |&i| self.shape.cell(i))
    }

    pub fn into_parts(self) -> (BoardShape, MoveSpec, Vec<usize>) {
        (self.shape, self.moves, self.order)
    }

    /// Edges in visit order; the closing edge is included when `closed`.
    pub fn edges(&self, closed: bool) -> impl Iterator<Item = Edge> + '_ {
        let n = self.order.len();
        let count = if closed && n > 2 { n } else { n.saturating_sub(1) };
        (0..count).map(move |i| Edge::new(self.order[i], self.order[(i + 1) % n]))
    }
}

/// Common surface of closed tours and open paths.
pub trait Walk: Sized + Clone {
    const CLOSED: bool;

    fn route(&self) -> &Route;

    /// Wraps a route after verifying it.
    fn from_route(route: Route) -> Result<Self, Invalid>;

    #[doc(hidden)]
    fn from_route_unchecked(route: Route) -> Self;

    fn shape(&self) -> &BoardShape {
        self.route().shape()
    }

    fn moves(&self) -> &MoveSpec {
        self.route().moves()
    }

    fn order(&self) -> &[usize] {
        self.route().order()
    }

    fn edges(&self) -> Vec<Edge> {
        self.route().edges(Self::CLOSED).collect()
    }

    /// Membership index over the walk's edges.
    fn edge_index(&self) -> EdgeIndex {
        EdgeIndex::new(self.route(), Self::CLOSED)
    }
}

/// A closed Hamiltonian cycle of the leaper graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tour(Route);

/// A Hamiltonian path of the leaper graph with distinguished endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenPath(Route);

fn checked(route: Route, closed: bool) -> Result<Route, Invalid> {
    match verify_route(route.shape(), route.moves(), route.order(), closed) {
        Verdict::Valid => Ok(route),
        Verdict::Invalid(why) => Err(why),
    }
}

impl Tour {
    pub fn new(shape: BoardShape, moves: MoveSpec, cells: &[Cell]) -> Result<Self, Invalid> {
        Self::from_route(Route::from_cells(shape, moves, cells)?)
    }

    pub fn from_indices(shape: BoardShape, moves: MoveSpec, order: Vec<usize>) -> Result<Self, Invalid> {
        Self::from_route(Route::new(shape, moves, order))
    }

    pub fn into_route(self) -> Route {
        self.0
    }
}

impl OpenPath {
    pub fn new(shape: BoardShape, moves: MoveSpec, cells: &[Cell]) -> Result<Self, Invalid> {
        Self::from_route(Route::from_cells(shape, moves, cells)?)
    }

    pub fn from_indices(shape: BoardShape, moves: MoveSpec, order: Vec<usize>) -> Result<Self, Invalid> {
        Self::from_route(Route::new(shape, moves, order))
    }

    pub fn start(&self) -> usize {
        self.0.order[0]
    }

    pub fn end(&self) -> usize {
        *self.0.order.last().expect("paths are non-empty")
    }

    pub fn into_route(self) -> Route {
        self.0
    }
}

impl Walk for Tour {
    const CLOSED: bool = true;

    fn route(&self) -> &Route {
        &self.0
    }

    fn from_route(route: Route) -> Result<Self, Invalid> {
        checked(route, true).map(Tour)
    }

    fn from_route_unchecked(route: Route) -> Self {
        debug_assert!(verify_route(route.shape(), route.moves(), route.order(), true).is_valid());
        Tour(route)
    }
}

impl Walk for OpenPath {
    const CLOSED: bool = false;

    fn route(&self) -> &Route {
        &self.0
    }

    fn from_route(route: Route) -> Result<Self, Invalid> {
        if route.is_empty() {
            return Err(Invalid::MissingCells { expected: route.shape().cell_count(), found: 0 });
        }
        checked(route, false).map(OpenPath)
    }

    fn from_route_unchecked(route: Route) -> Self {
        debug_assert!(verify_route(route.shape(), route.moves(), route.order(), false).is_valid());
        OpenPath(route)
    }
}

/// O(1) edge membership for a walk, via each cell's position in the order.
#[derive(Clone, Debug)]
pub struct EdgeIndex {
    pos: Vec<usize>,
    len: usize,
    closed: bool,
}

impl EdgeIndex {
    pub fn new(route: &Route, closed: bool) -> Self {
        let mut pos = vec![usize::MAX; route.shape().cell_count()];
        for (i, &c) in route.order().iter().enumerate() {
            pos[c] = i;
        }
        EdgeIndex { pos, len: route.len(), closed }
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.adjacent(e.a(), e.b())
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        let (Some(&px), Some(&py)) = (self.pos.get(x), self.pos.get(y)) else {
            return false;
        };
        if px == usize::MAX || py == usize::MAX {
            return false;
        }
        let d = px.abs_diff(py);
        d == 1 || (self.closed && self.len > 2 && d == self.len - 1)
    }

    /// Cells adjacent to `x` along the walk.
    pub fn neighbors(&self, order: &[usize], x: usize) -> [Option<usize>; 2] {
        let p = self.pos[x];
        if p == usize::MAX {
            return [None, None];
        }
        let n = self.len;
        let prev = if p > 0 {
            Some(order[p - 1])
        } else if self.closed && n > 2 {
            Some(order[n - 1])
        } else {
            None
        };
        let next = if p + 1 < n {
            Some(order[p + 1])
        } else if self.closed && n > 2 {
            Some(order[0])
        } else {
            None
        };
        [prev, next]
    }
}

/// Maps flat indices of `from` to flat indices of `to` under an axis
/// permutation (`to` axis `j` is `from` axis `perm[j]`), optional per-axis
/// reflection, and translation.
#[derive(Clone, Debug)]
pub(crate) struct CellMap {
    from: BoardShape,
    to: BoardShape,
    perm: Vec<usize>,
    reflect: Vec<bool>,
    offset: Vec<isize>,
}

impl CellMap {
    pub(crate) fn apply(&self, idx: usize, src: &mut [usize], dst: &mut [usize]) -> Option<usize> {
        self.from.decode(idx, src);
        for j in 0..dst.len() {
            let axis = self.perm[j];
            let mut c = src[axis];
            if self.reflect[j] {
                c = self.from.dims()[axis] - 1 - c;
            }
            let moved = c as isize + self.offset[j];
            if moved < 0 || moved as usize >= self.to.dims()[j] {
                return None;
            }
            dst[j] = moved as usize;
        }
        Some(self.to.index_unchecked(dst))
    }

    pub(crate) fn map_all(&self, order: &[usize]) -> Option<Vec<usize>> {
        let mut src = vec![0; self.from.rank()];
        let mut dst = vec![0; self.to.rank()];
        order.iter().map(|&i| self.apply(i, &mut src, &mut dst)).collect()
    }

    /// Pure translation of `from` into the larger board `to`.
    pub(crate) fn translate(from: &BoardShape, to: &BoardShape, offset: &[isize]) -> Result<Self, ModelError> {
        if from.rank() != to.rank() || offset.len() != to.rank() {
            return Err(ModelError::DimensionMismatch { expected: to.rank(), found: from.rank().min(offset.len()) });
        }
        Ok(CellMap {
            from: from.clone(),
            to: to.clone(),
            perm: (0..from.rank()).collect(),
            reflect: vec![false; from.rank()],
            offset: offset.to_vec(),
        })
    }

    pub(crate) fn rigid(from: &BoardShape, perm: &[usize], reflect: &[bool]) -> Result<Self, ModelError> {
        let r = from.rank();
        let mut seen = vec![false; r];
        if perm.len() != r || reflect.len() != r {
            return Err(ModelError::MalformedPermutation);
        }
        for &p in perm {
            if p >= r || seen[p] {
                return Err(ModelError::MalformedPermutation);
            }
            seen[p] = true;
        }
        let dims = perm.iter().map(|&p| from.dims()[p]).collect();
        Ok(CellMap {
            from: from.clone(),
            to: BoardShape::new(dims)?,
            perm: perm.to_vec(),
            reflect: reflect.to_vec(),
            offset: vec![0; r],
        })
    }

    pub(crate) fn target(&self) -> &BoardShape {
        &self.to
    }
}

/// Applies an axis permutation and per-axis reflection. Axis `j` of the
/// result is axis `perm[j]` of the input; the visit order is preserved.
pub fn transform<W: Walk>(walk: &W, perm: &[usize], reflect: &[bool]) -> Result<W, ModelError> {
    let map = CellMap::rigid(walk.shape(), perm, reflect)?;
    let order = map.map_all(walk.order()).ok_or(ModelError::OutOfBounds)?;
    let route = Route::new(map.target().clone(), walk.moves().clone(), order);
    Ok(W::from_route_unchecked(route))
}

/// Swaps the two axes of a rank-2 walk.
pub fn transpose<W: Walk>(walk: &W) -> Result<W, ModelError> {
    transform(walk, &[1, 0], &[false, false])
}

/// Reorders axes so the result has exactly `target` as its dims. Equal
/// lengths are matched in order of appearance.
pub fn permute_to<W: Walk>(walk: &W, target: &[usize]) -> Result<W, ModelError> {
    let perm = axis_perm(walk.shape().dims(), target)?;
    transform(walk, &perm, &vec![false; perm.len()])
}

/// The permutation `perm` with `target[j] == dims[perm[j]]`, matching equal
/// lengths in order.
pub(crate) fn axis_perm(dims: &[usize], target: &[usize]) -> Result<Vec<usize>, ModelError> {
    if dims.len() != target.len() {
        return Err(ModelError::MalformedPermutation);
    }
    let mut used = vec![false; dims.len()];
    let mut perm = Vec::with_capacity(dims.len());
    for &t in target {
        let axis = (0..dims.len()).find(|&i| !used[i] && dims[i] == t).ok_or(ModelError::MalformedPermutation)?;
        used[axis] = true;
        perm.push(axis);
    }
    Ok(perm)
}

/// Appends unit-length axes; flat indices do not change.
pub fn embed_unit_axes<W: Walk>(walk: &W, count: usize) -> Result<W, ModelError> {
    let mut dims = walk.shape().dims().to_vec();
    dims.extend(core::iter::repeat_n(1, count));
    let route = Route::new(BoardShape::new(dims)?, walk.moves().clone(), walk.order().to_vec());
    Ok(W::from_route_unchecked(route))
}

/// A tour or path placed inside a larger board. It no longer covers its
/// board, so it is not a [`Walk`]; it is the unit the splicing code consumes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub shape: BoardShape,
    pub moves: MoveSpec,
    pub order: Vec<usize>,
    pub closed: bool,
}

impl Fragment {
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.order.iter().map(move |&i| self.shape.cell(i))
    }
}

/// Translates every cell by `offset` into `new_shape`.
pub fn shift<W: Walk>(walk: &W, offset: &[isize], new_shape: &BoardShape) -> Result<Fragment, ModelError> {
    let map = CellMap::translate(walk.shape(), new_shape, offset)?;
    let order = map.map_all(walk.order()).ok_or(ModelError::OutOfBounds)?;
    Ok(Fragment { shape: new_shape.clone(), moves: walk.moves().clone(), order, closed: W::CLOSED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(d: &[usize]) -> BoardShape {
        BoardShape::new(d.to_vec()).unwrap()
    }

    #[test]
    fn shape_rejects_degenerate_input() {
        assert_eq!(BoardShape::new(vec![]), Err(ModelError::EmptyShape));
        assert_eq!(BoardShape::new(vec![3, 0]), Err(ModelError::ZeroDimension));
        assert_eq!(BoardShape::new(vec![usize::MAX, 3]), Err(ModelError::ShapeTooLarge));
    }

    #[test]
    fn index_round_trips() {
        let s = shape(&[3, 4, 5]);
        for i in 0..s.cell_count() {
            assert_eq!(s.index(&s.cell(i)), Some(i));
        }
        assert_eq!(s.index(&[0, 0, 1]), Some(1));
        assert_eq!(s.index(&[1, 0, 0]), Some(20));
        assert_eq!(s.index(&[3, 0, 0]), None);
    }

    #[test]
    fn legal_move_examples() {
        let k = MoveSpec::knight();
        let b = shape(&[8, 8]);
        assert!(legal_move(&b, &k, &[0, 0].into(), &[1, 2].into()).unwrap());
        assert!(!legal_move(&b, &k, &[0, 0].into(), &[0, 0].into()).unwrap());
        let c = shape(&[4, 4, 2]);
        assert!(!legal_move(&c, &k, &[0, 0, 0].into(), &[1, 2, 1].into()).unwrap());
        assert!(legal_move(&c, &k, &[0, 0, 0].into(), &[0, 2, 1].into()).unwrap());
        assert_eq!(
            legal_move(&c, &k, &[0, 0].into(), &[1, 2].into()),
            Err(ModelError::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn move_spec_validation() {
        assert_eq!(MoveSpec::new(vec![2]), Err(ModelError::TooFewSteps));
        assert_eq!(MoveSpec::new(vec![0, 1]), Err(ModelError::ZeroStep));
        assert_eq!(MoveSpec::new(vec![2, 1]).unwrap().steps(), &[1, 2]);
    }

    #[test]
    fn displacement_counts() {
        assert_eq!(MoveSpec::knight().displacements(2).len(), 8);
        assert_eq!(MoveSpec::knight().displacements(3).len(), 24);
        // equal steps collapse duplicate vectors
        assert_eq!(MoveSpec::new(vec![2, 2]).unwrap().displacements(2).len(), 4);
        assert!(MoveSpec::new(vec![1, 2, 3]).unwrap().displacements(2).is_empty());
    }

    #[test]
    fn shift_bounds() {
        let s = shape(&[3, 4, 2]);
        let big = shape(&[6, 4, 2]);
        // any 3x4x2 cell order will do for a bounds check
        let route = Route::new(s.clone(), MoveSpec::knight(), (0..s.cell_count()).collect());
        let t = Tour(route);
        let moved = shift(&t, &[3, 0, 0], &big).unwrap();
        assert!(moved.cells().all(|c| c[0] >= 3 && big.contains(&c)));
        assert_eq!(shift(&t, &[4, 0, 0], &big), Err(ModelError::OutOfBounds));
        assert_eq!(shift(&t, &[0, 0, 0], &s).unwrap().order, t.order());
    }
}
