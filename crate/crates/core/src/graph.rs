//! The leaper graph of a board: adjacency, connectivity, two-colouring and
//! the closed-tour existence classification for the classical knight.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{BoardShape, Cell, MoveSpec};

/// Adjacency of the leaper graph in compressed form.
#[derive(Clone, Debug)]
pub struct LeaperGraph {
    shape: BoardShape,
    moves: MoveSpec,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl LeaperGraph {
    pub fn new(shape: &BoardShape, moves: &MoveSpec) -> Self {
        let deltas = moves.displacements(shape.rank());
        let n = shape.cell_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        let mut scratch = vec![0; shape.rank()];
        offsets.push(0);
        for x in 0..n {
            for d in &deltas {
                if let Some(y) = shape.offset(x, d, &mut scratch) {
                    targets.push(y);
                }
            }
            targets[*offsets.last().unwrap()..].sort_unstable();
            offsets.push(targets.len());
        }
        LeaperGraph { shape: shape.clone(), moves: moves.clone(), offsets, targets }
    }

    pub fn shape(&self) -> &BoardShape {
        &self.shape
    }

    pub fn moves(&self) -> &MoveSpec {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Neighbours of flat index `x`, ascending.
    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.targets[self.offsets[x]..self.offsets[x + 1]]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.offsets[x + 1] - self.offsets[x]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.neighbors(x).binary_search(&y).is_ok()
    }

    /// Component label of every vertex, numbered in order of first vertex.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &y in self.neighbors(x) {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }
}

/// Cells one leap from `c`, in ascending flat order.
pub fn neighbors(shape: &BoardShape, moves: &MoveSpec, c: &Cell) -> Vec<Cell> {
    let Some(x) = shape.index(c) else {
        return Vec::new();
    };
    let mut scratch = vec![0; shape.rank()];
    let mut out: Vec<usize> =
        moves.displacements(shape.rank()).iter().filter_map(|d| shape.offset(x, d, &mut scratch)).collect();
    out.sort_unstable();
    out.into_iter().map(|y| shape.cell(y)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub connected: bool,
    pub component_count: usize,
    /// First cell of component 0 and first cell of component 1.
    pub witness: Option<(Cell, Cell)>,
}

pub fn connectivity(shape: &BoardShape, moves: &MoveSpec) -> ConnectivityReport {
    let graph = LeaperGraph::new(shape, moves);
    let (label, count) = graph.components();
    let witness = if count > 1 {
        let other = label.iter().position(|&l| l == 1).expect("component 1 exists");
        Some((shape.cell(0), shape.cell(other)))
    } else {
        None
    };
    ConnectivityReport { connected: count == 1, component_count: count, witness }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Connectivity criterion for the `(a,b)`-leaper on an `n x m` board, `n >= m`.
/// Connected iff `a+b` is odd, `gcd(a,b) = 1`, `n >= 2b` and `m >= a+b`. A
/// single cell counts as connected.
pub fn knuth_connectivity_predicted(a: usize, b: usize, n: usize, m: usize) -> bool {
    if n * m == 1 {
        return true;
    }
    gcd(a + b, b.abs_diff(a)) == 1 && n >= 2 * b && m >= a + b
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PredictionError {
    #[error("board rank is smaller than the number of steps")]
    RankTooSmall,
    #[error("some dimension is below {threshold}; the formula is not reliable here")]
    Unreliable { threshold: usize },
}

/// Parity/gcd criterion for leaper connectivity on large boards, with
/// every dimension required to be at least `2 * max(step)`.
pub fn leaper_connectivity_predicted(moves: &MoveSpec, shape: &BoardShape) -> Result<bool, PredictionError> {
    let threshold = 2 * moves.steps().last().copied().unwrap_or(0);
    leaper_connectivity_predicted_with(moves, shape, threshold)
}

/// As [`leaper_connectivity_predicted`] with an explicit size threshold.
pub fn leaper_connectivity_predicted_with(
    moves: &MoveSpec,
    shape: &BoardShape,
    threshold: usize,
) -> Result<bool, PredictionError> {
    let steps = moves.steps();
    if shape.rank() < steps.len() {
        return Err(PredictionError::RankTooSmall);
    }
    if shape.dims().iter().any(|&d| d < threshold) {
        return Err(PredictionError::Unreliable { threshold });
    }
    let sum: usize = steps.iter().sum();
    let g = steps.iter().fold(0, |g, &s| gcd(g, s));
    let room = shape.rank() > steps.len() || steps.iter().any(|s| s % 2 == 0);
    Ok(sum % 2 == 1 && g == 1 && room)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("moves with an even step sum do not alternate colours")]
pub struct NotBipartiteArgument;

/// Difference between the number of cells with even and odd coordinate sum.
pub fn color_imbalance(shape: &BoardShape, moves: &MoveSpec) -> Result<usize, NotBipartiteArgument> {
    if moves.steps().iter().sum::<usize>() % 2 == 0 {
        return Err(NotBipartiteArgument);
    }
    // (even, odd) counts over a growing prefix of the axes
    let (mut even, mut odd) = (1usize, 0usize);
    for &d in shape.dims() {
        let (de, dd) = (d.div_ceil(2), d / 2);
        (even, odd) = (even * de + odd * dd, even * dd + odd * de);
    }
    Ok(even.abs_diff(odd))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tourability {
    Tourable,
    NotTourable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    None,
    ParityAllOdd,
    Disconnected,
    SmallCaseExclusion,
    DimensionTooSmall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Classification {
    pub verdict: Tourability,
    pub reason: Reason,
}

impl Classification {
    pub const TOURABLE: Classification = Classification { verdict: Tourability::Tourable, reason: Reason::None };

    pub fn not_tourable(reason: Reason) -> Self {
        Classification { verdict: Tourability::NotTourable, reason }
    }

    pub fn is_tourable(&self) -> bool {
        self.verdict == Tourability::Tourable
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("existence is only classified for the {{1,2}} knight")]
pub struct UnsupportedMove;

/// Dimensions other than 1, sorted descending. Unit axes carry no moves, so
/// a board and its unit-stripped version have the same tours.
pub(crate) fn essential_dims(dims: &[usize]) -> Vec<usize> {
    let mut d: Vec<usize> = dims.iter().copied().filter(|&x| x > 1).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Whether the board admits a closed knight's tour.
pub fn classify(shape: &BoardShape, moves: &MoveSpec) -> Result<Classification, UnsupportedMove> {
    if !moves.is_knight() {
        return Err(UnsupportedMove);
    }
    let d = essential_dims(shape.dims());
    if d.len() < 2 {
        return Ok(Classification::not_tourable(Reason::DimensionTooSmall));
    }
    if d.iter().all(|x| x % 2 == 1) {
        return Ok(Classification::not_tourable(Reason::ParityAllOdd));
    }
    if d.len() == 2 {
        let (n, m) = (d[0], d[1]);
        return Ok(match m {
            2 => Classification::not_tourable(Reason::Disconnected),
            4 => Classification::not_tourable(Reason::SmallCaseExclusion),
            3 if matches!(n, 4 | 6 | 8) => Classification::not_tourable(Reason::SmallCaseExclusion),
            _ => Classification::TOURABLE,
        });
    }
    if d[0] < 4 || d[1] < 3 {
        // Either every side is at most 3, and a cell with all coordinates 1
        // on the 3-sides is isolated, or every side but the first is 2, and
        // the parity of the first coordinate never changes.
        return Ok(Classification::not_tourable(Reason::Disconnected));
    }
    Ok(Classification::TOURABLE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn board(d: &[usize]) -> BoardShape {
        BoardShape::new(d.to_vec()).unwrap()
    }

    #[test]
    fn neighbours_examples() {
        let k = MoveSpec::knight();
        assert_eq!(neighbors(&board(&[8, 8]), &k, &[0, 0].into()), vec![Cell::from([1, 2]), Cell::from([2, 1])]);
        assert!(neighbors(&board(&[3, 3]), &k, &[1, 1].into()).is_empty());
        let b = 3;
        let got = neighbors(&board(&[9, 9]), &MoveSpec::leaper(1, b).unwrap(), &[0, b].into());
        let want = [[1, 0], [b, b - 1], [b, b + 1], [1, 2 * b]];
        assert_eq!(got.len(), 4);
        for w in want {
            assert!(got.contains(&Cell::from(w)));
        }
    }

    #[test]
    fn connectivity_examples() {
        let k = MoveSpec::knight();
        assert!(connectivity(&board(&[4, 3]), &k).connected);
        let r = connectivity(&board(&[3, 3]), &k);
        assert!(!r.connected);
        let (u, v) = r.witness.unwrap();
        assert!(u == Cell::from([1, 1]) || v == Cell::from([1, 1]));
        assert!(!connectivity(&board(&[7, 5]), &MoveSpec::leaper(2, 2).unwrap()).connected);
    }

    #[test]
    fn two_step_formula_examples() {
        assert!(knuth_connectivity_predicted(1, 2, 4, 3));
        assert!(!knuth_connectivity_predicted(2, 2, 10, 10));
        assert!(knuth_connectivity_predicted(1, 4, 8, 5));
        assert!(!knuth_connectivity_predicted(1, 4, 7, 5));
    }

    #[test]
    fn leaper_prediction_examples() {
        let big = board(&[10, 10, 10]);
        assert_eq!(leaper_connectivity_predicted(&MoveSpec::knight(), &big), Ok(true));
        assert_eq!(leaper_connectivity_predicted(&MoveSpec::leaper(1, 3).unwrap(), &big), Ok(false));
        assert_eq!(leaper_connectivity_predicted(&MoveSpec::new(vec![1, 2, 4]).unwrap(), &board(&[9, 9, 9])), Ok(true));
        assert_eq!(
            leaper_connectivity_predicted(&MoveSpec::leaper(1, 2).unwrap(), &board(&[3, 10])),
            Err(PredictionError::Unreliable { threshold: 4 })
        );
    }

    #[test]
    fn imbalance_examples() {
        let k = MoveSpec::knight();
        assert_eq!(color_imbalance(&board(&[5, 5, 5]), &k), Ok(1));
        assert_eq!(color_imbalance(&board(&[4, 4]), &k), Ok(0));
        assert_eq!(color_imbalance(&board(&[3, 3]), &k), Ok(1));
        assert_eq!(color_imbalance(&board(&[3, 3]), &MoveSpec::leaper(1, 3).unwrap()), Err(NotBipartiteArgument));
    }

    #[test]
    fn classify_examples() {
        let k = MoveSpec::knight();
        let c = |d: &[usize]| classify(&board(d), &k).unwrap();
        assert_eq!(c(&[4, 3]), Classification::not_tourable(Reason::SmallCaseExclusion));
        assert_eq!(c(&[5, 5, 5]), Classification::not_tourable(Reason::ParityAllOdd));
        assert!(c(&[4, 3, 2, 2]).is_tourable());
        assert_eq!(c(&[8]), Classification::not_tourable(Reason::DimensionTooSmall));
        assert_eq!(c(&[4, 3, 1]), c(&[4, 3]));
        assert_eq!(classify(&board(&[8, 8]), &MoveSpec::leaper(2, 3).unwrap()), Err(UnsupportedMove));
    }
}
