//! Edge-level splicing. Every construction places walks on a common board,
//! deletes and adds a few edges, and reads the result back as one cycle or
//! one path.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::ConstructError;
use crate::model::{BoardShape, Fragment, MoveSpec, OpenPath, Route, Tour, Walk};

const NONE: usize = usize::MAX;

/// A graph of maximum degree two on the cells of a board.
#[derive(Clone, Debug)]
pub struct Assembly {
    shape: BoardShape,
    moves: MoveSpec,
    adj: Vec<[usize; 2]>,
    scratch: [Vec<usize>; 2],
}

impl Assembly {
    pub fn new(shape: BoardShape, moves: MoveSpec) -> Self {
        let n = shape.cell_count();
        let rank = shape.rank();
        Assembly { shape, moves, adj: vec![[NONE; 2]; n], scratch: [vec![0; rank], vec![0; rank]] }
    }

    pub fn shape(&self) -> &BoardShape {
        &self.shape
    }

    /// Adds the edges of a placed walk.
    pub fn place(&mut self, f: &Fragment) -> Result<(), ConstructError> {
        if f.shape != self.shape {
            return Err(ConstructError::Precondition(format!("fragment on {} placed on {}", f.shape, self.shape)));
        }
        self.place_order(&f.order, f.closed)
    }

    /// Adds the edges of a walk already on this board.
    pub fn place_walk<W: Walk>(&mut self, w: &W) -> Result<(), ConstructError> {
        if w.shape() != &self.shape {
            return Err(ConstructError::Precondition(format!("walk on {} placed on {}", w.shape(), self.shape)));
        }
        self.place_order(w.order(), W::CLOSED)
    }

    pub fn place_order(&mut self, order: &[usize], closed: bool) -> Result<(), ConstructError> {
        for w in order.windows(2) {
            self.link(w[0], w[1])?;
        }
        if closed && order.len() > 2 {
            self.link(order[order.len() - 1], order[0])?;
        }
        Ok(())
    }

    fn link(&mut self, x: usize, y: usize) -> Result<(), ConstructError> {
        for (p, q) in [(x, y), (y, x)] {
            match self.adj[p] {
                [NONE, _] => self.adj[p][0] = q,
                [_, NONE] => self.adj[p][1] = q,
                _ => {
                    return Err(ConstructError::Precondition(format!(
                        "cell {} would get a third edge",
                        self.shape.cell(p)
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj.get(x).is_some_and(|a| a.contains(&y))
    }

    /// Adds an edge after checking that it is a leap.
    pub fn add_edge(&mut self, x: usize, y: usize) -> Result<(), ConstructError> {
        let n = self.adj.len();
        if x >= n || y >= n {
            return Err(ConstructError::Model(crate::error::ModelError::OutOfBounds));
        }
        self.shape.decode(x, &mut self.scratch[0]);
        self.shape.decode(y, &mut self.scratch[1]);
        if !self.moves.is_leap(&self.scratch[0], &self.scratch[1]) {
            return Err(ConstructError::IllegalSplice(format!("{}-{}", self.shape.cell(x), self.shape.cell(y))));
        }
        if self.has_edge(x, y) {
            return Err(ConstructError::Precondition(format!(
                "edge {}-{} already present",
                self.shape.cell(x),
                self.shape.cell(y)
            )));
        }
        self.link(x, y)
    }

    pub fn remove_edge(&mut self, x: usize, y: usize) -> Result<(), ConstructError> {
        if !self.has_edge(x, y) {
            return Err(ConstructError::Precondition(format!(
                "edge {}-{} is not present",
                self.shape.cell(x),
                self.shape.cell(y)
            )));
        }
        for (p, q) in [(x, y), (y, x)] {
            let slot = self.adj[p].iter().position(|&v| v == q).expect("edge present");
            self.adj[p][slot] = NONE;
        }
        Ok(())
    }

    /// Reads the edges back as a single cycle through every cell.
    pub fn into_tour(self) -> Result<Tour, ConstructError> {
        let n = self.adj.len();
        if self.adj.iter().any(|a| a.contains(&NONE)) {
            return Err(ConstructError::NotASingleCycle);
        }
        let order = self.walk_from(0, n);
        if order.len() != n || !self.adj[order[n - 1]].contains(&order[0]) {
            return Err(ConstructError::NotASingleCycle);
        }
        Ok(Tour::from_route(Route::new(self.shape, self.moves, order))?)
    }

    /// Reads the edges back as a single path from `start`.
    pub fn into_path(self, start: usize) -> Result<OpenPath, ConstructError> {
        let n = self.adj.len();
        let ends = self.adj.iter().filter(|a| a.contains(&NONE)).count();
        if start >= n || !self.adj[start].contains(&NONE) || (n > 1 && ends != 2) {
            return Err(ConstructError::NotASingleCycle);
        }
        let order = self.walk_from(start, n);
        if order.len() != n {
            return Err(ConstructError::NotASingleCycle);
        }
        Ok(OpenPath::from_route(Route::new(self.shape, self.moves, order))?)
    }

    /// Reads the result back as a tour or as a path from `start`, as `W` requires.
    pub fn into_walk<W: Walk>(self, start: usize) -> Result<W, ConstructError> {
        let route = if W::CLOSED { self.into_tour()?.into_route() } else { self.into_path(start)?.into_route() };
        Ok(W::from_route_unchecked(route))
    }

    /// Whether `x`-`y` is a leap of this move.
    pub fn is_leap(&mut self, x: usize, y: usize) -> bool {
        self.shape.decode(x, &mut self.scratch[0]);
        self.shape.decode(y, &mut self.scratch[1]);
        self.moves.is_leap(&self.scratch[0], &self.scratch[1])
    }

    fn walk_from(&self, start: usize, n: usize) -> Vec<usize> {
        let mut order = Vec::with_capacity(n);
        let mut cur = start;
        let first = if self.adj[start][0] == NONE { self.adj[start][1] } else { self.adj[start][0] };
        order.push(start);
        let mut next = first;
        while next != NONE && next != start && order.len() <= n {
            let prev = cur;
            cur = next;
            order.push(cur);
            let [a, b] = self.adj[cur];
            next = if a == prev { b } else { a };
        }
        order
    }
}

/// Edge pair of one site splice: delete `e` from one copy and `f` from the
/// other, then connect the paired endpoints across.
pub(crate) fn splice_site(asm: &mut Assembly, e: [usize; 2], f: [usize; 2]) -> Result<(), ConstructError> {
    asm.remove_edge(e[0], e[1])?;
    asm.remove_edge(f[0], f[1])?;
    asm.add_edge(e[0], f[0])?;
    asm.add_edge(e[1], f[1])
}

/// Flat index of cell `x` in layer `layer` of a board with `layers`
/// copies stacked along a new last axis.
pub(crate) fn layered(x: usize, layer: usize, layers: usize) -> usize {
    x * layers + layer
}
