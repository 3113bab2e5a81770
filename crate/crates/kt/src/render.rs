//! Layered text: one grid per layer, each cell showing its 1-based position
//! in the walk. Rows run along axis 0 and columns along axis 1; the layers
//! enumerate the remaining coordinates in row-major order, layer 0 first
//! (layer 0 is drawn as the topmost layer).
//!
//! ```text
//! board 3x4 move 1,2 open
//!  1  4  7 10
//! 12  9  2  5
//!  3  6 11  8
//! ```

use std::fmt::Write as _;

use knight_tour_core::{BoardShape, Route};

use crate::text::{parse_move, parse_shape};
use crate::Error;

pub fn render(route: &Route, closed: bool) -> String {
    let shape = route.shape();
    let dims = shape.dims();
    let (rows, cols) = (dims[0], dims.get(1).copied().unwrap_or(1));
    let plane = rows * cols;
    let layers = shape.cell_count() / plane;
    let mut number = vec![0usize; shape.cell_count()];
    for (k, &c) in route.order().iter().enumerate() {
        number[c] = k + 1;
    }
    let width = shape.cell_count().to_string().len();
    let steps: Vec<String> = route.moves().steps().iter().map(|s| s.to_string()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "board {shape} move {} {}", steps.join(","), if closed { "closed" } else { "open" });
    let mut trailing = vec![0usize; dims.len().saturating_sub(2)];
    for layer in 0..layers {
        if !trailing.is_empty() {
            if layer > 0 {
                out.push('\n');
            }
            decode(layer, &dims[2..], &mut trailing);
            let coords: Vec<String> = trailing.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "layer {}", coords.join(","));
        }
        for i in 0..rows {
            let line: Vec<String> = (0..cols)
                .map(|j| {
                    let mut cell = vec![i, j];
                    cell.truncate(dims.len());
                    cell.extend_from_slice(&trailing);
                    let idx = shape.index(&cell).expect("on board");
                    format!("{:>width$}", number[idx])
                })
                .collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
    }
    out
}

fn decode(mut x: usize, dims: &[usize], out: &mut [usize]) {
    for j in (0..dims.len()).rev() {
        out[j] = x % dims[j];
        x /= dims[j];
    }
}

/// Reads layered text back into the route it was rendered from.
pub fn parse_rendered(text: &str) -> Result<(Route, bool), Error> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty rendering".into()))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (shape, moves, closed) = match words.as_slice() {
        ["board", shape, "move", steps, kind] => {
            let closed = match *kind {
                "closed" => true,
                "open" => false,
                other => return Err(Error::Parse(format!("unknown walk kind {other:?}"))),
            };
            (parse_shape(shape)?, parse_move(steps)?, closed)
        }
        _ => return Err(Error::Parse(format!("bad header {header:?}"))),
    };
    let numbers = read_numbers(&shape, lines)?;
    let mut order = vec![usize::MAX; numbers.len()];
    for (idx, &k) in numbers.iter().enumerate() {
        if k == 0 || k > order.len() || order[k - 1] != usize::MAX {
            return Err(Error::Parse(format!("position {k} is out of range or repeated")));
        }
        order[k - 1] = idx;
    }
    Ok((Route::new(shape, moves, order), closed))
}

/// Visit numbers indexed by flat cell index.
fn read_numbers<'a>(shape: &BoardShape, lines: impl Iterator<Item = &'a str>) -> Result<Vec<usize>, Error> {
    let dims = shape.dims();
    let (rows, cols) = (dims[0], dims.get(1).copied().unwrap_or(1));
    let mut numbers = vec![0usize; shape.cell_count()];
    let mut trailing = vec![0usize; dims.len().saturating_sub(2)];
    let mut row = 0;
    let mut layer = 0;
    for line in lines {
        if let Some(rest) = line.strip_prefix("layer ") {
            if row != 0 {
                return Err(Error::Parse(format!("layer {rest} starts inside a grid")));
            }
            decode(layer, &dims[2..], &mut trailing);
            let want: Vec<String> = trailing.iter().map(|c| c.to_string()).collect();
            if rest.trim() != want.join(",") {
                return Err(Error::Parse(format!("expected layer {}, found {rest}", want.join(","))));
            }
            continue;
        }
        let values: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
            .collect::<Result<_, _>>()?;
        if values.len() != cols || layer * rows * cols >= numbers.len() {
            return Err(Error::Parse(format!("unexpected row {line:?}")));
        }
        for (j, v) in values.into_iter().enumerate() {
            let mut cell = vec![row, j];
            cell.truncate(dims.len());
            cell.extend_from_slice(&trailing);
            numbers[shape.index(&cell).expect("on board")] = v;
        }
        row += 1;
        if row == rows {
            row = 0;
            layer += 1;
        }
    }
    if layer * rows * cols != numbers.len() {
        return Err(Error::Parse("rendering ends before the last layer".into()));
    }
    Ok(numbers)
}
