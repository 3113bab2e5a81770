//! Command-line notation: shapes `5x6x2`, moves `1,2`, cells `0,2,1` and
//! edges `0,2:1,4`.

use knight_tour_core::{BoardShape, Edge, MoveSpec};

use crate::Error;

fn numbers(s: &str, sep: char, what: &str) -> Result<Vec<usize>, Error> {
    s.split(sep)
        .map(|tok| tok.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad {what} token {tok:?} in {s:?}"))))
        .collect()
}

pub fn parse_shape(s: &str) -> Result<BoardShape, Error> {
    let dims = numbers(&s.to_ascii_lowercase(), 'x', "dimension")?;
    Ok(BoardShape::new(dims)?)
}

pub fn parse_move(s: &str) -> Result<MoveSpec, Error> {
    Ok(MoveSpec::new(numbers(s, ',', "step")?)?)
}

pub fn parse_cell(shape: &BoardShape, s: &str) -> Result<usize, Error> {
    let coords = numbers(s, ',', "coordinate")?;
    if coords.len() != shape.rank() {
        return Err(Error::Parse(format!("cell {s:?} needs {} coordinates", shape.rank())));
    }
    shape.index(&coords).ok_or_else(|| Error::Parse(format!("cell {s:?} is off the {shape} board")))
}

pub fn parse_edge(shape: &BoardShape, s: &str) -> Result<Edge, Error> {
    let (u, v) = s.split_once(':').ok_or_else(|| Error::Parse(format!("edge {s:?} is not of the form u:v")))?;
    Ok(Edge::new(parse_cell(shape, u)?, parse_cell(shape, v)?))
}

pub fn parse_endpoints(shape: &BoardShape, s: &str) -> Result<(usize, usize), Error> {
    let e = parse_edge(shape, s)?;
    let (u, _) = s.split_once(':').expect("checked by parse_edge");
    let start = parse_cell(shape, u)?;
    Ok(if start == e.a() { (e.a(), e.b()) } else { (e.b(), e.a()) })
}
