//! Canonical tour JSON:
//! `{"shape":[..],"move":[..],"closed":bool,"cells":[[..],..]}` with cells in
//! visit order and no repeated first cell, written compactly with a
//! trailing newline.

use knight_tour_core::{BoardShape, MoveSpec, Route};
use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TourFile {
    pub shape: Vec<usize>,
    #[serde(rename = "move")]
    pub moves: Vec<usize>,
    pub closed: bool,
    pub cells: Vec<Vec<usize>>,
}

impl TourFile {
    pub fn from_route(route: &Route, closed: bool) -> Self {
        TourFile {
            shape: route.shape().dims().to_vec(),
            moves: route.moves().steps().to_vec(),
            closed,
            cells: route.order().iter().map(|&i| route.shape().cell(i).0).collect(),
        }
    }

    /// The route, with coordinates checked but the walk itself unverified.
    pub fn to_route(&self) -> Result<Route, Error> {
        let shape = BoardShape::new(self.shape.clone())?;
        let moves = MoveSpec::new(self.moves.clone())?;
        let mut order = Vec::with_capacity(self.cells.len());
        for (i, c) in self.cells.iter().enumerate() {
            let idx =
                shape.index(c).ok_or_else(|| Error::Parse(format!("cell {i} {c:?} does not fit the {shape} board")))?;
            order.push(idx);
        }
        Ok(Route::new(shape, moves, order))
    }
}

pub fn to_json(route: &Route, closed: bool) -> String {
    let mut s = serde_json::to_string(&TourFile::from_route(route, closed)).expect("plain data serializes");
    s.push('\n');
    s
}

/// Parses a tour file into its route and `closed` flag.
pub fn from_json(s: &str) -> Result<(Route, bool), Error> {
    let file: TourFile = serde_json::from_str(s)?;
    Ok((file.to_route()?, file.closed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_layout() {
        let shape = BoardShape::new(vec![3, 4]).unwrap();
        let route = Route::new(shape, MoveSpec::knight(), vec![0, 6, 8]);
        let s = to_json(&route, false);
        assert_eq!(s, "{\"shape\":[3,4],\"move\":[1,2],\"closed\":false,\"cells\":[[0,0],[1,2],[2,0]]}\n");
        assert_eq!(from_json(&s).unwrap(), (route, false));
        assert!(from_json("{\"shape\":[3,4],\"move\":[1,2],\"closed\":true,\"cells\":[[3,0]]}").is_err());
    }
}
