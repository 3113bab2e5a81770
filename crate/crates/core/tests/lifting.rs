use knight_tour_core::catalog::BaseLibrary;
use knight_tour_core::construct2d::construct_2d;
use knight_tour_core::construct3d::BisitedTour;
use knight_tour_core::constructnd::{lift_1b, lift_ab, stack};
use knight_tour_core::solver::{
    for_each_solution, solve, Budget, NoClock, SearchConstraints, SearchResult, SolverOptions,
};
use knight_tour_core::{
    find_ab_sites, find_sites, verify, BoardShape, ConstructError, Edge, MoveSpec, Site, Tour, Walk,
};

fn board(d: &[usize]) -> BoardShape {
    BoardShape::new(d.to_vec()).unwrap()
}

fn solved(shape: &BoardShape, moves: &MoveSpec, c: &SearchConstraints) -> Tour {
    match solve(shape, moves, c, Budget::nodes(10_000_000)).unwrap().result {
        SearchResult::Found(r) => Tour::from_route(r).unwrap(),
        other => panic!("{shape}: {other:?}"),
    }
}

#[test]
fn stacking_two_layers_adds_the_cross_edges_of_the_first_site() {
    let shape = board(&[5, 6]);
    let at = |i: usize, j: usize| shape.index(&[i, j]).unwrap();
    let c = SearchConstraints::closed().force(Edge::new(at(0, 2), at(1, 4))).force(Edge::new(at(0, 4), at(1, 2)));
    let t = solved(&shape, &MoveSpec::knight(), &c);
    let site = Site::new(&shape, [at(0, 2), at(1, 4)], [at(0, 4), at(1, 2)], 2).unwrap();
    let other = *find_sites(&t, 2).sites.iter().find(|s| **s > site && !s.shares_edge(&site)).unwrap();
    let s = stack(&BisitedTour::new(t, (site, other)).unwrap(), 2, 2).unwrap();
    assert!(verify(s.tour.route(), true).is_valid());
    let big = s.tour.shape().clone();
    let index = s.tour.edge_index();
    let cross = |u: [usize; 3], v: [usize; 3]| index.contains(Edge::from_cells(&big, &u, &v).unwrap());
    assert!(cross([0, 2, 0], [0, 4, 1]));
    assert!(cross([1, 4, 0], [1, 2, 1]));
}

#[test]
fn knight_lift_agrees_with_stacking() {
    let lib = BaseLibrary::bootstrapped().unwrap();
    let t = construct_2d(&lib, 5, 6).unwrap().into_tour();
    let lifted = lift_1b(&t, 2, &[3]).unwrap();
    let sites = find_sites(&t, 2).sites;
    let agrees = sites.iter().enumerate().any(|(i, s)| {
        sites[i + 1..].iter().filter(|o| !s.shares_edge(o)).any(|o| {
            let bt = BisitedTour::new(t.clone(), (*s, *o)).unwrap();
            stack(&bt, 3, 2).unwrap().tour == lifted
        })
    });
    assert!(agrees);
}

#[test]
fn lifting_a_one_four_tour() {
    let moves = MoveSpec::leaper(1, 4).unwrap();
    let t = solved(&board(&[10, 10]), &moves, &SearchConstraints::closed());
    let lifted = lift_1b(&t, 4, &[3]).unwrap();
    assert_eq!(lifted.shape().dims(), &[10, 10, 3]);
    assert!(verify(lifted.route(), true).is_valid());
}

#[test]
fn knight_lift_through_ab_sites() {
    let lib = BaseLibrary::bootstrapped().unwrap();
    let t = [(6, 6), (5, 8), (8, 8)]
        .into_iter()
        .map(|(n, m)| construct_2d(&lib, n, m).unwrap().into_tour())
        .find(|t| find_ab_sites(t, 1, 2).len() >= 4)
        .expect("a seeded tour with four (1,2)-sites");
    let lifted = lift_ab(&t, 1, 2, 5).unwrap();
    let mut dims = t.shape().dims().to_vec();
    dims.push(5);
    assert_eq!(lifted.shape().dims(), dims.as_slice());
    assert!(verify(lifted.route(), true).is_valid());
    assert!(find_ab_sites(&lifted, 1, 2).len() >= 4);
    assert_eq!(lift_ab(&t, 1, 2, 3), Err(ConstructError::LayerBudget { layers: 3, needed: 4 }));
}

#[test]
fn too_few_ab_sites_are_rejected() {
    let mut sparse = None;
    for_each_solution(
        &board(&[4, 3, 2]),
        &MoveSpec::knight(),
        &SearchConstraints::closed(),
        Budget::UNLIMITED,
        SolverOptions::default(),
        &NoClock,
        |r| {
            let t = Tour::from_route(r.clone()).unwrap();
            if find_ab_sites(&t, 1, 2).len() < 4 {
                sparse = Some(t);
                return false;
            }
            true
        },
    )
    .unwrap();
    let t = sparse.expect("a 4x3x2 tour with three (1,2)-sites");
    assert_eq!(lift_ab(&t, 1, 2, 4), Err(ConstructError::InsufficientSites { found: 3 }));
}
