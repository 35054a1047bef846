mod props;

const CASES: u32 = 24;

fn check(name: &str) {
    let (_, suite) = props::SUITES.iter().find(|(n, _)| *n == name).unwrap();
    if let Err(e) = suite(CASES) {
        panic!("{name}: {e}");
    }
}

#[test]
fn spanning_forests_are_vertices() {
    check("spanning_forests_are_vertices");
}

#[test]
fn rank_plus_nullity() {
    check("rank_plus_nullity");
}

#[test]
fn northwest_corner_is_vertex() {
    check("northwest_corner_is_vertex");
}

#[test]
fn axial_northwest_corner_is_vertex() {
    check("axial_northwest_corner_is_vertex");
}

#[test]
fn chamber_to_chamber_identity() {
    check("chamber_to_chamber_identity");
}

#[test]
fn wedge_increments() {
    check("wedge_increments");
}

#[test]
fn one_point_suspension_closed_form() {
    check("one_point_suspension_closed_form");
}

#[test]
fn pivot_adjacency_matches_rank_test() {
    check("pivot_adjacency_matches_rank_test");
}

#[test]
fn forest_oracle_sanity() {
    props::forest_oracle_sanity();
}
