use std::collections::BTreeSet;

use transpoly::exact_core::rational::{q, qvec};
use transpoly::transport_model::TransportSpec;
use transpoly::vertex_enum::*;

fn p33() -> TransportSpec {
    TransportSpec::classical(qvec(&[5, 5, 1]), qvec(&[2, 7, 2])).unwrap()
}

#[test]
fn p33_has_the_twelve_listed_vertices() {
    let listed = [
        [2, 2, 1, 0, 5, 0, 0, 0, 1],
        [2, 1, 2, 0, 5, 0, 0, 1, 0],
        [1, 2, 2, 0, 5, 0, 1, 0, 0],
        [1, 4, 0, 0, 3, 2, 1, 0, 0],
        [2, 3, 0, 0, 3, 2, 0, 1, 0],
        [2, 3, 0, 0, 4, 1, 0, 0, 1],
        [0, 4, 1, 2, 3, 0, 0, 0, 1],
        [0, 3, 2, 2, 3, 0, 0, 1, 0],
        [0, 3, 2, 1, 4, 0, 1, 0, 0],
        [0, 5, 0, 2, 2, 1, 0, 0, 1],
        [0, 5, 0, 2, 1, 2, 0, 1, 0],
        [0, 5, 0, 1, 2, 2, 1, 0, 0],
    ];
    let expected: BTreeSet<Vec<_>> = listed.iter().map(|z| qvec(z)).collect();
    let g = polytope_graph(&p33()).unwrap();
    let got: BTreeSet<Vec<_>> = g.vertices.iter().map(|t| t.values.clone()).collect();
    assert_eq!(got, expected);
    assert!(g.degrees().iter().all(|&d| d == 4));
    assert_eq!(diameter(&g).unwrap(), 3);
    assert_eq!(count_facets(&p33()).unwrap(), 7);
    assert_eq!(count_facets_affine(&g.vertices), 7);
    let _ = q(0);
}

#[test]
fn generalized_birkhoff_3x5() {
    let spec = TransportSpec::classical(qvec(&[5, 5, 5]), qvec(&[3, 3, 3, 3, 3])).unwrap();
    let a = analyze(&spec).unwrap();
    assert!(a.nondegenerate);
    eprintln!("vertices {}", a.graph.vertices.len());
    assert_eq!(diameter(&a.graph).unwrap(), 7);
    assert_eq!(count_facets_of(&a), 15);
}
