use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use transpoly::exact_core::rational::{q, qvec, Q};
use transpoly::polytope::PartitionPolytope;
use transpoly::transport_model::*;
use transpoly::vertex_enum::{analyze, Table};

fn random_planar(rng: &mut StdRng, sizes: [usize; 3]) -> TransportSpec {
    let n = sizes.iter().product();
    let x: Vec<Q> = (0..n).map(|_| q(rng.gen_range(0..6))).collect();
    let nb = sizes[1] * sizes[2] + sizes[0] * sizes[2] + sizes[0] * sizes[1];
    let probe = TransportSpec::with_rhs(Kind::Planar3, &sizes, &vec![q(0); nb]).unwrap();
    TransportSpec::with_rhs(Kind::Planar3, &sizes, &probe.margins_of(&x)).unwrap()
}

#[test]
fn rank_matches_closed_forms() {
    for (kind, sizes) in [
        (Kind::Classical, vec![3, 3]),
        (Kind::Classical, vec![2, 5]),
        (Kind::Axial3, vec![2, 2, 2]),
        (Kind::Axial3, vec![2, 3, 4]),
        (Kind::Planar3, vec![2, 2, 3]),
        (Kind::Planar3, vec![3, 3, 3]),
    ] {
        assert_eq!(
            build_matrix(kind, &sizes).rank(),
            expected_rank(kind, &sizes),
            "{kind:?} {sizes:?}"
        );
    }
    let ax = TransportSpec::axial(qvec(&[4, 4]), qvec(&[4, 4]), qvec(&[4, 4])).unwrap();
    let sys = build_constraints(&ax);
    assert_eq!((sys.a.rows(), sys.a.cols(), sys.a.rank()), (6, 8, 4));
}

#[test]
fn printed_constraint_matrix() {
    let spec = TransportSpec::classical(qvec(&[5, 5, 1]), qvec(&[2, 7, 2])).unwrap();
    let sys = build_constraints(&spec);
    assert_eq!(sys.b, qvec(&[2, 7, 2, 5, 5, 1]));
    assert_eq!(sys.a.rank(), 5);
    assert_eq!(dimension(&spec).unwrap(), 4);
}

#[test]
fn genericity() {
    assert!(is_generic_classical(&qvec(&[5, 5, 1]), &qvec(&[2, 7, 2])).unwrap());
    assert!(!is_generic_classical(&qvec(&[1, 1]), &qvec(&[1, 1])).unwrap());
    assert!(is_generic_classical(&qvec(&[5, 5, 5]), &qvec(&[3, 3, 3, 3, 3])).unwrap());
    let b2 = TransportSpec::classical(qvec(&[1, 1]), qvec(&[1, 1])).unwrap();
    assert!(!is_nondegenerate(&b2).unwrap());
    let fixed = perturb(&b2, &Q::new(1.into(), 10.into())).unwrap();
    assert!(is_nondegenerate(&fixed).unwrap());
}

#[test]
fn generic_iff_nondegenerate_small() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..150 {
        let p = rng.gen_range(1..=4);
        let qq = rng.gen_range(1..=4);
        let mut u: Vec<i64> = (0..p).map(|_| rng.gen_range(1..8)).collect();
        let mut v: Vec<i64> = (0..qq).map(|_| rng.gen_range(1..8)).collect();
        let (su, sv): (i64, i64) = (u.iter().sum(), v.iter().sum());
        if su > sv {
            v[0] += su - sv;
        } else {
            u[0] += sv - su;
        }
        let spec = TransportSpec::classical(qvec(&u), qvec(&v)).unwrap();
        assert_eq!(
            is_generic_classical(&qvec(&u), &qvec(&v)).unwrap(),
            is_nondegenerate(&spec).unwrap(),
            "{u:?} {v:?}"
        );
    }
}

#[test]
fn iso_22n_round_trip() {
    let mut rng = StdRng::seed_from_u64(22);
    for p in 1..=4 {
        for _ in 0..6 {
            let spec = random_planar(&mut rng, [2, 2, p]);
            let iso = planar_2x2xp_to_classical(&spec).unwrap();
            let left = analyze(&spec).unwrap().graph;
            let right = analyze(&iso.classical).unwrap().graph;
            assert_eq!(left.vertices.len(), right.vertices.len());
            assert_eq!(left.edge_count(), right.edge_count());
            for (i, x) in left.vertices.iter().enumerate() {
                let y = iso.to_classical(x);
                assert_eq!(&iso.to_planar(&y), x);
                let j = right.index_of(&y).expect("image is a vertex");
                let mapped: BTreeSet<usize> = left.adjacency[i]
                    .iter()
                    .map(|&k| {
                        right
                            .index_of(&iso.to_classical(&left.vertices[k]))
                            .unwrap()
                    })
                    .collect();
                assert_eq!(mapped, right.adjacency[j].iter().copied().collect());
            }
        }
    }
}

#[test]
fn iso_22n_converse() {
    let rows = qvec(&[3, 1, 4]);
    let cols = qvec(&[5, 3]);
    let planar = classical_to_planar_22n(&rows, &cols).unwrap();
    let classical = TransportSpec::classical(rows, cols).unwrap();
    let a = analyze(&classical).unwrap().graph;
    let b = analyze(&planar).unwrap().graph;
    assert_eq!(a.vertices.len(), b.vertices.len());
    for y in &a.vertices {
        assert!(b.index_of(&classical_table_to_planar_22n(y)).is_some());
    }
    let one = TransportSpec::planar(
        vec![qvec(&[2]), qvec(&[1])],
        vec![qvec(&[2]), qvec(&[1])],
        vec![qvec(&[1, 1]), qvec(&[1, 0])],
    )
    .unwrap();
    let iso = planar_2x2xp_to_classical(&one).unwrap();
    assert_eq!(iso.classical.sizes(), vec![1, 2]);
}

fn bounded_vertices(bt: &BoundedTransport) -> BTreeSet<Vec<Q>> {
    let (a, b) = bt.constraint_system();
    let poly = PartitionPolytope::new(&a, &b).unwrap();
    let (start, _) = poly.find_vertex().unwrap();
    let ex = poly.explore(&start, false, 100_000).unwrap();
    let n = bt.row_sums.len() * bt.col_sums.len();
    ex.points.iter().map(|x| x[..n].to_vec()).collect()
}

#[test]
fn planar_2pq_bounded() {
    let mut rng = StdRng::seed_from_u64(3);
    let mut counts = BTreeSet::new();
    for _ in 0..40 {
        let spec = random_planar(&mut rng, [2, 2, 3]);
        let bt = planar_2pq_to_bounded(&spec).unwrap();
        let a = analyze(&spec).unwrap();
        let projected: BTreeSet<Vec<Q>> =
            a.graph.vertices.iter().map(project_first_slice).collect();
        assert_eq!(projected, bounded_vertices(&bt));
        assert_eq!(bounded_to_planar(&bt).unwrap(), spec);
        if a.nondegenerate {
            counts.insert(a.graph.vertices.len());
        }
    }
    assert!(counts.iter().all(|c| (3..=6).contains(c)), "{counts:?}");
    let zero = TransportSpec::planar(
        vec![qvec(&[0, 0, 0]); 2],
        vec![qvec(&[0, 0, 0]); 2],
        vec![qvec(&[0, 0]); 2],
    )
    .unwrap();
    let g = analyze(&zero).unwrap().graph;
    assert_eq!(g.vertices, vec![Table::zeros(&[2, 2, 3])]);
}
