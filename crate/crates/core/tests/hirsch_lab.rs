use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use transpoly::exact_core::halfspace::HalfspaceSystem;
use transpoly::exact_core::rational::{frac, q, qvec, Q};
use transpoly::hirsch_lab::*;
use transpoly::transport_model::{is_generic_classical, TransportSpec};
use transpoly::vertex_enum::{adjacent, analyze, count_facets_of, diameter, is_vertex, Table};

#[test]
fn q4_counts_and_distance() {
    let r = verify_q4().unwrap();
    assert_eq!(
        (r.facets, r.facets_avoiding_w, r.distance_abcd_efgh),
        (27, 15, 5)
    );
}

#[test]
fn q4_antistar_graph() {
    let expected = [
        "abcd-acde",
        "acde-adeh",
        "acde-cdeh",
        "adeh-cdeh",
        "cdeh-bceh",
        "bceh-begh",
        "begh-efgh",
        "adeh-adgh",
        "cdeh-cdgh",
        "bceh-bcgh",
        "begh-bcgh",
        "adgh-cdgh",
        "cdgh-bcgh",
        "adgh-afgh",
        "adgh-adfg",
        "cdgh-cdfg",
        "bcgh-bcfg",
        "efgh-afgh",
        "afgh-adfg",
        "adfg-cdfg",
        "cdfg-bcfg",
        "cdfg-bcdf",
        "bcfg-bcdf",
        "bcdf-abcd",
    ];
    let want: BTreeSet<(String, String)> = expected
        .iter()
        .map(|e| {
            let (a, b) = e.split_once('-').unwrap();
            if a < b {
                (a.to_string(), b.to_string())
            } else {
                (b.to_string(), a.to_string())
            }
        })
        .collect();
    let got: BTreeSet<(String, String)> = verify_q4().unwrap().antistar_edges.into_iter().collect();
    assert_eq!(got, want);
}

#[test]
fn q4_polar_diameter() {
    let h = analyze_h(&klee_walkup_h_polytope()).unwrap();
    assert_eq!(h.vertices.len(), 27);
    assert_eq!(h.facet_rows.len(), 9);
    assert_eq!(h.diameter().unwrap(), 5);
}

fn polygon(ts: &[(i64, i64)]) -> HalfspaceSystem {
    let mut sys = HalfspaceSystem::new(2);
    for &(n, d) in ts {
        let t = frac(n, d);
        let den = Q::from_integer(1.into()) + &t * &t;
        let x = (Q::from_integer(1.into()) - &t * &t) / &den;
        let y = (q(2) * &t) / &den;
        sys.add_weak(vec![-x, -y], q(-1));
    }
    sys
}

#[test]
fn pentagon_wedge() {
    let pent = polygon(&[(0, 1), (1, 2), (2, 1), (-2, 1), (-1, 2)]);
    let h = analyze_h(&pent).unwrap();
    assert_eq!((h.vertices.len(), h.facet_rows.len()), (5, 5));
    let w = analyze_h(&wedge(&pent, 0).unwrap()).unwrap();
    assert_eq!(w.facet_rows.len(), 6);
    assert_eq!(w.vertices.len(), 8);
    assert!(w.diameter().unwrap() >= h.diameter().unwrap());
}

#[test]
fn segment_wedge_is_triangle() {
    let mut seg = HalfspaceSystem::new(1);
    seg.add_weak(qvec(&[1]), q(0));
    seg.add_weak(qvec(&[-1]), q(-1));
    let w = analyze_h(&wedge(&seg, 0).unwrap()).unwrap();
    assert_eq!((w.vertices.len(), w.facet_rows.len()), (3, 3));
}

#[test]
fn q4_wedge_keeps_distance() {
    let q4 = klee_walkup_h_polytope();
    let w = analyze_h(&wedge(&q4, 8).unwrap()).unwrap();
    assert_eq!(w.facet_rows.len(), 10);
    assert!(w.diameter().unwrap() >= 5);
}

#[test]
fn wedge_rejects_redundant_row() {
    let mut sq = polygon(&[(0, 1), (2, 1), (-2, 1)]);
    sq.add_weak(qvec(&[1, 0]), q(-5));
    assert!(wedge(&sq, 3).is_err());
}

fn pentagon_complex() -> SimplicialComplexData {
    SimplicialComplexData::new(&[
        &["1", "2"],
        &["2", "3"],
        &["3", "4"],
        &["4", "5"],
        &["5", "1"],
    ])
}

#[test]
fn ops_pentagon() {
    let s = one_point_suspension(&pentagon_complex(), "1").unwrap();
    assert_eq!(s.faces.len(), 8);
    assert!(s.faces.iter().all(|f| f.len() == 3));
    assert!(s.is_pure());
}

#[test]
fn ops_iterated_matches_closed_form() {
    let k = pentagon_complex();
    for times in 1..=3 {
        assert_eq!(
            one_point_suspension_iterated(&k, "1", times).unwrap(),
            one_point_suspension_closed(&k, "1", times).unwrap()
        );
    }
    assert!(one_point_suspension(&k, "9").is_err());
}

#[test]
fn hirsch_sharp_3x5() {
    let pair = hirsch_sharp_pair(3, 5).unwrap();
    let rows = |t: &Table| {
        t.rows2()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_integer().try_into().unwrap())
                    .collect()
            })
            .collect::<Vec<Vec<i64>>>()
    };
    assert_eq!(
        rows(&pair.v),
        vec![
            vec![3, 2, 0, 0, 0],
            vec![0, 1, 3, 1, 0],
            vec![0, 0, 0, 2, 3]
        ]
    );
    assert_eq!(
        rows(&pair.v_prime),
        vec![
            vec![0, 0, 2, 3, 0],
            vec![2, 0, 0, 0, 3],
            vec![1, 3, 1, 0, 0]
        ]
    );
    assert!(pair.disjoint);
    assert!(
        is_vertex(&pair.spec, &pair.v).unwrap() && is_vertex(&pair.spec, &pair.v_prime).unwrap()
    );
    let a = analyze(&pair.spec).unwrap();
    let (n, d, diam, sharp) = hirsch_report(&a, 8).unwrap();
    assert_eq!((n, d, diam, sharp), (15, 8, 7, true));
    let (i, j) = (
        a.graph.index_of(&pair.v).unwrap(),
        a.graph.index_of(&pair.v_prime).unwrap(),
    );
    assert_eq!(a.graph.distance(i, j), Some(7));
}

#[test]
fn hirsch_sharp_wide() {
    for (p, qq) in [(3, 7), (3, 8), (4, 9)] {
        let pair = hirsch_sharp_pair(p, qq).unwrap();
        assert!(pair.disjoint, "{p}x{qq}");
        assert!(is_vertex(&pair.spec, &pair.v_prime).unwrap());
        assert_eq!(pair.distance_lower_bound, p + qq - 1);
    }
    assert!(hirsch_sharp_pair(3, 6).is_err());
    assert!(hirsch_sharp_pair(4, 5).is_err());
}

fn random_generic_px2(rng: &mut StdRng, p: usize) -> (Vec<Q>, Vec<Q>) {
    loop {
        let u: Vec<i64> = (0..p).map(|_| rng.gen_range(1..40)).collect();
        let s: i64 = u.iter().sum();
        let a = rng.gen_range(1..s);
        let (u, v) = (qvec(&u), qvec(&[a, s - a]));
        if is_generic_classical(&u, &v).unwrap() {
            return (u, v);
        }
    }
}

#[test]
fn px2_paths_respect_bound() {
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..25 {
        let p = rng.gen_range(2..=5);
        let (u, v) = random_generic_px2(&mut rng, p);
        let spec = TransportSpec::classical(u.clone(), v.clone()).unwrap();
        let a = analyze(&spec).unwrap();
        let n = count_facets_of(&a);
        let bound = n - (p - 1);
        assert!(diameter(&a.graph).unwrap() <= bound);
        let sigs: BTreeSet<String> = a.graph.vertices.iter().map(side_signature).collect();
        assert_eq!(sigs.len(), a.graph.vertices.len());
        for s in &a.graph.vertices {
            for t in &a.graph.vertices {
                let path = px2_path_in(&a, s, t).unwrap();
                assert!(path.len() <= bound);
                let mut cur = s.clone();
                for st in &path {
                    assert_eq!(st.from, cur);
                    assert!(adjacent(&spec, &st.from, &st.to).unwrap());
                    cur = st.to.clone();
                }
                assert_eq!(&cur, t);
            }
        }
    }
}

#[test]
fn px2_corner_cut() {
    let (u, v) = (qvec(&[5, 6, 7, 8]), qvec(&[25, 1]));
    let spec = TransportSpec::classical(u.clone(), v.clone()).unwrap();
    let a = analyze(&spec).unwrap();
    assert_eq!(a.graph.vertices.len(), 4);
    assert_eq!(count_facets_of(&a), 4);
    let first = &a.graph.vertices[0];
    let last = a.graph.vertices.last().unwrap();
    assert_eq!(px2_path(&u, &v, first, last).unwrap().len(), 1);
}

fn generic_demands(rng: &mut StdRng, n: usize) -> Vec<Q> {
    let rest: Vec<Q> = (1..n).map(|_| q(rng.gen_range(1..1000))).collect();
    let total: Q = rest.iter().sum();
    std::iter::once(-total).chain(rest).collect()
}

#[test]
fn gnk_paths() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 2..=5 {
        for k in 1..n.min(4) {
            let mut tries = 0;
            let (net, a) = loop {
                tries += 1;
                let net = FlowNetwork::gnk(n, k, generic_demands(&mut rng, n)).unwrap();
                let a = flow_analysis(&net).unwrap();
                if a.nondegenerate || tries > 50 {
                    break (net, a);
                }
            };
            assert!(a.nondegenerate, "n={n} k={k}");
            assert!(net.has_intermediate_property());
            let poly = flow_polytope(&net).unwrap();
            for t in &a.graph.vertices {
                let path = gnk_canonical_path(&net, t).unwrap();
                assert!(path.len() <= net.arcs.len());
                for st in &path {
                    assert!(poly.adjacent(&st.from.values, &st.to.values));
                }
            }
            assert!(diameter(&a.graph).unwrap() <= 2 * net.arcs.len());
        }
    }
}

#[test]
fn flow_rejects_bad_networks() {
    let cyc = FlowNetwork {
        n: 3,
        arcs: vec![(1, 2), (2, 3), (3, 1)],
        demands: qvec(&[1, 0, -1]),
    };
    assert!(cyc.validate().is_err());
    let unbalanced = FlowNetwork::gnk(3, 1, qvec(&[1, 1, 1])).unwrap();
    assert!(flow_polytope(&unbalanced).is_err());
    let gap = FlowNetwork {
        n: 3,
        arcs: vec![(2, 1), (3, 2), (3, 1)],
        demands: qvec(&[5, 3, -8]),
    };
    assert!(gap.has_intermediate_property());
    let no_path = FlowNetwork {
        n: 3,
        arcs: vec![(3, 2), (3, 1)],
        demands: qvec(&[5, 3, -8]),
    };
    assert!(!no_path.has_intermediate_property());
}
