use std::collections::BTreeSet;
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use transpoly::chamber_enum::{
    classical_gcd, gcd_step_check, Chamber, ChamberComplex, MAX_CHAMBERS,
};
use transpoly::exact_core::matrix::Matrix;
use transpoly::exact_core::rational::{q, Q};
use transpoly::exact_core::HalfspaceSystem;
use transpoly::hirsch_lab::{
    analyze_h, one_point_suspension_closed, one_point_suspension_iterated, wedge,
    SimplicialComplexData,
};
use transpoly::transport_model::{Kind, TransportSpec};
use transpoly::vertex_enum::*;

fn qs(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

/// Margins with equal totals, each entry positive.
fn margins(p: usize, qq: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (
        prop::collection::vec(1i64..9, p),
        prop::collection::vec(1i64..9, qq - 1),
    )
        .prop_map(|(u, mut v)| {
            let (su, sv): (i64, i64) = (u.iter().sum(), v.iter().sum());
            let mut u = u;
            if sv >= su {
                u[0] += sv - su + 1;
            }
            v.push(u.iter().sum::<i64>() - v.iter().sum::<i64>());
            (u, v)
        })
}

/// Vertices from every spanning tree of K_{p,q} whose unique table is nonnegative.
fn tree_vertices(u: &[Q], v: &[Q]) -> BTreeSet<Vec<Q>> {
    let (p, qq) = (u.len(), v.len());
    let mut out = BTreeSet::new();
    for tree in (0..p * qq).combinations(p + qq - 1) {
        // the last column-sum equation is implied by the others
        let mut a = Matrix::zeros(p + qq - 1, tree.len());
        for (k, &c) in tree.iter().enumerate() {
            a.set(c / qq, k, q(1));
            if c % qq + 1 < qq {
                a.set(p + c % qq, k, q(1));
            }
        }
        if a.rank() < p + qq - 1 {
            continue;
        }
        let b: Vec<Q> = u.iter().chain(&v[..qq - 1]).cloned().collect();
        let Some(x) = a.solve(&b) else { continue };
        if x.iter().any(|t| t.is_negative()) {
            continue;
        }
        let mut full = vec![q(0); p * qq];
        for (k, &c) in tree.iter().enumerate() {
            full[c] = x[k].clone();
        }
        out.insert(full);
    }
    out
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn chambers_3x3() -> &'static (ChamberComplex, Vec<Chamber>) {
    static C: OnceLock<(ChamberComplex, Vec<Chamber>)> = OnceLock::new();
    C.get_or_init(|| {
        let cx = ChamberComplex::for_kind(Kind::Classical, &[3, 3]).unwrap();
        let cs = cx.enumerate(MAX_CHAMBERS).unwrap();
        (cx, cs)
    })
}

/// Polygon circumscribed about the unit circle, tangent at rational points.
fn polygon(ts: &[(i64, i64)]) -> HalfspaceSystem {
    let mut sys = HalfspaceSystem::new(2);
    let mut pts: Vec<(Q, Q)> = vec![(q(1), q(0)), (q(0), q(1)), (q(-1), q(0)), (q(0), q(-1))];
    for &(m, n) in ts {
        let d = Q::from_integer((m * m + n * n).into());
        pts.push((
            Q::from_integer((m * m - n * n).into()) / &d,
            Q::from_integer((2 * m * n).into()) / &d,
        ));
    }
    pts.sort();
    pts.dedup();
    for (c, s) in pts {
        sys.add_weak(vec![-c, -s], q(-1));
    }
    sys
}

fn complex_from(faces: &[Vec<usize>]) -> SimplicialComplexData {
    let owned: Vec<Vec<String>> = faces
        .iter()
        .map(|f| f.iter().map(|i| format!("v{i}")).collect())
        .collect();
    let refs: Vec<Vec<&str>> = owned
        .iter()
        .map(|f| f.iter().map(String::as_str).collect())
        .collect();
    let slices: Vec<&[&str]> = refs.iter().map(Vec::as_slice).collect();
    SimplicialComplexData::new(&slices)
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn spanning_forests_are_vertices(cases: u32) -> Result<(), String> {
    run(
        cases,
        prop_oneof![
            Just((2usize, 2usize)),
            Just((2, 3)),
            Just((3, 3)),
            Just((2, 4)),
            Just((3, 4))
        ]
        .prop_flat_map(|(p, qq)| margins(p, qq)),
        |(u, v)| {
            let (u, v) = (qs(&u), qs(&v));
            let a = analyze(&TransportSpec::classical(u.clone(), v.clone()).unwrap()).unwrap();
            let found: BTreeSet<Vec<Q>> =
                a.graph.vertices.iter().map(|t| t.values.clone()).collect();
            prop_assert_eq!(&found, &tree_vertices(&u, &v));
            prop_assert!(a.graph.vertices.iter().all(support_is_forest));
            Ok(())
        },
    )
}

pub fn rank_plus_nullity(cases: u32) -> Result<(), String> {
    run(
        cases,
        (1usize..6, 1usize..7, prop::collection::vec(-3i64..4, 42)),
        |(rows, cols, entries)| {
            let m = Matrix::from_int_rows(
                &(0..rows)
                    .map(|i| entries[i * cols..(i + 1) * cols].to_vec())
                    .collect::<Vec<_>>(),
            );
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), cols);
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            Ok(())
        },
    )
}

pub fn northwest_corner_is_vertex(cases: u32) -> Result<(), String> {
    run(
        cases,
        (margins(4, 4), permutation(4), permutation(4)),
        |((u, v), sigma, tau)| {
            let (u, v) = (qs(&u), qs(&v));
            let spec = TransportSpec::classical(u.clone(), v.clone()).unwrap();
            let t = northwest_corner(&u, &v, &sigma, &tau).unwrap();
            prop_assert!(is_vertex(&spec, &t).unwrap());
            prop_assert!(support_is_forest(&t));
            prop_assert!(t.support().len() < 8);
            prop_assert_eq!(spec.margins_of(&t.values), spec.rhs());
            Ok(())
        },
    )
}

pub fn axial_northwest_corner_is_vertex(cases: u32) -> Result<(), String> {
    run(
        cases,
        (
            prop::collection::vec(1i64..6, 2),
            prop::collection::vec(1i64..6, 3),
            1i64..4,
        ),
        |(u, v, w0)| {
            let total: i64 = u.iter().sum::<i64>().max(v.iter().sum::<i64>()) + w0;
            let mut u = u;
            let mut v = v;
            let su: i64 = u.iter().sum();
            u[0] += total - su;
            let sv: i64 = v.iter().sum();
            v[0] += total - sv;
            let w = vec![w0, total - w0];
            let spec = TransportSpec::axial(qs(&u), qs(&v), qs(&w)).unwrap();
            let t = northwest_corner_axial(&qs(&u), &qs(&v), &qs(&w));
            prop_assume!(!matches!(t, Err(transpoly::Error::Degenerate(_))));
            let t = t.unwrap();
            prop_assert!(is_vertex(&spec, &t).unwrap());
            Ok(())
        },
    )
}

pub fn chamber_to_chamber_identity(cases: u32) -> Result<(), String> {
    run(cases, (0usize..64, 0usize..16), |(i, j)| {
        let (cx, cs) = chambers_3x3();
        let c = &cs[i % cs.len()];
        let inner: Vec<_> = cx
            .facets(c)
            .unwrap()
            .into_iter()
            .filter(|f| !cx.is_outer(f))
            .collect();
        prop_assume!(!inner.is_empty());
        let f = &inner[j % inner.len()];
        let d = cx.cross(c, f).unwrap();
        prop_assert_ne!(&d.bases, &c.bases);
        let step = gcd_step_check(cx, c, &d, classical_gcd(3, 3)).unwrap();
        // |C+| - |C-| = |C+ \ C-| - |C- \ C+|, both sides counted from the basis sets
        let plus: BTreeSet<_> = d.bases.iter().collect();
        let minus: BTreeSet<_> = c.bases.iter().collect();
        let gained = plus.difference(&minus).count() as i64;
        let lost = minus.difference(&plus).count() as i64;
        prop_assert_eq!(step.c_plus as i64 - step.c_minus as i64, gained - lost);
        prop_assert!(step.identity_holds, "{:?}", step);
        prop_assert!(step.divisible, "{:?}", step);
        Ok(())
    })
}

pub fn wedge_increments(cases: u32) -> Result<(), String> {
    run(
        cases,
        (prop::collection::vec((1i64..7, 1i64..7), 0..4), 0usize..16),
        |(ts, pick)| {
            let sys = polygon(&ts);
            let h = analyze_h(&sys).unwrap();
            let row = h.facet_rows[pick % h.facet_rows.len()];
            let on_facet = h.tight.iter().filter(|t| t.contains(&row)).count();
            let w = analyze_h(&wedge(&sys, row).unwrap()).unwrap();
            prop_assert_eq!(w.facet_rows.len(), h.facet_rows.len() + 1);
            prop_assert_eq!(w.vertices[0].len(), 3);
            prop_assert_eq!(w.vertices.len(), 2 * h.vertices.len() - on_facet);
            prop_assert!(w.diameter().unwrap() >= h.diameter().unwrap());
            Ok(())
        },
    )
}

pub fn one_point_suspension_closed_form(cases: u32) -> Result<(), String> {
    run(
        cases,
        (
            prop::collection::btree_set(prop::collection::btree_set(0usize..6, 3), 1..6),
            0usize..16,
            1usize..=3,
        ),
        |(faces, pick, times)| {
            let faces: Vec<Vec<usize>> = faces
                .into_iter()
                .map(|f| f.into_iter().collect())
                .filter(|f: &Vec<usize>| f.len() == 3)
                .collect();
            prop_assume!(!faces.is_empty());
            let k = complex_from(&faces);
            let w = k.labels[pick % k.labels.len()].clone();
            let iter = one_point_suspension_iterated(&k, &w, times).unwrap();
            let closed = one_point_suspension_closed(&k, &w, times).unwrap();
            prop_assert_eq!(&iter, &closed);
            let (with_w, without) = k.faces.iter().partition::<Vec<_>, _>(|f| f.contains(&w));
            prop_assert_eq!(
                closed.faces.len(),
                (times + 1) * without.len() + with_w.len()
            );
            prop_assert!(closed.faces.iter().all(|f| f.len() == 3 + times));
            Ok(())
        },
    )
}

pub fn pivot_adjacency_matches_rank_test(cases: u32) -> Result<(), String> {
    run(cases, margins(3, 3), |(u, v)| {
        let (u, v) = (qs(&u), qs(&v));
        let spec = TransportSpec::classical(u, v).unwrap();
        let a = analyze(&spec).unwrap();
        prop_assume!(a.nondegenerate);
        for (i, t) in a.graph.vertices.iter().enumerate() {
            let by_pivot: BTreeSet<usize> = pivot_neighbors(&a.polytope, t)
                .unwrap()
                .iter()
                .map(|s| a.graph.index_of(&s.to).unwrap())
                .collect();
            let by_rank: BTreeSet<usize> = (0..a.graph.vertices.len())
                .filter(|&j| j != i && a.polytope.adjacent(&t.values, &a.graph.vertices[j].values))
                .collect();
            let by_cycle: BTreeSet<usize> = (0..a.graph.vertices.len())
                .filter(|&j| adjacent_by_unique_cycle(t, &a.graph.vertices[j]))
                .collect();
            prop_assert_eq!(&by_pivot, &by_rank);
            prop_assert_eq!(&by_cycle, &by_rank);
            prop_assert_eq!(
                &a.graph.adjacency[i]
                    .iter()
                    .copied()
                    .collect::<BTreeSet<_>>(),
                &by_rank
            );
        }
        Ok(())
    })
}

pub const SUITES: &[(&str, fn(u32) -> Result<(), String>)] = &[
    (
        "spanning_forests_are_vertices",
        spanning_forests_are_vertices,
    ),
    ("rank_plus_nullity", rank_plus_nullity),
    ("northwest_corner_is_vertex", northwest_corner_is_vertex),
    (
        "axial_northwest_corner_is_vertex",
        axial_northwest_corner_is_vertex,
    ),
    ("chamber_to_chamber_identity", chamber_to_chamber_identity),
    ("wedge_increments", wedge_increments),
    (
        "one_point_suspension_closed_form",
        one_point_suspension_closed_form,
    ),
    (
        "pivot_adjacency_matches_rank_test",
        pivot_adjacency_matches_rank_test,
    ),
];

pub fn forest_oracle_sanity() {
    let vs = tree_vertices(&qs(&[5, 5, 1]), &qs(&[2, 7, 2]));
    assert_eq!(vs.len(), 12);
    assert!(vs.iter().all(|x| x
        .iter()
        .all(|t| !t.is_negative() && (t.is_zero() || t.is_positive()))));
}
