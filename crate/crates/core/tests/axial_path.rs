use transpoly::axial_path::*;
use transpoly::exact_core::rational::{q, qvec};
use transpoly::transport_model::TransportSpec;
use transpoly::vertex_enum::{adjacent, analyze, is_vertex, Table};

fn spec333() -> TransportSpec {
    TransportSpec::axial(
        qvec(&[112, 18, 30]),
        qvec(&[40, 6, 114]),
        qvec(&[82, 44, 34]),
    )
    .unwrap()
}

/// Table from one-based (i,j,k,value) entries.
fn table(entries: &[(usize, usize, usize, i64)]) -> Table {
    let mut t = Table::zeros(&[3, 3, 3]);
    for &(i, j, k, x) in entries {
        let c = t.index3(i - 1, j - 1, k - 1);
        t.values[c] = q(x);
    }
    t
}

fn hat() -> Table {
    table(&[
        (1, 1, 1, 40),
        (1, 2, 1, 6),
        (1, 3, 1, 36),
        (1, 3, 2, 30),
        (2, 3, 2, 14),
        (2, 3, 3, 4),
        (3, 3, 3, 30),
    ])
}

fn staircase_v() -> Table {
    table(&[
        (1, 1, 2, 28),
        (2, 1, 2, 12),
        (2, 2, 3, 6),
        (1, 3, 2, 2),
        (1, 3, 1, 82),
        (3, 3, 2, 2),
        (3, 3, 3, 28),
    ])
}

fn octagon_v() -> Table {
    table(&[
        (1, 1, 3, 25),
        (3, 1, 1, 15),
        (3, 2, 1, 6),
        (1, 3, 1, 61),
        (1, 3, 2, 26),
        (2, 3, 2, 18),
        (3, 3, 3, 9),
    ])
}

fn check_walk(spec: &TransportSpec, from: &Table, steps: &[PivotStep]) {
    let mut cur = from.clone();
    for st in steps {
        assert_eq!(st.from, cur);
        assert!(is_vertex(spec, &st.to).unwrap());
        assert!(adjacent(spec, &st.from, &st.to).unwrap());
        cur = st.to.clone();
    }
}

#[test]
fn well_ordered_vertex_and_levels() {
    let w = AxialWalker::new(&spec333()).unwrap();
    assert_eq!(w.well_ordered_vertex(), &hat());
    assert_eq!(well_ordered_level(&hat()), Some(3));
    assert_eq!(well_ordered_level(&staircase_v()), Some(9));
    assert_eq!(well_ordered_level(&octagon_v()), Some(9));
    assert!(w.path_to_well_ordered(&hat()).unwrap().is_empty());
}

#[test]
fn first_pivot_clears_beta() {
    let spec = spec333();
    let w = AxialWalker::new(&spec).unwrap();
    let (next, steps) = w
        .reduce_level(&LevelState {
            vertex: staircase_v(),
            z: 9,
        })
        .unwrap();
    let expected = table(&[
        (1, 1, 2, 28),
        (2, 1, 2, 12),
        (2, 2, 3, 4),
        (1, 3, 2, 2),
        (1, 3, 1, 82),
        (2, 2, 2, 2),
        (3, 3, 3, 30),
    ]);
    assert_eq!(steps[0].to, expected);
    assert!(steps.len() <= 2 * (9 - 4));
    assert_eq!(next.z, 8);
    check_walk(&spec, &staircase_v(), &steps);
}

#[test]
fn octagon_walks_one_edge() {
    let spec = spec333();
    let w = AxialWalker::new(&spec).unwrap();
    let steps = w
        .octagon(&octagon_v(), &[2, 2, 2], &[2, 1, 0], &[1, 2, 1], &[0, 0, 2])
        .unwrap();
    let c = table(&[
        (1, 1, 3, 22),
        (3, 1, 1, 18),
        (2, 2, 1, 6),
        (3, 3, 3, 12),
        (1, 3, 2, 32),
        (2, 3, 2, 12),
        (1, 3, 1, 58),
    ]);
    let d = table(&[
        (1, 1, 3, 6),
        (1, 1, 2, 32),
        (3, 1, 1, 2),
        (2, 2, 1, 6),
        (3, 3, 3, 28),
        (2, 3, 2, 12),
        (1, 3, 1, 74),
    ]);
    assert!(is_vertex(&spec, &d).unwrap());
    assert!(adjacent(&spec, &c, &d).unwrap());
    assert!(!adjacent(&spec, &octagon_v(), &d).unwrap());
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0].to, c);
}

#[test]
fn example_vertices_reach_the_hub() {
    let spec = spec333();
    let w = AxialWalker::new(&spec).unwrap();
    for v in [staircase_v(), octagon_v()] {
        let steps = w.path_to_well_ordered(&v).unwrap();
        assert!(steps.len() <= 36);
        check_walk(&spec, &v, &steps);
        assert_eq!(steps.last().unwrap().to, hat());
    }
    let between = w.path_between(&staircase_v(), &octagon_v()).unwrap();
    assert!(between.len() <= path_bound(&[3, 3, 3]));
    check_walk(&spec, &staircase_v(), &between);
    assert_eq!(between.last().unwrap().to, octagon_v());
}

#[test]
fn small_instance_all_vertices() {
    let spec = TransportSpec::axial(qvec(&[7, 10]), qvec(&[8, 9]), qvec(&[5, 12])).unwrap();
    let a = analyze(&spec).unwrap();
    assert!(a.nondegenerate);
    let w = AxialWalker::new(&spec).unwrap();
    let hub = a.graph.index_of(w.well_ordered_vertex()).unwrap();
    for (i, v) in a.graph.vertices.iter().enumerate() {
        let steps = w.path_to_well_ordered(v).unwrap();
        check_walk(&spec, v, &steps);
        assert!(steps.len() >= a.graph.distance(i, hub).unwrap());
        assert!(steps.len() <= 9);
    }
}

fn random_composition(rng: &mut rand::rngs::StdRng, total: i64, parts: usize) -> Vec<i64> {
    use rand::Rng;
    let mut cuts: Vec<i64> = (0..parts - 1).map(|_| rng.gen_range(1..total)).collect();
    cuts.sort_unstable();
    let mut out = Vec::new();
    let mut prev = 0;
    for c in cuts.into_iter().chain([total]) {
        out.push(c - prev);
        prev = c;
    }
    out
}

#[test]
fn random_generic_instances() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(4);
    let mut done = 0;
    while done < 12 {
        let sizes: Vec<usize> = (0..3).map(|_| rng.gen_range(2..=3)).collect();
        if sizes.iter().product::<usize>() > 18 {
            continue;
        }
        let total = rng.gen_range(10_000..20_000);
        let m: Vec<Vec<i64>> = sizes
            .iter()
            .map(|&n| random_composition(&mut rng, total, n))
            .collect();
        if m.iter().flatten().any(|&x| x == 0) {
            continue;
        }
        let spec = TransportSpec::axial(qvec(&m[0]), qvec(&m[1]), qvec(&m[2])).unwrap();
        let Ok(a) = analyze(&spec) else { continue };
        if !a.nondegenerate {
            continue;
        }
        let w = AxialWalker::new(&spec).unwrap();
        let n = sizes.iter().sum::<usize>() - 3;
        for v in &a.graph.vertices {
            let steps = w.path_to_well_ordered(v).unwrap();
            assert!(steps.len() <= n * n, "{sizes:?}");
            check_walk(&spec, v, &steps);
        }
        eprintln!("{sizes:?} {}", a.graph.vertices.len());
        done += 1;
    }
}

#[test]
#[ignore]
fn count_333() {
    let t = std::time::Instant::now();
    let a = analyze(&spec333()).unwrap();
    eprintln!("{} vertices {:?}", a.graph.vertices.len(), t.elapsed());
}
