use std::collections::BTreeSet;

use num_traits::Signed;
use transpoly::chamber_enum::*;
use transpoly::exact_core::matrix::{same_row_space, Matrix};
use transpoly::exact_core::rational::qvec;
use transpoly::transport_model::Kind;
use transpoly::vertex_enum::analyze;

fn a23() -> Matrix {
    Matrix::from_int_rows(&[
        vec![1, 1, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 1, 1],
        vec![1, 0, 0, 1, 0, 0],
        vec![0, 1, 0, 0, 1, 0],
    ])
}

#[test]
fn gale_of_a23() {
    let b = gale_transform(&a23());
    let printed = Matrix::from_int_rows(&[vec![1, -1, 0, -1, 1, 0], vec![1, 0, -1, -1, 0, 1]]);
    assert!(same_row_space(&b, &printed));
    assert!(a23().mul(&b.transpose()).is_zero());
    let sq = Matrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
    assert_eq!(gale_transform(&sq).rows(), 0);
}

#[test]
fn eighteen_chambers_2x3() {
    let chambers = enumerate_chambers(&a23()).unwrap();
    assert_eq!(chambers.len(), 18);
    let sets: BTreeSet<_> = chambers.iter().map(|c| c.bases.clone()).collect();
    assert_eq!(sets.len(), 18);
    let cx = ChamberComplex::new(&a23()).unwrap();
    let gale = gale_transform(&a23());
    for c in &chambers {
        assert_eq!(
            chamber_basis_count(&cx.poly, &c.representative).unwrap(),
            c.basis_count()
        );
        for b in &c.bases {
            let comp: Vec<usize> = (0..6).filter(|j| !b.contains(j)).collect();
            assert_eq!(gale.select_columns(&comp).rank(), 2);
        }
    }
    assert!(chambers.iter().any(|c| c.basis_count() == 6));
    let symmetric = ChamberComplex::for_kind(Kind::Classical, &[2, 3])
        .unwrap()
        .enumerate(MAX_CHAMBERS)
        .unwrap();
    assert_eq!(chamber_total(&symmetric), 18);
}

#[test]
fn one_chamber_for_rank_one() {
    let a = Matrix::from_int_rows(&[vec![1, 1, 1]]);
    assert_eq!(enumerate_chambers(&a).unwrap().len(), 1);
}

#[test]
fn small_catalogues() {
    let cases: [(Kind, &[usize], &[usize], &[usize], &[usize]); 4] = [
        (
            Kind::Classical,
            &[2, 3],
            &[3, 4, 5, 6],
            &[3, 4, 5, 6],
            &[1, 2, 3],
        ),
        (
            Kind::Classical,
            &[3, 3],
            &[9, 12, 15, 18],
            &[6, 7, 8, 9],
            &[2, 3, 4],
        ),
        (
            Kind::Axial3,
            &[2, 2, 2],
            &[8, 11, 14],
            &[6, 7, 8],
            &[2, 3, 4],
        ),
        (
            Kind::Classical,
            &[2, 4],
            &[4, 6, 8, 10, 12],
            &[4, 5, 6, 7, 8],
            &[1, 2, 3, 4],
        ),
    ];
    for (kind, sizes, f0, facets, diam) in cases {
        let c = catalogue(kind, sizes).unwrap();
        assert_eq!(
            c.vertex_counts(),
            f0.iter().copied().collect(),
            "{kind:?} {sizes:?}"
        );
        assert_eq!(c.facet_counts(), facets.iter().copied().collect());
        assert_eq!(c.diameters(), diam.iter().copied().collect());
        for row in &c.rows {
            let b: Vec<_> = row
                .marginals
                .iter()
                .map(|s| transpoly::exact_core::parse_q(s).unwrap())
                .collect();
            let spec =
                transpoly::transport_model::TransportSpec::with_rhs(kind, sizes, &b).unwrap();
            let a = analyze(&spec).unwrap();
            assert!(a.nondegenerate);
            assert_eq!(a.graph.vertices.len(), row.f0);
        }
    }
}

#[test]
fn catalogue_csv_shape() {
    let c = catalogue(Kind::Classical, &[2, 3]).unwrap();
    let csv = c.to_csv();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("chamber_id,f0,facets,diameter,marginals_json")
    );
    assert_eq!(lines.count(), 18);
    let distinct: BTreeSet<_> = c.rows.iter().map(|r| r.marginals.clone()).collect();
    assert_eq!(distinct.len(), 18);
    let json = serde_json::to_value(&c).unwrap();
    assert_eq!(json["chambers"], 18);
}

#[test]
fn gcd_divides_vertex_counts() {
    for (p, q) in [(3, 3), (2, 4)] {
        let g = classical_gcd(p, q);
        let c = catalogue(Kind::Classical, &[p, q]).unwrap();
        assert!(c.rows.iter().all(|r| r.f0 % g == 0), "{p}x{q}");
    }
}

#[test]
fn lex_chamber_cardinality_matches() {
    for (p, q) in [(2, 3), (3, 3), (3, 4)] {
        assert_eq!(lex_chamber_cardinality(p, q).unwrap(), p.pow(q as u32 - 1));
    }
    let (u, v) = lex_chamber_margins(2, 3).unwrap();
    assert_eq!(u, qvec(&[1, 2]));
    assert!(v.iter().all(|x| x.is_positive()));
}

#[test]
fn wall_crossing_identity() {
    for (p, q) in [(2, 3), (3, 3)] {
        let cx = ChamberComplex::for_kind(Kind::Classical, &[p, q]).unwrap();
        let g = classical_gcd(p, q);
        for c in cx.enumerate(MAX_CHAMBERS).unwrap() {
            for f in cx.facets(&c).unwrap() {
                if cx.is_outer(&f) {
                    continue;
                }
                let d = cx.cross(&c, &f).unwrap();
                let step = gcd_step_check(&cx, &c, &d, g).unwrap();
                assert!(step.identity_holds, "{step:?}");
                assert!(step.divisible, "{step:?}");
            }
            let same = gcd_step_check(&cx, &c, &c, g).unwrap();
            assert_eq!(same.c_plus, same.c_minus);
        }
    }
}

#[test]
fn walls_and_signatures() {
    let cx = ChamberComplex::new(&a23()).unwrap();
    let walls = wall_normals(&cx.poly).unwrap();
    let chambers = enumerate_chambers(&a23()).unwrap();
    for c in &chambers {
        assert!(wall_signature(&walls, &c.representative)
            .iter()
            .all(|&s| s != 0));
    }
    let sigs: BTreeSet<Vec<i8>> = chambers
        .iter()
        .map(|c| wall_signature(&walls, &c.representative))
        .collect();
    assert_eq!(sigs.len(), 18);
}
