//! The 7-dimensional face x11 = x44 = 0 of the fourth Birkhoff polytope, a
//! triangulation T of its 14 vertices, and exact checks that T is a
//! triangulation and is not regular.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::chamber_enum::gale_transform;
use crate::error::{Error, Result};
use crate::exact_core::halfspace::{strict_feasible, Certificate, Feasibility, HalfspaceSystem};
use crate::exact_core::matrix::Matrix;
use crate::exact_core::rational::{dot, primitive, q, qvec, to_q, Q};

pub const B4_LABELS: &str = "abcdefghijklmn";

/// Row i of X_z has its 1 in column B4_PERMS[z][i].
pub const B4_PERMS: [[usize; 4]; 14] = [
    [1, 3, 2, 0],
    [1, 2, 3, 0],
    [1, 3, 0, 2],
    [1, 0, 3, 2],
    [2, 3, 1, 0],
    [2, 3, 0, 1],
    [2, 1, 3, 0],
    [2, 0, 3, 1],
    [3, 2, 1, 0],
    [3, 2, 0, 1],
    [3, 1, 0, 2],
    [3, 1, 2, 0],
    [3, 0, 1, 2],
    [3, 0, 2, 1],
];

const B4_HOMOGENIZED: [&str; 17] = [
    "11111111111111",
    "00000000000000",
    "11110000000000",
    "00001111000000",
    "00000000111111",
    "00010001000011",
    "00000010001100",
    "01000000110000",
    "10101100000000",
    "00100100011000",
    "00001000100010",
    "10000000000101",
    "01010011000000",
    "11001010100100",
    "00000101010001",
    "00110000001010",
    "00000000000000",
];

const B4_SIMPLICES: [&str; 32] = [
    "abcdefgi", "abdefghi", "acdefgik", "adefghik", "aefghikl", "adeghikl", "afghijkl", "acdefikm",
    "adefhikm", "acdfijkm", "adfhijkm", "aefhiklm", "deghiklm", "adehiklm", "acdfjkmn", "adfhjkmn",
    "aefhilmn", "afhiklmn", "adhiklmn", "afhijkmn", "adhijkmn", "afhijkln", "abcdfijk", "abcdfgik",
    "abfghijk", "abghijkl", "abdfhijk", "abdfghik", "abdghikl", "abhijkln", "abdhikln", "abdhijkn",
];

const B4_GALE: [[i64; 14]; 6] = [
    [0, 0, 1, -1, 0, -1, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, -1, 0, 0, -1, 1, 0, 0, 0, 0],
    [0, 1, -1, 0, 1, 0, -1, 0, -1, 0, 1, 0, 0, 0],
    [-1, 1, 0, 0, 1, 0, -1, 0, -1, 0, 0, 1, 0, 0],
    [0, 1, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 1, 0],
    [-1, 1, 1, -1, 1, -1, 0, 0, -1, 0, 0, 0, 0, 1],
];

/// Boundary or shared classification of every facet of every simplex, one line each.
const B4_FACET_LEDGER: &str = include_str!("../data/b4_facets.txt");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct B4FaceData {
    pub labels: Vec<char>,
    /// 4×4 0-1 matrices, one per label.
    pub matrices: Vec<[[u8; 4]; 4]>,
    /// 17×14: a row of ones, then the 16 cells x11..x44 row by row.
    #[serde(skip)]
    pub homogenized: Matrix,
    /// Sorted label indices of the 32 maximal simplices.
    pub triangulation: Vec<Vec<usize>>,
    #[serde(skip)]
    pub gale: Matrix,
}

fn labels_to_indices(s: &str) -> Result<Vec<usize>> {
    let mut v: Vec<usize> = s
        .chars()
        .map(|c| {
            B4_LABELS
                .find(c)
                .ok_or_else(|| Error::Parse(format!("unknown label {c}")))
        })
        .collect::<Result<_>>()?;
    v.sort_unstable();
    Ok(v)
}

pub fn word(idx: &[usize]) -> String {
    idx.iter()
        .map(|&i| B4_LABELS.as_bytes()[i] as char)
        .collect()
}

pub fn permutation_matrix(perm: &[usize]) -> Vec<Vec<u8>> {
    let n = perm.len();
    (0..n)
        .map(|i| (0..n).map(|j| u8::from(perm[i] == j)).collect())
        .collect()
}

/// Columns (1, x11, x12, ..., xnn) of 0-1 matrices.
pub fn homogenize(mats: &[Vec<Vec<u8>>]) -> Matrix {
    let n = mats.first().map_or(0, |m| m.len());
    let mut a = Matrix::zeros(n * n + 1, mats.len());
    for (c, m) in mats.iter().enumerate() {
        a.set(0, c, q(1));
        for i in 0..n {
            for j in 0..n {
                a.set(1 + i * n + j, c, q(m[i][j] as i64));
            }
        }
    }
    a
}

pub fn load_b4() -> B4FaceData {
    let matrices = B4_PERMS
        .iter()
        .map(|p| {
            let mut m = [[0u8; 4]; 4];
            for i in 0..4 {
                m[i][p[i]] = 1;
            }
            m
        })
        .collect();
    let homogenized = Matrix::from_int_rows(
        &B4_HOMOGENIZED
            .iter()
            .map(|r| r.bytes().map(|b| (b - b'0') as i64).collect())
            .collect::<Vec<_>>(),
    );
    let triangulation = B4_SIMPLICES
        .iter()
        .map(|s| labels_to_indices(s).expect("static labels"))
        .collect();
    let gale = Matrix::from_int_rows(&B4_GALE.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    B4FaceData {
        labels: B4_LABELS.chars().collect(),
        matrices,
        homogenized,
        triangulation,
        gale,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FacetClass {
    /// Every point of the facet has x_{i,j} = 0 (one-based).
    OnBoundary {
        i: usize,
        j: usize,
    },
    SharedWith {
        simplex: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetEntry {
    /// One-based simplex number.
    pub simplex: usize,
    pub facet: String,
    pub class: FacetClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionReport {
    pub entries: Vec<FacetEntry>,
    pub ledger_matches: usize,
    pub failures: Vec<String>,
    /// Sum of normalized simplex volumes and the volume of conv(F) by a pulling decomposition.
    pub volume_sum: String,
    pub volume_hull: String,
}

impl SubdivisionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.volume_sum == self.volume_hull
    }
}

/// Restriction of a configuration to a maximal independent set of rows.
fn full_rank_rows(a: &Matrix) -> Matrix {
    a.select_rows(&a.independent_rows())
}

fn det_of(a: &Matrix, cols: &[usize]) -> Q {
    a.select_columns(cols).det()
}

/// Parses "simplex facet x<ij>|s<k>" lines.
pub fn facet_ledger() -> Result<Vec<FacetEntry>> {
    B4_FACET_LEDGER
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let bad = || Error::Parse(format!("bad ledger line {l}"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let simplex = parts[0].parse().map_err(|_| bad())?;
            let class = match parts[2].split_at(1) {
                ("x", ij) if ij.len() == 2 => {
                    let d: Vec<usize> = ij
                        .chars()
                        .map(|c| c.to_digit(10).map(|x| x as usize))
                        .collect::<Option<_>>()
                        .ok_or_else(bad)?;
                    FacetClass::OnBoundary { i: d[0], j: d[1] }
                }
                ("s", k) => FacetClass::SharedWith {
                    simplex: k.parse().map_err(|_| bad())?,
                },
                _ => return Err(bad()),
            };
            Ok(FacetEntry {
                simplex,
                facet: parts[1].to_string(),
                class,
            })
        })
        .collect()
}

/// Cells x_{i,j} (one-based, excluding the cells fixed to zero on all points) vanishing on every given point.
fn zero_cells(data: &B4FaceData, pts: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let all_zero_face = data.matrices.iter().all(|m| m[i][j] == 0);
            if !all_zero_face && pts.iter().all(|&p| data.matrices[p][i][j] == 0) {
                out.push((i + 1, j + 1));
            }
        }
    }
    out
}

/// Triangulation of conv(pts) by pulling the first point, using cell hyperplanes as facets.
fn pulling(data: &B4FaceData, a: &Matrix, pts: &[usize], dim: usize) -> Vec<Vec<usize>> {
    if pts.len() == dim + 1 {
        return vec![pts.to_vec()];
    }
    let apex = pts[0];
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..4 {
        for j in 0..4 {
            let f: Vec<usize> = pts
                .iter()
                .copied()
                .filter(|&p| data.matrices[p][i][j] == 0)
                .collect();
            if f.len() < pts.len() && !f.contains(&apex) && a.select_columns(&f).rank() == dim {
                facets.insert(f);
            }
        }
    }
    let mut out = Vec::new();
    for f in facets {
        for mut s in pulling(data, a, &f, dim - 1) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

pub fn verify_triangulation(data: &B4FaceData) -> Result<SubdivisionReport> {
    let a = full_rank_rows(&data.homogenized);
    let r = a.rows();
    let mut failures = Vec::new();
    let t = &data.triangulation;
    for (s, simplex) in t.iter().enumerate() {
        if simplex.len() != r || a.select_columns(simplex).rank() != r {
            failures.push(format!("simplex {} is not full-dimensional", s + 1));
        }
    }
    let mut entries = Vec::new();
    for (s, simplex) in t.iter().enumerate() {
        for skip in 0..simplex.len() {
            let g: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, &x)| x)
                .collect();
            let apex = simplex[skip];
            let name = word(&g);
            let others: Vec<usize> = (0..t.len())
                .filter(|&o| o != s && g.iter().all(|x| t[o].binary_search(x).is_ok()))
                .collect();
            let cells = zero_cells(data, &g);
            match (others.as_slice(), cells.first()) {
                ([], Some(&(i, j))) => entries.push(FacetEntry {
                    simplex: s + 1,
                    facet: name,
                    class: FacetClass::OnBoundary { i, j },
                }),
                ([o], None) => {
                    let other_apex = *t[*o]
                        .iter()
                        .find(|x| !g.contains(x))
                        .ok_or_else(|| Error::Internal("duplicate simplex".into()))?;
                    let mut c1 = g.clone();
                    c1.push(apex);
                    let mut c2 = g.clone();
                    c2.push(other_apex);
                    let (d1, d2) = (det_of(&a, &c1), det_of(&a, &c2));
                    if d1.is_zero() || d2.is_zero() || d1.is_positive() == d2.is_positive() {
                        failures.push(format!(
                            "simplices {} and {} overlap across {name}",
                            s + 1,
                            o + 1
                        ));
                    }
                    entries.push(FacetEntry {
                        simplex: s + 1,
                        facet: name,
                        class: FacetClass::SharedWith { simplex: o + 1 },
                    });
                }
                ([], None) => failures.push(format!(
                    "facet {name} of simplex {} is interior but unshared",
                    s + 1
                )),
                (_, Some(_)) => failures.push(format!(
                    "boundary facet {name} of simplex {} is also shared",
                    s + 1
                )),
                (_, None) => failures.push(format!(
                    "facet {name} of simplex {} lies in {} other simplices",
                    s + 1,
                    others.len()
                )),
            }
        }
    }
    let ledger = facet_ledger()?;
    let mut ledger_matches = 0;
    if ledger.len() != entries.len() {
        failures.push(format!(
            "ledger has {} entries, computed {}",
            ledger.len(),
            entries.len()
        ));
    }
    let by_key: BTreeMap<(usize, String), &FacetEntry> = entries
        .iter()
        .map(|e| ((e.simplex, e.facet.clone()), e))
        .collect();
    for l in &ledger {
        let key = (l.simplex, word(&labels_to_indices(&l.facet)?));
        let ok = match (by_key.get(&key), &l.class) {
            (Some(e), FacetClass::SharedWith { .. }) => e.class == l.class,
            (Some(_), FacetClass::OnBoundary { i, j }) => {
                zero_cells(data, &labels_to_indices(&l.facet)?).contains(&(*i, *j))
                    && matches!(by_key[&key].class, FacetClass::OnBoundary { .. })
            }
            (None, _) => false,
        };
        if ok {
            ledger_matches += 1;
        } else {
            failures.push(format!("ledger entry {} {} disagrees", l.simplex, l.facet));
        }
    }
    let volume_sum: Q = t.iter().map(|s| det_of(&a, s).abs()).sum();
    let all: Vec<usize> = (0..data.matrices.len()).collect();
    let volume_hull: Q = pulling(data, &a, &all, r - 1)
        .iter()
        .map(|s| det_of(&a, s).abs())
        .sum();
    Ok(SubdivisionReport {
        entries,
        ledger_matches,
        failures,
        volume_sum: volume_sum.to_string(),
        volume_hull: volume_hull.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum Regularity {
    /// A point in every open complementary cone and heights inducing the triangulation.
    Regular {
        #[serde(with = "crate::serde_q::vec")]
        gale_point: Vec<Q>,
        #[serde(with = "crate::serde_q::vec")]
        lifting: Vec<Q>,
    },
    /// Non-negative weights on the strict cone inequalities (one block per simplex).
    NonRegular {
        certificate: Certificate,
        inequalities: usize,
    },
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular { .. })
    }
}

/// Rows of the inverse of the complementary Gale basis: y is in C_i iff all are >= 0.
pub fn complementary_cone(gale: &Matrix, simplex: &[usize]) -> Result<Matrix> {
    let comp: Vec<usize> = (0..gale.cols()).filter(|j| !simplex.contains(j)).collect();
    let m = gale.select_columns(&comp);
    if m.rows() != m.cols() {
        return Err(Error::Invalid("complement is not a Gale basis".into()));
    }
    m.inverse()
        .ok_or_else(|| Error::Invalid("complement is not a Gale basis".into()))
}

fn check_simplices(n: usize, r: usize, t: &[Vec<usize>]) -> Result<()> {
    if t.is_empty()
        || t.iter()
            .any(|s| s.len() != r || s.iter().any(|&x| x >= n) || !s.iter().all_unique())
    {
        return Err(Error::Invalid(
            "not a triangulation: simplices must be rank-size subsets".into(),
        ));
    }
    Ok(())
}

/// Decides regularity from the open complementary cones in a given Gale transform.
pub fn is_regular_gale(gale: &Matrix, t: &[Vec<usize>]) -> Result<Regularity> {
    let k = gale.rows();
    check_simplices(gale.cols(), gale.cols() - k, t)?;
    let mut sys = HalfspaceSystem::new(k);
    for s in t {
        let inv = complementary_cone(gale, s)?;
        for i in 0..k {
            sys.add_strict(inv.row(i).to_vec(), Q::zero());
        }
    }
    if k == 0 {
        return Ok(Regularity::Regular {
            gale_point: Vec::new(),
            lifting: vec![Q::zero(); gale.cols()],
        });
    }
    match strict_feasible(&sys)? {
        Feasibility::Feasible(y) => {
            let bbt = gale.mul(&gale.transpose());
            let z = bbt
                .solve(&y)
                .ok_or_else(|| Error::Internal("Gale matrix lacks full row rank".into()))?;
            let lifting = gale.transpose().mul_vec(&z);
            Ok(Regularity::Regular {
                gale_point: y,
                lifting,
            })
        }
        Feasibility::Infeasible(certificate) => Ok(Regularity::NonRegular {
            certificate,
            inequalities: sys.strict.len(),
        }),
    }
}

pub fn is_regular(config: &Matrix, t: &[Vec<usize>]) -> Result<Regularity> {
    let a = full_rank_rows(config);
    check_simplices(a.cols(), a.rows(), t)?;
    is_regular_gale(&gale_transform(&a), t)
}

/// Heights w making each simplex a lower facet: for j outside a simplex s,
/// w_j exceeds the affine interpolation of w over s at a_j.
pub fn is_regular_lifting(config: &Matrix, t: &[Vec<usize>]) -> Result<Option<Vec<Q>>> {
    let a = full_rank_rows(config);
    let (r, n) = (a.rows(), a.cols());
    check_simplices(n, r, t)?;
    let mut sys = HalfspaceSystem::new(n);
    for s in t {
        let inv = a
            .select_columns(s)
            .inverse()
            .ok_or_else(|| Error::Invalid("singular simplex".into()))?;
        for j in (0..n).filter(|j| !s.contains(j)) {
            let lambda = inv.mul_vec(&a.column(j));
            let mut row = vec![Q::zero(); n];
            row[j] = q(1);
            for (k, &i) in s.iter().enumerate() {
                row[i] -= &lambda[k];
            }
            sys.add_strict(row, Q::zero());
        }
    }
    if sys.strict.is_empty() {
        return Ok(Some(vec![Q::zero(); n]));
    }
    Ok(match strict_feasible(&sys)? {
        Feasibility::Feasible(w) => Some(w),
        Feasibility::Infeasible(_) => None,
    })
}

/// The four facet inequalities (cone number, normal) whose strict versions sum to 0 > 0.
pub fn four_cone_certificate() -> Vec<(usize, Vec<Q>)> {
    vec![
        (1, qvec(&[0, 0, 1, 0, 0, 0])),
        (10, qvec(&[0, -1, 0, 0, -1, 1])),
        (13, qvec(&[0, 0, 0, -1, 1, 0])),
        (32, qvec(&[0, 1, -1, 1, 0, -1])),
    ]
}

/// Each inequality is a facet normal of its cone and the normals sum to zero.
pub fn check_four_cone_certificate(data: &B4FaceData) -> Result<bool> {
    let cert = four_cone_certificate();
    let mut total = vec![Q::zero(); data.gale.rows()];
    for (c, h) in &cert {
        let inv = complementary_cone(&data.gale, &data.triangulation[c - 1])?;
        let is_facet = (0..inv.rows()).any(|i| primitive(inv.row(i)) == primitive(h));
        if !is_facet {
            return Ok(false);
        }
        for (t, x) in total.iter_mut().zip(h) {
            *t += x;
        }
    }
    Ok(total.iter().all(Zero::is_zero))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeDescription {
    pub dimension: usize,
    /// Basis of the linear span of the cone, as primitive integer vectors.
    pub span: Vec<Vec<String>>,
    /// The generating ray when the cone is one-dimensional.
    pub ray: Option<Vec<String>>,
    #[serde(with = "crate::serde_q::vec")]
    pub relative_interior_point: Vec<Q>,
}

/// Intersection of closed cones {y : H_i y >= 0}.
pub fn closed_cone_intersection_of(cones: &[Matrix]) -> Result<ConeDescription> {
    let k = cones
        .first()
        .map(|m| m.cols())
        .ok_or_else(|| Error::Invalid("no cones".into()))?;
    let mut rows: BTreeSet<Vec<num_bigint::BigInt>> = BTreeSet::new();
    for m in cones {
        for i in 0..m.rows() {
            rows.insert(primitive(m.row(i)));
        }
    }
    let rows: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    let mut implicit = Vec::new();
    for h in &rows {
        let mut sys = HalfspaceSystem::new(k);
        for g in &rows {
            sys.add_weak(g.clone(), Q::zero());
        }
        sys.add_strict(h.clone(), Q::zero());
        if !strict_feasible(&sys)?.is_feasible() {
            implicit.push(h.clone());
        }
    }
    let span = if implicit.is_empty() {
        Matrix::identity(k)
    } else {
        Matrix::from_rows(&implicit).kernel_basis()
    };
    let dimension = span.cols();
    let mut sys = HalfspaceSystem::new(k);
    for h in &rows {
        if implicit.contains(h) {
            sys.add_equality(h.clone(), Q::zero());
        } else {
            sys.add_strict(h.clone(), Q::zero());
        }
    }
    let point = match strict_feasible(&sys)? {
        Feasibility::Feasible(y) => y,
        Feasibility::Infeasible(_) => vec![Q::zero(); k],
    };
    let fmt = |v: &[Q]| {
        primitive(v)
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
    };
    let ray = (dimension == 1).then(|| {
        let v = span.column(0);
        let sign_ok = rows.iter().all(|h| !dot(h, &v).is_negative());
        let v: Vec<Q> = if sign_ok {
            v
        } else {
            v.iter().map(|x| -x).collect()
        };
        fmt(&v)
    });
    Ok(ConeDescription {
        dimension,
        span: (0..dimension).map(|c| fmt(&span.column(c))).collect(),
        ray,
        relative_interior_point: point,
    })
}

/// Intersection of the 32 closed complementary cones of T.
pub fn closed_cone_intersection(data: &B4FaceData) -> Result<ConeDescription> {
    let cones: Vec<Matrix> = data
        .triangulation
        .iter()
        .map(|s| complementary_cone(&data.gale, s))
        .collect::<Result<_>>()?;
    closed_cone_intersection_of(&cones)
}

/// Permutation matrices of size p in lexicographic order of the permutations.
pub fn birkhoff_vertices(p: usize) -> Vec<Vec<usize>> {
    (0..p).permutations(p).collect()
}

/// Homogenized vertex configuration of B_p.
pub fn birkhoff_config(p: usize) -> Matrix {
    homogenize(
        &birkhoff_vertices(p)
            .iter()
            .map(|s| permutation_matrix(s))
            .collect::<Vec<_>>(),
    )
}

fn parity(perm: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// The two triangulations of B_3: drop one even permutation at a time, or one odd.
pub fn b3_triangulations() -> [Vec<Vec<usize>>; 2] {
    let verts = birkhoff_vertices(3);
    let even: Vec<usize> = (0..6).filter(|&i| parity(&verts[i])).collect();
    let odd: Vec<usize> = (0..6).filter(|&i| !parity(&verts[i])).collect();
    let drop_each = |side: &[usize]| -> Vec<Vec<usize>> {
        side.iter()
            .map(|&x| (0..6).filter(|&y| y != x).collect())
            .collect()
    };
    [drop_each(&even), drop_each(&odd)]
}

/// One-based numbers of the complementary cones of T that do not contain y.
pub fn cones_excluding(data: &B4FaceData, y: &[Q]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, s) in data.triangulation.iter().enumerate() {
        let inv = complementary_cone(&data.gale, s)?;
        if (0..inv.rows()).any(|r| dot(inv.row(r), y).is_negative()) {
            out.push(i + 1);
        }
    }
    Ok(out)
}
