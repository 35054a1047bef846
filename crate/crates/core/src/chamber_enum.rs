//! Chambers of the cone over a constraint matrix and the catalogue of
//! combinatorial types of non-degenerate transportation polytopes.
//!
//! A chamber is identified by the set of bases whose open cones contain it,
//! which is the vertex set of every polytope with right-hand side in it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_core::halfspace::{strict_feasible, Feasibility, HalfspaceSystem};
use crate::exact_core::matrix::Matrix;
use crate::exact_core::rational::{canonical_normal, dot, fmt_q, primitive, q, to_q, Q};
use crate::polytope::{Basis, PartitionPolytope};
use crate::transport_model::{build_matrix, Kind, TransportSpec};
use crate::vertex_enum::{analyze_polytope, count_facets_of, diameter, Limits};

pub const MAX_CHAMBERS: usize = 50_000;
pub const MAX_BRUTE_SUBSETS: usize = 200_000;

/// Gale dual: rows span the kernel of `a`, one column per column of `a`.
pub fn gale_transform(a: &Matrix) -> Matrix {
    a.kernel_basis().transpose()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    /// Feasible bases, sorted.
    pub bases: Vec<Basis>,
    /// Primitive integer point strictly inside, in the coordinates of the independent rows.
    #[serde(with = "crate::serde_q::vec")]
    pub representative: Vec<Q>,
    /// Number of chambers in the symmetry orbit (1 without symmetry).
    pub orbit_size: usize,
}

impl Chamber {
    pub fn basis_count(&self) -> usize {
        self.bases.len()
    }
}

/// A facet of a chamber: inequality h·b >= 0 tight on it, with a relative-interior point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberFacet {
    pub normal: Vec<Q>,
    pub point: Vec<Q>,
}

/// Cell permutations from permuting each axis and swapping axes of equal length.
pub fn symmetry_group(sizes: &[usize]) -> Vec<Vec<usize>> {
    let k = sizes.len();
    let n: usize = sizes.iter().product();
    let strides: Vec<usize> = (0..k).map(|a| sizes[a + 1..].iter().product()).collect();
    let unflat = |c: usize| -> Vec<usize> { (0..k).map(|a| (c / strides[a]) % sizes[a]).collect() };
    let axis_perms: Vec<Vec<usize>> = (0..k)
        .permutations(k)
        .filter(|pi| (0..k).all(|a| sizes[pi[a]] == sizes[a]))
        .collect();
    let per_axis: Vec<Vec<Vec<usize>>> = sizes
        .iter()
        .map(|&s| (0..s).permutations(s).collect())
        .collect();
    let mut out = BTreeSet::new();
    for pi in &axis_perms {
        for sigma in per_axis.iter().multi_cartesian_product() {
            let perm: Vec<usize> = (0..n)
                .map(|c| {
                    let idx = unflat(c);
                    (0..k).map(|a| sigma[a][idx[pi[a]]] * strides[a]).sum()
                })
                .collect();
            out.insert(perm);
        }
    }
    out.into_iter().collect()
}

fn image(bases: &[Basis], g: &[usize]) -> Vec<Basis> {
    let mut out: Vec<Basis> = bases
        .iter()
        .map(|b| {
            let mut x: Vec<usize> = b.iter().map(|&j| g[j]).collect();
            x.sort_unstable();
            x
        })
        .collect();
    out.sort();
    out
}

fn orbit(bases: &[Basis], group: &[Vec<usize>]) -> BTreeSet<Vec<Basis>> {
    group.iter().map(|g| image(bases, g)).collect()
}

/// First row hit on the segment from the interior point y0 towards z, when unique,
/// with the hitting point (on that row's hyperplane, strictly inside all others).
fn first_hit(ineq: &[Vec<Q>], y0: &[Q], z: &[Q]) -> Option<(usize, Vec<Q>)> {
    let mut best: Option<(Q, usize)> = None;
    let mut tie = false;
    for (k, h) in ineq.iter().enumerate() {
        let (a, b) = (dot(h, y0), dot(h, z));
        if !b.is_negative() {
            continue;
        }
        let t = &a / (&a - b);
        match &best {
            Some((bt, _)) if t > *bt => {}
            Some((bt, _)) if t == *bt => tie = true,
            _ => {
                best = Some((t, k));
                tie = false;
            }
        }
    }
    let (t, k) = best?;
    if tie {
        return None;
    }
    let point = y0
        .iter()
        .zip(z)
        .map(|(a, b)| (Q::one() - &t) * a + &t * b)
        .collect();
    Some((k, point))
}

/// Chamber enumeration over a fixed constraint matrix.
pub struct ChamberComplex {
    pub poly: PartitionPolytope,
    group: Vec<Vec<usize>>,
}

impl ChamberComplex {
    pub fn new(a: &Matrix) -> Result<Self> {
        let zero = vec![Q::zero(); a.rows()];
        let poly = PartitionPolytope::new(a, &zero)?;
        let identity = vec![(0..a.cols()).collect()];
        Ok(ChamberComplex {
            poly,
            group: identity,
        })
    }

    /// `group` must permute columns by linear automorphisms of the configuration.
    pub fn with_symmetry(a: &Matrix, group: Vec<Vec<usize>>) -> Result<Self> {
        let mut c = Self::new(a)?;
        if group.iter().any(|g| g.len() != a.cols()) {
            return Err(Error::Invalid(
                "symmetry does not act on the columns".into(),
            ));
        }
        c.group = group;
        Ok(c)
    }

    pub fn for_kind(kind: Kind, sizes: &[usize]) -> Result<Self> {
        Self::with_symmetry(&build_matrix(kind, sizes), symmetry_group(sizes))
    }

    pub fn rank(&self) -> usize {
        self.poly.rank()
    }

    /// Feasible bases at b, or None when b lies on a wall or outside cone(A).
    pub fn bases_at(&self, b: &[Q]) -> Result<Option<Vec<Basis>>> {
        self.bases_near(b, &[])
    }

    /// As `bases_at`, trying the given bases first as starting points.
    fn bases_near(&self, b: &[Q], hints: &[Basis]) -> Result<Option<Vec<Basis>>> {
        let p = self.poly.with_reduced_rhs(b.to_vec());
        match p.strict_bases_int(hints, crate::polytope::MAX_BASES) {
            Some(Ok(bases)) => return Ok(Some(bases)),
            Some(Err(Error::Degenerate(_))) => return Ok(None),
            Some(Err(e)) => return Err(e),
            None => {}
        }
        let Some((start, _)) = p.find_vertex() else {
            return Ok(None);
        };
        match p.explore(&start, true, crate::polytope::MAX_BASES) {
            Ok(ex) => {
                let mut bases = ex.bases;
                bases.sort();
                Ok(Some(bases))
            }
            Err(Error::Degenerate(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Sum of the columns plus the jitter t·(1/2, 1/3, 1/5, ...), shrinking t until generic.
    pub fn seed(&self) -> Result<Chamber> {
        let primes = [
            2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
            83, 89, 97,
        ];
        let r = self.rank();
        let mut base = vec![Q::zero(); r];
        for j in 0..self.poly.ncols() {
            for (i, x) in self.poly.column(j).into_iter().enumerate() {
                base[i] += x;
            }
        }
        for t in 1..200i64 {
            let b: Vec<Q> = (0..r)
                .map(|i| {
                    &base[i]
                        + Q::new(
                            1.into(),
                            (primes[i % primes.len()] * t + (i / primes.len()) as i64).into(),
                        )
                })
                .collect();
            if let Some(bases) = self.bases_at(&b)? {
                let b = self.small_point(&bases, b)?;
                return Ok(self.chamber(bases, &b));
            }
        }
        Err(Error::Internal("no generic seed found".into()))
    }

    /// A short integer vector with the same feasible bases as `b`, or `b` itself.
    fn small_point(&self, bases: &[Basis], b: Vec<Q>) -> Result<Vec<Q>> {
        let top = b.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero);
        if top.is_zero() {
            return Ok(b);
        }
        let mut scale = q(16);
        for _ in 0..12 {
            let c: Vec<Q> = b.iter().map(|x| (x * &scale / &top).round()).collect();
            if self.bases_near(&c, &bases[..1])?.as_deref() == Some(bases) {
                return Ok(c);
            }
            scale *= q(16);
        }
        Ok(b)
    }

    fn chamber(&self, bases: Vec<Basis>, b: &[Q]) -> Chamber {
        let orbit_size = orbit(&bases, &self.group).len();
        Chamber {
            bases,
            representative: to_q(&primitive(b)),
            orbit_size,
        }
    }

    /// Inequalities h·b >= 0 cutting out the closed chamber (rows of B^{-1}), deduplicated.
    pub fn inequalities(&self, c: &Chamber) -> Result<Vec<Vec<Q>>> {
        let mut seen: BTreeSet<Vec<num_bigint::BigInt>> = BTreeSet::new();
        let mut out = Vec::new();
        for b in &c.bases {
            let rows: Vec<Vec<Q>> = match self.poly.scaled_inverse_rows(b) {
                Some(rows) => rows
                    .iter()
                    .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
                    .collect(),
                None => {
                    let data = self
                        .poly
                        .basis_data(b)
                        .ok_or_else(|| Error::Internal("singular basis".into()))?;
                    data.inverse.to_vec()
                }
            };
            for row in &rows {
                let p = primitive(row);
                if seen.insert(p.clone()) {
                    out.push(to_q(&p));
                }
            }
        }
        Ok(out)
    }

    pub fn facets(&self, c: &Chamber) -> Result<Vec<ChamberFacet>> {
        let ineq = self.inequalities(c)?;
        let y0 = &c.representative;
        if ineq.iter().any(|h| !dot(h, y0).is_positive()) {
            return self.facets_by_lp(&ineq);
        }
        // Clarkson: test each row against the facets found so far, and turn every
        // violation into a new facet by shooting a ray from the interior point.
        let mut found: Vec<usize> = Vec::new();
        let mut out: Vec<ChamberFacet> = Vec::new();
        for i in 0..ineq.len() {
            while !found.contains(&i) {
                let mut sys = HalfspaceSystem::new(self.rank());
                for &k in &found {
                    sys.add_weak(ineq[k].clone(), Q::zero());
                }
                sys.add_strict(ineq[i].iter().map(|x| -x).collect(), Q::zero());
                let Feasibility::Feasible(z) = strict_feasible(&sys)? else {
                    break;
                };
                match first_hit(&ineq, y0, &z) {
                    Some((k, point)) if !found.contains(&k) => {
                        found.push(k);
                        out.push(ChamberFacet {
                            normal: ineq[k].clone(),
                            point,
                        });
                    }
                    _ => {
                        if let Some(f) = self.facet_by_lp(&ineq, i)? {
                            found.push(i);
                            out.push(f);
                        }
                        break;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..out.len()).collect();
        order.sort_by_key(|&k| ineq.iter().position(|h| *h == out[k].normal));
        Ok(order.into_iter().map(|k| out[k].clone()).collect())
    }

    fn facet_by_lp(&self, ineq: &[Vec<Q>], i: usize) -> Result<Option<ChamberFacet>> {
        let mut sys = HalfspaceSystem::new(self.rank());
        sys.add_equality(ineq[i].clone(), Q::zero());
        for (j, g) in ineq.iter().enumerate() {
            if i != j {
                sys.add_strict(g.clone(), Q::zero());
            }
        }
        Ok(match strict_feasible(&sys)? {
            Feasibility::Feasible(point) => Some(ChamberFacet {
                normal: ineq[i].clone(),
                point,
            }),
            Feasibility::Infeasible(_) => None,
        })
    }

    fn facets_by_lp(&self, ineq: &[Vec<Q>]) -> Result<Vec<ChamberFacet>> {
        let mut out = Vec::new();
        for i in 0..ineq.len() {
            out.extend(self.facet_by_lp(ineq, i)?);
        }
        Ok(out)
    }

    /// True when the facet lies on the boundary of cone(A).
    pub fn is_outer(&self, f: &ChamberFacet) -> bool {
        (0..self.poly.ncols()).all(|j| !dot(&f.normal, &self.poly.column(j)).is_negative())
    }

    /// The chamber on the other side of an inner facet.
    pub fn cross(&self, c: &Chamber, f: &ChamberFacet) -> Result<Chamber> {
        if self.is_outer(f) {
            return Err(Error::Invalid(
                "facet lies on the boundary of cone(A)".into(),
            ));
        }
        let norm2 = dot(&f.normal, &f.normal);
        let mut delta = Q::one() / (norm2 * q(4));
        // stay inside the other half-spaces of c
        for g in self.inequalities(c)? {
            let gh = dot(&g, &f.normal);
            if gh.is_positive() && g != f.normal {
                let bound = dot(&g, &f.point) / (gh * q(2));
                if bound < delta {
                    delta = bound;
                }
            }
        }
        for _ in 0..200 {
            let b: Vec<Q> = f
                .point
                .iter()
                .zip(&f.normal)
                .map(|(x, h)| x - &delta * h)
                .collect();
            if let Some(bases) = self.bases_near(&b, &c.bases)? {
                let mut closed = true;
                for basis in &bases {
                    let data = self
                        .poly
                        .with_reduced_rhs(f.point.clone())
                        .basis_data(basis);
                    let data = data.ok_or_else(|| Error::Internal("singular basis".into()))?;
                    if data.values.iter().any(Signed::is_negative) {
                        closed = false;
                        break;
                    }
                }
                if closed {
                    if bases == c.bases {
                        return Err(Error::Internal("crossing returned the same chamber".into()));
                    }
                    let b = self.small_point(&bases, b)?;
                    return Ok(self.chamber(bases, &b));
                }
            }
            delta /= q(2);
        }
        Err(Error::Internal(
            "could not step across a chamber facet".into(),
        ))
    }

    /// Lexicographically least image of the basis set under the symmetry group.
    pub fn key(&self, c: &Chamber) -> Vec<Basis> {
        self.group
            .iter()
            .map(|g| image(&c.bases, g))
            .min()
            .unwrap_or_default()
    }

    /// Breadth-first search over chambers, one representative per symmetry orbit.
    pub fn enumerate(&self, limit: usize) -> Result<Vec<Chamber>> {
        let seed = self.seed()?;
        let mut seen: BTreeSet<Vec<Basis>> = BTreeSet::from([self.key(&seed)]);
        let mut out = vec![seed];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let c = out[i].clone();
            for f in self.facets(&c)? {
                if self.is_outer(&f) {
                    continue;
                }
                let d = self.cross(&c, &f)?;
                if seen.insert(self.key(&d)) {
                    if out.len() >= limit {
                        return Err(Error::Guard(format!("more than {limit} chamber orbits")));
                    }
                    out.push(d);
                    queue.push_back(out.len() - 1);
                }
            }
        }
        out.sort_by(|a, b| (a.bases.len(), &a.bases).cmp(&(b.bases.len(), &b.bases)));
        Ok(out)
    }

    /// Basis set of the chamber adjacent to `c` containing `d`, with the separating facet.
    pub fn shared_facet(&self, c: &Chamber, d: &Chamber) -> Result<Option<ChamberFacet>> {
        for f in self.facets(c)? {
            if !self.is_outer(&f) && self.cross(c, &f)?.bases == d.bases {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}

/// Every chamber of the matrix (no symmetry reduction).
pub fn enumerate_chambers(a: &Matrix) -> Result<Vec<Chamber>> {
    ChamberComplex::new(a)?.enumerate(MAX_CHAMBERS)
}

/// Number of chambers counted with orbit multiplicity.
pub fn chamber_total(chambers: &[Chamber]) -> usize {
    chambers.iter().map(|c| c.orbit_size).sum()
}

/// Brute-force count of column bases whose open cone contains b (reduced coordinates).
pub fn chamber_basis_count(poly: &PartitionPolytope, b: &[Q]) -> Result<usize> {
    let (n, r) = (poly.ncols(), poly.rank());
    let subsets = (0..r).fold(1f64, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
    if subsets > MAX_BRUTE_SUBSETS as f64 {
        return Err(Error::Guard(format!(
            "{subsets} column subsets > {MAX_BRUTE_SUBSETS}"
        )));
    }
    let p = poly.with_reduced_rhs(b.to_vec());
    let mut count = 0;
    for basis in (0..n).combinations(r) {
        if let Some(data) = p.basis_data(&basis) {
            if data.values.iter().all(Signed::is_positive) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Margins (all rows of the full constraint matrix) for a chamber of a transportation kind.
pub fn chamber_spec(
    cx: &ChamberComplex,
    kind: Kind,
    sizes: &[usize],
    c: &Chamber,
) -> Result<TransportSpec> {
    let p = cx.poly.with_reduced_rhs(c.representative.clone());
    let data = p
        .basis_data(&c.bases[0])
        .ok_or_else(|| Error::Internal("singular basis".into()))?;
    let x = p.point(&data);
    let full = build_matrix(kind, sizes).mul_vec(&x);
    TransportSpec::with_rhs(kind, sizes, &full)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogueRow {
    pub chamber_id: usize,
    /// Index of the symmetry orbit the chamber belongs to.
    pub orbit: usize,
    pub f0: usize,
    pub facets: usize,
    pub diameter: usize,
    /// Full right-hand side: the margins in constraint-row order.
    pub marginals: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Catalogue {
    pub kind: Kind,
    pub sizes: Vec<usize>,
    pub chambers: usize,
    pub orbits: usize,
    /// One row per chamber.
    pub rows: Vec<CatalogueRow>,
}

impl Catalogue {
    pub fn vertex_counts(&self) -> BTreeSet<usize> {
        self.rows.iter().map(|r| r.f0).collect()
    }

    pub fn facet_counts(&self) -> BTreeSet<usize> {
        self.rows.iter().map(|r| r.facets).collect()
    }

    pub fn diameters(&self) -> BTreeSet<usize> {
        self.rows.iter().map(|r| r.diameter).collect()
    }

    /// chamber_id,f0,facets,diameter,marginals_json (the JSON array in one quoted field).
    pub fn to_csv(&self) -> String {
        let mut s = String::from("chamber_id,f0,facets,diameter,marginals_json\n");
        for r in &self.rows {
            let m = serde_json::to_string(&r.marginals)
                .unwrap_or_default()
                .replace('"', "\"\"");
            s.push_str(&format!(
                "{},{},{},{},\"{}\"\n",
                r.chamber_id, r.f0, r.facets, r.diameter, m
            ));
        }
        s
    }
}

pub fn catalogue(kind: Kind, sizes: &[usize]) -> Result<Catalogue> {
    catalogue_with(kind, sizes, MAX_CHAMBERS)
}

pub fn catalogue_with(kind: Kind, sizes: &[usize], limit: usize) -> Result<Catalogue> {
    let cx = ChamberComplex::for_kind(kind, sizes)?;
    let chambers = cx.enumerate(limit)?;
    let m = build_matrix(kind, sizes);
    let mut orbits = Vec::new();
    for c in chambers.iter() {
        let p = cx.poly.with_reduced_rhs(c.representative.clone());
        let a = analyze_polytope(p, sizes, &c.bases[0], &Limits::unsafe_limits())?;
        if !a.nondegenerate || a.graph.vertices.len() != c.bases.len() {
            return Err(Error::Internal(
                "chamber representative is degenerate".into(),
            ));
        }
        let p = cx.poly.with_reduced_rhs(c.representative.clone());
        let data = p
            .basis_data(&c.bases[0])
            .ok_or_else(|| Error::Internal("singular basis".into()))?;
        let x = p.point(&data);
        let mut members: BTreeMap<Vec<Basis>, Vec<String>> = BTreeMap::new();
        for g in &cx.group {
            members.entry(image(&c.bases, g)).or_insert_with(|| {
                let mut y = vec![Q::zero(); x.len()];
                for (j, v) in x.iter().enumerate() {
                    y[g[j]] = v.clone();
                }
                m.mul_vec(&y).iter().map(fmt_q).collect()
            });
        }
        let mut margins: Vec<Vec<String>> = members.into_values().collect();
        margins.sort();
        orbits.push((
            c.bases.len(),
            count_facets_of(&a),
            diameter(&a.graph)?,
            margins,
        ));
    }
    orbits.sort();
    let mut rows = Vec::new();
    for (o, (f0, facets, diameter, margins)) in orbits.iter().enumerate() {
        for marginals in margins {
            rows.push(CatalogueRow {
                chamber_id: rows.len(),
                orbit: o,
                f0: *f0,
                facets: *facets,
                diameter: *diameter,
                marginals: marginals.clone(),
            });
        }
    }
    Ok(Catalogue {
        kind,
        sizes: sizes.to_vec(),
        chambers: chamber_total(&chambers),
        orbits: chambers.len(),
        rows,
    })
}

/// Both sides of |c+| - |c-| = |c0|(|C+| - |C-|) for chambers sharing a wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdStep {
    pub c_minus: usize,
    pub c_plus: usize,
    pub c0: usize,
    pub big_c_minus: usize,
    pub big_c_plus: usize,
    pub identity_holds: bool,
    pub gcd: usize,
    pub divisible: bool,
}

/// Checks the wall-crossing identity between `c_minus` and the adjacent `c_plus`.
/// `gcd` is the modulus to test |C+| - |C-| against (gcd(p,q) for classical p×q).
pub fn gcd_step_check(
    cx: &ChamberComplex,
    c_minus: &Chamber,
    c_plus: &Chamber,
    gcd: usize,
) -> Result<GcdStep> {
    if c_minus.bases == c_plus.bases {
        let n = c_minus.bases.len();
        return Ok(GcdStep {
            c_minus: n,
            c_plus: n,
            c0: 0,
            big_c_minus: 0,
            big_c_plus: 0,
            identity_holds: true,
            gcd,
            divisible: true,
        });
    }
    let f = cx
        .shared_facet(c_minus, c_plus)?
        .ok_or_else(|| Error::Invalid("chambers are not adjacent".into()))?;
    let n = cx.poly.ncols();
    let side: Vec<Q> = (0..n).map(|j| dot(&f.normal, &cx.poly.column(j))).collect();
    let on: Vec<usize> = (0..n).filter(|&j| side[j].is_zero()).collect();
    let big_c_plus = side.iter().filter(|s| s.is_negative()).count();
    let big_c_minus = side.iter().filter(|s| s.is_positive()).count();
    let sub = Matrix::from_columns(
        &on.iter().map(|&j| cx.poly.column(j)).collect::<Vec<_>>(),
        cx.rank(),
    );
    let wall = PartitionPolytope::new(&sub, &f.point)?;
    let (start, _) = wall
        .find_vertex()
        .ok_or_else(|| Error::Internal("facet point outside the wall cone".into()))?;
    let c0 = wall
        .explore(&start, true, crate::polytope::MAX_BASES)?
        .bases
        .len();
    let lhs = c_plus.bases.len() as i64 - c_minus.bases.len() as i64;
    let diff = big_c_plus as i64 - big_c_minus as i64;
    Ok(GcdStep {
        c_minus: c_minus.bases.len(),
        c_plus: c_plus.bases.len(),
        c0,
        big_c_minus,
        big_c_plus,
        identity_holds: lhs == c0 as i64 * diff,
        gcd,
        divisible: gcd == 0 || diff.rem_euclid(gcd as i64) == 0,
    })
}

/// Margins inside the lexicographic chamber of D_{p,q}: u = (1..p), v = (S - e - e^2 - ..., e, e^2, ...), e = 1/1000.
pub fn lex_chamber_margins(p: usize, qq: usize) -> Result<(Vec<Q>, Vec<Q>)> {
    if p == 0 || qq == 0 {
        return Err(Error::Invalid("empty size".into()));
    }
    let eps = Q::new(1.into(), 1000.into());
    let u: Vec<Q> = (1..=p as i64).map(q).collect();
    let s: Q = u.iter().sum();
    let mut v = vec![Q::zero(); qq];
    let mut pow = Q::one();
    for x in v.iter_mut().skip(1) {
        pow = &pow * &eps;
        *x = pow.clone();
    }
    let tail: Q = v.iter().sum();
    v[0] = s - tail;
    Ok((u, v))
}

/// Vertex count of the polytope in the lexicographic chamber; equals p^(q-1).
pub fn lex_chamber_cardinality(p: usize, qq: usize) -> Result<usize> {
    let (u, v) = lex_chamber_margins(p, qq)?;
    let spec = TransportSpec::classical(u, v)?;
    let a = crate::vertex_enum::analyze(&spec)?;
    if !a.nondegenerate {
        return Err(Error::Degenerate(
            "lexicographic margins are degenerate".into(),
        ));
    }
    Ok(a.graph.vertices.len())
}

/// gcd(p, q) for the classical sizes.
pub fn classical_gcd(p: usize, qq: usize) -> usize {
    p.gcd(&qq)
}

/// Wall normals: primitive normals of hyperplanes spanned by rank-1 independent columns.
pub fn wall_normals(poly: &PartitionPolytope) -> Result<Vec<Vec<Q>>> {
    let (n, r) = (poly.ncols(), poly.rank());
    if r < 2 {
        return Ok(Vec::new());
    }
    let subsets = (0..r - 1).fold(1f64, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
    if subsets > MAX_BRUTE_SUBSETS as f64 {
        return Err(Error::Guard(format!(
            "{subsets} column subsets > {MAX_BRUTE_SUBSETS}"
        )));
    }
    let mut out: BTreeMap<Vec<num_bigint::BigInt>, ()> = BTreeMap::new();
    for cols in (0..n).combinations(r - 1) {
        let m = Matrix::from_rows(&cols.iter().map(|&j| poly.column(j)).collect::<Vec<_>>());
        let k = m.kernel_basis();
        if k.cols() == 1 {
            out.insert(canonical_normal(&k.column(0)), ());
        }
    }
    Ok(out.into_keys().map(|k| to_q(&k)).collect())
}

/// Sign of b against each wall (+1, -1, or 0 on the wall).
pub fn wall_signature(walls: &[Vec<Q>], b: &[Q]) -> Vec<i8> {
    walls
        .iter()
        .map(|w| {
            let s = dot(w, b);
            if s.is_positive() {
                1
            } else if s.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect()
}
