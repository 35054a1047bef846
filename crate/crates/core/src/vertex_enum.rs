//! Vertices, north-west corner rules, edge graphs, diameters and facet counts.

use std::collections::{BTreeSet, HashMap};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_core::hull::{affine_dimension, bfs_distances};
use crate::exact_core::rational::{fmt_qvec, sum, Q};
use crate::polytope::{Basis, PartitionPolytope, MAX_BASES};
use crate::transport_model::{build_constraints, is_nonempty, Kind, TransportSpec};

/// Dense table over the cells of a spec in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Table {
    pub sizes: Vec<usize>,
    #[serde(with = "crate::serde_q::vec")]
    pub values: Vec<Q>,
}

impl Table {
    pub fn new(sizes: Vec<usize>, values: Vec<Q>) -> Self {
        debug_assert_eq!(sizes.iter().product::<usize>(), values.len());
        Table { sizes, values }
    }

    pub fn zeros(sizes: &[usize]) -> Self {
        Table {
            sizes: sizes.to_vec(),
            values: vec![Q::zero(); sizes.iter().product()],
        }
    }

    pub fn index2(&self, i: usize, j: usize) -> usize {
        i * self.sizes[1] + j
    }

    pub fn index3(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.sizes[1] + j) * self.sizes[2] + k
    }

    pub fn get2(&self, i: usize, j: usize) -> &Q {
        &self.values[self.index2(i, j)]
    }

    pub fn get3(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.values[self.index3(i, j, k)]
    }

    /// Cell indices with nonzero value, ascending.
    pub fn support(&self) -> Vec<usize> {
        PartitionPolytope::support(&self.values)
    }

    /// Inverse of the row-major flattening.
    pub fn unflatten(&self, c: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        let mut r = c;
        for (d, &n) in self.sizes.iter().enumerate().rev() {
            out[d] = r % n;
            r /= n;
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        fmt_qvec(&self.values)
    }

    /// Rows of a two-way table.
    pub fn rows2(&self) -> Vec<Vec<Q>> {
        (0..self.sizes[0])
            .map(|i| {
                (0..self.sizes[1])
                    .map(|j| self.get2(i, j).clone())
                    .collect()
            })
            .collect()
    }
}

/// Bipartite edges (classical) or triplets (three-way) of the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportGraph {
    Bipartite(Vec<(usize, usize)>),
    Triplets(Vec<(usize, usize, usize)>),
}

pub fn support_graph(t: &Table) -> SupportGraph {
    let s = t.support();
    if t.sizes.len() == 2 {
        SupportGraph::Bipartite(
            s.iter()
                .map(|&c| (c / t.sizes[1], c % t.sizes[1]))
                .collect(),
        )
    } else {
        SupportGraph::Triplets(
            s.iter()
                .map(|&c| {
                    let v = t.unflatten(c);
                    (v[0], v[1], v[2])
                })
                .collect(),
        )
    }
}

/// True when the bipartite support graph has no cycle.
pub fn support_is_forest(t: &Table) -> bool {
    let (p, q) = (t.sizes[0], t.sizes[1]);
    let mut parent: Vec<usize> = (0..p + q).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for c in t.support() {
        let (i, j) = (c / q, c % q);
        let a = find(&mut parent, i);
        let b = find(&mut parent, p + j);
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeGraph {
    pub vertices: Vec<Table>,
    pub adjacency: Vec<Vec<usize>>,
}

impl PolytopeGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(|a| a.len()).collect()
    }

    pub fn index_of(&self, t: &Table) -> Option<usize> {
        self.vertices.binary_search(t).ok()
    }

    pub fn distance(&self, a: usize, b: usize) -> Option<usize> {
        bfs_distances(&self.adjacency, a)[b]
    }
}

/// Size guards for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_cells: usize,
    pub max_bases: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cells: 27,
            max_bases: MAX_BASES,
        }
    }
}

impl Limits {
    pub fn unsafe_limits() -> Self {
        Limits {
            max_cells: usize::MAX,
            max_bases: usize::MAX,
        }
    }
}

/// Everything learned from one enumeration of a polytope.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub polytope: PartitionPolytope,
    pub graph: PolytopeGraph,
    /// One basis per vertex when the polytope is non-degenerate.
    pub bases: Option<Vec<Basis>>,
    pub nondegenerate: bool,
}

fn spec_polytope(spec: &TransportSpec) -> Result<PartitionPolytope> {
    let sys = build_constraints(spec);
    PartitionPolytope::new(&sys.a, &sys.b)
}

pub fn polytope_of(spec: &TransportSpec) -> Result<PartitionPolytope> {
    if !is_nonempty(spec) {
        return Err(Error::Infeasible("empty transportation polytope".into()));
    }
    spec_polytope(spec)
}

fn start_vertex(spec: &TransportSpec, poly: &PartitionPolytope) -> Result<(Basis, Vec<Q>)> {
    if let TransportSpec::Classical { u, v } = spec {
        let p = u.len();
        let q = v.len();
        let t = northwest_corner(
            u,
            v,
            &(0..p).collect::<Vec<_>>(),
            &(0..q).collect::<Vec<_>>(),
        )?;
        let basis = poly
            .complete_basis(&t.support())
            .ok_or_else(|| Error::Internal("north-west corner support is dependent".into()))?;
        return Ok((basis, t.values));
    }
    poly.find_vertex()
        .ok_or_else(|| Error::Infeasible("no feasible table".into()))
}

/// Enumerates vertices and edges of any partition polytope given a starting basis.
pub fn analyze_polytope(
    poly: PartitionPolytope,
    sizes: &[usize],
    start: &[usize],
    limits: &Limits,
) -> Result<Analysis> {
    match poly.explore(start, true, limits.max_bases) {
        Ok(ex) => {
            let mut order: Vec<usize> = (0..ex.points.len()).collect();
            order.sort_by(|&a, &b| ex.points[a].cmp(&ex.points[b]));
            let mut rank = vec![0; order.len()];
            for (r, &i) in order.iter().enumerate() {
                rank[i] = r;
            }
            let vertices: Vec<Table> = order
                .iter()
                .map(|&i| Table::new(sizes.to_vec(), ex.points[i].clone()))
                .collect();
            let bases: Vec<Basis> = order.iter().map(|&i| ex.bases[i].clone()).collect();
            let mut adjacency = vec![Vec::new(); vertices.len()];
            for &(a, b) in &ex.edges {
                adjacency[rank[a]].push(rank[b]);
                adjacency[rank[b]].push(rank[a]);
            }
            for a in adjacency.iter_mut() {
                a.sort_unstable();
                a.dedup();
            }
            Ok(Analysis {
                polytope: poly,
                graph: PolytopeGraph {
                    vertices,
                    adjacency,
                },
                bases: Some(bases),
                nondegenerate: true,
            })
        }
        Err(Error::Degenerate(_)) => {
            let ex = poly.explore(start, false, limits.max_bases)?;
            let set: BTreeSet<Vec<Q>> = ex.points.iter().cloned().collect();
            let vertices: Vec<Table> = set
                .into_iter()
                .map(|x| Table::new(sizes.to_vec(), x))
                .collect();
            let at: HashMap<&[Q], usize> = vertices
                .iter()
                .enumerate()
                .map(|(i, t)| (t.values.as_slice(), i))
                .collect();
            let mut adjacency = vec![Vec::new(); vertices.len()];
            for &(a, b) in &ex.edges {
                let (i, j) = (at[ex.points[a].as_slice()], at[ex.points[b].as_slice()]);
                if i != j {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
            for a in adjacency.iter_mut() {
                a.sort_unstable();
                a.dedup();
            }
            Ok(Analysis {
                polytope: poly,
                graph: PolytopeGraph {
                    vertices,
                    adjacency,
                },
                bases: None,
                nondegenerate: false,
            })
        }
        Err(e) => Err(e),
    }
}

pub fn analyze_with(spec: &TransportSpec, limits: &Limits) -> Result<Analysis> {
    if spec.kind() != Kind::Classical && spec.cell_count() > limits.max_cells {
        return Err(Error::Guard(format!(
            "{} cells > {}",
            spec.cell_count(),
            limits.max_cells
        )));
    }
    let poly = polytope_of(spec)?;
    let (start, _) = start_vertex(spec, &poly)?;
    analyze_polytope(poly, &spec.sizes(), &start, limits)
}

pub fn analyze(spec: &TransportSpec) -> Result<Analysis> {
    analyze_with(spec, &Limits::default())
}

pub fn enumerate_vertices(spec: &TransportSpec) -> Result<Vec<Table>> {
    Ok(analyze(spec)?.graph.vertices)
}

pub fn polytope_graph(spec: &TransportSpec) -> Result<PolytopeGraph> {
    Ok(analyze(spec)?.graph)
}

/// Every vertex has support of size rank, i.e. the polytope is simple of full dimension.
pub fn is_nondegenerate(spec: &TransportSpec) -> Result<bool> {
    Ok(analyze(spec)?.nondegenerate)
}

pub fn is_vertex(spec: &TransportSpec, t: &Table) -> Result<bool> {
    let poly = spec_polytope(spec)?;
    Ok(poly.is_vertex(&t.values))
}

pub fn adjacent(spec: &TransportSpec, t1: &Table, t2: &Table) -> Result<bool> {
    let poly = spec_polytope(spec)?;
    if !poly.is_vertex(&t1.values) || !poly.is_vertex(&t2.values) {
        return Err(Error::NotVertex("adjacency needs two vertices".into()));
    }
    Ok(poly.adjacent(&t1.values, &t2.values))
}

/// Classical criterion: the union of the two supports contains exactly one cycle.
pub fn adjacent_by_unique_cycle(t1: &Table, t2: &Table) -> bool {
    if t1 == t2 {
        return false;
    }
    let (p, q) = (t1.sizes[0], t1.sizes[1]);
    let cells: BTreeSet<usize> = t1.support().into_iter().chain(t2.support()).collect();
    // cyclomatic number of the union graph
    let mut parent: Vec<usize> = (0..p + q).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut cycles = 0;
    for &c in &cells {
        let a = find(&mut parent, c / q);
        let b = find(&mut parent, p + c % q);
        if a == b {
            cycles += 1;
        } else {
            parent[a] = b;
        }
    }
    cycles == 1
}

pub fn diameter(g: &PolytopeGraph) -> Result<usize> {
    let mut best = 0;
    for s in 0..g.vertices.len() {
        for d in bfs_distances(&g.adjacency, s) {
            match d {
                Some(x) => best = best.max(x),
                None => return Err(Error::Internal("polytope graph is disconnected".into())),
            }
        }
    }
    Ok(best)
}

/// Facets counted as distinct zero-set faces of full codimension one,
/// using the affine rank of incident vertices.
pub fn count_facets_affine(vertices: &[Table]) -> usize {
    let Some(first) = vertices.first() else {
        return 0;
    };
    let pts: Vec<Vec<Q>> = vertices.iter().map(|t| t.values.clone()).collect();
    let Some(d) = affine_dimension(&pts) else {
        return 0;
    };
    if d == 0 {
        return 0;
    }
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in 0..first.values.len() {
        let on: Vec<usize> = (0..pts.len()).filter(|&i| pts[i][c].is_zero()).collect();
        if on.is_empty() || on.len() == pts.len() {
            continue;
        }
        let sub: Vec<Vec<Q>> = on.iter().map(|&i| pts[i].clone()).collect();
        if affine_dimension(&sub) == Some(d - 1) {
            faces.insert(on);
        }
    }
    faces.len()
}

/// For simple full-dimensional polytopes a cell spans a facet exactly when some vertex vanishes on it.
pub fn count_facets_simple(vertices: &[Table]) -> usize {
    let Some(first) = vertices.first() else {
        return 0;
    };
    if vertices.len() == 1 {
        return 0;
    }
    (0..first.values.len())
        .filter(|&c| vertices.iter().any(|t| t.values[c].is_zero()))
        .count()
}

pub fn count_facets_of(a: &Analysis) -> usize {
    if a.nondegenerate {
        count_facets_simple(&a.graph.vertices)
    } else {
        count_facets_affine(&a.graph.vertices)
    }
}

pub fn count_facets(spec: &TransportSpec) -> Result<usize> {
    Ok(count_facets_of(&analyze(spec)?))
}

/// North-west corner rule started at (sigma[p-1], tau[q-1]) and walking the
/// permuted order backwards. Permutations are 0-based images.
pub fn northwest_corner(u: &[Q], v: &[Q], sigma: &[usize], tau: &[usize]) -> Result<Table> {
    let (p, q) = (u.len(), v.len());
    if sigma.len() != p || tau.len() != q || !is_permutation(sigma) || !is_permutation(tau) {
        return Err(Error::Invalid(
            "sigma and tau must be permutations of the row and column indices".into(),
        ));
    }
    if sum(u) != sum(v) || u.iter().chain(v).any(|x| x.is_negative()) {
        return Err(Error::Infeasible("margins do not balance".into()));
    }
    let mut t = Table::zeros(&[p, q]);
    let mut ru = u.to_vec();
    let mut rv = v.to_vec();
    let (mut a, mut b) = (p, q);
    while a > 0 && b > 0 {
        let i = sigma[a - 1];
        let j = tau[b - 1];
        let m = if ru[i] < rv[j] {
            ru[i].clone()
        } else {
            rv[j].clone()
        };
        let c = t.index2(i, j);
        t.values[c] = m.clone();
        ru[i] -= &m;
        rv[j] -= &m;
        let row_done = ru[i].is_zero();
        let col_done = rv[j].is_zero();
        if row_done && col_done {
            // equal minima: continue on the (p-1) x (q-1) remainder
            a -= 1;
            b -= 1;
        } else if row_done {
            a -= 1;
        } else {
            b -= 1;
        }
    }
    Ok(t)
}

fn is_permutation(s: &[usize]) -> bool {
    let mut seen = vec![false; s.len()];
    for &x in s {
        if x >= s.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Greedy three-way filling from (1,1,1); fails on simultaneous exhaustion
/// before the last cell.
pub fn northwest_corner_axial(u: &[Q], v: &[Q], w: &[Q]) -> Result<Table> {
    let (p, q, s) = (u.len(), v.len(), w.len());
    if sum(u) != sum(v) || sum(v) != sum(w) {
        return Err(Error::Infeasible("axial margins do not balance".into()));
    }
    let mut t = Table::zeros(&[p, q, s]);
    let (mut ru, mut rv, mut rw) = (u.to_vec(), v.to_vec(), w.to_vec());
    let (mut i, mut j, mut k) = (0, 0, 0);
    loop {
        let mut m = ru[i].clone();
        if rv[j] < m {
            m = rv[j].clone();
        }
        if rw[k] < m {
            m = rw[k].clone();
        }
        let c = t.index3(i, j, k);
        t.values[c] = m.clone();
        ru[i] -= &m;
        rv[j] -= &m;
        rw[k] -= &m;
        let last = i + 1 == p && j + 1 == q && k + 1 == s;
        let done = [ru[i].is_zero(), rv[j].is_zero(), rw[k].is_zero()];
        if last {
            if done.iter().all(|&d| d) {
                return Ok(t);
            }
            return Err(Error::Infeasible("axial margins exhausted unevenly".into()));
        }
        if done.iter().filter(|&&d| d).count() > 1 {
            return Err(Error::Degenerate(format!(
                "tie at cell ({},{},{})",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        if done[0] {
            i += 1;
        } else if done[1] {
            j += 1;
        } else {
            k += 1;
        }
        if i == p || j == q || k == s {
            return Err(Error::Infeasible("axial margins exhausted unevenly".into()));
        }
    }
}

/// One simplex pivot between adjacent vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotStep {
    pub enter: usize,
    pub leave: usize,
    pub from: Table,
    pub to: Table,
}

impl PivotStep {
    pub fn reversed(&self) -> PivotStep {
        PivotStep {
            enter: self.leave,
            leave: self.enter,
            from: self.to.clone(),
            to: self.from.clone(),
        }
    }
}

fn simple_basis(poly: &PartitionPolytope, t: &Table) -> Result<Basis> {
    if !poly.is_vertex(&t.values) {
        return Err(Error::NotVertex("table is not a vertex".into()));
    }
    let s = t.support();
    if s.len() != poly.rank() {
        return Err(Error::Degenerate(format!(
            "vertex support has {} cells, rank is {}",
            s.len(),
            poly.rank()
        )));
    }
    Ok(s)
}

/// The pivot entering `enter` at a non-degenerate vertex.
pub fn pivot_step(poly: &PartitionPolytope, from: &Table, enter: usize) -> Result<PivotStep> {
    let basis = simple_basis(poly, from)?;
    let data = poly
        .basis_data(&basis)
        .ok_or_else(|| Error::Internal("singular support".into()))?;
    let pv = poly.pivot_in(&data, enter)?;
    let to = Table::new(from.sizes.clone(), pv.point);
    if to.support().len() != poly.rank() {
        return Err(Error::Degenerate(
            "pivot reached a degenerate vertex".into(),
        ));
    }
    Ok(PivotStep {
        enter,
        leave: pv.leave,
        from: from.clone(),
        to,
    })
}

/// Every pivot out of a non-degenerate vertex, by entering cell.
pub fn pivot_neighbors(poly: &PartitionPolytope, from: &Table) -> Result<Vec<PivotStep>> {
    let basis = simple_basis(poly, from)?;
    (0..poly.ncols())
        .filter(|c| basis.binary_search(c).is_err())
        .map(|c| pivot_step(poly, from, c))
        .collect()
}

/// Vertex and edge correspondence between a planar 2×2×p polytope and its p×2 classical image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Iso22nReport {
    pub p: usize,
    pub planar_vertices: usize,
    pub classical_vertices: usize,
    pub planar_edges: usize,
    pub classical_edges: usize,
    /// Every planar vertex maps to a classical vertex and back to itself.
    pub round_trip_identity: bool,
    /// The vertex map carries each neighbourhood onto the image neighbourhood.
    pub edges_preserved: bool,
    pub degrees_planar: Vec<usize>,
    pub degrees_classical: Vec<usize>,
}

impl Iso22nReport {
    pub fn isomorphic(&self) -> bool {
        self.round_trip_identity
            && self.edges_preserved
            && self.planar_vertices == self.classical_vertices
            && self.planar_edges == self.classical_edges
    }
}

pub fn iso_22n_report(spec: &TransportSpec) -> Result<Iso22nReport> {
    let iso = crate::transport_model::planar_2x2xp_to_classical(spec)?;
    let left = analyze(spec)?.graph;
    let right = analyze(&iso.classical)?.graph;
    let image: Vec<Option<usize>> = left
        .vertices
        .iter()
        .map(|x| right.index_of(&iso.to_classical(x)))
        .collect();
    let round_trip_identity = left
        .vertices
        .iter()
        .zip(&image)
        .all(|(x, j)| j.is_some_and(|j| iso.to_planar(&right.vertices[j]) == *x));
    let edges_preserved = round_trip_identity
        && image.iter().collect::<BTreeSet<_>>().len() == right.vertices.len()
        && left.adjacency.iter().enumerate().all(|(i, nb)| {
            let mapped: BTreeSet<usize> = nb.iter().filter_map(|&k| image[k]).collect();
            image[i].is_some_and(|j| mapped == right.adjacency[j].iter().copied().collect())
        });
    let mut degrees_planar = left.degrees();
    let mut degrees_classical = right.degrees();
    degrees_planar.sort_unstable();
    degrees_classical.sort_unstable();
    Ok(Iso22nReport {
        p: spec.sizes()[2],
        planar_vertices: left.vertices.len(),
        classical_vertices: right.vertices.len(),
        planar_edges: left.edge_count(),
        classical_edges: right.edge_count(),
        round_trip_identity,
        edges_preserved,
        degrees_planar,
        degrees_classical,
    })
}
