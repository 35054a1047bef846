//! Klee-Walkup Q4, wedges and one-point suspensions, Hirsch-sharp
//! transportation polytopes, p×2 side-signature paths and network-flow paths.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_core::halfspace::HalfspaceSystem;
use crate::exact_core::hull::{
    affine_dimension, bfs_distances, facet_adjacency, facets_brute_force,
};
use crate::exact_core::matrix::Matrix;
use crate::exact_core::rational::{dot, q, Q};
use crate::polytope::PartitionPolytope;
use crate::transport_model::TransportSpec;
use crate::vertex_enum::{
    analyze, analyze_polytope, count_facets_of, northwest_corner, pivot_neighbors, pivot_step,
    Analysis, Limits, PivotStep, Table,
};

pub use crate::exact_core::hull::dual_graph_distance;

pub const KLEE_WALKUP_LABELS: [&str; 9] = ["a", "b", "c", "d", "e", "f", "g", "h", "w"];

pub fn klee_walkup_points() -> Vec<Vec<Q>> {
    [
        [-3, 3, 1, 2],
        [3, -3, 1, 2],
        [2, -1, 1, 3],
        [-2, 1, 1, 3],
        [3, 3, -1, 2],
        [-3, -3, -1, 2],
        [-1, -2, -1, 3],
        [1, 2, -1, 3],
        [0, 0, 0, -2],
    ]
    .iter()
    .map(|p| p.iter().map(|&x| q(x)).collect())
    .collect()
}

/// Point indices of a word like "abcd".
pub fn klee_walkup_indices(word: &str) -> Result<Vec<usize>> {
    word.chars()
        .map(|c| {
            KLEE_WALKUP_LABELS
                .iter()
                .position(|l| l.starts_with(c))
                .ok_or_else(|| Error::Invalid(format!("unknown point label {c}")))
        })
        .collect()
}

pub fn klee_walkup_word(idx: &[usize]) -> String {
    idx.iter().map(|&i| KLEE_WALKUP_LABELS[i]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Q4Report {
    pub facets: usize,
    pub facets_avoiding_w: usize,
    pub distance_abcd_efgh: usize,
    /// Ridge-adjacent pairs among facets avoiding w, as label words.
    pub antistar_edges: Vec<(String, String)>,
}

pub fn verify_q4() -> Result<Q4Report> {
    let pts = klee_walkup_points();
    let facets = facets_brute_force(&pts)?;
    let adj = facet_adjacency(&pts, &facets);
    let avoid: Vec<usize> = (0..facets.len())
        .filter(|&i| !facets[i].contains(&8))
        .collect();
    let mut edges = Vec::new();
    for &i in &avoid {
        for &j in &adj[i] {
            if j > i && avoid.contains(&j) {
                let (a, b) = (klee_walkup_word(&facets[i]), klee_walkup_word(&facets[j]));
                edges.push(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    edges.sort();
    let from = klee_walkup_indices("abcd")?;
    let to = klee_walkup_indices("efgh")?;
    let i = facets
        .iter()
        .position(|f| *f == from)
        .ok_or_else(|| Error::Internal("abcd is not a facet".into()))?;
    let j = facets
        .iter()
        .position(|f| *f == to)
        .ok_or_else(|| Error::Internal("efgh is not a facet".into()))?;
    let d = bfs_distances(&adj, i)[j]
        .ok_or_else(|| Error::Internal("ridge graph disconnected".into()))?;
    Ok(Q4Report {
        facets: facets.len(),
        facets_avoiding_w: avoid.len(),
        distance_abcd_efgh: d,
        antistar_edges: edges,
    })
}

/// Q4 itself as {x : <-p, x> >= -1} over the nine points p.
pub fn klee_walkup_h_polytope() -> HalfspaceSystem {
    let mut sys = HalfspaceSystem::new(4);
    for p in klee_walkup_points() {
        sys.add_weak(p.iter().map(|x| -x).collect(), q(-1));
    }
    sys
}

pub const MAX_H_ROWS: usize = 24;
pub const MAX_H_DIM: usize = 7;

/// Vertices, facets and graph of a full-dimensional polytope given by weak rows.
#[derive(Clone, Debug)]
pub struct HAnalysis {
    pub vertices: Vec<Vec<Q>>,
    /// Rows tight at each vertex.
    pub tight: Vec<Vec<usize>>,
    /// One representative row per facet.
    pub facet_rows: Vec<usize>,
    pub adjacency: Vec<Vec<usize>>,
}

impl HAnalysis {
    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for i in 0..self.vertices.len() {
            for d in bfs_distances(&self.adjacency, i) {
                best = best.max(d.ok_or_else(|| Error::Internal("graph disconnected".into()))?);
            }
        }
        Ok(best)
    }

    /// Tight rows with the weak row dropped when it defines no facet.
    pub fn is_facet_row(&self, row: usize) -> bool {
        self.facet_rows.iter().any(|&r| {
            let a: Vec<usize> = (0..self.vertices.len())
                .filter(|&v| self.tight[v].contains(&r))
                .collect();
            let b: Vec<usize> = (0..self.vertices.len())
                .filter(|&v| self.tight[v].contains(&row))
                .collect();
            a == b
        })
    }
}

pub fn analyze_h(sys: &HalfspaceSystem) -> Result<HAnalysis> {
    if !sys.strict.is_empty() || !sys.equalities.is_empty() {
        return Err(Error::Invalid("expected weak inequalities only".into()));
    }
    let (d, m) = (sys.dim, sys.weak.len());
    if m > MAX_H_ROWS || d > MAX_H_DIM {
        return Err(Error::Guard(format!(
            "{m} rows in dimension {d} exceeds {MAX_H_ROWS}/{MAX_H_DIM}"
        )));
    }
    let mut found: BTreeMap<Vec<Q>, Vec<usize>> = BTreeMap::new();
    for rows in (0..m).combinations(d) {
        let a = Matrix::from_rows(
            &rows
                .iter()
                .map(|&r| sys.weak[r].normal.clone())
                .collect::<Vec<_>>(),
        );
        let b: Vec<Q> = rows.iter().map(|&r| sys.weak[r].offset.clone()).collect();
        if a.rank() < d {
            continue;
        }
        let Some(x) = a.solve(&b) else { continue };
        if found.contains_key(&x) || !sys.satisfied_by(&x) {
            continue;
        }
        let tight: Vec<usize> = (0..m).filter(|&r| sys.weak[r].eval(&x).is_zero()).collect();
        found.insert(x, tight);
    }
    if found.is_empty() {
        return Err(Error::Infeasible("no vertices".into()));
    }
    let (vertices, tight): (Vec<Vec<Q>>, Vec<Vec<usize>>) = found.into_iter().unzip();
    if affine_dimension(&vertices) != Some(d) {
        return Err(Error::Degenerate("polytope is not full-dimensional".into()));
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut facet_rows = Vec::new();
    for r in 0..m {
        let on: Vec<usize> = (0..vertices.len())
            .filter(|&v| tight[v].contains(&r))
            .collect();
        let pts: Vec<Vec<Q>> = on.iter().map(|&v| vertices[v].clone()).collect();
        if affine_dimension(&pts) == Some(d - 1) && seen.insert(on) {
            facet_rows.push(r);
        }
    }
    let n = vertices.len();
    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let common: Vec<Vec<Q>> = tight[i]
                .iter()
                .filter(|r| tight[j].contains(r))
                .map(|&r| sys.weak[r].normal.clone())
                .collect();
            if !common.is_empty() && Matrix::from_rows(&common).rank() == d - 1 {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    Ok(HAnalysis {
        vertices,
        tight,
        facet_rows,
        adjacency,
    })
}

/// Wedge over the facet of weak row `row`: <a,x> - t >= b, t >= 0.
pub fn wedge(sys: &HalfspaceSystem, row: usize) -> Result<HalfspaceSystem> {
    if row >= sys.weak.len() {
        return Err(Error::Invalid(format!("no inequality {row}")));
    }
    let h = analyze_h(sys)?;
    if !h.is_facet_row(row) {
        return Err(Error::Invalid(format!(
            "inequality {row} does not define a facet"
        )));
    }
    let mut out = HalfspaceSystem::new(sys.dim + 1);
    for (r, hs) in sys.weak.iter().enumerate() {
        let mut a = hs.normal.clone();
        a.push(if r == row { q(-1) } else { q(0) });
        out.add_weak(a, hs.offset.clone());
    }
    let mut t = vec![q(0); sys.dim];
    t.push(q(1));
    out.add_weak(t, q(0));
    Ok(out)
}

/// Maximal faces of a simplicial complex over string labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplexData {
    pub labels: Vec<String>,
    pub faces: BTreeSet<BTreeSet<String>>,
}

fn maximal(faces: impl IntoIterator<Item = BTreeSet<String>>) -> BTreeSet<BTreeSet<String>> {
    let all: BTreeSet<BTreeSet<String>> = faces.into_iter().collect();
    all.iter()
        .filter(|f| !all.iter().any(|g| g != *f && f.is_subset(g)))
        .cloned()
        .collect()
}

impl SimplicialComplexData {
    pub fn new(faces: &[&[&str]]) -> Self {
        let faces = maximal(
            faces
                .iter()
                .map(|f| f.iter().map(|s| s.to_string()).collect()),
        );
        let labels = faces
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        SimplicialComplexData { labels, faces }
    }

    fn from_faces(faces: BTreeSet<BTreeSet<String>>) -> Self {
        let faces = maximal(faces);
        let labels = faces
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        SimplicialComplexData { labels, faces }
    }

    pub fn is_pure(&self) -> bool {
        self.faces.iter().map(|f| f.len()).all_equal()
    }

    /// Maximal faces of the anti-star of w.
    pub fn antistar(&self, w: &str) -> BTreeSet<BTreeSet<String>> {
        maximal(self.faces.iter().map(|f| {
            let mut g = f.clone();
            g.remove(w);
            g
        }))
    }

    /// Maximal faces of the link of w.
    pub fn link(&self, w: &str) -> BTreeSet<BTreeSet<String>> {
        maximal(self.faces.iter().filter(|f| f.contains(w)).map(|f| {
            let mut g = f.clone();
            g.remove(w);
            g
        }))
    }
}

fn join(faces: &BTreeSet<BTreeSet<String>>, extra: &[&str]) -> Vec<BTreeSet<String>> {
    faces
        .iter()
        .map(|f| {
            let mut g = f.clone();
            g.extend(extra.iter().map(|s| s.to_string()));
            g
        })
        .collect()
}

/// S_w(L) with the two copies of w named `w1`, `w2`.
pub fn one_point_suspension_named(
    k: &SimplicialComplexData,
    w: &str,
    w1: &str,
    w2: &str,
) -> Result<SimplicialComplexData> {
    if !k.labels.iter().any(|l| l == w) {
        return Err(Error::Invalid(format!("{w} is not a vertex")));
    }
    if k.labels.iter().any(|l| l != w && (l == w1 || l == w2)) {
        return Err(Error::Invalid(
            "new labels collide with existing vertices".into(),
        ));
    }
    let ast = k.antistar(w);
    let lk = k.link(w);
    let mut faces = join(&ast, &[w1]);
    faces.extend(join(&ast, &[w2]));
    faces.extend(join(&lk, &[w1, w2]));
    Ok(SimplicialComplexData::from_faces(
        faces.into_iter().collect(),
    ))
}

pub fn one_point_suspension(k: &SimplicialComplexData, w: &str) -> Result<SimplicialComplexData> {
    one_point_suspension_named(k, w, &format!("{w}1"), &format!("{w}2"))
}

/// Suspends k times, each time at the newest copy: w -> w1,w2 then w2 -> w2,w3, ...
pub fn one_point_suspension_iterated(
    k: &SimplicialComplexData,
    w: &str,
    times: usize,
) -> Result<SimplicialComplexData> {
    let mut cur = one_point_suspension(k, w)?;
    for i in 2..=times {
        let at = format!("{w}{i}");
        let tmp = format!("{w}{i}'");
        cur = one_point_suspension_named(&cur, &at, &tmp, &format!("{w}{}", i + 1))?;
        cur = SimplicialComplexData::from_faces(
            cur.faces
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|l| if *l == tmp { at.clone() } else { l.clone() })
                        .collect()
                })
                .collect(),
        );
    }
    Ok(cur)
}

/// (ast_L(w) * boundary of Delta_k) ∪ (lk_L(w) * Delta_k), Delta_k on w1..w_{k+1}.
pub fn one_point_suspension_closed(
    k: &SimplicialComplexData,
    w: &str,
    times: usize,
) -> Result<SimplicialComplexData> {
    if !k.labels.iter().any(|l| l == w) {
        return Err(Error::Invalid(format!("{w} is not a vertex")));
    }
    let simplex: Vec<String> = (1..=times + 1).map(|i| format!("{w}{i}")).collect();
    let refs: Vec<&str> = simplex.iter().map(String::as_str).collect();
    let mut faces = Vec::new();
    for skip in 0..refs.len() {
        let facet: Vec<&str> = refs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, s)| *s)
            .collect();
        faces.extend(join(&k.antistar(w), &facet));
    }
    faces.extend(join(&k.link(w), &refs));
    Ok(SimplicialComplexData::from_faces(
        faces.into_iter().collect(),
    ))
}

/// Generalized Birkhoff margins: p rows summing to q, q columns summing to p.
pub fn generalized_birkhoff(p: usize, qq: usize) -> Result<TransportSpec> {
    TransportSpec::classical(vec![q(qq as i64); p], vec![q(p as i64); qq])
}

/// The half-rotation of [q] used for the second vertex (0-based images).
pub fn half_rotation(qq: usize) -> Vec<usize> {
    let start = if qq % 2 == 1 {
        qq.div_ceil(2)
    } else {
        qq / 2 + 1
    };
    (start..=qq).chain(1..start).map(|x| x - 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HirschSharpPair {
    pub spec: TransportSpec,
    pub v: Table,
    pub v_prime: Table,
    pub disjoint: bool,
    /// p+q-1 when the supports are disjoint.
    pub distance_lower_bound: usize,
}

pub fn hirsch_sharp_pair(p: usize, qq: usize) -> Result<HirschSharpPair> {
    if p.gcd(&qq) != 1 || p.min(qq) < 3 {
        return Err(Error::Invalid(format!(
            "need gcd(p,q) = 1 and min(p,q) >= 3, got {p}x{qq}"
        )));
    }
    let (sigma, tau): (Vec<usize>, Vec<usize>) = if qq > 2 * p {
        ((0..p).collect(), half_rotation(qq))
    } else if (p, qq) == (3, 5) {
        (vec![1, 2, 0], vec![4, 0, 1, 2, 3])
    } else {
        return Err(Error::Invalid(format!(
            "no permutations known for {p}x{qq} with q <= 2p"
        )));
    };
    let spec = generalized_birkhoff(p, qq)?;
    let TransportSpec::Classical { u, v } = &spec else {
        unreachable!()
    };
    let id_p: Vec<usize> = (0..p).collect();
    let id_q: Vec<usize> = (0..qq).collect();
    let a = northwest_corner(u, v, &id_p, &id_q)?;
    let b = northwest_corner(u, v, &sigma, &tau)?;
    let disjoint = a
        .support()
        .iter()
        .all(|c| b.support().binary_search(c).is_err());
    let distance_lower_bound = if disjoint { p + qq - 1 } else { 0 };
    Ok(HirschSharpPair {
        spec,
        v: a,
        v_prime: b,
        disjoint,
        distance_lower_bound,
    })
}

/// (facets, dimension, diameter, diameter == facets - dimension).
pub fn hirsch_report(a: &Analysis, dimension: usize) -> Result<(usize, usize, usize, bool)> {
    let n = count_facets_of(a);
    let diam = crate::vertex_enum::diameter(&a.graph)?;
    Ok((n, dimension, diam, n >= dimension && diam == n - dimension))
}

/// One symbol per row of a p×2 table: 0 when x_{i,1} = 0, 1 when x_{i,1} = u_i, * otherwise.
pub fn side_signature(t: &Table) -> String {
    (0..t.sizes[0])
        .map(|i| {
            if t.get2(i, 0).is_zero() {
                '0'
            } else if t.get2(i, 1).is_zero() {
                '1'
            } else {
                '*'
            }
        })
        .collect()
}

pub fn hamming(a: &str, b: &str) -> usize {
    a.chars().zip(b.chars()).filter(|(x, y)| x != y).count()
}

fn px2_spec(u: &[Q], v: &[Q]) -> Result<TransportSpec> {
    if v.len() != 2 {
        return Err(Error::Invalid("expected two column sums".into()));
    }
    TransportSpec::classical(u.to_vec(), v.to_vec())
}

/// Side-signature guided pivots from t1 to t2 on a generic p×2 polytope.
pub fn px2_path(u: &[Q], v: &[Q], t1: &Table, t2: &Table) -> Result<Vec<PivotStep>> {
    let spec = px2_spec(u, v)?;
    let a = analyze(&spec)?;
    if !a.nondegenerate {
        return Err(Error::Degenerate("p×2 spec is not generic".into()));
    }
    px2_path_in(&a, t1, t2)
}

/// Non-revisiting facet path: each pivot enters a cell positive in t2 and never
/// zeroes a cell freed earlier, so no facet is left twice and the length is at most n-d.
/// Neighbors are tried in order of Hamming distance to t2.
pub fn px2_path_in(a: &Analysis, t1: &Table, t2: &Table) -> Result<Vec<PivotStep>> {
    let target = side_signature(t2);
    let mut steps = Vec::new();
    let mut freed = BTreeSet::new();
    if facet_walk(a, t1, t2, &target, &mut freed, &mut steps)? {
        Ok(steps)
    } else {
        Err(Error::Internal("no non-revisiting path found".into()))
    }
}

fn facet_walk(
    a: &Analysis,
    cur: &Table,
    t2: &Table,
    target: &str,
    freed: &mut BTreeSet<usize>,
    steps: &mut Vec<PivotStep>,
) -> Result<bool> {
    if cur == t2 {
        return Ok(true);
    }
    let mut nbrs: Vec<PivotStep> = pivot_neighbors(&a.polytope, cur)?
        .into_iter()
        .filter(|st| !t2.values[st.enter].is_zero() && !freed.contains(&st.leave))
        .collect();
    nbrs.sort_by_key(|st| hamming(&side_signature(&st.to), target));
    for st in nbrs {
        freed.insert(st.enter);
        steps.push(st.clone());
        if facet_walk(a, &st.to, t2, target, freed, steps)? {
            return Ok(true);
        }
        steps.pop();
        freed.remove(&st.enter);
    }
    Ok(false)
}

/// Directed acyclic network; arcs are 1-based (tail, head).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowNetwork {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    #[serde(with = "crate::serde_q::vec")]
    pub demands: Vec<Q>,
}

impl FlowNetwork {
    /// Arcs (j, i) with 1 <= j - i <= k.
    pub fn gnk(n: usize, k: usize, demands: Vec<Q>) -> Result<Self> {
        if k == 0 || k >= n.max(1) {
            return Err(Error::Invalid(format!("need 1 <= k < n, got n={n}, k={k}")));
        }
        let arcs = (1..=n)
            .flat_map(|i| (i + 1..=(i + k).min(n)).map(move |j| (j, i)))
            .collect();
        let net = FlowNetwork { n, arcs, demands };
        net.validate()?;
        Ok(net)
    }

    pub fn validate(&self) -> Result<()> {
        if self.demands.len() != self.n {
            return Err(Error::Invalid("one demand per node required".into()));
        }
        if self
            .arcs
            .iter()
            .any(|&(a, b)| a == 0 || b == 0 || a > self.n || b > self.n || a == b)
        {
            return Err(Error::Invalid("arc endpoints out of range".into()));
        }
        let mut indeg = vec![0usize; self.n + 1];
        for &(_, b) in &self.arcs {
            indeg[b] += 1;
        }
        let mut ready: Vec<usize> = (1..=self.n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(x) = ready.pop() {
            seen += 1;
            for &(a, b) in &self.arcs {
                if a == x {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.push(b);
                    }
                }
            }
        }
        if seen < self.n {
            return Err(Error::Invalid(
                "directed cycle: the flow polyhedron is unbounded".into(),
            ));
        }
        Ok(())
    }

    pub fn arc_index(&self, tail: usize, head: usize) -> Option<usize> {
        self.arcs.iter().position(|&a| a == (tail, head))
    }

    /// Path arcs i+1 -> i, node i a sink once 1..i-1 are removed, and j -> i-1 implies j -> i for j > i.
    pub fn has_intermediate_property(&self) -> bool {
        let has = |a: usize, b: usize| self.arc_index(a, b).is_some();
        (1..self.n).all(|i| has(i + 1, i))
            && self.arcs.iter().all(|&(a, b)| a > b)
            && self
                .arcs
                .iter()
                .all(|&(j, h)| h < 2 || j <= h + 1 || has(j, h + 1))
    }

    /// Node-arc incidence rows: out-flow minus in-flow equals b(i).
    pub fn constraint_matrix(&self) -> Matrix {
        let mut a = Matrix::zeros(self.n, self.arcs.len());
        for (e, &(t, h)) in self.arcs.iter().enumerate() {
            a.set(t - 1, e, q(1));
            a.set(h - 1, e, q(-1));
        }
        a
    }
}

pub fn flow_polytope(net: &FlowNetwork) -> Result<PartitionPolytope> {
    net.validate()?;
    if net.demands.iter().fold(Q::zero(), |acc, x| acc + x) != Q::zero() {
        return Err(Error::Infeasible("demands do not balance".into()));
    }
    PartitionPolytope::new(&net.constraint_matrix(), &net.demands)
}

pub fn flow_analysis(net: &FlowNetwork) -> Result<Analysis> {
    let poly = flow_polytope(net)?;
    let (start, _) = poly
        .find_vertex()
        .ok_or_else(|| Error::Infeasible("no feasible flow".into()))?;
    analyze_polytope(poly, &[net.arcs.len()], &start, &Limits::default())
}

/// Pivots on the lowest missing arc i+1 -> i until only path arcs remain.
pub fn gnk_canonical_path(net: &FlowNetwork, t: &Table) -> Result<Vec<PivotStep>> {
    if !net.has_intermediate_property() {
        return Err(Error::Invalid(
            "network lacks the intermediate property".into(),
        ));
    }
    let poly = flow_polytope(net)?;
    let path: Vec<usize> = (1..net.n)
        .map(|i| net.arc_index(i + 1, i).unwrap_or(usize::MAX))
        .collect();
    let mut cur = t.clone();
    let mut steps: Vec<PivotStep> = Vec::new();
    while let Some(pos) = path.iter().position(|&e| cur.values[e].is_zero()) {
        let st = pivot_step(&poly, &cur, path[pos])?;
        if path[..=pos].iter().any(|&e| st.to.values[e].is_zero()) {
            return Err(Error::Internal("pivot dropped an acquired path arc".into()));
        }
        cur = st.to.clone();
        steps.push(st);
        if steps.len() > net.arcs.len() {
            return Err(Error::Internal("canonical path exceeded |E| pivots".into()));
        }
    }
    if cur.support() != {
        let mut p = path.clone();
        p.sort_unstable();
        p
    } {
        return Err(Error::Degenerate(
            "final vertex is not supported on the path arcs".into(),
        ));
    }
    Ok(steps)
}

/// True when every entry is strictly positive or every entry is strictly negative.
pub fn strictly_signed(xs: &[Q]) -> bool {
    xs.iter().all(Signed::is_positive) || xs.iter().all(Signed::is_negative)
}

/// Euclidean inner product helper re-exported for callers building H-polytopes.
pub fn inner(a: &[Q], b: &[Q]) -> Q {
    dot(a, b)
}
