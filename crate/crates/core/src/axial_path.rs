//! Pivot paths between vertices of non-degenerate 3-way axial transportation
//! polytopes, routed through the well-ordered vertex level by level.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_core::rational::Q;
use crate::polytope::{Basis, PartitionPolytope};
use crate::transport_model::TransportSpec;
pub use crate::vertex_enum::PivotStep;
use crate::vertex_enum::{northwest_corner_axial, pivot_step, polytope_of, Table};

/// Zero-based cell triplet.
pub type Triplet = [usize; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelState {
    pub vertex: Table,
    /// One-based level, between 3 and p+q+s.
    pub z: usize,
}

impl LevelState {
    /// Staircase triplets with one-based index sum at least z, in increasing order.
    pub fn staircase_prefix(&self) -> Vec<Triplet> {
        let mut s: Vec<Triplet> = support_triplets(&self.vertex)
            .into_iter()
            .filter(|t| t[0] + t[1] + t[2] + 3 >= self.z)
            .collect();
        s.sort_by_key(|t| t[0] + t[1] + t[2]);
        s
    }
}

fn leq(a: &Triplet, b: &Triplet) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]
}

fn meet(a: &Triplet, b: &Triplet) -> Triplet {
    [a[0].min(b[0]), a[1].min(b[1]), a[2].min(b[2])]
}

fn support_triplets(t: &Table) -> Vec<Triplet> {
    t.support()
        .into_iter()
        .map(|c| {
            let u = t.unflatten(c);
            [u[0], u[1], u[2]]
        })
        .collect()
}

fn conditions_hold(supp: &[Triplet], sizes: &[usize], z0: usize) -> bool {
    let top = sizes[0] + sizes[1] + sizes[2] - 3;
    let mut chain: Vec<Triplet> = Vec::new();
    for y in z0..=top {
        let at: Vec<&Triplet> = supp.iter().filter(|t| t[0] + t[1] + t[2] == y).collect();
        if at.len() != 1 {
            return false;
        }
        chain.push(*at[0]);
    }
    if chain.windows(2).any(|w| !leq(&w[0], &w[1])) {
        return false;
    }
    let base = chain[0];
    supp.iter()
        .filter(|t| t[0] + t[1] + t[2] < z0)
        .all(|t| leq(t, &base))
}

/// Smallest level z at which the vertex is well-ordered; None when (p,q,s) is
/// not in the support.
pub fn well_ordered_level(t: &Table) -> Option<usize> {
    let sizes = &t.sizes;
    let supp = support_triplets(t);
    let top = sizes[0] + sizes[1] + sizes[2] - 3;
    (0..=top)
        .find(|&z0| conditions_hold(&supp, sizes, z0))
        .map(|z0| z0 + 3)
}

/// Pivoting context for one axial polytope.
pub struct AxialWalker {
    sizes: Vec<usize>,
    poly: PartitionPolytope,
    hat: Table,
}

impl AxialWalker {
    pub fn new(spec: &TransportSpec) -> Result<Self> {
        let TransportSpec::Axial3 { u, v, w } = spec else {
            return Err(Error::Invalid("expected an axial spec".into()));
        };
        let hat = northwest_corner_axial(u, v, w)?;
        let poly = polytope_of(spec)?;
        let walker = AxialWalker {
            sizes: spec.sizes(),
            poly,
            hat,
        };
        walker.basis_of(&walker.hat)?;
        Ok(walker)
    }

    pub fn well_ordered_vertex(&self) -> &Table {
        &self.hat
    }

    fn cell(&self, t: &Triplet) -> usize {
        (t[0] * self.sizes[1] + t[1]) * self.sizes[2] + t[2]
    }

    fn basis_of(&self, t: &Table) -> Result<Basis> {
        if !self.poly.is_vertex(&t.values) {
            return Err(Error::NotVertex("table is not a vertex".into()));
        }
        let s = t.support();
        if s.len() != self.poly.rank() {
            return Err(Error::Degenerate(format!(
                "vertex support has {} cells, rank is {}",
                s.len(),
                self.poly.rank()
            )));
        }
        Ok(s)
    }

    fn pivot(&self, from: &Table, enter: usize) -> Result<PivotStep> {
        pivot_step(&self.poly, from, enter)
    }

    /// Lemma-driven reduction from level z to z-1.
    pub fn reduce_level(&self, state: &LevelState) -> Result<(LevelState, Vec<PivotStep>)> {
        let z = state.z;
        if z < 5 {
            return Err(Error::Invalid(format!("level {z} < 5")));
        }
        if well_ordered_level(&state.vertex).is_none_or(|l| l > z) {
            return Err(Error::Invalid(format!(
                "vertex is not well-ordered starting at level {z}"
            )));
        }
        let z0 = z - 3;
        let alpha = *support_triplets(&state.vertex)
            .iter()
            .find(|t| t[0] + t[1] + t[2] == z0)
            .ok_or_else(|| Error::Internal("no staircase triplet at the level".into()))?;
        let prefix = state.staircase_prefix();
        let budget = 2 * (z - 4);
        let mut steps: Vec<PivotStep> = Vec::new();
        let mut v = state.vertex.clone();
        loop {
            let s = self.s_sets(&v, &alpha);
            if let Some(i) = (0..3).find(|&i| s[i].is_empty()) {
                let mut nb = alpha;
                nb[i] -= 1;
                let c = self.cell(&nb);
                if v.values[c] == Q::zero() {
                    let st = self.pivot(&v, c)?;
                    v = st.to.clone();
                    steps.push(st);
                }
                break;
            }
            let new = self.decrease_s(&v, &alpha, &s)?;
            let Some(last) = new.last() else {
                return Err(Error::Internal("no reduction step applies".into()));
            };
            v = last.to.clone();
            steps.extend(new);
            if steps.len() > budget {
                break;
            }
        }
        if steps.len() > budget {
            return Err(Error::Internal(format!(
                "level {z} used {} pivots > {budget}",
                steps.len()
            )));
        }
        let supp = support_triplets(&v);
        if !prefix.iter().all(|t| supp.contains(t)) {
            return Err(Error::Internal(
                "staircase above the level was disturbed".into(),
            ));
        }
        match well_ordered_level(&v) {
            Some(l) if l < z => Ok((
                LevelState {
                    vertex: v,
                    z: z - 1,
                },
                steps,
            )),
            _ => Err(Error::Internal(format!("level {z} did not decrease"))),
        }
    }

    /// S_1, S_2, S_3 for the box below alpha.
    fn s_sets(&self, v: &Table, alpha: &Triplet) -> [BTreeSet<Triplet>; 3] {
        let mut s: [BTreeSet<Triplet>; 3] = Default::default();
        for t in support_triplets(v) {
            if t == *alpha || !leq(&t, alpha) {
                continue;
            }
            for i in 0..3 {
                if t[i] == alpha[i] {
                    s[i].insert(t);
                }
            }
        }
        s
    }

    /// One application of cases (1)-(4); returns the pivots taken.
    fn decrease_s(
        &self,
        v: &Table,
        alpha: &Triplet,
        s: &[BTreeSet<Triplet>; 3],
    ) -> Result<Vec<PivotStep>> {
        let only = |i: usize| -> Vec<Triplet> {
            s[i].iter()
                .filter(|t| (0..3).filter(|&j| j != i).all(|j| !s[j].contains(*t)))
                .copied()
                .collect()
        };
        let both =
            |i: usize, j: usize| -> Vec<Triplet> { s[i].intersection(&s[j]).copied().collect() };
        let r = [only(0), only(1), only(2)];
        let rr = [both(1, 2), both(0, 2), both(0, 1)];
        // case (1): R_i and R_jk
        for i in 0..3 {
            if let (Some(g), Some(b)) = (r[i].first(), rr[i].first()) {
                let st = self.pivot(v, self.cell(&meet(b, g)))?;
                return Ok(vec![st]);
            }
        }
        if rr.iter().all(|x| !x.is_empty()) {
            // case (2): beta in R_13, gamma in R_23
            let st = self.pivot(v, self.cell(&meet(&rr[1][0], &rr[0][0])))?;
            let v2 = st.to.clone();
            let s2 = self.s_sets(&v2, alpha);
            if s2.iter().any(|x| x.is_empty()) {
                return Ok(vec![st]);
            }
            let mut out = vec![st];
            out.extend(self.decrease_s(&v2, alpha, &s2)?);
            return Ok(out);
        }
        if r.iter().all(|x| !x.is_empty()) {
            return self.octagon(v, alpha, &r[0][0], &r[1][0], &r[2][0]);
        }
        // case (4): everything in one S_i; beta in R_ij, gamma in R_ik
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let a = both(i, j);
            let b = both(i, k);
            if let (Some(x), Some(y)) = (a.first(), b.first()) {
                return Ok(vec![self.pivot(v, self.cell(&meet(x, y)))?]);
            }
        }
        Err(Error::Internal("S-sets fit no case".into()))
    }

    /// Case (3): beta in R_1, gamma in R_2, delta in R_3 around alpha.
    pub fn octagon(
        &self,
        v: &Table,
        alpha: &Triplet,
        beta: &Triplet,
        gamma: &Triplet,
        delta: &Triplet,
    ) -> Result<Vec<PivotStep>> {
        let e1 = [gamma[0], beta[1], beta[2]];
        let e2 = [delta[0], delta[1], gamma[2]];
        let (c1, c2) = (self.cell(&e1), self.cell(&e2));
        let in1 = !Zero::is_zero(&v.values[c1]);
        let in2 = !Zero::is_zero(&v.values[c2]);
        let targets = [self.cell(beta), self.cell(gamma), self.cell(delta)];
        let a = self.cell(alpha);
        let good = |t: &Table| -> bool {
            !Zero::is_zero(&t.values[a]) && targets.iter().any(|&c| Zero::is_zero(&t.values[c]))
        };
        if e1 == e2 || in1 || in2 {
            let enter = if in1 { c2 } else { c1 };
            let st = self.pivot(v, enter)?;
            if !good(&st.to) {
                return Err(Error::Internal(
                    "hexagon pivot kept beta, gamma and delta".into(),
                ));
            }
            return Ok(vec![st]);
        }
        // walk the 2-face with support supp(V) + {e1, e2}
        let mut face: Vec<usize> = v.support();
        face.extend([c1, c2]);
        face.sort_unstable();
        let start = self.basis_of(v)?;
        let mut index: HashMap<Basis, usize> = HashMap::from([(start.clone(), 0)]);
        let mut nodes: Vec<(Table, Option<(usize, PivotStep)>)> = vec![(v.clone(), None)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let depth = path_len(&nodes, i);
            if depth == 2 {
                continue;
            }
            let from = nodes[i].0.clone();
            let basis = from.support();
            for &e in &face {
                if basis.binary_search(&e).is_ok() {
                    continue;
                }
                let st = self.pivot(&from, e)?;
                let key = st.to.support();
                if index.contains_key(&key) {
                    continue;
                }
                index.insert(key, nodes.len());
                nodes.push((st.to.clone(), Some((i, st))));
                queue.push_back(nodes.len() - 1);
            }
        }
        let mut best: Option<usize> = None;
        for i in 1..nodes.len() {
            if !good(&nodes[i].0) {
                continue;
            }
            best = match best {
                Some(b)
                    if (path_len(&nodes, b), &nodes[b].0) <= (path_len(&nodes, i), &nodes[i].0) =>
                {
                    Some(b)
                }
                _ => Some(i),
            };
        }
        let Some(mut i) = best else {
            return Err(Error::Internal(
                "octagon has no suitable vertex within two edges".into(),
            ));
        };
        let mut out = Vec::new();
        while let Some((parent, st)) = nodes[i].1.clone() {
            out.push(st);
            i = parent;
        }
        out.reverse();
        Ok(out)
    }

    /// A walk from t to the well-ordered vertex.
    pub fn path_to_well_ordered(&self, t: &Table) -> Result<Vec<PivotStep>> {
        self.basis_of(t)?;
        let mut steps = Vec::new();
        let mut v = t.clone();
        let last = [self.sizes[0] - 1, self.sizes[1] - 1, self.sizes[2] - 1];
        let c = self.cell(&last);
        if Zero::is_zero(&v.values[c]) {
            let st = self.pivot(&v, c)?;
            v = st.to.clone();
            steps.push(st);
        }
        let mut z =
            well_ordered_level(&v).ok_or_else(|| Error::Internal("corner cell missing".into()))?;
        while z >= 5 {
            let (next, s) = self.reduce_level(&LevelState { vertex: v, z })?;
            steps.extend(s);
            v = next.vertex;
            z = well_ordered_level(&v).ok_or_else(|| Error::Internal("corner cell lost".into()))?;
        }
        if v != self.hat {
            return Err(Error::Internal(
                "walk ended away from the well-ordered vertex".into(),
            ));
        }
        let n = self.sizes.iter().sum::<usize>() - 3;
        if steps.len() > n * n {
            return Err(Error::Internal(format!(
                "walk of {} steps exceeds {}",
                steps.len(),
                n * n
            )));
        }
        Ok(steps)
    }

    pub fn path_between(&self, t1: &Table, t2: &Table) -> Result<Vec<PivotStep>> {
        if t1 == t2 {
            self.basis_of(t1)?;
            return Ok(Vec::new());
        }
        let mut a = self.path_to_well_ordered(t1)?;
        let b = self.path_to_well_ordered(t2)?;
        a.extend(b.iter().rev().map(PivotStep::reversed));
        Ok(a)
    }
}

fn path_len(nodes: &[(Table, Option<(usize, PivotStep)>)], mut i: usize) -> usize {
    let mut n = 0;
    while let Some((p, _)) = &nodes[i].1 {
        i = *p;
        n += 1;
    }
    n
}

pub fn reduce_level(
    spec: &TransportSpec,
    state: &LevelState,
) -> Result<(LevelState, Vec<PivotStep>)> {
    AxialWalker::new(spec)?.reduce_level(state)
}

pub fn path_to_well_ordered(spec: &TransportSpec, t: &Table) -> Result<Vec<PivotStep>> {
    AxialWalker::new(spec)?.path_to_well_ordered(t)
}

pub fn path_between(spec: &TransportSpec, t1: &Table, t2: &Table) -> Result<Vec<PivotStep>> {
    AxialWalker::new(spec)?.path_between(t1, t2)
}

/// Upper bound 2(p+q+s-3)^2 asserted for path_between.
pub fn path_bound(sizes: &[usize]) -> usize {
    let n = sizes.iter().sum::<usize>() - 3;
    2 * n * n
}
