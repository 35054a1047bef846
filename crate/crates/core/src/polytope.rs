//! Generic machinery for partition polytopes {x : Ax = b, x >= 0}: bases,
//! pivots, vertex enumeration and the edge graph.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_core::lp::{maximize, LpResult};
use crate::exact_core::matrix::{rref_in_place, Matrix};
use crate::exact_core::rational::Q;

/// Sorted column indices of a basis.
pub type Basis = Vec<usize>;

pub const MAX_BASES: usize = 400_000;
/// Basis inverses kept per constraint matrix; later bases are inverted on demand.
pub const INVERSE_CACHE: usize = 20_000;

type InverseCache = Arc<Mutex<HashMap<Basis, Option<Arc<Vec<Vec<Q>>>>>>>;
/// D·B^{-1} as a flat row-major i128 matrix with D > 0 the common denominator.
type IntInverseCache = Arc<Mutex<HashMap<Basis, Option<Arc<Vec<i128>>>>>>;

#[derive(Clone, Debug)]
pub struct PartitionPolytope {
    /// Independent rows of the constraint matrix.
    rows: Arc<Vec<Vec<Q>>>,
    /// Sparse columns: row positions holding a nonzero, with values.
    cols: Arc<Vec<Vec<(usize, Q)>>>,
    /// Shared by every right-hand side over the same matrix.
    inverses: InverseCache,
    int_inverses: IntInverseCache,
    /// The sparse columns again when every entry is a machine integer.
    int_cols: Option<Arc<Vec<Vec<(usize, i128)>>>>,
    b: Vec<Q>,
    rank: usize,
    ncols: usize,
}

/// A pivot between two feasible bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub enter: usize,
    pub leave: usize,
    pub basis: Basis,
    pub point: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct BasisData {
    pub basis: Basis,
    pub inverse: Arc<Vec<Vec<Q>>>,
    pub values: Vec<Q>,
}

impl BasisData {
    pub fn is_degenerate(&self) -> bool {
        self.values.iter().any(|x| x.is_zero())
    }
}

fn invert(m: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    if rref_in_place(&mut aug, n).len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn small_int(x: &num_bigint::BigInt) -> Option<i128> {
    i64::try_from(x).ok().map(i128::from)
}

impl PartitionPolytope {
    /// Drops dependent rows; fails when the equations are inconsistent.
    pub fn new(a: &Matrix, b: &[Q]) -> Result<Self> {
        assert_eq!(a.rows(), b.len());
        let keep = a.independent_rows();
        let mut aug: Vec<Vec<Q>> = (0..a.rows())
            .map(|i| {
                let mut r = a.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let piv = rref_in_place(&mut aug, a.cols() + 1);
        if piv.contains(&a.cols()) {
            return Err(Error::Infeasible(
                "margin equations are inconsistent".into(),
            ));
        }
        let rows: Vec<Vec<Q>> = keep.iter().map(|&i| a.row(i).to_vec()).collect();
        let bb: Vec<Q> = keep.iter().map(|&i| b[i].clone()).collect();
        Ok(Self::from_independent(rows, bb, a.cols()))
    }

    fn from_independent(rows: Vec<Vec<Q>>, b: Vec<Q>, ncols: usize) -> Self {
        let cols = (0..ncols)
            .map(|j| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, r)| !r[j].is_zero())
                    .map(|(i, r)| (i, r[j].clone()))
                    .collect()
            })
            .collect();
        let rank = rows.len();
        let cols: Vec<Vec<(usize, Q)>> = cols;
        let int_cols = cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(i, v)| {
                        if v.is_integer() {
                            small_int(v.numer()).map(|x| (*i, x))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect::<Option<Vec<Vec<_>>>>()
            .map(Arc::new);
        PartitionPolytope {
            rows: Arc::new(rows),
            cols: Arc::new(cols),
            inverses: Arc::default(),
            int_inverses: Arc::default(),
            int_cols,
            b,
            rank,
            ncols,
        }
    }

    /// Same matrix, different right-hand side (given in reduced-row coordinates).
    pub fn with_reduced_rhs(&self, b: Vec<Q>) -> Self {
        PartitionPolytope {
            b,
            ..self.clone_matrix()
        }
    }

    fn clone_matrix(&self) -> Self {
        PartitionPolytope {
            rows: Arc::clone(&self.rows),
            cols: Arc::clone(&self.cols),
            inverses: Arc::clone(&self.inverses),
            int_inverses: Arc::clone(&self.int_inverses),
            int_cols: self.int_cols.clone(),
            b: Vec::new(),
            rank: self.rank,
            ncols: self.ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rhs(&self) -> &[Q] {
        &self.b
    }

    pub fn reduced_matrix(&self) -> Matrix {
        if self.rows.is_empty() {
            return Matrix::zeros(0, self.ncols);
        }
        Matrix::from_rows(&self.rows)
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        let mut c = vec![Q::zero(); self.rank];
        for (i, v) in &self.cols[j] {
            c[*i] = v.clone();
        }
        c
    }

    pub fn basis_data(&self, basis: &[usize]) -> Option<BasisData> {
        let inverse = self.inverse_of(basis)?;
        let values = inverse
            .iter()
            .map(|r| crate::exact_core::rational::dot(r, &self.b))
            .collect();
        Some(BasisData {
            basis: basis.to_vec(),
            inverse,
            values,
        })
    }

    fn inverse_of(&self, basis: &[usize]) -> Option<Arc<Vec<Vec<Q>>>> {
        if let Some(hit) = self
            .inverses
            .lock()
            .ok()
            .and_then(|c| c.get(basis).cloned())
        {
            return hit;
        }
        let m: Vec<Vec<Q>> = (0..self.rank)
            .map(|i| basis.iter().map(|&j| self.rows[i][j].clone()).collect())
            .collect();
        let inverse = invert(m).map(Arc::new);
        if let Ok(mut c) = self.inverses.lock() {
            if c.len() < INVERSE_CACHE {
                c.insert(basis.to_vec(), inverse.clone());
            }
        }
        inverse
    }

    /// B^{-1} a_j for the given basis inverse.
    pub fn direction(&self, inverse: &[Vec<Q>], j: usize) -> Vec<Q> {
        inverse
            .iter()
            .map(|r| {
                let mut s = Q::zero();
                for (i, v) in &self.cols[j] {
                    if !r[*i].is_zero() {
                        s += &r[*i] * v;
                    }
                }
                s
            })
            .collect()
    }

    pub fn point(&self, data: &BasisData) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.ncols];
        for (k, &j) in data.basis.iter().enumerate() {
            x[j] = data.values[k].clone();
        }
        x
    }

    pub fn is_feasible(&self, x: &[Q]) -> bool {
        if x.len() != self.ncols || x.iter().any(|v| v.is_negative()) {
            return false;
        }
        self.rows
            .iter()
            .zip(&self.b)
            .all(|(r, bi)| crate::exact_core::rational::dot(r, x) == *bi)
    }

    pub fn columns_rank(&self, idx: &[usize]) -> usize {
        if idx.is_empty() || self.rank == 0 {
            return 0;
        }
        let mut m: Vec<Vec<Q>> = idx.iter().map(|&j| self.column(j)).collect();
        rref_in_place(&mut m, self.rank).len()
    }

    pub fn support(x: &[Q]) -> Vec<usize> {
        x.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Feasible with linearly independent support columns.
    pub fn is_vertex(&self, x: &[Q]) -> bool {
        let s = Self::support(x);
        self.is_feasible(x) && self.columns_rank(&s) == s.len()
    }

    /// Dimension of the smallest face containing both points.
    pub fn joint_face_dimension(&self, x: &[Q], y: &[Q]) -> usize {
        let s: Vec<usize> = (0..self.ncols)
            .filter(|&j| !x[j].is_zero() || !y[j].is_zero())
            .collect();
        s.len() - self.columns_rank(&s)
    }

    /// Segment [x, y] is an edge: their joint face has dimension one.
    pub fn adjacent(&self, x: &[Q], y: &[Q]) -> bool {
        x != y && self.joint_face_dimension(x, y) == 1
    }

    /// Extends independent support columns to a basis.
    pub fn complete_basis(&self, support: &[usize]) -> Option<Basis> {
        let mut chosen: Vec<usize> = Vec::new();
        let mut echelon: Vec<Vec<Q>> = Vec::new();
        let candidates = support
            .iter()
            .copied()
            .chain((0..self.ncols).filter(|j| !support.contains(j)));
        for j in candidates {
            if chosen.len() == self.rank {
                break;
            }
            let mut trial = echelon.clone();
            trial.push(self.column(j));
            if rref_in_place(&mut trial, self.rank).len() == chosen.len() + 1 {
                chosen.push(j);
                echelon = trial;
            } else if support.contains(&j) {
                return None;
            }
        }
        if chosen.len() < self.rank {
            return None;
        }
        chosen.sort_unstable();
        Some(chosen)
    }

    /// A vertex found by phase one of the simplex method.
    pub fn find_vertex(&self) -> Option<(Basis, Vec<Q>)> {
        let a = self.reduced_matrix();
        let c = vec![Q::zero(); self.ncols];
        let LpResult::Optimal { x, .. } = maximize(&a, &self.b, &c) else {
            return None;
        };
        let basis = self.complete_basis(&Self::support(&x))?;
        Some((basis, x))
    }

    /// Pivots entering column `e`, one per tied leaving row.
    fn pivots_entering(&self, data: &BasisData, e: usize, strict: bool) -> Result<Vec<Pivot>> {
        let d = self.direction(&data.inverse, e);
        let mut best: Option<Q> = None;
        let mut leaving: Vec<usize> = Vec::new();
        for (k, dk) in d.iter().enumerate() {
            if !dk.is_positive() {
                continue;
            }
            let r = &data.values[k] / dk;
            match &best {
                Some(b) if r > *b => {}
                Some(b) if r == *b => leaving.push(k),
                _ => {
                    best = Some(r);
                    leaving = vec![k];
                }
            }
        }
        let Some(theta) = best else {
            return Err(Error::Invalid("unbounded edge direction".into()));
        };
        if strict && leaving.len() > 1 {
            return Err(Error::Degenerate(format!("ratio tie entering column {e}")));
        }
        let mut out = Vec::new();
        for &k in &leaving {
            let mut x = self.point(data);
            for (kk, &j) in data.basis.iter().enumerate() {
                x[j] = &data.values[kk] - &theta * &d[kk];
            }
            x[e] = theta.clone();
            let leave = data.basis[k];
            x[leave] = Q::zero();
            let mut basis = data.basis.clone();
            basis[k] = e;
            basis.sort_unstable();
            out.push(Pivot {
                enter: e,
                leave,
                basis,
                point: x,
            });
        }
        Ok(out)
    }

    /// The simplex pivot bringing column `e` into a non-degenerate basis.
    pub fn pivot_in(&self, data: &BasisData, e: usize) -> Result<Pivot> {
        if data.is_degenerate() {
            return Err(Error::Degenerate(format!(
                "basis {:?} has a zero basic value",
                data.basis
            )));
        }
        if data.basis.binary_search(&e).is_ok() {
            return Err(Error::Invalid(format!("column {e} is already basic")));
        }
        let mut v = self.pivots_entering(data, e, true)?;
        Ok(v.remove(0))
    }

    /// All pivots out of a feasible basis, including degenerate ones.
    /// `strict` rejects ratio ties and zero basic values.
    pub fn pivots(&self, data: &BasisData, strict: bool) -> Result<Vec<Pivot>> {
        if strict && data.is_degenerate() {
            return Err(Error::Degenerate(format!(
                "basis {:?} has a zero basic value",
                data.basis
            )));
        }
        let mut out = Vec::new();
        for e in 0..self.ncols {
            if data.basis.binary_search(&e).is_ok() {
                continue;
            }
            out.extend(self.pivots_entering(data, e, strict)?);
        }
        Ok(out)
    }

    fn int_inverse_of(&self, basis: &[usize]) -> Option<Arc<Vec<i128>>> {
        if let Some(hit) = self
            .int_inverses
            .lock()
            .ok()
            .and_then(|c| c.get(basis).cloned())
        {
            return hit;
        }
        let scaled = self.inverse_of(basis).and_then(|inv| {
            let flat: Vec<Q> = inv.iter().flatten().cloned().collect();
            let d = crate::exact_core::rational::lcm_of_denominators(&flat);
            let dq = Q::from_integer(d);
            flat.iter()
                .map(|x| small_int(&(x * &dq).to_integer()))
                .collect::<Option<Vec<i128>>>()
                .map(Arc::new)
        });
        if let Ok(mut c) = self.int_inverses.lock() {
            if c.len() < INVERSE_CACHE {
                c.insert(basis.to_vec(), scaled.clone());
            }
        }
        scaled
    }

    /// Rows of D·B^{-1} for some D > 0, when they fit in machine integers.
    pub fn scaled_inverse_rows(&self, basis: &[usize]) -> Option<Vec<Vec<i128>>> {
        let m = self.int_inverse_of(basis)?;
        Some(m.chunks(self.rank).map(|c| c.to_vec()).collect())
    }

    /// Feasible bases of a non-degenerate polytope by a breadth-first pivot search in
    /// machine integers, started from the first candidate basis feasible at b.
    /// None when no candidate is feasible or a value leaves the integer range;
    /// Some(Err(Degenerate)) on a zero basic value or a ratio tie.
    pub fn strict_bases_int(
        &self,
        candidates: &[Basis],
        limit: usize,
    ) -> Option<Result<Vec<Basis>>> {
        let cols = self.int_cols.as_ref()?;
        let b: Vec<i128> = crate::exact_core::rational::primitive(&self.b)
            .iter()
            .map(small_int)
            .collect::<Option<_>>()?;
        let r = self.rank;
        let values = |m: &[i128]| -> Option<Vec<i128>> {
            (0..r)
                .map(|i| {
                    (0..r).try_fold(0i128, |acc, k| {
                        acc.checked_add(m[i * r + k].checked_mul(b[k])?)
                    })
                })
                .collect()
        };
        let mut start = None;
        for c in candidates {
            let m = self.int_inverse_of(c)?;
            let xs = values(&m)?;
            if xs.iter().all(|&x| x >= 0) {
                if xs.contains(&0) {
                    return Some(Err(Error::Degenerate("zero basic value".into())));
                }
                start = Some(c.clone());
                break;
            }
        }
        let start = start?;
        let mut seen: std::collections::HashSet<Basis> =
            std::collections::HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(basis) = queue.pop_front() {
            let m = self.int_inverse_of(&basis)?;
            let xs = values(&m)?;
            if xs.iter().any(|&x| x <= 0) {
                return Some(Err(Error::Degenerate("zero basic value".into())));
            }
            for e in 0..self.ncols {
                if basis.binary_search(&e).is_ok() {
                    continue;
                }
                let mut d = vec![0i128; r];
                for (i, di) in d.iter_mut().enumerate() {
                    for (row, v) in &cols[e] {
                        *di = di.checked_add(m[i * r + row].checked_mul(*v)?)?;
                    }
                }
                let mut best: Option<usize> = None;
                let mut tie = false;
                for k in 0..r {
                    if d[k] <= 0 {
                        continue;
                    }
                    match best {
                        None => best = Some(k),
                        Some(bk) => {
                            // xs[k]/d[k] against xs[bk]/d[bk]
                            let lhs = xs[k].checked_mul(d[bk])?;
                            let rhs = xs[bk].checked_mul(d[k])?;
                            if lhs < rhs {
                                best = Some(k);
                                tie = false;
                            } else if lhs == rhs {
                                tie = true;
                            }
                        }
                    }
                }
                let Some(k) = best else {
                    return Some(Err(Error::Invalid("unbounded edge direction".into())));
                };
                if tie {
                    return Some(Err(Error::Degenerate(format!(
                        "ratio tie entering column {e}"
                    ))));
                }
                let mut next = basis.clone();
                next[k] = e;
                next.sort_unstable();
                if seen.insert(next.clone()) {
                    if seen.len() > limit {
                        return Some(Err(Error::Guard(format!(
                            "more than {limit} feasible bases"
                        ))));
                    }
                    queue.push_back(next);
                }
            }
            out.push(basis);
        }
        out.sort();
        Some(Ok(out))
    }

    /// Breadth-first search over feasible bases starting from `start`.
    /// In strict mode every basis must be non-degenerate; the result then lists
    /// one basis per vertex with the edges between them.
    pub fn explore(&self, start: &[usize], strict: bool, limit: usize) -> Result<Exploration> {
        let first = self
            .basis_data(start)
            .ok_or_else(|| Error::Invalid("start columns are singular".into()))?;
        if first.values.iter().any(|v| v.is_negative()) {
            return Err(Error::Invalid("start basis is infeasible".into()));
        }
        let mut index: HashMap<Basis, usize> = HashMap::new();
        let mut bases: Vec<Basis> = vec![first.basis.clone()];
        let mut points: Vec<Vec<Q>> = vec![self.point(&first)];
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        index.insert(first.basis.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let data = self
                .basis_data(&bases[i])
                .ok_or_else(|| Error::Internal("singular basis in search".into()))?;
            for pv in self.pivots(&data, strict)? {
                let j = match index.get(&pv.basis) {
                    Some(&j) => j,
                    None => {
                        if bases.len() >= limit {
                            return Err(Error::Guard(format!("more than {limit} feasible bases")));
                        }
                        let j = bases.len();
                        index.insert(pv.basis.clone(), j);
                        bases.push(pv.basis);
                        points.push(pv.point);
                        queue.push_back(j);
                        j
                    }
                };
                if i != j {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
        Ok(Exploration {
            bases,
            points,
            edges: edges.into_iter().collect(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Exploration {
    pub bases: Vec<Basis>,
    pub points: Vec<Vec<Q>>,
    pub edges: Vec<(usize, usize)>,
}
