//! Classical, axial and planar transportation polytopes as partition polyhedra
//! {x : Ax = b, x >= 0}.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_core::lp::{maximize, LpResult};
use crate::exact_core::matrix::Matrix;
use crate::exact_core::rational::{fmt_qvec, parse_q, sum, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Classical,
    Axial3,
    Planar3,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Classical => "classical",
            Kind::Axial3 => "axial",
            Kind::Planar3 => "planar",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        match s {
            "classical" => Ok(Kind::Classical),
            "axial" | "axial3" => Ok(Kind::Axial3),
            "planar" | "planar3" => Ok(Kind::Planar3),
            _ => Err(Error::Parse(format!("unknown kind {s}"))),
        }
    }
}

/// A transportation polytope by its margins.
///
/// Planar margins follow the sums over one index: `uu[j][k] = Σ_i x_ijk`,
/// `vv[i][k] = Σ_j x_ijk`, `ww[i][j] = Σ_k x_ijk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransportSpec {
    Classical {
        u: Vec<Q>,
        v: Vec<Q>,
    },
    Axial3 {
        u: Vec<Q>,
        v: Vec<Q>,
        w: Vec<Q>,
    },
    Planar3 {
        uu: Vec<Vec<Q>>,
        vv: Vec<Vec<Q>>,
        ww: Vec<Vec<Q>>,
    },
}

/// The cell a column of the constraint matrix stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cell {
    Two(usize, usize),
    Three(usize, usize, usize),
}

impl Cell {
    pub fn label(&self) -> String {
        match *self {
            Cell::Two(i, j) => format!("{},{}", i + 1, j + 1),
            Cell::Three(i, j, k) => format!("{},{},{}", i + 1, j + 1, k + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub a: Matrix,
    pub b: Vec<Q>,
    pub cell_index: Vec<Cell>,
}

fn check_nonneg(xs: &[Q], what: &str) -> Result<()> {
    if xs.iter().any(|x| x.is_negative()) {
        return Err(Error::Invalid(format!("negative entry in {what}")));
    }
    Ok(())
}

fn check_matrix(m: &[Vec<Q>], rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::Invalid(format!("{what} must be {rows}x{cols}")));
    }
    for r in m {
        check_nonneg(r, what)?;
    }
    Ok(())
}

impl TransportSpec {
    pub fn classical(u: Vec<Q>, v: Vec<Q>) -> Result<Self> {
        let s = TransportSpec::Classical { u, v };
        s.validate()?;
        Ok(s)
    }

    pub fn axial(u: Vec<Q>, v: Vec<Q>, w: Vec<Q>) -> Result<Self> {
        let s = TransportSpec::Axial3 { u, v, w };
        s.validate()?;
        Ok(s)
    }

    pub fn planar(uu: Vec<Vec<Q>>, vv: Vec<Vec<Q>>, ww: Vec<Vec<Q>>) -> Result<Self> {
        let s = TransportSpec::Planar3 { uu, vv, ww };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            TransportSpec::Classical { u, v } => {
                if u.is_empty() || v.is_empty() {
                    return Err(Error::Invalid("sizes must be at least 1".into()));
                }
                check_nonneg(u, "u")?;
                check_nonneg(v, "v")
            }
            TransportSpec::Axial3 { u, v, w } => {
                if u.is_empty() || v.is_empty() || w.is_empty() {
                    return Err(Error::Invalid("sizes must be at least 1".into()));
                }
                check_nonneg(u, "u")?;
                check_nonneg(v, "v")?;
                check_nonneg(w, "w")
            }
            TransportSpec::Planar3 { uu, vv, ww } => {
                let p = vv.len();
                let q = uu.len();
                let s = uu.first().map_or(0, |r| r.len());
                if p == 0 || q == 0 || s == 0 {
                    return Err(Error::Invalid("sizes must be at least 1".into()));
                }
                check_matrix(uu, q, s, "U")?;
                check_matrix(vv, p, s, "V")?;
                check_matrix(ww, p, q, "W")
            }
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            TransportSpec::Classical { .. } => Kind::Classical,
            TransportSpec::Axial3 { .. } => Kind::Axial3,
            TransportSpec::Planar3 { .. } => Kind::Planar3,
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        match self {
            TransportSpec::Classical { u, v } => vec![u.len(), v.len()],
            TransportSpec::Axial3 { u, v, w } => vec![u.len(), v.len(), w.len()],
            TransportSpec::Planar3 { uu, vv, .. } => vec![vv.len(), uu.len(), uu[0].len()],
        }
    }

    pub fn cell_count(&self) -> usize {
        self.sizes().iter().product()
    }

    pub fn cells(&self) -> Vec<Cell> {
        let sz = self.sizes();
        let (p, q) = (sz[0], sz[1]);
        match self.kind() {
            Kind::Classical => (0..p)
                .flat_map(|i| (0..q).map(move |j| Cell::Two(i, j)))
                .collect(),
            _ => {
                let s = sz[2];
                (0..p)
                    .flat_map(|i| {
                        (0..q).flat_map(move |j| (0..s).map(move |k| Cell::Three(i, j, k)))
                    })
                    .collect()
            }
        }
    }

    /// Cell position in the row-major column order.
    pub fn cell_position(&self, c: Cell) -> usize {
        let sz = self.sizes();
        match c {
            Cell::Two(i, j) => i * sz[1] + j,
            Cell::Three(i, j, k) => (i * sz[1] + j) * sz[2] + k,
        }
    }

    /// Margins flattened in the row order of the constraint matrix.
    pub fn rhs(&self) -> Vec<Q> {
        match self {
            TransportSpec::Classical { u, v } => v.iter().chain(u).cloned().collect(),
            TransportSpec::Axial3 { u, v, w } => u.iter().chain(v).chain(w).cloned().collect(),
            TransportSpec::Planar3 { uu, vv, ww } => uu
                .iter()
                .flatten()
                .chain(vv.iter().flatten())
                .chain(ww.iter().flatten())
                .cloned()
                .collect(),
        }
    }

    /// Margins of a table of the same kind and sizes, in `rhs` order.
    pub fn margins_of(&self, x: &[Q]) -> Vec<Q> {
        build_matrix(self.kind(), &self.sizes()).mul_vec(x)
    }

    /// A spec of the same kind and sizes with the given flattened margins.
    pub fn with_rhs(kind: Kind, sizes: &[usize], b: &[Q]) -> Result<Self> {
        let take = |from: usize, n: usize| b[from..from + n].to_vec();
        let chunk = |from: usize, r: usize, c: usize| -> Vec<Vec<Q>> {
            (0..r).map(|i| take(from + i * c, c)).collect()
        };
        match kind {
            Kind::Classical => {
                let (p, q) = (sizes[0], sizes[1]);
                TransportSpec::classical(take(q, p), take(0, q))
            }
            Kind::Axial3 => {
                let (p, q, s) = (sizes[0], sizes[1], sizes[2]);
                TransportSpec::axial(take(0, p), take(p, q), take(p + q, s))
            }
            Kind::Planar3 => {
                let (p, q, s) = (sizes[0], sizes[1], sizes[2]);
                TransportSpec::planar(
                    chunk(0, q, s),
                    chunk(q * s, p, s),
                    chunk(q * s + p * s, p, q),
                )
            }
        }
    }

    /// Largest value any feasible table can put in the cell.
    pub fn cell_bound(&self, c: Cell) -> Q {
        let min2 = |a: &Q, b: &Q| if a < b { a.clone() } else { b.clone() };
        match (self, c) {
            (TransportSpec::Classical { u, v }, Cell::Two(i, j)) => min2(&u[i], &v[j]),
            (TransportSpec::Axial3 { u, v, w }, Cell::Three(i, j, k)) => {
                min2(&min2(&u[i], &v[j]), &w[k])
            }
            (TransportSpec::Planar3 { uu, vv, ww }, Cell::Three(i, j, k)) => {
                min2(&min2(&uu[j][k], &vv[i][k]), &ww[i][j])
            }
            _ => Q::zero(),
        }
    }

    pub fn to_json(&self) -> Value {
        let m = |x: &[Vec<Q>]| -> Vec<Vec<String>> { x.iter().map(|r| fmt_qvec(r)).collect() };
        match self {
            TransportSpec::Classical { u, v } => {
                json!({"kind": "classical", "sizes": self.sizes(), "marginals": [fmt_qvec(u), fmt_qvec(v)]})
            }
            TransportSpec::Axial3 { u, v, w } => {
                json!({"kind": "axial", "sizes": self.sizes(), "marginals": [fmt_qvec(u), fmt_qvec(v), fmt_qvec(w)]})
            }
            TransportSpec::Planar3 { uu, vv, ww } => {
                json!({"kind": "planar", "sizes": self.sizes(), "marginals": [m(uu), m(vv), m(ww)]})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = Kind::parse(
            v["kind"]
                .as_str()
                .ok_or_else(|| Error::Parse("missing kind".into()))?,
        )?;
        let sizes: Vec<usize> = v["sizes"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing sizes".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|n| n as usize)
                    .ok_or_else(|| Error::Parse("bad size".into()))
            })
            .collect::<Result<_>>()?;
        let margs = v["marginals"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing marginals".into()))?;
        let vecq = |x: &Value| -> Result<Vec<Q>> {
            x.as_array()
                .ok_or_else(|| Error::Parse("marginal must be an array".into()))?
                .iter()
                .map(|s| match s {
                    Value::String(t) => parse_q(t),
                    Value::Number(n) => parse_q(&n.to_string()),
                    _ => Err(Error::Parse("marginal entries must be strings".into())),
                })
                .collect()
        };
        let matq = |x: &Value| -> Result<Vec<Vec<Q>>> {
            x.as_array()
                .ok_or_else(|| Error::Parse("marginal must be a matrix".into()))?
                .iter()
                .map(vecq)
                .collect()
        };
        let spec = match kind {
            Kind::Classical if margs.len() == 2 => {
                TransportSpec::classical(vecq(&margs[0])?, vecq(&margs[1])?)?
            }
            Kind::Axial3 if margs.len() == 3 => {
                TransportSpec::axial(vecq(&margs[0])?, vecq(&margs[1])?, vecq(&margs[2])?)?
            }
            Kind::Planar3 if margs.len() == 3 => {
                TransportSpec::planar(matq(&margs[0])?, matq(&margs[1])?, matq(&margs[2])?)?
            }
            _ => return Err(Error::Parse("wrong number of marginal blocks".into())),
        };
        if spec.sizes() != sizes {
            return Err(Error::Parse(format!(
                "sizes {sizes:?} disagree with marginals {:?}",
                spec.sizes()
            )));
        }
        Ok(spec)
    }
}

/// The 0-1 marginal matrix for a kind and sizes, rows in `rhs` order.
pub fn build_matrix(kind: Kind, sizes: &[usize]) -> Matrix {
    match kind {
        Kind::Classical => {
            let (p, q) = (sizes[0], sizes[1]);
            let mut a = Matrix::zeros(p + q, p * q);
            for i in 0..p {
                for j in 0..q {
                    let c = i * q + j;
                    a.set(j, c, Q::from_integer(1.into()));
                    a.set(q + i, c, Q::from_integer(1.into()));
                }
            }
            a
        }
        Kind::Axial3 => {
            let (p, q, s) = (sizes[0], sizes[1], sizes[2]);
            let mut a = Matrix::zeros(p + q + s, p * q * s);
            for i in 0..p {
                for j in 0..q {
                    for k in 0..s {
                        let c = (i * q + j) * s + k;
                        a.set(i, c, Q::from_integer(1.into()));
                        a.set(p + j, c, Q::from_integer(1.into()));
                        a.set(p + q + k, c, Q::from_integer(1.into()));
                    }
                }
            }
            a
        }
        Kind::Planar3 => {
            let (p, q, s) = (sizes[0], sizes[1], sizes[2]);
            let mut a = Matrix::zeros(q * s + p * s + p * q, p * q * s);
            for i in 0..p {
                for j in 0..q {
                    for k in 0..s {
                        let c = (i * q + j) * s + k;
                        a.set(j * s + k, c, Q::from_integer(1.into()));
                        a.set(q * s + i * s + k, c, Q::from_integer(1.into()));
                        a.set(q * s + p * s + i * q + j, c, Q::from_integer(1.into()));
                    }
                }
            }
            a
        }
    }
}

pub fn build_constraints(spec: &TransportSpec) -> ConstraintSystem {
    ConstraintSystem {
        a: build_matrix(spec.kind(), &spec.sizes()),
        b: spec.rhs(),
        cell_index: spec.cells(),
    }
}

/// Closed-form rank of the marginal matrix of a non-empty spec.
pub fn expected_rank(kind: Kind, sizes: &[usize]) -> usize {
    match kind {
        Kind::Classical => sizes[0] + sizes[1] - 1,
        Kind::Axial3 => sizes[0] + sizes[1] + sizes[2] - 2,
        Kind::Planar3 => {
            let (p, q, s) = (sizes[0], sizes[1], sizes[2]);
            p * q + p * s + q * s + 1 - p - q - s
        }
    }
}

pub fn dimension(spec: &TransportSpec) -> Result<usize> {
    if !is_nonempty(spec) {
        return Err(Error::Infeasible("empty transportation polytope".into()));
    }
    let sz = spec.sizes();
    Ok(match spec.kind() {
        Kind::Classical => (sz[0] - 1) * (sz[1] - 1),
        Kind::Axial3 => sz[0] * sz[1] * sz[2] + 2 - sz[0] - sz[1] - sz[2],
        Kind::Planar3 => (sz[0] - 1) * (sz[1] - 1) * (sz[2] - 1),
    })
}

/// Some table with the required margins and non-negative entries, if one exists.
pub fn feasible_point(spec: &TransportSpec) -> Option<Vec<Q>> {
    let sys = build_constraints(spec);
    let c = vec![Q::zero(); sys.a.cols()];
    match maximize(&sys.a, &sys.b, &c) {
        LpResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

pub fn is_nonempty(spec: &TransportSpec) -> bool {
    match spec {
        TransportSpec::Classical { u, v } => sum(u) == sum(v),
        TransportSpec::Axial3 { u, v, w } => sum(u) == sum(v) && sum(v) == sum(w),
        TransportSpec::Planar3 { .. } => feasible_point(spec).is_some(),
    }
}

pub const MAX_GENERIC_SIDE: usize = 12;

fn proper_subset_sums(xs: &[Q]) -> HashSet<Q> {
    let n = xs.len();
    let mut out = HashSet::new();
    for mask in 1u32..(1u32 << n) - 1 {
        let mut s = Q::zero();
        for (i, x) in xs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                s += x;
            }
        }
        out.insert(s);
    }
    out
}

/// No non-empty proper row subset has the same total as a non-empty proper column subset.
pub fn is_generic_classical(u: &[Q], v: &[Q]) -> Result<bool> {
    if u.len() > MAX_GENERIC_SIDE || v.len() > MAX_GENERIC_SIDE {
        return Err(Error::Guard(format!(
            "sides larger than {MAX_GENERIC_SIDE}"
        )));
    }
    if sum(u) != sum(v) {
        return Err(Error::Infeasible("row and column totals differ".into()));
    }
    let su = proper_subset_sums(u);
    let sv = proper_subset_sums(v);
    Ok(su.is_disjoint(&sv))
}

pub use crate::vertex_enum::is_nondegenerate;

/// Classical Charnes-style perturbation: every supply gains `eps`, the last
/// demand gains `p·eps`. Three-way specs get the margins of a feasible table
/// shifted by `eps^(c+1)` in cell c.
pub fn perturb(spec: &TransportSpec, eps: &Q) -> Result<TransportSpec> {
    match spec {
        TransportSpec::Classical { u, v } => {
            let p = u.len();
            let u2: Vec<Q> = u.iter().map(|x| x + eps).collect();
            let mut v2 = v.clone();
            let last = v2.len() - 1;
            v2[last] += eps * Q::from_integer((p as i64).into());
            TransportSpec::classical(u2, v2)
        }
        _ => {
            let x = feasible_point(spec)
                .ok_or_else(|| Error::Infeasible("no feasible table to perturb".into()))?;
            let mut pw = eps.clone();
            let shifted: Vec<Q> = x
                .iter()
                .map(|xi| {
                    let r = xi + &pw;
                    pw *= eps;
                    r
                })
                .collect();
            TransportSpec::with_rhs(spec.kind(), &spec.sizes(), &spec.margins_of(&shifted))
        }
    }
}

/// The affine isomorphism between a planar 2×2×n polytope and a classical n×2 one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso22n {
    pub planar: TransportSpec,
    pub classical: TransportSpec,
    /// Lower bounds of x_{1,1,k}, subtracted before passing to the classical side.
    pub alpha: Vec<Q>,
}

fn min_q(a: &Q, b: &Q) -> Q {
    if a < b {
        a.clone()
    } else {
        b.clone()
    }
}

fn max_q(a: &Q, b: &Q) -> Q {
    if a > b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn planar_2x2xp_to_classical(spec: &TransportSpec) -> Result<Iso22n> {
    let TransportSpec::Planar3 { uu, vv, ww } = spec else {
        return Err(Error::Invalid("expected a planar spec".into()));
    };
    let sz = spec.sizes();
    if sz[0] != 2 || sz[1] != 2 {
        return Err(Error::Invalid(format!("expected sizes 2x2xn, got {sz:?}")));
    }
    if !is_nonempty(spec) {
        return Err(Error::Infeasible("empty planar polytope".into()));
    }
    let n = sz[2];
    let zero = Q::zero();
    let alpha: Vec<Q> = (0..n)
        .map(|k| max_q(&zero, &(&uu[0][k] - &vv[1][k])))
        .collect();
    let beta: Vec<Q> = (0..n).map(|k| min_q(&vv[0][k], &uu[0][k])).collect();
    let rows: Vec<Q> = (0..n).map(|k| &beta[k] - &alpha[k]).collect();
    let c1 = &ww[0][0] - sum(&alpha);
    let c2 = sum(&rows) - &c1;
    let classical = TransportSpec::classical(rows, vec![c1, c2])?;
    Ok(Iso22n {
        planar: spec.clone(),
        classical,
        alpha,
    })
}

impl Iso22n {
    pub fn to_classical(&self, x: &crate::vertex_enum::Table) -> crate::vertex_enum::Table {
        let n = self.alpha.len();
        let TransportSpec::Classical { u: rows, .. } = &self.classical else {
            unreachable!()
        };
        let mut y = crate::vertex_enum::Table::zeros(&[n, 2]);
        for k in 0..n {
            let a = x.get3(0, 0, k) - &self.alpha[k];
            let b = &rows[k] - &a;
            let (i0, i1) = (y.index2(k, 0), y.index2(k, 1));
            y.values[i0] = a;
            y.values[i1] = b;
        }
        y
    }

    pub fn to_planar(&self, y: &crate::vertex_enum::Table) -> crate::vertex_enum::Table {
        let n = self.alpha.len();
        let TransportSpec::Planar3 { uu, vv, .. } = &self.planar else {
            unreachable!()
        };
        let mut x = crate::vertex_enum::Table::zeros(&[2, 2, n]);
        for k in 0..n {
            let x11 = y.get2(k, 0) + &self.alpha[k];
            let x12 = &vv[0][k] - &x11;
            let x21 = &uu[0][k] - &x11;
            let x22 = &x11 + &uu[1][k] - &vv[0][k];
            for (i, j, v) in [(0, 0, x11), (0, 1, x12), (1, 0, x21), (1, 1, x22)] {
                let c = x.index3(i, j, k);
                x.values[c] = v;
            }
        }
        x
    }
}

/// Converse construction: an n×2 classical polytope as a planar 2×2×n one,
/// with x_{1,j,k} = y_{k,j} = x_{2,3-j,k}.
pub fn classical_to_planar_22n(rows: &[Q], cols: &[Q]) -> Result<TransportSpec> {
    if cols.len() != 2 {
        return Err(Error::Invalid("expected two column sums".into()));
    }
    let n = rows.len();
    let uu: Vec<Vec<Q>> = (0..2).map(|_| rows.to_vec()).collect();
    let vv: Vec<Vec<Q>> = (0..2).map(|_| rows.to_vec()).collect();
    let ww = vec![
        vec![cols[0].clone(), cols[1].clone()],
        vec![cols[1].clone(), cols[0].clone()],
    ];
    let spec = TransportSpec::planar(uu, vv, ww)?;
    debug_assert_eq!(spec.sizes(), vec![2, 2, n]);
    Ok(spec)
}

pub fn classical_table_to_planar_22n(y: &crate::vertex_enum::Table) -> crate::vertex_enum::Table {
    let n = y.sizes[0];
    let mut x = crate::vertex_enum::Table::zeros(&[2, 2, n]);
    for k in 0..n {
        for j in 0..2 {
            let a = x.index3(0, j, k);
            x.values[a] = y.get2(k, j).clone();
            let b = x.index3(1, 1 - j, k);
            x.values[b] = y.get2(k, j).clone();
        }
    }
    x
}

/// A q×s table problem with row sums, column sums and entrywise upper bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedTransport {
    pub row_sums: Vec<Q>,
    pub col_sums: Vec<Q>,
    pub upper: Vec<Vec<Q>>,
}

impl BoundedTransport {
    /// Variables x (q·s) then slacks t (q·s) with x + t = upper.
    pub fn constraint_system(&self) -> (Matrix, Vec<Q>) {
        let q = self.row_sums.len();
        let s = self.col_sums.len();
        let n = q * s;
        let mut a = Matrix::zeros(q + s + n, 2 * n);
        let one = Q::from_integer(1.into());
        let mut b = Vec::new();
        for j in 0..q {
            for k in 0..s {
                a.set(j, j * s + k, one.clone());
            }
            b.push(self.row_sums[j].clone());
        }
        for k in 0..s {
            for j in 0..q {
                a.set(q + k, j * s + k, one.clone());
            }
            b.push(self.col_sums[k].clone());
        }
        for c in 0..n {
            a.set(q + s + c, c, one.clone());
            a.set(q + s + c, n + c, one.clone());
            b.push(self.upper[c / s][c % s].clone());
        }
        (a, b)
    }
}

/// Planar 2×q×s as a bounded q×s problem via x_{i,j,k} ↦ x_{1,j,k}.
pub fn planar_2pq_to_bounded(spec: &TransportSpec) -> Result<BoundedTransport> {
    let TransportSpec::Planar3 { uu, vv, ww } = spec else {
        return Err(Error::Invalid("expected a planar spec".into()));
    };
    if spec.sizes()[0] != 2 {
        return Err(Error::Invalid("first size must be 2".into()));
    }
    Ok(BoundedTransport {
        row_sums: ww[0].clone(),
        col_sums: vv[0].clone(),
        upper: uu.clone(),
    })
}

pub fn bounded_to_planar(bt: &BoundedTransport) -> Result<TransportSpec> {
    let q = bt.row_sums.len();
    let s = bt.col_sums.len();
    let row_tot: Vec<Q> = (0..q).map(|j| sum(&bt.upper[j])).collect();
    let col_tot: Vec<Q> = (0..s)
        .map(|k| (0..q).fold(Q::zero(), |acc, j| acc + &bt.upper[j][k]))
        .collect();
    let vv = vec![
        bt.col_sums.clone(),
        (0..s).map(|k| &col_tot[k] - &bt.col_sums[k]).collect(),
    ];
    let ww = vec![
        bt.row_sums.clone(),
        (0..q).map(|j| &row_tot[j] - &bt.row_sums[j]).collect(),
    ];
    TransportSpec::planar(bt.upper.clone(), vv, ww)
}

/// The slice x_{1,·,·} of a 2×q×s table.
pub fn project_first_slice(x: &crate::vertex_enum::Table) -> Vec<Q> {
    let n = x.sizes[1] * x.sizes[2];
    x.values[..n].to_vec()
}
