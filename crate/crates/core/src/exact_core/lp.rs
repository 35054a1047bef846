//! Dense two-phase tableau simplex over exact rationals, Bland's rule.
//! Problems are in standard form: maximize c·x subject to Ax = b, x >= 0.

use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::rational::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    /// `duals` are simplex multipliers: duals·A_j >= c_j for every column.
    Optimal { x: Vec<Q>, value: Q, duals: Vec<Q> },
    /// `x` is feasible and `x + t·ray` stays feasible with growing objective.
    Unbounded { x: Vec<Q>, ray: Vec<Q> },
    /// `farkas`·A >= 0 componentwise and `farkas`·b < 0.
    Infeasible { farkas: Vec<Q> },
}

struct Tableau {
    t: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.t[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.t[r][c];
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs z_j - c_j and current objective value.
    fn objective_row(&self, cost: &[Q]) -> Vec<Q> {
        let mut z: Vec<Q> = (0..=self.width)
            .map(|j| {
                if j < self.width {
                    -cost[j].clone()
                } else {
                    Q::zero()
                }
            })
            .collect();
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = &cost[bi];
            if cb.is_zero() {
                continue;
            }
            for (zj, tij) in z.iter_mut().zip(&self.t[i]) {
                if !tij.is_zero() {
                    *zj += cb * tij;
                }
            }
        }
        z
    }

    /// Runs primal simplex on `cost` over the allowed columns.
    /// Returns Some(entering column) when unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> Option<usize> {
        loop {
            let z = self.objective_row(cost);
            let Some(enter) = (0..allowed).find(|&j| z[j].is_negative()) else {
                return None;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                None => return Some(enter),
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn primal(&self, n: usize) -> Vec<Q> {
        let mut x = vec![Q::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

pub fn maximize(a: &Matrix, b: &[Q], c: &[Q]) -> LpResult {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(b.len(), m);
    assert_eq!(c.len(), n);
    let signs: Vec<bool> = b.iter().map(|x| x.is_negative()).collect();
    let width = n + m;
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Q> = a.row(i).to_vec();
        let mut rhs = b[i].clone();
        if signs[i] {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            rhs = -rhs;
        }
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(rhs);
        t.push(row);
    }
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        width,
    };

    let phase1: Vec<Q> = (0..width)
        .map(|j| if j < n { Q::zero() } else { -Q::one() })
        .collect();
    tab.optimize(&phase1, width);
    let z1 = tab.objective_row(&phase1);
    if z1[width].is_negative() {
        let farkas = (0..m)
            .map(|i| {
                let y = z1[n + i].clone() - Q::one();
                if signs[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        return LpResult::Infeasible { farkas };
    }
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    let cost: Vec<Q> = (0..width)
        .map(|j| if j < n { c[j].clone() } else { Q::zero() })
        .collect();
    if let Some(enter) = tab.optimize(&cost, n) {
        let x = tab.primal(n);
        let mut ray = vec![Q::zero(); n];
        ray[enter] = Q::one();
        for (i, &bi) in tab.basis.iter().enumerate() {
            if bi < n {
                ray[bi] = -tab.t[i][enter].clone();
            }
        }
        return LpResult::Unbounded { x, ray };
    }
    let z = tab.objective_row(&cost);
    let duals = (0..m)
        .map(|i| {
            if signs[i] {
                -z[n + i].clone()
            } else {
                z[n + i].clone()
            }
        })
        .collect();
    LpResult::Optimal {
        x: tab.primal(n),
        value: z[width].clone(),
        duals,
    }
}

/// Minimization wrapper; the reported value is the minimum.
pub fn minimize(a: &Matrix, b: &[Q], c: &[Q]) -> LpResult {
    let neg: Vec<Q> = c.iter().map(|x| -x.clone()).collect();
    match maximize(a, b, &neg) {
        LpResult::Optimal { x, value, duals } => LpResult::Optimal {
            x,
            value: -value,
            duals: duals.into_iter().map(|d| -d).collect(),
        },
        other => other,
    }
}
