use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{dot, fmt_q, lcm_of_denominators, parse_q, q, Q};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r: Vec<Vec<Q>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| q(x)).collect())
            .collect();
        Matrix::from_rows(&r)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Q>], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<Q>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        let mut m = Matrix::from_rows(&rows);
        m.cols = self.cols;
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Rows scaled to integers, for fraction-free elimination.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let r = self.row(i);
                let l = Q::from_integer(lcm_of_denominators(r));
                r.iter().map(|x| (x * &l).to_integer()).collect()
            })
            .collect()
    }

    /// Bareiss elimination; returns the eliminated rows and pivot columns.
    fn bareiss(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, bool) {
        let mut m = self.integer_rows();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut swaps = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap(p, r);
                swaps = !swaps;
            }
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = (&m[i][j] * &m[r][c] - &m[i][c] * &m[r][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        (m, pivots, swaps)
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        if self.rows == 0 {
            return Q::one();
        }
        let scale = (0..self.rows).fold(Q::one(), |acc, i| {
            acc * Q::from_integer(lcm_of_denominators(self.row(i)))
        });
        let (m, pivots, swaps) = self.bareiss();
        if pivots.len() < self.rows {
            return Q::zero();
        }
        let d = Q::from_integer(m[self.rows - 1][self.cols - 1].clone()) / scale;
        if swaps {
            -d
        } else {
            d
        }
    }

    /// Reduced row echelon form over Q with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.to_rows();
        let pivots = rref_in_place(&mut m, self.cols);
        let mut out = Matrix::from_rows(&m);
        out.cols = self.cols;
        out.rows = self.rows;
        (out, pivots)
    }

    /// Columns span the right kernel exactly.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k.set(f, t, Q::one());
            for (pi, &pc) in pivots.iter().enumerate() {
                let v = -r.get(pi, f).clone();
                k.set(pc, t, v);
            }
        }
        k
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
                r
            })
            .collect();
        let piv = rref_in_place(&mut aug, n);
        if piv.len() < n {
            return None;
        }
        let rows: Vec<Vec<Q>> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(&rows))
    }

    /// Unique solution of a square system, if the matrix is invertible.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        let n = self.rows;
        let mut aug: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let piv = rref_in_place(&mut aug, n);
        if piv.len() < n {
            return None;
        }
        Some(aug.into_iter().map(|r| r[n].clone()).collect())
    }

    /// Indices of a maximal linearly independent subset of rows, greedy from the top.
    pub fn independent_rows(&self) -> Vec<usize> {
        let (_, pivots) = self.transpose().rref();
        pivots
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(fmt_q).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> crate::error::Result<Matrix> {
        let r: crate::error::Result<Vec<Vec<Q>>> = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_q(s)).collect())
            .collect();
        let r = r?;
        let cols = r.first().map_or(0, |x| x.len());
        if r.iter().any(|x| x.len() != cols) {
            return Err(crate::error::Error::Parse("ragged matrix".into()));
        }
        Ok(Matrix::from_rows(&r))
    }
}

/// Gauss-Jordan over the first `ncols` columns; returns pivot columns.
pub(crate) fn rref_in_place(m: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = Q::one() / &m[r][c];
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(fmt_q).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        Matrix::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

/// True when the row spaces of the two matrices coincide.
pub fn same_row_space(a: &Matrix, b: &Matrix) -> bool {
    if a.cols() != b.cols() {
        return false;
    }
    let ra = a.rank();
    if ra != b.rank() {
        return false;
    }
    let mut rows = a.to_rows();
    rows.extend(b.to_rows());
    if rows.is_empty() {
        return true;
    }
    let mut stacked = Matrix::from_rows(&rows);
    stacked.cols = a.cols();
    stacked.rank() == ra
}
