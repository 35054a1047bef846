use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::rational::{dot, Q};
use crate::error::{Error, Result};

pub const MAX_HULL_POINTS: usize = 20;
pub const MAX_HULL_DIM: usize = 6;

/// Dimension of the affine span of the points (-1 encoded as None for no points).
pub fn affine_dimension(points: &[Vec<Q>]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return Some(0);
    }
    Some(Matrix::from_rows(&diffs).rank())
}

/// Coordinates of the points in an affine chart of their span.
fn chart(points: &[Vec<Q>]) -> (usize, Vec<Vec<Q>>) {
    let first = &points[0];
    let diffs: Vec<Vec<Q>> = points
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let (_, pivots) = Matrix::from_rows(&diffs).rref();
    let coords = diffs
        .iter()
        .map(|d| pivots.iter().map(|&c| d[c].clone()).collect())
        .collect();
    (pivots.len(), coords)
}

/// Every facet of conv(points) as the sorted set of point indices lying on it.
pub fn facets_brute_force(points: &[Vec<Q>]) -> Result<Vec<Vec<usize>>> {
    if points.len() > MAX_HULL_POINTS {
        return Err(Error::Guard(format!(
            "{} points > {MAX_HULL_POINTS}",
            points.len()
        )));
    }
    let Some(d0) = affine_dimension(points) else {
        return Err(Error::Degenerate("no points".into()));
    };
    if d0 == 0 {
        return Err(Error::Degenerate("points span no line".into()));
    }
    if d0 > MAX_HULL_DIM {
        return Err(Error::Guard(format!(
            "affine dimension {d0} > {MAX_HULL_DIM}"
        )));
    }
    let (d, coords) = chart(points);
    let homog: Vec<Vec<Q>> = coords
        .iter()
        .map(|c| {
            let mut h = vec![Q::one()];
            h.extend(c.iter().cloned());
            h
        })
        .collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for subset in (0..points.len()).combinations(d) {
        if found
            .iter()
            .any(|f| subset.iter().all(|i| f.binary_search(i).is_ok()))
        {
            continue;
        }
        let rows: Vec<Vec<Q>> = subset.iter().map(|&i| homog[i].clone()).collect();
        let m = Matrix::from_rows(&rows);
        let k = m.kernel_basis();
        if k.cols() != 1 {
            continue;
        }
        let normal = k.column(0);
        let vals: Vec<Q> = homog.iter().map(|h| dot(&normal, h)).collect();
        let pos = vals.iter().any(|v| v.is_positive());
        let neg = vals.iter().any(|v| v.is_negative());
        if pos && neg {
            continue;
        }
        let on: Vec<usize> = vals
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(i, _)| i)
            .collect();
        found.insert(on);
    }
    Ok(found.into_iter().collect())
}

/// Facet adjacency through shared ridges (intersections of affine dimension d-2).
pub fn facet_adjacency(points: &[Vec<Q>], facets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let d = affine_dimension(points).unwrap_or(0);
    let mut adj = vec![Vec::new(); facets.len()];
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            let common: Vec<Vec<Q>> = facets[i]
                .iter()
                .filter(|x| facets[j].binary_search(x).is_ok())
                .map(|&x| points[x].clone())
                .collect();
            let ok = match affine_dimension(&common) {
                Some(r) => d >= 2 && r == d - 2,
                None => d == 1,
            };
            if ok {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

pub fn bfs_distances(adj: &[Vec<usize>], from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap_or(0);
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Distance between two facets in the ridge graph of conv(points).
pub fn dual_graph_distance(points: &[Vec<Q>], f1: &[usize], f2: &[usize]) -> Result<usize> {
    let facets = facets_brute_force(points)?;
    let mut a = f1.to_vec();
    let mut b = f2.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let i = facets
        .iter()
        .position(|f| *f == a)
        .ok_or_else(|| Error::Invalid(format!("{a:?} is not a facet")))?;
    let j = facets
        .iter()
        .position(|f| *f == b)
        .ok_or_else(|| Error::Invalid(format!("{b:?} is not a facet")))?;
    let adj = facet_adjacency(points, &facets);
    bfs_distances(&adj, i)[j].ok_or_else(|| Error::Internal("ridge graph disconnected".into()))
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}
