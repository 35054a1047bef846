use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lp::{maximize, LpResult};
use super::matrix::Matrix;
use super::rational::{dot, lcm_of_denominators, Q};
use crate::error::{Error, Result};
use crate::serde_q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "serde_q::vec")]
    pub normal: Vec<Q>,
    #[serde(with = "serde_q::one")]
    pub offset: Q,
}

impl Halfspace {
    pub fn new(normal: Vec<Q>, offset: Q) -> Self {
        Halfspace { normal, offset }
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&self.normal, x) - &self.offset
    }
}

/// `strict`: <a,x> > b, `weak`: <a,x> >= b, `equalities`: <a,x> = b.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceSystem {
    pub dim: usize,
    pub strict: Vec<Halfspace>,
    pub weak: Vec<Halfspace>,
    pub equalities: Vec<Halfspace>,
}

/// Non-negative weights on strict and weak rows plus free weights on equalities
/// whose combination of normals vanishes while the combined offsets make it contradictory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(with = "serde_q::vec")]
    pub strict: Vec<Q>,
    #[serde(with = "serde_q::vec")]
    pub weak: Vec<Q>,
    #[serde(with = "serde_q::vec")]
    pub equalities: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Q>),
    Infeasible(Certificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

impl HalfspaceSystem {
    pub fn new(dim: usize) -> Self {
        HalfspaceSystem {
            dim,
            ..Default::default()
        }
    }

    pub fn add_strict(&mut self, normal: Vec<Q>, offset: Q) {
        self.strict.push(Halfspace::new(normal, offset));
    }

    pub fn add_weak(&mut self, normal: Vec<Q>, offset: Q) {
        self.weak.push(Halfspace::new(normal, offset));
    }

    pub fn add_equality(&mut self, normal: Vec<Q>, offset: Q) {
        self.equalities.push(Halfspace::new(normal, offset));
    }

    fn check_dims(&self) -> Result<()> {
        let bad = self
            .strict
            .iter()
            .chain(&self.weak)
            .chain(&self.equalities)
            .any(|h| h.normal.len() != self.dim);
        if bad {
            return Err(Error::Invalid("normals of unequal length".into()));
        }
        Ok(())
    }

    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        self.strict.iter().all(|h| h.eval(x).is_positive())
            && self.weak.iter().all(|h| !h.eval(x).is_negative())
            && self.equalities.iter().all(|h| h.eval(x).is_zero())
    }
}

impl Certificate {
    /// Checks the certificate exactly against the system it refutes.
    pub fn verify(&self, sys: &HalfspaceSystem) -> bool {
        if self.strict.len() != sys.strict.len()
            || self.weak.len() != sys.weak.len()
            || self.equalities.len() != sys.equalities.len()
        {
            return false;
        }
        if self
            .strict
            .iter()
            .chain(&self.weak)
            .any(|w| w.is_negative())
        {
            return false;
        }
        let mut normal = vec![Q::zero(); sys.dim];
        let mut offset = Q::zero();
        let rows = sys
            .strict
            .iter()
            .zip(&self.strict)
            .chain(sys.weak.iter().zip(&self.weak))
            .chain(sys.equalities.iter().zip(&self.equalities));
        for (h, w) in rows {
            if w.is_zero() {
                continue;
            }
            for (acc, a) in normal.iter_mut().zip(&h.normal) {
                *acc += w * a;
            }
            offset += w * &h.offset;
        }
        if normal.iter().any(|x| !x.is_zero()) {
            return false;
        }
        let strict_used = self.strict.iter().any(|w| w.is_positive());
        if strict_used {
            !offset.is_negative()
        } else {
            offset.is_positive()
        }
    }

    /// Rescales all weights by one positive factor so they become coprime integers.
    pub fn normalized(&self) -> Certificate {
        let all: Vec<Q> = self
            .strict
            .iter()
            .chain(&self.weak)
            .chain(&self.equalities)
            .cloned()
            .collect();
        let l = Q::from_integer(lcm_of_denominators(&all));
        let ints: Vec<Q> = all.iter().map(|x| x * &l).collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| {
            num_integer::Integer::gcd(&acc, x.numer())
        });
        let g = if g.is_zero() {
            Q::one()
        } else {
            Q::from_integer(g)
        };
        let scaled: Vec<Q> = ints.into_iter().map(|x| x / &g).collect();
        let (s, rest) = scaled.split_at(self.strict.len());
        let (w, e) = rest.split_at(self.weak.len());
        Certificate {
            strict: s.to_vec(),
            weak: w.to_vec(),
            equalities: e.to_vec(),
        }
    }
}

/// Decides whether the mixed strict/weak/equality system has a solution.
///
/// Internally maximizes the least strict slack t (capped at 1) through the dual
/// program, which always has the zero vector as a starting point.
pub fn strict_feasible(sys: &HalfspaceSystem) -> Result<Feasibility> {
    sys.check_dims()?;
    let n = sys.dim;
    let (ns, nw, ne) = (sys.strict.len(), sys.weak.len(), sys.equalities.len());
    // columns: lambda (strict), mu (weak), nu+ , nu- (equalities), rho
    let ncols = ns + nw + 2 * ne + 1;
    let mut a = Matrix::zeros(n + 1, ncols);
    let mut cost = vec![Q::zero(); ncols];
    let mut col = 0;
    for h in &sys.strict {
        for (i, x) in h.normal.iter().enumerate() {
            a.set(i, col, x.clone());
        }
        a.set(n, col, Q::one());
        cost[col] = h.offset.clone();
        col += 1;
    }
    for h in &sys.weak {
        for (i, x) in h.normal.iter().enumerate() {
            a.set(i, col, x.clone());
        }
        cost[col] = h.offset.clone();
        col += 1;
    }
    for h in &sys.equalities {
        for (i, x) in h.normal.iter().enumerate() {
            a.set(i, col, x.clone());
            a.set(i, col + 1, -x.clone());
        }
        cost[col] = h.offset.clone();
        cost[col + 1] = -h.offset.clone();
        col += 2;
    }
    a.set(n, col, Q::one());
    cost[col] = -Q::one();
    let mut b = vec![Q::zero(); n + 1];
    b[n] = Q::one();

    let split = |z: &[Q]| -> Certificate {
        let strict = z[..ns].to_vec();
        let weak = z[ns..ns + nw].to_vec();
        let equalities = (0..ne)
            .map(|k| z[ns + nw + 2 * k].clone() - &z[ns + nw + 2 * k + 1])
            .collect();
        Certificate {
            strict,
            weak,
            equalities,
        }
        .normalized()
    };

    match maximize(&a, &b, &cost) {
        LpResult::Optimal { x, value, duals } => {
            // value = -t*, duals[..n] is the primal point
            if value.is_negative() {
                let y = duals[..n].to_vec();
                if !sys.satisfied_by(&y) {
                    return Err(Error::Internal(
                        "recovered point violates the system".into(),
                    ));
                }
                Ok(Feasibility::Feasible(y))
            } else {
                let cert = split(&x);
                if !cert.verify(sys) {
                    return Err(Error::Internal("certificate failed verification".into()));
                }
                Ok(Feasibility::Infeasible(cert))
            }
        }
        LpResult::Unbounded { ray, .. } => {
            let cert = split(&ray);
            if !cert.verify(sys) {
                return Err(Error::Internal(
                    "unbounded-ray certificate failed verification".into(),
                ));
            }
            Ok(Feasibility::Infeasible(cert))
        }
        LpResult::Infeasible { .. } => {
            Err(Error::Internal("dual program lost its zero start".into()))
        }
    }
}
