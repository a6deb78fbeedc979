//! Explicit classical Lie algebras built from the defining representation.
//!
//! The metric is `κ·tr` on the defining representation with κ chosen so that the
//! adjoint Casimir equals `2t` on the Vogel scale: κ = 1 for sl and sp, ½ for so.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{EvalError, EvalResult};
use crate::lambda::VogelPoint;
use crate::linalg::rref;
use crate::rational::{q, qf, Q};
use crate::registry::{registry, Family};

/// Sparse integer matrix as a list of `(row, col, value)`.
pub type SparseMat = Vec<(usize, usize, i64)>;

#[derive(Clone, Debug)]
pub struct AlgebraInstance {
    pub family: Family,
    pub rank: u32,
    /// Size of the defining representation.
    pub rep_dim: usize,
    pub basis: Vec<SparseMat>,
    /// `g_ab = κ tr(X_a X_b)`.
    pub metric: Vec<Vec<Q>>,
    pub metric_inv: Vec<Vec<Q>>,
    /// Nonzero entries of `f_abc = κ tr([X_a, X_b] X_c)`, all index orders.
    pub structure: Vec<([usize; 3], Q)>,
    pub point: VogelPoint,
}

fn mat_mul(a: &SparseMat, b: &SparseMat) -> HashMap<(usize, usize), i64> {
    let mut out = HashMap::new();
    for &(i, k, x) in a {
        for &(k2, j, y) in b {
            if k == k2 {
                *out.entry((i, j)).or_insert(0) += x * y;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn sl_basis(n: usize) -> SparseMat2 {
    let mut b = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                b.push(vec![(i, j, 1)]);
            }
        }
    }
    for k in 0..n - 1 {
        b.push(vec![(k, k, 1), (k + 1, k + 1, -1)]);
    }
    b
}

fn so_basis(n: usize) -> SparseMat2 {
    let mut b = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            b.push(vec![(i, j, 1), (j, i, -1)]);
        }
    }
    b
}

fn sp_basis(n: usize) -> SparseMat2 {
    let mut b = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                b.push(vec![(i, i, 1), (n + i, n + i, -1)]);
            } else {
                b.push(vec![(i, j, 1), (n + j, n + i, -1)]);
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            if i == j {
                b.push(vec![(i, n + i, 1)]);
                b.push(vec![(n + i, i, 1)]);
            } else {
                b.push(vec![(i, n + j, 1), (j, n + i, 1)]);
                b.push(vec![(n + i, j, 1), (n + j, i, 1)]);
            }
        }
    }
    b
}

type SparseMat2 = Vec<SparseMat>;

fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl AlgebraInstance {
    /// Builds sl(N), so(N) or sp(2N) for the family rank `n`.
    pub fn new(family: Family, n: u32) -> EvalResult<Self> {
        let row = registry().family_row(family);
        if n < row.min_rank.unwrap_or(1) {
            return Err(EvalError::UnknownAlgebra(family.label(n)));
        }
        let nu = n as usize;
        let (rep_dim, basis, kappa) = match family {
            Family::Sl => (nu, sl_basis(nu), q(1)),
            Family::So => (nu, so_basis(nu), qf(1, 2)),
            Family::Sp => (2 * nu, sp_basis(nu), q(1)),
        };
        let dim = basis.len();
        // Index each basis matrix by position for the trace pairing tr(M X_c) = Σ M_ij (X_c)_ji.
        let mut by_pos: HashMap<(usize, usize), Vec<(usize, i64)>> = HashMap::new();
        for (c, x) in basis.iter().enumerate() {
            for &(i, j, v) in x {
                by_pos.entry((j, i)).or_default().push((c, v));
            }
        }
        let pair_with = |m: &HashMap<(usize, usize), i64>| -> HashMap<usize, i64> {
            let mut out = HashMap::new();
            for (&(i, j), &v) in m {
                if let Some(list) = by_pos.get(&(i, j)) {
                    for &(c, x) in list {
                        *out.entry(c).or_insert(0) += v * x;
                    }
                }
            }
            out.retain(|_, v| *v != 0);
            out
        };
        let mut metric = vec![vec![Q::zero(); dim]; dim];
        for a in 0..dim {
            let sq: HashMap<(usize, usize), i64> = basis[a].iter().map(|&(i, j, v)| ((i, j), v)).collect();
            for (b, v) in pair_with(&sq) {
                metric[a][b] = &kappa * q(v);
            }
        }
        let metric_inv = invert(&metric).ok_or_else(|| EvalError::Unsupported("degenerate trace form".into()))?;
        let mut structure = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                let mut comm = mat_mul(&basis[a], &basis[b]);
                for (k, v) in mat_mul(&basis[b], &basis[a]) {
                    *comm.entry(k).or_insert(0) -= v;
                }
                comm.retain(|_, v| *v != 0);
                for (c, v) in pair_with(&comm) {
                    let val = &kappa * q(v);
                    structure.push(([a, b, c], val.clone()));
                    structure.push(([b, a, c], -val));
                }
            }
        }
        structure.sort_by(|x, y| x.0.cmp(&y.0));
        Ok(AlgebraInstance { family, rank: n, rep_dim, basis, metric, metric_inv, structure, point: row.point_at(n) })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self) -> String {
        self.family.label(self.rank)
    }

    pub fn t(&self) -> Q {
        self.point.t()
    }

    /// Lowered structure constants as a lookup table.
    pub fn structure_map(&self) -> HashMap<[usize; 3], Q> {
        self.structure.iter().cloned().collect()
    }

    /// `f_ab^c`, the adjoint action coefficients `[X_a, X_b] = Σ f_ab^c X_c`.
    pub fn bracket_coeffs(&self) -> HashMap<(usize, usize), Vec<(usize, Q)>> {
        let mut out: HashMap<(usize, usize), Vec<(usize, Q)>> = HashMap::new();
        for ([a, b, c], v) in &self.structure {
            for (d, ginv) in self.metric_inv[*c].iter().enumerate() {
                if !ginv.is_zero() {
                    out.entry((*a, *b)).or_default().push((d, v * ginv));
                }
            }
        }
        for list in out.values_mut() {
            list.sort_by_key(|x| x.0);
            let mut merged: Vec<(usize, Q)> = Vec::with_capacity(list.len());
            for (d, v) in list.drain(..) {
                match merged.last_mut() {
                    Some((ld, lv)) if *ld == d => *lv += v,
                    _ => merged.push((d, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *list = merged;
        }
        out
    }

    /// Checks total antisymmetry of the lowered structure constants and the Jacobi identity.
    pub fn check_invariants(&self) -> bool {
        let f = self.structure_map();
        let get = |k: [usize; 3]| f.get(&k).cloned().unwrap_or_else(Q::zero);
        for ([a, b, c], v) in &self.structure {
            if get([*b, *c, *a]) != *v || get([*a, *c, *b]) != -v.clone() {
                return false;
            }
        }
        let sym = (0..self.dim()).all(|a| (0..self.dim()).all(|b| self.metric[a][b] == self.metric[b][a]));
        if !sym {
            return false;
        }
        let br = self.bracket_coeffs();
        let bracket = |x: &HashMap<usize, Q>, y: &HashMap<usize, Q>| -> HashMap<usize, Q> {
            let mut out: HashMap<usize, Q> = HashMap::new();
            for (a, xa) in x {
                for (b, yb) in y {
                    if let Some(list) = br.get(&(*a, *b)) {
                        for (c, v) in list {
                            *out.entry(*c).or_insert_with(Q::zero) += xa * yb * v;
                        }
                    }
                }
            }
            out.retain(|_, v| !v.is_zero());
            out
        };
        let unit = |a: usize| HashMap::from([(a, Q::one())]);
        let dim = self.dim();
        let step = dim.div_ceil(6).max(1);
        for a in (0..dim).step_by(step) {
            for b in (0..dim).step_by(step) {
                for c in 0..dim {
                    let (xa, xb, xc) = (unit(a), unit(b), unit(c));
                    let mut total: HashMap<usize, Q> = HashMap::new();
                    for term in [bracket(&xa, &bracket(&xb, &xc)), bracket(&xb, &bracket(&xc, &xa)), bracket(&xc, &bracket(&xa, &xb))] {
                        for (k, v) in term {
                            *total.entry(k).or_insert_with(Q::zero) += v;
                        }
                    }
                    if total.values().any(|v| !v.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_invariants() {
        for (f, n, d) in [(Family::Sl, 3, 8), (Family::So, 5, 10), (Family::Sp, 2, 10), (Family::Sp, 1, 3)] {
            let a = AlgebraInstance::new(f, n).unwrap();
            assert_eq!(a.dim(), d);
            assert!(a.check_invariants(), "{}", a.label());
        }
        let so2 = AlgebraInstance::new(Family::So, 2).unwrap();
        assert_eq!(so2.dim(), 1);
        assert!(so2.structure.is_empty());
        assert!(AlgebraInstance::new(Family::So, 1).is_err());
    }
}
