//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<Q>),
    Underdetermined { rank: usize, unknowns: usize },
    Inconsistent { rank: usize },
}

/// Reduces `rows` to reduced row echelon form in place and returns the pivot columns.
pub fn rref(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Solves `a x = b` exactly, reporting rank diagnostics when no unique solution exists.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Solution {
    let unknowns = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&unknowns) {
        return Solution::Inconsistent { rank: pivots.len() - 1 };
    }
    if pivots.len() < unknowns {
        return Solution::Underdetermined { rank: pivots.len(), unknowns };
    }
    Solution::Unique(aug.iter().take(unknowns).map(|r| r[unknowns].clone()).collect())
}

pub type SparseVec = BTreeMap<usize, Q>;

fn axpy(target: &mut SparseVec, factor: &Q, source: &SparseVec) {
    for (k, v) in source {
        let e = target.entry(*k).or_insert_with(Q::zero);
        *e -= factor * v;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

/// Incremental sparse row echelon form that remembers how each row was built from
/// the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: Vec<(SparseVec, SparseVec)>,
    pivot_of: BTreeMap<usize, usize>,
    inserted: usize,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v`, returning the residual and the combination of inserted vectors
    /// that was subtracted.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut res = v.clone();
        let mut used = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = res.range(cursor..).find(|(k, _)| self.pivot_of.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let (row, tag) = &self.rows[self.pivot_of[&k]];
            axpy(&mut res, &c, row);
            let neg = -c;
            axpy(&mut used, &neg, tag);
            cursor = k + 1;
        }
        (res, used)
    }

    /// Inserts `v`; returns false when it already lies in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (mut res, used) = self.reduce(v);
        let Some((&p, lead)) = res.iter().next() else { return false };
        let inv = Q::one() / lead;
        for x in res.values_mut() {
            *x *= &inv;
        }
        let mut tag: SparseVec = used.into_iter().map(|(k, c)| (k, -c * &inv)).filter(|(_, c)| !c.is_zero()).collect();
        tag.insert(idx, inv.clone());
        // keep earlier rows reduced at the new pivot so reduction stays one pass
        for (row, rtag) in self.rows.iter_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &c, &res);
                axpy(rtag, &c, &tag);
            }
        }
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push((res, tag));
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Writes `v` as a combination of the inserted vectors when it lies in their span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let (res, used) = self.reduce(v);
        if !res.is_empty() {
            return None;
        }
        Some(used)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn qv(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn solves_and_diagnoses() {
        let a = vec![qv(&[1, 1]), qv(&[1, -1])];
        assert_eq!(solve(&a, &qv(&[3, 1])), Solution::Unique(qv(&[2, 1])));
        let a = vec![qv(&[1, 1]), qv(&[2, 2])];
        assert_eq!(solve(&a, &qv(&[1, 2])), Solution::Underdetermined { rank: 1, unknowns: 2 });
        assert_eq!(solve(&a, &qv(&[1, 3])), Solution::Inconsistent { rank: 1 });
    }

    #[test]
    fn sparse_express() {
        let mut e = SparseEchelon::new();
        let v0: SparseVec = [(0, q(1)), (2, q(1))].into_iter().collect();
        let v1: SparseVec = [(0, q(1)), (1, q(1))].into_iter().collect();
        assert!(e.insert(&v0));
        assert!(e.insert(&v1));
        let target: SparseVec = [(1, q(2)), (2, q(-2))].into_iter().collect();
        let c = e.express(&target).unwrap();
        assert_eq!(c.get(&0), Some(&q(-2)));
        assert_eq!(c.get(&1), Some(&q(2)));
        let sum: SparseVec = [(0, q(2)), (1, q(1)), (2, q(1))].into_iter().collect();
        assert!(!e.insert(&sum));
        assert!(e.express(&[(3, q(1))].into_iter().collect()).is_none());
    }
}
