//! Brute-force weight-system evaluation by contracting structure constants and
//! inverse metrics over every edge. This is the ground-truth oracle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::AlgebraInstance;
use crate::combo::DiagramCombo;
use crate::diagram::{JacobiDiagram, Kind};
use crate::error::{EvalError, EvalResult};
use crate::rational::Q;

pub const DEFAULT_BUDGET: usize = 100_000_000;

const MAX_VARS: usize = 16;
const PAR_THRESHOLD: usize = 20_000;

/// Sparse integer tensor; entry keys pack one byte per variable.
#[derive(Clone, Debug)]
struct Tensor {
    vars: Vec<u32>,
    entries: HashMap<u128, i128>,
}

fn digit(key: u128, pos: usize) -> u128 {
    (key >> (8 * pos)) & 0xff
}

fn pack(vals: &[usize]) -> u128 {
    vals.iter().enumerate().fold(0u128, |k, (i, &v)| k | ((v as u128) << (8 * i)))
}

fn sub_key(key: u128, positions: &[usize]) -> u128 {
    positions.iter().enumerate().fold(0u128, |k, (i, &p)| k | (digit(key, p) << (8 * i)))
}

fn add_checked(map: &mut HashMap<u128, i128>, k: u128, v: i128) -> EvalResult<()> {
    let e = map.entry(k).or_insert(0);
    *e = e.checked_add(v).ok_or(EvalError::Overflow)?;
    Ok(())
}

fn contract_pair(a: &Tensor, b: &Tensor, budget: usize) -> EvalResult<Tensor> {
    let shared: Vec<u32> = a.vars.iter().copied().filter(|v| b.vars.contains(v)).collect();
    let a_rest: Vec<usize> = (0..a.vars.len()).filter(|&i| !shared.contains(&a.vars[i])).collect();
    let b_rest: Vec<usize> = (0..b.vars.len()).filter(|&i| !shared.contains(&b.vars[i])).collect();
    if a_rest.len() + b_rest.len() > MAX_VARS {
        return Err(EvalError::Resource { budget });
    }
    let a_sh: Vec<usize> = shared.iter().map(|v| a.vars.iter().position(|x| x == v).unwrap()).collect();
    let b_sh: Vec<usize> = shared.iter().map(|v| b.vars.iter().position(|x| x == v).unwrap()).collect();
    let mut index: HashMap<u128, Vec<(u128, i128)>> = HashMap::new();
    for (&k, &v) in &b.entries {
        index.entry(sub_key(k, &b_sh)).or_default().push((sub_key(k, &b_rest) << (8 * a_rest.len()), v));
    }
    let work = |chunk: &[(&u128, &i128)]| -> EvalResult<HashMap<u128, i128>> {
        let mut out: HashMap<u128, i128> = HashMap::new();
        for (&k, &va) in chunk {
            if let Some(list) = index.get(&sub_key(k, &a_sh)) {
                let ra = sub_key(k, &a_rest);
                for &(rb, vb) in list {
                    add_checked(&mut out, ra | rb, va.checked_mul(vb).ok_or(EvalError::Overflow)?)?;
                }
                if out.len() > budget {
                    return Err(EvalError::Resource { budget });
                }
            }
        }
        Ok(out)
    };
    let items: Vec<(&u128, &i128)> = a.entries.iter().collect();
    let mut entries = if items.len() > PAR_THRESHOLD {
        let parts: Vec<HashMap<u128, i128>> = items.par_chunks(PAR_THRESHOLD / 4).map(work).collect::<EvalResult<_>>()?;
        let mut merged = HashMap::new();
        for p in parts {
            for (k, v) in p {
                add_checked(&mut merged, k, v)?;
            }
            if merged.len() > budget {
                return Err(EvalError::Resource { budget });
            }
        }
        merged
    } else {
        work(&items)?
    };
    entries.retain(|_, v| *v != 0);
    let vars = a_rest.iter().map(|&i| a.vars[i]).chain(b_rest.iter().map(|&i| b.vars[i])).collect();
    Ok(Tensor { vars, entries })
}

fn lcm_denominators<'a>(it: impl Iterator<Item = &'a Q>) -> BigInt {
    it.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn to_i128(x: &BigInt) -> EvalResult<i128> {
    x.to_i128().ok_or(EvalError::Overflow)
}

/// An algebra prepared for repeated contractions: integerized structure constants
/// and inverse metric, with their common denominators.
#[derive(Clone, Debug)]
pub struct Contractor {
    dim: usize,
    f_scale: BigInt,
    g_scale: BigInt,
    f_entries: Vec<([usize; 3], i128)>,
    g_entries: Vec<([usize; 2], i128)>,
    metric: Vec<Vec<Q>>,
    pub budget: usize,
}

/// Result of evaluating a diagram with free legs: a tensor with all leg indices
/// raised, keyed by leg values in leg order.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenTensor {
    pub legs: usize,
    pub dim: usize,
    pub entries: HashMap<Vec<usize>, Q>,
}

impl OpenTensor {
    pub fn get(&self, idx: &[usize]) -> Q {
        self.entries.get(idx).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_scaled(&mut self, other: &OpenTensor, c: &Q) {
        for (k, v) in &other.entries {
            let e = self.entries.entry(k.clone()).or_insert_with(Q::zero);
            *e += v * c;
        }
        self.entries.retain(|_, v| !v.is_zero());
    }
}

impl Contractor {
    pub fn new(alg: &AlgebraInstance) -> EvalResult<Self> {
        let dim = alg.dim();
        if dim > 255 {
            return Err(EvalError::Unsupported(format!("{} is too large for the packed contraction", alg.label())));
        }
        let f_scale = lcm_denominators(alg.structure.iter().map(|(_, v)| v));
        let ginv: Vec<([usize; 2], Q)> = (0..dim)
            .flat_map(|a| (0..dim).map(move |b| (a, b)))
            .filter(|&(a, b)| !alg.metric_inv[a][b].is_zero())
            .map(|(a, b)| ([a, b], alg.metric_inv[a][b].clone()))
            .collect();
        let g_scale = lcm_denominators(ginv.iter().map(|(_, v)| v));
        let scale = |v: &Q, s: &BigInt| -> EvalResult<i128> { to_i128(&(v * Q::from(s.clone())).to_integer()) };
        let f_entries = alg.structure.iter().map(|(k, v)| Ok((*k, scale(v, &f_scale)?))).collect::<EvalResult<_>>()?;
        let g_entries = ginv.iter().map(|(k, v)| Ok((*k, scale(v, &g_scale)?))).collect::<EvalResult<_>>()?;
        Ok(Contractor { dim, f_scale, g_scale, f_entries, g_entries, metric: alg.metric.clone(), budget: DEFAULT_BUDGET })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The metric `g_ab`, used to lower indices of open results.
    pub fn metric(&self) -> &[Vec<Q>] {
        &self.metric
    }

    fn network(&self, d: &JacobiDiagram) -> Vec<Tensor> {
        let mut ts = Vec::with_capacity(d.vertices.len() + d.edges.len());
        for v in &d.vertices {
            let entries = self.f_entries.iter().map(|(k, x)| (pack(k), *x)).collect();
            ts.push(Tensor { vars: v.to_vec(), entries });
        }
        for e in &d.edges {
            let entries = self.g_entries.iter().map(|(k, x)| (pack(k), *x)).collect();
            ts.push(Tensor { vars: e.to_vec(), entries });
        }
        ts
    }

    /// Greedy pairwise contraction: always merge the connected pair with the fewest
    /// surviving indices, breaking ties by the smaller entry product.
    fn contract_all(&self, mut ts: Vec<Tensor>) -> EvalResult<Tensor> {
        while ts.len() > 1 {
            let mut best: Option<(usize, u128, usize, usize)> = None;
            for i in 0..ts.len() {
                for j in i + 1..ts.len() {
                    let shared = ts[i].vars.iter().filter(|v| ts[j].vars.contains(v)).count();
                    if shared == 0 {
                        continue;
                    }
                    let rank = ts[i].vars.len() + ts[j].vars.len() - 2 * shared;
                    let cost = ts[i].entries.len() as u128 * ts[j].entries.len() as u128;
                    if best.is_none_or(|b| (rank, cost) < (b.0, b.1)) {
                        best = Some((rank, cost, i, j));
                    }
                }
            }
            let (i, j) = match best {
                Some((_, _, i, j)) => (i, j),
                // disconnected pieces: take an outer product
                None => (0, 1),
            };
            let b = ts.swap_remove(j);
            let a = ts.swap_remove(i);
            ts.push(contract_pair(&a, &b, self.budget)?);
        }
        Ok(ts.pop().unwrap_or(Tensor { vars: vec![], entries: HashMap::from([(0, 1)]) }))
    }

    fn normalization(&self, d: &JacobiDiagram) -> Q {
        let den = num_traits::pow(self.f_scale.clone(), d.vertices.len()) * num_traits::pow(self.g_scale.clone(), d.edges.len());
        let circles = num_traits::pow(Q::from_integer(BigInt::from(self.dim)), d.circles as usize);
        circles / Q::from_integer(den)
    }

    fn check_kind(d: &JacobiDiagram) -> EvalResult<()> {
        if d.kind() == Kind::Closed {
            return Err(EvalError::Unsupported("diagrams with Wilson loops must be mapped to graphs first".into()));
        }
        Ok(())
    }

    /// Full contraction of a 3-graph.
    pub fn eval(&self, d: &JacobiDiagram) -> EvalResult<Q> {
        Self::check_kind(d)?;
        if !d.legs.is_empty() {
            return Err(EvalError::Unsupported("diagram has free legs".into()));
        }
        let t = self.contract_all(self.network(d))?;
        let raw = t.entries.get(&0).copied().unwrap_or(0);
        Ok(Q::from_integer(BigInt::from(raw)) * self.normalization(d))
    }

    /// Contraction leaving the legs open, with all leg indices raised.
    pub fn eval_open(&self, d: &JacobiDiagram) -> EvalResult<OpenTensor> {
        Self::check_kind(d)?;
        let t = self.contract_all(self.network(d))?;
        let norm = self.normalization(d);
        let positions: Vec<usize> = d.legs.iter().map(|h| t.vars.iter().position(|v| v == h).expect("every leg stays open")).collect();
        let entries = t
            .entries
            .iter()
            .map(|(&k, &v)| (positions.iter().map(|&p| digit(k, p) as usize).collect(), Q::from_integer(BigInt::from(v)) * &norm))
            .collect();
        Ok(OpenTensor { legs: d.legs.len(), dim: self.dim, entries })
    }

    pub fn eval_combo(&self, c: &DiagramCombo) -> EvalResult<Q> {
        let terms: Vec<_> = c.iter().collect();
        let vals = terms.par_iter().map(|(k, coeff)| Ok(self.eval(&k.decode()?)? * *coeff)).collect::<EvalResult<Vec<Q>>>()?;
        Ok(vals.into_iter().fold(Q::zero(), |a, b| a + b))
    }

    pub fn eval_open_combo(&self, c: &DiagramCombo, legs: usize) -> EvalResult<OpenTensor> {
        let terms: Vec<_> = c.iter().collect();
        let parts = terms.par_iter().map(|(k, coeff)| Ok((self.eval_open(&k.decode()?)?, (*coeff).clone()))).collect::<EvalResult<Vec<_>>>()?;
        let mut out = OpenTensor { legs, dim: self.dim, entries: HashMap::new() };
        for (t, c) in parts {
            out.add_scaled(&t, &c);
        }
        Ok(out)
    }
}

/// Evaluates a combo of 3-graphs on an explicit algebra.
pub fn eval_numeric(g: &DiagramCombo, alg: &AlgebraInstance) -> EvalResult<Q> {
    Contractor::new(alg)?.eval_combo(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::*;
    use crate::rational::q;
    use crate::registry::Family;

    #[test]
    fn circle_and_theta() {
        let sl2 = Contractor::new(&AlgebraInstance::new(Family::Sl, 2).unwrap()).unwrap();
        assert_eq!(sl2.eval(&circle()).unwrap(), q(3));
        assert_eq!(sl2.eval(&theta()).unwrap(), q(12));
        let so5 = Contractor::new(&AlgebraInstance::new(Family::So, 5).unwrap()).unwrap();
        assert_eq!(so5.eval(&theta()).unwrap(), q(60));
        let sp4 = Contractor::new(&AlgebraInstance::new(Family::Sp, 2).unwrap()).unwrap();
        assert_eq!(sp4.eval(&theta()).unwrap(), q(60));
    }

    #[test]
    fn tiny_budget_is_a_resource_error() {
        let c = Contractor::new(&AlgebraInstance::new(Family::Sl, 3).unwrap()).unwrap().with_budget(10);
        assert!(matches!(c.eval(&tetrahedron()), Err(EvalError::Resource { .. })));
    }
}
