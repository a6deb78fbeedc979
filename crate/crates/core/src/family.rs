//! Exact family evaluation as a polynomial in the rank N.
//!
//! Every adjoint index is split into two fundamental strands (a row and a column
//! endpoint per half-edge). Vertices and edges become sums of strand reconnections,
//! and a closed configuration with `c` strand cycles contributes `N^c`. The sum is
//! organized as a frontier dynamic program over the vertices, whose states are
//! pairings of the dangling strand endpoints.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::combo::DiagramCombo;
use crate::diagram::{HalfEdge, JacobiDiagram, Kind};
use crate::error::{EvalError, EvalResult};
use crate::poly::QPoly;
use crate::rational::{pow_q, q, qf, Q};
use crate::registry::Family;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPolynomial {
    pub family: Family,
    pub poly: QPoly,
}

impl FamilyPolynomial {
    pub fn at(&self, n: u32) -> Q {
        self.poly.eval(&q(n as i64))
    }
}

type Endpoint = u32;
type Pairing = Vec<(Endpoint, Endpoint)>;

fn row(h: HalfEdge) -> Endpoint {
    2 * h
}

fn col(h: HalfEdge) -> Endpoint {
    2 * h + 1
}

/// Strand model used by the dynamic program; sp is obtained from so by duality.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Strands {
    Unitary,
    Orthogonal,
}

fn vertex_states(model: Strands, [a, b, c]: [HalfEdge; 3]) -> Vec<(i128, [(Endpoint, Endpoint); 3])> {
    let ccw = (1, [(col(a), row(b)), (col(b), row(c)), (col(c), row(a))]);
    match model {
        Strands::Unitary => vec![ccw, (-1, [(col(a), row(c)), (col(c), row(b)), (col(b), row(a))])],
        Strands::Orthogonal => vec![ccw],
    }
}

fn edge_states(model: Strands, [h, k]: [HalfEdge; 2]) -> Vec<(i128, [(Endpoint, Endpoint); 2])> {
    let parallel = (1, [(row(h), col(k)), (col(h), row(k))]);
    match model {
        Strands::Unitary => vec![parallel],
        Strands::Orthogonal => vec![parallel, (-1, [(row(h), row(k)), (col(h), col(k))])],
    }
}

fn normalize(p: &mut Pairing) {
    for e in p.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    p.sort_unstable();
}

/// Joins endpoints `x` and `y`; returns whether a cycle closed.
fn join(p: &mut Pairing, x: Endpoint, y: Endpoint) -> bool {
    let ix = p.iter().position(|e| e.0 == x || e.1 == x).expect("dangling endpoint");
    let ex = p.swap_remove(ix);
    let other_x = if ex.0 == x { ex.1 } else { ex.0 };
    if other_x == y {
        return true;
    }
    let iy = p.iter().position(|e| e.0 == y || e.1 == y).expect("dangling endpoint");
    let ey = p.swap_remove(iy);
    let other_y = if ey.0 == y { ey.1 } else { ey.0 };
    p.push((other_x, other_y));
    false
}

fn add_shifted(dst: &mut Vec<i128>, src: &[i128], shift: usize, sign: i128) -> EvalResult<()> {
    if dst.len() < src.len() + shift {
        dst.resize(src.len() + shift, 0);
    }
    for (i, &c) in src.iter().enumerate() {
        let v = c.checked_mul(sign).ok_or(EvalError::Overflow)?;
        dst[i + shift] = dst[i + shift].checked_add(v).ok_or(EvalError::Overflow)?;
    }
    Ok(())
}

/// Vertex order that keeps the frontier small: repeatedly take the vertex with the
/// most edges into the processed set.
fn vertex_order(d: &JacobiDiagram) -> Vec<usize> {
    let partner = d.partners();
    let owner: HashMap<HalfEdge, usize> = d.vertices.iter().enumerate().flat_map(|(i, v)| v.iter().map(move |&h| (h, i))).collect();
    let n = d.vertices.len();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |i: usize| d.vertices[i].iter().filter(|h| done[owner[&partner[h]]] || owner[&partner[h]] == i).count();
        let next = (0..n).filter(|&i| !done[i]).max_by_key(|&i| (score(i), std::cmp::Reverse(i))).expect("a vertex remains");
        done[next] = true;
        order.push(next);
    }
    order
}

/// Σ over strand states of sign·N^cycles for a graph without circles, as coefficients by power.
fn state_sum(d: &JacobiDiagram, model: Strands) -> EvalResult<Vec<i128>> {
    let partner = d.partners();
    let owner: HashMap<HalfEdge, usize> = d.vertices.iter().enumerate().flat_map(|(i, v)| v.iter().map(move |&h| (h, i))).collect();
    let mut processed = vec![false; d.vertices.len()];
    let mut states: HashMap<Pairing, Vec<i128>> = HashMap::from([(Vec::new(), vec![1])]);
    for v in vertex_order(d) {
        let mut next: HashMap<Pairing, Vec<i128>> = HashMap::new();
        let options = vertex_states(model, d.vertices[v]);
        for (p, coeffs) in &states {
            for (sign, pairs) in &options {
                let mut np = p.clone();
                np.extend_from_slice(pairs);
                normalize(&mut np);
                add_shifted(next.entry(np).or_default(), coeffs, 0, *sign)?;
            }
        }
        processed[v] = true;
        let mut ready: Vec<[HalfEdge; 2]> = Vec::new();
        for &h in &d.vertices[v] {
            let k = partner[&h];
            let w = owner[&k];
            if processed[w] && (w != v || h < k) {
                ready.push([h, k]);
            }
        }
        for e in ready {
            let options = edge_states(model, e);
            let mut after: HashMap<Pairing, Vec<i128>> = HashMap::new();
            for (p, coeffs) in &next {
                for (sign, [(x1, y1), (x2, y2)]) in &options {
                    let mut np = p.clone();
                    let closed = join(&mut np, *x1, *y1) as usize + join(&mut np, *x2, *y2) as usize;
                    normalize(&mut np);
                    add_shifted(after.entry(np).or_default(), coeffs, closed, *sign)?;
                }
            }
            after.retain(|_, c| c.iter().any(|x| *x != 0));
            next = after;
        }
        states = next;
    }
    Ok(states.remove(&Vec::new()).unwrap_or_default())
}

fn to_qpoly(coeffs: &[i128]) -> QPoly {
    QPoly::new(coeffs.iter().map(|&c| Q::from_integer(BigInt::from(c))).collect())
}

/// Value of one 3-graph as a polynomial in the family rank.
pub fn eval_family_diagram(d: &JacobiDiagram, family: Family) -> EvalResult<QPoly> {
    if d.kind() != Kind::ThreeGraph {
        return Err(EvalError::Diagram(crate::error::DiagramError::WrongKind { expected: "three-graph", found: d.kind().name() }));
    }
    let n = QPoly::x();
    let one = QPoly::constant(q(1));
    match family {
        Family::Sl => {
            let circle = &(&n * &n) - &one;
            let body = if d.vertices.is_empty() { one } else { to_qpoly(&state_sum(d, Strands::Unitary)?) };
            Ok(&body * &circle.pow(d.circles))
        }
        Family::So => Ok(orthogonal(d)?),
        Family::Sp => {
            // sp(2N) from so(M) at M = -2N, with a factor (-2)^(-V/2)
            let so = orthogonal(d)?;
            let sub = QPoly::affine(q(0), q(-2));
            let factor = pow_q(&qf(-1, 2), (d.vertices.len() / 2) as u32);
            Ok(so.compose(&sub).scale(&factor))
        }
    }
}

fn orthogonal(d: &JacobiDiagram) -> EvalResult<QPoly> {
    let m = QPoly::x();
    let circle = (&m * &(&m - &QPoly::constant(q(1)))).scale(&qf(1, 2));
    let body = if d.vertices.is_empty() { QPoly::constant(q(1)) } else { to_qpoly(&state_sum(d, Strands::Orthogonal)?) };
    Ok(&body * &circle.pow(d.circles))
}

/// Exact family value of a combo of 3-graphs.
pub fn eval_family(g: &DiagramCombo, family: Family) -> EvalResult<FamilyPolynomial> {
    let terms: Vec<_> = g.iter().collect();
    let parts = terms.par_iter().map(|(k, c)| Ok(eval_family_diagram(&k.decode()?, family)?.scale(c))).collect::<EvalResult<Vec<QPoly>>>()?;
    let poly = parts.into_iter().fold(QPoly::zero(), |a, b| &a + &b);
    Ok(FamilyPolynomial { family, poly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::*;

    #[test]
    fn theta_and_circle() {
        assert_eq!(eval_family_diagram(&theta(), Family::Sl).unwrap(), QPoly::from_ints(&[0, -2, 0, 2]));
        assert_eq!(eval_family_diagram(&theta(), Family::So).unwrap(), QPoly::from_ints(&[0, 2, -3, 1]));
        // sp(2N): 2(N+1)·N(2N+1)
        assert_eq!(eval_family_diagram(&theta(), Family::Sp).unwrap(), QPoly::from_ints(&[0, 2, 6, 4]));
        assert_eq!(eval_family_diagram(&circle(), Family::Sl).unwrap(), QPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn tetrahedron_matches_contraction() {
        use crate::algebra::AlgebraInstance;
        use crate::contract::Contractor;
        for f in Family::ALL {
            let poly = eval_family_diagram(&tetrahedron(), f).unwrap();
            for n in 2..=4 {
                let Ok(alg) = AlgebraInstance::new(f, n) else { continue };
                let exact = Contractor::new(&alg).unwrap().eval(&tetrahedron()).unwrap();
                assert_eq!(poly.eval(&q(n as i64)), exact, "{}", alg.label());
            }
        }
    }
}
