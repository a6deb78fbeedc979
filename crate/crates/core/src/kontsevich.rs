//! Kontsevich-integral layer: wheels and their symmetrization onto a Wilson loop,
//! the unknot series, the cabling operation ψ^m, connected sums and the 2-strand
//! torus knot series.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combo::{Coeff, DiagramCombo};
use crate::diagram::{build, disjoint_union, JacobiDiagram};
use crate::error::{DiagramError, DiagramResult, EvalResult};
use crate::poly::QPoly;
use crate::rational::{q, qf, Q};
use crate::relations::{pi_adj_combo, ChordSpace, StuResolver};
use crate::universal::{fit_universal, UniversalPolynomial};

/// Coefficient b_{2n} of x^{2n} in ½·log(sinh(x/2)/(x/2)).
pub fn bernoulli_mod(n: usize) -> Q {
    assert!(n >= 1, "index starts at 1");
    let order = 2 * n;
    // u = sinh(x/2)/(x/2) - 1
    let mut u = vec![Q::zero(); order + 1];
    let mut fact = Q::one();
    for k in 1..=order {
        fact *= q(k as i64);
        if k % 2 == 0 {
            // (x/2)^k / (k+1)!
            u[k] = Q::one() / (&fact * q(k as i64 + 1) * crate::rational::pow_q(&q(2), k as u32));
        }
    }
    // log(1 + u) = Σ (-1)^(j+1) u^j / j
    let mut log = vec![Q::zero(); order + 1];
    let mut power = u.clone();
    for j in 1..=order {
        let c = if j % 2 == 1 { qf(1, j as i64) } else { qf(-1, j as i64) };
        for (l, p) in log.iter_mut().zip(&power) {
            *l += &c * p;
        }
        let mut next = vec![Q::zero(); order + 1];
        for (a, pa) in power.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, ub) in u.iter().enumerate().take(order + 1 - a) {
                next[a + b] += pa * ub;
            }
        }
        power = next;
    }
    &log[order] / q(2)
}

/// Disjoint union of wheels with the given spoke counts.
pub fn wheel_product(sizes: &[usize]) -> DiagramResult<JacobiDiagram> {
    let mut d = JacobiDiagram::default();
    for &s in sizes {
        d = disjoint_union(&d, &build::wheel(s)?);
    }
    Ok(d)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Places the legs of an open diagram on a Wilson loop in the given order.
pub fn attach_legs(d: &JacobiDiagram, order: &[usize]) -> JacobiDiagram {
    let mut out = d.clone();
    out.loops = vec![order.iter().map(|&i| d.legs[i]).collect()];
    out.legs.clear();
    out
}

/// Orderings of `n` legs up to rotation: leg 0 first, the rest permuted.
fn orderings(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    loop {
        let mut o = vec![0];
        o.extend_from_slice(&rest);
        out.push(o);
        if !next_permutation(&mut rest) {
            break;
        }
    }
    out
}

fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * q(k as i64))
}

fn rho_mapped(d: &JacobiDiagram, map: impl Fn(&JacobiDiagram) -> JacobiDiagram + Sync) -> DiagramResult<DiagramCombo> {
    let n = d.legs.len();
    let weight = Q::one() / factorial(n.saturating_sub(1));
    let parts: Vec<DiagramCombo> = orderings(n)
        .par_chunks(64)
        .map(|chunk| {
            let mut c = DiagramCombo::new();
            for o in chunk {
                c.add_diagram(&map(&attach_legs(d, o)), weight.clone())?;
            }
            Ok(c)
        })
        .collect::<DiagramResult<_>>()?;
    let mut out = DiagramCombo::new();
    for p in &parts {
        out.add_combo(p, &Q::one());
    }
    Ok(out)
}

/// Symmetrization onto a single Wilson loop: the average over all leg orderings.
pub fn rho(d: &JacobiDiagram) -> DiagramResult<DiagramCombo> {
    if !d.loops.is_empty() {
        return Err(DiagramError::WrongKind { expected: "open", found: d.kind().name() });
    }
    rho_mapped(d, |x| x.clone())
}

/// `pi_adj(rho(d))`, computed ordering by ordering.
pub fn rho_adjoint(d: &JacobiDiagram) -> DiagramResult<DiagramCombo> {
    if !d.loops.is_empty() {
        return Err(DiagramError::WrongKind { expected: "open", found: d.kind().name() });
    }
    rho_mapped(d, crate::relations::pi_adj)
}

pub fn rho_combo(c: &DiagramCombo) -> DiagramResult<DiagramCombo> {
    let mut out = DiagramCombo::new();
    for (k, coeff) in c.iter() {
        out.add_combo(&rho(&k.decode()?)?, coeff);
    }
    Ok(out)
}

/// Universal value p with `pi_adj(rho(wheels)) = dim · p(t, σ, ω)`.
pub fn wheel_value(sizes: &[usize]) -> EvalResult<UniversalPolynomial> {
    let g = rho_adjoint(&wheel_product(sizes)?)?;
    Ok(fit_universal(&g)?.polynomial)
}

/// The wheel products of total degree 2..=max_degree, ordered by degree and then
/// by decreasing largest wheel.
pub fn wheel_products(max_degree: usize) -> Vec<Vec<usize>> {
    fn parts(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        let mut k = max.min(n);
        if k % 2 == 1 {
            k -= 1;
        }
        while k >= 2 {
            cur.push(k);
            parts(n - k, k, cur, out);
            cur.pop();
            k -= 2;
        }
    }
    let mut out = Vec::new();
    for deg in (2..=max_degree).step_by(2) {
        let mut level = Vec::new();
        parts(deg, deg, &mut Vec::new(), &mut level);
        out.extend(level);
    }
    out
}

/// Label like `w2^2*w4`.
pub fn wheel_label(sizes: &[usize]) -> String {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &s in sizes {
        *counts.entry(s).or_default() += 1;
    }
    counts.iter().map(|(s, c)| if *c == 1 { format!("w{s}") } else { format!("w{s}^{c}") }).collect::<Vec<_>>().join("*")
}

/// Closed-diagram series graded by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotSeries<R: Coeff = Q> {
    pub order: usize,
    pub framed: bool,
    pub degrees: BTreeMap<usize, DiagramCombo<R>>,
}

impl<R: Coeff> KnotSeries<R> {
    pub fn degree(&self, d: usize) -> DiagramCombo<R> {
        self.degrees.get(&d).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m: serde_json::Map<String, serde_json::Value> = self.degrees.iter().map(|(d, c)| (d.to_string(), c.to_json())).collect();
        serde_json::json!({"order": self.order, "framed": self.framed, "degrees": m})
    }
}

/// ρ(exp(Σ b_{2n} w_{2n})) truncated at `order`.
pub fn unknot_ki(order: usize) -> DiagramResult<KnotSeries> {
    let mut degrees: BTreeMap<usize, DiagramCombo> = BTreeMap::new();
    degrees.insert(0, DiagramCombo::from_diagram(&build::empty_loop())?);
    for sizes in wheel_products(order) {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for &s in &sizes {
            *counts.entry(s).or_default() += 1;
        }
        let coeff = counts.iter().fold(Q::one(), |acc, (&s, &c)| acc * crate::rational::pow_q(&bernoulli_mod(s / 2), c) / factorial(c as usize));
        let deg: usize = sizes.iter().sum();
        let c = rho(&wheel_product(&sizes)?)?;
        degrees.entry(deg).or_default().add_combo(&c, &coeff);
    }
    Ok(KnotSeries { order, framed: true, degrees })
}

/// Connected sum: the loop of `b` is inserted at the basepoint of `a`'s loop.
pub fn connected_sum(a: &JacobiDiagram, b: &JacobiDiagram) -> DiagramResult<JacobiDiagram> {
    for d in [a, b] {
        if d.loops.len() != 1 {
            return Err(DiagramError::LoopCount(d.loops.len()));
        }
    }
    let mut u = disjoint_union(a, b);
    let b_loop = u.loops.pop().expect("second loop");
    u.loops[0].splice(0..0, b_loop);
    Ok(u)
}

pub fn connected_sum_combo<R: Coeff>(a: &DiagramCombo<R>, b: &DiagramCombo<R>) -> DiagramResult<DiagramCombo<R>> {
    let mut out = DiagramCombo::new();
    for (ka, ca) in a.iter() {
        let da = ka.decode()?;
        for (kb, cb) in b.iter() {
            out.add_diagram(&connected_sum(&da, &kb.decode()?)?, ca.clone() * cb.clone())?;
        }
    }
    Ok(out)
}

/// ψ^m of one chord diagram: every endpoint lifted independently to one of `m`
/// sheets of the connected m-fold cover, read sheet-major. Returns the combo and the
/// number of lift terms.
pub fn psi_diagram(m: usize, d: &JacobiDiagram) -> DiagramResult<(DiagramCombo, usize)> {
    if !d.vertices.is_empty() {
        return Err(DiagramError::NotChordDiagram);
    }
    if d.loops.len() != 1 {
        return Err(DiagramError::LoopCount(d.loops.len()));
    }
    let seq = &d.loops[0];
    let len = seq.len();
    let total = m.pow(len as u32);
    let mut out = DiagramCombo::new();
    for code in 0..total {
        let mut sheet = vec![0usize; len];
        let mut c = code;
        for s in sheet.iter_mut() {
            *s = c % m;
            c /= m;
        }
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by_key(|&p| sheet[p] * len + p);
        let mut lifted = d.clone();
        lifted.loops[0] = order.iter().map(|&p| seq[p]).collect();
        out.add_diagram(&lifted, Q::one())?;
    }
    Ok((out, total))
}

pub fn psi<R: Coeff>(m: usize, c: &DiagramCombo<R>) -> DiagramResult<DiagramCombo<R>> {
    let mut out = DiagramCombo::new();
    for (k, coeff) in c.iter() {
        let (image, _) = psi_diagram(m, &k.decode()?)?;
        out.add_combo(&image.lift::<R>(), coeff);
    }
    Ok(out)
}

/// A chord with `k` planar bubbles inserted along it, on a loop with two attachments.
pub fn bubble_chord(k: usize) -> JacobiDiagram {
    let mut d = JacobiDiagram { loops: vec![vec![0, 1]], ..Default::default() };
    let mut prev = 0u32;
    let mut fresh = 2u32;
    for _ in 0..k {
        // left vertex (outer, lower arc, upper arc); right vertex (outer, upper arc, lower arc)
        let (x, lo, up) = (fresh, fresh + 1, fresh + 2);
        let (y, up2, lo2) = (fresh + 3, fresh + 4, fresh + 5);
        fresh += 6;
        d.vertices.push([x, lo, up]);
        d.vertices.push([y, up2, lo2]);
        d.edges.push([prev, x]);
        d.edges.push([lo, lo2]);
        d.edges.push([up, up2]);
        prev = y;
    }
    d.edges.push([prev, 1]);
    d
}

/// `k` isolated parallel chords.
pub fn isolated_chords(k: usize) -> JacobiDiagram {
    let chords: Vec<(usize, usize)> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
    if k == 0 {
        build::empty_loop()
    } else {
        build::chord_diagram(&chords)
    }
}

/// Named reference diagrams used to present the torus series.
pub fn torus_basis() -> DiagramResult<Vec<(&'static str, usize, JacobiDiagram)>> {
    let c = isolated_chords(1);
    let b = bubble_chord(1);
    Ok(vec![
        ("1", 0, isolated_chords(0)),
        ("C", 1, c.clone()),
        ("C^2", 2, isolated_chords(2)),
        ("B", 2, b.clone()),
        ("C^3", 3, isolated_chords(3)),
        ("C#B", 3, connected_sum(&c, &b)?),
        ("G", 3, bubble_chord(2)),
    ])
}

/// Whether a basis element carries an isolated chord.
pub fn has_isolated_chord(d: &JacobiDiagram) -> bool {
    let partner = d.partners();
    d.loops.iter().any(|l| {
        let n = l.len();
        n >= 2 && (0..n).any(|i| partner.get(&l[i]) == Some(&l[(i + 1) % n]))
    })
}

/// One term of a presented series: a named basis diagram with its coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTerm {
    pub name: &'static str,
    pub degree: usize,
    pub diagram: JacobiDiagram,
    pub coeff: QPoly,
}

/// The framed series of T[2, n] through `order` (at most 3), symbolic in n, as
/// chord diagrams and in the named basis.
#[derive(Clone, Debug)]
pub struct TorusSeries {
    pub chords: KnotSeries<QPoly>,
    pub terms: Vec<SeriesTerm>,
}

/// I(T[2, n]) = ψ²(I(○) # exp(n/4 · chord)).
pub fn torus_ki(order: usize) -> EvalResult<TorusSeries> {
    if order > 3 {
        return Err(crate::error::EvalError::Unsupported("the torus series is presented through order 3".into()));
    }
    let m = 2usize;
    let unknot = unknot_ki(order)?;
    let mut resolver = StuResolver::default();
    let mut exp_terms: BTreeMap<usize, DiagramCombo<QPoly>> = BTreeMap::new();
    let mut coeff = QPoly::one();
    for k in 0..=order {
        if k > 0 {
            coeff = (&coeff * &QPoly::affine(q(0), qf(1, 2 * m as i64))).scale(&qf(1, k as i64));
        }
        let mut c = DiagramCombo::<QPoly>::new();
        c.add_diagram(&isolated_chords(k), coeff.clone())?;
        exp_terms.insert(k, c);
    }
    let mut degrees: BTreeMap<usize, DiagramCombo<QPoly>> = BTreeMap::new();
    for (du, cu) in &unknot.degrees {
        for (de, ce) in &exp_terms {
            if du + de > order {
                continue;
            }
            let sum = connected_sum_combo(&cu.lift::<QPoly>(), ce)?;
            let resolved = resolver.resolve_combo(&sum)?;
            let lifted = psi(m, &resolved)?;
            degrees.entry(du + de).or_default().add_combo(&lifted, &QPoly::one());
        }
    }
    let basis = torus_basis()?;
    let mut terms = Vec::new();
    for (&deg, combo) in &degrees {
        let elems: Vec<&(&'static str, usize, JacobiDiagram)> = basis.iter().filter(|b| b.1 == deg).collect();
        let coords = express_in_basis(deg, combo, &elems, &mut resolver)?;
        for (e, c) in elems.iter().zip(coords) {
            if !c.is_zero() {
                terms.push(SeriesTerm { name: e.0, degree: deg, diagram: e.2.clone(), coeff: c });
            }
        }
    }
    Ok(TorusSeries { chords: KnotSeries { order, framed: true, degrees }, terms })
}

fn express_in_basis(
    deg: usize,
    combo: &DiagramCombo<QPoly>,
    elems: &[&(&'static str, usize, JacobiDiagram)],
    resolver: &mut StuResolver,
) -> EvalResult<Vec<QPoly>> {
    let resolved: Vec<DiagramCombo> = elems.iter().map(|e| resolver.resolve(&e.2)).collect::<DiagramResult<_>>()?;
    if deg == 0 {
        let c = combo.iter().next().map(|(_, c)| c.clone()).unwrap_or_else(QPoly::zero);
        return Ok(vec![c]);
    }
    let space = ChordSpace::new(deg)?;
    let mut out = vec![QPoly::zero(); elems.len()];
    for (p, part) in combo.by_power().iter().enumerate() {
        let coords = space.express(part, &resolved).ok_or_else(|| crate::error::EvalError::Unsupported(format!("degree {deg} series is outside the reference span")))?;
        for (o, c) in out.iter_mut().zip(coords) {
            let mut mono = vec![Q::zero(); p + 1];
            mono[p] = c;
            *o = &*o + &QPoly::new(mono);
        }
    }
    Ok(out)
}

/// Drops every presented term whose diagram has an isolated chord.
pub fn deframe(terms: &[SeriesTerm]) -> Vec<SeriesTerm> {
    terms.iter().filter(|t| !has_isolated_chord(&t.diagram)).cloned().collect()
}

/// Adjoint value of a presented term: its coefficient times the universal value of
/// `pi_adj` of its diagram (so the weight system gives dim times this).
#[derive(Clone, Debug)]
pub struct AdjointTerm {
    pub name: &'static str,
    pub degree: usize,
    pub coeff: QPoly,
    pub value: UniversalPolynomial,
}

pub fn adjoint_specialize(terms: &[SeriesTerm]) -> EvalResult<Vec<AdjointTerm>> {
    terms
        .iter()
        .map(|t| {
            let g = pi_adj_combo(&DiagramCombo::from_diagram(&t.diagram)?)?;
            Ok(AdjointTerm { name: t.name, degree: t.degree, coeff: t.coeff.clone(), value: fit_universal(&g)?.polynomial })
        })
        .collect()
}

/// Coefficient of t^k in the adjoint series when every term is a pure power of t:
/// the total per degree as a polynomial in n.
pub fn adjoint_t_coefficients(terms: &[AdjointTerm]) -> BTreeMap<usize, QPoly> {
    let mut out: BTreeMap<usize, QPoly> = BTreeMap::new();
    for t in terms {
        let scale = t.value.coeff(t.degree as u32, 0, 0);
        let e = out.entry(t.degree).or_insert_with(QPoly::zero);
        *e = &*e + &t.coeff.scale(&scale);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modified_bernoulli() {
        assert_eq!(bernoulli_mod(1), qf(1, 48));
        assert_eq!(bernoulli_mod(2), qf(-1, 5760));
        assert_eq!(bernoulli_mod(3), qf(1, 362880));
        assert_eq!(bernoulli_mod(4), qf(-1, 19353600));
    }

    #[test]
    fn wheel_product_list() {
        let labels: Vec<String> = wheel_products(8).iter().map(|s| wheel_label(s)).collect();
        assert_eq!(labels, ["w2", "w4", "w2^2", "w6", "w2*w4", "w2^3", "w8", "w2*w6", "w4^2", "w2^2*w4", "w2^4"]);
    }

    #[test]
    fn connected_sum_unit_and_chords() {
        let c = isolated_chords(1);
        let with_unit = connected_sum(&c, &build::empty_loop()).unwrap();
        assert_eq!(DiagramCombo::<Q>::from_diagram(&with_unit).unwrap(), DiagramCombo::from_diagram(&c).unwrap());
        let two = connected_sum(&c, &c).unwrap();
        assert_eq!(DiagramCombo::<Q>::from_diagram(&two).unwrap(), DiagramCombo::from_diagram(&isolated_chords(2)).unwrap());
    }

    #[test]
    fn psi_two_on_one_chord() {
        let (img, count) = psi_diagram(2, &isolated_chords(1)).unwrap();
        assert_eq!(count, 4);
        assert_eq!(img, DiagramCombo::from_diagram(&isolated_chords(1)).unwrap().scaled(&q(4)));
    }

    fn psi_two(chords: &[(usize, usize)]) -> DiagramCombo {
        let (img, total) = psi_diagram(2, &build::chord_diagram(chords)).unwrap();
        assert_eq!(total, 1 << (2 * chords.len()));
        img
    }

    fn combo(terms: &[(i64, &[(usize, usize)])]) -> DiagramCombo {
        let mut c = DiagramCombo::new();
        for (k, chords) in terms {
            c.add_diagram(&build::chord_diagram(chords), q(*k)).unwrap();
        }
        c
    }

    #[test]
    fn psi_two_golden_expansions() {
        let parallel: &[(usize, usize)] = &[(0, 1), (2, 3)];
        let crossed: &[(usize, usize)] = &[(0, 2), (1, 3)];
        assert_eq!(psi_two(parallel), combo(&[(12, parallel), (4, crossed)]));
        assert_eq!(psi_two(crossed), combo(&[(8, parallel), (8, crossed)]));
        let nested: &[(usize, usize)] = &[(0, 5), (1, 4), (2, 3)];
        let chord_and_cross: &[(usize, usize)] = &[(0, 1), (2, 4), (3, 5)];
        let ladder: &[(usize, usize)] = &[(1, 3), (0, 4), (2, 5)];
        let all_crossed: &[(usize, usize)] = &[(1, 4), (0, 3), (2, 5)];
        // three-chord pictures agree modulo 4T, where the nested and the isolated
        // triple are both C#C#C
        let space = ChordSpace::new(3).unwrap();
        let same = |a: DiagramCombo, b: DiagramCombo| space.is_zero(&(&a - &b));
        assert!(same(psi_two(nested), combo(&[(32, nested), (16, chord_and_cross), (16, ladder)])));
        assert!(same(psi_two(chord_and_cross), combo(&[(20, nested), (28, chord_and_cross), (12, ladder), (4, all_crossed)])));
        assert!(!same(psi_two(nested), combo(&[(32, nested), (16, chord_and_cross), (12, ladder), (4, all_crossed)])));
    }

    #[test]
    fn bubble_chord_is_planar() {
        let (_, sign) = crate::relations::bubble_step(&bubble_chord(1)).unwrap();
        assert_eq!(sign, 1);
        // X - P = -B/2 modulo 4T
        let space = ChordSpace::new(2).unwrap();
        let mut lhs = DiagramCombo::from_diagram(&build::chord_diagram(&[(0, 2), (1, 3)])).unwrap();
        lhs.add_diagram(&isolated_chords(2), q(-1)).unwrap();
        let b = StuResolver::default().resolve(&bubble_chord(1)).unwrap();
        assert_eq!(space.express(&lhs, &[b]), Some(vec![qf(-1, 2)]));
    }

    #[test]
    fn torus_series_through_order_three() {
        let series = torus_ki(3).unwrap();
        let get = |name: &str| series.terms.iter().find(|t| t.name == name).map(|t| t.coeff.clone()).unwrap_or_else(QPoly::zero);
        assert_eq!(get("1"), QPoly::from_ints(&[1]));
        assert_eq!(get("C"), QPoly::from_ints(&[0, 1]));
        assert_eq!(get("C^2"), QPoly::new(vec![q(0), q(0), qf(1, 2)]));
        assert_eq!(get("B"), QPoly::new(vec![qf(4, 48), q(0), qf(-3, 48)]));
        assert_eq!(get("C^3"), QPoly::new(vec![q(0), q(0), q(0), qf(1, 6)]));
        assert_eq!(get("C#B"), QPoly::new(vec![q(0), qf(4, 48), q(0), qf(-3, 48)]));
        assert_eq!(get("G"), QPoly::new(vec![q(0), qf(-1, 96), q(0), qf(1, 96)]));
        let deframed = deframe(&series.terms);
        let names: Vec<&str> = deframed.iter().map(|t| t.name).collect();
        assert_eq!(names, ["1", "B", "G"]);
    }

    #[test]
    fn low_wheel_values() {
        assert_eq!(wheel_value(&[2]).unwrap().to_string(), "4*t^2");
        assert_eq!(wheel_value(&[4]).unwrap().to_string(), "20/3*t^4 - 3*t*w");
        assert_eq!(wheel_value(&[2, 2]).unwrap().to_string(), "40/3*t^4");
    }
}
