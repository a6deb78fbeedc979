//! Local relations on Jacobi diagrams: STU resolution onto chord diagrams, IHX
//! moves, the adjoint-loop map and bubble removal, plus span checks modulo IHX.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::canon::{canonicalize, CanonicalKey, DiagramKey};
use crate::combo::{Coeff, DiagramCombo};
use crate::diagram::{HalfEdge, JacobiDiagram, Slot};
use crate::error::{DiagramError, DiagramResult};
use crate::linalg::{SparseEchelon, SparseVec};
use crate::rational::{q, Q};

/// Which relation produced a [`RewriteStep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteKind {
    Stu,
    Ihx,
    /// The added side carries an extra factor (2t)^power; only meaningful under a
    /// weight system, where a bubble on an edge is proportional to the bare edge.
    BubbleFactor { power: u32 },
}

/// One application of a relation: `removed` equals `added` modulo the relation.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteStep {
    pub kind: RewriteKind,
    pub removed: DiagramCombo,
    pub added: DiagramCombo,
}

impl RewriteStep {
    pub fn undo(&self) -> RewriteStep {
        RewriteStep { kind: self.kind, removed: self.added.clone(), added: self.removed.clone() }
    }

    /// `removed - added`, an element of the relation subspace.
    pub fn relation(&self) -> DiagramCombo {
        &self.removed - &self.added
    }
}

fn rotate_to(tri: [HalfEdge; 3], h: HalfEdge) -> [HalfEdge; 3] {
    let i = tri.iter().position(|&x| x == h).expect("half-edge at vertex");
    [tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]]
}

fn remove_edge_at(d: &mut JacobiDiagram, h: HalfEdge) {
    d.edges.retain(|e| e[0] != h && e[1] != h);
}

/// One STU move at vertex `v`, using its half-edge `x` whose partner sits on a loop.
/// With the vertex read as (x, a, b), the result is [b before a] − [a before b] at
/// the attachment point of x.
pub fn stu_step(d: &JacobiDiagram, v: usize, x: HalfEdge) -> DiagramResult<RewriteStep> {
    let partner = d.partners();
    let [x, a, b] = rotate_to(d.vertices[v], x);
    let px = partner[&x];
    let Some(Slot::Loop(l, i)) = d.slots().get(&px).copied() else {
        return Err(DiagramError::NotOnLoop(x));
    };
    let mut base = d.clone();
    base.vertices.remove(v);
    remove_edge_at(&mut base, x);
    let mut added = DiagramCombo::new();
    for (order, c) in [([b, a], q(1)), ([a, b], q(-1))] {
        let mut t = base.clone();
        t.loops[l].splice(i..=i, order);
        added.add_diagram(&t, c)?;
    }
    Ok(RewriteStep { kind: RewriteKind::Stu, removed: DiagramCombo::from_diagram(d)?, added })
}

/// Order in which internal vertices are resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiteOrder {
    SmallestFirst,
    LargestFirst,
}

/// Memoizing STU resolver from closed diagrams to chord diagrams.
#[derive(Debug)]
pub struct StuResolver {
    order: SiteOrder,
    memo: HashMap<DiagramKey, DiagramCombo>,
}

impl Default for StuResolver {
    fn default() -> Self {
        Self::new(SiteOrder::SmallestFirst)
    }
}

impl StuResolver {
    pub fn new(order: SiteOrder) -> Self {
        StuResolver { order, memo: HashMap::new() }
    }

    fn site(&self, d: &JacobiDiagram) -> Option<(usize, HalfEdge)> {
        let slots = d.slots();
        let partner = d.partners();
        let sites = d.vertices.iter().enumerate().flat_map(|(v, tri)| tri.iter().map(move |&h| (v, h))).filter(|(_, h)| matches!(slots.get(&partner[h]), Some(Slot::Loop(..))));
        match self.order {
            SiteOrder::SmallestFirst => sites.min_by_key(|&(_, h)| h),
            SiteOrder::LargestFirst => sites.max_by_key(|&(_, h)| h),
        }
    }

    fn resolve_key(&mut self, key: &DiagramKey) -> DiagramResult<DiagramCombo> {
        if let Some(c) = self.memo.get(key) {
            return Ok(c.clone());
        }
        let d = key.decode()?;
        let out = if d.vertices.is_empty() {
            DiagramCombo::from_key(key.clone(), q(1))
        } else {
            let (v, h) = self.site(&d).ok_or(DiagramError::DetachedVertices)?;
            let step = stu_step(&d, v, h)?;
            let mut out = DiagramCombo::new();
            for (k, c) in step.added.iter() {
                let sub = self.resolve_key(k)?;
                out.add_combo(&sub, c);
            }
            out
        };
        self.memo.insert(key.clone(), out.clone());
        Ok(out)
    }

    pub fn resolve(&mut self, d: &JacobiDiagram) -> DiagramResult<DiagramCombo> {
        match canonicalize(d)? {
            CanonicalKey::SelfZero => Ok(DiagramCombo::new()),
            CanonicalKey::Keyed { key, sign } => Ok(self.resolve_key(&key)?.scaled(&q(sign as i64))),
        }
    }

    pub fn resolve_combo<R: Coeff>(&mut self, c: &DiagramCombo<R>) -> DiagramResult<DiagramCombo<R>> {
        let mut out = DiagramCombo::new();
        for (k, coeff) in c.iter() {
            out.add_combo(&self.resolve_key(k)?.lift::<R>(), coeff);
        }
        Ok(out)
    }
}

/// Resolves every internal vertex of a closed diagram, yielding chord diagrams.
pub fn stu_resolve(d: &JacobiDiagram) -> DiagramResult<DiagramCombo> {
    StuResolver::default().resolve(d)
}

/// IHX at the internal edge through half-edge `h`. With the edge read as
/// u = (h, p, q), w = (h', r, s), the diagram equals
/// −[(h, q, r), (h', p, s)] − [(h, r, p), (h', q, s)].
pub fn ihx_apply(d: &JacobiDiagram, h: HalfEdge) -> DiagramResult<RewriteStep> {
    let slots = d.slots();
    let partner = d.partners();
    let hp = *partner.get(&h).ok_or(DiagramError::MissingSlot(h))?;
    let (Some(Slot::Vertex(u, _)), Some(Slot::Vertex(w, _))) = (slots.get(&h).copied(), slots.get(&hp).copied()) else {
        return Err(DiagramError::NotInternalEdge(h));
    };
    if u == w {
        return Err(DiagramError::NotInternalEdge(h));
    }
    let [_, p, qh] = rotate_to(d.vertices[u], h);
    let [_, r, s] = rotate_to(d.vertices[w], hp);
    let mut added = DiagramCombo::new();
    for (tu, tw) in [([h, qh, r], [hp, p, s]), ([h, r, p], [hp, qh, s])] {
        let mut t = d.clone();
        t.vertices[u] = tu;
        t.vertices[w] = tw;
        added.add_diagram(&t, q(-1))?;
    }
    Ok(RewriteStep { kind: RewriteKind::Ihx, removed: DiagramCombo::from_diagram(d)?, added })
}

/// Replaces every Wilson loop by an ordinary cycle: attachment i becomes the vertex
/// (attachment, in_i, out_i) and out_i is joined to in_(i+1).
pub fn pi_adj(d: &JacobiDiagram) -> JacobiDiagram {
    let mut out = JacobiDiagram { vertices: d.vertices.clone(), legs: d.legs.clone(), edges: d.edges.clone(), circles: d.circles, ..Default::default() };
    let mut fresh = d.max_half_edge().map_or(0, |m| m + 1);
    for l in &d.loops {
        if l.is_empty() {
            out.circles += 1;
            continue;
        }
        let m = l.len() as u32;
        let base = fresh;
        fresh += 2 * m;
        for (i, &h) in l.iter().enumerate() {
            let i = i as u32;
            out.vertices.push([h, base + 2 * i, base + 2 * i + 1]);
            out.edges.push([base + 2 * i + 1, base + 2 * ((i + 1) % m)]);
        }
    }
    out
}

/// Linear extension of [`pi_adj`].
pub fn pi_adj_combo<R: Coeff>(c: &DiagramCombo<R>) -> DiagramResult<DiagramCombo<R>> {
    let mut out = DiagramCombo::new();
    for (k, coeff) in c.iter() {
        out.add_diagram(&pi_adj(&k.decode()?), coeff.clone())?;
    }
    Ok(out)
}

/// Removes one bubble (two vertices joined by two parallel edges). Returns the
/// diagram with the bubble replaced by a plain edge and the sign s such that, under
/// any weight system, the input equals s·2t times the output.
pub fn bubble_step(d: &JacobiDiagram) -> DiagramResult<(JacobiDiagram, i8)> {
    let slots = d.slots();
    let partner = d.partners();
    let vertex_of = |h: &HalfEdge| match slots.get(h) {
        Some(Slot::Vertex(v, _)) => Some(*v),
        _ => None,
    };
    for (u, tri) in d.vertices.iter().enumerate() {
        for &x in tri {
            let [x, a, b] = rotate_to(*tri, x);
            let (pa, pb) = (partner[&a], partner[&b]);
            let Some(w) = vertex_of(&pa) else { continue };
            if w == u || vertex_of(&pb) != Some(w) {
                continue;
            }
            let y = *d.vertices[w].iter().find(|&&h| h != pa && h != pb).expect("third half-edge");
            let [_, c1, c2] = rotate_to(d.vertices[w], y);
            let sign = if (partner[&c1], partner[&c2]) == (b, a) { 1 } else { -1 };
            let px = partner[&x];
            let py = partner[&y];
            let mut out = d.clone();
            let (hi, lo) = if u > w { (u, w) } else { (w, u) };
            out.vertices.remove(hi);
            out.vertices.remove(lo);
            for h in [x, a, b, y] {
                remove_edge_at(&mut out, h);
            }
            if px == y {
                out.circles += 1;
            } else {
                out.edges.push([px, py]);
            }
            return Ok((out, sign));
        }
    }
    Err(DiagramError::NoBubble)
}

/// Removes bubbles until none remain: input = sign·(2t)^power·output.
pub fn reduce_bubbles(d: &JacobiDiagram) -> (JacobiDiagram, i8, u32) {
    let mut cur = d.clone();
    let mut sign = 1i8;
    let mut power = 0u32;
    while let Ok((next, s)) = bubble_step(&cur) {
        cur = next;
        sign *= s;
        power += 1;
    }
    (cur, sign, power)
}

/// The bubble removal as a rewrite step on one diagram.
pub fn bubble_factor(d: &JacobiDiagram) -> DiagramResult<RewriteStep> {
    let (out, sign) = bubble_step(d)?;
    let mut added = DiagramCombo::new();
    added.add_diagram(&out, q(sign as i64))?;
    Ok(RewriteStep { kind: RewriteKind::BubbleFactor { power: 1 }, removed: DiagramCombo::from_diagram(d)?, added })
}

fn internal_edges(d: &JacobiDiagram) -> Vec<HalfEdge> {
    let slots = d.slots();
    d.edges
        .iter()
        .filter(|e| matches!((slots[&e[0]], slots[&e[1]]), (Slot::Vertex(u, _), Slot::Vertex(w, _)) if u != w))
        .map(|e| e[0])
        .collect()
}

/// The IHX relations among all diagrams reachable from the seeds by IHX moves.
#[derive(Debug)]
pub struct IhxSpan {
    index: HashMap<DiagramKey, usize>,
    echelon: SparseEchelon,
}

impl IhxSpan {
    pub fn from_seeds<'a>(seeds: impl IntoIterator<Item = &'a DiagramKey>) -> DiagramResult<Self> {
        let mut index: HashMap<DiagramKey, usize> = HashMap::new();
        let mut queue: VecDeque<DiagramKey> = VecDeque::new();
        for k in seeds {
            if !index.contains_key(k) {
                index.insert(k.clone(), index.len());
                queue.push_back(k.clone());
            }
        }
        let mut relations: Vec<DiagramCombo> = Vec::new();
        while let Some(k) = queue.pop_front() {
            let d = k.decode()?;
            for h in internal_edges(&d) {
                let step = ihx_apply(&d, h)?;
                for key in step.added.keys() {
                    if !index.contains_key(key) {
                        index.insert(key.clone(), index.len());
                        queue.push_back(key.clone());
                    }
                }
                relations.push(step.relation());
            }
        }
        let mut span = IhxSpan { index, echelon: SparseEchelon::new() };
        let vecs: Vec<SparseVec> = relations.iter().map(|r| span.vector(r).expect("closure covers relation terms")).collect();
        for v in &vecs {
            span.echelon.insert(v);
        }
        Ok(span)
    }

    fn vector(&self, c: &DiagramCombo) -> Option<SparseVec> {
        c.iter().map(|(k, v)| self.index.get(k).map(|&i| (i, v.clone()))).collect()
    }

    /// Number of distinct diagrams in the closure.
    pub fn diagram_count(&self) -> usize {
        self.index.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Whether `c` vanishes modulo IHX (and antisymmetry, built into the keys).
    pub fn is_zero(&self, c: &DiagramCombo) -> bool {
        match self.vector(c) {
            Some(v) => self.echelon.contains(&v),
            // a diagram outside the closure is independent of everything in it
            None => c.is_empty(),
        }
    }

    pub fn equal(&self, a: &DiagramCombo, b: &DiagramCombo) -> bool {
        self.is_zero(&(a - b))
    }
}

/// Checks `a == b` modulo IHX inside the closure generated by both sides.
pub fn equal_mod_ihx(a: &DiagramCombo, b: &DiagramCombo) -> DiagramResult<bool> {
    let keys: BTreeSet<DiagramKey> = a.keys().chain(b.keys()).cloned().collect();
    Ok(IhxSpan::from_seeds(keys.iter())?.equal(a, b))
}

/// Chord diagrams with `n` chords on one loop, up to rotation.
pub fn chord_diagrams(n: usize) -> DiagramResult<Vec<DiagramKey>> {
    fn matchings(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            cur.push((a, b));
            matchings(free, cur, out);
            cur.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    let mut all = Vec::new();
    matchings(&mut (0..2 * n).collect(), &mut Vec::new(), &mut all);
    let mut keys = BTreeSet::new();
    for m in all {
        if let Some(k) = canonicalize(&crate::diagram::build::chord_diagram(&m))?.key() {
            keys.insert(k.clone());
        }
    }
    Ok(keys.into_iter().collect())
}

/// 4T relations in degree `n`: for every one-loop diagram with a single tripod and
/// `n - 2` chords, the differences of its STU expansions at the three tripod legs.
pub fn four_t_relations(n: usize) -> DiagramResult<Vec<DiagramCombo>> {
    if n < 2 {
        return Ok(Vec::new());
    }
    // tripod legs on positions p0, p1, p2 of a loop with 2n - 1 attachments
    let m = 2 * n - 1;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let chords_left = n - 2;
    let positions: Vec<usize> = (0..m).collect();
    for p1 in 1..m {
        for p2 in p1 + 1..m {
            let rest: Vec<usize> = positions.iter().copied().filter(|&p| p != 0 && p != p1 && p != p2).collect();
            let mut ms = Vec::new();
            pair_up(&rest, &mut Vec::new(), &mut ms);
            for chords in ms {
                debug_assert_eq!(chords.len(), chords_left);
                let loop_ids: Vec<u32> = (0..m as u32).collect();
                let base = m as u32;
                let mut d = JacobiDiagram { loops: vec![loop_ids], ..Default::default() };
                d.vertices.push([base, base + 1, base + 2]);
                d.edges.push([0, base]);
                d.edges.push([p1 as u32, base + 1]);
                d.edges.push([p2 as u32, base + 2]);
                for (a, b) in chords {
                    d.edges.push([a as u32, b as u32]);
                }
                let Some(key) = canonicalize(&d)?.key().cloned() else { continue };
                if !seen.insert(key) {
                    continue;
                }
                let expansions: Vec<DiagramCombo> = (0..3).map(|i| stu_step(&d, 0, base + i).map(|s| s.added)).collect::<DiagramResult<_>>()?;
                out.push(&expansions[0] - &expansions[1]);
                out.push(&expansions[0] - &expansions[2]);
            }
        }
    }
    Ok(out)
}

fn pair_up(items: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if items.is_empty() {
        out.push(cur.clone());
        return;
    }
    let a = items[0];
    for i in 1..items.len() {
        let rest: Vec<usize> = items[1..].iter().enumerate().filter(|(j, _)| *j + 1 != i).map(|(_, &x)| x).collect();
        cur.push((a, items[i]));
        pair_up(&rest, cur, out);
        cur.pop();
    }
}

/// Chord diagrams of degree `n` modulo 4T, with reduction to a chosen basis.
#[derive(Debug)]
pub struct ChordSpace {
    pub degree: usize,
    index: HashMap<DiagramKey, usize>,
    relations: SparseEchelon,
    relation_count: usize,
}

impl ChordSpace {
    pub fn new(degree: usize) -> DiagramResult<Self> {
        let keys = chord_diagrams(degree)?;
        let index: HashMap<DiagramKey, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut relations = SparseEchelon::new();
        let four_t = four_t_relations(degree)?;
        for r in &four_t {
            let v: SparseVec = r.iter().map(|(k, c)| (index[k], c.clone())).collect();
            relations.insert(&v);
        }
        Ok(ChordSpace { degree, index, relations, relation_count: four_t.len() })
    }

    pub fn diagram_count(&self) -> usize {
        self.index.len()
    }

    /// Dimension of the quotient by 4T.
    pub fn dimension(&self) -> usize {
        self.index.len() - self.relations.rank()
    }

    pub fn vector(&self, c: &DiagramCombo) -> Option<SparseVec> {
        c.iter().map(|(k, v)| self.index.get(k).map(|&i| (i, v.clone()))).collect()
    }

    pub fn is_zero(&self, c: &DiagramCombo) -> bool {
        self.vector(c).is_some_and(|v| self.relations.contains(&v))
    }

    /// Coordinates of `target` in `basis` modulo 4T. `None` when the basis is
    /// dependent modulo 4T or the target is outside its span.
    pub fn express(&self, target: &DiagramCombo, basis: &[DiagramCombo]) -> Option<Vec<Q>> {
        let mut e = self.relations.clone();
        for b in basis {
            if !e.insert(&self.vector(b)?) {
                return None;
            }
        }
        let coords = e.express(&self.vector(target)?)?;
        Some((0..basis.len()).map(|i| coords.get(&(self.relation_count + i)).cloned().unwrap_or_else(|| q(0))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::*;

    #[test]
    fn theta_bubble_is_planar() {
        let (rest, sign, power) = reduce_bubbles(&theta());
        assert_eq!((rest.circles, sign, power), (1, 1, 1));
    }

    #[test]
    fn ihx_on_the_tetrahedron_is_consistent() {
        let t = tetrahedron();
        let h = internal_edges(&t)[0];
        let step = ihx_apply(&t, h).unwrap();
        assert_eq!(step.undo().undo(), step);
        assert!(equal_mod_ihx(&step.removed, &step.added).unwrap());
    }

    #[test]
    fn chord_space_dimensions() {
        assert_eq!(ChordSpace::new(2).unwrap().dimension(), 2);
        assert_eq!(ChordSpace::new(3).unwrap().dimension(), 3);
        assert_eq!(ChordSpace::new(4).unwrap().dimension(), 6);
    }

    #[test]
    fn tripod_resolves_to_two_chord_difference() {
        // loop (0,1,2), tripod (3,4,5)
        let d = JacobiDiagram { vertices: vec![[3, 4, 5]], loops: vec![vec![0, 1, 2]], edges: vec![[0, 3], [1, 4], [2, 5]], ..Default::default() };
        let c = stu_resolve(&d).unwrap();
        assert_eq!(c.len(), 2);
        let resolved_other = StuResolver::new(SiteOrder::LargestFirst).resolve(&d).unwrap();
        assert_eq!(c, resolved_other);
    }
}
