//! Canonical labeling of Jacobi diagrams with antisymmetry sign bookkeeping.
//!
//! Half-edges are colored by slot type (vertex, loop, leg index) and refined by the
//! colors of their partner, their vertex siblings and their loop neighbours. A
//! backtracking search individualizes half-edges of the first non-singleton cell and
//! keeps the lexicographically least encoding over all leaves. Leaves that encode
//! identically differ by an automorphism; those automorphisms prune the search and
//! detect diagrams that equal minus themselves.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::diagram::{HalfEdge, JacobiDiagram};
use crate::error::{DiagramError, DiagramResult};

/// Serialization of a canonically labeled diagram.
///
/// Layout (all `u32`): vertex count, ascending label triples; loop count, each loop
/// as length then labels starting from its least label; leg count, leg labels;
/// edge count, label pairs; circle count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramKey(Arc<[u32]>);

impl fmt::Debug for DiagramKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagramKey({})", self.to_hex())
    }
}

impl DiagramKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Little-endian bytes of the integer layout.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_le_bytes()).collect()
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Rebuilds the canonical representative diagram.
    pub fn decode(&self) -> DiagramResult<JacobiDiagram> {
        let s = &self.0;
        let mut pos = 0usize;
        let mut next = || -> DiagramResult<u32> {
            let v = *s.get(pos).ok_or(DiagramError::BadKey)?;
            pos += 1;
            Ok(v)
        };
        let mut d = JacobiDiagram::default();
        let nv = next()?;
        for _ in 0..nv {
            d.vertices.push([next()?, next()?, next()?]);
        }
        let nl = next()?;
        for _ in 0..nl {
            let len = next()?;
            let mut l = Vec::with_capacity(len as usize);
            for _ in 0..len {
                l.push(next()?);
            }
            d.loops.push(l);
        }
        let ng = next()?;
        for _ in 0..ng {
            d.legs.push(next()?);
        }
        let ne = next()?;
        for _ in 0..ne {
            d.edges.push([next()?, next()?]);
        }
        d.circles = next()?;
        Ok(d)
    }

    pub fn vertex_count(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }
}

/// Result of canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalKey {
    /// The diagram equals minus itself.
    SelfZero,
    /// `input = sign * decode(key)`.
    Keyed { key: DiagramKey, sign: i8 },
}

impl CanonicalKey {
    pub fn key(&self) -> Option<&DiagramKey> {
        match self {
            CanonicalKey::SelfZero => None,
            CanonicalKey::Keyed { key, .. } => Some(key),
        }
    }

    pub fn sign(&self) -> i8 {
        match self {
            CanonicalKey::SelfZero => 0,
            CanonicalKey::Keyed { sign, .. } => *sign,
        }
    }
}

#[derive(Clone, Copy)]
enum Place {
    Vertex { v: usize, sib: [usize; 2] },
    Loop { succ: usize, pred: usize },
    Leg,
}

struct Graph {
    n: usize,
    partner: Vec<usize>,
    place: Vec<Place>,
    init: Vec<u32>,
    vertices: Vec<[usize; 3]>,
    loops: Vec<Vec<usize>>,
    legs: Vec<usize>,
    circles: u32,
}

impl Graph {
    fn new(d: &JacobiDiagram) -> DiagramResult<Self> {
        d.validate()?;
        let mut ids: Vec<HalfEdge> = Vec::with_capacity(d.half_edge_count());
        ids.extend(d.vertices.iter().flatten());
        ids.extend(d.loops.iter().flatten());
        ids.extend(&d.legs);
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        let idx = |h: HalfEdge| sorted.binary_search(&h).expect("validated");
        let n = ids.len();
        let mut partner = vec![0; n];
        for &[a, b] in &d.edges {
            partner[idx(a)] = idx(b);
            partner[idx(b)] = idx(a);
        }
        let mut place = vec![Place::Leg; n];
        let mut init = vec![0u32; n];
        let vertices: Vec<[usize; 3]> = d.vertices.iter().map(|t| t.map(idx)).collect();
        for (v, t) in vertices.iter().enumerate() {
            for k in 0..3 {
                place[t[k]] = Place::Vertex { v, sib: [t[(k + 1) % 3], t[(k + 2) % 3]] };
                init[t[k]] = 0;
            }
        }
        let loops: Vec<Vec<usize>> = d.loops.iter().map(|l| l.iter().map(|&h| idx(h)).collect()).collect();
        for l in &loops {
            let m = l.len();
            for k in 0..m {
                place[l[k]] = Place::Loop { succ: l[(k + 1) % m], pred: l[(k + m - 1) % m] };
                init[l[k]] = 1;
            }
        }
        let legs: Vec<usize> = d.legs.iter().map(|&h| idx(h)).collect();
        for (i, &h) in legs.iter().enumerate() {
            init[h] = 2 + i as u32;
        }
        Ok(Graph { n, partner, place, init, vertices, loops, legs, circles: d.circles })
    }

    fn signature(&self, h: usize, c: &[u32]) -> [u32; 4] {
        let (x, y) = match self.place[h] {
            Place::Vertex { sib, .. } => {
                let (a, b) = (c[sib[0]], c[sib[1]]);
                (a.min(b), a.max(b))
            }
            Place::Loop { succ, pred } => (c[succ], c[pred]),
            Place::Leg => (u32::MAX, u32::MAX),
        };
        [c[h], c[self.partner[h]], x, y]
    }

    /// Refines colors to an equitable ordered partition; returns the cell count.
    fn refine(&self, c: &mut [u32]) -> usize {
        let mut cells = count_distinct(c);
        loop {
            let sigs: Vec<[u32; 4]> = (0..self.n).map(|h| self.signature(h, c)).collect();
            let mut uniq = sigs.clone();
            uniq.sort_unstable();
            uniq.dedup();
            for h in 0..self.n {
                c[h] = uniq.binary_search(&sigs[h]).expect("present") as u32;
            }
            if uniq.len() == cells {
                return cells;
            }
            cells = uniq.len();
        }
    }

    fn encode(&self, label: &[u32]) -> Vec<u32> {
        let mut out = Vec::with_capacity(2 * self.n + 8);
        let mut verts: Vec<[u32; 3]> = self
            .vertices
            .iter()
            .map(|t| {
                let mut l = t.map(|h| label[h]);
                l.sort_unstable();
                l
            })
            .collect();
        verts.sort_unstable();
        out.push(verts.len() as u32);
        out.extend(verts.iter().flatten());
        let mut loops: Vec<Vec<u32>> = self
            .loops
            .iter()
            .map(|l| {
                let seq: Vec<u32> = l.iter().map(|&h| label[h]).collect();
                let start = (0..seq.len()).min_by_key(|&i| seq[i]).unwrap_or(0);
                let mut r = seq[start..].to_vec();
                r.extend_from_slice(&seq[..start]);
                r
            })
            .collect();
        loops.sort();
        out.push(loops.len() as u32);
        for l in &loops {
            out.push(l.len() as u32);
            out.extend(l);
        }
        out.push(self.legs.len() as u32);
        out.extend(self.legs.iter().map(|&h| label[h]));
        let mut edges: Vec<[u32; 2]> = (0..self.n)
            .filter(|&h| h < self.partner[h])
            .map(|h| {
                let (a, b) = (label[h], label[self.partner[h]]);
                [a.min(b), a.max(b)]
            })
            .collect();
        edges.sort_unstable();
        out.push(edges.len() as u32);
        out.extend(edges.iter().flatten());
        out.push(self.circles);
        out
    }

    /// Parity (+1/-1) of the vertex orientations carried by a labeling.
    fn labeling_sign(&self, label: &[u32]) -> i8 {
        let mut s = 1i8;
        for t in &self.vertices {
            s *= perm3_sign([label[t[0]], label[t[1]], label[t[2]]]);
        }
        s
    }

    /// Orientation parity of an automorphism given as a half-edge permutation.
    fn automorphism_sign(&self, perm: &[usize]) -> i8 {
        let mut s = 1i8;
        for t in &self.vertices {
            let img = t.map(|h| perm[h]);
            let Place::Vertex { v, .. } = self.place[img[0]] else { unreachable!("automorphism maps vertices to vertices") };
            let target = self.vertices[v];
            let pos = img.map(|h| target.iter().position(|&x| x == h).expect("same vertex") as u32);
            s *= perm3_sign(pos);
        }
        s
    }
}

fn count_distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Sign of the permutation sorting three distinct values.
fn perm3_sign(x: [u32; 3]) -> i8 {
    let inv = (x[0] > x[1]) as u8 + (x[0] > x[2]) as u8 + (x[1] > x[2]) as u8;
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

struct Search<'g> {
    g: &'g Graph,
    best: Option<(Vec<u32>, Vec<u32>)>,
    automorphisms: Vec<Vec<usize>>,
    odd: bool,
}

impl<'g> Search<'g> {
    fn run(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) {
        if self.odd {
            return;
        }
        let mut c = colors;
        let cells = self.g.refine(&mut c);
        if cells == self.g.n {
            self.leaf(c);
            return;
        }
        let target = first_nonsingleton(&c);
        let members: Vec<usize> = (0..self.g.n).filter(|&h| c[h] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &h in &members {
            if !explored.is_empty() {
                let orbit = self.orbit_roots(prefix);
                let r = orbit[h];
                if explored.iter().any(|&e| orbit[e] == r) {
                    continue;
                }
            }
            explored.push(h);
            let child: Vec<u32> = c.iter().enumerate().map(|(x, &col)| 2 * col + u32::from(col == target && x != h)).collect();
            prefix.push(h);
            self.run(child, prefix);
            prefix.pop();
            if self.odd {
                return;
            }
        }
    }

    /// Union-find roots of the orbits of automorphisms fixing `prefix` pointwise.
    fn orbit_roots(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for a in &self.automorphisms {
            if prefix.iter().any(|&p| a[p] != p) {
                continue;
            }
            for x in 0..n {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, a[x]));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }

    fn leaf(&mut self, label: Vec<u32>) {
        let code = self.g.encode(&label);
        match &self.best {
            None => self.best = Some((code, label)),
            Some((best_code, best_label)) => match code.cmp(best_code) {
                Ordering::Less => self.best = Some((code, label)),
                Ordering::Equal => {
                    let mut inv = vec![0usize; self.g.n];
                    for (h, &l) in best_label.iter().enumerate() {
                        inv[l as usize] = h;
                    }
                    let perm: Vec<usize> = label.iter().map(|&l| inv[l as usize]).collect();
                    if self.g.automorphism_sign(&perm) < 0 {
                        self.odd = true;
                    }
                    self.automorphisms.push(perm);
                }
                Ordering::Greater => {}
            },
        }
    }
}

fn first_nonsingleton(c: &[u32]) -> u32 {
    let mut counts = vec![0usize; c.len()];
    for &x in c {
        counts[x as usize] += 1;
    }
    counts.iter().position(|&k| k > 1).expect("partition not discrete") as u32
}

/// Computes the canonical key and orientation sign of a diagram.
pub fn canonicalize(d: &JacobiDiagram) -> DiagramResult<CanonicalKey> {
    let g = Graph::new(d)?;
    let mut s = Search { g: &g, best: None, automorphisms: Vec::new(), odd: false };
    s.run(g.init.clone(), &mut Vec::new());
    if s.odd {
        return Ok(CanonicalKey::SelfZero);
    }
    let (code, label) = match s.best {
        Some(b) => b,
        None => (g.encode(&[]), Vec::new()),
    };
    let sign = g.labeling_sign(&label);
    Ok(CanonicalKey::Keyed { key: DiagramKey(code.into()), sign })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::*;

    fn keyed(d: &JacobiDiagram) -> (DiagramKey, i8) {
        match canonicalize(d).unwrap() {
            CanonicalKey::Keyed { key, sign } => (key, sign),
            CanonicalKey::SelfZero => panic!("unexpected self-zero"),
        }
    }

    #[test]
    fn theta_rotation_and_transposition() {
        let t = theta();
        let (k0, s0) = keyed(&t);
        let mut rot = t.clone();
        rot.vertices[0] = [1, 2, 0];
        let (k1, s1) = keyed(&rot);
        assert_eq!((k0.clone(), s0), (k1, s1));
        let mut swap = t.clone();
        swap.vertices[0] = [1, 0, 2];
        let (k2, s2) = keyed(&swap);
        assert_eq!(k0, k2);
        assert_eq!(s2, -s0);
    }

    #[test]
    fn tadpole_is_self_zero() {
        // a vertex with a self-loop whose third half-edge is a leg
        let d = JacobiDiagram { vertices: vec![[0, 1, 2]], legs: vec![3], edges: vec![[0, 1], [2, 3]], ..Default::default() };
        assert_eq!(canonicalize(&d).unwrap(), CanonicalKey::SelfZero);
    }

    #[test]
    fn decode_is_idempotent() {
        for d in [theta(), tetrahedron(), wheel(4).unwrap(), chord_diagram(&[(0, 2), (1, 3)]), empty_loop(), circle()] {
            let (k, _) = keyed(&d);
            let back = k.decode().unwrap();
            let (k2, s2) = keyed(&back);
            assert_eq!(k, k2);
            assert_eq!(s2, 1);
        }
    }

    #[test]
    fn reversing_a_loop_flips_a_tripod() {
        let d = JacobiDiagram { vertices: vec![[0, 1, 2]], loops: vec![vec![3, 4, 5]], edges: vec![[0, 3], [1, 4], [2, 5]], ..Default::default() };
        let mut r = d.clone();
        r.loops[0].reverse();
        let (k, s) = keyed(&d);
        let (kr, sr) = keyed(&r);
        assert_eq!(k, kr);
        assert_eq!(s, -sr);
    }
}
