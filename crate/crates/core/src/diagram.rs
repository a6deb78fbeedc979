//! The Jacobi diagram data model.
//!
//! A diagram is a set of half-edges. Each half-edge sits in exactly one slot (a
//! position at an internal trivalent vertex, a position on a Wilson loop, or a free
//! leg) and is matched to exactly one other half-edge by `edges`. Vertex triples are
//! cyclically ordered counterclockwise; loop sequences follow the loop orientation.
//! `circles` counts vertexless closed components, which arise when legs are glued
//! into closed strands.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{DiagramError, DiagramResult};

pub type HalfEdge = u32;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiDiagram {
    #[serde(default)]
    pub vertices: Vec<[HalfEdge; 3]>,
    #[serde(default)]
    pub loops: Vec<Vec<HalfEdge>>,
    #[serde(default)]
    pub legs: Vec<HalfEdge>,
    #[serde(default)]
    pub edges: Vec<[HalfEdge; 2]>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub circles: u32,
}

fn is_zero(x: &u32) -> bool {
    *x == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Closed,
    Open,
    ThreeGraph,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Closed => "closed",
            Kind::Open => "open",
            Kind::ThreeGraph => "three-graph",
        }
    }
}

/// Where a half-edge sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Vertex(usize, usize),
    Loop(usize, usize),
    Leg(usize),
}

impl JacobiDiagram {
    pub fn from_json(s: &str) -> DiagramResult<Self> {
        let d: JacobiDiagram = serde_json::from_str(s).map_err(|e| DiagramError::Json(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn kind(&self) -> Kind {
        match (self.loops.is_empty(), self.legs.is_empty()) {
            (false, _) => Kind::Closed,
            (true, false) => Kind::Open,
            (true, true) => Kind::ThreeGraph,
        }
    }

    pub fn half_edge_count(&self) -> usize {
        3 * self.vertices.len() + self.loops.iter().map(Vec::len).sum::<usize>() + self.legs.len()
    }

    /// Number of internal vertices plus loop attachments, halved.
    pub fn degree(&self) -> usize {
        (self.vertices.len() + self.loops.iter().map(Vec::len).sum::<usize>() + self.legs.len()) / 2
    }

    pub fn max_half_edge(&self) -> Option<HalfEdge> {
        self.slot_iter().map(|(h, _)| h).max()
    }

    fn slot_iter(&self) -> impl Iterator<Item = (HalfEdge, Slot)> + '_ {
        let v = self.vertices.iter().enumerate().flat_map(|(i, t)| t.iter().enumerate().map(move |(j, &h)| (h, Slot::Vertex(i, j))));
        let l = self.loops.iter().enumerate().flat_map(|(i, s)| s.iter().enumerate().map(move |(j, &h)| (h, Slot::Loop(i, j))));
        let g = self.legs.iter().enumerate().map(|(i, &h)| (h, Slot::Leg(i)));
        v.chain(l).chain(g)
    }

    pub fn slots(&self) -> HashMap<HalfEdge, Slot> {
        self.slot_iter().collect()
    }

    pub fn partners(&self) -> HashMap<HalfEdge, HalfEdge> {
        let mut m = HashMap::with_capacity(2 * self.edges.len());
        for &[a, b] in &self.edges {
            m.insert(a, b);
            m.insert(b, a);
        }
        m
    }

    pub fn validate(&self) -> DiagramResult<()> {
        if !self.loops.is_empty() && !self.legs.is_empty() {
            return Err(DiagramError::MixedKind);
        }
        let mut slots = HashMap::new();
        for (h, s) in self.slot_iter() {
            if slots.insert(h, s).is_some() {
                return Err(DiagramError::DuplicateSlot(h));
            }
        }
        let mut seen = HashMap::new();
        for &[a, b] in &self.edges {
            for h in [a, b] {
                if !slots.contains_key(&h) {
                    return Err(DiagramError::MissingSlot(h));
                }
                if seen.insert(h, ()).is_some() {
                    return Err(DiagramError::BadMatching(h));
                }
            }
            if a == b {
                return Err(DiagramError::BadMatching(a));
            }
        }
        if let Some(&h) = slots.keys().find(|h| !seen.contains_key(h)) {
            return Err(DiagramError::BadMatching(h));
        }
        Ok(())
    }

    /// Shifts every half-edge id by `offset`.
    pub fn shifted(&self, offset: HalfEdge) -> Self {
        JacobiDiagram {
            vertices: self.vertices.iter().map(|t| t.map(|h| h + offset)).collect(),
            loops: self.loops.iter().map(|s| s.iter().map(|h| h + offset).collect()).collect(),
            legs: self.legs.iter().map(|h| h + offset).collect(),
            edges: self.edges.iter().map(|e| e.map(|h| h + offset)).collect(),
            circles: self.circles,
        }
    }

    /// Renumbers half-edges densely from zero, preserving all structure.
    pub fn compacted(&self) -> Self {
        let mut ids: Vec<HalfEdge> = self.slot_iter().map(|(h, _)| h).collect();
        ids.sort_unstable();
        let map: HashMap<HalfEdge, HalfEdge> = ids.iter().enumerate().map(|(i, &h)| (h, i as HalfEdge)).collect();
        self.relabeled(|h| map[&h])
    }

    pub fn relabeled(&self, f: impl Fn(HalfEdge) -> HalfEdge) -> Self {
        JacobiDiagram {
            vertices: self.vertices.iter().map(|t| t.map(&f)).collect(),
            loops: self.loops.iter().map(|s| s.iter().map(|&h| f(h)).collect()).collect(),
            legs: self.legs.iter().map(|&h| f(h)).collect(),
            edges: self.edges.iter().map(|e| e.map(&f)).collect(),
            circles: self.circles,
        }
    }

    /// Joins pairs of free legs (given by leg index) into strands. Chains of joined legs
    /// close up into edges, or into vertexless circles when they meet themselves.
    /// Remaining legs keep their relative order.
    pub fn join_legs(&self, pairs: &[(usize, usize)]) -> DiagramResult<Self> {
        let mut link: HashMap<HalfEdge, HalfEdge> = HashMap::new();
        let mut used = vec![false; self.legs.len()];
        for &(i, j) in pairs {
            for k in [i, j] {
                if k >= self.legs.len() {
                    return Err(DiagramError::LegOutOfRange(k));
                }
                if used[k] {
                    return Err(DiagramError::LegPairedTwice(k));
                }
                used[k] = true;
            }
            if i == j {
                return Err(DiagramError::LegPairedTwice(i));
            }
            let (a, b) = (self.legs[i], self.legs[j]);
            link.insert(a, b);
            link.insert(b, a);
        }
        let partner = self.partners();
        let mut edges = Vec::new();
        let mut visited: HashMap<HalfEdge, ()> = HashMap::new();
        for &[a, b] in &self.edges {
            if link.contains_key(&a) || visited.contains_key(&a) {
                continue;
            }
            if link.contains_key(&b) {
                continue;
            }
            edges.push([a, b]);
        }
        // Walk chains starting from unjoined half-edges whose partner is a joined leg.
        for &[a, b] in &self.edges {
            for (start, next) in [(a, b), (b, a)] {
                if link.contains_key(&start) || !link.contains_key(&next) || visited.contains_key(&start) {
                    continue;
                }
                let mut cur = next;
                let end = loop {
                    visited.insert(cur, ());
                    let across = link[&cur];
                    visited.insert(across, ());
                    let p = partner[&across];
                    if link.contains_key(&p) {
                        cur = p;
                    } else {
                        break p;
                    }
                };
                visited.insert(start, ());
                visited.insert(end, ());
                edges.push([start, end]);
            }
        }
        let mut circles = self.circles;
        for &h in link.keys() {
            if visited.contains_key(&h) {
                continue;
            }
            let mut cur = h;
            loop {
                visited.insert(cur, ());
                let across = link[&cur];
                visited.insert(across, ());
                cur = partner[&across];
                if cur == h {
                    break;
                }
            }
            circles += 1;
        }
        edges.sort_unstable();
        let legs = self.legs.iter().enumerate().filter(|(i, _)| !used[*i]).map(|(_, &h)| h).collect();
        Ok(JacobiDiagram { vertices: self.vertices.clone(), loops: self.loops.clone(), legs, edges, circles })
    }
}

/// Places `b` beside `a` with disjoint half-edge ids; legs of `a` come first.
pub fn disjoint_union(a: &JacobiDiagram, b: &JacobiDiagram) -> JacobiDiagram {
    let offset = a.max_half_edge().map_or(0, |m| m + 1);
    let b = b.shifted(offset);
    let mut out = a.clone();
    out.vertices.extend(b.vertices);
    out.loops.extend(b.loops);
    out.legs.extend(b.legs);
    out.edges.extend(b.edges);
    out.circles += b.circles;
    out
}

/// Glues leg `i` of `a` to leg `j` of `b` for every pair; remaining legs are
/// renumbered in order, those of `a` first.
pub fn glue(a: &JacobiDiagram, b: &JacobiDiagram, pairing: &[(usize, usize)]) -> DiagramResult<JacobiDiagram> {
    for &(i, j) in pairing {
        if i >= a.legs.len() {
            return Err(DiagramError::LegOutOfRange(i));
        }
        if j >= b.legs.len() {
            return Err(DiagramError::LegOutOfRange(j));
        }
    }
    let u = disjoint_union(a, b);
    let shifted: Vec<(usize, usize)> = pairing.iter().map(|&(i, j)| (i, a.legs.len() + j)).collect();
    u.join_legs(&shifted)
}

/// Hand-built diagrams used throughout the engine.
pub mod build {
    use super::*;

    /// The vertexless circle.
    pub fn circle() -> JacobiDiagram {
        JacobiDiagram { circles: 1, ..Default::default() }
    }

    /// Two vertices joined by three edges, drawn planar (opposite cyclic orders).
    pub fn theta() -> JacobiDiagram {
        JacobiDiagram { vertices: vec![[0, 1, 2], [3, 5, 4]], edges: vec![[0, 3], [1, 4], [2, 5]], ..Default::default() }
    }

    /// The complete graph on four vertices, drawn as a planar tetrahedron.
    pub fn tetrahedron() -> JacobiDiagram {
        // outer triangle 0,1,2 and centre 3
        JacobiDiagram {
            vertices: vec![[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]],
            edges: vec![[0, 5], [4, 6], [7, 2], [1, 9], [3, 10], [8, 11]],
            ..Default::default()
        }
    }

    /// The wheel with `n` spokes: a cycle of `n` vertices, each carrying one leg.
    /// Vertex `i` stores (leg, next, previous).
    pub fn wheel(n: usize) -> DiagramResult<JacobiDiagram> {
        if n == 0 || n % 2 == 1 {
            return Err(DiagramError::OddWheel(n));
        }
        let n32 = n as u32;
        let mut d = JacobiDiagram::default();
        for i in 0..n32 {
            let (spoke, next, prev, leg) = (4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3);
            d.vertices.push([spoke, next, prev]);
            d.legs.push(leg);
            d.edges.push([spoke, leg]);
            let j = (i + 1) % n32;
            d.edges.push([next, 4 * j + 2]);
        }
        Ok(d)
    }

    /// A chord diagram on one Wilson loop; `chords` pairs positions on the loop.
    pub fn chord_diagram(chords: &[(usize, usize)]) -> JacobiDiagram {
        let n = 2 * chords.len();
        let mut d = JacobiDiagram { loops: vec![(0..n as u32).collect()], ..Default::default() };
        for &(a, b) in chords {
            d.edges.push([a as u32, b as u32]);
        }
        d
    }

    /// A closed diagram with an empty Wilson loop.
    pub fn empty_loop() -> JacobiDiagram {
        JacobiDiagram { loops: vec![vec![]], ..Default::default() }
    }

    /// Two-strand identity: legs (in1, in2, out1, out2) with in_k joined to out_k.
    pub fn strands(perm: &[usize]) -> JacobiDiagram {
        let k = perm.len() as u32;
        let mut d = JacobiDiagram { legs: (0..2 * k).collect(), ..Default::default() };
        for (i, &p) in perm.iter().enumerate() {
            d.edges.push([i as u32, k + p as u32]);
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    #[test]
    fn json_round_trip() {
        let t = theta();
        let s = t.to_json();
        assert_eq!(s, r#"{"vertices":[[0,1,2],[3,5,4]],"loops":[],"legs":[],"edges":[[0,3],[1,4],[2,5]]}"#);
        assert_eq!(JacobiDiagram::from_json(&s).unwrap(), t);
        assert_eq!(t.kind(), Kind::ThreeGraph);
    }

    #[test]
    fn validation_catches_bad_matchings() {
        let bad = JacobiDiagram { vertices: vec![[0, 1, 2]], edges: vec![[0, 1]], ..Default::default() };
        assert_eq!(bad.validate(), Err(DiagramError::BadMatching(2)));
        let dup = JacobiDiagram { vertices: vec![[0, 1, 1]], edges: vec![[0, 1]], ..Default::default() };
        assert_eq!(dup.validate(), Err(DiagramError::DuplicateSlot(1)));
        let mixed = JacobiDiagram { loops: vec![vec![0]], legs: vec![1], edges: vec![[0, 1]], ..Default::default() };
        assert_eq!(mixed.validate(), Err(DiagramError::MixedKind));
    }

    #[test]
    fn joining_legs_makes_circles_and_edges() {
        let id = strands(&[0, 1]);
        let closed = id.join_legs(&[(0, 2), (1, 3)]).unwrap();
        assert_eq!(closed.circles, 2);
        assert!(closed.edges.is_empty() && closed.legs.is_empty());
        let w = wheel(2).unwrap();
        let g = w.join_legs(&[(0, 1)]).unwrap();
        g.validate().unwrap();
        assert_eq!(g.kind(), Kind::ThreeGraph);
        assert_eq!(g.edges.len(), 3);
        assert!(glue(&w, &w, &[(0, 0), (0, 1)]).is_err());
    }
}
