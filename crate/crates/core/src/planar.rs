//! Builds diagrams from plane drawings: the cyclic order at each vertex is the
//! counterclockwise order of the directions in which its edges leave it.

use crate::diagram::{HalfEdge, JacobiDiagram};
use crate::error::{DiagramError, DiagramResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Node(usize);

#[derive(Debug, Default)]
pub struct PlanarBuilder {
    pos: Vec<(f64, f64)>,
    is_leg: Vec<bool>,
    ends: Vec<Vec<(f64, HalfEdge)>>,
    edges: Vec<[HalfEdge; 2]>,
}

fn angle_deg(from: (f64, f64), to: (f64, f64)) -> f64 {
    (to.1 - from.1).atan2(to.0 - from.0).to_degrees()
}

impl PlanarBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn node(&mut self, x: f64, y: f64, leg: bool) -> Node {
        self.pos.push((x, y));
        self.is_leg.push(leg);
        self.ends.push(Vec::new());
        Node(self.pos.len() - 1)
    }

    pub fn vertex(&mut self, x: f64, y: f64) -> Node {
        self.node(x, y, false)
    }

    /// Free legs are numbered in creation order.
    pub fn leg(&mut self, x: f64, y: f64) -> Node {
        self.node(x, y, true)
    }

    /// An edge leaving `a` in direction `angle_a` and `b` in direction `angle_b` (degrees).
    pub fn curve(&mut self, a: Node, angle_a: f64, b: Node, angle_b: f64) -> &mut Self {
        let h = 2 * self.edges.len() as HalfEdge;
        self.ends[a.0].push((angle_a.rem_euclid(360.0), h));
        self.ends[b.0].push((angle_b.rem_euclid(360.0), h + 1));
        self.edges.push([h, h + 1]);
        self
    }

    pub fn edge(&mut self, a: Node, b: Node) -> &mut Self {
        let (pa, pb) = (self.pos[a.0], self.pos[b.0]);
        self.curve(a, angle_deg(pa, pb), b, angle_deg(pb, pa))
    }

    /// A path of straight edges through the given nodes.
    pub fn path(&mut self, nodes: &[Node]) -> &mut Self {
        for w in nodes.windows(2) {
            self.edge(w[0], w[1]);
        }
        self
    }

    pub fn build(&self) -> DiagramResult<JacobiDiagram> {
        let mut d = JacobiDiagram { edges: self.edges.clone(), ..Default::default() };
        for (i, ends) in self.ends.iter().enumerate() {
            let mut ends = ends.clone();
            ends.sort_by(|a, b| a.0.total_cmp(&b.0));
            if self.is_leg[i] {
                match ends.as_slice() {
                    [(_, h)] => d.legs.push(*h),
                    _ => return Err(DiagramError::BadMatching(i as u32)),
                }
            } else {
                match ends.as_slice() {
                    [(_, a), (_, b), (_, c)] => d.vertices.push([*a, *b, *c]),
                    _ => return Err(DiagramError::BadMatching(i as u32)),
                }
            }
        }
        d.validate()?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combo::DiagramCombo;
    use crate::diagram::build::theta;
    use crate::rational::Q;

    #[test]
    fn planar_theta_matches_reference() {
        let mut b = PlanarBuilder::new();
        let l = b.vertex(-1.0, 0.0);
        let r = b.vertex(1.0, 0.0);
        b.edge(l, r).curve(l, 60.0, r, 120.0).curve(l, -60.0, r, -120.0);
        let d = b.build().unwrap();
        assert_eq!(DiagramCombo::<Q>::from_diagram(&d).unwrap(), DiagramCombo::from_diagram(&theta()).unwrap());
    }
}
