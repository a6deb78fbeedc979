//! A fixed corpus of named 3-graphs used for cross-checks between evaluators.

use crate::diagram::JacobiDiagram;

/// Builds a 3-graph from the edge list of a cubic multigraph. Vertex slots are
/// filled in edge order, which fixes the cyclic orientation at every vertex.
pub fn from_cubic_edges(vertices: usize, edges: &[(usize, usize)]) -> JacobiDiagram {
    let mut slots: Vec<Vec<u32>> = vec![Vec::new(); vertices];
    let mut d = JacobiDiagram::default();
    let mut next = 0u32;
    for &(u, v) in edges {
        slots[u].push(next);
        slots[v].push(next + 1);
        d.edges.push([next, next + 1]);
        next += 2;
    }
    for (i, s) in slots.into_iter().enumerate() {
        assert_eq!(s.len(), 3, "vertex {i} is not trivalent");
        d.vertices.push([s[0], s[1], s[2]]);
    }
    d
}

fn cycle(n: usize, offset: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (offset + i, offset + (i + 1) % n)).collect()
}

fn prism(n: usize) -> Vec<(usize, usize)> {
    let mut e = cycle(n, 0);
    e.extend(cycle(n, n));
    e.extend((0..n).map(|i| (i, n + i)));
    e
}

fn mobius_ladder(n: usize) -> Vec<(usize, usize)> {
    let mut e = cycle(2 * n, 0);
    e.extend((0..n).map(|i| (i, i + n)));
    e
}

/// Named 3-graphs with at most 12 vertices.
pub fn three_graphs() -> Vec<(&'static str, JacobiDiagram)> {
    let k4 = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let k33 = vec![(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)];
    let petersen = {
        let mut e = cycle(5, 0);
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        e.extend((0..5).map(|i| (i, i + 5)));
        e
    };
    let truncated_tetrahedron = {
        // triangles {3i, 3i+1, 3i+2}, joined along the edges of K4
        let mut e = Vec::new();
        for t in 0..4 {
            e.extend(cycle(3, 3 * t));
        }
        e.extend([(0, 3), (1, 6), (2, 9), (4, 7), (5, 10), (8, 11)]);
        e
    };
    let franklin = {
        let mut e = cycle(12, 0);
        e.extend([(0, 7), (1, 6), (2, 9), (3, 8), (4, 11), (5, 10)]);
        e
    };
    vec![
        ("theta", from_cubic_edges(2, &[(0, 1), (0, 1), (0, 1)])),
        ("dumbbell", from_cubic_edges(2, &[(0, 0), (0, 1), (1, 1)])),
        ("k4", from_cubic_edges(4, &k4)),
        ("double_theta", from_cubic_edges(4, &[(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (3, 0)])),
        ("k33", from_cubic_edges(6, &k33)),
        ("prism3", from_cubic_edges(6, &prism(3))),
        ("cube", from_cubic_edges(8, &prism(4))),
        ("wagner", from_cubic_edges(8, &mobius_ladder(4))),
        ("petersen", from_cubic_edges(10, &petersen)),
        ("prism5", from_cubic_edges(10, &prism(5))),
        ("prism6", from_cubic_edges(12, &prism(6))),
        ("mobius12", from_cubic_edges(12, &mobius_ladder(6))),
        ("truncated_tetrahedron", from_cubic_edges(12, &truncated_tetrahedron)),
        ("franklin", from_cubic_edges(12, &franklin)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid() {
        for (name, d) in three_graphs() {
            d.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(d.vertices.len() <= 12);
        }
    }
}
