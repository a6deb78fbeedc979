//! Fixtures shared by the engine benchmarks.

use vogelkit_core::corpus::three_graphs;
use vogelkit_core::JacobiDiagram;

/// A corpus 3-graph by name.
pub fn corpus_graph(name: &str) -> JacobiDiagram {
    three_graphs().into_iter().find(|(n, _)| *n == name).map(|(_, d)| d).unwrap_or_else(|| panic!("no corpus graph `{name}`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_resolve() {
        assert_eq!(corpus_graph("petersen").vertices.len(), 10);
    }
}
