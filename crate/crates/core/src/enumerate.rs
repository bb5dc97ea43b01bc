//! All graphs on a few vertices, one per isomorphism class.

use std::collections::HashSet;

use crate::graph::Graph;
use crate::iso::canonical_code;

/// One representative of every isomorphism class on `n` vertices, built by
/// adding a vertex with every possible neighbourhood to the classes on `n - 1`.
pub fn graph_classes(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(0)];
    for m in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u64..1 << (m - 1) {
                let mut edges = g.edges();
                edges.extend((0..m - 1).filter(|&i| mask >> i & 1 == 1).map(|i| (i, m - 1)));
                let h = Graph::new(m, edges).expect("edges in range");
                if seen.insert(canonical_code(&h, None)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

pub fn connected_graph_classes(n: usize) -> Vec<Graph> {
    graph_classes(n).into_iter().filter(Graph::is_connected).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_class_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| graph_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> = (1..=6).map(|n| connected_graph_classes(n).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }
}
