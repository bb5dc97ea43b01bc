//! Colour refinement (1-dimensional Weisfeiler-Leman) to an equitable partition.
//!
//! Colours are always dense ranks `0..k`. New colours are ranked by
//! `(old colour, sorted neighbour colours)`, so the result is invariant under
//! relabelling and cells keep their relative order.

use crate::graph::Graph;

/// Replace arbitrary keys by their dense rank.
pub(crate) fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect()
}

pub(crate) fn class_count(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Refine `colors` in place until the partition is equitable.
pub fn refine(g: &Graph, colors: &mut Vec<u32>) {
    *colors = rank(colors);
    let mut classes = class_count(colors);
    loop {
        let keys: Vec<(u32, Vec<u32>)> = (0..g.n())
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank(&keys);
        let next_classes = class_count(&next);
        *colors = next;
        if next_classes == classes {
            return;
        }
        classes = next_classes;
    }
}

/// Equitable colouring starting from the uniform partition.
pub fn equitable_colors(g: &Graph) -> Vec<u32> {
    let mut c = vec![0; g.n()];
    refine(g, &mut c);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_splits_by_distance_from_ends() {
        let p5 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let c = equitable_colors(&p5);
        assert_eq!(c[0], c[4]);
        assert_eq!(c[1], c[3]);
        assert_ne!(c[0], c[1]);
        assert_ne!(c[1], c[2]);
        assert_eq!(class_count(&c), 3);
    }

    #[test]
    fn regular_graph_stays_uniform() {
        let c6 = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(class_count(&equitable_colors(&c6)), 1);
    }
}
