//! Isomorphism testing, automorphism and involution enumeration, and
//! canonical codes.

use std::cmp::Ordering;

use crate::graph::{Graph, VertexPermutation, VertexSet};
use crate::refine::{class_count, rank, refine};
use crate::search::{MapSearch, Mode, SearchCounters};

/// Lexicographically least isomorphism `g -> h`, if any.
///
/// With `classes = Some((cg, ch))` the witness must also map `cg` onto `ch`.
pub fn are_isomorphic(
    g: &Graph,
    h: &Graph,
    classes: Option<(&VertexSet, &VertexSet)>,
) -> Option<VertexPermutation> {
    if let Some((cg, ch)) = classes {
        if cg.len() != ch.len() {
            return None;
        }
    }
    MapSearch::isomorphisms(g, h, classes)
        .next()
        .map(VertexPermutation::from_vec_unchecked)
}

/// Streams automorphisms or involutions in lexicographic order of their images.
pub struct Automorphisms<'a> {
    inner: MapSearch<'a>,
}

impl Automorphisms<'_> {
    pub fn counters(&self) -> SearchCounters {
        self.inner.counters
    }
}

impl Iterator for Automorphisms<'_> {
    type Item = VertexPermutation;

    fn next(&mut self) -> Option<VertexPermutation> {
        self.inner.next().map(VertexPermutation::from_vec_unchecked)
    }
}

/// Every automorphism of `g` exactly once, identity first.
pub fn enumerate_automorphisms(g: &Graph) -> Automorphisms<'_> {
    Automorphisms {
        inner: MapSearch::on_graph(g, Mode::Automorphism),
    }
}

/// Every non-identity automorphism `φ` with `φ∘φ = id`, exactly once.
pub fn enumerate_involutions(g: &Graph) -> Automorphisms<'_> {
    Automorphisms {
        inner: MapSearch::on_graph(g, Mode::Involution),
    }
}

/// Involutions restricted to those that can satisfy the butterfly conditions.
pub(crate) fn butterfly_candidates(g: &Graph) -> Automorphisms<'_> {
    Automorphisms {
        inner: MapSearch::on_graph(g, Mode::Butterfly),
    }
}

/// Isomorphism-invariant key: equal for two graphs (with optional
/// distinguished vertex class) exactly when they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonical_code(g: &Graph, class: Option<&VertexSet>) -> CanonicalCode {
    canonical_form(g, class).0
}

/// Canonical code plus a canonical ordering (`order[position] = vertex`).
pub fn canonical_form(g: &Graph, class: Option<&VertexSet>) -> (CanonicalCode, Vec<usize>) {
    let n = g.n();
    let colors: Vec<u32> = match class {
        Some(c) => (0..n).map(|v| u32::from(!c.contains(v))).collect(),
        None => vec![0; n],
    };
    let mut search = CanonSearch {
        g,
        class,
        best: None,
        autos: Vec::new(),
    };
    let mut prefix = Vec::new();
    search.visit(colors, &mut prefix);
    let (code, order) = search.best.unwrap_or_else(|| (search_code(g, class, &[]), Vec::new()));
    (CanonicalCode(code), order)
}

fn push_bits(out: &mut Vec<u8>, bits: impl Iterator<Item = bool>) {
    let mut byte = 0u8;
    let mut filled = 0;
    for b in bits {
        byte = (byte << 1) | u8::from(b);
        filled += 1;
        if filled == 8 {
            out.push(byte);
            byte = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push(byte << (8 - filled));
    }
}

fn search_code(g: &Graph, class: Option<&VertexSet>, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(5 + n * n / 16);
    out.extend_from_slice(&(g.n() as u32).to_be_bytes());
    match class {
        Some(c) => {
            out.push(1);
            push_bits(&mut out, order.iter().map(|&v| c.contains(v)));
        }
        None => out.push(0),
    }
    push_bits(
        &mut out,
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| g.has_edge(order[i], order[j])),
    );
    out
}

struct CanonSearch<'a> {
    g: &'a Graph,
    class: Option<&'a VertexSet>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    /// Automorphisms found from leaves with equal codes.
    autos: Vec<Vec<usize>>,
}

impl CanonSearch<'_> {
    fn visit(&mut self, mut colors: Vec<u32>, prefix: &mut Vec<usize>) {
        let n = self.g.n();
        refine(self.g, &mut colors);
        if class_count(&colors) == n {
            let mut order = vec![0; n];
            for (v, &c) in colors.iter().enumerate() {
                order[c as usize] = v;
            }
            self.leaf(order);
            return;
        }
        let mut sizes = vec![0usize; class_count(&colors)];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..sizes.len())
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .expect("non-discrete partition has a non-singleton cell") as u32;
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried, prefix) {
                continue;
            }
            tried.push(v);
            let keys: Vec<u64> = (0..n)
                .map(|x| 2 * u64::from(colors[x]) + u64::from(colors[x] == target && x != v))
                .collect();
            prefix.push(v);
            self.visit(rank(&keys), prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let code = search_code(self.g, self.class, &order);
        match &self.best {
            None => self.best = Some((code, order)),
            Some((best, best_order)) => match code.cmp(best) {
                Ordering::Less => self.best = Some((code, order)),
                Ordering::Equal => {
                    let mut gamma = vec![0; order.len()];
                    for (i, &v) in best_order.iter().enumerate() {
                        gamma[v] = order[i];
                    }
                    self.autos.push(gamma);
                }
                Ordering::Greater => {}
            },
        }
    }

    /// Whether `v` lies in the orbit of an already explored sibling under the
    /// known automorphisms that fix the current prefix pointwise.
    fn equivalent_to_tried(&self, v: usize, tried: &[usize], prefix: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in self.autos.iter().filter(|g| prefix.iter().all(|&x| g[x] == x)) {
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn circulant(n: usize, diffs: &[usize]) -> Graph {
        Graph::new(n, (0..n).flat_map(|i| diffs.iter().map(move |d| (i, (i + d) % n)))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn c4_is_k2_box_k2() {
        // K2 □ K2 with row-major ids (g, h) -> 2g + h
        let k2k2 = Graph::new(4, [(0, 1), (2, 3), (0, 2), (1, 3)]).unwrap();
        let w = are_isomorphic(&cycle(4), &k2k2, None).expect("isomorphic");
        assert!(w.is_isomorphism(&cycle(4), &k2k2));
        assert_eq!(w.as_slice(), &[0, 1, 3, 2]);
    }

    #[test]
    fn p4_vs_star() {
        assert!(are_isomorphic(&path(4), &star(3), None).is_none());
    }

    #[test]
    fn colour_classes_are_respected() {
        let p3 = path(3);
        let end = VertexSet::from_vertices(3, [0]);
        let mid = VertexSet::from_vertices(3, [1]);
        assert!(are_isomorphic(&p3, &p3, Some((&end, &mid))).is_none());
        let other_end = VertexSet::from_vertices(3, [2]);
        let w = are_isomorphic(&p3, &p3, Some((&end, &other_end))).unwrap();
        assert_eq!(w.as_slice(), &[2, 1, 0]);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(enumerate_automorphisms(&Graph::complete(3)).count(), 6);
        assert_eq!(enumerate_automorphisms(&cycle(5)).count(), 10);
        let first = enumerate_automorphisms(&cycle(5)).next().unwrap();
        assert!(first.is_identity());
    }

    #[test]
    fn involution_counts() {
        let p3 = enumerate_involutions(&path(3)).collect::<Vec<_>>();
        assert_eq!(p3.len(), 1);
        assert_eq!(p3[0].as_slice(), &[2, 1, 0]);
        assert_eq!(enumerate_involutions(&Graph::complete(3)).count(), 3);
        assert_eq!(enumerate_involutions(&cycle(4)).count(), 5);
    }

    #[test]
    fn streams_are_lexicographic() {
        let all: Vec<_> = enumerate_automorphisms(&circulant(8, &[1, 2])).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn canonical_code_is_relabelling_invariant() {
        let g = circulant(10, &[1, 4]);
        let p = VertexPermutation::new(vec![3, 7, 1, 0, 9, 2, 8, 4, 6, 5]).unwrap();
        assert_eq!(canonical_code(&g, None), canonical_code(&g.relabel(&p), None));
        assert_ne!(canonical_code(&g, None), canonical_code(&circulant(10, &[1, 3]), None));
    }

    #[test]
    fn canonical_code_sees_classes() {
        let p3 = path(3);
        let end = VertexSet::from_vertices(3, [0]);
        let other_end = VertexSet::from_vertices(3, [2]);
        let mid = VertexSet::from_vertices(3, [1]);
        assert_eq!(canonical_code(&p3, Some(&end)), canonical_code(&p3, Some(&other_end)));
        assert_ne!(canonical_code(&p3, Some(&end)), canonical_code(&p3, Some(&mid)));
        assert_ne!(canonical_code(&p3, Some(&end)), canonical_code(&p3, None));
    }

    #[test]
    fn canonical_code_handles_symmetric_graphs() {
        for n in [1, 5, 12, 16] {
            let k = Graph::complete(n);
            let (code, order) = canonical_form(&k, None);
            assert_eq!(order.len(), n);
            assert_eq!(code, canonical_code(&Graph::complete(n), None));
            if n > 1 {
                assert_ne!(code, canonical_code(&Graph::empty(n), None));
            }
        }
        assert_eq!(canonical_code(&Graph::empty(0), None), canonical_code(&Graph::empty(0), None));
    }
}
