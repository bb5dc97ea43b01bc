#![allow(dead_code)]

use std::collections::BTreeMap;

use butterfly_core::gluing::PartiallyLabeledGraph;
use butterfly_core::{Graph, VertexPermutation, VertexSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| from_bits(n, &bits))
    })
}

/// Graph on `2..=max_n` vertices with a non-empty proper labeled subset.
pub fn plg_strategy(max_n: usize) -> impl Strategy<Value = PartiallyLabeledGraph> {
    (2..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            1u32..(1u32 << n) - 1,
        )
            .prop_map(move |(bits, mask)| {
                let labeled: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                PartiallyLabeledGraph::with_labeled_vertices(from_bits(n, &bits), &labeled).unwrap()
            })
    })
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random host on `n` vertices with a random non-empty proper labeled subset
/// and arbitrary label values.
pub fn random_plg(rng: &mut impl Rng, n: usize) -> PartiallyLabeledGraph {
    assert!(n >= 2);
    let p = rng.gen_range(0.1..0.9);
    let g = random_graph(rng, n, p);
    let count = rng.gen_range(1..n);
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(rng);
    let mut values: Vec<u32> = (1..=2 * n as u32).collect();
    values.shuffle(rng);
    let labels: BTreeMap<u32, usize> = values.into_iter().zip(vs.into_iter().take(count)).collect();
    PartiallyLabeledGraph::new(g, labels).unwrap()
}

/// A random involution with at least one fixed and one moved vertex (needs `n >= 3`).
pub fn random_involution(rng: &mut impl Rng, n: usize) -> VertexPermutation {
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(rng);
    let pairs = rng.gen_range(1..=(n - 1) / 2);
    let mut map: Vec<usize> = (0..n).collect();
    for i in 0..pairs {
        let (a, b) = (vs[2 * i], vs[2 * i + 1]);
        map[a] = b;
        map[b] = a;
    }
    VertexPermutation::new(map).unwrap()
}

/// Random graph that has `phi` as an automorphism: every sampled edge is
/// added together with its image.
pub fn random_symmetric_graph(rng: &mut impl Rng, phi: &VertexPermutation, p: f64) -> Graph {
    let n = phi.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
                edges.push((phi.apply(u), phi.apply(v)));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// One vertex from each 2-orbit of `phi`, chosen at random.
pub fn random_sides(rng: &mut impl Rng, phi: &VertexPermutation) -> VertexSet {
    let n = phi.len();
    let picks: Vec<usize> = (0..n)
        .filter(|&v| v < phi.apply(v))
        .map(|v| if rng.gen_bool(0.5) { v } else { phi.apply(v) })
        .collect();
    VertexSet::from_vertices(n, picks)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn preserves_edges(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    g.edge_count() == h.edge_count() && g.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]))
}

pub fn brute_automorphism_count(g: &Graph) -> usize {
    permutations(g.n()).iter().filter(|p| preserves_edges(g, g, p)).count()
}

pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && permutations(g.n()).iter().any(|p| preserves_edges(g, h, p))
}

/// Every non-identity involution of `0..n`, built from partial matchings.
pub fn all_involutions(n: usize) -> Vec<Vec<usize>> {
    fn rec(v: usize, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = map.len();
        if v == n {
            if map.iter().enumerate().any(|(i, &x)| i != x) {
                out.push(map.clone());
            }
            return;
        }
        if map[v] != usize::MAX {
            return rec(v + 1, map, out);
        }
        map[v] = v;
        rec(v + 1, map, out);
        for w in v + 1..n {
            if map[w] == usize::MAX {
                map[v] = w;
                map[w] = v;
                rec(v + 1, map, out);
                map[w] = usize::MAX;
            }
        }
        map[v] = usize::MAX;
    }
    let mut out = Vec::new();
    rec(0, &mut vec![usize::MAX; n], &mut out);
    out
}

pub fn brute_involutions(g: &Graph) -> Vec<Vec<usize>> {
    all_involutions(g.n()).into_iter().filter(|p| preserves_edges(g, g, p)).collect()
}
