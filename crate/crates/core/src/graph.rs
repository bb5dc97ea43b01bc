//! Simple undirected graphs on dense vertex ids with bit-set adjacency.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("mapping is not a permutation of 0..{0}")]
    NotAPermutation(usize),
}

/// A set of vertices drawn from `0..capacity`, stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; capacity.div_ceil(WORD)],
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices(capacity: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(capacity);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn singleton(capacity: usize, v: usize) -> Self {
        Self::from_vertices(capacity, [v])
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / WORD] &= !(1 << (v % WORD));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / WORD)
            .is_some_and(|w| w & (1 << (v % WORD)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate pairs into a single edge.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Open neighbourhood; panics when `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn open_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v].clone())
    }

    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        let mut s = self.open_neighborhood(v)?;
        s.insert(v);
        Ok(s)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Subgraph induced by `vertices`, renumbered in the order given.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Deletes `removed` and returns the remaining graph with the surviving
    /// original ids in increasing order.
    pub fn remove_vertices(&self, removed: &VertexSet) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !removed.contains(v)).collect();
        (self.induced_subgraph(&keep), keep)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Vertices of `self` first, then those of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// The image graph with edge `{p(u), p(v)}` for every edge `{u, v}`.
    pub fn relabel(&self, p: &VertexPermutation) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(p.apply(u), p.apply(v));
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&self.vertex_set())
            .into_iter()
            .map(|c| c.to_vec())
            .collect()
    }

    /// Components of the subgraph induced by `within`.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut out = Vec::new();
        for start in within.iter() {
            if seen.contains(start) {
                continue;
            }
            let comp = self.reach(start, within);
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    pub fn reach(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(self.n, start);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = VertexSet::new(self.n);
            for v in frontier.iter() {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(within);
            next.difference_with(&comp);
            comp.union_with(&next);
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n >= 1 && self.reach(0, &self.vertex_set()).len() == self.n
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.n,
            (0..self.n).filter(|&v| self.degree(v) + 1 == self.n),
        )
    }

    /// First pair `(v1, v2)`, `v1 < v2`, in lexicographic order with equal open neighbourhoods.
    pub fn has_twin_pair(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] == self.adj[v] {
                    return Some((u, v));
                }
            }
        }
        None
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A bijection on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPermutation {
    map: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(map: Vec<usize>) -> Result<Self, GraphError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || seen[x] {
                return Err(GraphError::NotAPermutation(n));
            }
            seen[x] = true;
        }
        Ok(VertexPermutation { map })
    }

    pub(crate) fn from_vec_unchecked(map: Vec<usize>) -> Self {
        debug_assert!(VertexPermutation::new(map.clone()).is_ok());
        VertexPermutation { map }
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            map: (0..n).collect(),
        }
    }

    /// The involution exchanging each listed pair and fixing everything else.
    pub fn from_swaps(n: usize, swaps: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut map: Vec<usize> = (0..n).collect();
        for &(a, b) in swaps {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a.max(b), n });
            }
            map[a] = b;
            map[b] = a;
        }
        let p = VertexPermutation::new(map)?;
        if !p.is_involution() {
            return Err(GraphError::NotAPermutation(n));
        }
        Ok(p)
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_involution(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| self.map[x] == i)
    }

    pub fn fixed_points(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.map.len(),
            self.map.iter().enumerate().filter(|(i, &x)| *i == x).map(|(i, _)| i),
        )
    }

    pub fn moved_points(&self) -> VertexSet {
        VertexSet::full(self.map.len()).difference(&self.fixed_points())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        VertexPermutation { map: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexPermutation) -> Self {
        VertexPermutation {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn image(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(self.map.len(), set.iter().map(|v| self.map[v]))
    }

    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.map.len() == g.n()
            && g.edges()
                .into_iter()
                .all(|(u, v)| g.has_edge(self.map[u], self.map[v]))
    }

    /// `self` as an isomorphism `g -> h`.
    pub fn is_isomorphism(&self, g: &Graph, h: &Graph) -> bool {
        self.map.len() == g.n()
            && g.n() == h.n()
            && g.edge_count() == h.edge_count()
            && g.edges()
                .into_iter()
                .all(|(u, v)| h.has_edge(self.map[u], self.map[v]))
    }
}

impl fmt::Debug for VertexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn builds_c4() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degrees(), vec![2; 4]);
        assert_eq!(g, cycle(4));
    }

    #[test]
    fn duplicate_pairs_collapse() {
        let g = Graph::new(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn neighborhoods() {
        let c4 = cycle(4);
        assert_eq!(c4.open_neighborhood(0).unwrap().to_vec(), vec![1, 3]);
        let k4 = Graph::complete(4);
        assert_eq!(k4.closed_neighborhood(2).unwrap().to_vec(), vec![0, 1, 2, 3]);
        let i3 = Graph::empty(3);
        assert!(i3.open_neighborhood(0).unwrap().is_empty());
        assert!(i3.open_neighborhood(3).is_err());
    }

    #[test]
    fn components_and_connectivity() {
        assert_eq!(cycle(6).components().len(), 1);
        assert!(cycle(6).is_connected());
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_edges.components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(Graph::empty(3).components().len(), 3);
        assert!(!Graph::empty(0).is_connected());
    }

    #[test]
    fn twin_pairs() {
        // K_{2,3}: parts {0,1} and {2,3,4}
        let k23 = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(k23.has_twin_pair(), Some((0, 1)));
        assert_eq!(cycle(4).has_twin_pair(), Some((0, 2)));
        assert_eq!(cycle(5).has_twin_pair(), None);
    }

    #[test]
    fn permutation_validation() {
        assert!(VertexPermutation::new(vec![1, 0, 2]).is_ok());
        assert!(VertexPermutation::new(vec![1, 1, 2]).is_err());
        assert!(VertexPermutation::new(vec![0, 3, 1]).is_err());
        let p = VertexPermutation::new(vec![1, 2, 0]).unwrap();
        assert!(!p.is_involution());
        assert!(p.compose(&p.inverse()).is_identity());
        let s = VertexPermutation::from_swaps(4, &[(1, 3)]).unwrap();
        assert!(s.is_involution());
        assert!(s.is_automorphism_of(&cycle(4)));
        assert_eq!(s.fixed_points().to_vec(), vec![0, 2]);
    }

    #[test]
    fn vertex_set_ops_span_words() {
        let mut a = VertexSet::new(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.to_vec(), vec![0, 64, 129]);
        let b = VertexSet::from_vertices(130, [64, 100]);
        assert_eq!(a.intersection(&b).to_vec(), vec![64]);
        assert_eq!(a.union(&b).len(), 4);
        assert!(!a.is_disjoint(&b));
        a.remove(64);
        assert!(a.is_disjoint(&b));
    }
}
