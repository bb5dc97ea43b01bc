//! Partially labeled graphs and the gluing product.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("label {label} points at vertex {vertex}, but the graph has {n} vertices")]
    LabelOutOfRange { label: u32, vertex: usize, n: usize },
    #[error("labels {0} and {1} point at the same vertex")]
    NotInjective(u32, u32),
    #[error("every vertex is labeled; at least one must stay unlabeled")]
    Surjective,
    #[error("the labeling is empty; at least one vertex must be labeled")]
    Empty,
    #[error("label {0} is not used by this graph")]
    UnknownLabel(u32),
    #[error("cannot drop every label; the dropped set must be a proper subset")]
    NotProperSubset,
}

/// A graph with an injective, non-surjective, non-empty labeling `θ: L → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiallyLabeledGraph {
    graph: Graph,
    labels: BTreeMap<u32, usize>,
}

impl PartiallyLabeledGraph {
    pub fn new(graph: Graph, labels: BTreeMap<u32, usize>) -> Result<Self, LabelingError> {
        let n = graph.n();
        if labels.is_empty() {
            return Err(LabelingError::Empty);
        }
        let mut owner: BTreeMap<usize, u32> = BTreeMap::new();
        for (&label, &vertex) in &labels {
            if vertex >= n {
                return Err(LabelingError::LabelOutOfRange { label, vertex, n });
            }
            if let Some(&other) = owner.get(&vertex) {
                return Err(LabelingError::NotInjective(other, label));
            }
            owner.insert(vertex, label);
        }
        if owner.len() == n {
            return Err(LabelingError::Surjective);
        }
        Ok(PartiallyLabeledGraph { graph, labels })
    }

    /// Labels each listed vertex with `1, 2, ...` in the order given.
    pub fn with_labeled_vertices(graph: Graph, vertices: &[usize]) -> Result<Self, LabelingError> {
        let labels = vertices.iter().enumerate().map(|(i, &v)| (i as u32 + 1, v)).collect();
        Self::new(graph, labels)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &BTreeMap<u32, usize> {
        &self.labels
    }

    /// `θ(L)` as a vertex set.
    pub fn labeled_set(&self) -> VertexSet {
        VertexSet::from_vertices(self.graph.n(), self.labels.values().copied())
    }

    pub fn unlabeled_vertices(&self) -> Vec<usize> {
        let labeled = self.labeled_set();
        (0..self.graph.n()).filter(|&v| !labeled.contains(v)).collect()
    }

    pub fn label_of(&self, v: usize) -> Option<u32> {
        self.labels.iter().find(|(_, &x)| x == v).map(|(&l, _)| l)
    }

    /// Edges of the subgraph induced by the labeled vertices.
    pub fn labeled_edge_count(&self) -> usize {
        let labeled = self.labeled_set();
        self.graph
            .edges()
            .into_iter()
            .filter(|&(u, v)| labeled.contains(u) && labeled.contains(v))
            .count()
    }
}

/// Pairing of the two copies of each unlabeled root vertex inside a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinMap {
    twin: Vec<usize>,
    origin: Vec<usize>,
    fixed: VertexSet,
}

impl TwinMap {
    /// Twin of `v`; labeled vertices are their own twin.
    pub fn twin(&self, v: usize) -> usize {
        self.twin[v]
    }

    /// Root vertex that `v` is a copy of.
    pub fn origin(&self, v: usize) -> usize {
        self.origin[v]
    }

    /// Image of `θ(L)`.
    pub fn fixed(&self) -> &VertexSet {
        &self.fixed
    }

    /// Pairs `(v, v')` with `v < v'`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.twin.iter().enumerate().filter(|(v, &w)| *v < w).map(|(v, &w)| (v, w))
    }

    /// The involution exchanging every twin pair.
    pub fn as_slice(&self) -> &[usize] {
        &self.twin
    }
}

/// Layout of a glued graph: where each source vertex lands.
struct Placement {
    n: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    labels: BTreeMap<u32, usize>,
}

/// Labeled vertices first by label, then unlabeled vertices of `h1`, then of `h2`.
fn place(h1: &PartiallyLabeledGraph, h2: &PartiallyLabeledGraph) -> Placement {
    let all: BTreeSet<u32> = h1.labels.keys().chain(h2.labels.keys()).copied().collect();
    let labels: BTreeMap<u32, usize> = all.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut next = labels.len();
    let mut assign = |h: &PartiallyLabeledGraph| {
        let mut at = vec![usize::MAX; h.graph.n()];
        for (l, &v) in &h.labels {
            at[v] = labels[l];
        }
        for slot in at.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = next;
            next += 1;
        }
        at
    };
    let left = assign(h1);
    let right = assign(h2);
    Placement { n: next, left, right, labels }
}

fn glued_graph(h1: &PartiallyLabeledGraph, h2: &PartiallyLabeledGraph, p: &Placement) -> Graph {
    let mut g = Graph::empty(p.n);
    for (u, v) in h1.graph.edges() {
        g.add_edge(p.left[u], p.left[v]);
    }
    for (u, v) in h2.graph.edges() {
        g.add_edge(p.right[u], p.right[v]);
    }
    g
}

/// Identifies equally labeled vertices and merges double edges.
pub fn glue(h1: &PartiallyLabeledGraph, h2: &PartiallyLabeledGraph) -> PartiallyLabeledGraph {
    let p = place(h1, h2);
    let graph = glued_graph(h1, h2, &p);
    PartiallyLabeledGraph { graph, labels: p.labels }
}

/// `HH` with labels dropped, plus the twin pairing.
pub fn square(h: &PartiallyLabeledGraph) -> (Graph, TwinMap) {
    let p = place(h, h);
    let graph = glued_graph(h, h, &p);
    let mut twin: Vec<usize> = (0..p.n).collect();
    let mut origin = vec![0; p.n];
    for v in 0..h.graph.n() {
        let (a, b) = (p.left[v], p.right[v]);
        twin[a] = b;
        twin[b] = a;
        origin[a] = v;
        origin[b] = v;
    }
    let fixed = VertexSet::from_vertices(p.n, p.labels.values().copied());
    (graph, TwinMap { twin, origin, fixed })
}

/// Degree of `x`'s copy in `HH`.
pub fn predicted_degree(h: &PartiallyLabeledGraph, x: usize) -> Result<usize, LabelingError> {
    h.graph.check_vertex(x)?;
    let labeled = h.labeled_set();
    let deg = h.graph.degree(x);
    if labeled.contains(x) {
        let alpha = h.graph.neighbors(x).intersection_len(&labeled);
        Ok(2 * deg - alpha)
    } else {
        Ok(deg)
    }
}

/// Deletes the vertices carrying labels in `t`; `t` must be a proper subset of `L`.
pub fn drop_labels(h: &PartiallyLabeledGraph, t: &BTreeSet<u32>) -> Result<PartiallyLabeledGraph, LabelingError> {
    if let Some(&l) = t.iter().find(|l| !h.labels.contains_key(l)) {
        return Err(LabelingError::UnknownLabel(l));
    }
    if t.len() == h.labels.len() {
        return Err(LabelingError::NotProperSubset);
    }
    let removed = VertexSet::from_vertices(h.graph.n(), t.iter().map(|l| h.labels[l]));
    let (graph, keep) = h.graph.remove_vertices(&removed);
    let labels = h
        .labels
        .iter()
        .filter(|(l, _)| !t.contains(l))
        .map(|(&l, v)| (l, keep.binary_search(v).expect("kept vertex")))
        .collect();
    Ok(PartiallyLabeledGraph { graph, labels })
}

pub fn unlabel(h: &PartiallyLabeledGraph) -> Graph {
    h.graph.clone()
}
