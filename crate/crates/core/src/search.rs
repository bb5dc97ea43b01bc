//! Backtracking vertex-map search with forward checking.
//!
//! Vertices of the source graph are assigned in order `0..n` and candidates
//! are tried in increasing order, so complete maps come out in lexicographic
//! order. Every domain is kept consistent with all earlier assignments, which
//! makes each complete map a valid isomorphism without a final check.

use crate::graph::{Graph, VertexSet};
use crate::refine::{equitable_colors, refine};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Isomorphisms from one graph onto another.
    Isomorphism,
    /// Automorphisms of a single graph.
    Automorphism,
    /// Non-identity involutive automorphisms.
    Involution,
    /// Involutive automorphisms that can still become butterfly involutions:
    /// swapped pairs are non-adjacent, their common neighbours are fixed, and
    /// no moved vertex shares a component of the moved subgraph with its image.
    Butterfly,
}

/// Counters reported by a search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchCounters {
    pub nodes: u64,
    pub leaves: u64,
    pub pruned: u64,
}

struct Frame {
    doms: Vec<VertexSet>,
    cursor: usize,
}

pub(crate) struct MapSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    mode: Mode,
    stack: Vec<Frame>,
    mapping: Vec<usize>,
    started: bool,
    initial: Option<Vec<VertexSet>>,
    pub(crate) counters: SearchCounters,
}

impl<'a> MapSearch<'a> {
    /// Self-map search on `g` in one of the automorphism modes.
    pub(crate) fn on_graph(g: &'a Graph, mode: Mode) -> Self {
        debug_assert!(mode != Mode::Isomorphism);
        let colors = equitable_colors(g);
        let n = g.n();
        let mut doms: Vec<VertexSet> = (0..n)
            .map(|v| VertexSet::from_vertices(n, (0..n).filter(|&w| colors[w] == colors[v])))
            .collect();
        if mode == Mode::Butterfly {
            for v in g.universal_vertices().iter() {
                doms[v] = VertexSet::singleton(n, v);
            }
        }
        Self::with_domains(g, g, mode, Some(doms))
    }

    /// Isomorphism search `g -> h`, optionally matching one colour class onto another.
    pub(crate) fn isomorphisms(
        g: &'a Graph,
        h: &'a Graph,
        classes: Option<(&VertexSet, &VertexSet)>,
    ) -> Self {
        let n = g.n();
        if n != h.n() || g.edge_count() != h.edge_count() {
            return Self::with_domains(g, h, Mode::Isomorphism, None);
        }
        let union = g.disjoint_union(h);
        let mut colors: Vec<u32> = match classes {
            Some((cg, ch)) => (0..2 * n)
                .map(|x| {
                    let inside = if x < n { cg.contains(x) } else { ch.contains(x - n) };
                    u32::from(!inside)
                })
                .collect(),
            None => vec![0; 2 * n],
        };
        refine(&union, &mut colors);
        let (cg, ch) = colors.split_at(n);
        let mut sorted_g = cg.to_vec();
        let mut sorted_h = ch.to_vec();
        sorted_g.sort_unstable();
        sorted_h.sort_unstable();
        if sorted_g != sorted_h {
            return Self::with_domains(g, h, Mode::Isomorphism, None);
        }
        let doms = (0..n)
            .map(|v| VertexSet::from_vertices(n, (0..n).filter(|&w| ch[w] == cg[v])))
            .collect();
        Self::with_domains(g, h, Mode::Isomorphism, Some(doms))
    }

    fn with_domains(g: &'a Graph, h: &'a Graph, mode: Mode, doms: Option<Vec<VertexSet>>) -> Self {
        MapSearch {
            g,
            h,
            mode,
            stack: Vec::new(),
            mapping: vec![usize::MAX; g.n()],
            started: false,
            initial: doms,
            counters: SearchCounters::default(),
        }
    }

    fn propagate(&mut self, doms: &[VertexSet], v: usize, w: usize) -> Option<Vec<VertexSet>> {
        let n = self.g.n();
        let g = self.g;
        let h = self.h;
        let mut next = doms.to_vec();
        next[v] = VertexSet::singleton(n, w);
        let involutive = matches!(self.mode, Mode::Involution | Mode::Butterfly);

        if involutive && w != v {
            // When w < v this repeats constraints already applied at w.
            if self.mode == Mode::Butterfly && g.has_edge(v, w) {
                return None;
            }
            next[w].intersect_with(&VertexSet::singleton(n, v));
            if next[w].is_empty() {
                return None;
            }
        }
        for (u, dom) in next.iter_mut().enumerate().skip(v + 1) {
            dom.remove(w);
            if involutive && w != v && u != w {
                dom.remove(v);
            }
            if g.has_edge(v, u) {
                dom.intersect_with(h.neighbors(w));
            } else {
                dom.difference_with(h.neighbors(w));
            }
            if dom.is_empty() {
                return None;
            }
        }
        if self.mode == Mode::Butterfly && w != v {
            let common = g.neighbors(v).intersection(g.neighbors(w));
            for x in common.iter() {
                if x < v {
                    if self.mapping[x] != x {
                        return None;
                    }
                } else {
                    if !next[x].contains(x) {
                        return None;
                    }
                    next[x] = VertexSet::singleton(n, x);
                }
            }
            if !self.moved_components_ok(v, w) {
                return None;
            }
        }
        Some(next)
    }

    /// Moved vertices known so far must not share a component (of the
    /// subgraph they induce) with their images. Components only grow as
    /// more vertices move, so a violation here is final.
    fn moved_components_ok(&self, v: usize, w: usize) -> bool {
        let n = self.g.n();
        let mut image: Vec<usize> = (0..n).collect();
        let mut moved = VertexSet::new(n);
        let pairs = (0..v).map(|u| (u, self.mapping[u])).chain([(v, w)]);
        for (a, b) in pairs.filter(|(a, b)| a != b) {
            image[a] = b;
            image[b] = a;
            moved.insert(a);
            moved.insert(b);
        }
        let mut seen = VertexSet::new(n);
        for u in moved.iter() {
            if seen.contains(u) {
                continue;
            }
            let comp = self.g.reach(u, &moved);
            if comp.iter().any(|x| comp.contains(image[x])) {
                return false;
            }
            seen.union_with(&comp);
        }
        true
    }

    fn leaf_accepted(&self) -> bool {
        match self.mode {
            Mode::Isomorphism | Mode::Automorphism => true,
            Mode::Involution => self.mapping.iter().enumerate().any(|(i, &x)| i != x),
            Mode::Butterfly => {
                let moved = self.mapping.iter().enumerate().filter(|(i, &x)| *i != x).count();
                moved > 0 && moved < self.mapping.len()
            }
        }
    }
}

impl Iterator for MapSearch<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let n = self.g.n();
        if !self.started {
            self.started = true;
            match self.initial.take() {
                Some(doms) if doms.iter().all(|d| !d.is_empty()) || n == 0 => {
                    self.stack.push(Frame { doms, cursor: 0 })
                }
                _ => return None,
            }
        }
        while !self.stack.is_empty() {
            let depth = self.stack.len() - 1;
            if depth == n {
                self.stack.pop();
                self.counters.leaves += 1;
                if self.leaf_accepted() {
                    return Some(self.mapping.clone());
                }
                continue;
            }
            let top = self.stack.last_mut().expect("frame");
            let cursor = top.cursor;
            let candidate = top.doms[depth].iter().find(|&w| w >= cursor);
            let Some(w) = candidate else {
                self.stack.pop();
                continue;
            };
            top.cursor = w + 1;
            let doms = std::mem::take(&mut top.doms);
            self.counters.nodes += 1;
            let child = self.propagate(&doms, depth, w);
            self.stack.last_mut().expect("frame").doms = doms;
            match child {
                Some(next) => {
                    self.mapping[depth] = w;
                    self.stack.push(Frame { doms: next, cursor: 0 });
                }
                None => self.counters.pruned += 1,
            }
        }
        None
    }
}
