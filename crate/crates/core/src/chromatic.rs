//! Exact chromatic number by backtracking, for small graphs only.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Default vertex limit for exact colouring.
pub const DEFAULT_CHROMATIC_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChromaticError {
    #[error("exact colouring unavailable: {n} vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Size of a maximum clique (Bron-Kerbosch with pivoting).
pub fn clique_number(g: &Graph) -> usize {
    fn expand(g: &Graph, size: usize, mut p: VertexSet, mut x: VertexSet, best: &mut usize) {
        if p.is_empty() {
            if x.is_empty() {
                *best = (*best).max(size);
            }
            return;
        }
        if size + p.len() <= *best {
            return;
        }
        let pivot = p
            .union(&x)
            .iter()
            .max_by_key(|&u| p.intersection_len(g.neighbors(u)))
            .expect("p is non-empty");
        for v in p.difference(g.neighbors(pivot)).to_vec() {
            expand(g, size + 1, p.intersection(g.neighbors(v)), x.intersection(g.neighbors(v)), best);
            p.remove(v);
            x.insert(v);
        }
    }
    let mut best = 0;
    expand(g, 0, g.vertex_set(), VertexSet::new(g.n()), &mut best);
    best
}

/// Whether `g` admits a proper colouring with `k` colours.
fn colorable(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    fn step(g: &Graph, k: usize, color: &mut [usize], assigned: usize) -> bool {
        let n = g.n();
        if assigned == n {
            return true;
        }
        // Most constrained uncoloured vertex: fewest free colours, then highest degree.
        let mut pick = None;
        let mut pick_key = (usize::MAX, 0);
        for v in (0..n).filter(|&v| color[v] == usize::MAX) {
            let mut used = 0u64;
            for u in g.neighbors(v).iter() {
                if color[u] != usize::MAX {
                    used |= 1 << color[u];
                }
            }
            let free = k - used.count_ones() as usize;
            let key = (free, usize::MAX - g.degree(v));
            if key < pick_key {
                pick_key = key;
                pick = Some((v, used));
            }
        }
        let (v, used) = pick.expect("an uncoloured vertex remains");
        // Colours beyond the highest one in use are interchangeable; try only the first.
        let highest = color.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |&c| c + 1);
        for c in 0..k.min(highest + 1) {
            if used & (1 << c) == 0 {
                color[v] = c;
                if step(g, k, color, assigned + 1) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    step(g, k, &mut color, 0)
}

/// Exact chromatic number with the default size limit.
pub fn chromatic_number(g: &Graph) -> Result<usize, ChromaticError> {
    chromatic_number_up_to(g, DEFAULT_CHROMATIC_MAX_N)
}

pub fn chromatic_number_up_to(g: &Graph, limit: usize) -> Result<usize, ChromaticError> {
    if g.n() > limit || g.n() > 63 {
        return Err(ChromaticError::TooLarge { n: g.n(), limit });
    }
    let mut k = clique_number(g);
    while !colorable(g, k) {
        k += 1;
    }
    Ok(k)
}

/// `χ(G - v) < χ(G)` for every vertex `v`.
pub fn is_vertex_chromatic_critical(g: &Graph) -> Result<bool, ChromaticError> {
    is_vertex_chromatic_critical_up_to(g, DEFAULT_CHROMATIC_MAX_N)
}

pub fn is_vertex_chromatic_critical_up_to(g: &Graph, limit: usize) -> Result<bool, ChromaticError> {
    let chi = chromatic_number_up_to(g, limit)?;
    if chi == 0 {
        return Ok(false);
    }
    for v in 0..g.n() {
        let (rest, _) = g.remove_vertices(&VertexSet::singleton(g.n(), v));
        // Removing a vertex lowers χ by at most one.
        if colorable(&rest, chi - 1) {
            continue;
        }
        return Ok(false);
    }
    Ok(true)
}
