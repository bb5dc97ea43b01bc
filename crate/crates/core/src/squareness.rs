//! Deciding whether a graph is a square, with checkable butterfly certificates.
//!
//! A butterfly involution of `G` is a non-identity involutive automorphism `φ`
//! with fixed set `F` such that
//!
//! 1. `F` is non-empty,
//! 2. some vertex is moved,
//! 3. `N(u) ∩ N(φ(u)) = N(u) ∩ F` for every moved `u`,
//! 4. the moved vertices split into `A0` and `A1 = φ(A0)` with no edge between them.
//!
//! `G` is a square exactly when such a `φ` exists. The root is the subgraph
//! induced by `F ∪ A0` with `F` labeled.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::chromatic::{is_vertex_chromatic_critical_up_to, DEFAULT_CHROMATIC_MAX_N};
use crate::gluing::{square, LabelingError, PartiallyLabeledGraph};
use crate::graph::{Graph, VertexPermutation, VertexSet};
use crate::iso::{butterfly_candidates, canonical_code};
use crate::search::SearchCounters;

/// Default vertex limit for the exhaustive search.
pub const DEFAULT_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateViolation {
    #[error("certificate covers {found} vertices but the graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("phi is not an automorphism: edge ({0}, {1}) is not preserved")]
    NotAutomorphism(usize, usize),
    #[error("phi is not an involution at vertex {0}")]
    NotInvolution(usize),
    #[error("the recorded fixed set differs from the fixed points of phi")]
    FixedSetMismatch,
    #[error("condition 1: phi has no fixed vertex")]
    NoFixedVertex,
    #[error("condition 2: phi moves no vertex")]
    NoMovedVertex,
    #[error("condition 3: vertices {0} and {1} share a neighbour outside the fixed set")]
    SharedMovedNeighbour(usize, usize),
    #[error("condition 4: A0 and A1 do not partition the moved vertices")]
    NotAPartition,
    #[error("condition 4: phi does not exchange A0 and A1 at vertex {0}")]
    SidesNotSwapped(usize),
    #[error("condition 4: edge ({0}, {1}) joins A0 and A1")]
    CrossingEdge(usize, usize),
    #[error("condition 4: a component of the moved subgraph contains {0} and its image")]
    ComponentNotSplit(usize),
}

impl CertificateViolation {
    /// Index of the violated butterfly condition, or `None` for structural
    /// failures (not an automorphism, not an involution, inconsistent fixed set).
    pub fn condition(&self) -> Option<u8> {
        use CertificateViolation::*;
        match self {
            SizeMismatch { .. } | NotAutomorphism(..) | NotInvolution(_) | FixedSetMismatch => None,
            NoFixedVertex => Some(1),
            NoMovedVertex => Some(2),
            SharedMovedNeighbour(..) => Some(3),
            NotAPartition | SidesNotSwapped(_) | CrossingEdge(..) | ComponentNotSplit(_) => Some(4),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquareError {
    #[error("the empty graph has no squareness verdict")]
    EmptyGraph,
    #[error("undecided: {n} vertices exceeds the search limit of {max_n}")]
    Undecided { n: usize, max_n: usize },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(#[from] CertificateViolation),
    #[error("the cut-set test needs a connected graph")]
    Disconnected,
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("side choice must hold exactly one vertex of each swapped pair (vertex {0})")]
    BadSideChoice(usize),
    #[error("invalid parameters: {0}")]
    Parameters(String),
}

/// A butterfly involution together with its fixed set and sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ButterflyCertificate {
    pub phi: VertexPermutation,
    pub fixed: VertexSet,
    pub a0: VertexSet,
    pub a1: VertexSet,
}

impl ButterflyCertificate {
    /// Completes `phi` into a certificate, putting the first component of
    /// every swapped pair of components (of `G - F`) into `A0`.
    pub fn from_involution(g: &Graph, phi: VertexPermutation) -> Result<Self, CertificateViolation> {
        check_map(g, &phi)?;
        let fixed = phi.fixed_points();
        if fixed.is_empty() {
            return Err(CertificateViolation::NoFixedVertex);
        }
        let moved = phi.moved_points();
        if moved.is_empty() {
            return Err(CertificateViolation::NoMovedVertex);
        }
        check_neighbourhoods(g, &phi, &fixed)?;
        let n = g.n();
        let mut a0 = VertexSet::new(n);
        let mut a1 = VertexSet::new(n);
        for comp in g.components_within(&moved) {
            let first = comp.first().expect("components are non-empty");
            if a1.contains(first) {
                continue;
            }
            let image = phi.image(&comp);
            if let Some(v) = comp.iter().find(|&v| image.contains(v)) {
                return Err(CertificateViolation::ComponentNotSplit(v));
            }
            a0.union_with(&comp);
            a1.union_with(&image);
        }
        Ok(ButterflyCertificate { phi, fixed, a0, a1 })
    }

    /// Certificate with a caller-chosen `A0`.
    pub fn with_sides(g: &Graph, phi: VertexPermutation, a0: VertexSet) -> Result<Self, CertificateViolation> {
        let a1 = phi.image(&a0);
        let cert = ButterflyCertificate {
            fixed: phi.fixed_points(),
            phi,
            a0,
            a1,
        };
        check_certificate(g, &cert)?;
        Ok(cert)
    }

    /// Vertices of the root: `F ∪ A0` in increasing order.
    pub fn root_vertices(&self) -> Vec<usize> {
        self.fixed.union(&self.a0).to_vec()
    }
}

fn check_map(g: &Graph, phi: &VertexPermutation) -> Result<(), CertificateViolation> {
    if phi.len() != g.n() {
        return Err(CertificateViolation::SizeMismatch { expected: g.n(), found: phi.len() });
    }
    if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| !g.has_edge(phi.apply(u), phi.apply(v))) {
        return Err(CertificateViolation::NotAutomorphism(u, v));
    }
    if let Some(v) = (0..g.n()).find(|&v| phi.apply(phi.apply(v)) != v) {
        return Err(CertificateViolation::NotInvolution(v));
    }
    Ok(())
}

fn check_neighbourhoods(g: &Graph, phi: &VertexPermutation, fixed: &VertexSet) -> Result<(), CertificateViolation> {
    for u in phi.moved_points().iter() {
        let common = g.neighbors(u).intersection(g.neighbors(phi.apply(u)));
        let on_fixed = g.neighbors(u).intersection(fixed);
        if common != on_fixed {
            return Err(CertificateViolation::SharedMovedNeighbour(u, phi.apply(u)));
        }
    }
    Ok(())
}

/// Checks every property of a certificate, reporting the first failure.
pub fn check_certificate(g: &Graph, cert: &ButterflyCertificate) -> Result<(), CertificateViolation> {
    let n = g.n();
    for set in [&cert.fixed, &cert.a0, &cert.a1] {
        if set.iter().any(|v| v >= n) {
            return Err(CertificateViolation::SizeMismatch { expected: n, found: set.iter().max().map_or(0, |m| m + 1) });
        }
    }
    check_map(g, &cert.phi)?;
    if cert.fixed != cert.phi.fixed_points() {
        return Err(CertificateViolation::FixedSetMismatch);
    }
    if cert.fixed.is_empty() {
        return Err(CertificateViolation::NoFixedVertex);
    }
    let moved = cert.phi.moved_points();
    if moved.is_empty() {
        return Err(CertificateViolation::NoMovedVertex);
    }
    check_neighbourhoods(g, &cert.phi, &cert.fixed)?;
    if !cert.a0.is_disjoint(&cert.a1) || cert.a0.union(&cert.a1) != moved || cert.a0.len() != cert.a1.len() {
        return Err(CertificateViolation::NotAPartition);
    }
    if let Some(v) = cert.a0.iter().find(|&v| !cert.a1.contains(cert.phi.apply(v))) {
        return Err(CertificateViolation::SidesNotSwapped(v));
    }
    for u in cert.a0.iter() {
        if let Some(v) = g.neighbors(u).intersection(&cert.a1).first() {
            return Err(CertificateViolation::CrossingEdge(u.min(v), u.max(v)));
        }
    }
    Ok(())
}

/// The constructed certificate for a twin pair: swap the pair, fix the rest.
pub fn twin_certificate(g: &Graph, v1: usize, v2: usize) -> Result<ButterflyCertificate, CertificateViolation> {
    let n = g.n();
    let phi = VertexPermutation::from_swaps(n, &[(v1, v2)])
        .map_err(|_| CertificateViolation::SizeMismatch { expected: n, found: v1.max(v2) + 1 })?;
    ButterflyCertificate::with_sides(g, phi, VertexSet::singleton(n, v1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest graph the exhaustive search will accept.
    pub max_n: usize,
    pub chromatic_filter: bool,
    pub chromatic_max_n: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_n: DEFAULT_MAX_N,
            chromatic_filter: true,
            chromatic_max_n: DEFAULT_CHROMATIC_MAX_N,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Square(ButterflyCertificate),
    NotSquare,
}

impl Verdict {
    pub fn is_square(&self) -> bool {
        matches!(self, Verdict::Square(_))
    }

    pub fn certificate(&self) -> Option<&ButterflyCertificate> {
        match self {
            Verdict::Square(c) => Some(c),
            Verdict::NotSquare => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecidedBy {
    Twins,
    DominatingPrune,
    ChromaticCritical,
    ExhaustiveSearch,
    ConstructiveLift,
}

impl DecidedBy {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecidedBy::Twins => "twins",
            DecidedBy::DominatingPrune => "dominating-prune",
            DecidedBy::ChromaticCritical => "chromatic-critical",
            DecidedBy::ExhaustiveSearch => "exhaustive-search",
            DecidedBy::ConstructiveLift => "constructive-lift",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Complete involutions that reached the full butterfly check.
    pub involutions_examined: u64,
    /// Partial assignments abandoned by pruning.
    pub pruned: u64,
    pub nodes: u64,
}

impl From<SearchCounters> for SearchStats {
    fn from(c: SearchCounters) -> Self {
        SearchStats {
            involutions_examined: c.leaves,
            pruned: c.pruned,
            nodes: c.nodes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub decided_by: DecidedBy,
    pub stats: SearchStats,
}

pub fn is_square(g: &Graph) -> Result<Classification, SquareError> {
    is_square_with(g, &SearchConfig::default())
}

pub fn is_square_with(g: &Graph, cfg: &SearchConfig) -> Result<Classification, SquareError> {
    let n = g.n();
    if n == 0 {
        return Err(SquareError::EmptyGraph);
    }
    if n > cfg.max_n {
        return Err(SquareError::Undecided { n, max_n: cfg.max_n });
    }
    if n >= 3 {
        if let Some((v1, v2)) = g.has_twin_pair() {
            let cert = twin_certificate(g, v1, v2)?;
            return Ok(Classification {
                verdict: Verdict::Square(cert),
                decided_by: DecidedBy::Twins,
                stats: SearchStats::default(),
            });
        }
    }
    if cfg.chromatic_filter && n <= cfg.chromatic_max_n && is_vertex_chromatic_critical_up_to(g, cfg.chromatic_max_n) == Ok(true) {
        return Ok(Classification {
            verdict: Verdict::NotSquare,
            decided_by: DecidedBy::ChromaticCritical,
            stats: SearchStats::default(),
        });
    }
    // With universal vertices pinned, fewer than two free vertices leave only the identity.
    let free = n - g.universal_vertices().len();
    if free < 2 {
        return Ok(Classification {
            verdict: Verdict::NotSquare,
            decided_by: DecidedBy::DominatingPrune,
            stats: SearchStats::default(),
        });
    }
    let mut candidates = butterfly_candidates(g);
    let mut found = None;
    for phi in candidates.by_ref() {
        if let Ok(cert) = ButterflyCertificate::from_involution(g, phi) {
            found = Some(cert);
            break;
        }
    }
    let stats = SearchStats::from(candidates.counters());
    Ok(Classification {
        verdict: found.map_or(Verdict::NotSquare, Verdict::Square),
        decided_by: DecidedBy::ExhaustiveSearch,
        stats,
    })
}

/// Every butterfly involution of `g` (those passing the full check), in lexicographic order.
pub fn butterfly_involutions(g: &Graph, cfg: &SearchConfig) -> Result<Vec<ButterflyCertificate>, SquareError> {
    if g.n() > cfg.max_n {
        return Err(SquareError::Undecided { n: g.n(), max_n: cfg.max_n });
    }
    Ok(butterfly_candidates(g)
        .filter_map(|phi| ButterflyCertificate::from_involution(g, phi).ok())
        .collect())
}

/// The root `F ∪ A0` with each fixed vertex labeled by its id in `g`.
///
/// The square of the result is checked against `g` through the bijection
/// sending the second copy of `a ∈ A0` to `φ(a)`.
pub fn extract_root(g: &Graph, cert: &ButterflyCertificate) -> Result<PartiallyLabeledGraph, SquareError> {
    check_certificate(g, cert)?;
    let vertices = cert.root_vertices();
    let host = g.induced_subgraph(&vertices);
    let labels: BTreeMap<u32, usize> = vertices
        .iter()
        .enumerate()
        .filter(|(_, &v)| cert.fixed.contains(v))
        .map(|(i, &v)| (v as u32, i))
        .collect();
    let root = PartiallyLabeledGraph::new(host, labels)?;
    let (sq, twins) = square(&root);
    let to_g: Vec<usize> = (0..sq.n())
        .map(|x| {
            let v = vertices[twins.origin(x)];
            if twins.fixed().contains(x) || x < twins.twin(x) {
                v
            } else {
                cert.phi.apply(v)
            }
        })
        .collect();
    let ok = VertexPermutation::new(to_g).map(|p| p.is_isomorphism(&sq, g)).unwrap_or(false);
    assert!(ok, "root square does not reproduce the graph for a checked certificate");
    Ok(root)
}

/// One root per isomorphism class, where isomorphisms must carry labeled
/// vertices onto labeled vertices.
pub fn enumerate_roots(g: &Graph, cfg: &SearchConfig) -> Result<Vec<PartiallyLabeledGraph>, SquareError> {
    if g.n() == 0 {
        return Err(SquareError::EmptyGraph);
    }
    let mut seen = HashSet::new();
    let mut roots = Vec::new();
    for cert in butterfly_involutions(g, cfg)? {
        let comps = g.components_within(&cert.phi.moved_points());
        let mut pairs: Vec<(VertexSet, VertexSet)> = Vec::new();
        for c in comps {
            if !pairs.iter().any(|(_, img)| *img == c) {
                let img = cert.phi.image(&c);
                pairs.push((c, img));
            }
        }
        // Flipping every pair at once gives an isomorphic root, so the first pair stays put.
        let choices = 1u64 << (pairs.len() - 1);
        for mask in 0..choices {
            let mut a0 = VertexSet::new(g.n());
            for (i, (c, img)) in pairs.iter().enumerate() {
                let flip = i > 0 && mask >> (i - 1) & 1 == 1;
                a0.union_with(if flip { img } else { c });
            }
            let sided = ButterflyCertificate {
                phi: cert.phi.clone(),
                fixed: cert.fixed.clone(),
                a1: cert.phi.image(&a0),
                a0,
            };
            let root = extract_root(g, &sided)?;
            let code = canonical_code(root.graph(), Some(&root.labeled_set()));
            if seen.insert(code) {
                roots.push(root);
            }
        }
    }
    Ok(roots)
}

/// A cut-set `S` and two components of `G - S` whose `S`-extensions are
/// isomorphic by a map fixing `S` pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSetCertificate {
    pub cut: VertexSet,
    pub h1: VertexSet,
    pub h2: VertexSet,
    /// `iso[v]` for `v ∈ H1 ∪ S`; other entries are `usize::MAX`.
    pub iso: Vec<usize>,
}

impl CutSetCertificate {
    /// The involution exchanging `H1` and `H2` and fixing everything else.
    pub fn involution(&self) -> VertexPermutation {
        let n = self.iso.len();
        let mut map: Vec<usize> = (0..n).collect();
        for v in self.h1.iter() {
            map[v] = self.iso[v];
            map[self.iso[v]] = v;
        }
        VertexPermutation::new(map).expect("h1 and h2 are disjoint")
    }
}

/// Searches cut-sets in order of size, then by bit pattern.
pub fn cut_set_square(g: &Graph, cfg: &SearchConfig) -> Result<Option<CutSetCertificate>, SquareError> {
    let n = g.n();
    if !g.is_connected() {
        return Err(SquareError::Disconnected);
    }
    if n > cfg.max_n {
        return Err(SquareError::Undecided { n, max_n: cfg.max_n });
    }
    for size in 1..n {
        for cut in subsets_of_size(n, size) {
            let rest = g.vertex_set().difference(&cut);
            let comps = g.components_within(&rest);
            for i in 0..comps.len() {
                for j in i + 1..comps.len() {
                    if comps[i].len() != comps[j].len() {
                        continue;
                    }
                    if let Some(iso) = fixing_iso(g, &cut, &comps[i], &comps[j]) {
                        return Ok(Some(CutSetCertificate {
                            cut,
                            h1: comps[i].clone(),
                            h2: comps[j].clone(),
                            iso,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = VertexSet::from_vertices(n, idx.iter().copied());
        // advance to the next k-combination
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Isomorphism of `G[h1 ∪ S]` onto `G[h2 ∪ S]` that is the identity on `S`,
/// found by plain backtracking over `h1`.
fn fixing_iso(g: &Graph, cut: &VertexSet, h1: &VertexSet, h2: &VertexSet) -> Option<Vec<usize>> {
    let src = h1.to_vec();
    let mut map = vec![usize::MAX; g.n()];
    for s in cut.iter() {
        map[s] = s;
    }
    let mut used = VertexSet::new(g.n());
    fn go(g: &Graph, cut: &VertexSet, src: &[usize], h2: &VertexSet, i: usize, map: &mut [usize], used: &mut VertexSet) -> bool {
        let Some(&v) = src.get(i) else {
            return true;
        };
        for w in h2.iter() {
            if used.contains(w) || g.degree(v) != g.degree(w) {
                continue;
            }
            let consistent = cut.iter().all(|s| g.has_edge(v, s) == g.has_edge(w, s))
                && src[..i].iter().all(|&u| g.has_edge(v, u) == g.has_edge(w, map[u]));
            if !consistent {
                continue;
            }
            map[v] = w;
            used.insert(w);
            if go(g, cut, src, h2, i + 1, map, used) {
                return true;
            }
            used.remove(w);
            map[v] = usize::MAX;
        }
        false
    }
    go(g, cut, &src, h2, 0, &mut map, &mut used).then_some(map)
}

/// Each 2-orbit of `phi` contributes its smaller vertex.
pub fn default_sides(phi: &VertexPermutation) -> VertexSet {
    VertexSet::from_vertices(phi.len(), (0..phi.len()).filter(|&v| v < phi.apply(v)))
}

/// Deletes every `A0`–`A1` edge; the result is a square with certificate `(phi, A0)`.
pub fn prune_to_square(
    g: &Graph,
    phi: &VertexPermutation,
    a0: &VertexSet,
) -> Result<(Graph, ButterflyCertificate), SquareError> {
    check_map(g, phi)?;
    let fixed = phi.fixed_points();
    if fixed.is_empty() {
        return Err(CertificateViolation::NoFixedVertex.into());
    }
    if phi.is_identity() {
        return Err(CertificateViolation::NoMovedVertex.into());
    }
    for v in 0..g.n() {
        let w = phi.apply(v);
        if v != w && a0.contains(v) == a0.contains(w) {
            return Err(SquareError::BadSideChoice(v.min(w)));
        }
        if v == w && a0.contains(v) {
            return Err(SquareError::BadSideChoice(v));
        }
    }
    let a1 = phi.image(a0);
    let mut pruned = g.clone();
    for u in a0.iter() {
        for v in g.neighbors(u).intersection(&a1).iter() {
            pruned.remove_edge(u, v);
        }
    }
    let cert = ButterflyCertificate {
        phi: phi.clone(),
        fixed,
        a0: a0.clone(),
        a1,
    };
    check_certificate(&pruned, &cert)?;
    Ok((pruned, cert))
}

/// Edge count after pruning the circulant `C_n(d)` along the reflection
/// through `0` and `n/2`.
///
/// Each difference `d < n/2` loses `2(d - 1)` of its `n` edges. The
/// difference `n/2` contributes `n/2` edges, of which only the one joining
/// `0` and `n/2` survives.
pub fn pruned_circulant_edge_count(n: usize, d: &[usize]) -> Result<usize, SquareError> {
    if n < 4 || n % 2 != 0 {
        return Err(SquareError::Parameters(format!("n = {n} must be even and at least 4")));
    }
    if d.is_empty() || d[0] < 1 || d.windows(2).any(|w| w[0] >= w[1]) || *d.last().unwrap() > n / 2 {
        return Err(SquareError::Parameters(format!(
            "differences {d:?} must be strictly increasing within 1..={}",
            n / 2
        )));
    }
    let k = d.len();
    let last = d[k - 1];
    if last != n / 2 {
        Ok(n * k - 2 * d.iter().map(|x| x - 1).sum::<usize>())
    } else {
        Ok(n * (k - 1) + 1 - 2 * d[..k - 1].iter().map(|x| x - 1).sum::<usize>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn circulant(n: usize, diffs: &[usize]) -> Graph {
        Graph::new(n, (0..n).flat_map(|i| diffs.iter().map(move |d| (i, (i + d) % n)))).unwrap()
    }

    fn wheel(n: usize) -> Graph {
        Graph::new(n + 1, (0..n).flat_map(|i| [(i, (i + 1) % n), (i, n)])).unwrap()
    }

    fn reflection(n: usize) -> VertexPermutation {
        VertexPermutation::new((0..n).map(|i| (n - i) % n).collect()).unwrap()
    }

    #[test]
    fn wheel_reflection_certificate() {
        let g = wheel(6);
        let phi = VertexPermutation::from_swaps(7, &[(1, 5), (2, 4)]).unwrap();
        let cert = ButterflyCertificate::from_involution(&g, phi).unwrap();
        assert_eq!(cert.fixed.to_vec(), vec![0, 3, 6]);
        assert_eq!(cert.a0.to_vec(), vec![1, 2]);
        assert_eq!(check_certificate(&g, &cert), Ok(()));
        let root = extract_root(&g, &cert).unwrap();
        assert_eq!(root.graph().n(), 5);
    }

    #[test]
    fn antipodal_map_on_c4_fails_first_condition() {
        let g = cycle(4);
        let phi = VertexPermutation::new(vec![2, 3, 0, 1]).unwrap();
        let cert = ButterflyCertificate {
            fixed: phi.fixed_points(),
            a0: VertexSet::from_vertices(4, [0, 1]),
            a1: VertexSet::from_vertices(4, [2, 3]),
            phi,
        };
        let err = check_certificate(&g, &cert).unwrap_err();
        assert_eq!(err.condition(), Some(1));
    }

    #[test]
    fn c10_13_explicit_involution() {
        let g = circulant(10, &[1, 3]);
        let phi = VertexPermutation::from_swaps(10, &[(1, 9), (4, 6)]).unwrap();
        let cert = ButterflyCertificate::from_involution(&g, phi).unwrap();
        assert_eq!(check_certificate(&g, &cert), Ok(()));
    }

    #[test]
    fn small_verdicts() {
        assert!(is_square(&cycle(6)).unwrap().verdict.is_square());
        let k4 = is_square(&Graph::complete(4)).unwrap();
        assert_eq!(k4.verdict, Verdict::NotSquare);
        assert!(!is_square(&circulant(9, &[1, 3])).unwrap().verdict.is_square());
        assert_eq!(is_square(&Graph::empty(0)), Err(SquareError::EmptyGraph));
        assert_eq!(
            is_square(&cycle(21)),
            Err(SquareError::Undecided { n: 21, max_n: 20 })
        );
    }

    #[test]
    fn verdict_does_not_depend_on_filters() {
        let bare = SearchConfig { chromatic_filter: false, ..SearchConfig::default() };
        for n in 5..12 {
            let a = is_square(&cycle(n)).unwrap().verdict.is_square();
            let b = is_square_with(&cycle(n), &bare).unwrap();
            assert_eq!(a, b.verdict.is_square());
            assert_eq!(b.decided_by, DecidedBy::ExhaustiveSearch);
        }
    }

    #[test]
    fn roots_of_cycles_and_paths() {
        let cfg = SearchConfig::default();
        let roots = enumerate_roots(&cycle(8), &cfg).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(are_isomorphic(roots[0].graph(), &path(5), None).is_some());
        let ends: Vec<usize> = roots[0].labels().values().map(|&v| roots[0].graph().degree(v)).collect();
        assert_eq!(ends, vec![1, 1]);

        let phi = VertexPermutation::new(vec![4, 3, 2, 1, 0]).unwrap();
        let cert = ButterflyCertificate::from_involution(&path(5), phi).unwrap();
        let root = extract_root(&path(5), &cert).unwrap();
        assert!(are_isomorphic(root.graph(), &path(3), None).is_some());
        assert_eq!(root.labels().len(), 1);
        assert_eq!(root.graph().degree(root.labels()[&2]), 1);
    }

    #[test]
    fn cut_sets() {
        let cfg = SearchConfig::default();
        let cert = cut_set_square(&path(5), &cfg).unwrap().unwrap();
        assert_eq!(cert.cut.to_vec(), vec![2]);
        assert!(cert.involution().is_automorphism_of(&path(5)));
        assert_eq!(cut_set_square(&cycle(5), &cfg), Ok(None));
        assert_eq!(
            cut_set_square(&Graph::empty(2), &cfg),
            Err(SquareError::Disconnected)
        );
    }

    #[test]
    fn pruning_circulants() {
        let g = circulant(8, &[1, 2]);
        let phi = reflection(8);
        let a0 = default_sides(&phi);
        assert_eq!(a0.to_vec(), vec![1, 2, 3]);
        let (pruned, cert) = prune_to_square(&g, &phi, &a0).unwrap();
        assert_eq!(g.edge_count() - pruned.edge_count(), 2);
        assert_eq!(pruned.edge_count(), 14);
        assert_eq!(check_certificate(&pruned, &cert), Ok(()));

        let (c6, _) = prune_to_square(&cycle(6), &reflection(6), &default_sides(&reflection(6))).unwrap();
        assert_eq!(c6, cycle(6));

        let id = VertexPermutation::identity(6);
        assert!(prune_to_square(&cycle(6), &id, &VertexSet::new(6)).is_err());
    }

    #[test]
    fn pruned_counts_match_construction() {
        for (n, d) in [
            (8, vec![1, 2]),
            (10, vec![1, 3]),
            (8, vec![1, 4]),
            (12, vec![1, 2, 3]),
            (6, vec![1]),
            (12, vec![2, 5, 6]),
        ] {
            let phi = reflection(n);
            let (pruned, _) = prune_to_square(&circulant(n, &d), &phi, &default_sides(&phi)).unwrap();
            assert_eq!(pruned_circulant_edge_count(n, &d), Ok(pruned.edge_count()), "{n} {d:?}");
        }
        assert_eq!(pruned_circulant_edge_count(8, &[1, 4]), Ok(9));
        assert!(pruned_circulant_edge_count(7, &[1]).is_err());
        assert!(pruned_circulant_edge_count(8, &[2, 2]).is_err());
        assert!(pruned_circulant_edge_count(8, &[5]).is_err());
    }
}
