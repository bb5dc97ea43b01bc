//! Cartesian, tensor, strong and lexicographic products, the join, and
//! lifting butterfly certificates through them.
//!
//! Product vertices are numbered row-major: `(x, y) ↦ x·|V(right)| + y`.
//! The join lists the left factor's vertices first.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, VertexPermutation, VertexSet};
use crate::iso::are_isomorphic;
use crate::squareness::{
    check_certificate, is_square_with, ButterflyCertificate, CertificateViolation, SearchConfig, SquareError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("product factors must have at least one vertex")]
    EmptyFactor,
    #[error("unknown product kind `{0}` (expected cartesian, tensor, strong, lex or join)")]
    UnknownKind(String),
    #[error("fiber vertex {fiber} out of range for a factor on {n} vertices")]
    FiberOutOfRange { fiber: usize, n: usize },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(#[from] CertificateViolation),
    #[error(transparent)]
    Square(#[from] SquareError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Cartesian,
    Tensor,
    Strong,
    Lexicographic,
    Join,
}

impl ProductKind {
    pub const ALL: [ProductKind; 5] = [
        ProductKind::Cartesian,
        ProductKind::Tensor,
        ProductKind::Strong,
        ProductKind::Lexicographic,
        ProductKind::Join,
    ];

    pub fn keyword(&self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Tensor => "tensor",
            ProductKind::Strong => "strong",
            ProductKind::Lexicographic => "lex",
            ProductKind::Join => "join",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for ProductKind {
    type Err = ProductError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cartesian" => Ok(ProductKind::Cartesian),
            "tensor" => Ok(ProductKind::Tensor),
            "strong" => Ok(ProductKind::Strong),
            "lex" | "lexicographic" => Ok(ProductKind::Lexicographic),
            "join" => Ok(ProductKind::Join),
            other => Err(ProductError::UnknownKind(other.to_string())),
        }
    }
}

/// `G ∇ H`: disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut edges = g.disjoint_union(h).edges();
    edges.extend((0..g.n()).flat_map(|x| (0..h.n()).map(move |y| (x, g.n() + y))));
    Graph::new(g.n() + h.n(), edges).expect("join edges in range")
}

pub fn product(kind: ProductKind, g: &Graph, h: &Graph) -> Result<Graph, ProductError> {
    if g.n() == 0 || h.n() == 0 {
        return Err(ProductError::EmptyFactor);
    }
    if kind == ProductKind::Join {
        return Ok(join(g, h));
    }
    let m = h.n();
    let mut edges = Vec::new();
    for (a, b) in pairs(g.n() * m) {
        let (g1, h1, g2, h2) = (a / m, a % m, b / m, b % m);
        let ge = g.has_edge(g1, g2);
        let he = h.has_edge(h1, h2);
        let adjacent = match kind {
            ProductKind::Cartesian => (g1 == g2 && he) || (h1 == h2 && ge),
            ProductKind::Tensor => ge && he,
            ProductKind::Strong => (g1 == g2 && he) || (h1 == h2 && ge) || (ge && he),
            ProductKind::Lexicographic => ge || (g1 == g2 && he),
            ProductKind::Join => unreachable!(),
        };
        if adjacent {
            edges.push((a, b));
        }
    }
    Ok(Graph::new(g.n() * m, edges).expect("product edges in range"))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

/// Which factor carries the certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Product `G ⋆ H`; every copy of `G` is moved.
    Left,
    /// Product `H ⋆ G`. The lexicographic lift moves only the copy of `G`
    /// over `fiber`; the other kinds move every copy and ignore `fiber`.
    Right { fiber: usize },
}

/// Lifts a certificate of `g` to the product of `g` with `h`.
pub fn lift_certificate(
    kind: ProductKind,
    g: &Graph,
    cert: &ButterflyCertificate,
    h: &Graph,
    orientation: Orientation,
) -> Result<ButterflyCertificate, ProductError> {
    check_certificate(g, cert)?;
    if g.n() == 0 || h.n() == 0 {
        return Err(ProductError::EmptyFactor);
    }
    let (n, m) = (g.n(), h.n());
    let total = n + if kind == ProductKind::Join { m } else { n * m - n };
    let mut map: Vec<usize> = (0..total).collect();
    let mut a0 = VertexSet::new(total);
    let mut put = |from: usize, to: usize, side0: bool, map: &mut Vec<usize>| {
        map[from] = to;
        if side0 {
            a0.insert(from);
        }
    };
    match (kind, orientation) {
        (ProductKind::Join, Orientation::Left) => {
            for x in 0..n {
                put(x, cert.phi.apply(x), cert.a0.contains(x), &mut map);
            }
        }
        (ProductKind::Join, Orientation::Right { .. }) => {
            for x in 0..n {
                put(m + x, m + cert.phi.apply(x), cert.a0.contains(x), &mut map);
            }
        }
        (_, Orientation::Left) => {
            for x in 0..n {
                for y in 0..m {
                    put(x * m + y, cert.phi.apply(x) * m + y, cert.a0.contains(x), &mut map);
                }
            }
        }
        (ProductKind::Lexicographic, Orientation::Right { fiber }) => {
            if fiber >= m {
                return Err(ProductError::FiberOutOfRange { fiber, n: m });
            }
            for x in 0..n {
                put(fiber * n + x, fiber * n + cert.phi.apply(x), cert.a0.contains(x), &mut map);
            }
        }
        (_, Orientation::Right { .. }) => {
            for y in 0..m {
                for x in 0..n {
                    put(y * n + x, y * n + cert.phi.apply(x), cert.a0.contains(x), &mut map);
                }
            }
        }
    }
    let phi = VertexPermutation::new(map).expect("lifted map is a bijection");
    let a1 = phi.image(&a0);
    Ok(ButterflyCertificate {
        fixed: phi.fixed_points(),
        phi,
        a0,
        a1,
    })
}

/// The product graph a lift with this orientation lives on.
pub fn oriented_product(kind: ProductKind, g: &Graph, h: &Graph, orientation: Orientation) -> Result<Graph, ProductError> {
    match orientation {
        Orientation::Left => product(kind, g, h),
        Orientation::Right { .. } => product(kind, h, g),
    }
}

/// First pair of distinct components with isomorphic induced subgraphs.
pub fn isomorphic_component_pair(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let comps = g.components();
    let parts: Vec<Graph> = comps.iter().map(|c| g.induced_subgraph(c)).collect();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            if are_isomorphic(&parts[i], &parts[j], None).is_some() {
                return Some((comps[i].clone(), comps[j].clone()));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JoinReason {
    IsomorphicComponents { side: Side, c1: Vec<usize>, c2: Vec<usize> },
    SquareFactor(Side),
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinDecision {
    pub square: bool,
    pub reason: JoinReason,
    /// A certificate on `G ∇ H` when `square` holds.
    pub certificate: Option<ButterflyCertificate>,
}

/// Decides squareness of `G ∇ H` from the factors alone.
pub fn join_is_square(g: &Graph, h: &Graph, cfg: &SearchConfig) -> Result<JoinDecision, ProductError> {
    if g.n() == 0 || h.n() == 0 {
        return Err(ProductError::EmptyFactor);
    }
    let joined = join(g, h);
    let offset = |side: Side| if side == Side::Left { 0 } else { g.n() };
    for (side, factor) in [(Side::Left, g), (Side::Right, h)] {
        if let Some((c1, c2)) = isomorphic_component_pair(factor) {
            let a = factor.induced_subgraph(&c1);
            let b = factor.induced_subgraph(&c2);
            let iso = are_isomorphic(&a, &b, None).expect("pair is isomorphic");
            let swaps: Vec<(usize, usize)> = c1
                .iter()
                .enumerate()
                .map(|(i, &x)| (x + offset(side), c2[iso.apply(i)] + offset(side)))
                .collect();
            let phi = VertexPermutation::from_swaps(joined.n(), &swaps).expect("components are disjoint");
            let a0 = VertexSet::from_vertices(joined.n(), c1.iter().map(|&x| x + offset(side)));
            let cert = ButterflyCertificate::with_sides(&joined, phi, a0)?;
            return Ok(JoinDecision {
                square: true,
                reason: JoinReason::IsomorphicComponents { side, c1, c2 },
                certificate: Some(cert),
            });
        }
    }
    for (side, factor, other) in [(Side::Left, g, h), (Side::Right, h, g)] {
        if let Some(cert) = is_square_with(factor, cfg)?.verdict.certificate() {
            let orientation = match side {
                Side::Left => Orientation::Left,
                Side::Right => Orientation::Right { fiber: 0 },
            };
            let lifted = lift_certificate(ProductKind::Join, factor, cert, other, orientation)?;
            return Ok(JoinDecision {
                square: true,
                reason: JoinReason::SquareFactor(side),
                certificate: Some(lifted),
            });
        }
    }
    Ok(JoinDecision {
        square: false,
        reason: JoinReason::Neither,
        certificate: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::squareness::is_square;

    fn k2() -> Graph {
        Graph::complete(2)
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn k2_products() {
        let c = product(ProductKind::Cartesian, &k2(), &k2()).unwrap();
        assert!(are_isomorphic(&c, &cycle(4), None).is_some());
        let t = product(ProductKind::Tensor, &k2(), &k2()).unwrap();
        assert_eq!(t.edges(), vec![(0, 3), (1, 2)]);
        assert_eq!(t.components().len(), 2);
        for kind in [ProductKind::Strong, ProductKind::Lexicographic, ProductKind::Join] {
            assert_eq!(product(kind, &k2(), &k2()).unwrap(), Graph::complete(4));
        }
        assert_eq!(product(ProductKind::Cartesian, &Graph::empty(0), &k2()), Err(ProductError::EmptyFactor));
    }

    #[test]
    fn keywords_round_trip() {
        for kind in ProductKind::ALL {
            assert_eq!(kind.keyword().parse::<ProductKind>(), Ok(kind));
        }
        assert!("box".parse::<ProductKind>().is_err());
    }

    #[test]
    fn lifts_from_c4() {
        let g = cycle(4);
        let phi = VertexPermutation::from_swaps(4, &[(1, 3)]).unwrap();
        let cert = ButterflyCertificate::from_involution(&g, phi).unwrap();
        let p3 = path(3);
        let lifted = lift_certificate(ProductKind::Cartesian, &g, &cert, &p3, Orientation::Left).unwrap();
        let prod = product(ProductKind::Cartesian, &g, &p3).unwrap();
        assert_eq!(check_certificate(&prod, &lifted), Ok(()));
        assert_eq!(lifted.fixed.to_vec(), vec![0, 1, 2, 6, 7, 8]);

        let right = Orientation::Right { fiber: 0 };
        let lex = lift_certificate(ProductKind::Lexicographic, &g, &cert, &p3, right).unwrap();
        let prod = oriented_product(ProductKind::Lexicographic, &g, &p3, right).unwrap();
        assert_eq!(check_certificate(&prod, &lex), Ok(()));
        assert_eq!(lex.phi.moved_points().to_vec(), vec![1, 3]);
        assert!(matches!(
            lift_certificate(ProductKind::Lexicographic, &g, &cert, &p3, Orientation::Right { fiber: 3 }),
            Err(ProductError::FiberOutOfRange { .. })
        ));
    }

    #[test]
    fn join_lift_gives_wheel() {
        let c6 = cycle(6);
        let phi = VertexPermutation::new(vec![0, 5, 4, 3, 2, 1]).unwrap();
        let cert = ButterflyCertificate::from_involution(&c6, phi).unwrap();
        let k1 = Graph::empty(1);
        let right = Orientation::Right { fiber: 0 };
        let lifted = lift_certificate(ProductKind::Join, &c6, &cert, &k1, right).unwrap();
        let w6 = oriented_product(ProductKind::Join, &c6, &k1, right).unwrap();
        assert_eq!(check_certificate(&w6, &lifted), Ok(()));
        assert!(lifted.fixed.contains(0));
    }

    #[test]
    fn join_decisions() {
        let cfg = SearchConfig::default();
        assert!(!join_is_square(&k2(), &k2(), &cfg).unwrap().square);
        let two_triangles = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let d = join_is_square(&two_triangles, &Graph::empty(1), &cfg).unwrap();
        assert!(d.square);
        assert!(matches!(d.reason, JoinReason::IsomorphicComponents { side: Side::Left, .. }));
        let joined = join(&two_triangles, &Graph::empty(1));
        assert_eq!(check_certificate(&joined, d.certificate.as_ref().unwrap()), Ok(()));
        assert!(!join_is_square(&Graph::empty(1), &path(4), &cfg).unwrap().square);
        assert!(!is_square(&join(&Graph::empty(1), &path(4))).unwrap().verdict.is_square());
    }

    #[test]
    fn component_pairs() {
        let two = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(isomorphic_component_pair(&two), Some((vec![0, 1, 2], vec![3, 4, 5])));
        let mixed = Graph::complete(3).disjoint_union(&cycle(4));
        assert_eq!(isomorphic_component_pair(&mixed), None);
        assert_eq!(isomorphic_component_pair(&Graph::empty(2)), Some((vec![0], vec![1])));
    }
}
