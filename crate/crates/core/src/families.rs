//! Named graph families, their expected squareness and known roots.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gluing::PartiallyLabeledGraph;
use crate::graph::{Graph, VertexPermutation, VertexSet};
use crate::products::join;
use crate::squareness::{extract_root, ButterflyCertificate};

/// Families larger than this many vertices are refused.
pub const MAX_FAMILY_VERTICES: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    UnknownKind(String),
    #[error("malformed family spec `{0}`: {1}")]
    Syntax(String, String),
    #[error("invalid parameters for {0}: {1}")]
    Parameters(&'static str, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Multipartite(Vec<usize>),
    Wheel(usize),
    Circulant { n: usize, d: Vec<usize> },
    Johnson { n: usize, k: usize },
    Hypercube(usize),
    Fan { m: usize, n: usize },
    Independent(usize),
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl FamilySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Path(_) => "path",
            FamilySpec::Complete(_) => "complete",
            FamilySpec::Multipartite(_) => "multipartite",
            FamilySpec::Wheel(_) => "wheel",
            FamilySpec::Circulant { .. } => "circulant",
            FamilySpec::Johnson { .. } => "johnson",
            FamilySpec::Hypercube(_) => "hypercube",
            FamilySpec::Fan { .. } => "fan",
            FamilySpec::Independent(_) => "independent",
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            FamilySpec::Cycle(n) | FamilySpec::Path(n) | FamilySpec::Complete(n) | FamilySpec::Independent(n) => *n,
            FamilySpec::Multipartite(parts) => parts.iter().sum(),
            FamilySpec::Wheel(n) => n + 1,
            FamilySpec::Circulant { n, .. } => *n,
            FamilySpec::Johnson { n, k } => binomial(*n, *k),
            FamilySpec::Hypercube(n) => 1usize.checked_shl(*n as u32).unwrap_or(usize::MAX),
            FamilySpec::Fan { m, n } => m + n,
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let kind = self.kind();
        let bad = |msg: String| Err(FamilyError::Parameters(kind, msg));
        match self {
            FamilySpec::Cycle(n) | FamilySpec::Wheel(n) if *n < 3 => return bad(format!("n = {n} must be at least 3")),
            FamilySpec::Path(n) | FamilySpec::Complete(n) | FamilySpec::Independent(n) if *n < 1 => {
                return bad("n must be at least 1".into())
            }
            FamilySpec::Multipartite(parts) if parts.is_empty() || parts.contains(&0) => {
                return bad("part sizes must be positive and there must be at least one part".into())
            }
            FamilySpec::Circulant { n, d } => {
                if *n < 3 {
                    return bad(format!("n = {n} must be at least 3"));
                }
                if d.is_empty() || d[0] == 0 || d.windows(2).any(|w| w[0] >= w[1]) || *d.last().unwrap() > n / 2 {
                    return bad(format!("differences {d:?} must be strictly increasing within 1..={}", n / 2));
                }
            }
            FamilySpec::Johnson { n, k } if *k < 1 || k > n => return bad(format!("need 1 <= k <= n, got n = {n}, k = {k}")),
            FamilySpec::Hypercube(n) if *n < 1 => return bad("dimension must be at least 1".into()),
            FamilySpec::Fan { m, n } if *m < 1 || *n < 1 => return bad("m and n must be at least 1".into()),
            _ => {}
        }
        if self.vertex_count() > MAX_FAMILY_VERTICES {
            return bad(format!("more than {MAX_FAMILY_VERTICES} vertices"));
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Cycle(n) | FamilySpec::Path(n) | FamilySpec::Complete(n) | FamilySpec::Wheel(n) => {
                write!(f, "{}:{n}", self.kind())
            }
            FamilySpec::Independent(n) | FamilySpec::Hypercube(n) => write!(f, "{}:{n}", self.kind()),
            FamilySpec::Multipartite(parts) => write!(f, "multipartite:{}", list(parts)),
            FamilySpec::Circulant { n, d } => write!(f, "circulant:{n}:{}", list(d)),
            FamilySpec::Johnson { n, k } => write!(f, "johnson:{n}:{k}"),
            FamilySpec::Fan { m, n } => write!(f, "fan:{m}:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// `kind:param[:param]`, with comma-separated lists inside a parameter.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = |msg: &str| FamilyError::Syntax(s.to_string(), msg.to_string());
        let mut parts = s.trim().split(':');
        let kind = parts.next().unwrap_or_default();
        let params: Vec<Vec<usize>> = parts
            .map(|p| {
                p.split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| syntax("parameters must be non-negative integers"))
            })
            .collect::<Result<_, _>>()?;
        let scalar = |i: usize| -> Result<usize, FamilyError> {
            match params.get(i).map(Vec::as_slice) {
                Some([x]) => Ok(*x),
                _ => Err(syntax(&format!("parameter {} must be a single integer", i + 1))),
            }
        };
        let arity = |want: usize| -> Result<(), FamilyError> {
            if params.len() == want {
                Ok(())
            } else {
                Err(syntax(&format!("`{kind}` takes {want} parameter(s)")))
            }
        };
        let spec = match kind {
            "cycle" => {
                arity(1)?;
                FamilySpec::Cycle(scalar(0)?)
            }
            "path" => {
                arity(1)?;
                FamilySpec::Path(scalar(0)?)
            }
            "complete" => {
                arity(1)?;
                FamilySpec::Complete(scalar(0)?)
            }
            "independent" | "empty" => {
                arity(1)?;
                FamilySpec::Independent(scalar(0)?)
            }
            "wheel" => {
                arity(1)?;
                FamilySpec::Wheel(scalar(0)?)
            }
            "hypercube" => {
                arity(1)?;
                FamilySpec::Hypercube(scalar(0)?)
            }
            "multipartite" | "complete_multipartite" => {
                arity(1)?;
                FamilySpec::Multipartite(params[0].clone())
            }
            "circulant" => {
                arity(2)?;
                FamilySpec::Circulant { n: scalar(0)?, d: params[1].clone() }
            }
            "johnson" => {
                arity(2)?;
                FamilySpec::Johnson { n: scalar(0)?, k: scalar(1)? }
            }
            "fan" => {
                arity(2)?;
                FamilySpec::Fan { m: scalar(0)?, n: scalar(1)? }
            }
            other => return Err(FamilyError::UnknownKind(other.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn circulant(n: usize, d: &[usize]) -> Graph {
    Graph::new(n, (0..n).flat_map(|i| d.iter().map(move |x| (i, (i + x) % n)))).expect("circulant edges in range")
}

fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges in range")
}

pub fn generate(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    spec.validate()?;
    Ok(match spec {
        FamilySpec::Cycle(n) => circulant(*n, &[1]),
        FamilySpec::Path(n) => path(*n),
        FamilySpec::Complete(n) => Graph::complete(*n),
        FamilySpec::Independent(n) => Graph::empty(*n),
        FamilySpec::Multipartite(parts) => {
            let mut part_of = Vec::new();
            for (i, &a) in parts.iter().enumerate() {
                part_of.extend(std::iter::repeat_n(i, a));
            }
            let n = part_of.len();
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, edges.filter(|&(u, v)| part_of[u] != part_of[v])).expect("edges in range")
        }
        FamilySpec::Wheel(n) => {
            let rim = circulant(*n, &[1]);
            join(&rim, &Graph::empty(1))
        }
        FamilySpec::Circulant { n, d } => circulant(*n, d),
        FamilySpec::Johnson { n, k } => {
            let sets = k_subsets(*n, *k);
            let mut edges = Vec::new();
            for i in 0..sets.len() {
                for j in i + 1..sets.len() {
                    let common = sets[i].iter().filter(|x| sets[j].contains(x)).count();
                    if common + 1 == *k {
                        edges.push((i, j));
                    }
                }
            }
            Graph::new(sets.len(), edges).expect("edges in range")
        }
        FamilySpec::Hypercube(dim) => {
            let n = 1usize << dim;
            let edges = (0..n).flat_map(|v| (0..*dim).map(move |b| (v, v ^ (1 << b)))).filter(|(u, v)| u < v);
            Graph::new(n, edges).expect("edges in range")
        }
        FamilySpec::Fan { m, n } => join(&Graph::empty(*m), &path(*n)),
    })
}

/// Display names for the vertices of `generate(spec)`.
pub fn vertex_names(spec: &FamilySpec) -> Result<Vec<String>, FamilyError> {
    spec.validate()?;
    Ok(match spec {
        FamilySpec::Johnson { n, k } => k_subsets(*n, *k)
            .into_iter()
            .map(|s| format!("{{{}}}", s.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect(),
        FamilySpec::Hypercube(dim) => (0..1usize << dim).map(|v| format!("{v:0width$b}", width = *dim)).collect(),
        FamilySpec::Wheel(n) => (0..*n).map(|i| i.to_string()).chain(["hub".to_string()]).collect(),
        FamilySpec::Fan { m, n } => (0..*m).map(|i| format!("i{i}")).chain((0..*n).map(|i| format!("p{i}"))).collect(),
        other => (0..other.vertex_count()).map(|i| i.to_string()).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Expected {
    Square,
    NotSquare,
    OutsideTheoremScope,
}

impl Expected {
    pub fn as_str(&self) -> &'static str {
        match self {
            Expected::Square => "square",
            Expected::NotSquare => "not-square",
            Expected::OutsideTheoremScope => "outside-theorem-scope",
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Expected verdict plus the rule that gives it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVerdict {
    pub expected: Expected,
    pub rule: &'static str,
}

fn verdict(square: bool, rule: &'static str) -> FamilyVerdict {
    FamilyVerdict {
        expected: if square { Expected::Square } else { Expected::NotSquare },
        rule,
    }
}

fn outside(rule: &'static str) -> FamilyVerdict {
    FamilyVerdict {
        expected: Expected::OutsideTheoremScope,
        rule,
    }
}

fn edgeless(n: usize) -> FamilyVerdict {
    verdict(n >= 3, "edgeless graph: any two vertices are twins once n >= 3; I_1 and I_2 have no involution with a fixed vertex")
}

/// The verdict the classification theorems predict for `spec`.
pub fn classify_family(spec: &FamilySpec) -> Result<FamilyVerdict, FamilyError> {
    spec.validate()?;
    Ok(match spec {
        FamilySpec::Cycle(n) => verdict(n % 2 == 0, "C_n is a square iff n is even"),
        FamilySpec::Path(1) => verdict(false, "P_1 = K_1 is not a square"),
        FamilySpec::Path(n) => verdict(n % 2 == 1, "P_n is a square iff n is odd"),
        FamilySpec::Complete(_) => verdict(false, "K_n is never a square"),
        FamilySpec::Independent(n) => edgeless(*n),
        FamilySpec::Multipartite(parts) if parts.len() == 1 => edgeless(parts[0]),
        FamilySpec::Multipartite(parts) => {
            if parts.iter().any(|&a| a >= 2) {
                verdict(true, "complete multipartite with k >= 2 and some part of size >= 2 is a square")
            } else {
                verdict(false, "complete multipartite with all parts of size 1 is complete")
            }
        }
        FamilySpec::Wheel(n) => verdict(n % 2 == 0, "W_n is a square iff n is even"),
        FamilySpec::Circulant { n, d } => classify_circulant(*n, d),
        FamilySpec::Johnson { n, k } => {
            if *n == 2 * k {
                outside("J(n, k) with n = 2k is not covered")
            } else {
                verdict(false, "J(n, k) is not a square when n != 2k")
            }
        }
        FamilySpec::Hypercube(1) => verdict(false, "Q_1 = K_2 is not a square"),
        FamilySpec::Hypercube(_) => verdict(true, "Q_n is a square for n >= 2"),
        FamilySpec::Fan { m, n } => verdict(
            *m >= 2 || (*n >= 3 && n % 2 == 1),
            "F_{m,n} is a square iff m >= 2, or m = 1 and n >= 3 is odd",
        ),
    })
}

fn classify_circulant(n: usize, d: &[usize]) -> FamilyVerdict {
    if d == [1] {
        return verdict(n % 2 == 0, "C_n^{1} is the cycle C_n");
    }
    if d.len() >= 2 && d.iter().enumerate().all(|(i, &x)| x == i + 1) {
        // At n = 2k + 2 the only non-neighbour of i is i + k + 1, so the graph is K_{2,...,2}.
        if n == 2 * d.len() + 2 {
            return verdict(true, "C_{2k+2}^{1,...,k} is K_{2,...,2}, a complete multipartite square");
        }
        return verdict(false, "C_n^{1,...,k} with k >= 2 is not a square");
    }
    if d == [1, 3] {
        return if n >= 7 {
            verdict(n == 8 || n == 10, "C_n^{1,3} with n >= 7 is a square iff n is 8 or 10")
        } else {
            outside("C_n^{1,3} is only classified for n >= 7")
        };
    }
    if d.len() == 2 && d[0] == 1 && d[1] >= 4 {
        let dd = d[1];
        return if n > dd * dd {
            verdict(false, "C_n^{1,d} with d >= 4 and n >= d^2 + 1 is not a square")
        } else {
            outside("C_n^{1,d} with d >= 4 is only classified for n >= d^2 + 1")
        };
    }
    outside("no classification for this difference set")
}

fn reflection(n: usize, axis: usize) -> VertexPermutation {
    VertexPermutation::new((0..n).map(|i| (2 * axis + n - i) % n).collect()).expect("reflection is a bijection")
}

fn extend(p: &VertexPermutation, extra: usize) -> VertexPermutation {
    let mut map = p.as_slice().to_vec();
    map.extend(p.len()..p.len() + extra);
    VertexPermutation::new(map).expect("extension is a bijection")
}

/// A certificate taken from the constructive proofs, when one exists.
pub fn known_certificate(spec: &FamilySpec) -> Result<Option<ButterflyCertificate>, FamilyError> {
    let g = generate(spec)?;
    let n = g.n();
    let swap = |a: usize, b: usize| VertexPermutation::from_swaps(n, &[(a, b)]).expect("in range");
    let phi = match spec {
        FamilySpec::Cycle(n) if n % 2 == 0 => reflection(*n, 0),
        FamilySpec::Circulant { n, d } if d == &[1] && n % 2 == 0 => reflection(*n, 0),
        FamilySpec::Path(n) if n % 2 == 1 && *n >= 3 => VertexPermutation::new((0..*n).rev().collect()).expect("reversal"),
        FamilySpec::Wheel(m) if m % 2 == 0 => extend(&reflection(*m, 0), 1),
        FamilySpec::Independent(m) if *m >= 3 => swap(0, 1),
        FamilySpec::Multipartite(parts) if parts.len() == 1 && parts[0] >= 3 => swap(0, 1),
        FamilySpec::Multipartite(parts) if parts.len() >= 2 => {
            let mut start = 0;
            let mut found = None;
            for &a in parts {
                if a >= 2 {
                    found = Some(start);
                    break;
                }
                start += a;
            }
            match found {
                Some(s) => swap(s, s + 1),
                None => return Ok(None),
            }
        }
        FamilySpec::Hypercube(dim) if *dim >= 2 => {
            let (hi, lo) = (1usize << (dim - 1), 1usize << (dim - 2));
            let map = (0..n)
                .map(|v| {
                    let (a1, a2) = (v & hi != 0, v & lo != 0);
                    if a1 == a2 {
                        v
                    } else {
                        v ^ hi ^ lo
                    }
                })
                .collect();
            let phi = VertexPermutation::new(map).expect("bit swap is a bijection");
            // A0: a_1 = 0 and a_2 = 1
            let a0 = VertexSet::from_vertices(n, (0..n).filter(|&v| v & hi == 0 && v & lo != 0));
            let a1 = phi.image(&a0);
            return Ok(Some(ButterflyCertificate { fixed: phi.fixed_points(), phi, a0, a1 }));
        }
        FamilySpec::Circulant { n: 8, d } if d == &[1, 3] => swap(0, 2),
        FamilySpec::Circulant { n: 10, d } if d == &[1, 3] => {
            VertexPermutation::from_swaps(10, &[(1, 9), (4, 6)]).expect("in range")
        }
        FamilySpec::Fan { m, .. } if *m >= 2 => swap(0, 1),
        FamilySpec::Fan { m: 1, n: p } if *p >= 3 && p % 2 == 1 => {
            let mut map = vec![0];
            map.extend((0..*p).rev().map(|i| i + 1));
            VertexPermutation::new(map).expect("reversal")
        }
        _ => return Ok(None),
    };
    Ok(ButterflyCertificate::from_involution(&g, phi).ok())
}

/// The root given by [`known_certificate`].
pub fn known_root(spec: &FamilySpec) -> Result<Option<PartiallyLabeledGraph>, FamilyError> {
    let g = generate(spec)?;
    Ok(known_certificate(spec)?.map(|cert| extract_root(&g, &cert).expect("known certificates are valid")))
}
