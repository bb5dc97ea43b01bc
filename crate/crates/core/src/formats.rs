//! graph6, JSON and DOT encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gluing::{LabelingError, PartiallyLabeledGraph};
use crate::graph::{Graph, GraphError, VertexPermutation, VertexSet};
use crate::squareness::{check_certificate, ButterflyCertificate, CertificateViolation, Classification, Verdict};

/// Largest vertex count accepted by the graph6 reader.
pub const GRAPH6_MAX_N: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("graph6: empty input")]
    Empty,
    #[error("graph6: byte {byte:#04x} at offset {offset} is outside the printable range")]
    BadCharacter { offset: usize, byte: u8 },
    #[error("graph6: truncated input, expected {expected} characters but found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6: padding bits in the last character must be zero")]
    Padding,
    #[error("graph6: {0} unexpected trailing characters")]
    TrailingData(usize),
    #[error("graph6: {0} vertices exceeds the supported maximum")]
    SizeOverflow(u64),
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("invalid certificate: {0}")]
    Certificate(#[from] CertificateViolation),
}

fn graph6_byte(offset: usize, b: u8) -> Result<u64, FormatError> {
    if (63..=126).contains(&b) {
        Ok(u64::from(b - 63))
    } else {
        Err(FormatError::BadCharacter { offset, byte: b })
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    let (n, mut pos) = match bytes {
        [b'~', b'~', ..] => (read_size(bytes, 2, 6)?, 8),
        [b'~', ..] => (read_size(bytes, 1, 3)?, 4),
        [b, ..] => (graph6_byte(0, *b)?, 1),
        [] => unreachable!(),
    };
    if n > GRAPH6_MAX_N as u64 {
        return Err(FormatError::SizeOverflow(n));
    }
    let n = n as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let chars = bits.div_ceil(6);
    let found = bytes.len() - pos;
    if found < chars {
        return Err(FormatError::Truncated { expected: chars, found });
    }
    if found > chars {
        return Err(FormatError::TrailingData(found - chars));
    }
    let mut values = Vec::with_capacity(chars);
    for (i, &b) in bytes[pos..].iter().enumerate() {
        values.push(graph6_byte(pos + i, b)?);
    }
    pos = 0;
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if values[pos / 6] >> (5 - pos % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            pos += 1;
        }
    }
    if bits % 6 != 0 && values[chars - 1] & ((1 << (6 - bits % 6)) - 1) != 0 {
        return Err(FormatError::Padding);
    }
    Ok(g)
}

fn read_size(bytes: &[u8], start: usize, len: usize) -> Result<u64, FormatError> {
    if bytes.len() < start + len {
        return Err(FormatError::Truncated { expected: start + len, found: bytes.len() });
    }
    let mut n = 0u64;
    for (i, &b) in bytes[start..start + len].iter().enumerate() {
        n = (n << 6) | graph6_byte(start + i, b)?;
    }
    Ok(n)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    let push_size = |out: &mut Vec<u8>, len: usize| {
        for k in (0..len).rev() {
            out.push(63 + ((n >> (6 * k)) & 63) as u8);
        }
    };
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(b'~');
        push_size(&mut out, 3);
    } else {
        out.extend_from_slice(b"~~");
        push_size(&mut out, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlgJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    labels: BTreeMap<u32, usize>,
}

fn json_err(e: serde_json::Error) -> FormatError {
    FormatError::Json(e.to_string())
}

fn sorted_edges(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().into_iter().map(|(u, v)| [u, v]).collect()
}

/// `{"n":..,"edges":[[u,v],..]}` with edges sorted.
pub fn emit_graph_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson { n: g.n(), edges: sorted_edges(g) }).expect("serializable")
}

pub fn parse_graph_json(text: &str) -> Result<Graph, FormatError> {
    let raw: GraphJson = serde_json::from_str(text).map_err(json_err)?;
    Ok(Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))?)
}

/// `{"n":..,"edges":[..],"labels":{"label":vertex,..}}`.
pub fn parse_plg_json(text: &str) -> Result<PartiallyLabeledGraph, FormatError> {
    let raw: PlgJson = serde_json::from_str(text).map_err(json_err)?;
    let g = Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))?;
    Ok(PartiallyLabeledGraph::new(g, raw.labels)?)
}

pub fn emit_plg_json(h: &PartiallyLabeledGraph) -> String {
    let raw = PlgJson {
        n: h.graph().n(),
        edges: sorted_edges(h.graph()),
        labels: h.labels().clone(),
    };
    serde_json::to_string(&raw).expect("serializable")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub phi: Vec<usize>,
    pub fixed: Vec<usize>,
    pub a0: Vec<usize>,
    pub a1: Vec<usize>,
}

impl From<&ButterflyCertificate> for CertificateJson {
    fn from(c: &ButterflyCertificate) -> Self {
        CertificateJson {
            phi: c.phi.as_slice().to_vec(),
            fixed: c.fixed.to_vec(),
            a0: c.a0.to_vec(),
            a1: c.a1.to_vec(),
        }
    }
}

impl CertificateJson {
    pub fn into_certificate(self) -> Result<ButterflyCertificate, FormatError> {
        let n = self.phi.len();
        let set = |xs: Vec<usize>| -> Result<VertexSet, FormatError> {
            match xs.iter().find(|&&x| x >= n) {
                Some(&v) => Err(GraphError::VertexOutOfRange { vertex: v, n }.into()),
                None => Ok(VertexSet::from_vertices(n, xs)),
            }
        };
        Ok(ButterflyCertificate {
            phi: VertexPermutation::new(self.phi)?,
            fixed: set(self.fixed)?,
            a0: set(self.a0)?,
            a1: set(self.a1)?,
        })
    }
}

pub fn emit_certificate_json(cert: &ButterflyCertificate) -> String {
    serde_json::to_string(&CertificateJson::from(cert)).expect("serializable")
}

pub fn parse_certificate_json(text: &str) -> Result<ButterflyCertificate, FormatError> {
    let raw: CertificateJson = serde_json::from_str(text).map_err(json_err)?;
    raw.into_certificate()
}

#[derive(Serialize)]
struct StatsJson {
    involutions_examined: u64,
    pruned: u64,
    nodes: u64,
}

#[derive(Serialize)]
struct ClassificationJson {
    verdict: &'static str,
    decided_by: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateJson>,
    stats: StatsJson,
}

pub fn emit_classification_json(c: &Classification) -> String {
    let raw = ClassificationJson {
        verdict: if c.verdict.is_square() { "square" } else { "not-square" },
        decided_by: c.decided_by.as_str(),
        certificate: match &c.verdict {
            Verdict::Square(cert) => Some(cert.into()),
            Verdict::NotSquare => None,
        },
        stats: StatsJson {
            involutions_examined: c.stats.involutions_examined,
            pruned: c.stats.pruned,
            nodes: c.stats.nodes,
        },
    };
    serde_json::to_string(&raw).expect("serializable")
}

/// Fill colours for fixed, `A0` and `A1` vertices.
pub const DOT_COLORS: [&str; 3] = ["gold", "lightblue", "lightpink"];

/// Undirected DOT; with a certificate each vertex is filled by its role.
pub fn emit_dot(g: &Graph, cert: Option<&ButterflyCertificate>, names: Option<&[String]>) -> Result<String, FormatError> {
    if let Some(c) = cert {
        check_certificate(g, c)?;
    }
    let mut out = String::from("graph G {\n");
    if cert.is_some() {
        out.push_str("  node [style=filled];\n");
    }
    for v in 0..g.n() {
        let mut attrs = Vec::new();
        if let Some(name) = names.and_then(|ns| ns.get(v)) {
            attrs.push(format!("label=\"{}\"", name.replace('"', "\\\"")));
        }
        if let Some(c) = cert {
            let role = if c.fixed.contains(v) { 0 } else if c.a0.contains(v) { 1 } else { 2 };
            attrs.push(format!("fillcolor={}", DOT_COLORS[role]));
        }
        if attrs.is_empty() {
            writeln!(out, "  {v};").unwrap();
        } else {
            writeln!(out, "  {v} [{}];", attrs.join(", ")).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn graph6_basics() {
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2));
        assert_eq!(emit_graph6(&Graph::complete(2)), "A_");
        assert_eq!(parse_graph6("A_\n").unwrap(), Graph::complete(2));
        assert_eq!(parse_graph6("?").unwrap(), Graph::empty(0));
        assert_eq!(parse_graph6("A"), Err(FormatError::Truncated { expected: 1, found: 0 }));
        assert_eq!(parse_graph6(""), Err(FormatError::Empty));
        assert_eq!(parse_graph6("A_?"), Err(FormatError::TrailingData(1)));
        // K2 encodes one bit; any other bit of the character is padding
        assert_eq!(parse_graph6("A`"), Err(FormatError::Padding));
        assert!(matches!(parse_graph6("A "), Err(FormatError::BadCharacter { offset: 1, .. })));
        assert!(matches!(parse_graph6("~~~~~~~~"), Err(FormatError::SizeOverflow(_))));
    }

    #[test]
    fn graph6_long_sizes_round_trip() {
        for n in [0, 1, 5, 62, 63, 64, 100] {
            let g = cycle(n.max(3)).disjoint_union(&Graph::empty(n.saturating_sub(3)));
            let s = emit_graph6(&g);
            assert_eq!(parse_graph6(&s).unwrap(), g, "n = {n}");
            assert_eq!(emit_graph6(&parse_graph6(&s).unwrap()), s);
        }
        assert!(emit_graph6(&Graph::empty(63)).starts_with("~??~"));
    }

    #[test]
    fn plg_json() {
        let text = r#"{"n":5, "edges":[[0,1],[1,2],[2,3],[3,4]], "labels":{"1":0,"2":4}}"#;
        let h = parse_plg_json(text).unwrap();
        assert_eq!(h.labels().len(), 2);
        assert_eq!(
            emit_plg_json(&h),
            r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4]],"labels":{"1":0,"2":4}}"#
        );
        let all = r#"{"n":2,"edges":[[0,1]],"labels":{"1":0,"2":1}}"#;
        assert_eq!(parse_plg_json(all), Err(FormatError::Labeling(LabelingError::Surjective)));
        let none = r#"{"n":2,"edges":[[0,1]],"labels":{}}"#;
        assert_eq!(parse_plg_json(none), Err(FormatError::Labeling(LabelingError::Empty)));
        let far = r#"{"n":2,"edges":[[0,2]],"labels":{"1":0}}"#;
        assert!(matches!(parse_plg_json(far), Err(FormatError::Graph(_))));
        assert!(matches!(parse_plg_json("{"), Err(FormatError::Json(_))));
    }

    #[test]
    fn graph_json_sorts_edges() {
        let g = Graph::new(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(emit_graph_json(&g), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(parse_graph_json(&emit_graph_json(&g)).unwrap(), g);
    }

    #[test]
    fn dot_output() {
        let g = cycle(4);
        let plain = emit_dot(&g, None, None).unwrap();
        assert!(plain.contains("0 -- 1;"));
        assert!(!plain.contains("fillcolor"));
        let cert = ButterflyCertificate::from_involution(&g, VertexPermutation::from_swaps(4, &[(1, 3)]).unwrap()).unwrap();
        let coloured = emit_dot(&g, Some(&cert), None).unwrap();
        for c in DOT_COLORS {
            assert!(coloured.contains(c));
        }
        let mut bad = cert.clone();
        bad.a0 = VertexSet::new(4);
        assert!(emit_dot(&g, Some(&bad), None).is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let g = cycle(4);
        let cert = ButterflyCertificate::from_involution(&g, VertexPermutation::from_swaps(4, &[(1, 3)]).unwrap()).unwrap();
        let text = emit_certificate_json(&cert);
        assert_eq!(text, r#"{"phi":[0,3,2,1],"fixed":[0,2],"a0":[1],"a1":[3]}"#);
        assert_eq!(parse_certificate_json(&text).unwrap(), cert);
    }
}
