//! Classification suites: expected verdicts against computed ones.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::graph_classes;
use crate::families::{circulant, classify_family, generate, known_certificate, Expected, FamilySpec};
use crate::formats::{emit_graph6, CertificateJson};
use crate::graph::{Graph, VertexPermutation};
use crate::products::{join_is_square, lift_certificate, oriented_product, product, Orientation, ProductKind};
use crate::squareness::{
    check_certificate, default_sides, enumerate_roots, is_square_with, prune_to_square, pruned_circulant_edge_count,
    ButterflyCertificate, DecidedBy, SearchConfig, Verdict,
};

pub const SUITES: [&str; 14] = [
    "cycles",
    "paths",
    "complete",
    "multipartite",
    "wheels",
    "circulant-consecutive",
    "circulant-1-3",
    "circulant-1-d",
    "johnson",
    "hypercube",
    "products",
    "join",
    "fans",
    "pruned-circulant",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{instance} has {n} vertices, above the search limit of {max_n}; pass --allow-slow to search anyway")]
    TooLarge { instance: String, n: usize, max_n: usize },
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Upper end of the suite's main size parameter.
    pub max_n: Option<usize>,
    pub allow_slow: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub search: SearchConfig,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub instance: String,
    pub expected: String,
    pub reference: String,
    pub computed: String,
    pub decided_by: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub rows: Vec<ReportRow>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_table(&self) -> String {
        let headers = ["instance", "expected", "computed", "decided by", "ms", "result"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.instance.clone(),
                    r.expected.clone(),
                    r.computed.clone(),
                    r.decided_by.clone(),
                    format!("{:.1}", r.elapsed_ms),
                    if r.pass { "ok".into() } else { "FAIL".into() },
                ]
            })
            .collect();
        let mut widths = headers.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        writeln!(out, "suite {}", self.suite).unwrap();
        let line = |out: &mut String, row: &[String]| {
            let parts: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            writeln!(out, "{}", parts.join("  ").trim_end()).unwrap();
        };
        line(&mut out, &headers.map(String::from));
        for row in &cells {
            line(&mut out, row);
        }
        for r in self.rows.iter().filter(|r| r.note.is_some()) {
            writeln!(out, "note {}: {}", r.instance, r.note.as_deref().unwrap()).unwrap();
        }
        let failed = self.rows.iter().filter(|r| !r.pass).count();
        writeln!(out, "{} rows, {} failed: {}", self.rows.len(), failed, if self.pass { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

enum Task {
    Family { spec: FamilySpec, check_unique_root: bool },
    Lift { kind: ProductKind, orientation: Orientation, g_name: String, g: Graph, h_name: String, h: Graph },
    Pin { name: String, g: Graph },
    Join { g: Graph, h: Graph },
    Pruned { n: usize, d: Vec<usize> },
}

fn spec(s: &str) -> FamilySpec {
    s.parse().expect("built-in family spec")
}

fn family(s: String) -> Task {
    Task::Family { spec: spec(&s), check_unique_root: false }
}

fn tasks(name: &str, max: Option<usize>) -> Result<Vec<Task>, SuiteError> {
    let hi = |default: usize| max.unwrap_or(default);
    let t = match name {
        "cycles" => (3..=hi(14))
            .map(|n| Task::Family { spec: FamilySpec::Cycle(n), check_unique_root: n % 2 == 0 && n <= 12 })
            .collect(),
        "paths" => (2..=hi(13))
            .map(|n| Task::Family { spec: FamilySpec::Path(n), check_unique_root: n % 2 == 1 })
            .collect(),
        "complete" => (1..=hi(9)).map(|n| family(format!("complete:{n}"))).collect(),
        "multipartite" => {
            let mut out = Vec::new();
            for total in 2..=hi(10) {
                for parts in partitions(total) {
                    if parts.len() >= 2 && parts.iter().any(|&a| a >= 2) {
                        out.push(Task::Family { spec: FamilySpec::Multipartite(parts), check_unique_root: false });
                    }
                }
            }
            out
        }
        "wheels" => (3..=hi(12))
            .map(|n| Task::Family { spec: FamilySpec::Wheel(n), check_unique_root: n % 2 == 0 && n <= 10 })
            .collect(),
        "circulant-consecutive" => {
            let mut out = Vec::new();
            for k in 2..=3usize {
                for n in 2 * k..=hi(14) {
                    let d: Vec<usize> = (1..=k).collect();
                    out.push(Task::Family { spec: FamilySpec::Circulant { n, d }, check_unique_root: false });
                }
            }
            out
        }
        "circulant-1-3" => (7..=hi(14)).map(|n| family(format!("circulant:{n}:1,3"))).collect(),
        "circulant-1-d" => (17..=hi(20)).map(|n| family(format!("circulant:{n}:1,4"))).collect(),
        "johnson" => [(4, 1), (5, 1), (5, 2), (6, 2)]
            .into_iter()
            .filter(|&(n, _)| n <= hi(6))
            .map(|(n, k)| family(format!("johnson:{n}:{k}")))
            .collect(),
        "hypercube" => (2..=hi(6)).map(|n| family(format!("hypercube:{n}"))).collect(),
        "fans" => (1..=3)
            .flat_map(|m| (1..=hi(7)).map(move |n| family(format!("fan:{m}:{n}"))))
            .collect(),
        "products" => product_tasks(),
        "join" => {
            let classes: Vec<Graph> = (1..=hi(4)).flat_map(graph_classes).collect();
            let mut out = Vec::new();
            for g in &classes {
                for h in &classes {
                    out.push(Task::Join { g: g.clone(), h: h.clone() });
                }
            }
            out
        }
        "pruned-circulant" => [(8, vec![1, 2]), (10, vec![1, 3]), (8, vec![1, 4]), (12, vec![1, 2, 3])]
            .into_iter()
            .filter(|(n, _)| *n <= hi(12))
            .map(|(n, d)| Task::Pruned { n, d })
            .collect(),
        other => return Err(SuiteError::UnknownSuite(other.to_string())),
    };
    Ok(t)
}

fn product_tasks() -> Vec<Task> {
    let gs = [("C_4", spec("cycle:4")), ("C_6", spec("cycle:6")), ("W_6", spec("wheel:6"))];
    let hs = [
        ("K_1", spec("complete:1")),
        ("K_2", spec("complete:2")),
        ("P_3", spec("path:3")),
        ("K_3", spec("complete:3")),
        ("C_5", spec("cycle:5")),
    ];
    let mut out = Vec::new();
    for (g_name, gs) in &gs {
        let g = generate(gs).expect("valid");
        for (h_name, hs) in &hs {
            let h = generate(hs).expect("valid");
            let lifts = [
                (ProductKind::Cartesian, Orientation::Left),
                (ProductKind::Tensor, Orientation::Left),
                (ProductKind::Strong, Orientation::Left),
                (ProductKind::Lexicographic, Orientation::Left),
                (ProductKind::Lexicographic, Orientation::Right { fiber: 0 }),
            ];
            for (kind, orientation) in lifts {
                out.push(Task::Lift {
                    kind,
                    orientation,
                    g_name: g_name.to_string(),
                    g: g.clone(),
                    h_name: h_name.to_string(),
                    h: h.clone(),
                });
            }
        }
    }
    let k2 = Graph::complete(2);
    let k3 = Graph::complete(3);
    for (name, kind, a) in [
        ("cartesian(K_3,K_3)", ProductKind::Cartesian, &k3),
        ("tensor(K_2,K_2)", ProductKind::Tensor, &k2),
        ("strong(K_2,K_2)", ProductKind::Strong, &k2),
        ("lex(K_2,K_2)", ProductKind::Lexicographic, &k2),
    ] {
        out.push(Task::Pin { name: name.to_string(), g: product(kind, a, a).expect("non-empty") });
    }
    out
}

/// Non-increasing part lists summing to `n`.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in (1..=cap.min(left)).rev() {
            cur.push(a);
            rec(left - a, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

struct Outcome {
    instance: String,
    expected: String,
    reference: String,
    computed: String,
    decided_by: String,
    certificate: Option<ButterflyCertificate>,
    checked_graph: Option<Graph>,
    note: Option<String>,
    pass: bool,
}

fn verdict_name(square: bool) -> String {
    if square { "square" } else { "not-square" }.to_string()
}

impl Task {
    fn instance(&self) -> String {
        match self {
            Task::Family { spec, .. } => spec.to_string(),
            Task::Lift { kind, orientation, g_name, h_name, .. } => match orientation {
                Orientation::Left => format!("{kind}({g_name},{h_name})"),
                Orientation::Right { fiber } => format!("{kind}({h_name},{g_name})@fiber{fiber}"),
            },
            Task::Pin { name, .. } => name.clone(),
            Task::Join { g, h } => format!("join({},{})", emit_graph6(g), emit_graph6(h)),
            Task::Pruned { n, d } => {
                format!("pruned circulant:{n}:{}", d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            }
        }
    }

    /// Vertex count of the graph the exhaustive search would run on, if any.
    fn search_size(&self, cfg: &SearchConfig) -> Option<usize> {
        match self {
            Task::Family { spec, .. } => {
                let n = spec.vertex_count();
                // Hypercubes beyond the search limit are checked by certificate only.
                if matches!(spec, FamilySpec::Hypercube(_)) && n > cfg.max_n {
                    None
                } else {
                    Some(n)
                }
            }
            Task::Lift { g, .. } => Some(g.n()),
            Task::Pin { g, .. } => Some(g.n()),
            Task::Join { g, h } => Some(g.n() + h.n()),
            Task::Pruned { n, .. } => Some(*n),
        }
    }

    fn run(&self, cfg: &SearchConfig) -> Outcome {
        let instance = self.instance();
        match self {
            Task::Family { spec, check_unique_root } => {
                let g = generate(spec).expect("suite specs are valid");
                let fv = classify_family(spec).expect("suite specs are valid");
                let (square, decided_by, cert) = if g.n() > cfg.max_n {
                    let cert = known_certificate(spec).expect("valid").filter(|c| check_certificate(&g, c).is_ok());
                    (cert.is_some(), DecidedBy::ConstructiveLift.as_str().to_string(), cert)
                } else {
                    let c = is_square_with(&g, cfg).expect("size checked before running");
                    let cert = c.verdict.certificate().cloned();
                    (c.verdict.is_square(), c.decided_by.as_str().to_string(), cert)
                };
                let mut pass = match fv.expected {
                    Expected::Square => square,
                    Expected::NotSquare => !square,
                    Expected::OutsideTheoremScope => false,
                };
                let mut note = None;
                if matches!(spec, FamilySpec::Hypercube(_)) {
                    let known = known_certificate(spec).expect("valid");
                    let ok = known.as_ref().is_some_and(|c| check_certificate(&g, c).is_ok());
                    note = Some(format!("coordinate-swap certificate {}", if ok { "verified" } else { "rejected" }));
                    pass &= ok;
                }
                if *check_unique_root && square {
                    let roots = enumerate_roots(&g, cfg).expect("size checked");
                    note = Some(format!("{} root class(es)", roots.len()));
                    pass &= roots.len() == 1;
                }
                Outcome {
                    instance,
                    expected: fv.expected.to_string(),
                    reference: fv.rule.to_string(),
                    computed: verdict_name(square),
                    decided_by,
                    certificate: cert,
                    checked_graph: Some(g),
                    note,
                    pass,
                }
            }
            Task::Lift { kind, orientation, g, h, .. } => {
                let base = is_square_with(g, cfg).expect("size checked");
                let prod = oriented_product(*kind, g, h, *orientation).expect("non-empty factors");
                let lifted = base
                    .verdict
                    .certificate()
                    .and_then(|c| lift_certificate(*kind, g, c, h, *orientation).ok())
                    .filter(|c| check_certificate(&prod, c).is_ok());
                Outcome {
                    instance,
                    expected: Expected::Square.to_string(),
                    reference: "a product with a square factor is a square".into(),
                    computed: verdict_name(lifted.is_some()),
                    decided_by: DecidedBy::ConstructiveLift.as_str().into(),
                    pass: lifted.is_some(),
                    certificate: lifted,
                    checked_graph: Some(prod),
                    note: None,
                }
            }
            Task::Pin { g, .. } => {
                let c = is_square_with(g, cfg).expect("size checked");
                Outcome {
                    instance,
                    expected: Expected::NotSquare.to_string(),
                    reference: "product of two non-squares that is not a square".into(),
                    computed: verdict_name(c.verdict.is_square()),
                    decided_by: c.decided_by.as_str().into(),
                    pass: c.verdict == Verdict::NotSquare,
                    certificate: c.verdict.certificate().cloned(),
                    checked_graph: Some(g.clone()),
                    note: None,
                }
            }
            Task::Join { g, h } => {
                let decision = join_is_square(g, h, cfg).expect("size checked");
                let joined = product(ProductKind::Join, g, h).expect("non-empty");
                let c = is_square_with(&joined, cfg).expect("size checked");
                Outcome {
                    instance,
                    expected: verdict_name(decision.square),
                    reference: "G ∇ H is a square iff a factor is a square or has two isomorphic components".into(),
                    computed: verdict_name(c.verdict.is_square()),
                    decided_by: c.decided_by.as_str().into(),
                    pass: decision.square == c.verdict.is_square(),
                    certificate: c.verdict.certificate().cloned(),
                    checked_graph: Some(joined),
                    note: None,
                }
            }
            Task::Pruned { n, d } => {
                let g = circulant(*n, d);
                let phi = VertexPermutation::new((0..*n).map(|i| (n - i) % n).collect()).expect("reflection");
                let (pruned, cert) = prune_to_square(&g, &phi, &default_sides(&phi)).expect("reflection is valid");
                let formula = pruned_circulant_edge_count(*n, d).expect("valid parameters");
                let search = is_square_with(&pruned, cfg).expect("size checked");
                let pass = formula == pruned.edge_count() && search.verdict.is_square();
                Outcome {
                    instance,
                    expected: format!("square, {formula} edges"),
                    reference: "deleting all A0-A1 edges leaves a square".into(),
                    computed: format!("{}, {} edges", verdict_name(search.verdict.is_square()), pruned.edge_count()),
                    decided_by: search.decided_by.as_str().into(),
                    certificate: Some(cert),
                    checked_graph: Some(pruned),
                    note: None,
                    pass,
                }
            }
        }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let tasks = tasks(name, opts.max_n)?;
    let mut cfg = opts.search;
    for t in &tasks {
        if let Some(n) = t.search_size(&cfg) {
            if n > cfg.max_n {
                if !opts.allow_slow {
                    return Err(SuiteError::TooLarge { instance: t.instance(), n, max_n: cfg.max_n });
                }
                cfg.max_n = n;
            }
        }
    }
    let evaluate = || -> Vec<ReportRow> {
        tasks
            .par_iter()
            .map(|t| {
                let start = Instant::now();
                let mut out = t.run(&cfg);
                let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
                // Every square row must carry a certificate that checks out.
                if out.computed.starts_with("square") {
                    let ok = match (&out.certificate, &out.checked_graph) {
                        (Some(c), Some(g)) => check_certificate(g, c).is_ok(),
                        _ => false,
                    };
                    out.pass &= ok;
                }
                ReportRow {
                    instance: out.instance,
                    expected: out.expected,
                    reference: out.reference,
                    computed: out.computed,
                    decided_by: out.decided_by,
                    certificate: out.certificate.as_ref().map(CertificateJson::from),
                    note: out.note,
                    elapsed_ms,
                    pass: out.pass,
                }
            })
            .collect()
    };
    let rows = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(evaluate),
        None => evaluate(),
    };
    let pass = rows.iter().all(|r| r.pass);
    Ok(VerificationReport { suite: name.to_string(), rows, pass })
}
