use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use butterfly_core::families::{classify_family, generate, known_certificate, vertex_names, FamilySpec};
use butterfly_core::formats::{
    emit_certificate_json, emit_classification_json, emit_dot, emit_graph6, emit_graph_json, emit_plg_json,
    parse_graph6, parse_graph_json, parse_plg_json,
};
use butterfly_core::gluing::{glue, square, unlabel, PartiallyLabeledGraph};
use butterfly_core::iso::are_isomorphic;
use butterfly_core::products::{product, ProductKind};
use butterfly_core::squareness::{
    cut_set_square, default_sides, enumerate_roots, extract_root, is_square_with, prune_to_square,
    ButterflyCertificate, SearchConfig,
};
use butterfly_core::verify::{run_suite, SuiteOptions, SUITES};
use butterfly_core::{Graph, VertexPermutation, VertexSet};

#[derive(Parser)]
#[command(name = "butterfly", version, about = "Decide whether a graph is a gluing square, and build roots and certificates")]
struct Cli {
    /// Output encoding; each command picks a sensible default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Largest vertex count handed to the exhaustive involution search.
    #[arg(long, global = true, env = "BUTTERFLY_MAX_N", default_value_t = 20)]
    search_limit: usize,

    /// Skip the chromatic-critical shortcut.
    #[arg(long, global = true)]
    no_chromatic_filter: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Report whether GRAPH is a square, with a certificate when it is.
    Classify {
        /// File path, `-` for stdin, a family spec such as `cycle:8`, or a graph6 string.
        graph: Option<String>,
    },
    /// Print a square root of GRAPH as partially labeled JSON.
    Root {
        graph: Option<String>,
        /// Every root up to labeled isomorphism.
        #[arg(long)]
        all: bool,
    },
    /// Glue a partially labeled graph with itself.
    Square { plg: Option<String> },
    /// Glue two partially labeled graphs along equal labels.
    Glue { first: String, second: String },
    /// Generate a family member, e.g. `circulant:10:1,3` or `fan:2:5`.
    Gen { spec: String },
    /// Build a product; KIND is cartesian, tensor, strong, lex or join.
    Product { kind: ProductKind, left: String, right: String },
    /// Delete every A0-A1 edge of a butterfly-style involution.
    Prune {
        graph: Option<String>,
        /// Images of 0..n-1, comma separated.
        #[arg(long)]
        involution: String,
        /// One side of each swapped pair; defaults to the smaller vertex.
        #[arg(long)]
        a0: Option<String>,
    },
    /// Run a classification suite and compare against the expected verdicts.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Upper end of the suite's size parameter.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Raise the search limit for rows that exceed it.
        #[arg(long)]
        allow_slow: bool,
    },
    /// Classify random graphs and cross-check the two decision routes.
    Sweep {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        min_n: usize,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// Edge probability.
        #[arg(long, default_value_t = 0.4)]
        p: f64,
    },
}

struct Input {
    graph: Graph,
    family: Option<FamilySpec>,
}

fn read_source(arg: Option<&str>) -> Result<String> {
    match arg {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
        Some(a) => fs::read_to_string(a).with_context(|| format!("reading {a}")),
    }
}

fn parse_graph_text(text: &str) -> Result<Graph> {
    let t = text.trim();
    if t.is_empty() {
        bail!("no graph on input");
    }
    if t.starts_with('{') {
        return match parse_graph_json(t) {
            Ok(g) => Ok(g),
            Err(e) => parse_plg_json(t).map(|h| unlabel(&h)).map_err(|_| e.into()),
        };
    }
    let line = t.lines().next().unwrap_or_default();
    Ok(parse_graph6(line)?)
}

fn read_graph(arg: Option<&str>) -> Result<Input> {
    if let Some(a) = arg.filter(|a| *a != "-" && !Path::new(a).exists()) {
        if a.contains(':') || a.parse::<FamilySpec>().is_ok() {
            let spec: FamilySpec = a.parse()?;
            return Ok(Input { graph: generate(&spec)?, family: Some(spec) });
        }
        return Ok(Input { graph: parse_graph_text(a)?, family: None });
    }
    Ok(Input { graph: parse_graph_text(&read_source(arg)?)?, family: None })
}

fn read_plg(arg: Option<&str>) -> Result<PartiallyLabeledGraph> {
    let text = match arg {
        Some(a) if a.trim_start().starts_with('{') => a.to_string(),
        _ => read_source(arg)?,
    };
    Ok(parse_plg_json(text.trim())?)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<usize>().with_context(|| format!("`{p}` is not a vertex index")))
        .collect()
}

fn emit_graph(g: &Graph, format: Format, cert: Option<&ButterflyCertificate>, names: Option<&[String]>) -> Result<String> {
    Ok(match format {
        Format::Graph6 => emit_graph6(g) + "\n",
        Format::Json => emit_graph_json(g) + "\n",
        Format::Dot => emit_dot(g, cert, names)?,
    })
}

fn emit_plg(h: &PartiallyLabeledGraph, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(emit_plg_json(h) + "\n"),
        other => emit_graph(h.graph(), other, None, None),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode> {
    let cfg = SearchConfig {
        max_n: cli.search_limit,
        chromatic_filter: !cli.no_chromatic_filter,
        ..SearchConfig::default()
    };
    match cli.command {
        Command::Classify { graph } => {
            let input = read_graph(graph.as_deref())?;
            let c = is_square_with(&input.graph, &cfg)?;
            match cli.format {
                Some(Format::Json) => writeln!(out, "{}", emit_classification_json(&c))?,
                Some(f @ (Format::Dot | Format::Graph6)) => {
                    out.write_all(emit_graph(&input.graph, f, c.verdict.certificate(), None)?.as_bytes())?
                }
                None => {
                    writeln!(out, "{}", if c.verdict.is_square() { "square" } else { "not-square" })?;
                    writeln!(out, "decided-by: {}", c.decided_by.as_str())?;
                    if let Some(cert) = c.verdict.certificate() {
                        writeln!(out, "certificate: {}", emit_certificate_json(cert))?;
                    }
                    if let Some(spec) = &input.family {
                        let fv = classify_family(spec)?;
                        writeln!(out, "family: {} ({})", fv.expected, fv.rule)?;
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Root { graph, all } => {
            let input = read_graph(graph.as_deref())?;
            let format = cli.format.unwrap_or(Format::Json);
            let roots = if all {
                enumerate_roots(&input.graph, &cfg)?
            } else {
                let c = is_square_with(&input.graph, &cfg)?;
                match c.verdict.certificate() {
                    Some(cert) => vec![extract_root(&input.graph, cert)?],
                    None => Vec::new(),
                }
            };
            if roots.is_empty() {
                eprintln!("not a square: no root exists");
                return Ok(ExitCode::from(1));
            }
            for h in &roots {
                out.write_all(emit_plg(h, format)?.as_bytes())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Square { plg } => {
            let h = read_plg(plg.as_deref())?;
            let (g, twins) = square(&h);
            let cert = match cli.format {
                Some(Format::Dot) => {
                    let phi = VertexPermutation::new(twins.as_slice().to_vec())?;
                    let a0 = default_sides(&phi);
                    Some(ButterflyCertificate::with_sides(&g, phi, a0)?)
                }
                _ => None,
            };
            out.write_all(emit_graph(&g, cli.format.unwrap_or(Format::Graph6), cert.as_ref(), None)?.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Glue { first, second } => {
            let h = glue(&read_plg(Some(&first))?, &read_plg(Some(&second))?);
            out.write_all(emit_plg(&h, cli.format.unwrap_or(Format::Json))?.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { spec } => {
            let spec: FamilySpec = spec.parse()?;
            let g = generate(&spec)?;
            let format = cli.format.unwrap_or(Format::Graph6);
            let (cert, names) = if format == Format::Dot {
                (known_certificate(&spec)?, Some(vertex_names(&spec)?))
            } else {
                (None, None)
            };
            out.write_all(emit_graph(&g, format, cert.as_ref(), names.as_deref())?.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Product { kind, left, right } => {
            let g = read_graph(Some(&left))?.graph;
            let h = read_graph(Some(&right))?.graph;
            let p = product(kind, &g, &h)?;
            out.write_all(emit_graph(&p, cli.format.unwrap_or(Format::Graph6), None, None)?.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Prune { graph, involution, a0 } => {
            let g = read_graph(graph.as_deref())?.graph;
            let phi = VertexPermutation::new(parse_list(&involution)?)?;
            if phi.len() != g.n() {
                bail!("involution has {} entries but the graph has {} vertices", phi.len(), g.n());
            }
            let a0 = match a0 {
                Some(list) => {
                    let vs = parse_list(&list)?;
                    if let Some(&v) = vs.iter().find(|&&v| v >= g.n()) {
                        bail!("vertex {v} is out of range");
                    }
                    VertexSet::from_vertices(g.n(), vs)
                }
                None => default_sides(&phi),
            };
            let (pruned, cert) = prune_to_square(&g, &phi, &a0)?;
            out.write_all(emit_graph(&pruned, cli.format.unwrap_or(Format::Graph6), Some(&cert), None)?.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, max_n, jobs, allow_slow } => {
            let opts = SuiteOptions { max_n, allow_slow, jobs, search: cfg };
            let report = run_suite(&suite, &opts)?;
            match cli.format {
                Some(Format::Json) => writeln!(out, "{}", report.to_json())?,
                _ => out.write_all(report.to_table().as_bytes())?,
            }
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Sweep { seed, count, min_n, max_n, p } => {
            if min_n == 0 || min_n > max_n || max_n > cfg.max_n {
                bail!("need 1 <= min-n <= max-n <= {}", cfg.max_n);
            }
            if !(0.0..=1.0).contains(&p) {
                bail!("edge probability must lie in [0, 1]");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut squares, mut disagreements) = (0usize, 0usize);
            for i in 0..count {
                let n = rng.gen_range(min_n..=max_n);
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(p) {
                            edges.push((u, v));
                        }
                    }
                }
                let g = Graph::new(n, edges)?;
                let c = is_square_with(&g, &cfg)?;
                let mut ok = true;
                if let Some(cert) = c.verdict.certificate() {
                    squares += 1;
                    let (hh, _) = square(&extract_root(&g, cert)?);
                    ok &= are_isomorphic(&g, &hh, None).is_some();
                }
                if g.is_connected() {
                    ok &= cut_set_square(&g, &cfg)?.is_some() == c.verdict.is_square();
                }
                if !ok {
                    disagreements += 1;
                    writeln!(out, "disagreement at sample {i}: {}", emit_graph6(&g))?;
                }
            }
            writeln!(out, "seed {seed}: {count} graphs, {squares} squares, {disagreements} disagreements")?;
            Ok(if disagreements == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
