//! `primegraph`: query group degree data, emit prime graphs, run the
//! verification scans and classify small graphs.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use primegraph_core::groupdata::{GroupDescriptor, NamedTable};
use primegraph_core::numtheory;
use primegraph_core::par::with_workers;
use primegraph_core::verify::{
    classify, palfy_check, scan_psl2_even, scan_psl2_odd, verify_bipartite_bound,
    verify_excluded_simple_families, verify_theorem_a, verify_theorem_b, verify_theorem_c,
    ClassificationVerdict, ScanConfig, VerificationReport, VerifyError, WitnessCatalog,
};
use primegraph_core::{DegreeGraph, DegreeSet, Graph, PrimeGraph};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "primegraph",
    version,
    about = "Prime graphs of character-degree sets"
)]
struct Cli {
    /// Output format. `dot` is only accepted by `graph`.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for the scans (default: number of processors).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree set, rho(G) and prime graph summary for a group.
    Group {
        /// `PSL2:q`, `Sz:q2`, `PSL3:q`, `PSU3:q`, `product:A,B` or a named id.
        spec: String,
        /// Also show the degree graph.
        #[arg(long)]
        degree_graph: bool,
    },
    /// Serialize the prime graph (or degree graph) of a group.
    Graph {
        spec: String,
        #[arg(long)]
        degree_graph: bool,
    },
    /// Run a verification check.
    Verify(VerifyArgs),
    /// Decide whether a graph can be a prime graph.
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// thm-a, thm-b, thm-c, psl2-even, psl2-odd, excluded-families,
    /// bipartite or palfy:<spec>.
    check: String,
    #[arg(long)]
    max_f: Option<u32>,
    #[arg(long)]
    max_q: Option<u128>,
    #[arg(long)]
    max_suzuki_exp: Option<u32>,
    #[arg(long)]
    max_psl3_q: Option<u128>,
    /// Leave elapsed time out of the report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ClassifyArgs {
    /// Edges `u-v` separated by commas; a bare prime adds an isolated vertex.
    #[arg(long)]
    edges: Option<String>,
    /// File with the same syntax; newlines separate like commas and `#`
    /// starts a comment.
    #[arg(long)]
    file: Option<PathBuf>,
}

/// A failed command, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        let code = if matches!(e, VerifyError::DataGap { .. }) {
            3
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<primegraph_core::GroupError> for Failure {
    fn from(e: primegraph_core::GroupError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<primegraph_core::GraphError> for Failure {
    fn from(e: primegraph_core::GraphError) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Rendered output plus the exit code it should produce.
struct Rendered {
    text: String,
    code: u8,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(rendered) => {
            let mut text = rendered.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.output {
                Some(path) => fs::write(path, text.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(rendered.code),
                Err(message) => {
                    eprintln!("error: {message}");
                    ExitCode::from(1)
                }
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Graph { .. }) {
        return Err(Failure::usage(
            "--format dot is only available for the graph command",
        ));
    }
    let jobs = cli.jobs.map(usize::from);
    match &cli.command {
        Command::Group { spec, degree_graph } => cmd_group(spec, *degree_graph, cli.format),
        Command::Graph { spec, degree_graph } => cmd_graph(spec, *degree_graph, cli.format),
        Command::Verify(args) => with_workers(jobs, || cmd_verify(args, cli.format)),
        Command::Classify(args) => cmd_classify(args, cli.format),
    }
}

fn load_table() -> Result<NamedTable, Failure> {
    Ok(NamedTable::load()?)
}

fn list(items: &[u128]) -> String {
    let parts: Vec<String> = items.iter().map(u128::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn edge_text(g: &Graph) -> String {
    let edges = g.edge_list();
    if edges.is_empty() {
        return "none".to_string();
    }
    edges
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn triangle_text(t: Option<(u128, u128, u128)>) -> String {
    match t {
        Some((a, b, c)) => format!("({a},{b},{c})"),
        None => "none (triangle-free)".to_string(),
    }
}

#[derive(Serialize)]
struct GraphSummary<'a> {
    graph: &'a Graph,
    components: usize,
    triangle: Option<[u128; 3]>,
}

impl<'a> GraphSummary<'a> {
    fn new(graph: &'a Graph) -> Result<Self, Failure> {
        Ok(GraphSummary {
            graph,
            components: graph.connected_components()?.len(),
            triangle: graph.find_triangle()?.map(|(a, b, c)| [a, b, c]),
        })
    }
}

#[derive(Serialize)]
struct GroupJson<'a> {
    group: String,
    degrees: &'a [u128],
    rho: &'a [u128],
    prime_graph: GraphSummary<'a>,
    figure_a: Option<primegraph_core::FigureA>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree_graph: Option<GraphSummary<'a>>,
}

#[derive(Serialize)]
struct PartialJson<'a> {
    group: String,
    partial: bool,
    vertices: &'a [u128],
    complete_on: &'a [u128],
    prime_graph: &'a Graph,
    triangle_lower_bound: Option<[u128; 3]>,
}

fn cmd_group(spec: &str, with_degree_graph: bool, format: Format) -> Result<Rendered, Failure> {
    let descriptor = GroupDescriptor::parse(spec)?;
    if descriptor.is_partial() {
        if with_degree_graph {
            return Err(Failure::usage(format!(
                "{descriptor} has only partial vertex data, so no degree graph"
            )));
        }
        return group_partial(&descriptor, format);
    }
    let table = load_table()?;
    let degrees = descriptor.degree_set(&table)?;
    let prime = PrimeGraph::from_degree_set(&degrees);
    let gamma = with_degree_graph.then(|| DegreeGraph::from_degree_set(&degrees));
    let summary = GraphSummary::new(prime.graph())?;
    let figure_a = prime.figure_a_match()?;
    let gamma_summary = gamma.as_ref().map(|g| GraphSummary::new(g)).transpose()?;

    if format == Format::Json {
        let json = GroupJson {
            group: descriptor.to_string(),
            degrees: degrees.degrees(),
            rho: prime.vertices(),
            prime_graph: summary,
            figure_a,
            degree_graph: gamma_summary,
        };
        return Ok(Rendered::ok(to_json(&json)));
    }

    let mut out = String::new();
    let _ = writeln!(out, "group: {descriptor}");
    let _ = writeln!(out, "degrees: {degrees} ({} degrees)", degrees.len());
    let _ = writeln!(out, "rho: {}", list(prime.vertices()));
    let _ = writeln!(out, "prime graph edges: {}", edge_text(&prime));
    let _ = writeln!(out, "components: {}", summary.components);
    let _ = writeln!(out, "triangle: {}", triangle_text(prime.find_triangle()?));
    if let Some(shape) = prime
        .shape_predicates()
        .ok()
        .and_then(|s| s.complete_bipartite)
    {
        let _ = writeln!(out, "complete bipartite: K_{{{},{}}}", shape.0, shape.1);
    }
    if let Some(fig) = figure_a {
        let _ = writeln!(out, "figure A: {fig:?}");
    }
    if let Some(gamma) = &gamma {
        let _ = writeln!(out, "degree graph vertices: {}", list(gamma.vertices()));
        let _ = writeln!(out, "degree graph edges: {}", edge_text(gamma));
        let _ = writeln!(
            out,
            "degree graph triangle: {}",
            triangle_text(gamma.find_triangle()?)
        );
    }
    Ok(Rendered::ok(out))
}

fn group_partial(descriptor: &GroupDescriptor, format: Format) -> Result<Rendered, Failure> {
    let data = descriptor.vertex_data()?;
    let graph = data.to_graph();
    let triangle = graph.find_triangle().ok().flatten();
    if format == Format::Json {
        let json = PartialJson {
            group: descriptor.to_string(),
            partial: true,
            vertices: &data.vertices,
            complete_on: &data.complete_on,
            prime_graph: graph.graph(),
            triangle_lower_bound: triangle.map(|(a, b, c)| [a, b, c]),
        };
        return Ok(Rendered::ok(to_json(&json)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "group: {descriptor}");
    let _ = writeln!(out, "partial vertex data: no degree set available");
    let _ = writeln!(out, "rho: {}", list(&data.vertices));
    let _ = writeln!(out, "complete on: {}", list(&data.complete_on));
    let _ = writeln!(out, "known edges (lower bound): {}", edge_text(&graph));
    let _ = writeln!(
        out,
        "triangle: {}",
        match triangle {
            Some((a, b, c)) => format!("({a},{b},{c})"),
            None => "none known".to_string(),
        }
    );
    Ok(Rendered::ok(out))
}

fn cmd_graph(spec: &str, degree_graph: bool, format: Format) -> Result<Rendered, Failure> {
    let descriptor = GroupDescriptor::parse(spec)?;
    let graph: Graph = if descriptor.is_partial() {
        if degree_graph {
            return Err(Failure::usage(format!(
                "{descriptor} has only partial vertex data, so no degree graph"
            )));
        }
        descriptor.vertex_data()?.to_graph().graph().clone()
    } else {
        let degrees: DegreeSet = descriptor.degree_set(&load_table()?)?;
        if degree_graph {
            DegreeGraph::from_degree_set(&degrees).graph().clone()
        } else {
            PrimeGraph::from_degree_set(&degrees).graph().clone()
        }
    };
    Ok(Rendered::ok(match format {
        Format::Dot => graph.to_dot(),
        Format::Json => graph.to_json(),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "vertices: {}", list(graph.vertices()));
            let _ = writeln!(out, "edges: {}", edge_text(&graph));
            if graph.is_partial() {
                let _ = writeln!(out, "partial: edges are a lower bound");
            }
            out
        }
    }))
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<Rendered, Failure> {
    let mut config = ScanConfig::default();
    if let Some(v) = args.max_f {
        config.max_f = v;
    }
    if let Some(v) = args.max_q {
        config.max_q = v;
    }
    if let Some(v) = args.max_suzuki_exp {
        config.max_suzuki_exponent = v;
    }
    if let Some(v) = args.max_psl3_q {
        config.max_psl3_q = v;
    }
    config.validate()?;

    let check = args.check.as_str();
    let mut report = if let Some(spec) = check.strip_prefix("palfy:") {
        let descriptor = GroupDescriptor::parse(spec)?;
        palfy_check(&descriptor, &load_table()?)?
    } else {
        match check {
            "psl2-even" => scan_psl2_even(config.max_f, config.execution)?,
            "psl2-odd" => scan_psl2_odd(config.max_q, config.execution)?,
            "thm-a" | "thm-b" | "thm-c" | "bipartite" | "excluded-families" => {
                let table = load_table()?;
                match check {
                    "thm-a" => verify_theorem_a(&config, &table)?,
                    "thm-b" => verify_theorem_b(&config, &table)?,
                    "thm-c" => verify_theorem_c(&config, &table)?,
                    "bipartite" => verify_bipartite_bound(&config, &table)?,
                    _ => verify_excluded_simple_families(&config, &table)?,
                }
            }
            other => {
                return Err(Failure::usage(format!(
                    "unknown check {other:?}; expected one of thm-a, thm-b, thm-c, psl2-even, \
                     psl2-odd, excluded-families, bipartite, palfy:<spec>"
                )))
            }
        }
    };
    if args.no_timing {
        report.elapsed = None;
    }
    let code = if report.success() { 0 } else { 2 };
    let text = match format {
        Format::Json => to_json(&report),
        _ => report_text(&report),
    };
    Ok(Rendered { text, code })
}

fn report_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "check: {}", report.check_id);
    let _ = writeln!(out, "range: {}", report.parameter_range);
    let _ = writeln!(out, "instances: {}", report.instances.len());
    for inst in &report.instances {
        if let Some([a, b, c]) = inst.violating_triple {
            let _ = writeln!(
                out,
                "violating triple for {}: ({a},{b},{c})",
                inst.descriptor
            );
        }
    }
    let _ = writeln!(out, "counterexamples: {}", report.counterexamples.len());
    for ce in &report.counterexamples {
        let _ = writeln!(out, "  {}: {}", ce.instance, ce.assertion);
        for f in &ce.factorizations {
            let _ = writeln!(out, "    {} = {}", f.label, f.value);
        }
    }
    if !report.notable.is_empty() {
        let _ = writeln!(out, "notable:");
        for note in &report.notable {
            let _ = writeln!(out, "  {note}");
        }
    }
    if let Some(elapsed) = report.elapsed {
        let _ = writeln!(out, "elapsed: {:.3} ms", elapsed.as_secs_f64() * 1000.0);
    }
    let _ = writeln!(
        out,
        "result: {}",
        if report.success() {
            "success"
        } else {
            "FAILED"
        }
    );
    out
}

/// Parses `u-v` edges and bare vertices separated by commas or newlines.
fn parse_edge_list(text: &str) -> Result<PrimeGraph, Failure> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let label = |tok: &str| -> Result<u128, Failure> {
        let tok = tok.trim();
        let v: u128 = tok
            .parse()
            .map_err(|_| Failure::usage(format!("vertex label {tok:?} is not a number")))?;
        if !numtheory::is_prime(v) {
            return Err(Failure::usage(format!("vertex label {tok} is not prime")));
        }
        Ok(v)
    };
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for item in line.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.split_once('-') {
                Some((u, v)) => {
                    let (u, v) = (label(u)?, label(v)?);
                    vertices.extend([u, v]);
                    edges.push((u, v));
                }
                None => vertices.push(label(item)?),
            }
        }
    }
    if vertices.is_empty() {
        return Err(Failure::usage("the graph has no vertices"));
    }
    vertices.sort_unstable();
    vertices.dedup();
    Ok(PrimeGraph::from_edges(vertices, &edges)?)
}

#[derive(Serialize)]
struct ClassifyJson<'a> {
    graph: &'a Graph,
    #[serde(flatten)]
    verdict: &'a ClassificationVerdict,
}

fn cmd_classify(args: &ClassifyArgs, format: Format) -> Result<Rendered, Failure> {
    let text = match (&args.edges, &args.file) {
        (Some(edges), _) => edges.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(Failure::usage("pass --edges or --file")),
    };
    let graph = parse_edge_list(&text)?;
    let verdict = classify(&graph, &WitnessCatalog::default(), &load_table()?)?;
    Ok(Rendered::ok(match format {
        Format::Json => to_json(&ClassifyJson {
            graph: graph.graph(),
            verdict: &verdict,
        }),
        _ => format!(
            "graph: {} vertices, edges {}\nverdict: {verdict}\n",
            graph.len(),
            edge_text(&graph)
        ),
    }))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}
