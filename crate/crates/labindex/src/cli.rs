//! The `labindex` command line.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use labindex_core::bounds::{bound_report, BoundHints};
use labindex_core::cayley::{embed_tree, labeling_from_subgraph, sphere_bfs, sphere_count, Target};
use labindex_core::constructions::{self as cons, ConstructionResult};
use labindex_core::solver::{IndexValue, SolveOptions};
use labindex_core::{induced_labels, FamilySpec, Graph, IndexKind, VertexLabeling};
use serde_json::json;

use crate::formats::{parse_edge_list, parse_graph6};
use crate::parallel::{pool, solve, Limits};
use crate::{json as js, scan, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INTERVAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "labindex", version, about = "Sum index and difference index of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the sum or difference index of one graph with a certificate.
    Index(IndexArgs),
    /// Compute both indices for each graph6 line and compare them.
    Scan(ScanArgs),
    /// Recompute the known family values and report mismatches.
    VerifyPaper(VerifyArgs),
    /// Sphere sizes in the hyperdiamond H_k or the grid Q_k.
    Sphere(SphereArgs),
    /// Embed a tree in H_k or Q_k from one of its labelings.
    Embed(EmbedArgs),
    /// Build one of the explicit family labelings.
    Construct(ConstructArgs),
    /// Lower and upper bounds without search.
    Bounds(BoundsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Sum,
    Diff,
}

impl From<KindArg> for IndexKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Sum => IndexKind::Sum,
            KindArg::Diff => IndexKind::Diff,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum InputFormat {
    /// `family:` prefix selects a family, a leading digit an edge list,
    /// anything else graph6.
    #[default]
    Auto,
    Graph6,
    Edgelist,
    Family,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetArg {
    /// The hyperdiamond H_k.
    Hd,
    /// The grid Q_k.
    Qk,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Hd => Target::Hyperdiamond,
            TargetArg::Qk => Target::Grid,
        }
    }
}

#[derive(Debug, Args)]
struct Resources {
    /// Search nodes allowed per candidate k.
    #[arg(long, env = "LABINDEX_BUDGET_NODES", default_value_t = labindex_core::solver::DEFAULT_NODE_BUDGET)]
    budget_nodes: u64,
    /// Wall-clock limit per index in milliseconds; 0 means none.
    #[arg(long, env = "LABINDEX_BUDGET_MS", default_value_t = 60_000)]
    budget_ms: u64,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, env = "LABINDEX_WORKERS")]
    workers: Option<usize>,
}

impl Resources {
    fn limits(&self) -> Limits {
        Limits { nodes: self.budget_nodes, time: (self.budget_ms > 0).then(|| Duration::from_millis(self.budget_ms)) }
    }

    fn pool(&self) -> rayon::ThreadPool {
        let n = self.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        pool(n.max(1))
    }
}

#[derive(Debug, Args)]
struct GraphSource {
    /// How to read SOURCE.
    #[arg(long, value_enum, default_value_t)]
    input: InputFormat,
    /// `family:<name>:<params>`, a file path, `-` for stdin, or literal
    /// graph6 text.
    source: String,
}

#[derive(Debug, Args)]
struct IndexArgs {
    /// Which index to compute.
    #[arg(long, value_enum)]
    kind: KindArg,
    #[command(flatten)]
    graph: GraphSource,
    #[command(flatten)]
    resources: Resources,
    /// Try a direct search over labels in [-B, B] before the exact search.
    #[arg(long)]
    brute_force_bound: Option<i64>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// File of graph6 lines; stdin if omitted.
    file: Option<String>,
    #[command(flatten)]
    resources: Resources,
    /// Print only the summary line.
    #[arg(long)]
    summary_only: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    resources: Resources,
    /// Print JSON lines instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SphereArgs {
    /// Target Cayley graph.
    #[arg(long, value_enum)]
    target: TargetArg,
    /// Dimension.
    #[arg(short)]
    k: usize,
    /// Radius.
    #[arg(short)]
    r: usize,
    /// Also count by breadth-first search (k <= 5, r <= 8).
    #[arg(long)]
    check_bfs: bool,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    /// Target Cayley graph.
    #[arg(long, value_enum)]
    target: TargetArg,
    #[command(flatten)]
    graph: GraphSource,
    /// Comma-separated vertex labels; an optimal labeling is computed if
    /// omitted.
    #[arg(long, allow_hyphen_values = true)]
    labeling: Option<String>,
    /// Dimension; defaults to the number of labels the labeling induces.
    #[arg(short)]
    k: Option<usize>,
    /// Rebuild a labeling from the image and report its count.
    #[arg(long)]
    round_trip: bool,
    #[command(flatten)]
    resources: Resources,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    /// cycle-sum, cycle-diff, path-diff, spider-sum, spider-diff,
    /// wheel-diff, ladder-sum, grid-sum, grid-diff, prism-sum, prism-diff,
    /// complete-diff, complete-bipartite-diff, caterpillar-diff,
    /// disjoint-triangles-sum or prescribed-sum.
    name: String,
    /// Comma-separated parameters.
    params: String,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// Which index to compute.
    #[arg(long, value_enum)]
    kind: KindArg,
    #[command(flatten)]
    graph: GraphSource,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

type CmdResult = Result<i32, String>;

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut io = Io { stdin, out };
    let result = match cli.command {
        Command::Index(a) => cmd_index(a, &mut io),
        Command::Scan(a) => cmd_scan(a, &mut io),
        Command::VerifyPaper(a) => cmd_verify(a, &mut io),
        Command::Sphere(a) => cmd_sphere(a, &mut io),
        Command::Embed(a) => cmd_embed(a, &mut io),
        Command::Construct(a) => cmd_construct(a, &mut io),
        Command::Bounds(a) => cmd_bounds(a, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn emit(io: &mut Io, v: &serde_json::Value) -> Result<(), String> {
    writeln!(io.out, "{v}").map_err(|e| e.to_string())
}

fn read_source(src: &str, io: &mut Io) -> Result<String, String> {
    if src == "-" {
        let mut s = String::new();
        io.stdin.read_to_string(&mut s).map_err(|e| e.to_string())?;
        return Ok(s);
    }
    if std::path::Path::new(src).is_file() {
        return std::fs::read_to_string(src).map_err(|e| format!("{src}: {e}"));
    }
    Ok(src.to_string())
}

fn load_graph(g: &GraphSource, io: &mut Io) -> Result<Graph, String> {
    let family = |s: &str| -> Result<Graph, String> {
        let spec: FamilySpec = s.parse().map_err(|e| format!("{e}"))?;
        spec.generate().map_err(|e| e.to_string())
    };
    match g.input {
        InputFormat::Family => family(g.source.strip_prefix("family:").unwrap_or(&g.source)),
        InputFormat::Auto if g.source.starts_with("family:") => family(&g.source["family:".len()..]),
        fmt => {
            let text = read_source(&g.source, io)?;
            let edge_list = match fmt {
                InputFormat::Edgelist => true,
                InputFormat::Graph6 => false,
                _ => text.trim_start().starts_with(|c: char| c.is_ascii_digit()),
            };
            if edge_list {
                parse_edge_list(&text).map_err(|e| e.to_string())
            } else {
                let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
                parse_graph6(line).map_err(|e| e.to_string())
            }
        }
    }
}

fn cmd_index(a: IndexArgs, io: &mut Io) -> CmdResult {
    let g = load_graph(&a.graph, io)?;
    let opts = SolveOptions { brute_force_bound: a.brute_force_bound, ..SolveOptions::default() };
    let (cert, elapsed) =
        solve(&a.resources.pool(), &g, a.kind.into(), &opts, a.resources.limits()).map_err(|e| e.to_string())?;
    emit(io, &js::certificate(&g, &cert, elapsed))?;
    Ok(match cert.value {
        IndexValue::Exact(_) => EXIT_OK,
        IndexValue::Interval { .. } => EXIT_INTERVAL,
    })
}

fn cmd_scan(a: ScanArgs, io: &mut Io) -> CmdResult {
    let text = match &a.file {
        Some(f) => std::fs::read_to_string(f).map_err(|e| format!("{f}: {e}"))?,
        None => read_source("-", io)?,
    };
    let records = scan::scan(&a.resources.pool(), &text, a.resources.limits());
    if !a.summary_only {
        for r in &records {
            emit(io, &r.to_json())?;
        }
    }
    emit(io, &scan::ScanSummary::of(&records).to_json())?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, io: &mut Io) -> CmdResult {
    let checks = verify::verify(&a.resources.pool(), a.resources.limits());
    if a.json {
        for c in &checks {
            emit(io, &c.to_json())?;
        }
    } else {
        write!(io.out, "{}", verify::table(&checks)).map_err(|e| e.to_string())?;
    }
    let bad = checks.iter().filter(|c| !c.ok).count();
    if bad > 0 {
        return Err(format!("{bad} of {} checks disagree", checks.len()));
    }
    Ok(EXIT_OK)
}

fn cmd_sphere(a: SphereArgs, io: &mut Io) -> CmdResult {
    let target: Target = a.target.into();
    let closed = sphere_count(target, a.k, a.r);
    let mut v = json!({
        "target": target.as_str(),
        "k": a.k,
        "r": a.r,
        "closed_form": js::int(&num_bigint::BigInt::from(closed.clone())),
    });
    if a.check_bfs {
        let bfs = sphere_bfs(target, a.k, a.r).map_err(|e| e.to_string())?;
        v["bfs"] = json!(bfs);
        v["match"] = json!(closed == num_bigint::BigUint::from(bfs));
    }
    emit(io, &v)?;
    Ok(EXIT_OK)
}

fn parse_labels(s: &str) -> Result<VertexLabeling, String> {
    let vals: Result<Vec<num_bigint::BigInt>, _> = s.split(',').map(|t| t.trim().parse()).collect();
    VertexLabeling::new(vals.map_err(|e| format!("bad label: {e}"))?).map_err(|e| e.to_string())
}

fn cmd_embed(a: EmbedArgs, io: &mut Io) -> CmdResult {
    let tree = load_graph(&a.graph, io)?;
    let target: Target = a.target.into();
    let kind = target.kind();
    let f = match &a.labeling {
        Some(s) => parse_labels(s)?,
        None => {
            let (c, _) = solve(&a.resources.pool(), &tree, kind, &SolveOptions::default(), a.resources.limits())
                .map_err(|e| e.to_string())?;
            c.labeling
        }
    };
    let count = induced_labels(&tree, &f, kind).map_err(|e| e.to_string())?.count;
    let k = a.k.unwrap_or(count);
    let cert = embed_tree(&tree, &f, target, k).map_err(|e| e.to_string())?;
    let mut v = js::embedding(&cert);
    if a.round_trip {
        let back = labeling_from_subgraph(target, k, &cert.vertex_map, tree.edges()).map_err(|e| e.to_string())?;
        let c = induced_labels(&tree, &back, kind).map_err(|e| e.to_string())?.count;
        v["round_trip"] = json!({ "labeling": js::labeling(&back), "count": c });
    }
    emit(io, &v)?;
    Ok(EXIT_OK)
}

fn nums(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| format!("bad parameter {t:?}")))
        .collect()
}

fn construct(name: &str, p: &[usize]) -> Result<ConstructionResult, String> {
    let one = || match p {
        [x] => Ok(*x),
        _ => Err(format!("{name} takes one parameter")),
    };
    let two = || match p {
        [x, y] => Ok((*x, *y)),
        _ => Err(format!("{name} takes two parameters")),
    };
    let r = match name {
        "cycle-sum" => cons::cycle_sum(one()?),
        "cycle-diff" => cons::cycle_diff(one()?),
        "path-diff" => cons::path_diff(one()?),
        "spider-sum" => cons::spider_sum(p),
        "spider-diff" => cons::spider_diff(p),
        "wheel-diff" => cons::wheel_diff(one()?),
        "ladder-sum" => cons::ladder_sum(one()?),
        "grid-sum" => cons::grid_sum(p),
        "grid-diff" => cons::grid_diff(p),
        "prism-sum" => cons::prism_labelings(one()?).map(|(s, _)| s),
        "prism-diff" => cons::prism_labelings(one()?).map(|(_, d)| d),
        "complete-diff" => cons::complete_diff(one()?),
        "complete-bipartite-diff" => {
            let (n, m) = two()?;
            cons::complete_bipartite_diff(n, m)
        }
        "caterpillar-diff" => cons::caterpillar_diff(p),
        "disjoint-triangles-sum" => cons::disjoint_triangles_sum(one()?),
        "prescribed-sum" => {
            let (n, k) = two()?;
            cons::prescribed_sum_index_graph(n, k)
        }
        _ => return Err(format!("unknown construction {name:?}")),
    };
    r.map_err(|e| e.to_string())
}

fn cmd_construct(a: ConstructArgs, io: &mut Io) -> CmdResult {
    let p = nums(&a.params)?;
    if p.is_empty() && a.name != "caterpillar-diff" {
        return Err("missing parameters".into());
    }
    let r = construct(&a.name, &p)?;
    let b = bound_report(&r.graph, r.kind, &BoundHints::default()).map_err(|e| e.to_string())?;
    emit(io, &js::construction(&r, &b))?;
    Ok(EXIT_OK)
}

fn cmd_bounds(a: BoundsArgs, io: &mut Io) -> CmdResult {
    let g = load_graph(&a.graph, io)?;
    let b = bound_report(&g, a.kind.into(), &BoundHints::default()).map_err(|e| e.to_string())?;
    let mut v = js::bounds(&b);
    v["kind"] = json!(IndexKind::from(a.kind).as_str());
    v["graph"] = js::graph(&g);
    v["witness"] = b.best_witness().map_or(serde_json::Value::Null, js::labeling);
    emit(io, &v)?;
    Ok(EXIT_OK)
}
