use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use relabel_core::exact_path::{path_distance_on, path_exact_t_feasible, path_flip_sequence_on};
use relabel_core::exact_star::{star_distance_on, star_exact_t_feasible, star_flip_sequence_on};
use relabel_core::instance::{InstanceFile, Kind, LabelsJson};
use relabel_core::oracle::{ConfigurationSpace, DEFAULT_CAPACITY};
use relabel_core::privileged::{puzzle_instance, resolve, PrivilegedInstance};
use relabel_core::reductions::{edge_to_vertex, vertex_to_edge, EdgeInstance, VertexInstance};
use relabel_core::transform::{distance_upper_bound, spanning_tree_transform_traced, LabelMode};
use relabel_core::{
    apply_sequence, EdgeFlip, Error, Family, FlipSequence, Graph, Permutation, VertexFlipSequence,
    VertexLabeling,
};

const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

/// Exact flip distances and flip sequences for graph relabeling.
///
/// All machine output is one line of JSON on stdout. Exit status: 0 success
/// or "yes", 1 "no" or unsolvable, 2 usage or input error, 3 capacity
/// exceeded.
#[derive(Parser, Debug)]
#[command(name = "relabel", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Render vertices, edges, labels and flips counting from 1.
    #[arg(long, global = true)]
    one_based: bool,
    /// Raise or lower the oracle's state limit (default 10! states).
    #[arg(long, global = true, value_name = "STATES")]
    capacity_override: Option<u128>,
    /// Human-readable tables on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph of a family, or a labeling.
    Gen(GenArgs),
    /// Flip distance between two labelings.
    Distance(DistanceArgs),
    /// A flip sequence between two labelings, checked before printing.
    Transform(TransformArgs),
    /// Translate an instance between the vertex and edge problems.
    Reduce(ReduceArgs),
    /// Decide a privileged-label instance.
    Solvable(SolvableArgs),
    /// Build (and optionally solve) a sliding-puzzle instance.
    Puzzle(PuzzleArgs),
    /// Breadth-first queries over the configuration space.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Graph family to generate.
    #[arg(long, conflicts_with = "labels", required_unless_present = "labels")]
    family: Option<String>,
    /// Labeling to generate instead of a graph.
    #[arg(long, value_enum)]
    labels: Option<LabelKind>,
    /// Vertex count (side length for grids; label count for labelings).
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Edge probability for random graphs.
    #[arg(long)]
    p: Option<f64>,
    /// Emit the labeling as edge labels.
    #[arg(long)]
    edge: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LabelKind {
    Identity,
    Reversal,
    Random,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
}

#[derive(Args, Debug)]
struct DistanceArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, value_enum, default_value = "auto")]
    method: DistanceMethod,
    /// Also report whether exactly this many flips can reach the target.
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DistanceMethod {
    Auto,
    Path,
    Star,
    Bfs,
    TreeBound,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, value_enum, default_value = "auto")]
    method: TransformMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TransformMethod {
    Auto,
    Path,
    Star,
    Tree,
    Bfs,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    direction: Direction,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    V2e,
    E2v,
}

#[derive(Args, Debug)]
struct SolvableArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Bound on the number of restricted flips (overrides the file's `t`).
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Args, Debug)]
struct PuzzleArgs {
    /// Board side length.
    #[arg(long)]
    side: usize,
    /// Start board, row-major tiles with `side² - 1` as the blank.
    #[arg(long, value_delimiter = ',', required = true)]
    b1: Vec<usize>,
    /// Goal board.
    #[arg(long, value_delimiter = ',', required = true)]
    b2: Vec<usize>,
    /// Move bound.
    #[arg(long)]
    k: usize,
    /// Answer the instance instead of printing it.
    #[arg(long)]
    solve: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "distance")]
    query: Query,
    #[arg(long)]
    from: Option<PathBuf>,
    #[arg(long)]
    to: Option<PathBuf>,
    /// Walk length for `exact-t`.
    #[arg(long)]
    t: Option<usize>,
    /// Privileged labels; restricts the legal flips.
    #[arg(long, value_delimiter = ',')]
    privileged: Vec<usize>,
    /// Search edge labelings (the line graph) instead of vertex labelings.
    #[arg(long)]
    edge: bool,
    /// How many reachable states `component` lists.
    #[arg(long, default_value_t = 0)]
    list: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Query {
    Distance,
    ExactT,
    Diameter,
    Distribution,
    Component,
}

/// Outcome of a subcommand: the JSON to print and the exit status.
struct Report {
    json: Value,
    code: u8,
}

impl Report {
    fn ok(json: Value) -> Self {
        Report { json, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.json);
            ExitCode::from(report.code)
        }
        Err(err) => {
            let code = exit_code(&err);
            eprintln!("error: {err:#}");
            println!("{}", json!({ "error": format!("{err:#}"), "exit": code }));
            ExitCode::from(code)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::CapacityExceeded { .. }) => EXIT_CAPACITY,
        Some(Error::Unsolvable(_)) => EXIT_NO,
        _ => EXIT_USAGE,
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let c = &cli.common;
    if let Some(cap) = c.capacity_override {
        eprintln!(
            "warning: oracle capacity overridden to {cap} states (default {DEFAULT_CAPACITY}); large searches may exhaust memory"
        );
    }
    match &cli.command {
        Command::Gen(a) => gen(c, a),
        Command::Distance(a) => distance(c, a),
        Command::Transform(a) => transform(c, a),
        Command::Reduce(a) => reduce(c, a),
        Command::Solvable(a) => solvable(c, a),
        Command::Puzzle(a) => puzzle(c, a),
        Command::Oracle(a) => oracle(c, a),
    }
}

fn capacity(c: &Common) -> u128 {
    c.capacity_override.unwrap_or(DEFAULT_CAPACITY)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn shift(v: &[usize], one_based: bool) -> Vec<usize> {
    v.iter().map(|&x| x + usize::from(one_based)).collect()
}

fn graph_json(g: &Graph, one_based: bool) -> Value {
    let edges: Vec<[usize; 2]> = g
        .edges()
        .iter()
        .map(|&(u, v)| [u + usize::from(one_based), v + usize::from(one_based)])
        .collect();
    json!({ "n": g.n(), "edges": edges })
}

fn flips_json(pairs: &[(usize, usize)], one_based: bool) -> Value {
    let o = usize::from(one_based);
    Value::from(
        pairs
            .iter()
            .map(|&(a, b)| json!([a + o, b + o]))
            .collect::<Vec<_>>(),
    )
}

/// Rewrites every `"flips"` array inside a serialized value to 1-based.
fn shift_flips(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map.iter_mut() {
                if k == "flips" {
                    if let Value::Array(pairs) = x {
                        for p in pairs.iter_mut().filter_map(Value::as_array_mut) {
                            for e in p.iter_mut() {
                                if let Some(i) = e.as_u64() {
                                    *e = json!(i + 1);
                                }
                            }
                        }
                    }
                } else {
                    shift_flips(x);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(shift_flips),
        _ => {}
    }
}

fn gen(c: &Common, a: &GenArgs) -> Result<Report> {
    if let Some(family) = &a.family {
        let family: Family = family.parse()?;
        let g = match (family, a.p) {
            (Family::RandomConnected, Some(p)) => {
                Graph::random_connected(a.n, p, a.seed.unwrap_or(0))?
            }
            (_, _) => Graph::make_family(family, a.n, a.seed)?,
        };
        return Ok(Report::ok(graph_json(&g, c.one_based)));
    }
    let labels: Vec<usize> = match a.labels.expect("clap requires --family or --labels") {
        LabelKind::Identity => (0..a.n).collect(),
        LabelKind::Reversal => (0..a.n).rev().collect(),
        LabelKind::Random => random_permutation(a.n, a.seed.unwrap_or(0)),
    };
    let labels = shift(&labels, c.one_based);
    Ok(Report::ok(if a.edge {
        json!({ "edge_labels": labels })
    } else {
        json!({ "labels": labels })
    }))
}

fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    labels
}

/// A vertex or edge relabeling question, phrased on the graph whose
/// vertices carry the labels (the line graph for edge labels).
struct Problem {
    kind: Kind,
    graph: Graph,
    positions: Graph,
    from: VertexLabeling,
    to: VertexLabeling,
}

impl Problem {
    fn load(p: &PairArgs) -> Result<Self> {
        let graph: Graph = read_json(&p.graph)?;
        let from: LabelsJson = read_json(&p.from)?;
        let to: LabelsJson = read_json(&p.to)?;
        let kind = match (&from, &to) {
            (LabelsJson::Edge { .. }, _) | (_, LabelsJson::Edge { .. }) => Kind::Edge,
            _ => Kind::Vertex,
        };
        graph.require_connected()?;
        let positions = match kind {
            Kind::Vertex => graph.clone(),
            Kind::Edge => graph.line_graph(),
        };
        let from = VertexLabeling::new(from.values().to_vec())?;
        let to = VertexLabeling::new(to.values().to_vec())?;
        for len in [from.len(), to.len()] {
            if len != positions.n() {
                bail!(Error::SizeMismatch {
                    expected: positions.n(),
                    actual: len
                });
            }
        }
        Ok(Problem {
            kind,
            graph,
            positions,
            from,
            to,
        })
    }

    fn space(&self, c: &Common) -> ConfigurationSpace {
        match self.kind {
            Kind::Vertex => ConfigurationSpace::vertex(&self.graph),
            Kind::Edge => ConfigurationSpace::edge(&self.graph),
        }
        .with_capacity(capacity(c))
    }

    fn mode(&self) -> LabelMode {
        match self.kind {
            Kind::Vertex => LabelMode::Vertex,
            Kind::Edge => LabelMode::Edge,
        }
    }

    fn sequence_json(&self, seq: &VertexFlipSequence, one_based: bool) -> Result<Value> {
        let mut v = match self.kind {
            Kind::Vertex => serde_json::to_value(seq)?,
            Kind::Edge => {
                let edges: FlipSequence<EdgeFlip> =
                    seq.iter().map(|f| EdgeFlip(f.0, f.1)).collect();
                serde_json::to_value(&edges)?
            }
        };
        if one_based {
            shift_flips(&mut v);
        }
        Ok(v)
    }
}

fn is_star(g: &Graph) -> bool {
    g.n() >= 3 && g.star_center().is_some()
}

fn distance(c: &Common, a: &DistanceArgs) -> Result<Report> {
    let p = Problem::load(&a.pair)?;
    let g = &p.positions;
    let space = p.space(c);
    let method = match a.method {
        DistanceMethod::Auto if g.is_path() => DistanceMethod::Path,
        DistanceMethod::Auto if is_star(g) => DistanceMethod::Star,
        DistanceMethod::Auto if space.state_count() <= capacity(c) => DistanceMethod::Bfs,
        DistanceMethod::Auto => DistanceMethod::TreeBound,
        m => m,
    };
    let (d, exact, name) = match method {
        DistanceMethod::Path => (path_distance_on(g, &p.from, &p.to)?, true, "path"),
        DistanceMethod::Star => (star_distance_on(g, &p.from, &p.to)?, true, "star"),
        DistanceMethod::Bfs => {
            let d = space
                .bfs_distance(p.from.as_permutation(), p.to.as_permutation())?
                .expect("unrestricted spaces are connected");
            (d, true, "bfs")
        }
        DistanceMethod::TreeBound => {
            let (seq, _) = spanning_tree_transform_traced(g, &p.from, &p.to)?;
            (seq.len(), false, "tree-bound")
        }
        DistanceMethod::Auto => unreachable!("resolved above"),
    };
    let mut out = json!({ "distance": d, "exact": exact, "method": name });
    if !exact {
        out["bound"] = json!(distance_upper_bound(&p.graph, p.mode()));
    }
    if let Some(t) = a.t {
        let feasible = match name {
            "path" => Some(exact_t_on_path(g, &p.from, &p.to, t)?),
            "star" => Some(exact_t_on_star(g, &p.from, &p.to, t)?),
            "bfs" => Some(space.reachable_in_exactly(
                p.from.as_permutation(),
                p.to.as_permutation(),
                t,
            )?),
            _ => None,
        };
        out["t"] = json!(t);
        out["exact_t_feasible"] = json!(feasible);
    }
    Ok(Report::ok(out))
}

/// Rewrites a labeling of `g` into the coordinates of its own vertex order.
fn along(order: &[usize], l: &VertexLabeling) -> Result<VertexLabeling> {
    Ok(VertexLabeling::new(
        order.iter().map(|&v| l.label(v)).collect(),
    )?)
}

fn exact_t_on_path(
    g: &Graph,
    l: &VertexLabeling,
    target: &VertexLabeling,
    t: usize,
) -> Result<bool> {
    let order = g.path_order().context("graph is not a path")?;
    Ok(path_exact_t_feasible(
        &along(&order, l)?,
        &along(&order, target)?,
        t,
    )?)
}

fn exact_t_on_star(
    g: &Graph,
    l: &VertexLabeling,
    target: &VertexLabeling,
    t: usize,
) -> Result<bool> {
    let center = g.star_center().context("graph is not a star")?;
    let order: Vec<usize> = std::iter::once(center)
        .chain((0..g.n()).filter(|&v| v != center))
        .collect();
    Ok(star_exact_t_feasible(
        &along(&order, l)?,
        &along(&order, target)?,
        t,
    )?)
}

fn transform(c: &Common, a: &TransformArgs) -> Result<Report> {
    let p = Problem::load(&a.pair)?;
    let g = &p.positions;
    let method = match a.method {
        TransformMethod::Auto if g.is_path() => TransformMethod::Path,
        TransformMethod::Auto if is_star(g) => TransformMethod::Star,
        TransformMethod::Auto => TransformMethod::Tree,
        m => m,
    };
    let (seq, name) = match method {
        TransformMethod::Path => (path_flip_sequence_on(g, &p.from, &p.to)?, "path"),
        TransformMethod::Star => (star_flip_sequence_on(g, &p.from, &p.to)?, "star"),
        TransformMethod::Tree => {
            let (seq, steps) = spanning_tree_transform_traced(g, &p.from, &p.to)?;
            if c.verbose {
                eprintln!("{:>8} {:>6} {:>14}", "vertex", "flips", "residual_edges");
                for s in &steps {
                    eprintln!("{:>8} {:>6} {:>14}", s.vertex, s.flips, s.residual_edges);
                }
            }
            (seq, "tree")
        }
        TransformMethod::Bfs => {
            let seq = p
                .space(c)
                .shortest_path(p.from.as_permutation(), p.to.as_permutation())?
                .expect("unrestricted spaces are connected");
            (
                seq.into_iter()
                    .map(|(u, v)| relabel_core::VertexFlip(u, v))
                    .collect(),
                "bfs",
            )
        }
        TransformMethod::Auto => unreachable!("resolved above"),
    };
    let reached = apply_sequence(g, &p.from, &seq)?;
    if reached != p.to {
        bail!("internal error: {name} sequence does not reach the target");
    }
    Ok(Report::ok(json!({
        "length": seq.len(),
        "method": name,
        "sequence": p.sequence_json(&seq, c.one_based)?,
    })))
}

fn reduce(_c: &Common, a: &ReduceArgs) -> Result<Report> {
    let file: InstanceFile = read_json(&a.instance)?;
    let out = match a.direction {
        Direction::V2e => vertex_to_edge(&VertexInstance::from_file(&file)?).to_file(),
        Direction::E2v => edge_to_vertex(&EdgeInstance::from_file(&file)?).to_file(),
    };
    Ok(Report::ok(serde_json::to_value(out)?))
}

fn verdict_report(c: &Common, inst: &PrivilegedInstance) -> Result<Report> {
    let v = resolve(inst, capacity(c))?;
    let mut out = json!({
        "answer": if v.answer { "yes" } else { "no" },
        "method": v.method,
        "witness": v.witness,
    });
    if c.one_based {
        shift_flips(&mut out);
    }
    Ok(Report {
        json: out,
        code: if v.answer { 0 } else { EXIT_NO },
    })
}

fn solvable(c: &Common, a: &SolvableArgs) -> Result<Report> {
    let file: InstanceFile = read_json(&a.instance)?;
    let mut inst = PrivilegedInstance::from_file(&file)?;
    if a.t.is_some() {
        inst.t = a.t;
    }
    verdict_report(c, &inst)
}

fn puzzle(c: &Common, a: &PuzzleArgs) -> Result<Report> {
    let inst = puzzle_instance(a.side, &a.b1, &a.b2, a.k)?;
    if a.solve {
        return verdict_report(c, &inst);
    }
    let o = c.one_based;
    let out = json!({
        "kind": "vertex",
        "graph": graph_json(&inst.graph, o),
        "from": { "labels": shift(inst.from.as_slice(), o) },
        "to": { "labels": shift(inst.to.as_slice(), o) },
        "t": inst.t,
        "privileged": shift(&inst.privileged.iter().copied().collect::<Vec<_>>(), o),
    });
    Ok(Report::ok(out))
}

fn oracle(c: &Common, a: &OracleArgs) -> Result<Report> {
    let graph: Graph = read_json(&a.graph)?;
    let mut space = if a.edge {
        ConfigurationSpace::edge(&graph)
    } else {
        ConfigurationSpace::vertex(&graph)
    };
    if !a.privileged.is_empty() {
        space = space.with_privileged(a.privileged.iter().copied())?;
    }
    let space = space.with_capacity(capacity(c));
    let k = space.positions();
    let load = |path: &Option<PathBuf>, flag: &str| -> Result<Permutation> {
        match path {
            Some(p) => {
                let l: LabelsJson = read_json(p)?;
                Ok(Permutation::new(l.values().to_vec())?)
            }
            None if flag == "--from" => Ok(Permutation::identity(k)),
            None => bail!("{flag} is required for this query"),
        }
    };
    let out = match a.query {
        Query::Distance => {
            let (from, to) = (load(&a.from, "--from")?, load(&a.to, "--to")?);
            match space.shortest_path(&from, &to)? {
                Some(path) => json!({
                    "distance": path.len(),
                    "reachable": true,
                    "flips": flips_json(&path, c.one_based),
                }),
                None => json!({ "distance": null, "reachable": false, "flips": null }),
            }
        }
        Query::ExactT => {
            let t = a.t.context("--t is required for exact-t")?;
            let (from, to) = (load(&a.from, "--from")?, load(&a.to, "--to")?);
            json!({ "t": t, "reachable_in_exactly_t": space.reachable_in_exactly(&from, &to, t)? })
        }
        Query::Diameter => json!({ "diameter": space.diameter()? }),
        Query::Distribution => {
            let from = load(&a.from, "--from")?;
            let hist = space.distance_distribution(&from)?;
            if c.verbose {
                eprintln!("{:>8} {:>10}", "distance", "count");
                for (d, n) in &hist {
                    eprintln!("{d:>8} {n:>10}");
                }
            }
            let hist: serde_json::Map<String, Value> = hist
                .into_iter()
                .map(|(d, n)| (d.to_string(), json!(n)))
                .collect();
            json!({ "distribution": hist })
        }
        Query::Component => {
            let from = load(&a.from, "--from")?;
            let comp = space.component(&from, a.list)?;
            let states: Vec<Vec<usize>> =
                comp.states.iter().map(|s| shift(s, c.one_based)).collect();
            json!({ "size": comp.size, "total": u64::try_from(comp.total).ok(), "states": states })
        }
    };
    Ok(Report::ok(out))
}
