//! Command-line front end: reads a rotation-system file (and optionally a
//! list file), runs one command and prints a JSON report.
//!
//! Exit codes: 0 for a yes answer (or a report without one), 1 for no,
//! 2 for errors.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use surfcol::choosability::{decide_choosable, profile_set};
use surfcol::cylinder::peel_sequence;
use surfcol::embedding::{parse_map, write_map, CombinatorialMap, FaceId, VertexId, INFINITE_GIRTH};
use surfcol::generate::{large_planar_girth5, random_girth5_map, Surface};
use surfcol::lists::{parse_lists, ListAssignment};
use surfcol::oracle::brute_colorable;
use surfcol::params::SolverParams;
use surfcol::solver::{decide_precolored_subgraph, decide_traced, find_coloring, SolverInstance};
use surfcol::topology::{classify_cycle, find_short_cycle, ShortCycleMode, Subgraph};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "surfcol", version, about = "3-list-coloring of girth-five graphs on surfaces")]
struct Cli {
    /// JSON file with solver parameters (missing fields keep their defaults).
    #[arg(long, global = true)]
    params: Option<PathBuf>,
    /// Accept maps with cycles shorter than five.
    #[arg(long, global = true)]
    skip_girth_check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Instance {
    /// Rotation-system file.
    map: PathBuf,
    /// List file; vertices without a line get {1, 2, 3}.
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Faces of F, comma separated; by default a small set of faces
    /// covering the precolored vertices is chosen.
    #[arg(long, value_delimiter = ',')]
    faces: Option<Vec<FaceId>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    NonFContractible,
    NonContractibleNotAlmost,
    AlmostContractible,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    Sphere,
    ProjectivePlane,
    Torus,
}

#[derive(Subcommand)]
enum Command {
    /// Decide L-colorability; precolored vertices are those with one color.
    Decide(Instance),
    /// Decide whether the precoloring of a subgraph extends.
    Extend {
        #[command(flatten)]
        instance: Instance,
        /// Edges of the precolored subgraph besides those between
        /// precolored vertices.
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
    },
    /// Construct an L-coloring.
    Color(Instance),
    /// Decide 3-choosability, or dump C(S, G) for a boundary S.
    Choosable {
        map: PathBuf,
        #[arg(long, value_delimiter = ',')]
        boundary: Option<Vec<VertexId>>,
    },
    /// Size, genus, girth and faces of a map.
    Stats { map: PathBuf },
    /// Classify a cycle relative to F and drilled faces.
    Classify {
        map: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        cycle: Vec<VertexId>,
        #[arg(long, value_delimiter = ',')]
        faces: Vec<FaceId>,
        #[arg(long, value_delimiter = ',')]
        drilled: Vec<FaceId>,
    },
    /// Shortest cycle of bounded length qualifying under a mode.
    ShortCycle {
        map: PathBuf,
        #[arg(long)]
        bound: usize,
        #[arg(long, value_delimiter = ',')]
        faces: Vec<FaceId>,
        #[arg(long, value_enum, default_value = "non-f-contractible")]
        mode: Mode,
    },
    /// Nested shortest separating cycles between two faces of a plane map.
    Cylinder {
        map: PathBuf,
        #[arg(long)]
        f1: FaceId,
        #[arg(long)]
        f2: FaceId,
        #[arg(long)]
        length: usize,
    },
    /// Compare the solver with brute force on one instance.
    Verify(Instance),
    /// Time the solver on generated planar instances without precoloring.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "10000,20000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Write a random girth-five map in the rotation-system format.
    Generate {
        #[arg(long, value_enum, default_value = "sphere")]
        surface: SurfaceArg,
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct Stats {
    vertices: usize,
    edges: usize,
    faces: usize,
    euler_genus: usize,
    orientable: bool,
    components: usize,
    girth: Option<usize>,
    precolored: usize,
    marked_faces: usize,
}

#[derive(Serialize)]
struct RunReport {
    schema_version: u32,
    command: &'static str,
    answer: Option<bool>,
    witness: Option<Value>,
    stats: Option<Stats>,
    trace: Option<Value>,
    params: SolverParams,
    overrides: Vec<String>,
    error: Option<String>,
    /// Milliseconds per phase.
    timings: BTreeMap<String, f64>,
}

impl RunReport {
    fn new(command: &'static str, params: &SolverParams) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command,
            answer: None,
            witness: None,
            stats: None,
            trace: None,
            params: params.clone(),
            overrides: params.overrides(),
            error: None,
            timings: BTreeMap::new(),
        }
    }

    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings.insert(phase.to_string(), t.elapsed().as_secs_f64() * 1e3);
        out
    }
}

fn stats(map: &CombinatorialMap, s: usize, f: usize) -> Stats {
    let g = map.girth();
    Stats {
        vertices: map.num_vertices(),
        edges: map.num_edges(),
        faces: map.num_faces(),
        euler_genus: map.euler_genus(),
        orientable: map.is_orientable(),
        components: map.components().len(),
        girth: (g != INFINITE_GIRTH).then_some(g),
        precolored: s,
        marked_faces: f,
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_map(path: &Path, skip_girth_check: bool) -> anyhow::Result<CombinatorialMap> {
    let map = parse_map(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if !skip_girth_check && !map.has_girth_at_least(5) {
        bail!("{}: the graph has a cycle of length at most four (girth five is assumed)", path.display());
    }
    Ok(map)
}

/// Faces chosen greedily (most uncovered precolored vertices first, least
/// id on ties) until every precolored vertex is covered.
fn covering_faces(map: &CombinatorialMap, s: &[VertexId]) -> Vec<FaceId> {
    let mut left: Vec<VertexId> = s.to_vec();
    let mut out = Vec::new();
    while !left.is_empty() {
        let best = (0..map.num_faces())
            .max_by_key(|&f| {
                let on = map.face_vertices(f);
                (left.iter().filter(|v| on.contains(v)).count(), std::cmp::Reverse(f))
            })
            .expect("a precolored vertex lies on some face");
        let on = map.face_vertices(best);
        left.retain(|v| !on.contains(v));
        out.push(best);
    }
    out.sort_unstable();
    out
}

struct Loaded {
    map: CombinatorialMap,
    lists: ListAssignment,
    s: Vec<VertexId>,
    faces: Vec<FaceId>,
}

fn load_instance(inst: &Instance, skip: bool, report: &mut RunReport) -> anyhow::Result<Loaded> {
    let (map, lists) = report.time("parse", || -> anyhow::Result<_> {
        let map = load_map(&inst.map, skip)?;
        let lists = match &inst.lists {
            Some(p) => parse_lists(&read(p)?, map.num_vertices()).with_context(|| format!("parsing {}", p.display()))?,
            None => ListAssignment::uniform(map.num_vertices(), &[1, 2, 3]),
        };
        Ok((map, lists))
    })?;
    let s = lists.precolored();
    let faces = inst.faces.clone().unwrap_or_else(|| covering_faces(&map, &s));
    report.stats = Some(stats(&map, s.len(), faces.len()));
    Ok(Loaded { map, lists, s, faces })
}

fn run(cli: &Cli, report: &mut RunReport) -> anyhow::Result<()> {
    let params = report.params.clone();
    let skip = cli.skip_girth_check;
    match &cli.command {
        Command::Decide(inst) => {
            let l = load_instance(inst, skip, report)?;
            let si = SolverInstance::new(l.map, l.faces, l.s, l.lists, params)?;
            let (answer, trace) = report.time("solve", || decide_traced(&si))?;
            report.answer = Some(answer);
            report.trace = Some(serde_json::to_value(trace)?);
        }
        Command::Extend { instance, edges } => {
            let l = load_instance(instance, skip, report)?;
            if let Some(&e) = edges.iter().find(|&&e| e >= l.map.num_edges()) {
                bail!("edge {e} does not exist");
            }
            let mut q = Subgraph::induced(&l.map, &l.s);
            let extra = Subgraph::from_edges(&l.map, edges);
            for (a, b) in q.vertices.iter_mut().zip(&extra.vertices) {
                *a |= b;
            }
            for (a, b) in q.edges.iter_mut().zip(&extra.edges) {
                *a |= b;
            }
            report.answer = Some(report.time("solve", || decide_precolored_subgraph(&l.map, &q, &l.lists, &params))?);
        }
        Command::Color(inst) => {
            let l = load_instance(inst, skip, report)?;
            let q = Subgraph::induced(&l.map, &l.s);
            let coloring = report.time("solve", || find_coloring(&l.map, &q, &l.lists, &params))?;
            report.answer = Some(coloring.is_some());
            report.witness = coloring.map(|c| json!(c));
        }
        Command::Choosable { map, boundary } => {
            let map = report.time("parse", || load_map(map, skip))?;
            report.stats = Some(stats(&map, 0, 0));
            match boundary {
                None => report.answer = Some(report.time("solve", || decide_choosable(&map, &params))?),
                Some(b) => {
                    let c = report.time("solve", || profile_set(&map, b, &params))?;
                    report.answer = Some(c.all_extendable());
                    report.witness = Some(serde_json::to_value(&c)?);
                }
            }
        }
        Command::Stats { map } => {
            let map = report.time("parse", || load_map(map, true))?;
            report.stats = Some(stats(&map, 0, 0));
            let faces: Vec<Value> =
                (0..map.num_faces()).map(|f| json!({"face": f, "vertices": map.face_vertices(f)})).collect();
            report.witness = Some(json!(faces));
        }
        Command::Classify { map, cycle, faces, drilled } => {
            let map = report.time("parse", || load_map(map, skip))?;
            report.stats = Some(stats(&map, 0, faces.len()));
            let class = report.time("solve", || classify_cycle(&map, cycle, faces, drilled))?;
            report.witness = Some(serde_json::to_value(class)?);
        }
        Command::ShortCycle { map, bound, faces, mode } => {
            let map = report.time("parse", || load_map(map, skip))?;
            report.stats = Some(stats(&map, 0, faces.len()));
            let mode = match mode {
                Mode::NonFContractible => ShortCycleMode::NonFContractible,
                Mode::NonContractibleNotAlmost => ShortCycleMode::NonContractibleNotAlmost,
                Mode::AlmostContractible => ShortCycleMode::AlmostContractible,
            };
            let found = report.time("solve", || find_short_cycle(&map, faces, *bound, mode))?;
            report.answer = Some(found.is_some());
            report.witness = Some(serde_json::to_value(found)?);
        }
        Command::Cylinder { map, f1, f2, length } => {
            let map = report.time("parse", || load_map(map, skip))?;
            report.stats = Some(stats(&map, 0, 2));
            let seq = report.time("solve", || peel_sequence(&map, *f1, *f2, *length))?;
            report.witness = Some(serde_json::to_value(seq)?);
        }
        Command::Verify(inst) => {
            let l = load_instance(inst, skip, report)?;
            let want = report.time("oracle", || brute_colorable(&l.map, &l.lists, params.oracle_vertex_cap))?.is_some();
            let si = SolverInstance::new(l.map, l.faces, l.s, l.lists, params)?;
            let (got, trace) = report.time("solve", || decide_traced(&si))?;
            report.answer = Some(got == want);
            report.witness = Some(json!({"solver": got, "oracle": want}));
            report.trace = Some(serde_json::to_value(trace)?);
        }
        Command::Bench { sizes, seed } => {
            let mut rows = Vec::new();
            let mut prev: Option<f64> = None;
            let mut ok = true;
            for &n in sizes {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                if n < 4 {
                    bail!("benchmark sizes start at 4 vertices");
                }
                let map = report.time(&format!("generate_{n}"), || large_planar_girth5(&mut rng, n));
                let lists = ListAssignment::uniform(n, &[1, 2, 3]);
                let t = Instant::now();
                let si = SolverInstance::new(map, Vec::new(), Vec::new(), lists, params.clone())?;
                let answer = surfcol::solver::decide(&si)?;
                let secs = t.elapsed().as_secs_f64();
                report.timings.insert(format!("solve_{n}"), secs * 1e3);
                let ratio = prev.map(|p| secs / p.max(1e-9));
                ok &= answer && secs <= 60.0 && ratio.is_none_or(|r| r <= 3.0);
                rows.push(json!({"vertices": n, "answer": answer}));
                prev = Some(secs);
            }
            report.answer = Some(ok);
            report.witness = Some(json!(rows));
        }
        Command::Generate { surface, vertices, seed } => {
            let surface = match surface {
                SurfaceArg::Sphere => Surface::Sphere,
                SurfaceArg::ProjectivePlane => Surface::ProjectivePlane,
                SurfaceArg::Torus => Surface::Torus,
            };
            if surface != Surface::Sphere && *vertices < 7 {
                bail!("maps off the sphere need at least 7 vertices");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let map = report.time("generate", || random_girth5_map(&mut rng, surface, *vertices));
            report.stats = Some(stats(&map, 0, 0));
            report.witness = Some(json!(write_map(&map)));
        }
    }
    Ok(())
}

fn load_params(path: &Option<PathBuf>) -> anyhow::Result<SolverParams> {
    match path {
        None => Ok(SolverParams::default()),
        Some(p) => serde_json::from_str(&read(p)?).with_context(|| format!("parsing {}", p.display())),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Decide(_) => "decide",
        Command::Extend { .. } => "extend",
        Command::Color(_) => "color",
        Command::Choosable { .. } => "choosable",
        Command::Stats { .. } => "stats",
        Command::Classify { .. } => "classify",
        Command::ShortCycle { .. } => "short-cycle",
        Command::Cylinder { .. } => "cylinder",
        Command::Verify(_) => "verify",
        Command::Bench { .. } => "bench",
        Command::Generate { .. } => "generate",
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let params = match load_params(&cli.params) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut report = RunReport::new(name, &params);
    let result = run(&cli, &mut report);
    if let Err(e) = &result {
        report.error = Some(format!("{e:#}"));
        eprintln!("error: {e:#}");
    }
    match serde_json::to_string_pretty(&report) {
        Ok(s) => {
            let _ = writeln!(std::io::stdout().lock(), "{s}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match (result, report.answer) {
        (Err(_), _) => ExitCode::from(2),
        (Ok(()), Some(false)) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
