use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rainbow::coloring::verify_with_witnesses;
use rainbow::connectivity::vertex_connectivity;
use rainbow::diameter::{construct_k3_unchecked, construct_k4_unchecked};
use rainbow::generators::{GeneratorSpec, Instance};
use rainbow::io::{self, DiameterReport, InputSummary, Outcome, PlanarReport, RunReport};
use rainbow::oracle::{default_work_cap, rc_exact, WORK_CAP_ENV};
use rainbow::planar::{construct_planar, PlanarEmbedding};
use rainbow::{Error, Graph};

const EXIT_USAGE: u8 = 1;
const EXIT_UNVERIFIED: u8 = 2;
const EXIT_BOUND: u8 = 3;

/// Rainbow connection colorings for highly connected graphs.
#[derive(Parser, Debug)]
#[command(name = "rainbow", version)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance and write it to disk.
    Gen {
        /// clique_tower, perturbed_tower, stacked_triangulation,
        /// random_connected, or a named graph (K_5, C_7, octahedron, ...).
        #[arg(long)]
        family: String,
        /// Comma-separated integer parameters.
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge-list output file.
        #[arg(long)]
        out: PathBuf,
        /// Rotation-system output file (embedded families only).
        #[arg(long)]
        rotation_out: Option<PathBuf>,
    },
    /// Metrics and vertex connectivity of a graph.
    Analyze(Input),
    /// Build a rainbow coloring.
    Construct {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Coloring JSON output file.
        #[arg(long)]
        coloring_out: Option<PathBuf>,
        /// DOT output file.
        #[arg(long)]
        dot_out: Option<PathBuf>,
    },
    /// Check a coloring for rainbow connectivity.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Coloring JSON file.
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Exact rainbow connection number by exhaustive search.
    RcExact {
        #[command(flatten)]
        input: Input,
        /// Largest number of colors to try.
        #[arg(long, default_value_t = 8)]
        budget: usize,
        /// Search step cap; defaults to the RAINBOW_WORK_CAP environment
        /// variable, else 10^8.
        #[arg(long)]
        work_cap: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Edge-list file.
    #[arg(long, required_unless_present = "rotation", conflicts_with = "rotation")]
    graph: Option<PathBuf>,
    /// Rotation-system file.
    #[arg(long)]
    rotation: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Diameter,
    Planar,
}

/// Failure with the exit code it maps to.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(EXIT_USAGE, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: rainbow::Result<T>) -> Result<T, Fail> {
    r.map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

enum Loaded {
    Graph(Graph),
    Embedded(PlanarEmbedding),
}

impl Loaded {
    fn graph(&self) -> &Graph {
        match self {
            Loaded::Graph(g) => g,
            Loaded::Embedded(e) => e.graph(),
        }
    }
}

fn load(input: &Input) -> Result<Loaded, Fail> {
    match (&input.graph, &input.rotation) {
        (Some(p), _) => Ok(Loaded::Graph(with_path(p, io::parse_edge_list(&read(p)?))?)),
        (None, Some(p)) => Ok(Loaded::Embedded(with_path(p, io::parse_rotation(&read(p)?))?)),
        (None, None) => Err(Fail(EXIT_USAGE, "one of --graph or --rotation is required".into())),
    }
}

/// Report plus exit code.
type Run = (RunReport, u8);

fn report(input: InputSummary, outcome: Option<Outcome>, details: Value) -> RunReport {
    RunReport { command: std::env::args().collect(), input, outcome, elapsed_ms: 0.0, details }
}

fn exit_code(o: &Outcome) -> u8 {
    if !o.verified {
        EXIT_UNVERIFIED
    } else if !o.bound_met {
        EXIT_BOUND
    } else {
        0
    }
}

fn gen(family: String, params: Vec<usize>, seed: u64, out: &Path, rotation_out: Option<&Path>) -> Result<Run, Fail> {
    let spec = GeneratorSpec { family, params, seed };
    let instance = spec.build()?;
    write(out, &io::emit_edge_list(instance.graph()))?;
    match (rotation_out, &instance) {
        (Some(p), Instance::Embedded(e)) => write(p, &io::emit_rotation(e))?,
        (Some(_), Instance::Graph(_)) => {
            return Err(Fail(EXIT_USAGE, format!("family {} has no embedding", spec.family)));
        }
        (None, _) => {}
    }
    let details = json!({ "spec": spec, "out": out, "rotation_out": rotation_out });
    Ok((report(InputSummary::of(instance.graph()), None, details), 0))
}

fn analyze(input: &Input) -> Result<Run, Fail> {
    let loaded = load(input)?;
    let g = loaded.graph();
    let mut details = json!({ "metrics": rainbow::graph::metrics(g) });
    if let Loaded::Embedded(e) = &loaded {
        details["planar"] = json!(e.validate_maximal_planar()?);
    }
    Ok((report(InputSummary::of(g), None, details), 0))
}

fn construct(input: &Input, mode: Mode, coloring_out: Option<&Path>, dot_out: Option<&Path>) -> Result<Run, Fail> {
    let loaded = load(input)?;
    let g = loaded.graph();
    let (coloring, outcome, details) = match mode {
        Mode::Diameter => {
            let con = match vertex_connectivity(g) {
                3 => construct_k3_unchecked(g)?,
                4 => construct_k4_unchecked(g)?,
                k => return Err(Fail(EXIT_USAGE, format!("diameter mode needs connectivity 3 or 4, found {k}"))),
            };
            let r = DiameterReport::from(&con);
            let o = Outcome { palette: r.palette, bound: Some(r.bound), bound_met: r.bound_met, verified: r.verified };
            (con.coloring, o, json!(r))
        }
        Mode::Planar => {
            let Loaded::Embedded(emb) = &loaded else {
                return Err(Fail(EXIT_USAGE, "planar mode needs --rotation".into()));
            };
            let con = construct_planar(emb)?;
            let r = PlanarReport::from(&con);
            let o = Outcome { palette: r.palette, bound: Some(r.bound), bound_met: r.bound_met, verified: r.verified };
            (con.coloring, o, json!(r))
        }
    };
    if let Some(p) = coloring_out {
        write(p, &io::emit_coloring_json(g, &coloring)?)?;
    }
    if let Some(p) = dot_out {
        write(p, &io::emit_dot(g, &coloring)?)?;
    }
    let code = exit_code(&outcome);
    Ok((report(InputSummary::of(g), Some(outcome), details), code))
}

fn verify(input: &Input, coloring: &Path) -> Result<Run, Fail> {
    let loaded = load(input)?;
    let g = loaded.graph();
    let col = with_path(coloring, io::parse_coloring_json(g, &read(coloring)?))?;
    let v = verify_with_witnesses(g, &col)?;
    let outcome = Outcome { palette: col.palette_size(), bound: None, bound_met: true, verified: v.rainbow_connected };
    let details = json!({ "failing_pair": v.failing_pair });
    let code = exit_code(&outcome);
    Ok((report(InputSummary::of(g), Some(outcome), details), code))
}

fn rc(input: &Input, budget: usize, work_cap: Option<u64>) -> Result<Run, Fail> {
    let loaded = load(input)?;
    let g = loaded.graph();
    let cap = work_cap.unwrap_or_else(default_work_cap);
    let outcome = rc_exact(g, budget, cap)?;
    let details = json!({ "result": outcome, "budget": budget, "work_cap": cap, "work_cap_env": WORK_CAP_ENV });
    Ok((report(InputSummary::of(g), None, details), 0))
}

/// `key: value` lines, nested keys joined with dots.
fn pretty(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                pretty(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                pretty(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Gen { family, params, seed, out, rotation_out } => {
            gen(family.clone(), params.clone(), *seed, out, rotation_out.as_deref())
        }
        Command::Analyze(input) => analyze(input),
        Command::Construct { input, mode, coloring_out, dot_out } => {
            construct(input, *mode, coloring_out.as_deref(), dot_out.as_deref())
        }
        Command::Verify { input, coloring } => verify(input, coloring),
        Command::RcExact { input, budget, work_cap } => rc(input, *budget, *work_cap),
    };
    match result {
        Ok((mut run, code)) => {
            run.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let value = serde_json::to_value(&run).expect("report serializes");
            if cli.pretty {
                let mut out = String::new();
                pretty("", &value, &mut out);
                print!("{out}");
            } else {
                println!("{value}");
            }
            ExitCode::from(code)
        }
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
