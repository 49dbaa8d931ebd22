use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Map, Value};
use tcdesign::design::{clique_slse_reduce, hypercube_design, spanning_tree_labelling};
use tcdesign::format::{parse_formula, parse_graph, write_graph};
use tcdesign::hardness::{assignment_to_labelling, build_gadget, Assignment, XorFormula};
use tcdesign::random::{clique_trials, gnp_trials, summarize};
use tcdesign::reachability::tc_failures;
use tcdesign::removal::{greedy_removal, removal_profit_exact, ExactConfig};
use tcdesign::{foremost, Journey, Label, TemporalGraph, Vertex};

const MAX_WITNESSES: usize = 10;

#[derive(Parser)]
#[command(name = "tcdesign", version, about = "Temporal connectivity tools")]
struct Cli {
    /// Worker threads for parallel TC checks and trials (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check temporal connectivity. Exit 0 if TC, 1 if not, 2 on error.
    CheckTc {
        /// Graph file, or `-` for stdin.
        path: PathBuf,
    },
    /// Foremost arrival times and journeys from one source.
    Foremost {
        path: PathBuf,
        source: Vertex,
        /// Journeys depart strictly after this time.
        #[arg(long, default_value_t = 0)]
        start_time: Label,
    },
    /// Spanning-tree labelling of cost 2(n-1).
    Design {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: Vertex,
    },
    /// SLSE hypercube labelling of dimension k.
    Hypercube { k: u32 },
    /// Remove floor(n/4) labels from an SLSE clique while keeping TC.
    ReduceClique { path: PathBuf },
    /// Removal profit, exact or greedy.
    #[command(group(ArgGroup::new("mode").required(true).args(["exact", "greedy"])))]
    Removal {
        path: PathBuf,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        greedy: bool,
        /// Label order seed; required with --greedy.
        #[arg(long, required_if_eq("greedy", "true"))]
        seed: Option<u64>,
        /// Exact search refuses inputs with more labels.
        #[arg(long, default_value_t = ExactConfig::default().label_cap)]
        label_cap: usize,
        /// Exact search node budget.
        #[arg(long, default_value_t = ExactConfig::default().node_budget)]
        node_budget: u64,
        /// Also write the residual graph here.
        #[arg(long)]
        residual: Option<PathBuf>,
    },
    /// Reduction gadget of a monotone Max-XOR(3) formula.
    Gadget { formula: PathBuf },
    /// Sub-labelling of the gadget encoding an assignment.
    Assign {
        formula: PathBuf,
        /// One 0/1 character per variable.
        assignment: String,
    },
    /// Random labellings sparsified through a temporal router.
    #[command(group(ArgGroup::new("router").required(true).args(["clique", "gnp"])))]
    Sparsify {
        #[arg(long)]
        clique: bool,
        #[arg(long)]
        gnp: bool,
        #[arg(long)]
        n: usize,
        /// Edge probability (G(n,p) only).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        alpha: Label,
        /// Router size factor: s = ceil(gamma log2 n) (clique only).
        #[arg(long, default_value_t = 4.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, io::Error),
    Lib(tcdesign::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<tcdesign::Error> for CliError {
    fn from(e: tcdesign::Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(path.into(), e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))
    }
}

fn load_graph(path: &Path) -> CliResult<TemporalGraph> {
    parse_graph(&read_input(path)?).map_err(|e| match e {
        tcdesign::Error::Parse { line, message } => {
            CliError::Usage(format!("{}:{line}: {message}", path.display()))
        }
        other => other.into(),
    })
}

fn load_formula(path: &Path) -> CliResult<XorFormula> {
    parse_formula(&read_input(path)?).map_err(|e| match e {
        tcdesign::Error::Parse { line, message } => {
            CliError::Usage(format!("{}:{line}: {message}", path.display()))
        }
        other => other.into(),
    })
}

fn emit(text: &str) -> CliResult<()> {
    let mut out = BufWriter::new(io::stdout().lock());
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Io("<stdout>".into(), e))
}

fn emit_json(v: &Value) -> CliResult<()> {
    emit(&format!("{v}\n"))
}

fn journey_json(j: &Journey) -> Value {
    Value::Array(
        j.steps
            .iter()
            .map(|t| json!([t.from, t.to, t.label]))
            .collect(),
    )
}

fn check_tc(path: &Path) -> CliResult<ExitCode> {
    let g = load_graph(path)?;
    let failures = tc_failures(&g, MAX_WITNESSES);
    let tc = failures.is_empty();
    emit_json(&json!({ "tc": tc, "witness_failures": failures }))?;
    Ok(if tc {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn foremost_cmd(path: &Path, source: Vertex, start_time: Label) -> CliResult<()> {
    let g = load_graph(path)?;
    let res = foremost(&g, source, start_time)?;
    let mut arrival = Map::new();
    let mut journeys = Map::new();
    for v in 0..g.vertex_count() {
        arrival.insert(v.to_string(), json!(res.arrival[v]));
        let j = res.reconstruct(v)?;
        journeys.insert(v.to_string(), j.as_ref().map_or(Value::Null, journey_json));
    }
    emit_json(&json!({
        "source": source,
        "start_time": start_time,
        "arrival": arrival,
        "journeys": journeys,
    }))
}

fn removal_cmd(
    path: &Path,
    exact: bool,
    seed: Option<u64>,
    label_cap: usize,
    node_budget: u64,
    residual: Option<&Path>,
) -> CliResult<()> {
    let g = load_graph(path)?;
    let seed = seed.unwrap_or(0);
    let r = if exact {
        removal_profit_exact(
            &g,
            ExactConfig {
                label_cap,
                node_budget,
                seed,
            },
        )?
    } else {
        greedy_removal(&g, seed)?
    };
    if let Some(p) = residual {
        fs::write(p, write_graph(&r.residual)).map_err(|e| CliError::Io(p.into(), e))?;
    }
    let removed: Vec<Value> = r
        .removed
        .iter()
        .map(|(e, l)| json!([e.u, e.v, l]))
        .collect();
    emit_json(&json!({
        "mode": if exact { "exact" } else { "greedy" },
        "seed": seed,
        "cost": g.cost(),
        "profit": r.profit,
        "exact": r.exact,
        "removed": removed,
    }))
}

fn assign_cmd(formula: &Path, assignment: &str) -> CliResult<()> {
    let phi = load_formula(formula)?;
    let values = assignment
        .chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CliError::Usage(format!(
                "assignment character '{other}' is not 0 or 1"
            ))),
        })
        .collect::<CliResult<Vec<bool>>>()?;
    let tau = Assignment::new(&phi, values)?;
    let gadget = build_gadget(&phi);
    let l = assignment_to_labelling(&gadget, &tau)?;
    emit(&format!(
        "# satisfied {}\n# removed {}\n{}",
        tau.satisfied,
        gadget.graph.cost() - l.cost(),
        write_graph(&l)
    ))
}

fn sparsify_cmd(
    clique: bool,
    n: usize,
    p: f64,
    alpha: Label,
    gamma: f64,
    trials: usize,
    seed: u64,
) -> CliResult<()> {
    let reports = if clique {
        clique_trials(n, alpha, gamma, trials, seed)?
    } else {
        gnp_trials(n, p, alpha, trials, seed)?
    };
    let mut text = String::new();
    for r in &reports {
        text.push_str(&serde_json::to_string(r).expect("report serializes"));
        text.push('\n');
    }
    text.push_str(&json!({ "summary": summarize(&reports) }).to_string());
    text.push('\n');
    emit(&text)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::CheckTc { path } => return check_tc(&path),
        Command::Foremost {
            path,
            source,
            start_time,
        } => foremost_cmd(&path, source, start_time)?,
        Command::Design { path, root } => {
            let g = load_graph(&path)?;
            emit(&write_graph(&spanning_tree_labelling(&g, root)?.labelling))?
        }
        Command::Hypercube { k } => emit(&write_graph(&hypercube_design(k)?.labelling))?,
        Command::ReduceClique { path } => {
            emit(&write_graph(&clique_slse_reduce(&load_graph(&path)?)?))?
        }
        Command::Removal {
            path,
            exact,
            greedy: _,
            seed,
            label_cap,
            node_budget,
            residual,
        } => removal_cmd(
            &path,
            exact,
            seed,
            label_cap,
            node_budget,
            residual.as_deref(),
        )?,
        Command::Gadget { formula } => {
            let g = build_gadget(&load_formula(&formula)?);
            emit(&write_graph(&g.graph))?
        }
        Command::Assign {
            formula,
            assignment,
        } => assign_cmd(&formula, &assignment)?,
        Command::Sparsify {
            clique,
            gnp: _,
            n,
            p,
            alpha,
            gamma,
            trials,
            seed,
        } => sparsify_cmd(clique, n, p, alpha, gamma, trials, seed)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
