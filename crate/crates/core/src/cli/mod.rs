//! The `pocdim` command line.
//!
//! Exit codes: 0 answered or verified, 1 input error, 2 budget exhausted or
//! inconclusive, 3 a checked property failed.

pub mod format;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::competition::{build_digraph, competition_graph, is_realization, Graph, PointConfig};
use crate::dimsearch::{dim_poc, CellStatus, DimResult, DimValue, SearchBudget};
use crate::es_extract::{chain_or_antichain, extract_monotone_triple, monotone_in, StructureKind};
use crate::geometry::{comparable, order_types, Point};
use crate::lemmas::{verify, Lemma, Scale};

pub use format::{format_graph, format_points, parse_graph, parse_points, ParseError};

#[derive(Debug, Parser)]
#[command(name = "pocdim", version, about = "Competition graphs of d-partial orders")]
pub struct Cli {
    /// Print the JSON certificate instead of a text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the search (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized commands; recorded in every certificate.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Arcs of D_S and edges of its competition graph for a point file.
    Compete { points: PathBuf },
    /// Order types of two incomparable points of a point file.
    Ordertype { points: PathBuf, u: String, v: String },
    /// Chain or antichain of length n+1 among n^2+1 planar points.
    Es {
        points: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Three points monotone in coordinates {1, t, ..., d}.
    Extract {
        points: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Randomized check of a lemma: three, min, incomparable, erdos, extract, main, theorem.
    Verify {
        lemma: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        part_size: Option<usize>,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        beta: Option<usize>,
        #[arg(long)]
        gamma: Option<usize>,
    },
    /// Bounds the partial order competition dimension of a graph file.
    Dimsearch {
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Dimension search on the complete multipartite graph K_{m x n}.
    Probe {
        m: usize,
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 3)]
    pub d_max: usize,
    /// Defaults to the edge count.
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Per-shard node limit.
    #[arg(long, default_value_t = 20_000_000)]
    pub node_limit: u64,
    /// Search dimensions 0..2 instead of using the characterizations.
    #[arg(long)]
    pub no_oracles: bool,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            d_max: self.d_max,
            k_max: self.k_max,
            node_limit: self.node_limit,
            use_oracles: !self.no_oracles,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Inconclusive,
    Violated,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Inconclusive => 2,
            Status::Violated => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub status: Status,
    pub detail: String,
}

/// Machine-readable result of one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateDoc {
    pub command: String,
    /// SHA-256 over the command, its arguments and input file contents.
    pub inputs_digest: String,
    pub seed: u64,
    pub result: Value,
    pub verification: Verification,
}

struct Output {
    doc: CertificateDoc,
    text: String,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, InputError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

fn pairs(list: &[(String, String)]) -> Value {
    Value::Array(list.iter().map(|(a, b)| json!([a, b])).collect())
}

fn lines(list: &[(String, String)]) -> String {
    list.iter().map(|(a, b)| format!("{a} {b}\n")).collect()
}

fn verified(detail: impl Into<String>) -> Verification {
    Verification {
        status: Status::Verified,
        detail: detail.into(),
    }
}

fn compete(points: &Path, seed: u64) -> Result<Output, InputError> {
    let text = read_input(points)?;
    let cfg = parse_points(&text)?;
    let dg = build_digraph(&cfg);
    let g = competition_graph(&dg);
    let (arcs, edges, isolated) = (dg.arc_labels(), g.edge_labels(), g.isolated_labels());
    let result = json!({
        "dim": cfg.dim(),
        "arcs": pairs(&arcs),
        "edges": pairs(&edges),
        "isolated": isolated,
    });
    let summary = format!(
        "arcs:\n{}edges:\n{}isolated:\n{}",
        lines(&arcs),
        lines(&edges),
        isolated.iter().map(|l| format!("{l}\n")).collect::<String>()
    );
    Ok(Output {
        doc: CertificateDoc {
            command: "compete".into(),
            inputs_digest: digest(&["compete", &text]),
            seed,
            result,
            verification: verified("computed from the definition"),
        },
        text: summary,
    })
}

fn lookup<'a>(cfg: &'a PointConfig, label: &str) -> Result<&'a Point, InputError> {
    cfg.point(label).ok_or_else(|| InputError(format!("no point labelled {label:?}")))
}

fn ordertype(points: &Path, u: &str, v: &str, seed: u64) -> Result<Output, InputError> {
    let text = read_input(points)?;
    let cfg = parse_points(&text)?;
    let (pu, pv) = (lookup(&cfg, u)?, lookup(&cfg, v)?);
    if comparable(pu, pv)? {
        return Err(InputError(format!("{u} = {pu} and {v} = {pv} are comparable; order types need an incomparable pair")));
    }
    let types = order_types(pu, pv)?;
    let result = json!({ "u": u, "v": v, "types": types });
    let summary: String = types.iter().map(|t| format!("{t}\n")).collect();
    Ok(Output {
        doc: CertificateDoc {
            command: "ordertype".into(),
            inputs_digest: digest(&["ordertype", &text, u, v]),
            seed,
            result,
            verification: verified(format!("{} order type(s)", types.len())),
        },
        text: summary,
    })
}

fn labels_of(cfg: &PointConfig, indices: &[usize]) -> Vec<String> {
    indices.iter().map(|&i| cfg.entries()[i].0.clone()).collect()
}

fn es(points: &Path, n: usize, seed: u64) -> Result<Output, InputError> {
    let text = read_input(points)?;
    let cfg = parse_points(&text)?;
    let pts: Vec<Point> = cfg.entries().iter().map(|(_, p)| p.clone()).collect();
    let r = chain_or_antichain(&pts, n)?;
    let mut ok = r.len() > n;
    for (a, &i) in r.indices.iter().enumerate() {
        for &j in &r.indices[a + 1..] {
            let c = comparable(&pts[i], &pts[j])?;
            ok &= c == (r.kind == StructureKind::Chain);
        }
    }
    let labels = labels_of(&cfg, &r.indices);
    let kind = if r.kind == StructureKind::Chain { "chain" } else { "antichain" };
    let verification = if ok {
        verified(format!("{kind} of length {} >= {}", r.len(), n + 1))
    } else {
        Verification {
            status: Status::Violated,
            detail: format!("returned {kind} fails its check"),
        }
    };
    Ok(Output {
        doc: CertificateDoc {
            command: "es".into(),
            inputs_digest: digest(&["es", &text, &n.to_string()]),
            seed,
            result: json!({ "kind": kind, "labels": labels, "length": r.len() }),
            verification,
        },
        text: format!("{kind}: {}\n", labels.join(" ")),
    })
}

fn extract(points: &Path, t: usize, seed: u64) -> Result<Output, InputError> {
    let text = read_input(points)?;
    let cfg = parse_points(&text)?;
    let pts: Vec<Point> = cfg.entries().iter().map(|(_, p)| p.clone()).collect();
    let tr = extract_monotone_triple(&pts, t)?;
    let [x, y, z] = &tr.points;
    let d = cfg.dim();
    let ok = std::iter::once(1).chain(t..=d).all(|j| monotone_in(x, y, z, j));
    let labels = labels_of(&cfg, &tr.indices);
    let trace: Vec<Vec<String>> = tr.trace.iter().map(|round| labels_of(&cfg, round)).collect();
    let verification = if ok {
        verified("monotone in every checked coordinate")
    } else {
        Verification {
            status: Status::Violated,
            detail: "returned triple is not monotone".into(),
        }
    };
    Ok(Output {
        doc: CertificateDoc {
            command: "extract".into(),
            inputs_digest: digest(&["extract", &text, &t.to_string()]),
            seed,
            result: json!({ "t": t, "triple": labels, "points": tr.points, "trace": trace }),
            verification,
        },
        text: format!("{}\n", labels.join(" ")),
    })
}

fn run_verify(lemma: &str, trials: u64, scale: Scale, seed: u64) -> Result<Output, InputError> {
    let lemma: Lemma = lemma.parse()?;
    let report = verify(lemma, trials, seed, scale)?;
    let args = serde_json::to_string(&report.scale)?;
    let verification = if report.all_passed() {
        verified(format!("{}/{} trials passed", report.passed, report.trials))
    } else {
        Verification {
            status: Status::Violated,
            detail: report.first_counterexample.clone().unwrap_or_default(),
        }
    };
    let text = format!("{lemma}: {} passed, {} failed\n", report.passed, report.failed);
    Ok(Output {
        doc: CertificateDoc {
            command: "verify".into(),
            inputs_digest: digest(&["verify", lemma.name(), &trials.to_string(), &args]),
            seed,
            result: serde_json::to_value(&report)?,
            verification,
        },
        text,
    })
}

fn dim_text(r: &DimResult) -> String {
    let mut out = match r.value {
        DimValue::Exact(d) => format!("dim_poc = {d}\n"),
        DimValue::AtMost(d) => format!("dim_poc <= {d} (lower bound {})\n", r.lower_bound),
        DimValue::GreaterThan(d) => format!("dim_poc > {d}\n"),
        DimValue::Unknown => format!("undetermined (lower bound {})\n", r.lower_bound),
    };
    for c in &r.cells {
        let status = match c.status {
            CellStatus::Found => "found",
            CellStatus::Exhausted => "exhausted",
            CellStatus::Truncated => "truncated",
            CellStatus::TooLarge => "too large",
        };
        out.push_str(&format!("  d={} k={}: {status} ({} nodes)\n", c.d, c.k, c.nodes));
    }
    if let Some(w) = &r.witness {
        out.push_str("witness:\n");
        out.push_str(&format_points(w));
    }
    out
}

fn search_output(command: &str, g: &Graph, budget: &BudgetArgs, seed: u64, input: &str) -> Result<Output, InputError> {
    let r = dim_poc(g, &budget.budget())?;
    // Re-check the witness from scratch, independently of the search.
    let witness_ok = match &r.witness {
        Some(w) => is_realization(&parse_points(&format_points(w))?, g, g.labels())?,
        None => true,
    };
    let settled = matches!(r.value, DimValue::Exact(_) | DimValue::GreaterThan(_));
    let verification = if !witness_ok {
        Verification {
            status: Status::Violated,
            detail: "witness does not realize the graph".into(),
        }
    } else if settled {
        verified(match &r.witness {
            Some(_) => "witness re-verified; smaller dimensions ruled out",
            None => "settled without a point witness",
        })
    } else {
        Verification {
            status: Status::Inconclusive,
            detail: "budget exhausted before the dimension was settled".into(),
        }
    };
    let result = json!({
        "graph": { "labels": g.labels(), "edges": pairs(&g.edge_labels()) },
        "dim": r,
        "witness_points": r.witness.as_ref().map(format_points),
    });
    let args = format!("{} {:?} {} {}", budget.d_max, budget.k_max, budget.node_limit, budget.no_oracles);
    Ok(Output {
        doc: CertificateDoc {
            command: command.into(),
            inputs_digest: digest(&[command, input, &args]),
            seed,
            result,
            verification,
        },
        text: dim_text(&r),
    })
}

fn dispatch(cli: &Cli) -> Result<Output, InputError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Compete { points } => compete(points, seed),
        Command::Ordertype { points, u, v } => ordertype(points, u, v, seed),
        Command::Es { points, n } => es(points, *n, seed),
        Command::Extract { points, t } => extract(points, *t, seed),
        Command::Verify {
            lemma,
            trials,
            d,
            n,
            t,
            part_size,
            alpha,
            beta,
            gamma,
        } => {
            let scale = Scale {
                d: *d,
                n: *n,
                t: *t,
                part_size: *part_size,
                alpha: *alpha,
                beta: *beta,
                gamma: *gamma,
            };
            run_verify(lemma, *trials, scale, seed)
        }
        Command::Dimsearch { graph, budget } => {
            let text = read_input(graph)?;
            let g = parse_graph(&text)?;
            search_output("dimsearch", &g, budget, seed, &text)
        }
        Command::Probe { m, n, budget } => {
            let g = Graph::complete_multipartite(*m, *n);
            if g.is_empty() {
                return Err(InputError("K_{m x n} needs m, n >= 1".into()));
            }
            search_output("probe", &g, budget, seed, &format!("{m} {n}"))
        }
    }
}

/// Runs the command line `args` (including the program name), writing the
/// result to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(InputError(e.to_string())),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(o) => {
            let written = if cli.json {
                serde_json::to_string_pretty(&o.doc).map(|s| writeln!(out, "{s}"))
            } else {
                Ok(write!(out, "{}", o.text))
            };
            if !matches!(written, Ok(Ok(()))) {
                return 1;
            }
            if o.doc.verification.status != Status::Verified && !cli.json {
                let _ = writeln!(err, "{}", o.doc.verification.detail);
            }
            o.doc.verification.status.exit_code()
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

pub fn run_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
