//! Batch front-end for the hybridwc engine.

pub mod config;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hybridwc_core::graphs::{enumerate_trees, tree_to_dot, tree_to_json};
use hybridwc_core::verify::Registry;
use serde_json::{json, Value};

use config::{read_config_file, resolve, Overrides, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Parser)]
#[command(name = "hybridwc", version, about = "Exact genus-zero hybrid-model wall-crossing computations")]
pub struct Cli {
    /// JSON model configuration.
    #[arg(short = 'c', long = "config", global = true)]
    pub config: Option<PathBuf>,
    /// Built-in model: quintic, cubic-pair, quadric-quadruple, weighted-quartic-pair.
    #[arg(long, global = true)]
    pub model: Option<String>,
    /// Stability parameter: 0+, p/q, an integer, or inf.
    #[arg(long, global = true)]
    pub epsilon: Option<String>,
    /// Highest q-degree.
    #[arg(long = "max-degree", global = true, allow_negative_numbers = true)]
    pub max_degree: Option<i64>,
    /// Work in the fixed-point basis with equivariant parameters.
    #[arg(long, global = true)]
    pub equivariant: bool,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of the small J-function.
    Jfun,
    /// Mirror-map coefficients.
    Mu,
    /// Catalogue of decorated localization trees.
    Graphs {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        beta: Option<u32>,
        #[arg(long = "max-vertices")]
        max_vertices: Option<usize>,
        /// Emit Graphviz instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Run one of the identity checks.
    Verify {
        /// residues, edges, poles or limit
        check: String,
    },
}

/// Outcome of a command: the report text and the exit code.
pub struct Output {
    pub text: String,
    pub code: i32,
}

fn usage(msg: impl Into<String>) -> (String, i32) {
    (msg.into(), EXIT_USAGE)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn load(cli: &Cli) -> Result<RunConfig, (String, i32)> {
    let file = match &cli.config {
        Some(path) => Some(read_config_file(path).map_err(usage)?),
        None => None,
    };
    let ov = Overrides { model: cli.model.clone(), epsilon: cli.epsilon.clone(), max_degree: cli.max_degree };
    resolve(file, &ov).map_err(usage)
}

/// Execute a parsed command line.  Errors carry their exit code.
pub fn execute(cli: &Cli) -> Result<Output, (String, i32)> {
    let cfg = load(cli)?;
    let p = &cfg.model;
    match &cli.command {
        Command::Jfun | Command::Mu => {
            let rows = match cli.command {
                Command::Jfun => report::jfun_rows(p, cli.equivariant),
                _ => report::mu_rows(p),
            };
            let text = match cli.format {
                Format::Json => pretty(&report::rows_json(p, &rows)),
                Format::Csv => report::rows_csv(&rows),
                Format::Latex => report::rows_latex(&rows),
            };
            Ok(Output { text, code: EXIT_OK })
        }
        Command::Graphs { n, beta, max_vertices, dot } => {
            let n = n.unwrap_or(cfg.graphs.n);
            let beta = beta.unwrap_or(cfg.graphs.beta);
            let max_vertices = max_vertices.unwrap_or(cfg.graphs.max_vertices);
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            if cli.format != Format::Json {
                return Err(usage("graphs supports JSON or --dot only"));
            }
            let trees = enumerate_trees(n, beta, p, max_vertices);
            let text = if *dot {
                trees
                    .iter()
                    .enumerate()
                    .map(|(i, t)| tree_to_dot(t, p).replacen("graph tree", &format!("graph tree{i}"), 1))
                    .collect::<Vec<_>>()
                    .join("\n")
            } else {
                pretty(&json!({
                    "model": report::model_json(p),
                    "epsilon": p.epsilon.to_string(),
                    "n": n,
                    "beta": beta,
                    "max_vertices": max_vertices,
                    "trees": trees.iter().map(|t| tree_to_json(t, p)).collect::<Vec<_>>(),
                }))
            };
            Ok(Output { text, code: EXIT_OK })
        }
        Command::Verify { check } => {
            let reg = Registry::default();
            let Some(v) = reg.get(check) else {
                return Err(usage(format!("unknown check {check:?}; expected one of {}", reg.names().join(", "))));
            };
            let outcome = v.run(p, p.max_q_degree).map_err(|e| (format!("{check}: {e}"), EXIT_FAILED))?;
            let code = if outcome.passed() { EXIT_OK } else { EXIT_FAILED };
            let mut report = outcome.to_json();
            report["epsilon"] = p.epsilon.to_string().into();
            report["max_degree"] = p.max_q_degree.into();
            let text = match cli.format {
                Format::Json => pretty(&report),
                Format::Csv => format!(
                    "verifier,model,checks,passed\n{},\"{}\",{},{}\n",
                    outcome.verifier,
                    outcome.model,
                    outcome.checks,
                    outcome.passed()
                ),
                Format::Latex => return Err(usage("verify reports are JSON or CSV")),
            };
            Ok(Output { text, code })
        }
    }
}

/// Cap rayon's pool from `HYBRIDWC_THREADS`.
pub fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("HYBRIDWC_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("HYBRIDWC_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("HYBRIDWC_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

/// Run and write the report; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    if let Err(e) = init_threads() {
        eprintln!("hybridwc: {e}");
        return EXIT_USAGE;
    }
    let (text, code) = match execute(cli) {
        Ok(o) => (o.text, o.code),
        Err((msg, code)) => {
            eprintln!("hybridwc: {msg}");
            return code;
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("hybridwc: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    code
}
