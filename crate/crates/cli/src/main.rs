use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use gadgetlab::exercises::parse_workflow;
use gadgetlab::graph::{parse_graph, ProblemInstance};
use gadgetlab::problems::{decide_bounded, ProblemId};
use gadgetlab::reductions::{apply_reduction, ReductionSpec};
use gadgetlab::verifier::{explain, verify};
use gadgetlab_service::ServiceConfig;

#[derive(Parser)]
#[command(name = "gadgetlab", version, about = "Gadget reductions: check, apply, verify and serve exercises")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a workflow file; prints one diagnostic per line.
    Validate { workflow: PathBuf },
    /// Apply a reduction to a source instance and print the target instance.
    Apply {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        instance: PathBuf,
    },
    /// Decide an instance exhaustively. Exit status 0 if positive, 1 if negative.
    Decide {
        #[arg(long)]
        problem: ProblemId,
        #[arg(long)]
        instance: PathBuf,
        /// Largest node count to attempt.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Verify a reduction. Prints the verdict as JSON and an explanation on
    /// stderr; exit status 0 if no counterexample was found.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        /// Node bound of the counterexample search.
        #[arg(long)]
        bound: Option<usize>,
        /// Seconds before the search stops at the last completed node count.
        #[arg(long)]
        time_budget: Option<f64>,
    },
    /// Print a graph in Graphviz DOT format.
    Render {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run the HTTP service.
    Serve {
        /// TOML config; GADGETLAB_* environment variables override it.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

/// Exit status for usage and input errors.
const ERROR: u8 = 2;

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Writes to stdout; a closed pipe (as with `| head`) is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Validate { workflow } => match parse_workflow(&read(&workflow)?) {
            Ok(w) => {
                emit(&format!("{}: {} tasks, no problems found\n", w.id, w.tasks.len()));
                Ok(0)
            }
            Err(diagnostics) => {
                for d in diagnostics {
                    emit(&format!("{d}\n"));
                }
                Ok(1)
            }
        },
        Command::Apply { spec, instance } => {
            let spec: ReductionSpec = load(&spec)?;
            let source: ProblemInstance = load(&instance)?;
            let target = apply_reduction(&spec, &source).map_err(|e| e.to_string())?;
            emit(&pretty(&target));
            Ok(0)
        }
        Command::Decide { problem, instance, bound } => {
            let inst: ProblemInstance = load(&instance)?;
            let d = decide_bounded(problem, &inst, bound.unwrap_or(problem.default_oracle_bound()))
                .map_err(|e| e.to_string())?;
            emit(&pretty(&d));
            Ok(if d.is_positive() { 0 } else { 1 })
        }
        Command::Verify { spec, bound, time_budget } => {
            let spec: ReductionSpec = load(&spec)?;
            let budget = match time_budget {
                Some(s) if s > 0.0 && s.is_finite() => Some(Duration::from_secs_f64(s)),
                Some(s) => return Err(format!("time budget must be positive, got {s}")),
                None => None,
            };
            let v = verify(&spec, bound, budget).map_err(|e| e.to_string())?;
            emit(&pretty(&v));
            eprintln!("{}", explain(&v));
            Ok(if v.is_correct() { 0 } else { 1 })
        }
        Command::Render { graph } => {
            let g = parse_graph(read(&graph)?.as_bytes()).map_err(|e| format!("{}: {e}", graph.display()))?;
            emit(&g.to_dot());
            Ok(0)
        }
        Command::Serve { config } => {
            let config = ServiceConfig::load(config.as_deref(), |k| std::env::var(k).ok()).map_err(|e| e.to_string())?;
            tracing_subscriber::fmt()
                .with_env_filter(
                    tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
                )
                .with_writer(std::io::stderr)
                .init();
            let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
            rt.block_on(gadgetlab_service::serve(config)).map_err(|e| e.to_string())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ERROR)
        }
    }
}
