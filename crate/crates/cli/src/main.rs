use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tidlab_cli::config::{parse_complex, parse_seeds, ConventionSource, ExplicitWeights, Mode, RunConfig, UsageError, WeightChoice, DEFAULT_SEEDS};
use tidlab_cli::enumerate::{run_enumerate, EnumerateArgs};
use tidlab_cli::report::to_json;
use tidlab_cli::search::run_search;
use tidlab_cli::verify::{run_verify, Suite};

#[derive(Parser)]
#[command(name = "tidlab", version, about = "Check identities of operations on mixed tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List the contraction diagrams of an operand list such as "(1,1)x(1,1)".
    Enumerate {
        shapes: String,
        /// Forbid self contractions; also merges identical operands and keeps connected diagrams only.
        #[arg(long)]
        no_self: bool,
        /// Keep diagrams with this output shape, e.g. "(2,1)".
        #[arg(long = "out", value_name = "SHAPE")]
        out: Option<String>,
        #[arg(long)]
        labeled_operands: bool,
        #[arg(long)]
        allow_disconnected: bool,
        #[arg(long)]
        json: bool,
    },
    /// Search for the chain contraction schemes under which the graded identities hold.
    ConventionSearch {
        /// Write the selected convention descriptor here.
        #[arg(long = "out", value_name = "PATH")]
        out: Option<String>,
        /// Evaluate this descriptor (or "class-representatives") instead of searching.
        #[arg(long, value_name = "DESCRIPTOR")]
        force: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// "7", "1,2,5" or "1..100"; falls back to TIDLAB_SEED, then to 1..20.
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    mode: Mode,
    #[arg(long, value_enum)]
    weights: Option<WeightChoice>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    /// "canonical", "auto-search" or a descriptor path.
    #[arg(long, default_value = "canonical")]
    convention: String,
    #[arg(long)]
    json: bool,
    /// Include elapsed times (makes reports time dependent).
    #[arg(long)]
    timings: bool,
}

impl RunArgs {
    fn into_config(self) -> Result<RunConfig, UsageError> {
        let seeds = match self.seeds {
            Some(s) => parse_seeds(&s)?,
            None => match std::env::var("TIDLAB_SEED") {
                Ok(s) => parse_seeds(&s).map_err(|e| UsageError(format!("TIDLAB_SEED: {e}")))?,
                Err(_) => parse_seeds(DEFAULT_SEEDS)?,
            },
        };
        let parse = |v: Option<String>| v.map(|s| parse_complex(&s)).transpose();
        let explicit = ExplicitWeights {
            alpha: parse(self.alpha)?,
            beta: parse(self.beta)?,
            gamma: parse(self.gamma)?,
            delta: parse(self.delta)?,
        };
        let weights = self.weights.unwrap_or(if explicit.any() { WeightChoice::Explicit } else { WeightChoice::Canonical });
        Ok(RunConfig {
            dim: self.dim,
            seeds,
            tolerance_rel: self.tol,
            weights,
            explicit,
            mode: self.mode,
            convention: self.convention.parse::<ConventionSource>()?,
            json: self.json,
            timings: self.timings,
        })
    }
}

fn status(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::Verify { suite, run } => {
            let cfg = run.into_config()?;
            let report = run_verify(suite, &cfg)?;
            if cfg.json {
                print!("{}", to_json(&report));
            } else {
                if let Some(c) = &report.convention {
                    println!("convention: {c}");
                }
                for c in &report.checks {
                    println!("{}", c.text_line());
                }
                println!("{}", if report.passed { "all checks passed" } else { "some checks failed" });
            }
            Ok(status(report.passed))
        }
        Command::Enumerate {
            shapes,
            no_self,
            out,
            labeled_operands,
            allow_disconnected,
            json,
        } => {
            let report = run_enumerate(&EnumerateArgs {
                shapes,
                no_self,
                out,
                labeled_operands,
                allow_disconnected,
            })?;
            if json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", report.text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ConventionSearch { out, force, tol, json } => {
            let report = run_search(force.as_deref(), tol)?;
            if json {
                print!("{}", to_json(&report));
            } else {
                print!("{}", report.text());
            }
            if let (Some(path), Some(desc)) = (out, report.selected_descriptor()) {
                std::fs::write(&path, desc).map_err(|e| UsageError(format!("cannot write {path}: {e}")))?;
            }
            Ok(status(report.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
