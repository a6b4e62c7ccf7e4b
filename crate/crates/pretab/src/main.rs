use clap::{Args, Parser, Subcommand};
use pretab::commands::{self, Outcome, UnifyMode, EXIT_INPUT};
use pretab::config::RunConfig;
use pretab::corpus::DEFAULT_SEED;
use pretab_core::Logic;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Unification in the pretabular extensions PM1..PM5 of S4.
///
/// Exit codes: 0 success (valid, unifiable, more general), 1 negative
/// answer (refuted, not unifiable, no witness, failing corpus case),
/// 2 budget exceeded, 3 bad input, 4 other errors.
#[derive(Parser, Debug)]
#[command(name = "pretab", version)]
struct Cli {
    #[command(flatten)]
    options: Options,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every command; these override the config file.
#[derive(Args, Debug)]
struct Options {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// pm1, pm2, pm3, pm4 or pm5.
    #[arg(long, global = true)]
    logic: Option<Logic>,
    /// Largest frame parameter m checked for membership.
    #[arg(long, global = true, env = "PRETAB_BOUND")]
    bound: Option<usize>,
    /// Valuation budget per membership check.
    #[arg(long, global = true)]
    max_steps: Option<u64>,
    /// Modal depth of generality witnesses.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Node count of generality witnesses.
    #[arg(long, global = true)]
    nodes: Option<usize>,
    #[arg(long, global = true, value_parser = ["human", "json"])]
    format: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide membership of a formula in a logic.
    Check {
        formula: String,
        /// Write the refuting model here when the formula is refuted.
        #[arg(long, value_name = "PATH")]
        dump_countermodel: Option<PathBuf>,
    },
    /// Find unifiers: ground, projective, or the best available
    /// (mgu for PM1/PM4/PM5, complete set for PM2/PM3).
    Unify {
        formula: String,
        #[arg(long, default_value = "best", value_parser = ["ground", "best", "projective"])]
        mode: String,
    },
    /// Print the reduced normal form.
    Rnf {
        formula: String,
        #[arg(long)]
        max_disjuncts: Option<usize>,
    },
    /// A finite complete set of unifiers (PM2, PM3).
    CompleteSet {
        formula: String,
        /// Comma-separated caps, e.g. `max_disjuncts=1024,max_carrier=8`.
        #[arg(long, value_name = "LIST")]
        caps: Option<String>,
    },
    /// Build the layered characteristic model.
    Charmodel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        layers: usize,
        /// Write the frame and valuation dump here.
        #[arg(long, value_name = "PATH")]
        dump: Option<PathBuf>,
    },
    /// Run the built-in regression corpus.
    Corpus {
        /// all, axioms, theorems, separation, ground, negative,
        /// projective, finitary, charmodel or transfer.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Check whether one substitution is more general than another, as
    /// unifiers of a formula. Files hold `{"x": "formula", ...}` or a
    /// unify report.
    Compare {
        formula: String,
        general: PathBuf,
        specific: PathBuf,
    },
}

fn configure(options: &Options) -> Result<RunConfig, String> {
    let mut config = RunConfig::default();
    if let Some(path) = &options.config {
        config.apply_file(path).map_err(|e| e.to_string())?;
    }
    let flags = [
        ("bound", options.bound.map(|v| v.to_string())),
        ("max_steps", options.max_steps.map(|v| v.to_string())),
        ("depth", options.depth.map(|v| v.to_string())),
        ("nodes", options.nodes.map(|v| v.to_string())),
        ("format", options.format.clone()),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            config.set(key, &v).map_err(|e| e.to_string())?;
        }
    }
    if options.logic.is_some() {
        config.logic = options.logic;
    }
    Ok(config)
}

fn run(cli: Cli) -> Outcome {
    let mut config = match configure(&cli.options) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                code: EXIT_INPUT,
                stderr: format!("error: {e}\n"),
                ..Outcome::default()
            }
        }
    };
    let staged = match &cli.command {
        Command::Check {
            dump_countermodel, ..
        } => {
            if dump_countermodel.is_some() {
                config.dump_countermodel = dump_countermodel.clone();
            }
            Ok(())
        }
        Command::Rnf {
            max_disjuncts: Some(n),
            ..
        } => config.set("max_disjuncts", &n.to_string()),
        Command::CompleteSet {
            caps: Some(list), ..
        } => config.apply_list(list),
        _ => Ok(()),
    };
    if let Err(e) = staged {
        return Outcome {
            code: EXIT_INPUT,
            stderr: format!("error: {e}\n"),
            ..Outcome::default()
        };
    }
    match &cli.command {
        Command::Check { formula, .. } => commands::check(&config, formula),
        Command::Unify { formula, mode } => {
            let mode: UnifyMode = mode.parse().expect("clap restricts the mode");
            commands::unify(&config, formula, mode)
        }
        Command::Rnf { formula, .. } => commands::rnf(&config, formula),
        Command::CompleteSet { formula, .. } => commands::complete_set(&config, formula),
        Command::Charmodel { n, layers, dump } => {
            commands::charmodel(&config, *n, *layers, dump.as_deref())
        }
        Command::Corpus { suite, seed } => commands::corpus(&config, Some(suite), *seed),
        Command::Compare {
            formula,
            general,
            specific,
        } => commands::compare(&config, formula, general, specific),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let outcome = run(cli);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
