use std::process::ExitCode;

use abduction_cli::config::{parse_param, parse_query, ExperimentConfig};
use abduction_cli::error::{CliError, CliResult};
use abduction_cli::experiment::{compare_experiment, run_experiment, selftest_report, selftest_results};
use abduction_cli::report::{emit_report, Format};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Learning procedures recast as abductive explanation of data.
#[derive(Parser)]
#[command(name = "abduction", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train one learner and report its decisions.
    Run(RunArgs),
    /// Compare two learners on held-out rows.
    Compare(CompareArgs),
    /// Run the built-in acceptance checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Lines,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Lines => Format::Lines,
        }
    }
}

#[derive(Args)]
struct Common {
    /// CSV file with a header whose last column is `y`, or
    /// `synth:<generator>:<m>:<seed>`.
    #[arg(long)]
    data: String,
    /// Learner parameter as `key=value`; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    learner: String,
    #[command(flatten)]
    common: Common,
    /// Comma-separated query point; repeatable.
    #[arg(long = "query", value_name = "X1,X2,...", allow_hyphen_values = true)]
    queries: Vec<String>,
    /// Fraction of rows to train on; the rest are evaluated.
    #[arg(long, default_value_t = 1.0)]
    train_fraction: f64,
}

#[derive(Args)]
struct CompareArgs {
    /// Only `adaknn-vs-hoeffding` is available.
    #[arg(long, default_value = "adaknn-vs-hoeffding")]
    mode: String,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0.5)]
    train_fraction: f64,
}

fn config(learner: &str, common: &Common, queries: &[String], train_fraction: f64) -> CliResult<ExperimentConfig> {
    let params = common.params.iter().map(|p| parse_param(p)).collect::<CliResult<Vec<_>>>()?;
    let queries = queries.iter().map(|q| parse_query(q)).collect::<CliResult<Vec<_>>>()?;
    ExperimentConfig::new(learner, &params, &common.data, queries, train_fraction, common.seed, common.format.into())
}

fn execute(command: Command) -> CliResult<(String, bool)> {
    match command {
        Command::Run(args) => {
            let cfg = config(&args.learner, &args.common, &args.queries, args.train_fraction)?;
            Ok((emit_report(&run_experiment(&cfg)?, cfg.format), true))
        }
        Command::Compare(args) => {
            if args.mode != "adaknn-vs-hoeffding" {
                return Err(CliError::Usage(format!(
                    "unknown compare mode {:?}; valid modes: adaknn-vs-hoeffding",
                    args.mode
                )));
            }
            let cfg = config("ada_knn", &args.common, &[], args.train_fraction)?;
            Ok((emit_report(&compare_experiment(&cfg)?, cfg.format), true))
        }
        Command::Selftest { format } => {
            let results = selftest_results()?;
            let passed = results.iter().all(|r| r.passed);
            let out = match format {
                OutputFormat::Text => results.iter().map(|r| r.line() + "\n").collect(),
                OutputFormat::Lines => emit_report(&selftest_report(&results), Format::Lines),
            };
            Ok((out, passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            ExitCode::from(if ok { 0 } else { 3 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
