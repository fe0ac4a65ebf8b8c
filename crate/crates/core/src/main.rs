use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ozf_core::certify::ClassFilter;
use ozf_core::cli::{
    cmd_analyze, cmd_reproduce, cmd_search, cmd_simulate, cmd_simulate_config, Experiment,
};
use ozf_core::experiments::{ExperimentConfig, DEFAULT_HORIZON, DEFAULT_SEED};
use ozf_core::rational::DEFAULT_GRID_SIZE;
use ozf_core::report::ExperimentReport;

#[derive(Parser)]
#[command(
    name = "ozf",
    version,
    about = "Zames-Falb stability certificates for discrete-time Lurye systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Md,
    Mdodd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentArg {
    StepPair,
    PulseNoise,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a gain bound for one multiplier.
    Analyze {
        #[arg(long)]
        g: f64,
        /// `m0|value@lag,...`, e.g. `1|-0.66@+1`; `1|` is the static multiplier.
        #[arg(long, allow_hyphen_values = true)]
        multiplier: String,
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid: usize,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search one-tap multipliers `1 + c z^-lag`.
    Search {
        #[arg(long)]
        g: f64,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        lags: Vec<i64>,
        #[arg(long, default_value_t = 0.01)]
        c_step: f64,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a simulation experiment and write its CSVs and report to a directory.
    Simulate {
        #[arg(long, value_enum, required_unless_present = "config")]
        experiment: Option<ExperimentArg>,
        #[arg(long, required_unless_present = "config")]
        g: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// JSON `{g, r1_spec, r2_spec, horizon, seed}`; overrides the named experiment.
        #[arg(long, conflicts_with_all = ["experiment", "g"])]
        config: Option<PathBuf>,
    },
    /// Run every acceptance check and write one JSON report plus figure data.
    Reproduce {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn run(cli: Cli) -> ozf_core::Result<ExperimentReport> {
    match cli.command {
        Command::Analyze {
            g,
            multiplier,
            grid,
            out,
        } => {
            let report = cmd_analyze(g, &multiplier, grid)?;
            if let Some(path) = out {
                report.write_json(&path)?;
            }
            Ok(report)
        }
        Command::Search {
            g,
            lags,
            c_step,
            class,
            grid,
            out,
        } => {
            let filter = match class {
                ClassArg::Md => ClassFilter::Md,
                ClassArg::Mdodd => ClassFilter::MdOdd,
            };
            let report = cmd_search(g, &lags, c_step, filter, grid)?;
            if let Some(path) = out {
                report.write_json(&path)?;
            }
            Ok(report)
        }
        Command::Simulate {
            experiment,
            g,
            horizon,
            seed,
            out,
            config,
        } => {
            let mut report = match (config, experiment, g) {
                (Some(path), _, _) => {
                    let config: ExperimentConfig =
                        serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    cmd_simulate_config(&config, &out)?
                }
                (None, Some(e), Some(g)) => {
                    let e = match e {
                        ExperimentArg::StepPair => Experiment::StepPair,
                        ExperimentArg::PulseNoise => Experiment::PulseNoise,
                    };
                    cmd_simulate(e, g, horizon, seed, &out)?
                }
                _ => unreachable!("clap enforces --experiment and --g without --config"),
            };
            let path = out.join("report.json");
            report.manifest.push(path.display().to_string());
            report.write_json(&path)?;
            Ok(report)
        }
        Command::Reproduce { out, grid, seed } => cmd_reproduce(&out, grid, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            print!("{}", report.render_table());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
