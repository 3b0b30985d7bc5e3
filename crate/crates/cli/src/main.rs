use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use msar_cli::{
    cmd_compare, cmd_drift, cmd_evaluate, cmd_optimal_altitude, cmd_pod_curve, CliError,
    Overrides, ToolConfig, EXIT_CONSTRAINT_VIOLATION,
};

/// Sensing-aware maritime search-and-rescue planning toolkit.
#[derive(Parser)]
#[command(name = "msar", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detection/recognition/identification probability versus altitude (CSV).
    PodCurve {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[arg(long, default_value_t = 10.0)]
        h_min: f64,
        #[arg(long, default_value_t = 1000.0)]
        h_max: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Particle leeway drift simulation (snapshot + area-series CSVs).
    Drift {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Output prefix; writes <prefix>_particles.csv and <prefix>_area.csv.
        #[arg(long, value_name = "PREFIX")]
        out: PathBuf,
        /// Simulated duration in seconds (default: search.drift_lead_s).
        #[arg(long)]
        duration: Option<f64>,
        /// Master seed override.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// POS-maximizing search altitude (JSON + POS-curve CSV).
    OptimalAltitude {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Output prefix; writes <prefix>.json and <prefix>_curve.csv.
        #[arg(long, value_name = "PREFIX")]
        out: PathBuf,
        #[arg(long)]
        h_min: Option<f64>,
        #[arg(long)]
        h_max: Option<f64>,
    },
    /// Monte Carlo evaluation of the configured mission (JSON + series CSV).
    Evaluate {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Output prefix; writes <prefix>.json, <prefix>_series.csv and the
        /// trajectory CSV with its metadata sidecar.
        #[arg(long, value_name = "PREFIX")]
        out: PathBuf,
        /// Master seed override.
        #[arg(long)]
        seed: Option<u64>,
        /// Monte Carlo run count override.
        #[arg(long)]
        runs: Option<usize>,
    },
    /// Evaluate several configs and rank them by objective J (CSV table).
    Compare {
        /// Config files (repeat the flag per candidate).
        #[arg(long = "config", value_name = "PATH", required = true)]
        configs: Vec<PathBuf>,
        /// Output CSV path.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Shared master seed override (applies to every candidate).
        #[arg(long)]
        seed: Option<u64>,
        /// Monte Carlo run count override.
        #[arg(long)]
        runs: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::PodCurve {
            config,
            out,
            h_min,
            h_max,
            samples,
        } => {
            let config = ToolConfig::load(&config)?;
            cmd_pod_curve(&config, h_min, h_max, samples, &out)?;
            eprintln!("wrote {}", out.display());
            Ok(0)
        }
        Command::Drift {
            config,
            out,
            duration,
            seed,
        } => {
            let config = ToolConfig::load(&config)?;
            let overrides = Overrides { seed, runs: None };
            let summary = cmd_drift(&config, duration, overrides, &out)?;
            eprintln!(
                "drifted {} particles for {} s: bounding area {:.1} x {:.1} m",
                summary.particle_count,
                summary.duration_s,
                summary.final_width_m,
                summary.final_height_m
            );
            Ok(0)
        }
        Command::OptimalAltitude {
            config,
            out,
            h_min,
            h_max,
        } => {
            let config = ToolConfig::load(&config)?;
            let report = cmd_optimal_altitude(&config, h_min, h_max, &out)?;
            eprintln!(
                "optimal altitude {:.1} m (POS {:.6}{})",
                report.h_star_m,
                report.pos_star,
                if report.tied { ", tied" } else { "" }
            );
            Ok(0)
        }
        Command::Evaluate {
            config,
            out,
            seed,
            runs,
        } => {
            let config = ToolConfig::load(&config)?;
            let report = cmd_evaluate(&config, Overrides { seed, runs }, &out)?;
            eprintln!(
                "J = {:.3} s (stderr {:.3}), E[N_saved(tf)] = {:.3}/{}",
                report.objective_j_s,
                report.objective_j_stderr_s,
                report.expected_saved_final,
                report.scenario.n_targets
            );
            if report.constraints.all_pass {
                Ok(0)
            } else {
                eprintln!("constraint violation: mission evaluated but infeasible");
                Ok(EXIT_CONSTRAINT_VIOLATION)
            }
        }
        Command::Compare {
            configs,
            out,
            seed,
            runs,
        } => {
            let mut loaded = Vec::with_capacity(configs.len());
            for path in &configs {
                loaded.push((path.display().to_string(), ToolConfig::load(path)?));
            }
            let rows = cmd_compare(&loaded, Overrides { seed, runs }, &out)?;
            for row in &rows {
                eprintln!(
                    "#{} {} J = {:.3} s{}",
                    row.rank,
                    row.config,
                    row.objective_j_s,
                    if row.constraints_pass { "" } else { " (infeasible)" }
                );
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
