//! Command-line front end for the size-location dependence toolkit.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error,
//! 4 numerical degeneracy.

mod config;
mod run;

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;

use setcorr::dependence::Component;
use setcorr::error::Error;
use setcorr::process::ScenarioId;

use config::{
    load_config, DecayConfig, EstimateConfig, GridChoice, MixingConfig, MseBranch, MseConfig,
    RegressConfig, RobustConfig, ScenarioConfig, SteinerConfig,
};

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: u8,
}

impl CliError {
    pub fn config(message: String) -> CliError {
        CliError { message, code: 2 }
    }
    pub fn data(message: String) -> CliError {
        CliError { message, code: 3 }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match &e {
            Error::InvalidParameter(_) | Error::UnsupportedDimension(_) => 2,
            Error::InvalidBody(_)
            | Error::DimensionMismatch(_)
            | Error::UnsupportedCombination(_)
            | Error::Structural(_)
            | Error::InsufficientData(_)
            | Error::Data(_) => 3,
            Error::Numerical(_) | Error::RankDeficient { .. } | Error::Generation(_) => 4,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "setcorr",
    version,
    about = "Size-location dependence analysis for convex compact random sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Config file (.json or .toml); flags override its fields.
    #[arg(long)]
    config: Option<String>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: String,
    /// Base seed for all randomness.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of quadrature directions.
    #[arg(long)]
    directions: Option<usize>,
    /// Direction grid: equal_angle or random.
    #[arg(long)]
    grid: Option<GridChoice>,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a dependence scenario and estimate its correlations.
    Scenario {
        #[command(flatten)]
        common: CommonOpts,
        /// Scenario id: S1, S2, S3, or S4.
        #[arg(long)]
        scenario: Option<ScenarioId>,
        /// Series length per replication.
        #[arg(long)]
        n: Option<usize>,
        /// Number of replications.
        #[arg(long)]
        reps: Option<usize>,
        /// Mixing weight for S4.
        #[arg(long)]
        alpha: Option<f64>,
        /// Write the first replication's bodies as JSON lines.
        #[arg(long)]
        export_bodies: bool,
    },
    /// Dependence report for two body series stored as JSON lines.
    Estimate {
        #[command(flatten)]
        common: CommonOpts,
        /// X-series bodies (JSONL). Overrides the config field.
        #[arg(long)]
        x: Option<String>,
        /// Y-series bodies (JSONL). Overrides the config field.
        #[arg(long)]
        y: Option<String>,
    },
    /// Law-of-large-numbers decay sweep with slope fit.
    Decay {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        reps: Option<usize>,
        /// Profile component: size, loc, loc_res, or tot.
        #[arg(long)]
        component: Option<Component>,
    },
    /// Estimator mean-squared-error rate table.
    MseRate {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        reps: Option<usize>,
        /// Branch: time (n sweep) or directions (M sweep).
        #[arg(long)]
        branch: Option<String>,
    },
    /// Lag-correlation mixing proxy sweep on the AR(1) disc series.
    Mixing {
        #[command(flatten)]
        common: CommonOpts,
        /// Series length.
        #[arg(long)]
        n: Option<usize>,
        /// Largest lag.
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Interval-valued regression via the decoupled support loss.
    Regress {
        #[command(flatten)]
        common: CommonOpts,
        /// Dataset CSV with header x1,...,xp,c,r.
        #[arg(long)]
        data: Option<String>,
    },
    /// Worst-case feasibility of interval linear constraints.
    Robust {
        #[command(flatten)]
        common: CommonOpts,
        /// Instance JSON file.
        #[arg(long)]
        instance: Option<String>,
    },
    /// Steiner point of one body, exact and by quadrature.
    Steiner {
        #[command(flatten)]
        common: CommonOpts,
        /// Body JSON file.
        #[arg(long)]
        body: Option<String>,
    },
}

fn scenario_config(
    common: &CommonOpts,
    scenario: Option<ScenarioId>,
    n: Option<usize>,
    reps: Option<usize>,
    alpha: Option<f64>,
) -> Result<ScenarioConfig, CliError> {
    let mut cfg: ScenarioConfig = match &common.config {
        Some(path) => load_config(path)?,
        None => {
            let id = scenario.ok_or_else(|| {
                CliError::config("either --config or --scenario is required".into())
            })?;
            ScenarioConfig::template(id)
        }
    };
    if let Some(id) = scenario {
        cfg.scenario = id;
    }
    if let Some(n) = n {
        cfg.n = n;
    }
    if let Some(reps) = reps {
        cfg.reps = reps;
    }
    if let Some(alpha) = alpha {
        cfg.alpha = Some(alpha);
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(d) = common.directions {
        cfg.directions = d;
    }
    if let Some(g) = common.grid {
        cfg.grid = g;
    }
    Ok(cfg)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Scenario {
            common,
            scenario,
            n,
            reps,
            alpha,
            export_bodies,
        } => {
            let mut cfg = scenario_config(&common, scenario, n, reps, alpha)?;
            if export_bodies {
                cfg.export_bodies = true;
            }
            run::run_scenario(&cfg, &common.out)
        }
        Command::Estimate { common, x, y } => {
            let mut cfg: EstimateConfig = match &common.config {
                Some(path) => load_config(path)?,
                None => {
                    let (x, y) = match (&x, &y) {
                        (Some(x), Some(y)) => (x.clone(), y.clone()),
                        _ => {
                            return Err(CliError::config(
                                "estimate needs --config or both --x and --y".into(),
                            ))
                        }
                    };
                    EstimateConfig {
                        x,
                        y,
                        directions: 256,
                        grid: GridChoice::EqualAngle,
                        seed: 0,
                    }
                }
            };
            if let Some(x) = x {
                cfg.x = x;
            }
            if let Some(y) = y {
                cfg.y = y;
            }
            if let Some(seed) = common.seed {
                cfg.seed = seed;
            }
            if let Some(d) = common.directions {
                cfg.directions = d;
            }
            if let Some(g) = common.grid {
                cfg.grid = g;
            }
            run::run_estimate(&cfg, &common.out)
        }
        Command::Decay {
            common,
            reps,
            component,
        } => {
            let mut cfg: DecayConfig = match &common.config {
                Some(path) => load_config(path)?,
                None => DecayConfig::default(),
            };
            if let Some(reps) = reps {
                cfg.reps = reps;
            }
            if let Some(c) = component {
                cfg.component = c;
            }
            if let Some(seed) = common.seed {
                cfg.seed = seed;
            }
            if let Some(d) = common.directions {
                cfg.directions = d;
            }
            if let Some(g) = common.grid {
                cfg.grid = g;
            }
            run::run_decay(&cfg, &common.out)
        }
        Command::MseRate {
            common,
            reps,
            branch,
        } => {
            let mut cfg: MseConfig = match &common.config {
                Some(path) => load_config(path)?,
                None => MseConfig {
                    branch: MseBranch::Time,
                    n_grid: vec![1000, 2000],
                    m_grid: vec![1024],
                    reps: 100,
                    seed: 0,
                },
            };
            if let Some(b) = branch {
                cfg.branch = match b.as_str() {
                    "time" => MseBranch::Time,
                    "directions" => MseBranch::Directions,
                    other => {
                        return Err(CliError::config(format!(
                            "unknown branch {other:?}; expected time or directions"
                        )))
                    }
                };
            }
            if let Some(reps) = reps {
                cfg.reps = reps;
            }
            if let Some(seed) = common.seed {
                cfg.seed = seed;
            }
            run::run_mse(&cfg, &common.out)
        }
        Command::Mixing { common, n, k_max } => {
            let mut cfg: MixingConfig = match &common.config {
                Some(path) => load_config(path)?,
                None => MixingConfig::default(),
            };
            if let Some(n) = n {
                cfg.n = n;
            }
            if let Some(k) = k_max {
                cfg.k_max = k;
            }
            if let Some(seed) = common.seed {
                cfg.seed = seed;
            }
            if let Some(d) = common.directions {
                cfg.directions = d;
            }
            if let Some(g) = common.grid {
                cfg.grid = g;
            }
            run::run_mixing(&cfg, &common.out)
        }
        Command::Regress { common, data } => {
            let cfg: RegressConfig = match (&common.config, data) {
                (Some(path), None) => load_config(path)?,
                (_, Some(data)) => RegressConfig { data },
                (None, None) => {
                    return Err(CliError::config("regress needs --config or --data".into()))
                }
            };
            run::run_regress(&cfg, &common.out)
        }
        Command::Robust { common, instance } => {
            let cfg: RobustConfig = match (&common.config, instance) {
                (Some(path), None) => load_config(path)?,
                (_, Some(instance)) => RobustConfig { instance },
                (None, None) => {
                    return Err(CliError::config(
                        "robust needs --config or --instance".into(),
                    ))
                }
            };
            run::run_robust(&cfg, &common.out)
        }
        Command::Steiner { common, body } => {
            let mut cfg: SteinerConfig = match (&common.config, body) {
                (Some(path), None) => load_config(path)?,
                (_, Some(body)) => SteinerConfig {
                    body,
                    directions: 2048,
                },
                (None, None) => {
                    return Err(CliError::config("steiner needs --config or --body".into()))
                }
            };
            if let Some(d) = common.directions {
                cfg.directions = d;
            }
            run::run_steiner(&cfg, &common.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
