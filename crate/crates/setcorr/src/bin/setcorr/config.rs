//! Command configurations: file-based (JSON or TOML by extension) with
//! command-line overrides. Every resolved config hashes to a stable id that
//! is echoed into all output files.

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use std::path::Path;

use setcorr::dependence::Component;
use setcorr::process::{Ar1Params, ScenarioId, TriangleParams};
use setcorr::seed::fnv1a64;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridChoice {
    EqualAngle,
    Random,
}

impl std::str::FromStr for GridChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "equal_angle" => Ok(GridChoice::EqualAngle),
            "random" => Ok(GridChoice::Random),
            other => Err(format!(
                "unknown grid {other:?}; expected equal_angle or random"
            )),
        }
    }
}

fn default_directions() -> usize {
    256
}

fn default_grid() -> GridChoice {
    GridChoice::EqualAngle
}

fn default_seed() -> u64 {
    0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioId,
    #[serde(default = "ScenarioConfig::default_n")]
    pub n: usize,
    #[serde(default = "ScenarioConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "default_directions")]
    pub directions: usize,
    #[serde(default = "default_grid")]
    pub grid: GridChoice,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// S4 only: single mixing weight. Ignored by S1-S3.
    #[serde(default)]
    pub alpha: Option<f64>,
    /// S4 only: sweep grid used when no single alpha is pinned.
    #[serde(default = "ScenarioConfig::default_alpha_grid")]
    pub alpha_grid: Vec<f64>,
    /// Also write the first replication's body series as JSON lines.
    #[serde(default)]
    pub export_bodies: bool,
    #[serde(default)]
    pub triangle: TriangleParams,
}

impl ScenarioConfig {
    fn default_n() -> usize {
        2000
    }
    fn default_reps() -> usize {
        200
    }
    fn default_alpha_grid() -> Vec<f64> {
        vec![0.0, 0.25, 0.5, 0.75, 1.0]
    }

    pub fn template(scenario: ScenarioId) -> ScenarioConfig {
        ScenarioConfig {
            scenario,
            n: Self::default_n(),
            reps: Self::default_reps(),
            directions: default_directions(),
            grid: default_grid(),
            seed: default_seed(),
            alpha: None,
            alpha_grid: Self::default_alpha_grid(),
            export_bodies: false,
            triangle: TriangleParams::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateConfig {
    /// JSON-lines file of bodies for the X series.
    pub x: String,
    /// JSON-lines file of bodies for the Y series.
    pub y: String,
    #[serde(default = "default_directions")]
    pub directions: usize,
    #[serde(default = "default_grid")]
    pub grid: GridChoice,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum DecayGenerator {
    DiscAr1 { ar: Ar1Params },
    Triangle { params: TriangleParams },
}

impl Default for DecayGenerator {
    fn default() -> Self {
        DecayGenerator::DiscAr1 {
            ar: Ar1Params {
                phi: 0.6,
                innovation_sd: 0.3,
                mean: 2.0,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayConfig {
    #[serde(default)]
    pub generator: DecayGenerator,
    #[serde(default = "DecayConfig::default_n_grid")]
    pub n_grid: Vec<usize>,
    #[serde(default = "DecayConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "DecayConfig::default_component")]
    pub component: Component,
    #[serde(default = "DecayConfig::default_directions")]
    pub directions: usize,
    #[serde(default = "default_grid")]
    pub grid: GridChoice,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl DecayConfig {
    fn default_n_grid() -> Vec<usize> {
        vec![64, 128, 256, 512, 1024, 2048, 4096]
    }
    fn default_reps() -> usize {
        100
    }
    fn default_component() -> Component {
        Component::Size
    }
    fn default_directions() -> usize {
        8
    }
}

impl Default for DecayConfig {
    fn default() -> Self {
        DecayConfig {
            generator: DecayGenerator::default(),
            n_grid: Self::default_n_grid(),
            reps: Self::default_reps(),
            component: Self::default_component(),
            directions: Self::default_directions(),
            grid: default_grid(),
            seed: default_seed(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MseBranch {
    /// Disc AR(1) series on an equal-angle grid; sweep n at fixed M.
    Time,
    /// Gaussian singletons on random antithetic directions; sweep M at
    /// fixed n.
    Directions,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MseConfig {
    pub branch: MseBranch,
    #[serde(default = "MseConfig::default_n_grid")]
    pub n_grid: Vec<usize>,
    #[serde(default = "MseConfig::default_m_grid")]
    pub m_grid: Vec<usize>,
    #[serde(default = "MseConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl MseConfig {
    fn default_n_grid() -> Vec<usize> {
        vec![1000, 2000]
    }
    fn default_m_grid() -> Vec<usize> {
        vec![1024]
    }
    fn default_reps() -> usize {
        100
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixingConfig {
    #[serde(default = "MixingConfig::default_ar")]
    pub ar: Ar1Params,
    #[serde(default = "MixingConfig::default_n")]
    pub n: usize,
    #[serde(default = "MixingConfig::default_k_max")]
    pub k_max: usize,
    #[serde(default = "MixingConfig::default_directions")]
    pub directions: usize,
    #[serde(default = "default_grid")]
    pub grid: GridChoice,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl MixingConfig {
    fn default_ar() -> Ar1Params {
        Ar1Params {
            phi: 0.6,
            innovation_sd: 0.3,
            mean: 2.0,
        }
    }
    fn default_n() -> usize {
        10_000
    }
    fn default_k_max() -> usize {
        5
    }
    fn default_directions() -> usize {
        8
    }
}

impl Default for MixingConfig {
    fn default() -> Self {
        MixingConfig {
            ar: Self::default_ar(),
            n: Self::default_n(),
            k_max: Self::default_k_max(),
            directions: Self::default_directions(),
            grid: default_grid(),
            seed: default_seed(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegressConfig {
    /// CSV with header x1,...,xp,c,r.
    pub data: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobustConfig {
    /// JSON instance {rows: [{a: [[lo,hi],...], b: [lo,hi]}], x: [...]}.
    pub instance: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteinerConfig {
    /// JSON file holding one body.
    pub body: String,
    #[serde(default = "SteinerConfig::default_directions")]
    pub directions: usize,
}

impl SteinerConfig {
    fn default_directions() -> usize {
        2048
    }
}

/// Load a config file, dispatching on extension (.json or .toml).
pub fn load_config<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read config {path}: {e}")))?;
    let ext = Path::new(path)
        .extension()
        .and_then(|s| s.to_str())
        .unwrap_or("");
    match ext {
        "toml" => toml::from_str(&text)
            .map_err(|e| CliError::config(format!("config {path}: {e}"))),
        _ => serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("config {path}: {e}"))),
    }
}

/// Stable hash of the fully resolved configuration.
pub fn config_hash<T: Serialize>(cfg: &T) -> String {
    let canon = serde_json::to_string(cfg).expect("config serializes");
    format!("{:016x}", fnv1a64(canon.as_bytes()))
}
