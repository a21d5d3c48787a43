//! Run configuration: JSON with unknown keys rejected.

use std::path::{Path, PathBuf};

use mbi_field::{Grid, InitialData, Mode, SolverConfig, StencilOrder};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: ModeName,
    pub grid: GridConfig,
    pub initial_data: InitialDataConfig,
    /// Spatial stencil order, 2 or 4.
    #[serde(default = "default_order")]
    pub order: u32,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    pub t_end: f64,
    #[serde(default)]
    pub output: OutputConfig,
    /// Seed for random initial data; recorded in snapshots.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub diagnostics: DiagnosticsConfig,
    #[serde(default)]
    pub checks: ChecksConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeName {
    Mbi,
    Maxwell,
}

impl From<ModeName> for Mode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Mbi => Mode::Mbi,
            ModeName::Maxwell => Mode::Maxwell,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n: usize,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialDataConfig {
    GaussianLoop {
        amplitude: f64,
        width: f64,
        #[serde(default)]
        center: [f64; 3],
    },
    PlanePacket {
        amplitude: f64,
        k: [f64; 3],
        width: f64,
        #[serde(default)]
        center: [f64; 3],
    },
    /// Uses the top-level `seed`.
    RandomSmooth { amplitude: f64, max_mode: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnapshotPolicy {
    None,
    #[default]
    Final,
    EveryOutput,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Run directory; `--run-dir` on the command line takes precedence.
    #[serde(default)]
    pub dir: Option<PathBuf>,
    /// Diagnostics and snapshots every `cadence` steps (and at the last step).
    #[serde(default = "default_cadence")]
    pub cadence: usize,
    #[serde(default)]
    pub snapshots: SnapshotPolicy,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: None, cadence: default_cadence(), snapshots: SnapshotPolicy::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagnosticsConfig {
    /// Highest Lie-derivative order in the conformal energy (0 or 1).
    #[serde(default)]
    pub energy_order: usize,
    /// Retarded-time offset of the tracked shell; defaults to the pulse centre radius.
    #[serde(default)]
    pub q0: Option<f64>,
    /// Samples earlier than this time are left out of the decay fits.
    #[serde(default)]
    pub fit_start: f64,
    /// Half width in `q` of the wave-zone band; defaults to the shell spacing.
    #[serde(default)]
    pub band: Option<f64>,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        Self { energy_order: 0, q0: None, fit_start: 0.0, band: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksConfig {
    /// Samples for the algebra suite run before the simulation; 0 skips it.
    #[serde(default)]
    pub algebra_samples: usize,
    /// Overrides the algebra suite tolerance.
    #[serde(default)]
    pub algebra_tolerance: Option<f64>,
    /// Permits domains too small to keep the pulse away from its periodic images.
    #[serde(default)]
    pub allow_wrap: bool,
}

impl Default for ChecksConfig {
    fn default() -> Self {
        Self { algebra_samples: 0, algebra_tolerance: None, allow_wrap: false }
    }
}

fn default_order() -> u32 {
    4
}

fn default_cfl() -> f64 {
    0.4
}

fn default_cadence() -> usize {
    10
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn mode(&self) -> Mode {
        self.mode.into()
    }

    pub fn stencil_order(&self) -> Result<StencilOrder> {
        StencilOrder::from_order(self.order)
            .ok_or_else(|| CliError::Config(format!("order must be 2 or 4, got {}", self.order)))
    }

    pub fn grid(&self) -> Result<Grid> {
        Ok(Grid::centered(self.grid.n, self.grid.h)?)
    }

    pub fn initial_data(&self) -> InitialData {
        match self.initial_data {
            InitialDataConfig::GaussianLoop { amplitude, width, center } => {
                InitialData::GaussianLoop { amplitude, width, center }
            }
            InitialDataConfig::PlanePacket { amplitude, k, width, center } => {
                InitialData::PlanePacket { amplitude, k, width, center }
            }
            InitialDataConfig::RandomSmooth { amplitude, max_mode } => {
                InitialData::RandomSmooth { seed: self.seed, amplitude, max_mode }
            }
        }
    }

    pub fn solver(&self) -> Result<SolverConfig> {
        let config = SolverConfig {
            mode: self.mode(),
            order: self.stencil_order()?,
            cfl: self.cfl,
            t_end: self.t_end,
            cadence: self.output.cadence,
        };
        config.validate()?;
        Ok(config)
    }

    /// Tracked retarded time: explicit `q0`, else the distance of the pulse centre from the origin.
    pub fn q0(&self) -> f64 {
        self.diagnostics.q0.unwrap_or(match &self.initial_data {
            InitialDataConfig::GaussianLoop { center, .. } | InitialDataConfig::PlanePacket { center, .. } => {
                center.iter().map(|c| c * c).sum::<f64>().sqrt()
            }
            InitialDataConfig::RandomSmooth { .. } => 0.0,
        })
    }

    /// Wave-zone half width; defaults to the shell spacing `2h`.
    pub fn band(&self) -> f64 {
        self.diagnostics.band.unwrap_or(2.0 * self.grid.h)
    }

    pub fn validate(&self) -> Result<()> {
        let grid = self.grid()?;
        self.solver()?;
        if self.diagnostics.energy_order > 1 {
            return Err(CliError::Config(format!(
                "diagnostics.energy_order must be 0 or 1, got {}",
                self.diagnostics.energy_order
            )));
        }
        if let Some(band) = self.diagnostics.band {
            if !(band >= 0.0) {
                return Err(CliError::Config(format!("diagnostics.band must be non-negative, got {band}")));
            }
        }
        let data = self.initial_data();
        let amplitude = data.amplitude();
        if !amplitude.is_finite() {
            return Err(CliError::Config("initial data amplitude must be finite".into()));
        }
        match self.initial_data {
            InitialDataConfig::GaussianLoop { width, .. } | InitialDataConfig::PlanePacket { width, .. }
                if !(width > 0.0) =>
            {
                return Err(CliError::Config(format!("initial data width must be positive, got {width}")));
            }
            InitialDataConfig::RandomSmooth { max_mode: 0, .. } => {
                return Err(CliError::Config("random_smooth needs max_mode >= 1".into()));
            }
            _ => {}
        }
        if !self.checks.allow_wrap {
            if let Some(radius) = data.support_radius() {
                let needed = 2.0 * (self.t_end + radius);
                if grid.extent() < needed {
                    return Err(CliError::Config(format!(
                        "domain n*h = {} is smaller than 2 (t_end + data radius) = {needed}; \
                         enlarge the grid or set checks.allow_wrap",
                        grid.extent()
                    )));
                }
            }
        }
        Ok(())
    }
}
