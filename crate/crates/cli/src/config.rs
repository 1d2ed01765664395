use std::path::{Path, PathBuf};

use anyondec::{
    BlochState, GridSpec, IntegratorSettings, PhysicalParams, QuadratureSettings, Spacing,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Everything a run needs, as read from the JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub physical: PhysicalParams,
    #[serde(default)]
    pub initial_state: InitialState,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub quadrature: QuadratureSettings,
    #[serde(default)]
    pub integrator: IntegratorSettings,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    /// Divergence threshold for `compare`.
    #[serde(default)]
    pub threshold: Option<f64>,
    /// Worker threads; 0 lets the pool pick.
    #[serde(default)]
    pub jobs: usize,
}

/// Bloch vector at t = 0. Defaults to the localized state (0, 0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Default for InitialState {
    fn default() -> Self {
        InitialState {
            x: 0.0,
            y: 0.0,
            z: 1.0,
        }
    }
}

impl InitialState {
    pub fn state(&self) -> Result<BlochState, CliError> {
        BlochState::new(self.x, self.y, self.z, 0.0)
            .map_err(|e| CliError::config("initial_state", e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeUnit {
    Seconds,
    /// Multiples of 1/Γ at the configured parameter point.
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub unit: TimeUnit,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            t_min: 1e-3,
            t_max: 1e3,
            points: 400,
            spacing: Spacing::Logarithmic,
            unit: TimeUnit::Gamma,
        }
    }
}

impl GridConfig {
    /// Grid in seconds; `gamma` is Γ in 1/s, needed when the unit is 1/Γ.
    pub fn spec(&self, gamma: f64) -> Result<GridSpec, CliError> {
        let scale = match self.unit {
            TimeUnit::Seconds => 1.0,
            TimeUnit::Gamma if gamma > 0.0 => 1.0 / gamma,
            TimeUnit::Gamma => {
                return Err(CliError::Config {
                    context: "grid.unit".into(),
                    message: "times in units of 1/Γ need Γ > 0; use \"seconds\"".into(),
                })
            }
        };
        Ok(GridSpec {
            t_min: self.t_min * scale,
            t_max: self.t_max * scale,
            points: self.points,
            spacing: self.spacing,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    pub format: Format,
    /// Also write an SVG plot for `compare`.
    pub plot: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: None,
            format: Format::Csv,
            plot: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// Bath temperature (K).
    Temperature,
    QubitEdgeDistance,
    AntidotSeparation,
    /// Tunnelling splitting Ω (K).
    Splitting,
    FillingDenominator,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::Temperature => "temperature",
            SweepParameter::QubitEdgeDistance => "qubit_edge_distance",
            SweepParameter::AntidotSeparation => "antidot_separation",
            SweepParameter::Splitting => "splitting",
            SweepParameter::FillingDenominator => "filling_denominator",
        }
    }

    pub fn apply(&self, base: &PhysicalParams, value: f64) -> Result<PhysicalParams, CliError> {
        let mut p = *base;
        match self {
            SweepParameter::Temperature => p.temperature = value,
            SweepParameter::QubitEdgeDistance => p.qubit_edge_distance = value,
            SweepParameter::AntidotSeparation => p.antidot_separation = value,
            SweepParameter::Splitting => p.splitting = value,
            SweepParameter::FillingDenominator => {
                if value.fract() != 0.0 || !(1.0..=f64::from(u32::MAX)).contains(&value) {
                    return Err(CliError::Config {
                        context: "sweep.values".into(),
                        message: format!(
                            "filling_denominator must be a positive integer, got {value}"
                        ),
                    });
                }
                p.filling_denominator = value as u32;
            }
        }
        p.validate()
            .map_err(|e| CliError::config("sweep.values", e))?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default = "linear")]
    pub spacing: Spacing,
}

fn linear() -> Spacing {
    Spacing::Linear
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Quantity {
    Gamma,
    Ratio,
    /// Markovian and short-time purities at one time, in seconds.
    PurityAtTime {
        time: f64,
    },
    /// The full comparison curves on the configured grid.
    FullCurve,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    /// Explicit values; exclusive with `range`.
    #[serde(default)]
    pub values: Option<Vec<f64>>,
    #[serde(default)]
    pub range: Option<Range>,
    pub quantity: Quantity,
}

impl SweepSpec {
    /// Swept values in ascending order.
    pub fn resolved_values(&self) -> Result<Vec<f64>, CliError> {
        let bad = |message: String| CliError::Config {
            context: "sweep".into(),
            message,
        };
        let mut values = match (&self.values, &self.range) {
            (Some(v), None) => v.clone(),
            (None, Some(r)) => {
                let grid = GridSpec {
                    t_min: r.start,
                    t_max: r.stop,
                    points: r.count,
                    spacing: r.spacing,
                };
                grid.times().map_err(|e| bad(e.to_string()))?
            }
            _ => return Err(bad("give exactly one of `values` and `range`".into())),
        };
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(bad("sweep needs at least one finite value".into()));
        }
        values.sort_by(f64::total_cmp);
        values.dedup();
        Ok(values)
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config { context, message } => CliError::Config {
                context: format!("{}: {context}", path.display()),
                message,
            },
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config {
            context: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        cfg.physical
            .validate()
            .map_err(|e| CliError::config("physical", e))?;
        cfg.quadrature
            .validate()
            .map_err(|e| CliError::config("quadrature", e))?;
        cfg.integrator
            .validate()
            .map_err(|e| CliError::config("integrator", e))?;
        cfg.initial_state.state()?;
        if let Some(t) = cfg.threshold {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config {
                    context: "threshold".into(),
                    message: format!("must be finite and > 0, got {t}"),
                });
            }
        }
        if let Some(s) = &cfg.sweep {
            s.resolved_values()?;
        }
        Ok(cfg)
    }
}
