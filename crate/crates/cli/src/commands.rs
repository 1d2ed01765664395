use anyondec::bath::{self, integral_i, integral_i_asymptotic};
use anyondec::markovian::{closed_form, evolve, purity};
use anyondec::shorttime::{purity_asymptotic, purity_shorttime};
use anyondec::{
    compare, to_model, CompareSettings, ComparisonReport, ModelParams, PhysicalParams,
    QuadratureSettings, Regime, Trajectory,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Quantity, RunConfig, SweepSpec};
use crate::error::CliError;

/// Coefficients in laboratory units: rates in 1/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatesTable {
    pub gamma: f64,
    pub lambda: f64,
    pub shift: f64,
    /// ħΓ/Ω
    pub ratio: f64,
    /// Short-time cutoff ω_c = v/4L.
    pub cutoff: f64,
    /// Short-time amplitude A.
    pub amplitude: f64,
}

impl RatesTable {
    pub const HEADER: [&'static str; 6] = [
        "gamma_per_s",
        "lambda_per_s",
        "shift_per_s",
        "hbar_gamma_over_omega",
        "cutoff_per_s",
        "amplitude",
    ];

    pub fn values(&self) -> [f64; 6] {
        [
            self.gamma,
            self.lambda,
            self.shift,
            self.ratio,
            self.cutoff,
            self.amplitude,
        ]
    }
}

fn model(phys: &PhysicalParams) -> Result<ModelParams, CliError> {
    to_model(phys).map_err(|e| CliError::config("physical", e))
}

fn rates_for(m: &ModelParams, q: &QuadratureSettings) -> Result<RatesTable, CliError> {
    let r = bath::rates(m, q)?;
    Ok(RatesTable {
        gamma: r.gamma,
        lambda: r.lambda,
        shift: r.shift,
        ratio: r.gamma / m.omega,
        cutoff: m.cutoff,
        amplitude: m.amplitude,
    })
}

pub fn rates(cfg: &RunConfig) -> Result<RatesTable, CliError> {
    rates_for(&model(&cfg.physical)?, &cfg.quadrature)
}

/// Markovian trajectory on the configured grid, which always starts at
/// t = 0 where the initial state lives.
pub fn trajectory(cfg: &RunConfig) -> Result<Trajectory, CliError> {
    let m = model(&cfg.physical)?;
    let r = bath::rates(&m, &cfg.quadrature)?;
    let s0 = cfg.initial_state.state()?;
    let mut times = cfg
        .grid
        .spec(r.gamma)?
        .times()
        .map_err(|e| CliError::config("grid", e))?;
    if times[0] > 0.0 {
        times.insert(0, 0.0);
    }
    Ok(evolve(&s0, &r, &m, &times, &cfg.integrator)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShortTimeRow {
    pub t: f64,
    pub regime: Regime,
    pub i_exact: f64,
    pub i_asymptotic: f64,
    pub b_squared: f64,
    pub purity_exact: f64,
    pub purity_asymptotic: f64,
}

impl ShortTimeRow {
    pub const HEADER: [&'static str; 7] = [
        "t_s",
        "regime",
        "I_exact",
        "I_asymptotic",
        "B2",
        "purity_exact",
        "purity_asymptotic",
    ];
}

pub fn shorttime(cfg: &RunConfig) -> Result<Vec<ShortTimeRow>, CliError> {
    let m = model(&cfg.physical)?;
    let gamma = bath::rate_gamma(&m);
    let times = cfg
        .grid
        .spec(gamma)?
        .times()
        .map_err(|e| CliError::config("grid", e))?;
    let q = cfg.quadrature;
    let rows = times
        .par_iter()
        .map(|&t| -> anyondec::Result<ShortTimeRow> {
            let i_exact = integral_i(t, &m, &q)?;
            let (i_asymptotic, regime) = integral_i_asymptotic(t, &m)?;
            Ok(ShortTimeRow {
                t,
                regime,
                i_exact,
                i_asymptotic,
                b_squared: m.amplitude * i_exact,
                purity_exact: purity_shorttime(t, &m, &q)?,
                purity_asymptotic: purity_asymptotic(t, &m)?.purity,
            })
        })
        .collect::<anyondec::Result<Vec<_>>>()?;
    Ok(rows)
}

pub fn comparison(cfg: &RunConfig) -> Result<ComparisonReport, CliError> {
    let m = model(&cfg.physical)?;
    let grid = cfg.grid.spec(bath::rate_gamma(&m))?;
    let settings = CompareSettings {
        quadrature: cfg.quadrature,
        threshold: cfg.threshold,
    };
    let s0 = cfg.initial_state.state()?;
    Ok(compare(&cfg.physical, &s0, &grid, &settings)?)
}

/// One record of a long-format sweep table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub parameter: &'static str,
    pub value: f64,
    /// Absent for time-independent quantities.
    pub t: Option<f64>,
    pub quantity: &'static str,
    pub result: f64,
}

pub const SWEEP_HEADER: [&str; 5] = ["parameter", "value", "t_s", "quantity", "result"];

fn sweep_point(cfg: &RunConfig, spec: &SweepSpec, value: f64) -> Result<Vec<SweepRow>, CliError> {
    let phys = spec.parameter.apply(&cfg.physical, value)?;
    let m = model(&phys)?;
    let row = |t: Option<f64>, quantity: &'static str, result: f64| SweepRow {
        parameter: spec.parameter.name(),
        value,
        t,
        quantity,
        result,
    };
    let rows = match spec.quantity {
        Quantity::Gamma => vec![row(None, "gamma", bath::rate_gamma(&m))],
        Quantity::Ratio => vec![row(None, "ratio", bath::rate_gamma(&m) / m.omega)],
        Quantity::PurityAtTime { time } => {
            let r = bath::rates(&m, &cfg.quadrature)?;
            let s0 = cfg.initial_state.state()?;
            vec![
                row(
                    Some(time),
                    "purity_markovian",
                    purity(&closed_form(&s0, &r, &m, time)),
                ),
                row(
                    Some(time),
                    "purity_shorttime",
                    purity_shorttime(time, &m, &cfg.quadrature)?,
                ),
            ]
        }
        Quantity::FullCurve => {
            let sub = RunConfig {
                physical: phys,
                ..cfg.clone()
            };
            let report = comparison(&sub)?;
            let mut rows = Vec::with_capacity(3 * report.times.len());
            for (i, &t) in report.times.iter().enumerate() {
                rows.push(row(Some(t), "purity_markovian", report.markovian[i]));
                rows.push(row(Some(t), "purity_shorttime", report.shorttime_exact[i]));
                rows.push(row(
                    Some(t),
                    "purity_asymptotic",
                    report.shorttime_asymptotic[i],
                ));
            }
            rows
        }
    };
    Ok(rows)
}

/// Evaluates every swept value concurrently; rows come back ordered by
/// value, then by time.
pub fn sweep(cfg: &RunConfig) -> Result<Vec<SweepRow>, CliError> {
    let spec = cfg.sweep.as_ref().ok_or_else(|| CliError::Config {
        context: "sweep".into(),
        message: "the sweep command needs a `sweep` block".into(),
    })?;
    let values = spec.resolved_values()?;
    let blocks = values
        .par_iter()
        .map(|&v| sweep_point(cfg, spec, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(blocks.into_iter().flatten().collect())
}
