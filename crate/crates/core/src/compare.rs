//! Side-by-side Markovian and short-time purity curves.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bath::{self, RateSet, Regime};
use crate::error::{Error, Result};
use crate::markovian::{closed_form, purity, BlochState};
use crate::params::{to_model, ModelParams, PhysicalParams};
use crate::quadrature::QuadratureSettings;
use crate::shorttime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Logarithmic,
}

/// Time grid in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    /// Default comparison grid: 400 logarithmic points.
    pub fn logarithmic(t_min: f64, t_max: f64) -> Self {
        GridSpec {
            t_min,
            t_max,
            points: 400,
            spacing: Spacing::Logarithmic,
        }
    }

    pub fn times(&self) -> Result<Vec<f64>> {
        let GridSpec {
            t_min,
            t_max,
            points,
            spacing,
        } = *self;
        if !(t_min.is_finite() && t_max.is_finite() && t_min >= 0.0) {
            return Err(Error::InvalidGrid(format!(
                "bounds must be finite with t_min >= 0: [{t_min}, {t_max}]"
            )));
        }
        if points < 2 || !(t_max > t_min) {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points and t_max > t_min, got {points} on [{t_min}, {t_max}]"
            )));
        }
        let last = (points - 1) as f64;
        let mut out: Vec<f64> = match spacing {
            Spacing::Linear => (0..points)
                .map(|i| t_min + (t_max - t_min) * (i as f64 / last))
                .collect(),
            Spacing::Logarithmic => {
                if t_min == 0.0 {
                    return Err(Error::InvalidGrid(
                        "logarithmic spacing needs t_min > 0".into(),
                    ));
                }
                let (lo, hi) = (t_min.ln(), t_max.ln());
                (0..points)
                    .map(|i| (lo + (hi - lo) * (i as f64 / last)).exp())
                    .collect()
            }
        };
        out[0] = t_min;
        out[points - 1] = t_max;
        if out.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid(
                "grid points are not strictly increasing at f64 resolution".into(),
            ));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CompareSettings {
    pub quadrature: QuadratureSettings,
    /// Report the first time at which |P_markov − P_short| exceeds this.
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongTimeLimits {
    /// ½[1 + tanh²(Ω/2T)]
    pub markovian: f64,
    pub shorttime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub times: Vec<f64>,
    pub markovian: Vec<f64>,
    pub shorttime_exact: Vec<f64>,
    pub shorttime_asymptotic: Vec<f64>,
    pub regimes: Vec<Regime>,
    /// |markovian − shorttime_exact| per grid point.
    pub differences: Vec<f64>,
    pub crossover_cutoff: f64,
    pub crossover_thermal: Option<f64>,
    pub limits: LongTimeLimits,
    pub threshold: Option<f64>,
    pub divergence_time: Option<f64>,
    pub initial_state: BlochState,
    pub rates: RateSet,
    pub model: ModelParams,
}

/// Full pipeline from laboratory parameters.
pub fn compare(
    phys: &PhysicalParams,
    s0: &BlochState,
    grid: &GridSpec,
    settings: &CompareSettings,
) -> Result<ComparisonReport> {
    let model = to_model(phys).map_err(|e| e.in_stage("params"))?;
    compare_model(&model, s0, grid, settings)
}

pub fn compare_model(
    model: &ModelParams,
    s0: &BlochState,
    grid: &GridSpec,
    settings: &CompareSettings,
) -> Result<ComparisonReport> {
    let times = grid.times().map_err(|e| e.in_stage("grid"))?;
    if s0.t != 0.0 {
        return Err(Error::domain("comparison initial state must be at t = 0").in_stage("grid"));
    }
    let q = &settings.quadrature;
    let rates = bath::rates(model, q).map_err(|e| e.in_stage("bath"))?;

    let markovian: Vec<f64> = times
        .iter()
        .map(|&t| purity(&closed_form(s0, &rates, model, t)))
        .collect();
    let short: Vec<(f64, shorttime::ShortTimePoint)> = times
        .par_iter()
        .map(|&t| {
            let exact = shorttime::purity_shorttime(t, model, q)?;
            let asym = shorttime::purity_asymptotic(t, model)?;
            Ok((exact, asym))
        })
        .collect::<Result<_>>()
        .map_err(|e: Error| e.in_stage("shorttime"))?;

    let shorttime_exact: Vec<f64> = short.iter().map(|(e, _)| *e).collect();
    let shorttime_asymptotic = short.iter().map(|(_, a)| a.purity).collect();
    let regimes = short.iter().map(|(_, a)| a.regime).collect();
    let differences: Vec<f64> = markovian
        .iter()
        .zip(&shorttime_exact)
        .map(|(a, b)| (a - b).abs())
        .collect();
    let divergence_time = settings.threshold.and_then(|thr| {
        times
            .iter()
            .zip(&differences)
            .find(|(_, d)| **d > thr)
            .map(|(t, _)| *t)
    });
    let (crossover_cutoff, crossover_thermal) = bath::crossover_times(model);
    let tanh = if model.temperature == 0.0 {
        1.0
    } else {
        (model.omega / (2.0 * model.temperature)).tanh()
    };

    Ok(ComparisonReport {
        times,
        markovian,
        shorttime_exact,
        shorttime_asymptotic,
        regimes,
        differences,
        crossover_cutoff,
        crossover_thermal,
        limits: LongTimeLimits {
            markovian: 0.5 * (1.0 + tanh * tanh),
            shorttime: 0.5,
        },
        threshold: settings.threshold,
        divergence_time,
        initial_state: *s0,
        rates,
        model: *model,
    })
}
