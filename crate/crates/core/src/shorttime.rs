//! Short-time approximation: purity ½[1 + e^{-2B²(t)}] with B²(t) = A·I(t).

use serde::{Deserialize, Serialize};

use crate::bath::{self, integral_i};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::quadrature::QuadratureSettings;

pub use crate::bath::{classify, crossover_times, Regime};

/// How a short-time point was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evaluation {
    ExactQuadrature,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShortTimePoint {
    pub t: f64,
    pub b_squared: f64,
    pub purity: f64,
    pub regime: Regime,
    pub method: Evaluation,
}

/// B²(t) = A·I(t).
pub fn b_squared(t: f64, m: &ModelParams, q: &QuadratureSettings) -> Result<f64> {
    if m.amplitude == 0.0 {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!(
                "time must be finite and >= 0, got {t}"
            )));
        }
        return Ok(0.0);
    }
    Ok(m.amplitude * integral_i(t, m, q)?)
}

fn purity_from_exponent(b2: f64) -> f64 {
    0.5 * (1.0 + (-2.0 * b2).exp())
}

/// ½[1 + e^{-2B²(t)}] with B² from quadrature.
pub fn purity_shorttime(t: f64, m: &ModelParams, q: &QuadratureSettings) -> Result<f64> {
    Ok(purity_from_exponent(b_squared(t, m, q)?))
}

/// Quadrature-based point, annotated with the regime containing `t`.
pub fn point_exact(t: f64, m: &ModelParams, q: &QuadratureSettings) -> Result<ShortTimePoint> {
    let b2 = b_squared(t, m, q)?;
    Ok(ShortTimePoint {
        t,
        b_squared: b2,
        purity: purity_from_exponent(b2),
        regime: classify(t, m),
        method: Evaluation::ExactQuadrature,
    })
}

/// Piecewise asymptotic purity:
/// ½[1 + e^{-2Aω_c²t²}], ½[1 + (ω_c t)^{-A}], ½[1 + e^{-2ATt}]
/// for the Short, Intermediate and Long regimes.
///
/// The Long branch carries no factor of π, unlike the Long form of
/// [`bath::integral_i_asymptotic`]; `b_squared` is the exponent actually
/// used by the branch.
pub fn purity_asymptotic(t: f64, m: &ModelParams) -> Result<ShortTimePoint> {
    let (_, regime) = bath::integral_i_asymptotic(t, m)?;
    let a = m.amplitude;
    let (b2, purity) = match regime {
        Regime::Short => {
            let b2 = a * (m.cutoff * t).powi(2);
            (b2, purity_from_exponent(b2))
        }
        Regime::Intermediate => {
            let ct = m.cutoff * t;
            (0.5 * a * ct.ln(), 0.5 * (1.0 + ct.powf(-a)))
        }
        Regime::Long => {
            let b2 = a * m.temperature * t;
            (b2, purity_from_exponent(b2))
        }
    };
    Ok(ShortTimePoint {
        t,
        b_squared: b2,
        purity,
        regime,
        method: Evaluation::Asymptotic,
    })
}
