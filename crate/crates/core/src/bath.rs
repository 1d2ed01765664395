//! Ohmic edge-mode bath: spectral coupling, Markovian rates and the
//! short-time integral I(t).
//!
//! The bath enters only through the spectral function
//! `g(x) = alpha * x * exp(-x / cutoff)`, a continuum replacement for the
//! mode sum over edge wavevectors. All frequencies are in rad/s.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::quadrature::{integrate, QuadratureSettings};

/// Largest `cutoff * t` at which I(t) is still evaluated by quadrature.
pub const MAX_OSCILLATION_PRODUCT: f64 = 1e8;

/// Above this `cutoff * t` the cosine tail of I(t) is taken along a
/// deformed contour instead of the real axis.
const OSCILLATORY_SWITCH: f64 = 10.0;

/// Ohmic spectral function with exponential cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralCoupling {
    pub alpha: f64,
    pub cutoff: f64,
}

impl SpectralCoupling {
    pub fn new(alpha: f64, cutoff: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::domain(format!(
                "alpha must be finite and >= 0, got {alpha}"
            )));
        }
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(Error::domain(format!(
                "cutoff must be finite and > 0, got {cutoff}"
            )));
        }
        Ok(SpectralCoupling { alpha, cutoff })
    }

    /// Coupling used for the Markovian rates of `m`.
    pub fn markovian(m: &ModelParams) -> Self {
        SpectralCoupling {
            alpha: m.alpha,
            cutoff: m.rate_cutoff,
        }
    }

    fn eval(&self, x: f64) -> f64 {
        self.alpha * x * (-x / self.cutoff).exp()
    }
}

/// g(x) = α x e^{-x/ω_c}.
pub fn spectral(x: f64, c: &SpectralCoupling) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!(
            "spectral argument must be >= 0, got {x}"
        )));
    }
    Ok(c.eval(x))
}

/// Markovian relaxation coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSet {
    /// Dissipation rate Γ (1/s).
    pub gamma: f64,
    /// Drive λ of the x component (1/s).
    pub lambda: f64,
    /// Frequency shift ω (rad/s).
    pub shift: f64,
}

impl RateSet {
    pub fn zero() -> Self {
        RateSet {
            gamma: 0.0,
            lambda: 0.0,
            shift: 0.0,
        }
    }
}

/// coth(u) for u > 0, accurate near zero and overflow-free for large u.
pub(crate) fn coth(u: f64) -> f64 {
    if u < 0.1 {
        let u2 = u * u;
        1.0 / u + u * (1.0 / 3.0 - u2 * (1.0 / 45.0 - u2 * (2.0 / 945.0 - u2 / 4725.0)))
    } else {
        let e = (-2.0 * u).exp();
        (1.0 + e) / -(-2.0 * u).exp_m1()
    }
}

/// u coth(u), finite at u = 0.
fn u_coth_u(u: f64) -> f64 {
    if u < 0.1 {
        let u2 = u * u;
        1.0 + u2 * (1.0 / 3.0 - u2 * (1.0 / 45.0 - u2 * (2.0 / 945.0 - u2 / 4725.0)))
    } else {
        u * coth(u)
    }
}

fn coth_complex(w: Complex64) -> Complex64 {
    if w.norm() < 0.1 {
        let w2 = w * w;
        w.inv() + w * (1.0 / 3.0 - w2 * (1.0 / 45.0 - w2 * (2.0 / 945.0 - w2 / 4725.0)))
    } else {
        let e = (-2.0 * w).exp();
        (1.0 + e) / (1.0 - e)
    }
}

/// coth(energy / scale), with the zero-temperature limit exactly 1.
fn thermal(energy: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        1.0
    } else {
        coth(energy / scale)
    }
}

/// Γ = g(Ω) coth(Ω/2T).
pub fn rate_gamma(m: &ModelParams) -> f64 {
    rate_lambda(m) * thermal(m.omega, 2.0 * m.temperature)
}

/// λ = g(Ω), independent of temperature.
pub fn rate_lambda(m: &ModelParams) -> f64 {
    SpectralCoupling::markovian(m).eval(m.omega)
}

/// All three Markovian coefficients.
pub fn rates(m: &ModelParams, q: &QuadratureSettings) -> Result<RateSet> {
    Ok(RateSet {
        gamma: rate_gamma(m),
        lambda: rate_lambda(m),
        shift: shift_omega(m, q)?,
    })
}

/// Principal-value frequency shift for the Markovian coupling of `m`.
pub fn shift_omega(m: &ModelParams, q: &QuadratureSettings) -> Result<f64> {
    shift_omega_for(&SpectralCoupling::markovian(m), m.omega, m.temperature, q)
}

/// ω = (2Ω/π) PV∫₀^∞ dε g(ε) coth(ε/2T) / (Ω² − ε²).
///
/// The window `[Ω − δ, Ω + δ]` around the pole is folded onto `(0, δ]`,
/// where the odd part of the integrand cancels the singularity; the rest of
/// the axis is ordinary adaptive quadrature.
pub fn shift_omega_for(
    c: &SpectralCoupling,
    omega: f64,
    temperature: f64,
    q: &QuadratureSettings,
) -> Result<f64> {
    q.validate()?;
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!("omega must be > 0, got {omega}")));
    }
    if !(temperature >= 0.0 && temperature.is_finite()) {
        return Err(Error::domain(format!(
            "temperature must be >= 0, got {temperature}"
        )));
    }
    if c.alpha == 0.0 {
        return Ok(0.0);
    }

    // h(ε) = g(ε) coth(ε/2T) / (Ω + ε); the integrand is h(ε) / (Ω − ε).
    let h = |e: f64| {
        let thermal_weight = if temperature == 0.0 {
            e
        } else {
            2.0 * temperature * u_coth_u(e / (2.0 * temperature))
        };
        c.alpha * thermal_weight * (-e / c.cutoff).exp() / (omega + e)
    };
    let delta = 0.5 * omega.min(c.cutoff);
    let upper = (q.truncation_multiplier * c.cutoff.max(temperature)).max(2.0 * omega);

    // Piece tolerances are set against the scale of the whole integral so
    // that a near-cancelling piece does not demand impossible relative accuracy.
    let scale = integrate(|e| h(e).abs() / (omega + e), 0.0, upper, q)?.value;
    let piece_q = QuadratureSettings {
        abs_tol: q.abs_tol.max(q.rel_tol * scale / 3.0),
        ..*q
    };

    let below = integrate(|e| h(e) / (omega - e), 0.0, omega - delta, &piece_q)?;
    let folded = integrate(|u| (h(omega - u) - h(omega + u)) / u, 0.0, delta, &piece_q)?;
    let above = integrate(|e| h(e) / (omega - e), omega + delta, upper, &piece_q)?;
    Ok(2.0 * omega / PI * (below.value + folded.value + above.value))
}

/// Time-scale regime of the short-time decoherence integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Short,
    Intermediate,
    Long,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Short => "Short",
            Regime::Intermediate => "Intermediate",
            Regime::Long => "Long",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Regime boundaries `1/cutoff` and `1/T` (absent at T = 0).
pub fn crossover_times(m: &ModelParams) -> (f64, Option<f64>) {
    let thermal = (m.temperature > 0.0).then(|| 1.0 / m.temperature);
    (1.0 / m.cutoff, thermal)
}

/// Classifies `t` with sharp thresholds; a tie goes to the later regime.
pub fn classify(t: f64, m: &ModelParams) -> Regime {
    let (t1, t2) = crossover_times(m);
    if t < t1 {
        Regime::Short
    } else if t2.is_some_and(|t2| t >= t2) {
        Regime::Long
    } else {
        Regime::Intermediate
    }
}

/// I(t) = ∫₀^∞ dx/x e^{-x/ω_c} sin²(xt) coth(x/T) by quadrature.
pub fn integral_i(t: f64, m: &ModelParams, q: &QuadratureSettings) -> Result<f64> {
    q.validate()?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let c = m.cutoff;
    let temp = m.temperature;
    if c * t > MAX_OSCILLATION_PRODUCT {
        return Err(Error::Range(format!(
            "cutoff * t = {:e} exceeds {:e}; use the asymptotic form",
            c * t,
            MAX_OSCILLATION_PRODUCT
        )));
    }

    // φ(x) = e^{-x/ω_c} coth(x/T) / x
    let envelope = |x: f64| (-x / c).exp() * thermal(x, temp) / x;
    let full = |x: f64| {
        let s = (x * t).sin();
        s * s * envelope(x)
    };

    // On [0, x0] the integrand equals its x → 0 limit (T t² for T > 0,
    // x t² for T = 0) to O(x0²).
    let mut x0 = 1e-6 * c.min(1.0 / t);
    if temp > 0.0 {
        x0 = x0.min(1e-6 * temp);
    }
    let head = if temp > 0.0 {
        temp * t * t * x0
    } else {
        0.5 * t * t * x0 * x0
    };
    let upper = q.truncation_multiplier * c.max(temp);

    if c * t <= OSCILLATORY_SWITCH {
        return Ok(head + integrate(full, x0, upper, q)?.value);
    }

    // sin²(xt) = (1 − cos 2xt)/2 beyond a = four periods of cos 2xt; there
    // the cosine part is rotated onto the line x = a + iy, where e^{2ixt}
    // decays and no oscillation is left to resolve.
    let freq = 2.0 * t;
    let a = 4.0 * PI / t;
    let near = integrate(full, x0, a, q)?.value;
    let smooth = integrate(envelope, a, upper, q)?.value;

    let scale = (head + near + 0.5 * smooth).abs();
    let piece_q = QuadratureSettings {
        abs_tol: q.abs_tol.max(0.1 * q.rel_tol * scale),
        ..*q
    };
    let envelope_c = |z: Complex64| {
        let th = if temp == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            coth_complex(z / temp)
        };
        (-z / c).exp() * th / z
    };
    // ∫_a^∞ φ(x) cos(νx) dx = Re[i e^{iνa} ∫₀^∞ φ(a + iy) e^{-νy} dy], and
    // νa is a multiple of 2π. With y = s/ν the tail is −Im J / ν.
    let span = 60.0;
    let along = |s: f64| envelope_c(Complex64::new(a, s / freq)) * (-s).exp();
    let imag = integrate(|s| along(s).im, 0.0, span, &piece_q)?.value;
    let cosine_tail = -imag / freq;

    Ok(head + near + 0.5 * (smooth - cosine_tail))
}

/// Asymptotic form of I(t) for the regime containing `t`:
/// ω_c²t² (Short), ½ ln(ω_c t) (Intermediate), πTt (Long).
pub fn integral_i_asymptotic(t: f64, m: &ModelParams) -> Result<(f64, Regime)> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    let regime = classify(t, m);
    let value = match regime {
        Regime::Short => (m.cutoff * t).powi(2),
        Regime::Intermediate => 0.5 * (m.cutoff * t).ln(),
        Regime::Long => PI * m.temperature * t,
    };
    Ok((value, regime))
}
