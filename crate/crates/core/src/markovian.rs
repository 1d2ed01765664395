//! Markovian Bloch equations of the unbiased qubit:
//!
//! ```text
//! dx/dt = -Γ x + λ
//! dy/dt = (Ω + ω) z - Γ y
//! dz/dt = -Ω y
//! ```
//!
//! solved both numerically and in closed form.

use serde::{Deserialize, Serialize};

use crate::bath::RateSet;
use crate::error::{Error, Result};
use crate::ode::{rk4_span, DormandPrince, State};
use crate::params::ModelParams;

/// Slack allowed on |r| ≤ 1 before a state is considered unphysical.
pub const BLOCH_NORM_TOLERANCE: f64 = 1e-9;

/// Qubit state ρ = ½(1 + xσx + yσy + zσz) at time `t` (seconds).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub t: f64,
}

impl BlochState {
    /// Validated constructor.
    pub fn new(x: f64, y: f64, z: f64, t: f64) -> Result<Self> {
        let s = BlochState { x, y, z, t };
        if !(x.is_finite() && y.is_finite() && z.is_finite() && t.is_finite()) {
            return Err(Error::domain(format!("non-finite Bloch state {s:?}")));
        }
        if s.norm_squared() > 1.0 + BLOCH_NORM_TOLERANCE {
            return Err(Error::domain(format!(
                "Bloch vector length {} exceeds 1",
                s.norm_squared().sqrt()
            )));
        }
        Ok(s)
    }

    /// The anyon localized on one antidot: (0, 0, 1) at t = 0.
    pub fn localized() -> Self {
        BlochState {
            x: 0.0,
            y: 0.0,
            z: 1.0,
            t: 0.0,
        }
    }

    pub fn norm_squared(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    fn vector(&self) -> State<3> {
        [self.x, self.y, self.z]
    }

    fn from_vector(v: State<3>, t: f64) -> Self {
        BlochState {
            x: v[0],
            y: v[1],
            z: v[2],
            t,
        }
    }
}

/// A time-ordered sequence of states with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub states: Vec<BlochState>,
    pub rates: RateSet,
    pub model: ModelParams,
}

impl Trajectory {
    pub fn purities(&self) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().map(purity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Method {
    /// Classical fourth-order Runge-Kutta with a fixed step (seconds).
    RungeKutta4 { step: f64 },
    /// Embedded Dormand-Prince 5(4) pair with error control.
    DormandPrince { rel_tol: f64, abs_tol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorSettings {
    pub method: Method,
    pub max_steps: usize,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        IntegratorSettings {
            method: Method::DormandPrince {
                rel_tol: 1e-10,
                abs_tol: 1e-12,
            },
            max_steps: 50_000_000,
        }
    }
}

impl IntegratorSettings {
    pub fn fixed(step: f64) -> Self {
        IntegratorSettings {
            method: Method::RungeKutta4 { step },
            ..Default::default()
        }
    }

    pub fn adaptive(rel_tol: f64, abs_tol: f64) -> Self {
        IntegratorSettings {
            method: Method::DormandPrince { rel_tol, abs_tol },
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.method {
            Method::RungeKutta4 { step } => step > 0.0 && step.is_finite(),
            Method::DormandPrince { rel_tol, abs_tol } => {
                rel_tol > 0.0 && abs_tol > 0.0 && rel_tol.is_finite() && abs_tol.is_finite()
            }
        };
        if ok && self.max_steps >= 1 {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "invalid integrator settings {self:?}"
            )))
        }
    }
}

/// Right-hand side of the Bloch equations.
pub fn bloch_derivative(s: &BlochState, r: &RateSet, m: &ModelParams) -> [f64; 3] {
    derivative(&s.vector(), r, m.omega)
}

fn derivative(v: &State<3>, r: &RateSet, omega: f64) -> State<3> {
    [
        -r.gamma * v[0] + r.lambda,
        (omega + r.shift) * v[2] - r.gamma * v[1],
        -omega * v[1],
    ]
}

/// Integrates the Bloch equations and samples the solution on `grid`.
pub fn evolve(
    s0: &BlochState,
    r: &RateSet,
    m: &ModelParams,
    grid: &[f64],
    cfg: &IntegratorSettings,
) -> Result<Trajectory> {
    cfg.validate()?;
    let Some(&first) = grid.first() else {
        return Err(Error::InvalidGrid("empty time grid".into()));
    };
    if first != s0.t {
        return Err(Error::InvalidGrid(format!(
            "grid starts at {first} but the initial state is at {}",
            s0.t
        )));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidGrid(
            "grid must be finite and strictly increasing".into(),
        ));
    }

    let rhs = |_t: f64, v: &State<3>| derivative(v, r, m.omega);
    let mut steps_left = cfg.max_steps;
    let mut states = Vec::with_capacity(grid.len());
    states.push(*s0);
    let mut v = s0.vector();
    match cfg.method {
        Method::RungeKutta4 { step } => {
            for w in grid.windows(2) {
                v = rk4_span(&rhs, w[0], w[1], v, step, &mut steps_left)?;
                states.push(BlochState::from_vector(v, w[1]));
            }
        }
        Method::DormandPrince { rel_tol, abs_tol } => {
            let mut dp = DormandPrince::new(rel_tol, abs_tol);
            for w in grid.windows(2) {
                v = dp.span(&rhs, w[0], w[1], v, &mut steps_left)?;
                states.push(BlochState::from_vector(v, w[1]));
            }
        }
    }
    Ok(Trajectory {
        states,
        rates: *r,
        model: *m,
    })
}

/// Exact solution at absolute time `t`.
///
/// The x component relaxes on its own. The (y, z) block is propagated with
/// the exact exponential of `[[-Γ, Ω+ω], [-Ω, 0]]`, written as
/// `e^{st} (C(t) I + S(t) N)` with `s = -Γ/2`, `N = M - sI` and `N² = q² I`;
/// C and S are cosh/sinh, cos/sin or 1/t for q² positive, negative or zero.
pub fn closed_form(s0: &BlochState, r: &RateSet, m: &ModelParams, t: f64) -> BlochState {
    let dt = t - s0.t;
    let x = if r.gamma > 0.0 {
        let fixed = r.lambda / r.gamma;
        fixed + (s0.x - fixed) * (-r.gamma * dt).exp()
    } else {
        s0.x + r.lambda * dt
    };

    let s = -0.5 * r.gamma;
    let coupling = m.omega + r.shift;
    let q2 = s * s - m.omega * coupling;
    let (c, sn) = propagator_terms(s, q2, dt);
    // N = [[-Γ/2, Ω+ω], [-Ω, Γ/2]]
    let ny = -0.5 * r.gamma * s0.y + coupling * s0.z;
    let nz = -m.omega * s0.y + 0.5 * r.gamma * s0.z;
    BlochState {
        x,
        y: c * s0.y + sn * ny,
        z: c * s0.z + sn * nz,
        t,
    }
}

/// (e^{st} C(t), e^{st} S(t)) for N² = q² I.
fn propagator_terms(s: f64, q2: f64, t: f64) -> (f64, f64) {
    // Relative size below which q² is treated as a double root.
    let scale = s * s + q2.abs();
    if q2.abs() <= 1e-14 * scale {
        let e = (s * t).exp();
        return (e, e * t);
    }
    if q2 > 0.0 {
        let q = q2.sqrt();
        if q * t < 1.0 {
            let e = (s * t).exp();
            (e * (q * t).cosh(), e * (q * t).sinh() / q)
        } else {
            let plus = ((s + q) * t).exp();
            let minus = ((s - q) * t).exp();
            (0.5 * (plus + minus), 0.5 * (plus - minus) / q)
        }
    } else {
        let q = (-q2).sqrt();
        let e = (s * t).exp();
        (e * (q * t).cos(), e * (q * t).sin() / q)
    }
}

/// Tr ρ² = ½(1 + |r|²).
pub fn purity(s: &BlochState) -> f64 {
    0.5 * (1.0 + s.norm_squared())
}

/// Fixed point (λ/Γ, 0, 0) = (tanh(Ω/2T), 0, 0).
pub fn steady_state(r: &RateSet, _m: &ModelParams) -> Result<BlochState> {
    if !(r.gamma > 0.0) {
        return Err(Error::NoSteadyState);
    }
    Ok(BlochState {
        x: r.lambda / r.gamma,
        y: 0.0,
        z: 0.0,
        t: f64::INFINITY,
    })
}

/// Single-exponential description of the purity decay from an x-axis state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// C fixed by the exact purity at t = 0: x₀² − tanh²(Ω/2T).
    pub intercept: f64,
    /// Least-squares C of ½[1 + tanh² + C e^{-Γt}] over t ∈ [0, 3/Γ].
    pub fitted: f64,
    /// RMS deviation of the exact purity from the fitted form.
    pub residual: f64,
}

/// Number of samples used for the least-squares fit.
const FIT_SAMPLES: usize = 301;

/// Fits the coefficient C(T) of purity(t) = ½[1 + tanh²(Ω/2T) + C e^{-Γt}].
///
/// Only defined for initial states on the x axis, where the exact purity is
/// ½[1 + x(t)²] and differs from the single exponential by an e^{-2Γt} term.
pub fn decay_constant_c(s0: &BlochState, m: &ModelParams, r: &RateSet) -> Result<DecayFit> {
    if s0.y != 0.0 || s0.z != 0.0 {
        return Err(Error::domain(
            "decay constant requires an initial state on the x axis",
        ));
    }
    let steady = steady_state(r, m)?;
    let fixed = steady.x;
    let baseline = purity(&steady);

    let horizon = 3.0 / r.gamma;
    let samples: Vec<(f64, f64)> = (0..FIT_SAMPLES)
        .map(|i| {
            let t = s0.t + horizon * i as f64 / (FIT_SAMPLES - 1) as f64;
            let s = closed_form(s0, r, m, t);
            let basis = (-r.gamma * (t - s0.t)).exp();
            (0.5 * basis, purity(&s) - baseline)
        })
        .collect();
    let num: f64 = samples.iter().map(|(b, d)| b * d).sum();
    let den: f64 = samples.iter().map(|(b, _)| b * b).sum();
    let fitted = num / den;
    let residual = (samples
        .iter()
        .map(|(b, d)| (d - fitted * b).powi(2))
        .sum::<f64>()
        / FIT_SAMPLES as f64)
        .sqrt();

    Ok(DecayFit {
        intercept: s0.x * s0.x - fixed * fixed,
        fitted,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> ModelParams {
        ModelParams::new(1.0, 0.5, 1.0, 0.01, 0.0).unwrap()
    }

    fn rates_for(gamma: f64, temperature: f64, shift: f64) -> RateSet {
        RateSet {
            gamma,
            lambda: gamma * (0.5 / temperature).tanh(),
            shift,
        }
    }

    #[test]
    fn derivative_examples() {
        let m = model();
        let r = rates_for(0.02, 0.5, 0.003);
        let fixed = BlochState {
            x: r.lambda / r.gamma,
            y: 0.0,
            z: 0.0,
            t: 0.0,
        };
        assert_eq!(bloch_derivative(&fixed, &r, &m), [0.0, 0.0, 0.0]);

        let up = BlochState::localized();
        assert_eq!(
            bloch_derivative(&up, &r, &m),
            [r.lambda, 1.0 + r.shift, 0.0]
        );

        let free = BlochState {
            x: 0.0,
            y: 1.0,
            z: 0.0,
            t: 0.0,
        };
        assert_eq!(
            bloch_derivative(&free, &RateSet::zero(), &m),
            [0.0, 0.0, -1.0]
        );
    }

    #[test]
    fn unphysical_state_rejected() {
        assert!(BlochState::new(1.0, 0.1, 0.0, 0.0).is_err());
        assert!(BlochState::new(1.0, 0.0, 0.0, 0.0).is_ok());
        assert!(BlochState::new(f64::NAN, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn closed_form_identity_at_start() {
        let m = model();
        let r = rates_for(0.02, 0.5, -0.003);
        let s0 = BlochState {
            x: 0.3,
            y: -0.2,
            z: 0.5,
            t: 2.0,
        };
        let s = closed_form(&s0, &r, &m, 2.0);
        assert!(
            (s.x - s0.x).abs() < 1e-15 && (s.y - s0.y).abs() < 1e-15 && (s.z - s0.z).abs() < 1e-15
        );
    }

    #[test]
    fn closed_form_zero_gamma_grows_linearly() {
        let m = model();
        let r = RateSet {
            gamma: 0.0,
            lambda: 0.01,
            shift: 0.0,
        };
        let s = closed_form(
            &BlochState {
                x: 0.1,
                y: 0.0,
                z: 0.0,
                t: 0.0,
            },
            &r,
            &m,
            3.0,
        );
        assert!((s.x - 0.13).abs() < 1e-15);
    }

    #[test]
    fn closed_form_critical_damping_is_continuous() {
        // Γ² = 4Ω(Ω+ω): repeated eigenvalue
        let m = model();
        let r = RateSet {
            gamma: 2.0,
            lambda: 1.0,
            shift: 0.0,
        };
        let s0 = BlochState {
            x: 0.0,
            y: 0.2,
            z: 0.9,
            t: 0.0,
        };
        let at = closed_form(&s0, &r, &m, 1.7);
        let near = closed_form(
            &s0,
            &RateSet {
                gamma: 2.0 + 1e-6,
                ..r
            },
            &m,
            1.7,
        );
        assert!((at.y - near.y).abs() < 1e-5 && (at.z - near.z).abs() < 1e-5);
    }

    #[test]
    fn free_precession_returns_after_a_period() {
        let m = model();
        let grid = [0.0, std::f64::consts::TAU];
        let tr = evolve(
            &BlochState::localized(),
            &RateSet::zero(),
            &m,
            &grid,
            &IntegratorSettings::default(),
        )
        .unwrap();
        let end = tr.states[1];
        assert!(
            end.x.abs() < 1e-8 && end.y.abs() < 1e-8 && (end.z - 1.0).abs() < 1e-8,
            "{end:?}"
        );
    }

    #[test]
    fn x_axis_is_invariant() {
        let m = model();
        let r = rates_for(0.05, 0.5, 0.01);
        let grid: Vec<f64> = (0..50).map(|i| i as f64 * 0.7).collect();
        let s0 = BlochState {
            x: -0.4,
            y: 0.0,
            z: 0.0,
            t: 0.0,
        };
        for cfg in [
            IntegratorSettings::default(),
            IntegratorSettings::fixed(0.01),
        ] {
            let tr = evolve(&s0, &r, &m, &grid, &cfg).unwrap();
            assert!(tr.states.iter().all(|s| s.y == 0.0 && s.z == 0.0));
        }
    }

    #[test]
    fn evolve_rejects_bad_grids() {
        let m = model();
        let s0 = BlochState::localized();
        let cfg = IntegratorSettings::default();
        let r = RateSet::zero();
        assert!(matches!(
            evolve(&s0, &r, &m, &[], &cfg),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            evolve(&s0, &r, &m, &[1.0, 2.0], &cfg),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            evolve(&s0, &r, &m, &[0.0, 2.0, 2.0], &cfg),
            Err(Error::InvalidGrid(_))
        ));
        assert!(evolve(&s0, &r, &m, &[0.0, 1.0], &IntegratorSettings::fixed(0.0)).is_err());
    }

    #[test]
    fn purity_examples() {
        assert_eq!(
            purity(&BlochState {
                x: 0.0,
                y: 0.0,
                z: 0.0,
                t: 0.0
            }),
            0.5
        );
        assert_eq!(
            purity(&BlochState {
                x: 1.0,
                y: 0.0,
                z: 0.0,
                t: 0.0
            }),
            1.0
        );
        let tau = 0.7f64.tanh();
        let p = purity(&BlochState {
            x: tau,
            y: 0.0,
            z: 0.0,
            t: 0.0,
        });
        assert!((p - 0.5 * (1.0 + tau * tau)).abs() < 1e-16);
    }

    #[test]
    fn steady_state_requires_dissipation() {
        assert_eq!(
            steady_state(&RateSet::zero(), &model()),
            Err(Error::NoSteadyState)
        );
        let hot = steady_state(&rates_for(0.1, 1e6, 0.0), &model()).unwrap();
        assert!(hot.x.abs() < 1e-6);
        let cold = steady_state(&rates_for(0.1, 1e-3, 0.0), &model()).unwrap();
        assert_eq!(cold.x, 1.0);
    }

    #[test]
    fn decay_constant_at_fixed_point_is_zero() {
        let m = model();
        let r = rates_for(0.05, 0.5, 0.0);
        let s0 = BlochState {
            x: r.lambda / r.gamma,
            y: 0.0,
            z: 0.0,
            t: 0.0,
        };
        let fit = decay_constant_c(&s0, &m, &r).unwrap();
        assert_eq!(fit.fitted, 0.0);
        assert_eq!(fit.residual, 0.0);
        assert_eq!(fit.intercept, 0.0);
    }

    #[test]
    fn decay_constant_pure_state_intercept() {
        let m = model();
        let r = rates_for(0.05, 0.5, 0.0);
        let fit = decay_constant_c(
            &BlochState {
                x: 1.0,
                y: 0.0,
                z: 0.0,
                t: 0.0,
            },
            &m,
            &r,
        )
        .unwrap();
        let sech2 = 1.0 / 1.0f64.cosh().powi(2);
        assert!((fit.intercept - sech2).abs() < 1e-15);
        assert!(fit.residual > 0.0);
        assert!(fit.fitted.abs() < 1.0);
    }

    #[test]
    fn decay_constant_rejects_off_axis_and_zero_gamma() {
        let m = model();
        let r = rates_for(0.05, 0.5, 0.0);
        assert!(decay_constant_c(&BlochState::localized(), &m, &r).is_err());
        let x_axis = BlochState {
            x: 0.5,
            y: 0.0,
            z: 0.0,
            t: 0.0,
        };
        assert_eq!(
            decay_constant_c(&x_axis, &m, &RateSet::zero()),
            Err(Error::NoSteadyState)
        );
    }
}
