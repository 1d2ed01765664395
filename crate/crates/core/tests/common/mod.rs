//! Reference computations that do not share code with the library's
//! quadrature, PV folding or ODE paths.
#![allow(dead_code)]

use std::f64::consts::PI;

/// ħΓ/Ω for the experimental point, recomputed by hand in 40-digit
/// arithmetic with CODATA 2018 constants.
pub const EXPERIMENTAL_RATIO: f64 = 5.641_541_340_544_921e-4;
/// Γ (1/s) for the same point.
pub const EXPERIMENTAL_GAMMA: f64 = 7_385_925.059_556_19;
/// Short-time amplitude A for the same point.
pub const EXPERIMENTAL_AMPLITUDE: f64 = 1.575_635_578_882_734e-3;

pub const COTH_1: f64 = 1.313_035_285_499_331_3;
pub const TANH_1: f64 = 0.761_594_155_955_764_9;

/// PV shift at Ω = ω_c = 1, α = 1, from 40-digit quadrature.
pub const SHIFT_UNIT_COLD: f64 = 0.032_094_396_705_651_75;
pub const SHIFT_UNIT_T01: f64 = 0.051_055_820_420_522_6;

/// I(t) at T = 0: ∫₀^∞ e^{-x/c}(1 − cos 2xt)/(2x) dx = ¼ ln(1 + 4c²t²).
pub fn integral_i_cold(cutoff: f64, t: f64) -> f64 {
    0.25 * (4.0 * (cutoff * t).powi(2)).ln_1p()
}

/// Nodes and weights of n-point Gauss-Legendre on [-1, 1] by Newton
/// iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss-Legendre with `panels` equal panels.
pub fn composite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    rule: &[(f64, f64)],
) -> f64 {
    let w = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let c = a + (p as f64 + 0.5) * w;
            rule.iter()
                .map(|(x, wt)| wt * f(c + 0.5 * w * x))
                .sum::<f64>()
                * 0.5
                * w
        })
        .sum()
}

/// PV shift by singularity subtraction:
/// PV∫₀^X h/(Ω−ε) = ∫₀^X [h(ε) − h(Ω)]/(Ω−ε) dε + h(Ω) ln(Ω/(X−Ω)),
/// with h(ε) = α ε coth(ε/2T) e^{-ε/c}/(Ω+ε).
pub fn shift_subtraction(alpha: f64, cutoff: f64, omega: f64, temperature: f64) -> f64 {
    let h = |e: f64| {
        let w = if temperature == 0.0 {
            e
        } else {
            let u = e / (2.0 * temperature);
            if u < 1e-8 {
                2.0 * temperature
            } else {
                e / u.tanh()
            }
        };
        alpha * w * (-e / cutoff).exp() / (omega + e)
    };
    let upper = omega + 80.0 * cutoff.max(temperature);
    let h_pole = h(omega);
    let rule = gauss_legendre(20);
    let f = |e: f64| (h(e) - h_pole) / (omega - e);
    // Ω is a panel boundary, so no node lands on the removable point.
    let below = composite(f, 0.0, omega, 400, &rule);
    let above = composite(f, omega, upper, 4000, &rule);
    2.0 * omega / PI * (below + above + h_pole * (omega / (upper - omega)).ln())
}

/// Leading terms of the T = 0 shift for Ω ≫ ω_c:
/// (2α/πΩ) Σ (2n+1)! c^{2n+2} / Ω^{2n}.
pub fn shift_far_above_cutoff(alpha: f64, cutoff: f64, omega: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    let mut fact = 1.0; // (2n+1)!
    for n in 0..terms {
        if n > 0 {
            fact *= (2 * n) as f64 * (2 * n + 1) as f64;
        }
        sum += fact * cutoff.powi(2 * n as i32 + 2) / omega.powi(2 * n as i32);
    }
    2.0 * alpha / (PI * omega) * sum
}

/// Fixed-step classical RK4 for the Bloch equations, written out
/// independently of the library stepper.
pub fn bloch_rk4(
    s0: [f64; 3],
    gamma: f64,
    lambda: f64,
    shift: f64,
    omega: f64,
    t: f64,
    steps: usize,
) -> [f64; 3] {
    let f = |v: [f64; 3]| {
        [
            -gamma * v[0] + lambda,
            (omega + shift) * v[2] - gamma * v[1],
            -omega * v[1],
        ]
    };
    let h = t / steps as f64;
    let mut v = s0;
    for _ in 0..steps {
        let add =
            |v: [f64; 3], k: [f64; 3], s: f64| [v[0] + s * k[0], v[1] + s * k[1], v[2] + s * k[2]];
        let k1 = f(v);
        let k2 = f(add(v, k1, h / 2.0));
        let k3 = f(add(v, k2, h / 2.0));
        let k4 = f(add(v, k3, h));
        for i in 0..3 {
            v[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    v
}

/// Least-squares slope of y against x.
pub fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Markovian test point in units Ω = 1: the Markovian cutoff keeps the
/// experimental ratio v/(2L Ω) and α is chosen so that Γ hits the target.
/// λ and the PV shift then follow from the bath.
pub fn markov_point(
    gamma_over_omega: f64,
    temperature: f64,
) -> (anyondec::ModelParams, anyondec::RateSet) {
    let rate_cutoff =
        1.0e5 / (2.0 * 3.0e-6) / anyondec::Constants::CODATA_2018.kelvin_to_angular(0.1);
    let base = anyondec::ModelParams::new(1.0, temperature, 0.5 * rate_cutoff, 1.0, 0.0).unwrap();
    let unit_gamma = anyondec::bath::rate_gamma(&base);
    let m = base.with_alpha(gamma_over_omega / unit_gamma).unwrap();
    let r = anyondec::bath::rates(&m, &anyondec::QuadratureSettings::default()).unwrap();
    (m, r)
}

pub const MARKOV_GAMMAS: [f64; 3] = [1e-3, 1e-2, 1e-1];
pub const MARKOV_TEMPERATURES: [f64; 3] = [0.1, 1.0, 10.0];
/// Distinct initial states: localized, pure off-axis, mixed with a y part.
pub const MARKOV_STATES: [[f64; 3]; 3] = [[0.0, 0.0, 1.0], [0.6, 0.0, 0.8], [0.0, 0.5, 0.5]];
