//! Laboratory parameters and their conversion to the internal unit system.
//!
//! Everything downstream of [`to_model`] works in angular-frequency units
//! (rad/s): energies are divided by ħ and temperatures are multiplied by
//! k_B/ħ. Neither constant appears in the bath, Markovian or short-time
//! formulas.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::Constants;
use crate::error::{Error, Result};

/// Laboratory description of the double-antidot qubit and its edge.
///
/// Energies (`splitting`, `temperature`, `bias`) are expressed in kelvin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalParams {
    /// Relative dielectric constant of the host.
    pub dielectric_constant: f64,
    /// Edge-mode velocity (m/s).
    pub edge_velocity: f64,
    /// Tunnelling splitting Ω (K).
    pub splitting: f64,
    /// Bath temperature (K).
    pub temperature: f64,
    /// Distance between the two antidots (m).
    pub antidot_separation: f64,
    /// Distance from the qubit to the edge (m).
    pub qubit_edge_distance: f64,
    /// Filling factor denominator m, ν = 1/m.
    pub filling_denominator: u32,
    /// Level bias ε (K). Only the unbiased qubit is modelled.
    #[serde(default)]
    pub bias: f64,
}

impl PhysicalParams {
    /// The experimental point quoted for the two-antidot device at ν = 1/3.
    pub fn experimental() -> Self {
        PhysicalParams {
            dielectric_constant: 10.0,
            edge_velocity: 1.0e5,
            splitting: 0.1,
            temperature: 0.0,
            antidot_separation: 100.0e-9,
            qubit_edge_distance: 3.0e-6,
            filling_denominator: 3,
            bias: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(name: &str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::domain(format!(
                    "{name} must be finite and > 0, got {v}"
                )))
            }
        }
        fn non_negative(name: &str, v: f64) -> Result<()> {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::domain(format!(
                    "{name} must be finite and >= 0, got {v}"
                )))
            }
        }
        positive("dielectric_constant", self.dielectric_constant)?;
        positive("edge_velocity", self.edge_velocity)?;
        positive("splitting", self.splitting)?;
        non_negative("temperature", self.temperature)?;
        // d = 0 is the decoupled qubit and is allowed.
        non_negative("antidot_separation", self.antidot_separation)?;
        positive("qubit_edge_distance", self.qubit_edge_distance)?;
        if self.filling_denominator < 1 {
            return Err(Error::domain("filling_denominator must be >= 1"));
        }
        if self.bias != 0.0 {
            return Err(Error::Unsupported(format!(
                "bias must be 0 (only the unbiased qubit is modelled), got {}",
                self.bias
            )));
        }
        Ok(())
    }

    fn m_cubed(&self) -> f64 {
        let m = f64::from(self.filling_denominator);
        m * m * m
    }

    /// e²/(ε_r ε₀ ħ v): the dimensionless edge coupling strength.
    fn coulomb_strength(&self, k: &Constants) -> f64 {
        k.elementary_charge * k.elementary_charge
            / (self.dielectric_constant
                * k.vacuum_permittivity
                * k.reduced_planck
                * self.edge_velocity)
    }
}

/// Working parameters in angular-frequency units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Tunnelling splitting Ω (rad/s).
    pub omega: f64,
    /// k_B T / ħ (rad/s); zero is exact zero temperature.
    pub temperature: f64,
    /// Short-time bath cutoff ω_c = v/4L (rad/s).
    pub cutoff: f64,
    /// Cutoff of the spectral function used for the Markovian rates,
    /// v/2L (rad/s), matching the e^{-2ΩL/ħv} decay of the closed-form rate.
    pub rate_cutoff: f64,
    /// Dimensionless prefactor of the ohmic spectral function.
    pub alpha: f64,
    /// Dimensionless amplitude A of the short-time exponent B² = A·I(t).
    pub amplitude: f64,
}

impl ModelParams {
    /// Builds a parameter set directly in internal units. The Markovian
    /// cutoff is set to twice `cutoff`, the ratio fixed by the device
    /// geometry.
    pub fn new(
        omega: f64,
        temperature: f64,
        cutoff: f64,
        alpha: f64,
        amplitude: f64,
    ) -> Result<Self> {
        Self {
            omega,
            temperature,
            cutoff,
            rate_cutoff: 2.0 * cutoff,
            alpha,
            amplitude,
        }
        .validated()
    }

    pub fn with_rate_cutoff(self, rate_cutoff: f64) -> Result<Self> {
        Self {
            rate_cutoff,
            ..self
        }
        .validated()
    }

    pub fn with_temperature(self, temperature: f64) -> Result<Self> {
        Self {
            temperature,
            ..self
        }
        .validated()
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self { alpha, ..self }.validated()
    }

    pub fn with_amplitude(self, amplitude: f64) -> Result<Self> {
        Self { amplitude, ..self }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let checks = [
            ("omega", self.omega, false),
            ("temperature", self.temperature, true),
            ("cutoff", self.cutoff, false),
            ("rate_cutoff", self.rate_cutoff, false),
            ("alpha", self.alpha, true),
            ("amplitude", self.amplitude, true),
        ];
        for (name, v, zero_ok) in checks {
            let ok = v.is_finite() && (v > 0.0 || (zero_ok && v == 0.0));
            if !ok {
                let bound = if zero_ok { ">= 0" } else { "> 0" };
                return Err(Error::domain(format!(
                    "{name} must be finite and {bound}, got {v}"
                )));
            }
        }
        Ok(self)
    }
}

/// Converts laboratory parameters to the internal unit system.
pub fn to_model(phys: &PhysicalParams) -> Result<ModelParams> {
    to_model_with(phys, &Constants::CODATA_2018)
}

pub fn to_model_with(phys: &PhysicalParams, k: &Constants) -> Result<ModelParams> {
    phys.validate()?;
    let geometry = phys.antidot_separation / phys.qubit_edge_distance;
    let strength = phys.coulomb_strength(k);
    let alpha = (geometry * strength / 2.0).powi(2) / (2.0 * PI * phys.m_cubed());
    let amplitude = 2.0 / phys.m_cubed() * (geometry * strength / (2.0 * PI)).powi(2);

    let model = ModelParams {
        omega: k.kelvin_to_angular(phys.splitting),
        temperature: k.kelvin_to_angular(phys.temperature),
        cutoff: phys.edge_velocity / (4.0 * phys.qubit_edge_distance),
        rate_cutoff: phys.edge_velocity / (2.0 * phys.qubit_edge_distance),
        alpha,
        amplitude,
    };
    model.validated().map_err(|e| match e {
        Error::Domain(msg) => Error::Domain(format!("non-finite model parameter: {msg}")),
        other => other,
    })
}

/// Zero-temperature dissipation rate in laboratory units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConventionalRate {
    /// Γ (1/s).
    pub gamma: f64,
    /// ħΓ/Ω (dimensionless).
    pub ratio: f64,
}

/// Closed-form zero-temperature dissipation rate of the unscreened
/// antidot field, evaluated directly in SI units.
pub fn dissipation_rate_conventional(phys: &PhysicalParams) -> Result<ConventionalRate> {
    dissipation_rate_conventional_with(phys, &Constants::CODATA_2018)
}

pub fn dissipation_rate_conventional_with(
    phys: &PhysicalParams,
    k: &Constants,
) -> Result<ConventionalRate> {
    phys.validate()?;
    let hbar = k.reduced_planck;
    let splitting_energy = k.boltzmann * phys.splitting;
    let d_over_l = phys.antidot_separation / phys.qubit_edge_distance;
    let coulomb = k.elementary_charge * k.elementary_charge
        / (2.0 * phys.dielectric_constant * k.vacuum_permittivity * hbar * phys.edge_velocity);
    let decay =
        (-2.0 * splitting_energy * phys.qubit_edge_distance / (hbar * phys.edge_velocity)).exp();
    let gamma = d_over_l.powi(2) * coulomb.powi(2) * splitting_energy
        / (2.0 * PI * phys.m_cubed() * hbar)
        * decay;
    if !gamma.is_finite() {
        return Err(Error::domain("dissipation rate is not finite"));
    }
    Ok(ConventionalRate {
        gamma,
        ratio: hbar * gamma / splitting_energy,
    })
}
