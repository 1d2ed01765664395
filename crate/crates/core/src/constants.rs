//! Physical constants in SI units, CODATA 2018 exact or recommended values.

use serde::{Deserialize, Serialize};

/// Elementary charge (C), exact.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Vacuum permittivity (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Reduced Planck constant (J s), exact.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant (J/K), exact.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// The constant set used for unit conversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub elementary_charge: f64,
    pub vacuum_permittivity: f64,
    pub reduced_planck: f64,
    pub boltzmann: f64,
}

impl Constants {
    pub const CODATA_2018: Constants = Constants {
        elementary_charge: ELEMENTARY_CHARGE,
        vacuum_permittivity: VACUUM_PERMITTIVITY,
        reduced_planck: HBAR,
        boltzmann: BOLTZMANN,
    };

    /// Angular frequency (rad/s) of an energy given as a temperature in kelvin.
    pub fn kelvin_to_angular(&self, kelvin: f64) -> f64 {
        self.boltzmann * kelvin / self.reduced_planck
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}
