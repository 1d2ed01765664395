//! Decoherence of a double-antidot anyon qubit coupled to chiral edge modes.
//!
//! The qubit is a two-level system `H = -½ Ω σx` whose `σz` couples to a
//! gapless ohmic bath. Two descriptions of its decay are provided:
//!
//! * [`markovian`]: Bloch equations with rates from [`bath`], solved
//!   numerically and in closed form.
//! * [`shorttime`]: purity ½[1 + e^{-2A·I(t)}] with the bath integral I(t)
//!   evaluated by quadrature or by its asymptotic forms.
//!
//! [`compare`] puts both on a common time grid. Internally every frequency,
//! energy and temperature is an angular frequency in rad/s; [`params`]
//! converts laboratory inputs.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bath;
pub mod compare;
pub mod constants;
pub mod error;
pub mod markovian;
mod ode;
pub mod params;
pub mod quadrature;
pub mod shorttime;

pub use bath::{RateSet, Regime, SpectralCoupling};
pub use compare::{compare, CompareSettings, ComparisonReport, GridSpec, Spacing};
pub use constants::Constants;
pub use error::{Error, Result};
pub use markovian::{BlochState, IntegratorSettings, Method, Trajectory};
pub use params::{dissipation_rate_conventional, to_model, ModelParams, PhysicalParams};
pub use quadrature::QuadratureSettings;
pub use shorttime::ShortTimePoint;
