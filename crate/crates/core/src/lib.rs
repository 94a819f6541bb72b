//! Vacuum-field (Casimir) stress in and force on a dielectric slab inside a
//! planar cavity, evaluated with Lifshitz-type integrals at imaginary
//! frequency.
//!
//! The crate is organised bottom-up: [`units`] and [`materials`] feed
//! [`optics`], which supplies the reflection coefficients integrated by
//! [`lifshitz`]. [`scenarios`] builds the parameter sweeps and closed-form
//! asymptotics, [`oracle`] holds independent reference implementations,
//! [`config`] parses run files and [`cli`] writes the CSV tables of the
//! command-line tool.

pub mod cli;
pub mod config;
pub mod error;
pub mod lifshitz;
pub mod materials;
pub mod optics;
pub mod oracle;
pub mod scenarios;
pub mod units;

pub use error::{CasimirError, Result};
pub use lifshitz::{
    gap_force, net_force_on_slab, stress_in_slab, CavityConfig, Gap, PressureResult, QuadratureSpec,
    Quantity,
};
pub use materials::DielectricModel;
pub use optics::{Polarization, SpectralPoint};
pub use units::ScaledUnits;
