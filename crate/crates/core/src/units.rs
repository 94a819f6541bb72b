//! Physical constants and the dimensionless scaling used by the integrals.
//!
//! Frequencies are measured in units of the slab plasma frequency ω_P and
//! wavevectors in units of k_P = ω_P / c, so every pressure is a pure number
//! times ħ c k_P⁴.

use crate::error::{CasimirError, Result};

/// CODATA 2018 constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants;

impl PhysicalConstants {
    /// Reduced Planck constant (J·s).
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Speed of light in vacuum (m/s).
    pub const C: f64 = 299_792_458.0;
    /// Elementary charge (C).
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    /// Angular frequency of a photon of energy 1 eV (rad/s), e / ħ.
    pub const EV_TO_ANGULAR_FREQUENCY: f64 = Self::ELEMENTARY_CHARGE / Self::HBAR;
}

pub const HBAR: f64 = PhysicalConstants::HBAR;
pub const C: f64 = PhysicalConstants::C;

/// Reference scale for a computation: k_P and the pressure unit ħ c k_P⁴.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledUnits {
    k_p: f64,
    pressure_scale: f64,
}

impl ScaledUnits {
    /// Builds the scale from a reference inverse length k_P (rad/m).
    pub fn from_k_p(k_p: f64) -> Result<Self> {
        if !(k_p > 0.0 && k_p.is_finite()) {
            return Err(CasimirError::Domain(format!(
                "reference wavevector must be positive and finite, got {k_p}"
            )));
        }
        Ok(Self {
            k_p,
            pressure_scale: HBAR * C * k_p.powi(4),
        })
    }

    /// Builds the scale from a plasma angular frequency ω_P (rad/s).
    pub fn from_plasma_frequency(omega_p: f64) -> Result<Self> {
        Self::from_k_p(omega_p / C)
    }

    /// Builds the scale from a plasma energy ħω_P given in eV.
    pub fn from_plasma_energy_ev(energy_ev: f64) -> Result<Self> {
        Self::from_k_p(ev_to_k_p(energy_ev)?)
    }

    pub fn k_p(&self) -> f64 {
        self.k_p
    }

    /// ω_P = c k_P (rad/s).
    pub fn omega_p(&self) -> f64 {
        self.k_p * C
    }

    /// ħ c k_P⁴ (N/m²).
    pub fn pressure_scale(&self) -> f64 {
        self.pressure_scale
    }

    /// Converts a length in metres to units of 1/k_P.
    pub fn to_dimensionless_length(&self, metres: f64) -> f64 {
        metres * self.k_p
    }

    /// Converts a length in units of 1/k_P to metres.
    pub fn to_metres(&self, dimensionless: f64) -> f64 {
        dimensionless / self.k_p
    }
}

/// k_P = ω_P / c for a plasma energy given in eV.
pub fn ev_to_k_p(plasma_energy_ev: f64) -> Result<f64> {
    if !(plasma_energy_ev > 0.0 && plasma_energy_ev.is_finite()) {
        return Err(CasimirError::Domain(format!(
            "plasma energy must be positive, got {plasma_energy_ev} eV"
        )));
    }
    Ok(plasma_energy_ev * PhysicalConstants::EV_TO_ANGULAR_FREQUENCY / C)
}

/// Angular frequency (rad/s) for an energy in eV.
pub fn ev_to_angular_frequency(energy_ev: f64) -> f64 {
    energy_ev * PhysicalConstants::EV_TO_ANGULAR_FREQUENCY
}

/// Multiplies a pressure in units of ħ c k_P⁴ by the scale.
pub fn to_absolute_pressure(dimensionless_value: f64, scale: &ScaledUnits) -> f64 {
    dimensionless_value * scale.pressure_scale()
}
