//! Permittivity models at imaginary frequency iξ.

use serde::{Deserialize, Serialize};

use crate::error::{CasimirError, Result};

/// Nodes closer to ξ = 0 than this fraction of the model's plasma frequency
/// are evaluated with the exact ξ → 0 limit.
pub const ZERO_FREQUENCY_FRACTION: f64 = 1e-12;

/// Default mirror damping as a fraction of the mirror plasma frequency.
pub const DEFAULT_DAMPING_RATIO: f64 = 1e-3;

/// Analytic part of a permittivity that stays finite at ξ = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegularPart {
    /// ε̃(iξ) = eps.
    Constant { eps: f64 },
    /// Single Lorentz oscillator, ε̃(iξ) = eps_inf + strength·ω₀² / (ω₀² + ξ²).
    Oscillator {
        eps_inf: f64,
        strength: f64,
        omega_0: f64,
    },
}

impl RegularPart {
    fn value(&self, xi: f64) -> f64 {
        match *self {
            RegularPart::Constant { eps } => eps,
            RegularPart::Oscillator {
                eps_inf,
                strength,
                omega_0,
            } => {
                let w2 = omega_0 * omega_0;
                eps_inf + strength * w2 / (w2 + xi * xi)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            RegularPart::Constant { eps } => check_eps(eps),
            RegularPart::Oscillator {
                eps_inf,
                strength,
                omega_0,
            } => {
                check_eps(eps_inf)?;
                if !(strength >= 0.0 && strength.is_finite()) {
                    return Err(CasimirError::Domain(format!(
                        "oscillator strength must be non-negative, got {strength}"
                    )));
                }
                check_frequency("oscillator frequency", omega_0)
            }
        }
    }
}

/// Permittivity model evaluated at imaginary frequency. Frequencies in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum DielectricModel {
    Vacuum,
    Constant { eps: f64 },
    /// ε = 1 + ω_P² / ξ².
    Plasma { omega_p: f64 },
    /// ε = 1 + Ω_P² / (ξ² + Γ²).
    Drude { omega_p: f64, gamma: f64 },
    /// ε = ε̃(iξ) + ω_P² / ξ².
    PlasmaShifted { base: RegularPart, omega_p: f64 },
    /// Ideal conductor; only valid as a mirror half-space.
    PerfectMirror,
}

/// Value of ε(iξ). At ξ = 0 plasma-like models diverge; the divergence is
/// carried as the finite residue lim ξ²·ε(iξ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Permittivity {
    Finite(f64),
    Divergent { residue: f64 },
}

impl Permittivity {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            Permittivity::Finite(v) => Some(v),
            Permittivity::Divergent { .. } => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, Permittivity::Divergent { .. })
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(CasimirError::Domain(format!(
            "permittivity must be positive and finite, got {eps}"
        )));
    }
    if eps < 1.0 {
        log::warn!("permittivity {eps} < 1 at imaginary frequency is unphysical for passive media");
    }
    Ok(())
}

fn check_frequency(name: &str, value: f64) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(CasimirError::Domain(format!(
            "{name} must be positive and finite, got {value}"
        )));
    }
    Ok(())
}

impl DielectricModel {
    pub fn plasma(omega_p: f64) -> Result<Self> {
        check_frequency("plasma frequency", omega_p)?;
        Ok(DielectricModel::Plasma { omega_p })
    }

    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        let model = DielectricModel::Drude { omega_p, gamma };
        model.validate()?;
        Ok(model)
    }

    /// Drude model with Γ = 10⁻³ Ω_P.
    pub fn drude_default_damping(omega_p: f64) -> Result<Self> {
        Self::drude(omega_p, DEFAULT_DAMPING_RATIO * omega_p)
    }

    pub fn constant(eps: f64) -> Result<Self> {
        check_eps(eps)?;
        Ok(DielectricModel::Constant { eps })
    }

    pub fn plasma_shifted(base: RegularPart, omega_p: f64) -> Result<Self> {
        let model = DielectricModel::PlasmaShifted { base, omega_p };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DielectricModel::Vacuum | DielectricModel::PerfectMirror => Ok(()),
            DielectricModel::Constant { eps } => check_eps(eps),
            DielectricModel::Plasma { omega_p } => check_frequency("plasma frequency", omega_p),
            DielectricModel::Drude { omega_p, gamma } => {
                check_frequency("plasma frequency", omega_p)?;
                if !(gamma >= 0.0 && gamma.is_finite()) {
                    return Err(CasimirError::Domain(format!(
                        "damping must be non-negative, got {gamma}"
                    )));
                }
                Ok(())
            }
            DielectricModel::PlasmaShifted { base, omega_p } => {
                base.validate()?;
                check_frequency("plasma frequency", omega_p)
            }
        }
    }

    pub fn is_perfect_mirror(&self) -> bool {
        matches!(self, DielectricModel::PerfectMirror)
    }

    /// Plasma frequency of the model, if it has one.
    pub fn plasma_frequency(&self) -> Option<f64> {
        match *self {
            DielectricModel::Plasma { omega_p }
            | DielectricModel::Drude { omega_p, .. }
            | DielectricModel::PlasmaShifted { omega_p, .. } => Some(omega_p),
            _ => None,
        }
    }

    /// Whether ε(iξ) has a 1/ξ² pole at the origin.
    fn divergence_residue(&self) -> Option<f64> {
        match *self {
            DielectricModel::Plasma { omega_p } | DielectricModel::PlasmaShifted { omega_p, .. } => {
                Some(omega_p * omega_p)
            }
            DielectricModel::Drude { omega_p, gamma } if gamma == 0.0 => Some(omega_p * omega_p),
            _ => None,
        }
    }

    fn near_zero(&self, xi: f64) -> bool {
        match self.plasma_frequency() {
            Some(w) => xi <= ZERO_FREQUENCY_FRACTION * w,
            None => xi == 0.0,
        }
    }

    /// ε(iξ).
    pub fn epsilon(&self, xi: f64) -> Result<Permittivity> {
        if !(xi >= 0.0) {
            return Err(CasimirError::Domain(format!(
                "imaginary frequency must be non-negative, got {xi}"
            )));
        }
        if let (Some(residue), true) = (self.divergence_residue(), self.near_zero(xi)) {
            return Ok(Permittivity::Divergent { residue });
        }
        let value = match *self {
            DielectricModel::Vacuum => 1.0,
            DielectricModel::Constant { eps } => eps,
            DielectricModel::Plasma { omega_p } => {
                let ratio = omega_p / xi;
                1.0 + ratio * ratio
            }
            DielectricModel::Drude { omega_p, gamma } => {
                1.0 + omega_p * omega_p / (xi * xi + gamma * gamma)
            }
            DielectricModel::PlasmaShifted { base, omega_p } => {
                let ratio = omega_p / xi;
                base.value(xi) + ratio * ratio
            }
            DielectricModel::PerfectMirror => {
                return Err(CasimirError::Usage(
                    "a perfect mirror has no finite permittivity; use the mirror reflection coefficient"
                        .into(),
                ))
            }
        };
        Ok(Permittivity::Finite(value))
    }

    /// ε(iξ)·ξ², finite for every model including plasma-like ones at ξ = 0.
    pub fn epsilon_times_xi_sq(&self, xi: f64) -> Result<f64> {
        if !(xi >= 0.0) {
            return Err(CasimirError::Domain(format!(
                "imaginary frequency must be non-negative, got {xi}"
            )));
        }
        let xi2 = xi * xi;
        Ok(match *self {
            DielectricModel::Vacuum => xi2,
            DielectricModel::Constant { eps } => eps * xi2,
            DielectricModel::Plasma { omega_p } => xi2 + omega_p * omega_p,
            DielectricModel::Drude { omega_p, gamma } => {
                if gamma == 0.0 {
                    xi2 + omega_p * omega_p
                } else {
                    xi2 + omega_p * omega_p * xi2 / (xi2 + gamma * gamma)
                }
            }
            DielectricModel::PlasmaShifted { base, omega_p } => {
                base.value(xi) * xi2 + omega_p * omega_p
            }
            DielectricModel::PerfectMirror => {
                return Err(CasimirError::Usage(
                    "a perfect mirror has no finite permittivity".into(),
                ))
            }
        })
    }

    /// Returns the model with every frequency multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        match *self {
            DielectricModel::Plasma { omega_p } => DielectricModel::Plasma {
                omega_p: omega_p * factor,
            },
            DielectricModel::Drude { omega_p, gamma } => DielectricModel::Drude {
                omega_p: omega_p * factor,
                gamma: gamma * factor,
            },
            DielectricModel::PlasmaShifted { base, omega_p } => DielectricModel::PlasmaShifted {
                base: match base {
                    RegularPart::Oscillator {
                        eps_inf,
                        strength,
                        omega_0,
                    } => RegularPart::Oscillator {
                        eps_inf,
                        strength,
                        omega_0: omega_0 * factor,
                    },
                    c => c,
                },
                omega_p: omega_p * factor,
            },
            other => other,
        }
    }
}
