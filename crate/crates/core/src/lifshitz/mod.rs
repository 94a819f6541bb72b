//! Casimir force in gaps and stress inside the slab for the five-region
//! system mirror 1 | vacuum d₁ | slab d_s | vacuum d₂ | mirror 2.
//!
//! Every layer quantity has the form
//!
//! ```text
//! F_j = ħ/(2π²) ∫₀^∞dξ ∫₀^∞dk k κ_j Σ_{TM,TE} X/(1 − X),   X = r_{j−} r_{j+} e^{−2κ_j d_j}
//! ```
//!
//! and is evaluated in units of ħ c k_P⁴ over the dimensionless coordinates
//! x = ξ/ω_P, y = k/k_P.

pub mod quadrature;

use std::f64::consts::PI;

use crate::error::{CasimirError, Result};
use crate::materials::DielectricModel;
use crate::optics::{
    in_slab_r, interface_r, kappa, mirror_r, recurrence_r, slab_rt, Kappa, Polarization,
    SpectralPoint, StackCoefficients, DENOMINATOR_GUARD,
};
use crate::units::ScaledUnits;

pub use quadrature::{integrate_2d, Estimate, QuadratureSpec};

/// 1/(2π²), the prefactor of every layer integral in units of ħ c k_P⁴.
const PREFACTOR: f64 = 1.0 / (2.0 * PI * PI);

/// Geometry and materials of the planar cavity. Lengths in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    pub mirror1: DielectricModel,
    pub d1: f64,
    pub slab: DielectricModel,
    pub d_s: f64,
    pub d2: f64,
    pub mirror2: DielectricModel,
    reference: ScaledUnits,
}

/// Selects one of the two vacuum gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gap {
    First,
    Second,
}

/// The three integrals the cavity supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Stress inside the slab.
    Stress,
    /// Force per area in one gap, from the stack recurrence.
    GapForce(Gap),
    /// Net force F₂ − F₁ from the closed two-mirror expression.
    NetForce,
}

impl CavityConfig {
    /// Builds and validates a configuration. The reference scale k_P comes
    /// from the slab plasma frequency, or 1/d_s for slabs without one.
    pub fn new(
        mirror1: DielectricModel,
        d1: f64,
        slab: DielectricModel,
        d_s: f64,
        d2: f64,
        mirror2: DielectricModel,
    ) -> Result<Self> {
        if !(d_s > 0.0 && d_s.is_finite()) {
            return Err(CasimirError::Domain(format!(
                "slab thickness must be positive, got {d_s}"
            )));
        }
        let reference = match slab.plasma_frequency() {
            Some(w) => ScaledUnits::from_plasma_frequency(w)?,
            None => ScaledUnits::from_k_p(1.0 / d_s)?,
        };
        let config = Self {
            mirror1,
            d1,
            slab,
            d_s,
            d2,
            mirror2,
            reference,
        };
        config.validate()?;
        Ok(config)
    }

    /// Slab touching identical mirrors on both sides (d₁ = d₂ = 0).
    pub fn contact(slab: DielectricModel, d_s: f64, mirror: DielectricModel) -> Result<Self> {
        Self::new(mirror, 0.0, slab, d_s, 0.0, mirror)
    }

    /// Slab in a cavity of width L at position z, with
    /// d₁ = (L − d_s)(1 + z)/2 and d₂ = (L − d_s)(1 − z)/2.
    pub fn at_position(
        slab: DielectricModel,
        d_s: f64,
        mirror: DielectricModel,
        cavity_width: f64,
        z: f64,
    ) -> Result<Self> {
        if !(z > -1.0 && z < 1.0) {
            return Err(CasimirError::Domain(format!(
                "position z must lie in (-1, 1), got {z}"
            )));
        }
        if !(cavity_width > d_s) {
            return Err(CasimirError::Domain(format!(
                "cavity width {cavity_width} must exceed slab thickness {d_s}"
            )));
        }
        let half = 0.5 * (cavity_width - d_s);
        Self::new(mirror, half * (1.0 + z), slab, d_s, half * (1.0 - z), mirror)
    }

    /// Overrides the reference scale used for dimensionless output.
    pub fn with_reference(self, reference: ScaledUnits) -> Self {
        Self { reference, ..self }
    }

    pub fn reference(&self) -> ScaledUnits {
        self.reference
    }

    pub fn cavity_width(&self) -> f64 {
        self.d1 + self.d_s + self.d2
    }

    pub fn gap(&self, gap: Gap) -> f64 {
        match gap {
            Gap::First => self.d1,
            Gap::Second => self.d2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, d) in [("d1", self.d1), ("d2", self.d2)] {
            if !(d >= 0.0 && d.is_finite()) {
                return Err(CasimirError::Domain(format!(
                    "gap {name} must be non-negative, got {d}"
                )));
            }
        }
        if !(self.d_s > 0.0 && self.d_s.is_finite()) {
            return Err(CasimirError::Domain(format!(
                "slab thickness must be positive, got {}",
                self.d_s
            )));
        }
        if self.slab.is_perfect_mirror() {
            return Err(CasimirError::Usage(
                "the slab cannot be a perfect mirror".into(),
            ));
        }
        self.slab.validate()?;
        self.mirror1.validate()?;
        self.mirror2.validate()?;
        Ok(())
    }

    fn point(&self, x: f64, y: f64, pol: Polarization) -> SpectralPoint {
        SpectralPoint {
            xi: x * self.reference.omega_p(),
            k: y * self.reference.k_p(),
            pol,
        }
    }

    /// Reflection coefficients seen from inside the slab toward each mirror.
    pub fn slab_coefficients(&self, point: SpectralPoint) -> Result<StackCoefficients> {
        let vacuum = DielectricModel::Vacuum;
        let rho = interface_r(&vacuum, &self.slab, point)?;
        let k0 = kappa(&vacuum, point.xi, point.k)?;
        Ok(StackCoefficients {
            r_minus: in_slab_r(rho, mirror_r(&self.mirror1, point)?, k0, self.d1)?,
            r_plus: in_slab_r(rho, mirror_r(&self.mirror2, point)?, k0, self.d2)?,
        })
    }

    /// Reflection coefficients seen from inside a vacuum gap.
    pub fn gap_coefficients(&self, gap: Gap, point: SpectralPoint) -> Result<StackCoefficients> {
        let (r, t) = slab_rt(&self.slab, self.d_s, point)?;
        let k0 = kappa(&DielectricModel::Vacuum, point.xi, point.k)?;
        let r1 = mirror_r(&self.mirror1, point)?;
        let r2 = mirror_r(&self.mirror2, point)?;
        Ok(match gap {
            Gap::First => StackCoefficients {
                r_minus: r1,
                r_plus: recurrence_r(r, t, r2, k0, self.d2)?,
            },
            Gap::Second => StackCoefficients {
                r_minus: recurrence_r(r, t, r1, k0, self.d1)?,
                r_plus: r2,
            },
        })
    }

    /// Integrand of the requested quantity at dimensionless (x, y), in units
    /// of ħ c k_P⁴, including the k weight and the 1/(2π²) prefactor.
    pub fn integrand(&self, quantity: Quantity, x: f64, y: f64, pol: Polarization) -> Result<f64> {
        if y == 0.0 {
            return Ok(0.0);
        }
        let point = self.point(x, y, pol);
        let k_ref = self.reference.k_p();
        let kernel = match quantity {
            Quantity::Stress => {
                let c = self.slab_coefficients(point)?;
                let ks = kappa(&self.slab, point.xi, point.k)?;
                layer_force_integrand(c.r_minus, c.r_plus, ks, self.d_s)?
            }
            Quantity::GapForce(gap) => {
                let c = self.gap_coefficients(gap, point)?;
                let k0 = kappa(&DielectricModel::Vacuum, point.xi, point.k)?;
                layer_force_integrand(c.r_minus, c.r_plus, k0, self.gap(gap))?
            }
            Quantity::NetForce => self.net_force_kernel(point)?,
        };
        Ok(PREFACTOR * y * kernel / k_ref)
    }

    /// κ r (R₂e₂ − R₁e₁)/N with N = 1 − r(R₁e₁ + R₂e₂) − (t² − r²)R₁R₂e₁e₂.
    fn net_force_kernel(&self, point: SpectralPoint) -> Result<f64> {
        let (r, t) = slab_rt(&self.slab, self.d_s, point)?;
        let k0 = kappa(&DielectricModel::Vacuum, point.xi, point.k)?;
        let a = mirror_r(&self.mirror1, point)? * k0.round_trip(self.d1);
        let b = mirror_r(&self.mirror2, point)? * k0.round_trip(self.d2);
        let cross = (t * t - r * r) * a * b;
        let n = 1.0 - r * (a + b) - cross;
        if n.abs() <= DENOMINATOR_GUARD {
            return Err(CasimirError::singular("net force denominator"));
        }
        Ok(k0.value() * r * (b - a) / n)
    }

    /// Quadrature pivots in dimensionless units: max(1, 1/(2 k_P d_min)) on
    /// both axes, where d_min is the thinnest layer the integral resolves.
    fn pivots(&self, quantity: Quantity, quad: &QuadratureSpec) -> QuadratureSpec {
        let d_min = match quantity {
            Quantity::Stress => [self.d1, self.d2]
                .into_iter()
                .filter(|&d| d > 0.0)
                .fold(self.d_s, f64::min),
            Quantity::GapForce(gap) => self.gap(gap),
            Quantity::NetForce => self.d1.min(self.d2),
        };
        let mut scale = 0.5 / self.reference.to_dimensionless_length(d_min);
        if self.slab.plasma_frequency().is_some() {
            scale = scale.max(1.0);
        }
        QuadratureSpec {
            xi_scale: Some(quad.xi_scale.unwrap_or(scale)),
            k_scale: Some(quad.k_scale.unwrap_or(scale)),
            ..*quad
        }
    }

    fn evaluate(&self, quantity: Quantity, quad: &QuadratureSpec) -> Result<PressureResult> {
        self.validate()?;
        let spec = self.pivots(quantity, quad);
        let est = integrate_2d(|x, y, pol| self.integrand(quantity, x, y, pol), &spec)?;
        if !est.converged {
            log::warn!(
                "{quantity:?} did not converge: value {:e}, error {:e} after {} evaluations",
                est.value,
                est.error,
                est.evals
            );
        }
        Ok(PressureResult::from_estimate(est, self.reference))
    }
}

/// A computed pressure with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureResult {
    /// Value in units of ħ c k_P⁴.
    pub value: f64,
    pub error_estimate: f64,
    pub evals: usize,
    pub converged: bool,
    pub scale: ScaledUnits,
}

impl PressureResult {
    fn from_estimate(est: Estimate, scale: ScaledUnits) -> Self {
        Self {
            value: est.value,
            error_estimate: est.error,
            evals: est.evals,
            converged: est.converged,
            scale,
        }
    }

    /// Value in N/m².
    pub fn si_value(&self) -> f64 {
        self.value * self.scale.pressure_scale()
    }

    /// Error estimate in N/m².
    pub fn si_error(&self) -> f64 {
        self.error_estimate * self.scale.pressure_scale()
    }
}

/// κ·X/(1 − X) with X = r₋ r₊ e^{−2κd}. The k weight, prefactor and
/// polarization sum are applied by the caller.
pub fn layer_force_integrand(r_minus: f64, r_plus: f64, kappa_layer: Kappa, d_layer: f64) -> Result<f64> {
    let p = r_minus * r_plus;
    if p == 0.0 {
        return Ok(0.0);
    }
    let kd = 2.0 * kappa_layer.value() * d_layer;
    let x = p * (-kd).exp();
    // 1 − p e^{−2κd} = (1 − p) − p·expm1(−2κd), accurate as p → 1 and κd → 0
    let one_minus_x = (1.0 - p) - p * (-kd).exp_m1();
    if !(one_minus_x > DENOMINATOR_GUARD) {
        return Err(CasimirError::singular("layer round trip"));
    }
    Ok(kappa_layer.value() * x / one_minus_x)
}

/// Stress in the slab, with the sign convention that identical perfect
/// mirrors around a vacuum layer give +F_C.
pub fn stress_in_slab(config: &CavityConfig, quad: &QuadratureSpec) -> Result<PressureResult> {
    config.evaluate(Quantity::Stress, quad)
}

/// Force per area in gap 1 or 2.
pub fn gap_force(config: &CavityConfig, gap: Gap, quad: &QuadratureSpec) -> Result<PressureResult> {
    if !(config.gap(gap) > 0.0) {
        return Err(CasimirError::Domain(format!(
            "gap {gap:?} has zero width; its force is undefined"
        )));
    }
    config.evaluate(Quantity::GapForce(gap), quad)
}

/// Net force per area F = F₂ − F₁ on the slab. Positive when the gap-2 term
/// dominates.
pub fn net_force_on_slab(config: &CavityConfig, quad: &QuadratureSpec) -> Result<PressureResult> {
    if !(config.d1 > 0.0 && config.d2 > 0.0) {
        return Err(CasimirError::Domain(
            "net force needs both gaps open (d1 > 0 and d2 > 0)".into(),
        ));
    }
    config.evaluate(Quantity::NetForce, quad)
}

#[cfg(test)]
mod tests;
