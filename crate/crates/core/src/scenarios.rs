//! Closed-form limits and parameter sweeps over cavity configurations.

use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{CasimirError, Result};
use crate::lifshitz::{self, CavityConfig, PressureResult, QuadratureSpec};
use crate::materials::{DielectricModel, DEFAULT_DAMPING_RATIO};
use crate::units::{PhysicalConstants, ScaledUnits, C, HBAR};

/// Plasma energy of gold, eV.
pub const GOLD_PLASMA_ENERGY_EV: f64 = 9.0;

/// Free-standing thin-slab coefficient: F_s ≈ 0.19 k_P d_s F_C.
pub const FREESTANDING_COEFFICIENT: f64 = 0.19;

pub fn gold_plasma_frequency() -> f64 {
    GOLD_PLASMA_ENERGY_EV * PhysicalConstants::EV_TO_ANGULAR_FREQUENCY
}

/// Plasma-model gold.
pub fn gold() -> DielectricModel {
    DielectricModel::Plasma {
        omega_p: gold_plasma_frequency(),
    }
}

/// Casimir pressure between perfect mirrors a distance `d` apart, N/m².
pub fn casimir_ideal(d: f64) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(CasimirError::Domain(format!(
            "plate separation must be positive, got {d}"
        )));
    }
    Ok(PI * PI * HBAR * C / (240.0 * d.powi(4)))
}

/// Thin free-standing slab, 0.19 k_P d_s F_C(d_s).
pub fn freestanding_nonretarded(d_s: f64, k_p: f64) -> Result<f64> {
    let kd = k_p * d_s;
    if kd > 0.2 {
        log::warn!("freestanding_nonretarded used at k_P d_s = {kd}, outside the thin-slab regime");
    }
    freestanding_value(d_s, k_p)
}

pub(crate) fn freestanding_value(d_s: f64, k_p: f64) -> Result<f64> {
    Ok(FREESTANDING_COEFFICIENT * k_p * d_s * casimir_ideal(d_s)?)
}

/// Thick slab between any mirrors:
/// ħ c k_P⁴ e^{−2 k_P d_s} / (4 (π k_P d_s)^{3/2}).
pub fn thick_slab_asymptote(d_s: f64, k_p: f64) -> Result<f64> {
    let kd = k_p * d_s;
    if kd < 5.0 {
        log::warn!("thick_slab_asymptote used at k_P d_s = {kd}, outside the thick-slab regime");
    }
    thick_value(d_s, k_p)
}

pub(crate) fn thick_value(d_s: f64, k_p: f64) -> Result<f64> {
    let kd = k_p * d_s;
    if !(kd > 0.0 && kd.is_finite()) {
        return Err(CasimirError::Domain(format!(
            "k_P d_s must be positive, got {kd}"
        )));
    }
    Ok(HBAR * C * k_p.powi(4) * (-2.0 * kd).exp() / (4.0 * (PI * kd).powf(1.5)))
}

/// Placement of the slab inside the cavity, in units of the slab thickness
/// or of 1/k_P.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    /// Mirrors touching the slab.
    Contact,
    /// Cavity of width `l_over_ds`·d_s, slab at position z.
    Position { l_over_ds: f64, z: f64 },
    /// Explicit gaps k_P d₁ and k_P d₂.
    Gaps { k_p_d1: f64, k_p_d2: f64 },
}

/// Everything needed to build a cavity except the swept parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityTemplate {
    pub slab: DielectricModel,
    pub mirror1: DielectricModel,
    pub mirror2: DielectricModel,
    pub k_p_ds: f64,
    pub geometry: Geometry,
}

impl CavityTemplate {
    /// Gold slab between perfect mirrors in contact.
    pub fn gold_contact(k_p_ds: f64) -> Self {
        Self {
            slab: gold(),
            mirror1: DielectricModel::PerfectMirror,
            mirror2: DielectricModel::PerfectMirror,
            k_p_ds,
            geometry: Geometry::Contact,
        }
    }

    /// Scale set by the slab plasma frequency.
    pub fn units(&self) -> Result<ScaledUnits> {
        match self.slab.plasma_frequency() {
            Some(w) => ScaledUnits::from_plasma_frequency(w),
            None => Err(CasimirError::Config(
                "dimensionless geometry needs a slab with a plasma frequency".into(),
            )),
        }
    }

    pub fn build(&self) -> Result<CavityConfig> {
        let units = self.units()?;
        let d_s = units.to_metres(self.k_p_ds);
        match self.geometry {
            Geometry::Contact => CavityConfig::new(self.mirror1, 0.0, self.slab, d_s, 0.0, self.mirror2),
            Geometry::Position { l_over_ds, z } => {
                if !(z > -1.0 && z < 1.0) {
                    return Err(CasimirError::Domain(format!(
                        "position z must lie in (-1, 1), got {z}"
                    )));
                }
                if !(l_over_ds > 1.0) {
                    return Err(CasimirError::Domain(format!(
                        "cavity width L/d_s = {l_over_ds} must exceed 1"
                    )));
                }
                let half = 0.5 * (l_over_ds - 1.0) * d_s;
                CavityConfig::new(
                    self.mirror1,
                    half * (1.0 + z),
                    self.slab,
                    d_s,
                    half * (1.0 - z),
                    self.mirror2,
                )
            }
            Geometry::Gaps { k_p_d1, k_p_d2 } => CavityConfig::new(
                self.mirror1,
                units.to_metres(k_p_d1),
                self.slab,
                d_s,
                units.to_metres(k_p_d2),
                self.mirror2,
            ),
        }
    }
}

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepKind {
    /// k_P d_s; the geometry of the template scales with d_s when given
    /// relative to it.
    Thickness,
    /// Slab position z at the template's L/d_s.
    Position,
    /// Mirror plasma frequency Ω_P/ω_P of Drude mirrors with Γ = ratio·Ω_P.
    /// A grid value of zero stands for no mirror at all.
    Contrast { gamma_ratio: f64 },
}

impl SweepKind {
    pub fn abscissa_name(&self) -> &'static str {
        match self {
            SweepKind::Thickness => "k_P_ds",
            SweepKind::Position => "z",
            SweepKind::Contrast { .. } => "Omega_P_over_omega_P",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub grid: Vec<f64>,
    pub template: CavityTemplate,
    pub quad: QuadratureSpec,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(CasimirError::Config("sweep grid is empty".into()));
        }
        if self.grid.iter().any(|v| !v.is_finite()) {
            return Err(CasimirError::Config("sweep grid contains a non-finite value".into()));
        }
        if self.grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(CasimirError::Config("sweep grid must be strictly increasing".into()));
        }
        match self.kind {
            SweepKind::Thickness => {
                if self.grid[0] <= 0.0 {
                    return Err(CasimirError::Config("thickness grid must be positive".into()));
                }
            }
            SweepKind::Position => {
                if !matches!(self.template.geometry, Geometry::Position { .. }) {
                    return Err(CasimirError::Config(
                        "a position sweep needs a cavity width L/d_s".into(),
                    ));
                }
                if self.grid.iter().any(|&z| !(z > -1.0 && z < 1.0)) {
                    return Err(CasimirError::Config("position grid must lie in (-1, 1)".into()));
                }
            }
            SweepKind::Contrast { gamma_ratio } => {
                if self.grid[0] < 0.0 {
                    return Err(CasimirError::Config("contrast grid must be non-negative".into()));
                }
                if !(gamma_ratio >= 0.0 && gamma_ratio.is_finite()) {
                    return Err(CasimirError::Config(format!(
                        "mirror damping ratio must be non-negative, got {gamma_ratio}"
                    )));
                }
            }
        }
        self.template.units()?;
        self.quad.validate()
    }

    /// Template with the swept parameter set to `value`.
    pub fn point(&self, value: f64) -> Result<CavityTemplate> {
        let mut t = self.template;
        match self.kind {
            SweepKind::Thickness => t.k_p_ds = value,
            SweepKind::Position => {
                if let Geometry::Position { l_over_ds, .. } = t.geometry {
                    t.geometry = Geometry::Position { l_over_ds, z: value };
                }
            }
            SweepKind::Contrast { gamma_ratio } => {
                let mirror = if value == 0.0 {
                    DielectricModel::Vacuum
                } else {
                    let omega = value * t.units()?.omega_p();
                    DielectricModel::drude(omega, gamma_ratio * omega)?
                };
                t.mirror1 = mirror;
                t.mirror2 = mirror;
            }
        }
        Ok(t)
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub abscissa: f64,
    /// Slab thickness, m.
    pub d_s: f64,
    pub stress: Result<PressureResult>,
    /// Stress over F_C(d_s).
    pub stress_over_fc: Option<f64>,
    /// Net force; absent when either gap is closed.
    pub force: Option<Result<PressureResult>>,
}

impl SweepRow {
    pub fn converged(&self) -> bool {
        let stress_ok = matches!(&self.stress, Ok(r) if r.converged);
        let force_ok = match &self.force {
            None => true,
            Some(Ok(r)) => r.converged,
            Some(Err(_)) => false,
        };
        stress_ok && force_ok
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub abscissa_name: &'static str,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(SweepRow::converged)
    }
}

/// Stress and, with open gaps, net force for one template.
pub fn evaluate_point(template: &CavityTemplate, abscissa: f64, quad: &QuadratureSpec) -> SweepRow {
    let cfg = template.build();
    let d_s = cfg.as_ref().map(|c| c.d_s).unwrap_or(f64::NAN);
    let stress = cfg.clone().and_then(|c| lifshitz::stress_in_slab(&c, quad));
    let stress_over_fc = match (&stress, casimir_ideal(d_s)) {
        (Ok(r), Ok(fc)) => Some(r.si_value() / fc),
        _ => None,
    };
    let force = match &cfg {
        Ok(c) if c.d1 > 0.0 && c.d2 > 0.0 => Some(lifshitz::net_force_on_slab(c, quad)),
        Ok(_) => None,
        Err(e) => Some(Err(e.clone())),
    };
    SweepRow {
        abscissa,
        d_s,
        stress,
        stress_over_fc,
        force,
    }
}

/// Evaluates every grid point in parallel; rows keep grid order and
/// failures are recorded per row.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let rows = spec
        .grid
        .par_iter()
        .map(|&v| match spec.point(v) {
            Ok(t) => evaluate_point(&t, v, &spec.quad),
            Err(e) => SweepRow {
                abscissa: v,
                d_s: f64::NAN,
                stress: Err(e.clone()),
                stress_over_fc: None,
                force: Some(Err(e)),
            },
        })
        .collect();
    Ok(SweepTable {
        abscissa_name: spec.kind.abscissa_name(),
        rows,
    })
}

/// k_P d_s log-spaced over [10⁻², 20], 40 points.
pub fn default_thickness_grid() -> Vec<f64> {
    let (lo, hi, n) = (1e-2f64.ln(), 20f64.ln(), 40);
    (0..n)
        .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Ω_P/ω_P ∈ {1, 10, 10³, 10⁵}.
pub fn default_contrast_grid() -> Vec<f64> {
    vec![1.0, 10.0, 1e3, 1e5]
}

/// z from −0.95 to 0.95 in steps of 0.05.
pub fn default_position_grid() -> Vec<f64> {
    (-19..=19).map(|i| i as f64 / 20.0).collect()
}

/// Drude mirror of plasma frequency `ratio`·ω_P(gold), Γ = 10⁻³Ω_P.
pub fn gold_contrast_mirror(ratio: f64) -> Result<DielectricModel> {
    let omega = ratio * gold_plasma_frequency();
    DielectricModel::drude(omega, DEFAULT_DAMPING_RATIO * omega)
}
