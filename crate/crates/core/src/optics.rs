//! Reflection and transmission coefficients at imaginary frequency.
//!
//! Everything here is real-valued: at ω = iξ the perpendicular wavevector
//! becomes the decay constant κ = √(ε ξ²/c² + k²) and every propagation
//! factor is a real exponential ≤ 1.

use serde::{Deserialize, Serialize};

use crate::error::{CasimirError, Result};
use crate::materials::{DielectricModel, Permittivity};
use crate::units::C;

/// Relative guard for the denominators 1 − r R e^{−2κd}.
pub const DENOMINATOR_GUARD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    TM,
    TE,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::TM, Polarization::TE];
}

/// Evaluation coordinate: imaginary frequency ξ (rad/s), transverse
/// wavevector k (rad/m), polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub xi: f64,
    pub k: f64,
    pub pol: Polarization,
}

impl SpectralPoint {
    pub fn new(xi: f64, k: f64, pol: Polarization) -> Result<Self> {
        if !(xi >= 0.0 && k >= 0.0) || !xi.is_finite() || !k.is_finite() {
            return Err(CasimirError::Domain(format!(
                "spectral point needs finite xi >= 0 and k >= 0, got ({xi}, {k})"
            )));
        }
        Ok(Self { xi, k, pol })
    }

    pub fn with_pol(self, pol: Polarization) -> Self {
        Self { pol, ..self }
    }
}

/// Perpendicular decay constant κ (rad/m).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Kappa(f64);

impl Kappa {
    pub fn new(value: f64) -> Result<Self> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(CasimirError::Domain(format!(
                "decay constant must be non-negative, got {value}"
            )));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// e^{−2κd}.
    pub fn round_trip(self, d: f64) -> f64 {
        (-2.0 * self.0 * d).exp()
    }
}

/// Reflection coefficients seen from inside a layer toward its left and
/// right bounding stacks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StackCoefficients {
    pub r_minus: f64,
    pub r_plus: f64,
}

/// κ = √(ε(iξ) ξ²/c² + k²), using the finite product ε ξ² so the plasma
/// limit at ξ = 0 is exact.
pub fn kappa(model: &DielectricModel, xi: f64, k: f64) -> Result<Kappa> {
    if model.is_perfect_mirror() {
        return Err(CasimirError::Usage(
            "perpendicular wavevector is undefined inside a perfect mirror".into(),
        ));
    }
    if !(k >= 0.0) {
        return Err(CasimirError::Domain(format!(
            "transverse wavevector must be non-negative, got {k}"
        )));
    }
    let exi2 = model.epsilon_times_xi_sq(xi)?;
    Ok(Kappa((exi2 / (C * C) + k * k).sqrt()))
}

/// Fresnel reflection coefficient for a wave in medium i incident on medium j.
///
/// TE: (κᵢ − κⱼ)/(κᵢ + κⱼ); TM: (εⱼκᵢ − εᵢκⱼ)/(εⱼκᵢ + εᵢκⱼ).
pub fn interface_r(
    medium_i: &DielectricModel,
    medium_j: &DielectricModel,
    point: SpectralPoint,
) -> Result<f64> {
    if medium_i.is_perfect_mirror() || medium_j.is_perfect_mirror() {
        return Err(CasimirError::Usage(
            "perfect mirror interfaces go through mirror_r".into(),
        ));
    }
    let ki = kappa(medium_i, point.xi, point.k)?.value();
    let kj = kappa(medium_j, point.xi, point.k)?.value();
    if ki + kj == 0.0 {
        return Err(CasimirError::Domain(
            "reflection coefficient undefined at xi = k = 0 between non-plasma media".into(),
        ));
    }
    match point.pol {
        Polarization::TE => Ok((ki - kj) / (ki + kj)),
        Polarization::TM => {
            let ei = medium_i.epsilon(point.xi)?;
            let ej = medium_j.epsilon(point.xi)?;
            Ok(match (ei, ej) {
                (Permittivity::Finite(ei), Permittivity::Finite(ej)) => {
                    (ej * ki - ei * kj) / (ej * ki + ei * kj)
                }
                (Permittivity::Finite(_), Permittivity::Divergent { .. }) => 1.0,
                (Permittivity::Divergent { .. }, Permittivity::Finite(_)) => -1.0,
                (
                    Permittivity::Divergent { residue: ri },
                    Permittivity::Divergent { residue: rj },
                ) => (rj * ki - ri * kj) / (rj * ki + ri * kj),
            })
        }
    }
}

/// Reflection coefficient of a mirror half-space seen from vacuum.
pub fn mirror_r(mirror: &DielectricModel, point: SpectralPoint) -> Result<f64> {
    match mirror {
        DielectricModel::PerfectMirror => Ok(match point.pol {
            Polarization::TM => 1.0,
            Polarization::TE => -1.0,
        }),
        DielectricModel::Vacuum => Ok(0.0),
        m => interface_r(&DielectricModel::Vacuum, m, point),
    }
}

/// Whole-slab reflection and transmission coefficients for a slab of
/// thickness `d_s` in vacuum.
pub fn slab_rt(slab: &DielectricModel, d_s: f64, point: SpectralPoint) -> Result<(f64, f64)> {
    if !(d_s > 0.0) {
        return Err(CasimirError::Domain(format!(
            "slab thickness must be positive, got {d_s}"
        )));
    }
    let rho = interface_r(&DielectricModel::Vacuum, slab, point)?;
    let ks = kappa(slab, point.xi, point.k)?.value();
    // 1 − ρ² e, written to keep precision when ρ² → 1
    let denom = (1.0 - rho * rho) - rho * rho * (-2.0 * ks * d_s).exp_m1();
    if denom.abs() <= DENOMINATOR_GUARD {
        return Err(CasimirError::singular("slab coefficients").at(point.xi, point.k));
    }
    let one_minus_e = -(-2.0 * ks * d_s).exp_m1();
    let r = rho * one_minus_e / denom;
    let t = (1.0 - rho * rho) * (-ks * d_s).exp() / denom;
    Ok((r, t))
}

fn guarded(denom: f64, scale: f64, context: &'static str) -> Result<f64> {
    if denom.abs() <= DENOMINATOR_GUARD * scale.abs().max(1.0) || !denom.is_finite() {
        Err(CasimirError::singular(context))
    } else {
        Ok(denom)
    }
}

/// Reflection coefficient of slab + vacuum gap + far mirror, seen from the
/// near side of the slab: r + t² R e^{−2κd} / (1 − r R e^{−2κd}).
pub fn recurrence_r(r: f64, t: f64, r_far: f64, kappa_gap: Kappa, d_gap: f64) -> Result<f64> {
    if !(d_gap >= 0.0) {
        return Err(CasimirError::Domain(format!(
            "gap width must be non-negative, got {d_gap}"
        )));
    }
    let x = r_far * kappa_gap.round_trip(d_gap);
    let denom = guarded(1.0 - r * x, r * x, "stack recurrence")?;
    Ok(r + t * t * x / denom)
}

/// Effective reflection coefficient seen from inside the slab toward one
/// mirror across a vacuum gap: (−ρ + R e^{−2κd}) / (1 − ρ R e^{−2κd}).
pub fn in_slab_r(rho: f64, r_mirror: f64, kappa_gap: Kappa, d_gap: f64) -> Result<f64> {
    if !(d_gap >= 0.0) {
        return Err(CasimirError::Domain(format!(
            "gap width must be non-negative, got {d_gap}"
        )));
    }
    let x = r_mirror * kappa_gap.round_trip(d_gap);
    let denom = guarded(1.0 - rho * x, rho * x, "in-slab reflection")?;
    Ok((-rho + x) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::C;
    use proptest::prelude::*;

    const W: f64 = 1.3e16;
    const KP: f64 = W / C;

    fn pt(xi: f64, k: f64, pol: Polarization) -> SpectralPoint {
        SpectralPoint::new(xi, k, pol).unwrap()
    }

    #[test]
    fn kappa_examples() {
        let k0 = 3.0e7;
        let vac = DielectricModel::Vacuum;
        assert_eq!(kappa(&vac, 0.0, k0).unwrap().value(), k0);
        let v = kappa(&vac, C * k0, k0).unwrap().value();
        assert!((v / k0 - 2f64.sqrt()).abs() < 1e-15);
        let p = DielectricModel::plasma(W).unwrap();
        let v = kappa(&p, 0.0, 0.0).unwrap().value();
        assert!((v / KP - 1.0).abs() < 1e-15);
        assert!(kappa(&DielectricModel::PerfectMirror, 1.0, 1.0).is_err());
    }

    #[test]
    fn interface_examples() {
        let vac = DielectricModel::Vacuum;
        let two = DielectricModel::constant(2.0).unwrap();
        for pol in Polarization::BOTH {
            assert_eq!(interface_r(&two, &two, pt(W, KP, pol)).unwrap(), 0.0);
        }
        // k = 0, TM: κ_j = √2 κ_i, r = (2 − √2)/(2 + √2)
        let r = interface_r(&vac, &two, pt(W, 0.0, Polarization::TM)).unwrap();
        let expected = (2.0 - 2f64.sqrt()) / (2.0 + 2f64.sqrt());
        assert!((r - expected).abs() < 1e-15);
        assert!((expected - 0.171573).abs() < 1e-6);

        let plasma = DielectricModel::plasma(W).unwrap();
        assert_eq!(
            interface_r(&vac, &plasma, pt(0.0, KP, Polarization::TM)).unwrap(),
            1.0
        );
        let near = interface_r(&vac, &plasma, pt(1e-6 * W, KP, Polarization::TM)).unwrap();
        assert!((near - 1.0).abs() < 1e-9);
        assert!(interface_r(&vac, &DielectricModel::PerfectMirror, pt(W, KP, Polarization::TE)).is_err());
        assert!(interface_r(&vac, &vac, pt(0.0, 0.0, Polarization::TE)).is_err());
    }

    #[test]
    fn mirror_examples() {
        let pm = DielectricModel::PerfectMirror;
        assert_eq!(mirror_r(&pm, pt(W, KP, Polarization::TM)).unwrap(), 1.0);
        assert_eq!(mirror_r(&pm, pt(W, KP, Polarization::TE)).unwrap(), -1.0);
        assert_eq!(mirror_r(&DielectricModel::Vacuum, pt(0.0, 0.0, Polarization::TE)).unwrap(), 0.0);

        // Drude(Ω, 1e-3 Ω) at ξ = Ω, k = 0, TE: ε = 1 + 1/(1 + 1e-6), κ_m = √ε ξ/c
        let big = 1e3 * W;
        let drude = DielectricModel::drude_default_damping(big).unwrap();
        let eps: f64 = 1.0 + 1.0 / (1.0 + 1e-6);
        let expected = (1.0 - eps.sqrt()) / (1.0 + eps.sqrt());
        let r = mirror_r(&drude, pt(big, 0.0, Polarization::TE)).unwrap();
        assert!((r - expected).abs() < 1e-14);
    }

    #[test]
    fn slab_limits() {
        let plasma = DielectricModel::plasma(W).unwrap();
        let p = pt(0.3 * W, 2.0 * KP, Polarization::TM);
        let rho = interface_r(&DielectricModel::Vacuum, &plasma, p).unwrap();
        let (r, t) = slab_rt(&plasma, 200.0 / KP, p).unwrap();
        assert!((r - rho).abs() < 1e-14);
        assert!(t.abs() < 1e-100);
        let (r, t) = slab_rt(&plasma, 1e-12 / KP, p).unwrap();
        assert!(r.abs() < 1e-10);
        assert!((t - 1.0).abs() < 1e-10);

        let vac = DielectricModel::Vacuum;
        let d = 0.7 / KP;
        for pol in Polarization::BOTH {
            let p = p.with_pol(pol);
            let (r, t) = slab_rt(&vac, d, p).unwrap();
            let k = kappa(&vac, p.xi, p.k).unwrap().value();
            assert_eq!(r, 0.0);
            assert!((t - (-k * d).exp()).abs() < 1e-15);
        }
        assert!(matches!(slab_rt(&plasma, 0.0, p), Err(CasimirError::Domain(_))));
    }

    #[test]
    fn recurrence_examples() {
        let kap = Kappa(2.0);
        assert_eq!(recurrence_r(0.4, 0.8, 0.0, kap, 1.0).unwrap(), 0.4);
        let v = recurrence_r(0.0, 1.0, 0.6, kap, 0.3).unwrap();
        assert!((v - 0.6 * (-1.2f64).exp()).abs() < 1e-15);
        assert_eq!(recurrence_r(0.4, 0.0, 0.9, kap, 0.3).unwrap(), 0.4);
        assert!(matches!(
            recurrence_r(1.0, 0.0, 1.0, kap, 0.0),
            Err(CasimirError::Singularity { .. })
        ));
    }

    #[test]
    fn in_slab_examples() {
        let kap = Kappa(2.0);
        assert_eq!(in_slab_r(0.0, 0.7, kap, 0.0).unwrap(), 0.7);
        assert_eq!(in_slab_r(0.3, 0.0, kap, 1.0).unwrap(), -0.3);
        assert_eq!(in_slab_r(0.5, 0.5, kap, 0.0).unwrap(), 0.0);
        // touching perfect mirror: ±1 regardless of ρ
        assert!((in_slab_r(0.37, 1.0, kap, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((in_slab_r(-0.37, -1.0, kap, 0.0).unwrap() + 1.0).abs() < 1e-15);
    }

    fn slab_strategy() -> impl Strategy<Value = DielectricModel> {
        prop_oneof![
            (1.0f64..30.0).prop_map(|eps| DielectricModel::Constant { eps }),
            (0.1f64..10.0).prop_map(|w| DielectricModel::Plasma { omega_p: w * W }),
            (0.1f64..1e3, 0.0f64..0.3).prop_map(|(w, g)| DielectricModel::Drude {
                omega_p: w * W,
                gamma: g * w * W
            }),
        ]
    }

    proptest! {
        #[test]
        fn coefficients_are_bounded(
            slab in slab_strategy(),
            mirror in slab_strategy(),
            x in 0.0f64..20.0,
            y in 1e-3f64..50.0,
            ds in 1e-3f64..20.0,
            d in 0.0f64..20.0,
            te in any::<bool>(),
        ) {
            let pol = if te { Polarization::TE } else { Polarization::TM };
            let p = pt(x * W, y * KP, pol);
            let vac = DielectricModel::Vacuum;
            let rho = interface_r(&vac, &slab, p).unwrap();
            let (r, t) = slab_rt(&slab, ds / KP, p).unwrap();
            let big_r = mirror_r(&mirror, p).unwrap();
            let k0 = kappa(&vac, p.xi, p.k).unwrap();
            let composed = recurrence_r(r, t, big_r, k0, d / KP).unwrap();
            let inside = in_slab_r(rho, big_r, k0, d / KP).unwrap();
            for v in [rho, r, t, big_r, composed, inside] {
                prop_assert!(v.is_finite());
                prop_assert!(v.abs() <= 1.0 + 1e-12, "coefficient {} out of range", v);
            }
            prop_assert!(t >= 0.0);
        }

        #[test]
        fn in_slab_is_a_composition_of_minus_rho_with_the_mirror(
            rho in -0.999f64..0.999, big_r in -1.0f64..1.0, kd in 0.0f64..5.0,
        ) {
            // Interface reflection −ρ from the slab side, +ρ from the vacuum
            // side, transmission product 1 − ρ², composed with R across the gap.
            let kap = Kappa(1.0);
            let lhs = in_slab_r(rho, big_r, kap, kd).unwrap();
            let x = big_r * (-2.0 * kd).exp();
            let rhs = -rho + (1.0 - rho * rho) * x / (1.0 - rho * x);
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn te_and_tm_split_at_large_k_unless_media_match(
            eps in 1.5f64..20.0, x in 0.01f64..5.0,
        ) {
            let vac = DielectricModel::Vacuum;
            let slab = DielectricModel::Constant { eps };
            let p = pt(x * W, 1e6 * KP, Polarization::TM);
            let tm = interface_r(&vac, &slab, p).unwrap();
            let te = interface_r(&vac, &slab, p.with_pol(Polarization::TE)).unwrap();
            // TM tends to (ε−1)/(ε+1), TE to 0
            prop_assert!((tm - (eps - 1.0) / (eps + 1.0)).abs() < 1e-6);
            prop_assert!(te.abs() < 1e-6);
            let same = interface_r(&slab, &slab, p).unwrap();
            let same_te = interface_r(&slab, &slab, p.with_pol(Polarization::TE)).unwrap();
            prop_assert_eq!(same, same_te);
        }
    }
}
