use super::*;
use crate::units::HBAR;

const GOLD_EV: f64 = 9.0;

fn gold() -> DielectricModel {
    DielectricModel::plasma(crate::units::ev_to_angular_frequency(GOLD_EV)).unwrap()
}

fn k_p() -> f64 {
    crate::units::ev_to_k_p(GOLD_EV).unwrap()
}

fn ideal(d: f64) -> f64 {
    PI * PI * HBAR * crate::units::C / (240.0 * d.powi(4))
}

fn quad() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn layer_integrand_examples() {
    let k = Kappa::new(3.0).unwrap();
    assert_eq!(layer_force_integrand(0.0, 0.8, k, 1.0).unwrap(), 0.0);
    let d = 2f64.ln() / 6.0; // e^{-2κd} = 1/2
    let v = layer_force_integrand(1.0, 1.0, k, d).unwrap();
    assert!((v - 3.0).abs() < 1e-14);
    assert!(layer_force_integrand(-0.5, 0.5, k, d).unwrap() < 0.0);
    assert!(matches!(
        layer_force_integrand(1.0, 1.0, k, 0.0),
        Err(CasimirError::Singularity { .. })
    ));
}

#[test]
fn vacuum_slab_without_mirrors_has_no_stress() {
    let cfg = CavityConfig::contact(DielectricModel::Vacuum, 1e-7, DielectricModel::Vacuum).unwrap();
    let r = stress_in_slab(&cfg, &quad()).unwrap();
    assert_eq!(r.value, 0.0);
    assert!(r.converged);
}

#[test]
fn vacuum_slab_between_perfect_mirrors_is_ideal_casimir() {
    let d = 0.3 / k_p();
    let cfg = CavityConfig::contact(DielectricModel::Vacuum, d, DielectricModel::PerfectMirror)
        .unwrap()
        .with_reference(ScaledUnits::from_k_p(k_p()).unwrap());
    let r = stress_in_slab(&cfg, &quad()).unwrap();
    assert!(r.converged);
    let ratio = r.si_value() / ideal(d);
    assert!((ratio - 1.0).abs() < 1e-5, "{ratio}");
}

#[test]
fn unit_layer_gives_pi_squared_over_240() {
    let cfg = CavityConfig::contact(DielectricModel::Vacuum, 1.0, DielectricModel::PerfectMirror).unwrap();
    let r = stress_in_slab(&cfg, &quad()).unwrap();
    assert!((r.value / (PI * PI / 240.0) - 1.0).abs() < 1e-6, "{}", r.value);
}

#[test]
fn free_standing_thin_slab_is_nonretarded() {
    let d = 0.01 / k_p();
    let cfg = CavityConfig::contact(gold(), d, DielectricModel::Vacuum).unwrap();
    let r = stress_in_slab(&cfg, &quad()).unwrap();
    let target = 0.19 * 0.01 * ideal(d);
    assert!(((r.si_value() - target) / target).abs() < 0.05);
}

#[test]
fn thick_slab_follows_exponential_asymptote() {
    let dd = 15.0;
    let cfg = CavityConfig::contact(gold(), dd / k_p(), DielectricModel::PerfectMirror).unwrap();
    let r = stress_in_slab(&cfg, &quad()).unwrap();
    let asym = (-2.0 * dd).exp() / (4.0 * (PI * dd).powf(1.5));
    // leading order; the first correction is 1 + 27/(16 k_P d_s)
    let corrected = asym * (1.0 + 27.0 / (16.0 * dd));
    assert!(((r.value - corrected) / corrected).abs() < 0.01, "{}", r.value / asym);
}

#[test]
fn transparent_slab_leaves_no_gap_force_without_far_mirror() {
    let cfg = CavityConfig::new(
        DielectricModel::PerfectMirror,
        0.2 / k_p(),
        DielectricModel::Vacuum,
        0.1 / k_p(),
        0.3 / k_p(),
        DielectricModel::Vacuum,
    )
    .unwrap();
    let r = gap_force(&cfg, Gap::First, &quad()).unwrap();
    assert_eq!(r.value, 0.0);
}

#[test]
fn transparent_slab_gap_force_is_ideal_cavity_of_full_width() {
    for ds in [0.5, 1e-3] {
        let cfg = CavityConfig::new(
            DielectricModel::PerfectMirror,
            0.4 / k_p(),
            DielectricModel::Vacuum,
            ds / k_p(),
            0.7 / k_p(),
            DielectricModel::PerfectMirror,
        )
        .unwrap();
        let r = gap_force(&cfg, Gap::First, &quad()).unwrap();
        let ratio = r.si_value() / ideal(cfg.cavity_width());
        assert!((ratio - 1.0).abs() < 1e-5, "{ds}: {ratio}");
    }
}

#[test]
fn symmetric_cavity_balances() {
    let mirror = DielectricModel::drude_default_damping(100.0 * gold().plasma_frequency().unwrap()).unwrap();
    let cfg = CavityConfig::at_position(gold(), 0.1 / k_p(), mirror, 0.5 / k_p(), 0.0).unwrap();
    let f1 = gap_force(&cfg, Gap::First, &quad()).unwrap();
    let f2 = gap_force(&cfg, Gap::Second, &quad()).unwrap();
    assert_eq!(f1.value, f2.value);
    let net = net_force_on_slab(&cfg, &quad()).unwrap();
    assert_eq!(net.value, 0.0);
}

#[test]
fn net_force_without_second_mirror_is_minus_first_gap_force() {
    let tight = QuadratureSpec::default().with_rel_tol(1e-11);
    let mirror = DielectricModel::drude_default_damping(30.0 * gold().plasma_frequency().unwrap()).unwrap();
    let cfg = CavityConfig::new(mirror, 0.3 / k_p(), gold(), 0.2 / k_p(), 0.5 / k_p(), DielectricModel::Vacuum).unwrap();
    let f1 = gap_force(&cfg, Gap::First, &tight).unwrap();
    let net = net_force_on_slab(&cfg, &tight).unwrap();
    assert!(((net.value + f1.value) / f1.value).abs() < 1e-8, "{} {}", net.value, f1.value);
}

#[test]
fn net_and_gap_integrands_agree_pointwise() {
    let mirror1 = DielectricModel::drude_default_damping(50.0 * gold().plasma_frequency().unwrap()).unwrap();
    let mirror2 = DielectricModel::PerfectMirror;
    let cfg = CavityConfig::new(mirror1, 0.05 / k_p(), gold(), 0.1 / k_p(), 0.13 / k_p(), mirror2).unwrap();
    for &(x, y) in &[(0.7, 3.0), (1e-5, 0.1), (4.0, 20.0), (0.2, 0.01)] {
        for pol in Polarization::BOTH {
            let f1 = cfg.integrand(Quantity::GapForce(Gap::First), x, y, pol).unwrap();
            let f2 = cfg.integrand(Quantity::GapForce(Gap::Second), x, y, pol).unwrap();
            let net = cfg.integrand(Quantity::NetForce, x, y, pol).unwrap();
            assert!(((f2 - f1) - net).abs() <= 1e-12 * net.abs().max(f1.abs()), "{x} {y} {pol:?}");
        }
    }
}

#[test]
fn geometry_errors() {
    let m = DielectricModel::PerfectMirror;
    assert!(CavityConfig::contact(gold(), 0.0, m).is_err());
    assert!(CavityConfig::contact(DielectricModel::PerfectMirror, 1e-8, m).is_err());
    assert!(CavityConfig::at_position(gold(), 1e-8, m, 3e-8, 1.5).is_err());
    assert!(CavityConfig::at_position(gold(), 1e-8, m, 0.5e-8, 0.0).is_err());
    let contact = CavityConfig::contact(gold(), 1e-8, m).unwrap();
    assert!(matches!(gap_force(&contact, Gap::First, &quad()), Err(CasimirError::Domain(_))));
    assert!(matches!(net_force_on_slab(&contact, &quad()), Err(CasimirError::Domain(_))));
}

#[test]
fn position_relation() {
    let cfg = CavityConfig::at_position(gold(), 1.0, DielectricModel::PerfectMirror, 3.0, 0.5).unwrap();
    assert!((cfg.d1 - 1.5).abs() < 1e-15);
    assert!((cfg.d2 - 0.5).abs() < 1e-15);
    assert!((cfg.cavity_width() - 3.0).abs() < 1e-15);
}

#[test]
fn stress_drops_with_mirror_reflectivity() {
    let w = gold().plasma_frequency().unwrap();
    let mut last = f64::INFINITY;
    for ratio in [1e5, 1e3, 10.0, 1.0] {
        let mirror = DielectricModel::drude_default_damping(ratio * w).unwrap();
        let cfg = CavityConfig::contact(gold(), 0.1 / k_p(), mirror).unwrap();
        let v = stress_in_slab(&cfg, &quad()).unwrap().value;
        assert!(v < last, "{ratio}: {v} !< {last}");
        last = v;
    }
}

#[test]
fn ideal_scaling_law_over_two_decades() {
    let mut values = vec![];
    for d in [1e-8, 1e-7, 1e-6] {
        let cfg = CavityConfig::contact(DielectricModel::Vacuum, d, DielectricModel::PerfectMirror)
            .unwrap()
            .with_reference(ScaledUnits::from_k_p(k_p()).unwrap());
        values.push(stress_in_slab(&cfg, &quad()).unwrap().si_value() * d.powi(4));
    }
    let target = PI * PI * HBAR * crate::units::C / 240.0;
    for v in values {
        assert!(((v - target) / target).abs() < 1e-5);
    }
}
