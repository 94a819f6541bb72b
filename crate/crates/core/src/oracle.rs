//! Brute-force reference implementations for cross-checking.
//!
//! Nothing here reuses the production formula code: the grid integrator is a
//! plain composite trapezoid, and the stack reflection coefficient comes from
//! multiplying characteristic (ψ, Yψ′) matrices built from layer admittances
//! rather than from Fresnel coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CasimirError, Result};
use crate::lifshitz::{self, CavityConfig, Gap, QuadratureSpec, Quantity};
use crate::materials::{DielectricModel, Permittivity};
use crate::optics::{self, Polarization, SpectralPoint};
use crate::units::{ScaledUnits, C};

/// Dense-grid trapezoid settings. Pivots are in integrand coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOracleSpec {
    pub nodes_per_axis: usize,
    pub xi_scale: f64,
    pub k_scale: f64,
}

impl Default for GridOracleSpec {
    fn default() -> Self {
        Self {
            nodes_per_axis: 2000,
            xi_scale: 1.0,
            k_scale: 1.0,
        }
    }
}

/// Composite trapezoid of Σ_pol f(x, y, pol) over the unit square after
/// x = s u/(1 − u). The u = 1 edge maps to infinity and contributes zero.
pub fn brute_force_integral<F>(integrand: F, spec: &GridOracleSpec) -> Result<f64>
where
    F: Fn(f64, f64, Polarization) -> Result<f64> + Sync,
{
    let n = spec.nodes_per_axis;
    if n < 100 {
        return Err(CasimirError::Domain(format!(
            "oracle grid needs at least 100 nodes per axis, got {n}"
        )));
    }
    let h = 1.0 / (n - 1) as f64;
    let axis = |pivot: f64| -> Vec<(f64, f64)> {
        (0..n - 1)
            .map(|i| {
                let u = i as f64 * h;
                let x = pivot * u / (1.0 - u);
                let jac = pivot / ((1.0 - u) * (1.0 - u));
                let w = if i == 0 { 0.5 * h } else { h };
                (x, w * jac)
            })
            .collect()
    };
    let xs = axis(spec.xi_scale);
    let ys = axis(spec.k_scale);
    let rows: Vec<f64> = xs
        .par_iter()
        .map(|&(x, wx)| -> Result<f64> {
            let mut row = 0.0;
            for &(y, wy) in &ys {
                let mut v = 0.0;
                for pol in [Polarization::TM, Polarization::TE] {
                    v += integrand(x, y, pol)?;
                }
                row += wy * v;
            }
            Ok(wx * row)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(rows.iter().sum())
}

/// A homogeneous layer of a planar stack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub model: DielectricModel,
    pub thickness: f64,
}

/// Semi-infinite incident medium, finite layers, semi-infinite substrate.
#[derive(Debug, Clone, PartialEq)]
pub struct Stack {
    pub incident: DielectricModel,
    pub layers: Vec<Layer>,
    pub substrate: DielectricModel,
}

/// Decay constant and admittance (TE: κ, TM: κ/ε) of a medium.
fn admittance(model: &DielectricModel, point: SpectralPoint) -> Result<(f64, f64)> {
    let eps_xi2 = model.epsilon_times_xi_sq(point.xi)?;
    let kz = (eps_xi2 / (C * C) + point.k * point.k).sqrt();
    let y = match point.pol {
        Polarization::TE => kz,
        Polarization::TM => match model.epsilon(point.xi)? {
            Permittivity::Finite(eps) => kz / eps,
            Permittivity::Divergent { .. } => 0.0,
        },
    };
    Ok((kz, y))
}

type Mat = [[f64; 2]; 2];

fn mul(a: &Mat, b: &Mat) -> Mat {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Reflection coefficient of the stack for a wave incident from the
/// incident medium.
///
/// With ψ = a + b and φ = Y(a − b) continuous across every interface, a
/// layer maps (ψ, φ) by [[cosh κd, −sinh κd / Y], [−Y sinh κd, cosh κd]]
/// (scaled here by e^{−κd}); the substrate carries only the decaying wave.
pub fn transfer_matrix_r(stack: &Stack, point: SpectralPoint) -> Result<f64> {
    if stack.incident.is_perfect_mirror() {
        return Err(CasimirError::Usage("incident medium cannot be a perfect mirror".into()));
    }
    let (_, y0) = admittance(&stack.incident, point)?;
    let mut m: Mat = [[1.0, 0.0], [0.0, 1.0]];
    for layer in &stack.layers {
        if layer.model.is_perfect_mirror() {
            return Err(CasimirError::Usage("finite layers cannot be perfect mirrors".into()));
        }
        let (kz, y) = admittance(&layer.model, point)?;
        if y == 0.0 {
            return Err(CasimirError::Domain(
                "layer admittance vanishes; use a point with xi > 0".into(),
            ));
        }
        let e = (-2.0 * kz * layer.thickness).exp();
        let ch = 0.5 * (1.0 + e);
        let sh = 0.5 * (1.0 - e);
        let step = [[ch, -sh / y], [-y * sh, ch]];
        m = mul(&step, &m);
    }
    let r = match (stack.substrate, point.pol) {
        (DielectricModel::PerfectMirror, Polarization::TE) => {
            (m[0][0] + y0 * m[0][1]) / (y0 * m[0][1] - m[0][0])
        }
        (DielectricModel::PerfectMirror, Polarization::TM) => {
            (-m[1][0] - y0 * m[1][1]) / (m[1][0] - y0 * m[1][1])
        }
        (substrate, _) => {
            let (_, yn) = admittance(&substrate, point)?;
            let num = yn * m[0][0] + yn * y0 * m[0][1] - m[1][0] - y0 * m[1][1];
            let den = m[1][0] - y0 * m[1][1] - yn * m[0][0] + yn * y0 * m[0][1];
            num / den
        }
    };
    Ok(r)
}

/// One line of a cross-check report.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub name: String,
    pub samples: usize,
    pub max_deviation: f64,
    pub threshold: f64,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.threshold
    }
}

/// Sizes of the verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub coefficient_points: usize,
    pub integral_configs: usize,
    pub grid: usize,
    pub quad: QuadratureSpec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            coefficient_points: 1000,
            integral_configs: 20,
            grid: 2000,
            quad: QuadratureSpec::default(),
        }
    }
}

const GOLD_OMEGA_P: f64 = 9.0 * crate::units::PhysicalConstants::EV_TO_ANGULAR_FREQUENCY;

/// Random slab or mirror model around the gold plasma frequency.
pub fn random_model(rng: &mut impl Rng, allow_perfect: bool) -> DielectricModel {
    let w = GOLD_OMEGA_P;
    match rng.gen_range(0..if allow_perfect { 4 } else { 3 }) {
        0 => DielectricModel::Plasma {
            omega_p: w * rng.gen_range(0.3..3.0),
        },
        1 => {
            let omega_p = w * rng.gen_range(0.5..100.0);
            DielectricModel::Drude {
                omega_p,
                gamma: omega_p * rng.gen_range(0.01..0.3),
            }
        }
        2 => DielectricModel::Constant {
            eps: rng.gen_range(1.2..12.0),
        },
        _ => DielectricModel::PerfectMirror,
    }
}

/// Random cavity with both gaps open; lengths in units of 1/k_P of gold.
pub fn random_cavity(rng: &mut impl Rng) -> CavityConfig {
    let k_p = GOLD_OMEGA_P / C;
    let slab = match rng.gen_range(0..2) {
        0 => DielectricModel::Plasma {
            omega_p: GOLD_OMEGA_P * rng.gen_range(0.5..2.0),
        },
        _ => {
            let omega_p = GOLD_OMEGA_P * rng.gen_range(0.5..2.0);
            DielectricModel::Drude {
                omega_p,
                gamma: omega_p * rng.gen_range(0.01..0.3),
            }
        }
    };
    let d_s = rng.gen_range(0.05..2.0) / k_p;
    let d1 = rng.gen_range(0.05..2.0) / k_p;
    let d2 = rng.gen_range(0.05..2.0) / k_p;
    let mirror1 = random_model(rng, true);
    let mirror2 = random_model(rng, true);
    CavityConfig::new(mirror1, d1, slab, d_s, d2, mirror2)
        .expect("random cavity parameters are valid")
        .with_reference(ScaledUnits::from_k_p(k_p).expect("positive k_P"))
}

fn random_point(rng: &mut impl Rng) -> SpectralPoint {
    let k_p = GOLD_OMEGA_P / C;
    let xi = GOLD_OMEGA_P * 10f64.powf(rng.gen_range(-3.0..1.5));
    let k = k_p * 10f64.powf(rng.gen_range(-3.0..1.5));
    let pol = if rng.gen_bool(0.5) {
        Polarization::TM
    } else {
        Polarization::TE
    };
    SpectralPoint { xi, k, pol }
}

fn abs_deviation(value: f64, reference: f64) -> f64 {
    (value - reference).abs()
}

fn deviation(value: f64, reference: f64) -> f64 {
    let scale = reference.abs().max(value.abs());
    if scale == 0.0 {
        0.0
    } else {
        (value - reference).abs() / scale
    }
}

/// Production coefficients against the transfer-matrix composer. All
/// coefficients are bounded by one, so the deviation is absolute.
pub fn coefficient_checks(points: usize, seed: u64) -> Result<Vec<CrossCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k_p = GOLD_OMEGA_P / C;
    let vacuum = DielectricModel::Vacuum;
    let mut interface = 0.0f64;
    let mut slab = 0.0f64;
    let mut recurrence = 0.0f64;
    let mut inside = 0.0f64;
    for _ in 0..points {
        let point = random_point(&mut rng);
        let slab_model = random_model(&mut rng, false);
        let mirror = random_model(&mut rng, true);
        let d_s = rng.gen_range(0.01..5.0) / k_p;
        let d = rng.gen_range(0.0..5.0) / k_p;

        let single = Stack {
            incident: vacuum,
            layers: vec![],
            substrate: slab_model,
        };
        interface = interface.max(abs_deviation(
            optics::interface_r(&vacuum, &slab_model, point)?,
            transfer_matrix_r(&single, point)?,
        ));

        let (r, t) = optics::slab_rt(&slab_model, d_s, point)?;
        let in_vacuum = Stack {
            incident: vacuum,
            layers: vec![Layer {
                model: slab_model,
                thickness: d_s,
            }],
            substrate: vacuum,
        };
        slab = slab.max(abs_deviation(r, transfer_matrix_r(&in_vacuum, point)?));

        let k0 = optics::kappa(&vacuum, point.xi, point.k)?;
        let big_r = optics::mirror_r(&mirror, point)?;
        let composed = Stack {
            incident: vacuum,
            layers: vec![
                Layer {
                    model: slab_model,
                    thickness: d_s,
                },
                Layer {
                    model: vacuum,
                    thickness: d,
                },
            ],
            substrate: mirror,
        };
        recurrence = recurrence.max(abs_deviation(
            optics::recurrence_r(r, t, big_r, k0, d)?,
            transfer_matrix_r(&composed, point)?,
        ));

        let rho = optics::interface_r(&vacuum, &slab_model, point)?;
        let from_slab = Stack {
            incident: slab_model,
            layers: vec![Layer {
                model: vacuum,
                thickness: d,
            }],
            substrate: mirror,
        };
        inside = inside.max(abs_deviation(
            optics::in_slab_r(rho, big_r, k0, d)?,
            transfer_matrix_r(&from_slab, point)?,
        ));
    }
    let line = |name: &str, dev: f64| CrossCheck {
        name: name.to_string(),
        samples: points,
        max_deviation: dev,
        threshold: 1e-10,
    };
    Ok(vec![
        line("interface_r vs transfer matrix", interface),
        line("slab_rt vs transfer matrix", slab),
        line("recurrence_r vs transfer matrix", recurrence),
        line("in_slab_r vs transfer matrix", inside),
    ])
}

/// Adaptive engine against the dense trapezoid, and the closed net-force
/// expression against the difference of the two gap forces.
pub fn integral_checks(options: &VerifyOptions) -> Result<Vec<CrossCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x9e37_79b9);
    let configs: Vec<CavityConfig> = (0..options.integral_configs)
        .map(|_| random_cavity(&mut rng))
        .collect();

    let mut grid_dev = 0.0f64;
    for cfg in &configs {
        for quantity in [Quantity::Stress, Quantity::NetForce] {
            let (adaptive, spec) = match quantity {
                Quantity::Stress => (lifshitz::stress_in_slab(cfg, &options.quad)?, cfg.d_s),
                _ => (lifshitz::net_force_on_slab(cfg, &options.quad)?, cfg.d1.min(cfg.d2)),
            };
            let pivot = (0.5 / cfg.reference().to_dimensionless_length(spec)).max(1.0);
            let grid = GridOracleSpec {
                nodes_per_axis: options.grid,
                xi_scale: pivot,
                k_scale: pivot,
            };
            let brute = brute_force_integral(|x, y, pol| cfg.integrand(quantity, x, y, pol), &grid)?;
            grid_dev = grid_dev.max(deviation(adaptive.value, brute));
        }
    }

    let tight = options.quad.with_rel_tol(1e-11);
    let mut route_dev = 0.0f64;
    for cfg in &configs {
        let net = lifshitz::net_force_on_slab(cfg, &tight)?;
        let f1 = lifshitz::gap_force(cfg, Gap::First, &tight)?;
        let f2 = lifshitz::gap_force(cfg, Gap::Second, &tight)?;
        route_dev = route_dev.max(deviation(net.value, f2.value - f1.value));
    }

    Ok(vec![
        CrossCheck {
            name: "adaptive quadrature vs dense trapezoid".into(),
            samples: 2 * configs.len(),
            max_deviation: grid_dev,
            threshold: 1e-3,
        },
        CrossCheck {
            name: "closed net force vs gap-force difference".into(),
            samples: configs.len(),
            max_deviation: route_dev,
            threshold: 1e-8,
        },
    ])
}

/// Full cross-check run used by `--verify`.
pub fn run_cross_checks(options: &VerifyOptions) -> Result<Vec<CrossCheck>> {
    let mut checks = coefficient_checks(options.coefficient_points, options.seed)?;
    checks.extend(integral_checks(options)?);
    Ok(checks)
}
