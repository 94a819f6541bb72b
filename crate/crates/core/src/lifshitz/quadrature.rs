//! Adaptive nested Gauss–Kronrod quadrature over the quarter plane.
//!
//! Each semi-infinite axis is mapped onto (0, 1) by x = s·u/(1 − u) with a
//! pivot s, and integrated with a globally adaptive G10/K21 rule. The K21
//! nodes are interior, so neither ξ = 0 nor infinity is ever sampled.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{CasimirError, Result};
use crate::optics::Polarization;

/// Kronrod abscissae on [-1, 1], non-negative half; odd indices are the
/// 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

/// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Intervals narrower than this in the unit variable are not split further.
const MIN_WIDTH: f64 = 1e-13;

/// Inner integrals are solved this much tighter than the outer one.
const INNER_TIGHTENING: f64 = 0.1;

/// Tolerances, budget and transform pivots for a double integral.
///
/// Pivots are expressed in the integrand's own coordinates; for the Lifshitz
/// integrals those are ξ/ω_P and k/k_P. `None` lets the caller choose.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: usize,
    pub xi_scale: Option<f64>,
    pub k_scale: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            abs_tol: 1e-12,
            max_evals: 2_000_000,
            xi_scale: None,
            k_scale: None,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(CasimirError::Config(format!(
                "rel_tol must lie in (0, 1e-2], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(CasimirError::Config(format!(
                "abs_tol must be non-negative, got {}",
                self.abs_tol
            )));
        }
        if self.max_evals < 1000 {
            return Err(CasimirError::Config(format!(
                "max_evals must be at least 1000, got {}",
                self.max_evals
            )));
        }
        for (name, s) in [("xi_scale", self.xi_scale), ("k_scale", self.k_scale)] {
            if let Some(s) = s {
                if !(s > 0.0 && s.is_finite()) {
                    return Err(CasimirError::Config(format!(
                        "{name} must be positive, got {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn tolerance(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_tol)
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    /// Σ|segment value| over the final partition; exceeds |value| when the
    /// integrand changes sign.
    pub magnitude: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Value returned by a node of a one-dimensional rule; for the outer axis
/// each node is itself an inner integral with its own error.
#[derive(Debug, Clone, Copy)]
struct Node {
    value: f64,
    error: f64,
    evals: usize,
    converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

struct RuleOutput {
    segment: Segment,
    evals: usize,
    converged: bool,
}

fn apply_rule<F>(f: &mut F, a: f64, b: f64) -> Result<RuleOutput>
where
    F: FnMut(f64) -> Result<Node>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    let mut propagated = 0.0;
    let mut evals = 0;
    let mut converged = true;

    let mut take = |node: Node, wk: f64| {
        evals += node.evals;
        converged &= node.converged;
        propagated += wk * node.error;
        node.value
    };

    let c = f(center)?;
    kronrod += WGK[10] * take(c, WGK[10]);
    for j in 0..10 {
        let dx = half * XGK[j];
        let lo = f(center - dx)?;
        let hi = f(center + dx)?;
        let (vl, vh) = (take(lo, WGK[j]), take(hi, WGK[j]));
        kronrod += WGK[j] * (vl + vh);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (vl + vh);
        }
    }

    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs() + propagated * half.abs();
    Ok(RuleOutput {
        segment: Segment {
            a,
            b,
            value,
            error,
        },
        evals,
        converged,
    })
}

/// Globally adaptive integration of `f` over (0, 1).
fn adaptive_unit<F>(mut f: F, rel_tol: f64, abs_tol: f64, budget: usize) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<Node>,
{
    let tolerance = |v: f64| (rel_tol * v.abs()).max(abs_tol);
    let first = apply_rule(&mut f, 0.0, 1.0)?;
    let mut evals = first.evals;
    let mut nodes_converged = first.converged;
    let mut value = first.segment.value;
    let mut error = first.segment.error;
    let mut heap = BinaryHeap::new();
    heap.push(first.segment);
    let mut exhausted = false;

    while error > tolerance(value) {
        if evals >= budget {
            exhausted = true;
            break;
        }
        let worst = match heap.peek() {
            Some(s) if s.b - s.a > MIN_WIDTH => heap.pop().unwrap(),
            _ => {
                exhausted = true;
                break;
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        let left = apply_rule(&mut f, worst.a, mid)?;
        let right = apply_rule(&mut f, mid, worst.b)?;
        evals += left.evals + right.evals;
        nodes_converged &= left.converged && right.converged;
        value += left.segment.value + right.segment.value - worst.value;
        error += left.segment.error + right.segment.error - worst.error;
        heap.push(left.segment);
        heap.push(right.segment);
    }

    // re-sum in a fixed order to drop accumulated drift
    let mut segments = heap.into_vec();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: f64 = segments.iter().map(|s| s.value).sum();
    let error: f64 = segments.iter().map(|s| s.error).sum();
    let magnitude: f64 = segments.iter().map(|s| s.value.abs()).sum();
    let converged = !exhausted && nodes_converged && error <= tolerance(value);
    Ok(Estimate {
        value,
        error,
        magnitude,
        evals,
        converged,
    })
}

/// Maps u ∈ (0, 1) to x = s·u/(1 − u); returns (x, dx/du).
fn semi_infinite(u: f64, pivot: f64) -> (f64, f64) {
    let w = 1.0 - u;
    (pivot * u / w, pivot / (w * w))
}

/// Share of the budget spent on the pilot pass that sizes inner tolerances.
const PILOT_BUDGET_FRACTION: usize = 10;

/// Nested integration in which every inner integral is solved to
/// `inner_rel`·|inner| or `inner_abs` (in outer-u units), whichever is looser.
fn nested<F>(
    integrand: &F,
    quad: &QuadratureSpec,
    outer_rel: f64,
    inner_rel: f64,
    inner_abs: f64,
    budget: usize,
) -> Result<Estimate>
where
    F: Fn(f64, f64, Polarization) -> Result<f64>,
{
    let x_pivot = quad.xi_scale.unwrap_or(1.0);
    let y_pivot = quad.k_scale.unwrap_or(1.0);
    let mut used = 0usize;

    let outer = |u: f64| -> Result<Node> {
        let (x, jx) = semi_infinite(u, x_pivot);
        let inner = |v: f64| -> Result<Node> {
            let (y, jy) = semi_infinite(v, y_pivot);
            let mut sum = 0.0;
            for pol in Polarization::BOTH {
                sum += integrand(x, y, pol).map_err(|e| e.at(x, y))?;
            }
            let value = sum * jy;
            if !value.is_finite() {
                return Err(CasimirError::singular("integrand").at(x, y));
            }
            Ok(Node {
                value,
                error: 0.0,
                evals: 1,
                converged: true,
            })
        };
        let remaining = budget.saturating_sub(used).max(21);
        let est = adaptive_unit(inner, inner_rel, inner_abs / jx, remaining)?;
        used += est.evals;
        Ok(Node {
            value: est.value * jx,
            error: est.error * jx,
            evals: est.evals,
            converged: est.converged,
        })
    };

    adaptive_unit(outer, outer_rel, quad.abs_tol, budget)
}

/// ∫₀^∞dx ∫₀^∞dy Σ_pol f(x, y, pol).
///
/// The polarization sum is formed at every node before any refinement
/// decision. A coarse pilot pass measures how strongly the inner values
/// cancel, |∫g| / ∫|g|, and the inner relative tolerance is tightened by that
/// ratio so the summed inner error stays below the outer target. A
/// non-finite integrand value aborts with a singularity error carrying the
/// node location.
pub fn integrate_2d<F>(integrand: F, quad: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64, f64, Polarization) -> Result<f64>,
{
    quad.validate()?;
    let pilot_rel = (100.0 * quad.rel_tol).min(1e-3);
    let inner_abs = quad.abs_tol * INNER_TIGHTENING;
    let pilot = nested(
        &integrand,
        quad,
        pilot_rel,
        pilot_rel * INNER_TIGHTENING,
        inner_abs,
        quad.max_evals / PILOT_BUDGET_FRACTION,
    )?;
    let cancellation = if pilot.magnitude > 0.0 {
        (pilot.value.abs() / pilot.magnitude).min(1.0)
    } else {
        1.0
    };
    let inner_rel = quad.rel_tol * INNER_TIGHTENING * cancellation;
    let mut est = nested(
        &integrand,
        quad,
        quad.rel_tol,
        inner_rel,
        inner_abs.max(inner_rel * pilot.value.abs()),
        quad.max_evals.saturating_sub(pilot.evals),
    )?;
    est.evals += pilot.evals;
    est.converged = est.converged && est.error <= quad.tolerance(est.value);
    Ok(est)
}

/// One-dimensional ∫₀^∞ f(x) dx with the same engine; used for inner-axis
/// checks and closed-form comparisons.
pub fn integrate_semi_infinite<F>(f: F, pivot: f64, quad: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64>,
{
    quad.validate()?;
    adaptive_unit(
        |u| {
            let (x, jx) = semi_infinite(u, pivot);
            let value = f(x)? * jx;
            if !value.is_finite() {
                return Err(CasimirError::singular("integrand").at(x, 0.0));
            }
            Ok(Node {
                value,
                error: 0.0,
                evals: 1,
                converged: true,
            })
        },
        quad.rel_tol,
        quad.abs_tol,
        quad.max_evals,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_nodes() -> Vec<(f64, f64)> {
        let mut v = vec![(0.0, WGK[10])];
        for j in 0..10 {
            v.push((XGK[j], WGK[j]));
            v.push((-XGK[j], WGK[j]));
        }
        v
    }

    #[test]
    fn kronrod_rule_is_exact_to_degree_31() {
        for n in 0..=31u32 {
            let exact = if n % 2 == 0 { 2.0 / (n as f64 + 1.0) } else { 0.0 };
            let k: f64 = full_nodes().iter().map(|(x, w)| w * x.powi(n as i32)).sum();
            assert!((k - exact).abs() < 1e-14, "degree {n}: {k} vs {exact}");
        }
    }

    #[test]
    fn gauss_rule_is_exact_to_degree_19() {
        for n in 0..=19u32 {
            let exact = if n % 2 == 0 { 2.0 / (n as f64 + 1.0) } else { 0.0 };
            let mut g = 0.0;
            for j in (1..10).step_by(2) {
                g += WG[j / 2] * (XGK[j].powi(n as i32) + (-XGK[j]).powi(n as i32));
            }
            assert!((g - exact).abs() < 1e-14, "degree {n}");
        }
    }

    #[test]
    fn zero_integrand() {
        let est = integrate_2d(|_, _, _| Ok(0.0), &QuadratureSpec::default()).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(est.converged);
    }

    #[test]
    fn separable_exponential() {
        // ∫e^{-x/a}dx = a, ∫ y e^{-y/b} dy = b², TM only
        let (a, b) = (0.7, 2.5);
        let f = |x: f64, y: f64, pol: Polarization| {
            Ok(match pol {
                Polarization::TM => (-x / a).exp() * (-y / b).exp() * y,
                Polarization::TE => 0.0,
            })
        };
        for tol in [1e-4, 1e-6, 1e-9] {
            let quad = QuadratureSpec::default().with_rel_tol(tol);
            let est = integrate_2d(f, &quad).unwrap();
            let exact = a * b * b;
            assert!(est.converged);
            assert!(((est.value - exact) / exact).abs() < tol, "{tol}: {}", est.value);
            assert!(est.error <= tol * exact.abs() * 1.0001);
        }
    }

    #[test]
    fn polarizations_are_summed() {
        let f = |x: f64, y: f64, pol: Polarization| {
            let s = if pol == Polarization::TM { 1.0 } else { -1.0 };
            Ok(s * (-x - y).exp() + (-2.0 * x - y).exp())
        };
        let est = integrate_2d(f, &QuadratureSpec::default()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn non_finite_integrand_reports_location() {
        let f = |x: f64, _y: f64, _p: Polarization| Ok(if x > 2.0 { f64::NAN } else { 1.0 / (1.0 + x).powi(4) });
        match integrate_2d(f, &QuadratureSpec::default()) {
            Err(CasimirError::Singularity { xi: Some(x), k: Some(_), .. }) => assert!(x > 2.0),
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let quad = QuadratureSpec {
            rel_tol: 1e-10,
            max_evals: 1000,
            ..Default::default()
        };
        let f = |x: f64, y: f64, _p: Polarization| Ok((x * 40.0).sin().powi(2) * (-x - y).exp());
        let est = integrate_2d(f, &quad).unwrap();
        assert!(!est.converged);
    }

    #[test]
    fn invalid_spec_is_rejected() {
        let bad = QuadratureSpec {
            rel_tol: 0.5,
            ..Default::default()
        };
        assert!(integrate_2d(|_, _, _| Ok(0.0), &bad).is_err());
        let bad = QuadratureSpec {
            max_evals: 10,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn algebraic_tail() {
        let quad = QuadratureSpec::default().with_rel_tol(1e-8);
        let est = integrate_semi_infinite(|x| Ok(1.0 / (1.0 + x * x)), 1.0, &quad).unwrap();
        assert!((est.value - std::f64::consts::FRAC_PI_2).abs() < 1e-8);
    }

    #[test]
    fn true_error_tracks_requested_tolerance() {
        let f = |x: f64, y: f64, _p: Polarization| Ok(y * (-(x * x + y * y + 1.0).sqrt() * 1.3).exp());
        let reference = integrate_2d(f, &QuadratureSpec::default().with_rel_tol(1e-12)).unwrap().value;
        for tol in [1e-3, 1e-4, 1e-5, 1e-6, 1e-8] {
            let est = integrate_2d(f, &QuadratureSpec::default().with_rel_tol(tol)).unwrap();
            assert!(est.converged);
            let err = ((est.value - reference) / reference).abs();
            assert!(err <= tol, "{tol}: {err}");
        }
    }

    #[test]
    fn cancelling_inner_values() {
        // ∫(1.01 − x)e^{−x}dx = 0.01 while ∫|·| ≈ 0.75
        let f = |x: f64, y: f64, pol: Polarization| {
            Ok(match pol {
                Polarization::TM => (1.01 - x) * (-x).exp() * (-y).exp(),
                Polarization::TE => 0.0,
            })
        };
        let quad = QuadratureSpec::default();
        let est = integrate_2d(f, &quad).unwrap();
        assert!(est.converged);
        assert!(((est.value - 0.01) / 0.01).abs() < 1e-6, "{}", est.value);
        assert!(est.magnitude > 50.0 * est.value.abs());
    }
}
