//! JSON run files.
//!
//! ```json
//! {
//!   "schema": "casimir-slab/1",
//!   "scenario": "stress",
//!   "slab": "gold",
//!   "mirrors": "perfect",
//!   "k_P_ds": 0.1,
//!   "contact": true
//! }
//! ```
//!
//! Lengths are dimensionless, in units of 1/k_P of the slab. Materials are
//! either a name (`"gold"`, `"perfect"`, `"vacuum"`) or an object with a
//! `"model"` key; mirror frequencies may be given in eV or relative to the
//! slab plasma frequency. A `"series"` array repeats the run with some keys
//! overridden, one output table per entry.

use serde_json::{Map, Value};
use std::path::PathBuf;

use crate::error::{CasimirError, Result};
use crate::lifshitz::QuadratureSpec;
use crate::materials::{DielectricModel, RegularPart, DEFAULT_DAMPING_RATIO};
use crate::scenarios::{self, CavityTemplate, Geometry, SweepKind, SweepSpec};
use crate::units::PhysicalConstants;

pub const SCHEMA: &str = "casimir-slab/1";

const TOP_KEYS: &[&str] = &[
    "schema", "scenario", "slab", "mirrors", "mirror1", "mirror2", "k_P_ds", "contact", "L_over_ds",
    "z", "k_P_d1", "k_P_d2", "sweep", "series", "quadrature", "output",
];
const SERIES_KEYS: &[&str] = &[
    "label", "slab", "mirrors", "mirror1", "mirror2", "k_P_ds", "contact", "L_over_ds", "z", "k_P_d1",
    "k_P_d2",
];
const GEOMETRY_KEYS: &[&str] = &["contact", "L_over_ds", "z", "k_P_d1", "k_P_d2"];
const SWEEP_KEYS: &[&str] = &["kind", "grid", "gamma_ratio"];
const QUADRATURE_KEYS: &[&str] = &["rel_tol", "abs_tol", "max_evals", "xi_scale", "k_scale"];
const OUTPUT_KEYS: &[&str] = &["path"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Stress,
    Force,
    Sweep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSection {
    pub kind: SweepKind,
    pub grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: Option<String>,
    pub template: CavityTemplate,
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub series: Vec<Series>,
    pub sweep: Option<SweepSection>,
    pub quadrature: QuadratureSpec,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// One sweep per series; single-point scenarios become one-point
    /// thickness sweeps.
    pub fn sweep_specs(&self) -> Vec<(Option<String>, SweepSpec)> {
        self.series
            .iter()
            .map(|s| {
                let (kind, grid) = match &self.sweep {
                    Some(sw) => (sw.kind, sw.grid.clone()),
                    None => (SweepKind::Thickness, vec![s.template.k_p_ds]),
                };
                let spec = SweepSpec {
                    kind,
                    grid,
                    template: s.template,
                    quad: self.quadrature,
                };
                (s.label.clone(), spec)
            })
            .collect()
    }
}

fn config_err(msg: impl Into<String>) -> CasimirError {
    CasimirError::Config(msg.into())
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn collect_unknown(map: &Map<String, Value>, allowed: &[&str], prefix: &str, out: &mut Vec<String>) {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            out.push(join(prefix, key));
        }
    }
}

fn material_keys(model: &str) -> Option<&'static [&'static str]> {
    Some(match model {
        "vacuum" | "perfect" | "perfect_mirror" => &["model"],
        "constant" => &["model", "eps"],
        "plasma" => &["model", "omega_p_ev", "omega_p_ratio"],
        "drude" => &["model", "omega_p_ev", "omega_p_ratio", "gamma_ev", "gamma_ratio"],
        "plasma_shifted" => &["model", "omega_p_ev", "omega_p_ratio", "eps_background"],
        _ => return None,
    })
}

fn scan_material(value: Option<&Value>, prefix: &str, out: &mut Vec<String>) {
    if let Some(Value::Object(map)) = value {
        if let Some(keys) = map.get("model").and_then(Value::as_str).and_then(material_keys) {
            collect_unknown(map, keys, prefix, out);
        }
    }
}

fn scan_template(map: &Map<String, Value>, prefix: &str, out: &mut Vec<String>) {
    for key in ["slab", "mirrors", "mirror1", "mirror2"] {
        scan_material(map.get(key), &join(prefix, key), out);
    }
}

/// Every key path not recognised anywhere in the document.
fn unknown_keys(root: &Map<String, Value>) -> Vec<String> {
    let mut out = Vec::new();
    collect_unknown(root, TOP_KEYS, "", &mut out);
    scan_template(root, "", &mut out);
    for (key, allowed) in [("sweep", SWEEP_KEYS), ("quadrature", QUADRATURE_KEYS), ("output", OUTPUT_KEYS)] {
        if let Some(Value::Object(map)) = root.get(key) {
            collect_unknown(map, allowed, key, &mut out);
        }
    }
    if let Some(Value::Array(items)) = root.get("series") {
        for (i, item) in items.iter().enumerate() {
            if let Value::Object(map) = item {
                let prefix = format!("series[{i}]");
                collect_unknown(map, SERIES_KEYS, &prefix, &mut out);
                scan_template(map, &prefix, &mut out);
            }
        }
    }
    out
}

fn number(map: &Map<String, Value>, key: &str, path: &str) -> Result<Option<f64>> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_f64()
            .map(Some)
            .ok_or_else(|| config_err(format!("{} must be a number", join(path, key)))),
    }
}

fn ev(value: f64) -> f64 {
    value * PhysicalConstants::EV_TO_ANGULAR_FREQUENCY
}

/// Frequency from `<stem>_ev` or `<stem>_ratio` (times `base`).
fn frequency(map: &Map<String, Value>, stem: &str, base: Option<f64>, path: &str) -> Result<Option<f64>> {
    let abs = number(map, &format!("{stem}_ev"), path)?;
    let rel = number(map, &format!("{stem}_ratio"), path)?;
    match (abs, rel) {
        (Some(_), Some(_)) => Err(config_err(format!(
            "{path}: give only one of {stem}_ev and {stem}_ratio"
        ))),
        (Some(e), None) => Ok(Some(ev(e))),
        (None, Some(r)) => match base {
            Some(b) => Ok(Some(r * b)),
            None => Err(config_err(format!(
                "{path}: {stem}_ratio needs a reference frequency"
            ))),
        },
        (None, None) => Ok(None),
    }
}

/// `reference` is the slab plasma frequency when parsing mirrors.
fn parse_material(value: &Value, reference: Option<f64>, path: &str) -> Result<DielectricModel> {
    let parsed = match value {
        Value::String(name) => match name.as_str() {
            "gold" => scenarios::gold(),
            "perfect" | "perfect_mirror" => DielectricModel::PerfectMirror,
            "vacuum" => DielectricModel::Vacuum,
            other => return Err(config_err(format!("{path}: unknown material \"{other}\""))),
        },
        Value::Object(map) => {
            let model = map
                .get("model")
                .and_then(Value::as_str)
                .ok_or_else(|| config_err(format!("{path}.model must be a string")))?;
            let omega = || {
                frequency(map, "omega_p", reference, path)?
                    .ok_or_else(|| config_err(format!("{path}: missing omega_p_ev or omega_p_ratio")))
            };
            match model {
                "vacuum" => DielectricModel::Vacuum,
                "perfect" | "perfect_mirror" => DielectricModel::PerfectMirror,
                "constant" => DielectricModel::constant(
                    number(map, "eps", path)?.ok_or_else(|| config_err(format!("{path}: missing eps")))?,
                )?,
                "plasma" => DielectricModel::plasma(omega()?)?,
                "drude" => {
                    let w = omega()?;
                    let gamma = frequency(map, "gamma", Some(w), path)?.unwrap_or(DEFAULT_DAMPING_RATIO * w);
                    DielectricModel::drude(w, gamma)?
                }
                "plasma_shifted" => {
                    let eps = number(map, "eps_background", path)?
                        .ok_or_else(|| config_err(format!("{path}: missing eps_background")))?;
                    DielectricModel::plasma_shifted(RegularPart::Constant { eps }, omega()?)?
                }
                other => return Err(config_err(format!("{path}: unknown model \"{other}\""))),
            }
        }
        _ => return Err(config_err(format!("{path} must be a string or an object"))),
    };
    parsed
        .validate()
        .map_err(|e| config_err(format!("{path}: {e}")))?;
    Ok(parsed)
}

fn parse_geometry(map: &Map<String, Value>, path: &str, position_sweep: bool, k_p_ds: f64) -> Result<Geometry> {
    let at = |key: &str| join(path, key);
    let contact = match map.get("contact") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(config_err(format!("{} must be a boolean", at("contact")))),
    };
    let l = number(map, "L_over_ds", path)?;
    let z = number(map, "z", path)?;
    let d1 = number(map, "k_P_d1", path)?;
    let d2 = number(map, "k_P_d2", path)?;
    let gaps = d1.is_some() || d2.is_some();

    if let Some(l) = l {
        if !(l > 1.0) {
            return Err(config_err(format!(
                "{}: cavity width L must exceed d_s (L/d_s = {l})",
                at("L_over_ds")
            )));
        }
    }
    if let Some(z) = z {
        if !(z > -1.0 && z < 1.0) {
            return Err(config_err(format!("{}: z = {z} must lie in (-1, 1)", at("z"))));
        }
    }

    if position_sweep {
        if contact || z.is_some() || gaps {
            return Err(config_err(
                "a position sweep takes only L_over_ds; z comes from the grid",
            ));
        }
        let l_over_ds = l.ok_or_else(|| config_err("a position sweep needs L_over_ds"))?;
        return Ok(Geometry::Position { l_over_ds, z: 0.0 });
    }

    let given = [contact, z.is_some(), gaps].iter().filter(|&&b| b).count();
    if given != 1 {
        return Err(config_err(format!(
            "{}exactly one of contact, z, or (k_P_d1, k_P_d2) must be given",
            if path.is_empty() { String::new() } else { format!("{path}: ") }
        )));
    }
    if contact {
        if l.is_some() {
            return Err(config_err("contact geometry does not take L_over_ds"));
        }
        return Ok(Geometry::Contact);
    }
    if let Some(z) = z {
        let l_over_ds = l.ok_or_else(|| config_err("z needs L_over_ds"))?;
        return Ok(Geometry::Position { l_over_ds, z });
    }
    let (d1, d2) = match (d1, d2) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(config_err("k_P_d1 and k_P_d2 must be given together")),
    };
    if !(d1 >= 0.0 && d2 >= 0.0) {
        return Err(config_err(format!("gaps must be non-negative, got {d1} and {d2}")));
    }
    if let Some(l) = l {
        let implied = 1.0 + (d1 + d2) / k_p_ds;
        if (implied - l).abs() > 1e-9 * l {
            return Err(config_err(format!(
                "L = d1 + d_s + d2 violated: L/d_s = {l} but the gaps imply {implied}"
            )));
        }
    }
    Ok(Geometry::Gaps {
        k_p_d1: d1,
        k_p_d2: d2,
    })
}

/// Top-level keys with series overrides applied. Geometry keys in a series
/// entry replace the whole geometry group.
fn merged(root: &Map<String, Value>, entry: Option<&Map<String, Value>>) -> Map<String, Value> {
    let mut out: Map<String, Value> = root
        .iter()
        .filter(|(k, _)| SERIES_KEYS.contains(&k.as_str()))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if let Some(entry) = entry {
        if entry.keys().any(|k| GEOMETRY_KEYS.contains(&k.as_str())) {
            for k in GEOMETRY_KEYS {
                out.remove(*k);
            }
        }
        if entry.contains_key("mirrors") {
            out.remove("mirror1");
            out.remove("mirror2");
        }
        if entry.contains_key("mirror1") || entry.contains_key("mirror2") {
            out.remove("mirrors");
        }
        for (k, v) in entry {
            out.insert(k.clone(), v.clone());
        }
    }
    out
}

fn parse_series(map: &Map<String, Value>, path: &str, position_sweep: bool) -> Result<Series> {
    let label = match map.get("label") {
        None => None,
        Some(Value::String(s)) if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.') => {
            Some(s.clone())
        }
        Some(_) => {
            return Err(config_err(format!(
                "{}: label must be a non-empty string of letters, digits, '_', '-' or '.'",
                join(path, "label")
            )))
        }
    };
    let slab = match map.get("slab") {
        Some(v) => parse_material(v, None, &join(path, "slab"))?,
        None => scenarios::gold(),
    };
    let reference = slab.plasma_frequency();
    if reference.is_none() {
        return Err(config_err(format!(
            "{}: the slab needs a plasma frequency to set the length scale",
            join(path, "slab")
        )));
    }
    let (mirror1, mirror2) = match (map.get("mirrors"), map.get("mirror1"), map.get("mirror2")) {
        (Some(m), None, None) => {
            let m = parse_material(m, reference, &join(path, "mirrors"))?;
            (m, m)
        }
        (None, Some(a), Some(b)) => (
            parse_material(a, reference, &join(path, "mirror1"))?,
            parse_material(b, reference, &join(path, "mirror2"))?,
        ),
        (None, None, None) => (DielectricModel::PerfectMirror, DielectricModel::PerfectMirror),
        _ => {
            return Err(config_err(
                "give either mirrors, or both mirror1 and mirror2",
            ))
        }
    };
    let k_p_ds = number(map, "k_P_ds", path)?
        .ok_or_else(|| config_err(format!("{}: missing k_P_ds", if path.is_empty() { "config" } else { path })))?;
    if !(k_p_ds > 0.0 && k_p_ds.is_finite()) {
        return Err(config_err(format!("k_P_ds must be positive, got {k_p_ds}")));
    }
    let geometry = parse_geometry(map, path, position_sweep, k_p_ds)?;
    Ok(Series {
        label,
        template: CavityTemplate {
            slab,
            mirror1,
            mirror2,
            k_p_ds,
            geometry,
        },
    })
}

fn parse_sweep(value: &Value) -> Result<SweepSection> {
    let map = value
        .as_object()
        .ok_or_else(|| config_err("sweep must be an object"))?;
    let kind_name = map
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| config_err("sweep.kind must be one of thickness, position, contrast"))?;
    let gamma_ratio = number(map, "gamma_ratio", "sweep")?;
    let (kind, default_grid) = match kind_name {
        "thickness" => (SweepKind::Thickness, scenarios::default_thickness_grid()),
        "position" => (SweepKind::Position, scenarios::default_position_grid()),
        "contrast" => (
            SweepKind::Contrast {
                gamma_ratio: gamma_ratio.unwrap_or(DEFAULT_DAMPING_RATIO),
            },
            scenarios::default_contrast_grid(),
        ),
        other => return Err(config_err(format!("unknown sweep kind \"{other}\""))),
    };
    if gamma_ratio.is_some() && !matches!(kind, SweepKind::Contrast { .. }) {
        return Err(config_err("sweep.gamma_ratio applies only to contrast sweeps"));
    }
    let grid = match map.get("grid") {
        None => default_grid,
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| v.as_f64().ok_or_else(|| config_err("sweep.grid must hold numbers")))
            .collect::<Result<Vec<f64>>>()?,
        Some(_) => return Err(config_err("sweep.grid must be an array")),
    };
    Ok(SweepSection { kind, grid })
}

/// Parses and validates a run file.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let doc: Value = serde_json::from_str(text).map_err(|e| config_err(format!("malformed JSON: {e}")))?;
    let root = doc
        .as_object()
        .ok_or_else(|| config_err("the document must be a JSON object"))?;
    let unknown = unknown_keys(root);
    if !unknown.is_empty() {
        return Err(config_err(format!("unknown keys: {}", unknown.join(", "))));
    }
    match root.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => {}
        Some(other) => return Err(config_err(format!("unsupported schema \"{other}\", expected \"{SCHEMA}\""))),
        None => return Err(config_err(format!("missing \"schema\": \"{SCHEMA}\""))),
    }
    let scenario = match root.get("scenario").and_then(Value::as_str) {
        Some("stress") => Scenario::Stress,
        Some("force") => Scenario::Force,
        Some("sweep") => Scenario::Sweep,
        _ => return Err(config_err("scenario must be one of stress, force, sweep")),
    };
    let sweep = match (scenario, root.get("sweep")) {
        (Scenario::Sweep, Some(v)) => Some(parse_sweep(v)?),
        (Scenario::Sweep, None) => return Err(config_err("scenario sweep needs a sweep section")),
        (_, Some(_)) => return Err(config_err("a sweep section needs scenario sweep")),
        (_, None) => None,
    };
    let position_sweep = matches!(sweep, Some(SweepSection { kind: SweepKind::Position, .. }));

    let series = match root.get("series") {
        None => vec![parse_series(&merged(root, None), "", position_sweep)?],
        Some(Value::Array(items)) if !items.is_empty() => items
            .iter()
            .enumerate()
            .map(|(i, item)| {
                let path = format!("series[{i}]");
                let entry = item
                    .as_object()
                    .ok_or_else(|| config_err(format!("{path} must be an object")))?;
                parse_series(&merged(root, Some(entry)), &path, position_sweep)
            })
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(config_err("series must be a non-empty array")),
    };
    if series.len() > 1 {
        let mut labels: Vec<&str> = Vec::new();
        for s in &series {
            let label = s
                .label
                .as_deref()
                .ok_or_else(|| config_err("every series entry needs a label"))?;
            if labels.contains(&label) {
                return Err(config_err(format!("duplicate series label \"{label}\"")));
            }
            labels.push(label);
        }
    }
    if scenario == Scenario::Force {
        for s in &series {
            let open = match s.template.geometry {
                Geometry::Contact => false,
                Geometry::Position { .. } => true,
                Geometry::Gaps { k_p_d1, k_p_d2 } => k_p_d1 > 0.0 && k_p_d2 > 0.0,
            };
            if !open {
                return Err(config_err("scenario force needs both gaps open"));
            }
        }
    }

    let quadrature: QuadratureSpec = match root.get("quadrature") {
        None => QuadratureSpec::default(),
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| config_err(format!("quadrature: {e}")))?,
    };
    quadrature.validate()?;

    let output = match root.get("output") {
        None => None,
        Some(Value::Object(map)) => match map.get("path") {
            None => None,
            Some(Value::String(p)) => Some(PathBuf::from(p)),
            Some(_) => return Err(config_err("output.path must be a string")),
        },
        Some(_) => return Err(config_err("output must be an object")),
    };

    let config = RunConfig {
        scenario,
        series,
        sweep,
        quadrature,
        output,
    };
    for (_, spec) in config.sweep_specs() {
        spec.validate()?;
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(extra: &str) -> String {
        format!(r#"{{"schema": "casimir-slab/1", "scenario": "stress", "slab": "gold", "mirrors": "perfect", "k_P_ds": 0.1{extra}}}"#)
    }

    fn err(text: &str) -> String {
        parse_config(text).unwrap_err().to_string()
    }

    #[test]
    fn minimal_config() {
        let cfg = parse_config(&doc(r#", "contact": true"#)).unwrap();
        assert_eq!(cfg.scenario, Scenario::Stress);
        assert_eq!(cfg.series.len(), 1);
        let t = cfg.series[0].template;
        assert_eq!(t.geometry, Geometry::Contact);
        assert_eq!(t.mirror1, DielectricModel::PerfectMirror);
        assert_eq!(t.slab.plasma_frequency(), Some(scenarios::gold_plasma_frequency()));
        assert_eq!(cfg.quadrature, QuadratureSpec::default());
    }

    #[test]
    fn z_outside_cavity() {
        assert!(err(&doc(r#", "L_over_ds": 3, "z": 1.5"#)).contains("z = 1.5"));
    }

    #[test]
    fn cavity_narrower_than_slab() {
        assert!(err(&doc(r#", "L_over_ds": 0.5, "z": 0.0"#)).contains("must exceed d_s"));
    }

    #[test]
    fn unknown_keys_are_all_listed() {
        let text = doc(r#", "contact": true, "colour": 1, "quadrature": {"rel_tol": 1e-6, "tol": 2}, "mirror1x": 0"#);
        let msg = err(&text);
        for key in ["colour", "quadrature.tol", "mirror1x"] {
            assert!(msg.contains(key), "{msg}");
        }
    }

    #[test]
    fn unknown_material_key() {
        let text = doc(r#", "contact": true"#).replace(r#""mirrors": "perfect""#, r#""mirrors": {"model": "drude", "omega_p_ratio": 10, "gama_ratio": 1}"#);
        assert!(err(&text).contains("mirrors.gama_ratio"));
    }

    #[test]
    fn exactly_one_geometry() {
        assert!(err(&doc("")).contains("exactly one"));
        assert!(err(&doc(r#", "contact": true, "L_over_ds": 3, "z": 0.1"#)).contains("exactly one"));
    }

    #[test]
    fn gap_and_width_consistency() {
        let ok = doc(r#", "k_P_d1": 0.05, "k_P_d2": 0.15, "L_over_ds": 3"#);
        assert!(parse_config(&ok).is_ok());
        let bad = doc(r#", "k_P_d1": 0.05, "k_P_d2": 0.15, "L_over_ds": 4"#);
        assert!(err(&bad).contains("L = d1 + d_s + d2"));
    }

    #[test]
    fn schema_is_required() {
        let text = doc(r#", "contact": true"#).replace(r#""schema": "casimir-slab/1", "#, "");
        assert!(err(&text).contains("schema"));
        let text = doc(r#", "contact": true"#).replace("casimir-slab/1", "casimir-slab/9");
        assert!(err(&text).contains("unsupported schema"));
    }

    #[test]
    fn mirror_relative_to_slab() {
        let text = doc(r#", "contact": true"#).replace(r#""mirrors": "perfect""#, r#""mirrors": {"model": "drude", "omega_p_ratio": 1000}"#);
        let cfg = parse_config(&text).unwrap();
        let w = 1000.0 * scenarios::gold_plasma_frequency();
        assert_eq!(cfg.series[0].template.mirror1, DielectricModel::drude(w, 1e-3 * w).unwrap());
    }

    #[test]
    fn series_and_sweep() {
        let text = r#"{
            "schema": "casimir-slab/1", "scenario": "sweep", "slab": "gold", "k_P_ds": 0.1,
            "mirrors": {"model": "drude", "omega_p_ratio": 1000},
            "L_over_ds": 2,
            "sweep": {"kind": "position", "grid": [-0.5, 0.0, 0.5]},
            "series": [{"label": "L2"}, {"label": "L3", "L_over_ds": 3}],
            "output": {"path": "out.csv"}
        }"#;
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.series.len(), 2);
        assert_eq!(cfg.series[1].template.geometry, Geometry::Position { l_over_ds: 3.0, z: 0.0 });
        let specs = cfg.sweep_specs();
        assert_eq!(specs[0].1.grid, vec![-0.5, 0.0, 0.5]);
        assert_eq!(specs[1].0.as_deref(), Some("L3"));
    }

    #[test]
    fn series_need_distinct_labels() {
        let text = doc(r#", "contact": true, "series": [{"label": "a"}, {"label": "a"}]"#);
        assert!(err(&text).contains("duplicate"));
    }

    #[test]
    fn force_needs_open_gaps() {
        let text = doc(r#", "contact": true"#).replace(r#""stress""#, r#""force""#);
        assert!(err(&text).contains("gaps open"));
    }

    #[test]
    fn default_grid_when_omitted() {
        let text = doc(r#", "contact": true, "sweep": {"kind": "contrast"}"#).replace(r#""stress""#, r#""sweep""#);
        let cfg = parse_config(&text).unwrap();
        let sweep = cfg.sweep.unwrap();
        assert_eq!(sweep.grid, scenarios::default_contrast_grid());
        assert_eq!(sweep.kind, SweepKind::Contrast { gamma_ratio: 1e-3 });
    }

    #[test]
    fn quadrature_is_validated() {
        assert!(err(&doc(r#", "contact": true, "quadrature": {"rel_tol": 0.5}"#)).contains("rel_tol"));
    }
}
