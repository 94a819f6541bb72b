//! Run orchestration and CSV output for the command-line tool.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::RunConfig;
use crate::error::{CasimirError, Result};
use crate::lifshitz::PressureResult;
use crate::scenarios::{self, SweepRow, SweepTable};
use crate::units::ScaledUnits;

pub const CSV_COLUMNS: [&str; 9] = [
    "F_s_dimensionless",
    "F_s_over_FC",
    "F_dimensionless",
    "F_s_SI",
    "F_SI",
    "err_Fs",
    "err_F",
    "evals",
    "converged",
];

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Failure = 1,
    Validation = 2,
    Unconverged = 3,
}

impl ExitStatus {
    pub fn for_error(e: &CasimirError) -> Self {
        match e {
            CasimirError::Config(_) | CasimirError::Domain(_) | CasimirError::Usage(_) => ExitStatus::Validation,
            CasimirError::Singularity { .. } | CasimirError::Io(_) => ExitStatus::Failure,
        }
    }
}

/// Shortest round-trip scientific notation.
fn sci(v: f64) -> String {
    format!("{v:e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(sci).unwrap_or_default()
}

fn row_fields(row: &SweepRow) -> Vec<String> {
    let stress = row.stress.as_ref().ok();
    let force: Option<&PressureResult> = row.force.as_ref().and_then(|f| f.as_ref().ok());
    let evals = stress.map_or(0, |r| r.evals) + force.map_or(0, |r| r.evals);
    vec![
        sci(row.abscissa),
        opt(stress.map(|r| r.value)),
        opt(row.stress_over_fc),
        opt(force.map(|r| r.value)),
        opt(stress.map(|r| r.si_value())),
        opt(force.map(|r| r.si_value())),
        opt(stress.map(|r| r.error_estimate)),
        opt(force.map(|r| r.error_estimate)),
        evals.to_string(),
        row.converged().to_string(),
    ]
}

/// Writes a sweep table; the first column is named after the abscissa.
pub fn write_csv<W: Write>(table: &SweepTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CasimirError::Io(e.to_string());
    let mut header = vec![table.abscissa_name];
    header.extend(CSV_COLUMNS);
    w.write_record(&header).map_err(io)?;
    for row in &table.rows {
        w.write_record(row_fields(row)).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// `out.csv` with label `a` becomes `out_a.csv`.
pub fn series_path(base: &Path, label: &str) -> PathBuf {
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{label}"),
    };
    base.with_file_name(name)
}

/// Per-series output destinations; `None` means standard output.
pub fn output_paths(config: &RunConfig, out: Option<&Path>) -> Result<Vec<Option<PathBuf>>> {
    let base = out.map(Path::to_path_buf).or_else(|| config.output.clone());
    if config.series.len() == 1 {
        return Ok(vec![base]);
    }
    let base = base.ok_or_else(|| {
        CasimirError::Config("several series need an output path to derive file names from".into())
    })?;
    Ok(config
        .series
        .iter()
        .map(|s| Some(series_path(&base, s.label.as_deref().unwrap_or("series"))))
        .collect())
}

/// Evaluates every series of a run.
pub fn execute(config: &RunConfig) -> Result<Vec<SweepTable>> {
    config
        .sweep_specs()
        .iter()
        .map(|(_, spec)| scenarios::run_sweep(spec))
        .collect()
}

/// Evaluates and writes a run. Returns the paths written and whether every
/// row converged.
pub fn run(config: &RunConfig, out: Option<&Path>) -> Result<(Vec<PathBuf>, bool)> {
    let paths = output_paths(config, out)?;
    let tables = execute(config)?;
    let mut written = Vec::new();
    let mut converged = true;
    for (table, path) in tables.iter().zip(paths) {
        for row in &table.rows {
            if let Err(e) = &row.stress {
                log::error!("{} = {:e}: {e}", table.abscissa_name, row.abscissa);
            }
            if let Some(Err(e)) = &row.force {
                log::error!("{} = {:e}: net force: {e}", table.abscissa_name, row.abscissa);
            }
        }
        converged &= table.all_converged();
        match path {
            Some(p) => {
                let file = std::fs::File::create(&p)
                    .map_err(|e| CasimirError::Io(format!("{}: {e}", p.display())))?;
                write_csv(table, std::io::BufWriter::new(file))?;
                written.push(p);
            }
            None => write_csv(table, std::io::stdout().lock())?,
        }
    }
    Ok((written, converged))
}

/// Closed-form limits on a thickness grid, each evaluated everywhere
/// regardless of its regime of validity.
pub fn write_asymptotes<W: Write>(units: &ScaledUnits, grid: &[f64], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CasimirError::Io(e.to_string());
    w.write_record(["k_P_ds", "F_C_SI", "F_s_nr_SI", "F_s_thick_SI"]).map_err(io)?;
    for &kd in grid {
        let d = units.to_metres(kd);
        w.write_record([
            sci(kd),
            sci(scenarios::casimir_ideal(d)?),
            sci(scenarios::freestanding_value(d, units.k_p())?),
            sci(scenarios::thick_value(d, units.k_p())?),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
