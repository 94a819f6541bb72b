use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use casimir_slab::cli::{self, ExitStatus};
use casimir_slab::config::{self, SCHEMA};
use casimir_slab::oracle::{self, VerifyOptions};
use casimir_slab::scenarios;
use casimir_slab::{CasimirError, QuadratureSpec, Result, ScaledUnits};

#[derive(Parser)]
#[command(name = "casimir-slab", version, about = "Casimir stress in and force on a slab in a planar cavity")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Output CSV path (standard output when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Relative tolerance of the quadrature, overriding the run file.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "CASIMIR_THREADS")]
    threads: Option<usize>,

    /// Run the oracle cross-checks after the command (or alone).
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON run file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Stress inside the slab.
    Stress(PointArgs),
    /// Net force on the slab.
    Force(PointArgs),
    /// Parameter sweep.
    Sweep(SweepArgs),
    /// Closed-form thin- and thick-slab limits on the default thickness grid.
    Asymptote {
        /// Slab plasma energy, eV.
        #[arg(long, default_value_t = scenarios::GOLD_PLASMA_ENERGY_EV)]
        slab_ev: f64,
    },
    /// Oracle cross-checks.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct PointArgs {
    /// Run file; the other geometry flags are then ignored.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Slab plasma energy, eV.
    #[arg(long, default_value_t = scenarios::GOLD_PLASMA_ENERGY_EV)]
    slab_ev: f64,
    /// Mirrors: perfect, vacuum, gold, or a Drude ratio Ω_P/ω_P.
    #[arg(long, default_value = "perfect")]
    mirror: String,
    /// Slab thickness k_P d_s.
    #[arg(long, default_value_t = 0.1)]
    k_p_ds: f64,
    /// Mirrors touching the slab.
    #[arg(long)]
    contact: bool,
    /// Cavity width L/d_s.
    #[arg(long)]
    l_over_ds: Option<f64>,
    /// Slab position in the cavity.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    /// Gap k_P d₁.
    #[arg(long)]
    d1: Option<f64>,
    /// Gap k_P d₂.
    #[arg(long)]
    d2: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Thickness,
    Position,
    Contrast,
}

#[derive(Args, Clone)]
struct SweepArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Swept parameter.
    #[arg(long, value_enum, default_value = "thickness")]
    kind: Kind,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    seed: u64,
    /// Random spectral points for the coefficient checks.
    #[arg(long, default_value_t = VerifyOptions::default().coefficient_points)]
    points: usize,
    /// Random cavities for the integral checks.
    #[arg(long, default_value_t = VerifyOptions::default().integral_configs)]
    configs: usize,
    /// Trapezoid nodes per axis.
    #[arg(long, default_value_t = VerifyOptions::default().grid)]
    grid: usize,
}

fn mirror_value(spec: &str) -> Result<Value> {
    Ok(match spec {
        "perfect" | "vacuum" | "gold" => json!(spec),
        ratio => {
            let r: f64 = ratio
                .parse()
                .map_err(|_| CasimirError::Config(format!("--mirror: expected perfect, vacuum, gold or a number, got {ratio}")))?;
            json!({"model": "drude", "omega_p_ratio": r})
        }
    })
}

fn point_document(scenario: &str, a: &PointArgs) -> Result<Map<String, Value>> {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("scenario".into(), json!(scenario));
    doc.insert("slab".into(), json!({"model": "plasma", "omega_p_ev": a.slab_ev}));
    doc.insert("mirrors".into(), mirror_value(&a.mirror)?);
    doc.insert("k_P_ds".into(), json!(a.k_p_ds));
    let no_geometry = a.l_over_ds.is_none() && a.z.is_none() && a.d1.is_none() && a.d2.is_none();
    if a.contact || no_geometry {
        doc.insert("contact".into(), json!(true));
    }
    for (key, v) in [("L_over_ds", a.l_over_ds), ("z", a.z), ("k_P_d1", a.d1), ("k_P_d2", a.d2)] {
        if let Some(v) = v {
            doc.insert(key.into(), json!(v));
        }
    }
    Ok(doc)
}

fn read_document(path: &PathBuf) -> Result<Map<String, Value>> {
    let text = std::fs::read_to_string(path).map_err(|e| CasimirError::Io(format!("{}: {e}", path.display())))?;
    match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(CasimirError::Config("the document must be a JSON object".into())),
        Err(e) => Err(CasimirError::Config(format!("malformed JSON: {e}"))),
    }
}

fn run_document(mut doc: Map<String, Value>, cli: &Cli) -> Result<ExitStatus> {
    if let Some(tol) = cli.rel_tol {
        let quad = doc.entry("quadrature").or_insert_with(|| json!({}));
        match quad.as_object_mut() {
            Some(q) => {
                q.insert("rel_tol".into(), json!(tol));
            }
            None => return Err(CasimirError::Config("quadrature must be an object".into())),
        }
    }
    let text = Value::Object(doc).to_string();
    let config = config::parse_config(&text)?;
    let (written, converged) = cli::run(&config, cli.out.as_deref())?;
    for path in written {
        log::info!("wrote {}", path.display());
    }
    Ok(if converged {
        ExitStatus::Success
    } else {
        ExitStatus::Unconverged
    })
}

fn verify(args: &VerifyArgs, rel_tol: Option<f64>) -> Result<ExitStatus> {
    let mut quad = QuadratureSpec::default();
    if let Some(tol) = rel_tol {
        quad = quad.with_rel_tol(tol);
    }
    let options = VerifyOptions {
        seed: args.seed,
        coefficient_points: args.points,
        integral_configs: args.configs,
        grid: args.grid,
        quad,
    };
    let mut ok = true;
    for check in oracle::run_cross_checks(&options)? {
        println!(
            "{:<44} samples {:>5}  max deviation {:.3e}  threshold {:.0e}  {}",
            check.name,
            check.samples,
            check.max_deviation,
            check.threshold,
            if check.passed() { "PASS" } else { "FAIL" }
        );
        ok &= check.passed();
    }
    Ok(if ok { ExitStatus::Success } else { ExitStatus::Failure })
}

fn dispatch(cli: &Cli) -> Result<ExitStatus> {
    let status = match &cli.command {
        None if cli.verify => return verify(&default_verify(), cli.rel_tol),
        None => return Err(CasimirError::Usage("no command given; see --help".into())),
        Some(Command::Run { config }) => run_document(read_document(config)?, cli)?,
        Some(Command::Stress(a)) => run_point("stress", a, cli)?,
        Some(Command::Force(a)) => run_point("force", a, cli)?,
        Some(Command::Sweep(a)) => {
            let mut doc = match &a.point.config {
                Some(path) => read_document(path)?,
                None => {
                    let mut doc = point_document("sweep", &a.point)?;
                    let kind = match a.kind {
                        Kind::Thickness => "thickness",
                        Kind::Position => "position",
                        Kind::Contrast => "contrast",
                    };
                    if matches!(a.kind, Kind::Position) {
                        doc.remove("z");
                        doc.remove("contact");
                    }
                    doc.insert("sweep".into(), json!({ "kind": kind }));
                    doc
                }
            };
            doc.insert("scenario".into(), json!("sweep"));
            run_document(doc, cli)?
        }
        Some(Command::Asymptote { slab_ev }) => {
            let units = ScaledUnits::from_plasma_energy_ev(*slab_ev)?;
            let grid = scenarios::default_thickness_grid();
            match &cli.out {
                Some(p) => {
                    let file = std::fs::File::create(p).map_err(|e| CasimirError::Io(format!("{}: {e}", p.display())))?;
                    cli::write_asymptotes(&units, &grid, std::io::BufWriter::new(file))?
                }
                None => cli::write_asymptotes(&units, &grid, std::io::stdout().lock())?,
            }
            ExitStatus::Success
        }
        Some(Command::Verify(args)) => return verify(args, cli.rel_tol),
    };
    if cli.verify {
        let checks = verify(&default_verify(), cli.rel_tol)?;
        if status == ExitStatus::Success {
            return Ok(checks);
        }
    }
    Ok(status)
}

fn default_verify() -> VerifyArgs {
    let d = VerifyOptions::default();
    VerifyArgs {
        seed: d.seed,
        points: d.coefficient_points,
        configs: d.integral_configs,
        grid: d.grid,
    }
}

fn run_point(scenario: &str, a: &PointArgs, cli: &Cli) -> Result<ExitStatus> {
    let mut doc = match &a.config {
        Some(path) => read_document(path)?,
        None => point_document(scenario, a)?,
    };
    doc.insert("scenario".into(), json!(scenario));
    run_document(doc, cli)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(ExitStatus::Validation as u8);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: could not start the thread pool: {e}");
            return ExitCode::from(ExitStatus::Failure as u8);
        }
    }
    match dispatch(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ExitStatus::for_error(&e) as u8)
        }
    }
}
