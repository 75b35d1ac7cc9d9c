//! Command-line interface: `quantify`, `sweep`, `verify`.
//!
//! Exit codes: 0 success, 1 failed verification or I/O trouble, 2 malformed
//! input (flags, state specs, parameter ranges), 3 unsupported dimensions,
//! 4 numerical validation failures.

use std::f64::consts::LN_2;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::{QdError, Result};
use crate::info::quantum_mutual_info;
use crate::maps::{MonitoringStrength, WeakStrength};
use crate::optimize::OptimizerConfig;
use crate::quantifiers::{
    classical_correlations, discord, super_discord, sym_discord, sym_weak_discord,
    weak_collapse_discord, weak_discord, QuantifierResult,
};
use crate::states::{werner_singlet, werner_wqd_closed_form, StateSpec, WernerParameter};
use crate::verify::{run_suite, Suite, SuiteReport};

#[derive(Parser)]
#[command(
    name = "qdiscord",
    version,
    about = "Discord-like quantum correlation quantifiers under weak measurements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one quantifier for one state
    Quantify(QuantifyArgs),
    /// Tabulate the weak discord of Werner states over a (mu, eps) grid
    Sweep(SweepArgs),
    /// Run randomized self-verification suites
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantifier {
    /// Quantum discord
    #[value(name = "qd")]
    Qd,
    /// Weak quantum discord (needs --epsilon)
    #[value(name = "wqd")]
    Wqd,
    /// Super quantum discord (needs --x)
    #[value(name = "sqd")]
    Sqd,
    /// Weak-collapse discord (needs --epsilon > 0)
    #[value(name = "frakd")]
    Frakd,
    /// Symmetric quantum discord
    #[value(name = "syqd")]
    Syqd,
    /// Symmetric weak quantum discord (needs --epsilon; --epsilon-a optional)
    #[value(name = "sywqd")]
    Sywqd,
    /// Classically accessible correlations
    #[value(name = "classical")]
    Classical,
    /// Total quantum mutual information (no optimization)
    #[value(name = "mutual_info")]
    MutualInfo,
}

impl Quantifier {
    fn name(self) -> &'static str {
        match self {
            Quantifier::Qd => "qd",
            Quantifier::Wqd => "wqd",
            Quantifier::Sqd => "sqd",
            Quantifier::Frakd => "frakd",
            Quantifier::Syqd => "syqd",
            Quantifier::Sywqd => "sywqd",
            Quantifier::Classical => "classical",
            Quantifier::MutualInfo => "mutual_info",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LogBase {
    /// Natural log (nats)
    #[value(name = "e")]
    E,
    /// Log base 2 (bits); display-only rescaling
    #[value(name = "2")]
    Two,
}

impl LogBase {
    fn scale(self, v: f64) -> f64 {
        match self {
            LogBase::E => v,
            LogBase::Two => v / LN_2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            LogBase::E => "e (nats)",
            LogBase::Two => "2 (bits)",
        }
    }

    fn json_name(self) -> &'static str {
        match self {
            LogBase::E => "e",
            LogBase::Two => "2",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    #[value(name = "text")]
    Text,
    #[value(name = "json")]
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    #[value(name = "csv")]
    Csv,
    #[value(name = "json")]
    Json,
}

#[derive(clap::Args)]
struct QuantifyArgs {
    /// State spec, e.g. "werner:mu=0.5", "bell:index=3",
    /// "random:dA=2,dB=2,rank=3,seed=7"
    #[arg(long)]
    state: String,
    #[arg(long, value_enum)]
    quantifier: Quantifier,
    /// B-side monitoring strength in [0, 1]
    #[arg(long)]
    epsilon: Option<f64>,
    /// A-side monitoring strength for sywqd (defaults to --epsilon)
    #[arg(long)]
    epsilon_a: Option<f64>,
    /// Weak-measurement strength for sqd
    #[arg(long)]
    x: Option<f64>,
    /// Grid resolution in theta (default 33 one-sided, 9 per side symmetric)
    #[arg(long)]
    theta_points: Option<usize>,
    /// Grid resolution in phi (default 64 one-sided, 16 per side symmetric)
    #[arg(long)]
    phi_points: Option<usize>,
    #[arg(long, value_enum, default_value = "e")]
    log_base: LogBase,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Werner parameter grid as lo:hi:n
    #[arg(long)]
    mu_grid: String,
    /// Monitoring strength grid as lo:hi:n
    #[arg(long)]
    epsilon_grid: String,
    /// Output file (atomic write); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 or omitted means all cores
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    theta_points: Option<usize>,
    #[arg(long)]
    phi_points: Option<usize>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// maps | theorem1 | hierarchy | sqd | classical | all
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    /// Random draws per suite
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

fn parse_suite(s: &str) -> Result<Suite> {
    s.parse()
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Quantify(args) => quantify(&args).map(|()| 0),
        Command::Sweep(args) => sweep(&args).map(|()| 0),
        Command::Verify(args) => verify(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(RunError::Qd(err)) => {
            eprintln!("error: {err}");
            qd_exit_code(&err)
        }
        Err(RunError::Io(err)) => {
            eprintln!("error: {err}");
            1
        }
    }
}

enum RunError {
    Qd(QdError),
    Io(std::io::Error),
}

impl From<QdError> for RunError {
    fn from(err: QdError) -> Self {
        RunError::Qd(err)
    }
}

impl From<std::io::Error> for RunError {
    fn from(err: std::io::Error) -> Self {
        RunError::Io(err)
    }
}

fn qd_exit_code(err: &QdError) -> i32 {
    match err {
        QdError::SpecParse { .. }
        | QdError::ParameterRange(_)
        | QdError::InvalidOptimizerConfig(_)
        | QdError::InvalidProbabilities(_)
        | QdError::InvalidPvm(_) => 2,
        QdError::UnsupportedDimension(_) | QdError::DimensionTooLarge(_) => 3,
        QdError::NotHermitian { .. }
        | QdError::NotUnitTrace { .. }
        | QdError::NotPositive { .. }
        | QdError::NonFiniteObjective
        | QdError::ZeroProbabilityOutcome { .. }
        | QdError::DimensionMismatch(_) => 4,
    }
}

/// Nine significant digits, plain decimal notation, "0.000000000" below the
/// smallest representable step. Sweep outputs rely on this being stable.
fn format_sig9(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v.abs() < 1e-9 {
        return "0.000000000".to_string();
    }
    let decimals = (8 - v.abs().log10().floor() as i64).clamp(0, 18) as usize;
    format!("{v:.decimals$}")
}

fn require_flag(value: Option<f64>, flag: &str, quantifier: Quantifier) -> Result<f64> {
    value.ok_or_else(|| {
        QdError::ParameterRange(format!(
            "--{flag} is required for --quantifier {}",
            quantifier.name()
        ))
    })
}

fn forbid_flag(value: Option<f64>, flag: &str, quantifier: Quantifier) -> Result<()> {
    if value.is_some() {
        return Err(QdError::ParameterRange(format!(
            "--{flag} does not apply to --quantifier {}",
            quantifier.name()
        )));
    }
    Ok(())
}

fn quantify(args: &QuantifyArgs) -> std::result::Result<(), RunError> {
    let q = args.quantifier;
    match q {
        Quantifier::Wqd | Quantifier::Frakd => {
            forbid_flag(args.x, "x", q)?;
            forbid_flag(args.epsilon_a, "epsilon-a", q)?;
        }
        Quantifier::Sywqd => forbid_flag(args.x, "x", q)?,
        Quantifier::Sqd => {
            forbid_flag(args.epsilon, "epsilon", q)?;
            forbid_flag(args.epsilon_a, "epsilon-a", q)?;
        }
        Quantifier::Qd | Quantifier::Syqd | Quantifier::Classical | Quantifier::MutualInfo => {
            forbid_flag(args.epsilon, "epsilon", q)?;
            forbid_flag(args.epsilon_a, "epsilon-a", q)?;
            forbid_flag(args.x, "x", q)?;
        }
    }

    let rho = StateSpec::parse(&args.state)?.build()?;

    let mut cfg = OptimizerConfig::default();
    if let Some(n) = args.theta_points {
        cfg.theta_points = n;
        cfg.pair_theta_points = n;
    }
    if let Some(n) = args.phi_points {
        cfg.phi_points = n;
        cfg.pair_phi_points = n;
    }

    let result: Option<QuantifierResult>;
    let value: f64;
    match q {
        Quantifier::Qd => {
            let r = discord(&rho, &cfg)?;
            value = r.value;
            result = Some(r);
        }
        Quantifier::Wqd => {
            let eps = MonitoringStrength::new(require_flag(args.epsilon, "epsilon", q)?)?;
            let r = weak_discord(&rho, eps, &cfg)?;
            value = r.value;
            result = Some(r);
        }
        Quantifier::Sqd => {
            let x = WeakStrength::new(require_flag(args.x, "x", q)?)?;
            let r = super_discord(&rho, x, &cfg)?;
            value = r.value;
            result = Some(r);
        }
        Quantifier::Frakd => {
            let eps = MonitoringStrength::new(require_flag(args.epsilon, "epsilon", q)?)?;
            let r = weak_collapse_discord(&rho, eps, &cfg)?;
            value = r.value;
            result = Some(r);
        }
        Quantifier::Syqd => {
            let r = sym_discord(&rho, &cfg)?;
            value = r.value;
            result = Some(r);
        }
        Quantifier::Sywqd => {
            let eps_b = MonitoringStrength::new(require_flag(args.epsilon, "epsilon", q)?)?;
            let eps_a = MonitoringStrength::new(args.epsilon_a.unwrap_or(eps_b.value()))?;
            let r = sym_weak_discord(&rho, eps_a, eps_b, &cfg)?;
            value = r.value;
            result = Some(r);
        }
        Quantifier::Classical => {
            let r = classical_correlations(&rho, &cfg)?;
            value = r.value;
            result = Some(r);
        }
        Quantifier::MutualInfo => {
            value = quantum_mutual_info(&rho);
            result = None;
        }
    }

    let base = args.log_base;
    match args.format {
        ReportFormat::Text => {
            println!("state      : {}", args.state);
            let mut label = q.name().to_string();
            if let Some(e) = args.epsilon {
                label.push_str(&format!(" (epsilon = {e}"));
                if q == Quantifier::Sywqd {
                    label.push_str(&format!(", epsilon_a = {}", args.epsilon_a.unwrap_or(e)));
                }
                label.push(')');
            }
            if let Some(x) = args.x {
                label.push_str(&format!(" (x = {x})"));
            }
            println!("quantifier : {label}");
            println!("log base   : {}", base.label());
            println!("value      : {}", format_sig9(base.scale(value)));
            if let Some(r) = &result {
                println!(
                    "B angles   : theta = {}, phi = {}",
                    format_sig9(r.angles_b.theta()),
                    format_sig9(r.angles_b.phi())
                );
                if let Some(a) = r.angles_a {
                    println!(
                        "A angles   : theta = {}, phi = {}",
                        format_sig9(a.theta()),
                        format_sig9(a.phi())
                    );
                }
                println!(
                    "optimizer  : grid best {}, refined {}, iterations {}",
                    format_sig9(base.scale(r.diagnostics.grid_best)),
                    format_sig9(base.scale(r.diagnostics.refined)),
                    r.diagnostics.iterations
                );
            }
        }
        ReportFormat::Json => {
            let angles = |a: Option<crate::maps::BlochAngles>| match a {
                Some(a) => serde_json::json!({"theta": a.theta(), "phi": a.phi()}),
                None => serde_json::Value::Null,
            };
            let diagnostics = match &result {
                Some(r) => serde_json::json!({
                    "grid_best": base.scale(r.diagnostics.grid_best),
                    "refined": base.scale(r.diagnostics.refined),
                    "iterations": r.diagnostics.iterations,
                }),
                None => serde_json::Value::Null,
            };
            let report = serde_json::json!({
                "state": args.state,
                "quantifier": q.name(),
                "epsilon": args.epsilon,
                "epsilon_a": if q == Quantifier::Sywqd {
                    args.epsilon_a.or(args.epsilon)
                } else {
                    None
                },
                "x": args.x,
                "log_base": base.json_name(),
                "value": base.scale(value),
                "angles_b": angles(result.as_ref().map(|r| r.angles_b)),
                "angles_a": angles(result.as_ref().and_then(|r| r.angles_a)),
                "diagnostics": diagnostics,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("static report")
            );
        }
    }
    Ok(())
}

fn parse_grid(flag: &str, spec: &str) -> Result<Vec<f64>> {
    let bad = |reason: &str| {
        QdError::ParameterRange(format!("--{flag} expects lo:hi:n, got '{spec}': {reason}"))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("need exactly three colon-separated fields"));
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad("lo is not a number"))?;
    let hi: f64 = parts[1].parse().map_err(|_| bad("hi is not a number"))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| bad("n is not a positive integer"))?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(bad("bounds must be finite"));
    }
    if n == 0 {
        return Err(bad("n must be at least 1"));
    }
    if lo > hi {
        return Err(bad("lo must not exceed hi"));
    }
    if n == 1 {
        if lo != hi {
            return Err(bad("a single-point grid needs lo == hi"));
        }
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect())
}

struct SweepRow {
    mu: f64,
    eps: f64,
    wqd_numeric: f64,
    wqd_closed_form: f64,
    qd: f64,
    theta_opt: f64,
    phi_opt: f64,
}

const SWEEP_HEADER: &str = "mu,epsilon,wqd_numeric,wqd_closed_form,qd,theta_opt,phi_opt";

fn sweep(args: &SweepArgs) -> std::result::Result<(), RunError> {
    let mu_values = parse_grid("mu-grid", &args.mu_grid)?;
    let eps_values = parse_grid("epsilon-grid", &args.epsilon_grid)?;
    // Validate the whole grid up front so range errors surface before any
    // computation starts.
    let mus: Vec<WernerParameter> = mu_values
        .iter()
        .map(|&m| WernerParameter::new(m))
        .collect::<Result<_>>()?;
    let epss: Vec<MonitoringStrength> = eps_values
        .iter()
        .map(|&e| MonitoringStrength::new(e))
        .collect::<Result<_>>()?;

    let mut cfg = OptimizerConfig::default();
    if let Some(n) = args.theta_points {
        cfg.theta_points = n;
    }
    if let Some(n) = args.phi_points {
        cfg.phi_points = n;
    }
    cfg.validate()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| QdError::ParameterRange(format!("--jobs: {e}")))?;

    // Parallel over mu only; each worker computes the discord once and walks
    // the whole eps row, and the ordered collect keeps output deterministic.
    let rows: Vec<Vec<SweepRow>> = pool.install(|| {
        mus.par_iter()
            .map(|&mu| -> Result<Vec<SweepRow>> {
                let rho = werner_singlet(mu);
                let qd = discord(&rho, &cfg)?.value;
                epss.iter()
                    .map(|&eps| {
                        let w = weak_discord(&rho, eps, &cfg)?;
                        Ok(SweepRow {
                            mu: mu.value(),
                            eps: eps.value(),
                            wqd_numeric: w.value,
                            wqd_closed_form: werner_wqd_closed_form(mu, eps),
                            qd,
                            theta_opt: w.angles_b.theta(),
                            phi_opt: w.angles_b.phi(),
                        })
                    })
                    .collect()
            })
            .collect::<Result<_>>()
    })?;
    let rows: Vec<SweepRow> = rows.into_iter().flatten().collect();

    let output = match args.format {
        TableFormat::Csv => {
            let mut out = String::from(SWEEP_HEADER);
            out.push('\n');
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    format_sig9(r.mu),
                    format_sig9(r.eps),
                    format_sig9(r.wqd_numeric),
                    format_sig9(r.wqd_closed_form),
                    format_sig9(r.qd),
                    format_sig9(r.theta_opt),
                    format_sig9(r.phi_opt),
                ));
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "mu": r.mu,
                        "epsilon": r.eps,
                        "wqd_numeric": r.wqd_numeric,
                        "wqd_closed_form": r.wqd_closed_form,
                        "qd": r.qd,
                        "theta_opt": r.theta_opt,
                        "phi_opt": r.phi_opt,
                    })
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&serde_json::json!({ "rows": rows }))
                .expect("static report");
            out.push('\n');
            out
        }
    };

    match &args.out {
        Some(path) => write_atomic(path, &output)?,
        None => print!("{output}"),
    }
    Ok(())
}

/// Writes via a temp file in the destination directory plus an atomic
/// rename, so readers never observe a partial file.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn verify(args: &VerifyArgs) -> std::result::Result<i32, RunError> {
    let report = run_suite(args.suite, args.samples, args.seed)?;
    match args.format {
        ReportFormat::Text => print_verify_text(&report, args),
        ReportFormat::Json => {
            let properties: Vec<serde_json::Value> = report
                .properties
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "name": p.name,
                        "samples": p.samples,
                        "max_violation": p.max_violation,
                        "tolerance": p.tolerance,
                        "pass": p.pass,
                        "worst_case": p.worst_case,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "suite": report.suite.name(),
                "samples": args.samples,
                "seed": args.seed,
                "passed": report.passed(),
                "properties": properties,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("static report")
            );
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn print_verify_text(report: &SuiteReport, args: &VerifyArgs) {
    println!(
        "suite '{}': {} samples, seed {}",
        report.suite.name(),
        args.samples,
        args.seed
    );
    for p in &report.properties {
        let verdict = if p.pass { "PASS" } else { "FAIL" };
        let tol = if p.tolerance == 0.0 {
            "0".to_string()
        } else {
            format!("{:e}", p.tolerance)
        };
        println!(
            "  {verdict}  {:<58} max violation {:>10.3e} (tolerance {tol}, {} samples)",
            p.name, p.max_violation, p.samples
        );
        if !p.pass {
            println!("        worst case: {}", p.worst_case);
        }
    }
    println!("result: {}", if report.passed() { "PASS" } else { "FAIL" });
}
