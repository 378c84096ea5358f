//! `sharptrace`: verification suites and inequality reports over parameter
//! grids, with machine-readable output.
//!
//! Exit codes: 0 when every check passes or is flagged, 1 when any check
//! fails, 2 on usage or I/O errors.

mod output;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use sharptrace_core::ball::{
    adapted_metric_factor, exponential_class_report, trace_inequality_report, ExpDatum,
    ExponentChoice, TraceDatum,
};
use sharptrace_core::halfspace::halfspace_trace_report;
use sharptrace_core::report::InequalityReport;
use sharptrace_core::sphere::ModelParams;

use output::{CheckRecord, Report, Residual, Status, Tolerance};
use suites::{
    all_checks, ball_checks, halfspace_checks, inequality_checks, run_checks, specfun_checks,
    SuiteConfig,
};

#[derive(Parser)]
#[command(
    name = "sharptrace",
    version,
    about = "Exact and numeric verification of higher-order sharp trace inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the rendered report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker count (default: available parallelism; env SHARPTRACE_WORKERS
    /// overrides the default).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Omit the timestamp and zero out runtimes so identical configurations
    /// render byte-identical reports.
    #[arg(long, global = true, default_value_t = false)]
    no_timestamp: bool,
    /// Quadrature order for all numeric rules.
    #[arg(long, global = true, default_value_t = 200)]
    quad_order: usize,
    /// Zonal series truncation degree.
    #[arg(long, global = true, default_value_t = 40)]
    series_l: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over a parameter grid.
    Verify {
        #[command(subcommand)]
        suite: SuiteName,
    },
    /// Evaluate one inequality instance and report both sides.
    Ineq {
        #[command(subcommand)]
        which: IneqCommand,
    },
    /// Sample the adapted-metric factor on a rho-grid (plot-ready CSV).
    Metric {
        #[arg(long)]
        n: u32,
        /// Order gamma; half-integers use the exact path.
        #[arg(long)]
        gamma: f64,
        /// Number of rho samples in (0, 1/2].
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum SuiteName {
    /// Special-function checks (hypergeometric, Gegenbauer, quadrature).
    Specfun(GridArgs),
    /// Ball-model checks (profiles, traces, energies, metrics, duality).
    Ball(GridArgs),
    /// Half-space checks (kernel identity, profiles, multipliers).
    Halfspace(GridArgs),
    /// Sharpness and strictness of the inequalities themselves.
    Inequality(GridArgs),
    /// Everything.
    All(GridArgs),
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Smallest boundary dimension in the grid.
    #[arg(long, default_value_t = 4)]
    n_min: u32,
    /// Largest boundary dimension in the grid.
    #[arg(long, default_value_t = 7)]
    n_max: u32,
    /// Largest spherical-harmonic degree exercised per cell.
    #[arg(long, default_value_t = 8)]
    lmax: u32,
    /// Largest half-space order for the kernel identity.
    #[arg(long, default_value_t = 6)]
    max_m: u32,
}

#[derive(Subcommand)]
enum IneqCommand {
    /// Subcritical sharp trace inequality on the ball.
    Trace {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = DatumKind::Extremal)]
        datum: DatumKind,
        /// Pole offset of the extremal datum.
        #[arg(long, default_value_t = 0.3)]
        x0: f64,
        /// Exponent convention for the extremal family.
        #[arg(long, value_enum, default_value_t = ExponentArg::Beckner)]
        exponent_choice: ExponentArg,
        /// Perturbation amplitude (perturbed datum).
        #[arg(long, default_value_t = 0.1)]
        amplitude: f64,
        /// Perturbation mode degree (perturbed datum).
        #[arg(long, default_value_t = 2)]
        mode: usize,
    },
    /// Critical exponential-class inequality (odd n).
    LebedevMilin {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0.3)]
        x0: f64,
        #[arg(long, value_enum, default_value_t = DatumKind::Extremal)]
        datum: DatumKind,
        #[arg(long, default_value_t = 0.2)]
        amplitude: f64,
        #[arg(long, default_value_t = 2)]
        mode: usize,
    },
    /// Half-space trace inequality with a Gaussian datum.
    Halfspace {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DatumKind {
    Const,
    Extremal,
    Perturbed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExponentArg {
    Beckner,
    Printed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn workers(common: &Common) -> usize {
    common
        .workers
        .or_else(|| std::env::var("SHARPTRACE_WORKERS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or_else(|| std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1))
        .max(1)
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    let common = cli.common.clone();
    match cli.command {
        Command::Verify { suite } => {
            let (name, grid): (&str, GridArgs) = match &suite {
                SuiteName::Specfun(g) => ("specfun", g.clone()),
                SuiteName::Ball(g) => ("ball", g.clone()),
                SuiteName::Halfspace(g) => ("halfspace", g.clone()),
                SuiteName::Inequality(g) => ("inequality", g.clone()),
                SuiteName::All(g) => ("all", g.clone()),
            };
            let cfg = suite_config(&common, &grid)?;
            if matches!(suite, SuiteName::Ball(_) | SuiteName::All(_))
                && cfg.subcritical_cells().is_empty()
            {
                return Err(format!(
                    "empty grid: no (n, m) with 2m + 1 < n inside n in [{}, {}]",
                    cfg.n_min, cfg.n_max
                ));
            }
            let checks = match suite {
                SuiteName::Specfun(_) => specfun_checks(&cfg),
                SuiteName::Ball(_) => ball_checks(&cfg),
                SuiteName::Halfspace(_) => halfspace_checks(&cfg),
                SuiteName::Inequality(_) => inequality_checks(&cfg),
                SuiteName::All(_) => all_checks(&cfg),
            };
            let mut report = run_checks(name, &cfg, checks, !common.no_timestamp);
            finish_report(&common, &mut report)
        }
        Command::Ineq { which } => {
            let cfg = suite_config(&common, &GridArgs { n_min: 4, n_max: 7, lmax: 8, max_m: 6 })?;
            let quad = cfg.quad();
            let (name, result): (&str, Result<InequalityReport, sharptrace_core::Error>) =
                match which {
                    IneqCommand::Trace { n, m, datum, x0, exponent_choice, amplitude, mode } => {
                        let params = ModelParams::half_odd(n, m).map_err(|e| e.to_string())?;
                        let exponent = match exponent_choice {
                            ExponentArg::Beckner => ExponentChoice::Beckner,
                            ExponentArg::Printed => ExponentChoice::Printed,
                        };
                        let datum = match datum {
                            DatumKind::Const => TraceDatum::Constant,
                            DatumKind::Extremal => TraceDatum::Extremal { x0, exponent },
                            DatumKind::Perturbed => TraceDatum::Perturbed { amplitude, mode },
                        };
                        ("trace", trace_inequality_report(&params, &datum, &quad))
                    }
                    IneqCommand::LebedevMilin { n, x0, datum, amplitude, mode } => {
                        if n % 2 == 0 || n < 3 {
                            return Err(format!("critical regime needs odd n >= 3, got {n}"));
                        }
                        let params =
                            ModelParams::half_odd(n, (n - 1) / 2).map_err(|e| e.to_string())?;
                        let datum = match datum {
                            DatumKind::Const => ExpDatum::Constant,
                            DatumKind::Extremal => ExpDatum::Extremal { x0 },
                            DatumKind::Perturbed => ExpDatum::Perturbed { x0, amplitude, mode },
                        };
                        ("lebedev-milin", exponential_class_report(&params, &datum, &quad))
                    }
                    IneqCommand::Halfspace { n, m, sigma } => {
                        ("halfspace-trace", halfspace_trace_report(n, m, sigma, &quad))
                    }
                };
            let rep = result.map_err(|e| e.to_string())?;
            let mut report = inequality_as_report(name, &cfg, &rep);
            finish_report(&common, &mut report)
        }
        Command::Metric { n, gamma, samples } => {
            if samples == 0 {
                return Err("samples must be positive".into());
            }
            let params = metric_params(n, gamma)?;
            let mut out = String::from("rho,psi_gamma,conformal_factor\n");
            for i in 1..=samples {
                let rho = 0.5 * (i as f64) / (samples as f64);
                let psi = adapted_metric_factor(&params, rho).map_err(|e| e.to_string())?;
                let factor = if params.is_critical() {
                    psi // the critical evaluator already returns the factor
                } else {
                    psi.powf(4.0 / (f64::from(n) - 2.0 * params.gamma_f64()))
                };
                let psi_field =
                    if params.is_critical() { String::new() } else { format!("{psi:e}") };
                out.push_str(&format!("{rho:e},{psi_field},{factor:e}\n"));
            }
            write_output(&common, &out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn metric_params(n: u32, gamma: f64) -> Result<ModelParams, String> {
    let twice = 2.0 * gamma;
    if (twice - twice.round()).abs() < 1e-12 {
        ModelParams::exact_order(n, sharptrace_core::exact::HalfInt::new(twice.round() as i64))
            .map_err(|e| e.to_string())
    } else {
        ModelParams::general(n, gamma).map_err(|e| e.to_string())
    }
}

fn suite_config(common: &Common, grid: &GridArgs) -> Result<SuiteConfig, String> {
    if grid.n_min < 2 || grid.n_max < grid.n_min {
        return Err(format!("invalid dimension range [{}, {}]", grid.n_min, grid.n_max));
    }
    if common.quad_order < 2 {
        return Err(format!("quadrature order {} < 2", common.quad_order));
    }
    Ok(SuiteConfig {
        n_min: grid.n_min,
        n_max: grid.n_max,
        l_max: grid.lmax,
        max_m: grid.max_m,
        quad_order: common.quad_order,
        truncation: common.series_l,
        workers: workers(common),
    })
}

/// Wraps a single inequality evaluation as a one-check report so every
/// command shares the output schema.
fn inequality_as_report(name: &str, cfg: &SuiteConfig, rep: &InequalityReport) -> Report {
    let mut details = format!(
        "params: {}; datum: {}; lhs {:.12e}; rhs {:.12e}; sharp constant {:.12e}",
        rep.params, rep.datum, rep.lhs, rep.rhs, rep.sharp_constant
    );
    for (k, v) in rep.breakdown.iter().chain(rep.extras.iter()) {
        details.push_str(&format!("; {k} {v:.12e}"));
    }
    let shortfall = if rep.rhs == 0.0 && rep.lhs.abs() < 1e-13 {
        0.0
    } else {
        (1.0 - rep.ratio).max(0.0)
    };
    let record = CheckRecord {
        name: format!("{name}-ratio"),
        paper_ref: match name {
            "trace" => "1.18",
            "lebedev-milin" => "1.20",
            _ => "thm-1.8",
        }
        .into(),
        status: if shortfall <= 1e-9 { Status::Pass } else { Status::Fail },
        residual: Residual::Float(shortfall),
        tolerance: Tolerance::Abs(1e-9),
        runtime_ms: 0,
        details,
    };
    Report::new(name, cfg.config_echo(), vec![record])
}

fn finish_report(common: &Common, report: &mut Report) -> Result<ExitCode, String> {
    if !common.no_timestamp {
        report.timestamp =
            Some(SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    }
    let rendered = match common.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    write_output(common, &rendered)?;
    Ok(if report.any_failed() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn write_output(common: &Common, rendered: &str) -> Result<(), String> {
    match &common.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(rendered.as_bytes())
            .map_err(|e| format!("cannot write stdout: {e}")),
    }
}
