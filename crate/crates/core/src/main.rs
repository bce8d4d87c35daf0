//! Command-line front end: verification suites and parameter sweeps.
//!
//! Exit codes: 0 when every check passes, 1 when any relation (or sweep
//! row) fails its tolerance, 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bmw_verify::suite::{
    self, berry_csv, berry_sweep, entangle_csv, entangle_sweep, PhiSpec, SuiteReport,
};

#[derive(Parser)]
#[command(
    name = "bmw-verify",
    version,
    about = "Verify a two-spin-1/2 Birman-Murakami-Wenzl realization, its Yang-Baxter solution, Berry phases, and the topological-basis reduction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct ReportArgs {
    /// Seed for the ChaCha8 parameter generator
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining algebra relations and the braid spectrum on a qubit chain
    VerifyAlgebra {
        /// Chain length (>= 3)
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Fixed phi value
        #[arg(long, conflicts_with = "random")]
        phi: Option<f64>,
        /// Number of seeded random phi samples
        #[arg(long)]
        random: Option<usize>,
        /// Frobenius-residual tolerance
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Check the Yang-Baxter equation under the velocity-addition constraint
    VerifyYbe {
        /// Explicit first spectral parameter (requires --theta3 and --phi)
        #[arg(long, requires = "theta3", requires = "phi", conflicts_with = "random")]
        theta1: Option<f64>,
        #[arg(long, requires = "theta1")]
        theta3: Option<f64>,
        #[arg(long)]
        phi: Option<f64>,
        /// Number of seeded random (theta1, theta3, phi) triples
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Check the topological basis, reduced matrices, reduced YBE and Wigner identification
    Topo {
        /// Fixed phi value
        #[arg(long, conflicts_with = "random")]
        phi: Option<f64>,
        /// Number of seeded random phi samples
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Sweep the entangled-basis concurrence against sin^2(theta), emitting CSV
    Entangle {
        /// Number of theta grid points on [0, pi]
        #[arg(long, default_value_t = 181)]
        theta_points: usize,
        /// Number of seeded random phi values
        #[arg(long, default_value_t = 5)]
        phi_count: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep numeric vs analytic Berry phases, emitting CSV
    Berry {
        /// Grid steps for the discrete overlap-product loop (>= 100)
        #[arg(long, default_value_t = 20000)]
        steps: usize,
        /// Integration-limited tolerance on |gamma_numeric - gamma_analytic|
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Write CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every suite and sweep
    All {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Berry-phase tolerance (integration-limited)
        #[arg(long, default_value_t = 1e-6)]
        berry_tol: f64,
        /// Grid steps for the Berry-phase loop
        #[arg(long, default_value_t = 20000)]
        berry_steps: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn write_output(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())
        }
    }
}

fn render_reports(suites: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Json => {
            let json = if suites.len() == 1 {
                serde_json::to_string_pretty(&suites[0]).unwrap()
            } else {
                serde_json::to_string_pretty(&suites).unwrap()
            };
            json + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for s in suites {
                out.push_str(&format!("suite: {} (seed {})\n", s.suite, s.config.seed));
                for r in &s.reports {
                    out.push_str(&format!("{r}\n"));
                }
                out.push_str(&format!(
                    "summary: {} passed, {} failed in {} ms\n\n",
                    s.summary.passed, s.summary.failed, s.elapsed_ms
                ));
            }
            out
        }
    }
}

fn finish_reports(
    suites: Vec<SuiteReport>,
    format: Format,
    out: &Option<PathBuf>,
) -> ExitCode {
    let rendered = render_reports(&suites, format);
    if let Err(e) = write_output(out, &rendered) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if suites.iter().all(SuiteReport::all_passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn phi_spec(phi: Option<f64>, random: Option<usize>, default_random: usize) -> Result<PhiSpec, ExitCode> {
    match (phi, random) {
        (Some(p), _) if !p.is_finite() => Err(usage_error("--phi must be finite")),
        (Some(p), _) => Ok(PhiSpec::Fixed(p)),
        (None, Some(c)) => Ok(PhiSpec::Random(c)),
        (None, None) => Ok(PhiSpec::Random(default_random)),
    }
}

fn check_tol(tol: f64) -> Option<ExitCode> {
    if tol.is_finite() && tol > 0.0 {
        None
    } else {
        Some(usage_error("--tol must be a positive finite number"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::VerifyAlgebra {
            n,
            phi,
            random,
            tol,
            report,
        } => {
            if let Some(code) = check_tol(tol) {
                return code;
            }
            let spec = match phi_spec(phi, random, 50) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match suite::algebra_suite(n, spec, tol, report.seed) {
                Ok(s) => finish_reports(vec![s], report.format, &report.out),
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::VerifyYbe {
            theta1,
            theta3,
            phi,
            random,
            tol,
            report,
        } => {
            if let Some(code) = check_tol(tol) {
                return code;
            }
            let explicit = match (theta1, theta3, phi) {
                (Some(a), Some(b), Some(c)) => Some((a, b, c)),
                (None, None, None) | (None, None, Some(_)) => None,
                _ => return usage_error("--theta1, --theta3 and --phi must be given together"),
            };
            if let Some((a, b, c)) = explicit {
                if !(a.is_finite() && b.is_finite() && c.is_finite()) {
                    return usage_error("angle arguments must be finite");
                }
            }
            match suite::ybe_suite(explicit, random, tol, report.seed) {
                Ok(s) => finish_reports(vec![s], report.format, &report.out),
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Topo {
            phi,
            random,
            tol,
            report,
        } => {
            if let Some(code) = check_tol(tol) {
                return code;
            }
            let spec = match phi_spec(phi, random, 20) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match suite::topo_suite(spec, tol, report.seed) {
                Ok(s) => finish_reports(vec![s], report.format, &report.out),
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Entangle {
            theta_points,
            phi_count,
            tol,
            seed,
            out,
        } => {
            if let Some(code) = check_tol(tol) {
                return code;
            }
            if theta_points < 2 || phi_count == 0 {
                return usage_error("--theta-points must be >= 2 and --phi-count >= 1");
            }
            let rows = entangle_sweep(theta_points, phi_count, seed);
            if let Err(e) = write_output(&out, &entangle_csv(&rows)) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if rows.iter().all(|r| r.abs_error < tol) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Berry { steps, tol, out } => {
            if let Some(code) = check_tol(tol) {
                return code;
            }
            if steps < 100 {
                return usage_error("--steps must be at least 100");
            }
            let rows = match berry_sweep(steps) {
                Ok(rows) => rows,
                Err(e) => return usage_error(&e.to_string()),
            };
            if let Err(e) = write_output(&out, &berry_csv(&rows)) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if rows.iter().all(|r| r.abs_error < tol) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::All {
            tol,
            berry_tol,
            berry_steps,
            report,
        } => {
            if let Some(code) = check_tol(tol).or_else(|| check_tol(berry_tol)) {
                return code;
            }
            if berry_steps < 100 {
                return usage_error("--berry-steps must be at least 100");
            }
            let seed = report.seed;
            let suites = (|| -> bmw_verify::Result<Vec<SuiteReport>> {
                Ok(vec![
                    suite::algebra_suite(3, PhiSpec::Random(50), tol, seed)?,
                    suite::ybe_suite(None, Some(100), tol, seed)?,
                    suite::topo_suite(PhiSpec::Random(20), tol, seed)?,
                    suite::entangle_suite(181, 5, tol, seed),
                    suite::berry_suite(berry_steps, berry_tol, seed)?,
                ])
            })();
            match suites {
                Ok(suites) => finish_reports(suites, report.format, &report.out),
                Err(e) => usage_error(&e.to_string()),
            }
        }
    }
}
