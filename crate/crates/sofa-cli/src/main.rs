//! `sofa`: build caps and maximizers, evaluate the sofa functionals, run the
//! quadratic program and the verification suites, and draw figures.

mod render;
mod verify;

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sofa_core::f64::{Cap, SupportSamples};
use sofa_core::functional::{a1, boundary_measure};
use sofa_core::hallway::rotation_path;
use sofa_core::maximizer::{build_maximizer, MaximizerSpec};
use sofa_core::optimize::{assemble, solve, uniform_start};
use sofa_core::sofa::{injectivity_check, monotonize, niche, polygonal_bound, sofa_area_with, validate_cap, BoundSearch};

#[derive(Parser)]
#[command(name = "sofa", version, about = "Moving-sofa toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct OmegaArg {
    /// Rotation angle in radians.
    #[arg(long, conflicts_with = "omega_deg")]
    omega: Option<f64>,
    /// Rotation angle in degrees.
    #[arg(long)]
    omega_deg: Option<f64>,
}

impl OmegaArg {
    fn radians(self) -> f64 {
        match (self.omega, self.omega_deg) {
            (Some(r), _) => r,
            (None, Some(d)) => d.to_radians(),
            (None, None) => FRAC_PI_2,
        }
    }
}

#[derive(Args)]
struct Scan {
    /// Rotation angles sampled by the niche scan.
    #[arg(long, default_value_t = 4096)]
    t_samples: usize,
    /// Columns of the niche scan.
    #[arg(long, default_value_t = 4096)]
    x_samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build K_{ω,1} and report A1 against 1 + ω²/2.
    BuildMaximizer {
        #[command(flatten)]
        omega: OmegaArg,
        #[arg(long, default_value_t = 2000)]
        n: usize,
        /// Rotation path samples.
        #[arg(long, default_value_t = 2000)]
        m: usize,
        /// Cap JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cap area, niche area, sofa area and A1 of a cap.
    Area {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2000)]
        m: usize,
        #[command(flatten)]
        scan: Scan,
    },
    /// The niche of a cap as CSV columns (x, y_lower, y_upper).
    Niche {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        scan: Scan,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut a support function on J_ω down to its monotone sofa.
    Monotonize {
        #[arg(long = "in")]
        input: PathBuf,
        /// Summary JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a cap and test niche containment and path injectivity.
    CheckCap {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1024)]
        t_samples: usize,
    },
    /// Maximize the discretized A1 over boundary measures.
    Optimize {
        #[command(flatten)]
        omega: OmegaArg,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        m: usize,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[arg(long, default_value_t = 50_000)]
        max_iters: usize,
        #[arg(long, value_enum, default_value_t = Start::Uniform)]
        start: Start,
        /// Solution measure JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Trace CSV output.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Upper bound from the intersection of rotated hallways.
    Hammersley {
        /// Rotation angles in radians, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        theta: Vec<f64>,
    },
    /// Run a verification suite and emit a pass/fail report.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        /// Report JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a cap with its niche and rotation path, and/or the S₁ curves.
    Render {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Overlay the boundary curves of S₁.
        #[arg(long)]
        s1: bool,
        #[arg(long, default_value_t = 1024)]
        t_samples: usize,
        #[arg(long, default_value_t = 1024)]
        x_samples: usize,
        /// SVG output; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Start {
    Uniform,
    Maximizer,
}

/// A run that completed but whose numerical check failed.
struct CertificateFailure;

fn seed() -> Result<u64> {
    match std::env::var("SOFA_SEED") {
        Ok(s) => s.trim().parse().with_context(|| format!("SOFA_SEED must be an integer, got {s:?}")),
        Err(_) => Ok(0),
    }
}

pub(crate) fn rng() -> Result<ChaCha8Rng> {
    Ok(ChaCha8Rng::seed_from_u64(seed()?))
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn read_samples(path: &Path) -> Result<SupportSamples> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_cap(path: &Path) -> Result<Cap> {
    let samples = read_samples(path)?;
    validate_cap(&samples, samples.omega).with_context(|| format!("{} is not a cap", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    write(path, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn run(cli: Cli) -> Result<Option<CertificateFailure>> {
    let mut failed = false;
    match cli.command {
        Command::BuildMaximizer { omega, n, m, out } => {
            let omega = omega.radians();
            let cap = build_maximizer(&MaximizerSpec::new(omega, n))?;
            let value = a1(&cap, m)?;
            let want = 1.0 + cap.omega().powi(2) / 2.0;
            let ok = (value - want).abs() <= 1e-4;
            println!("A1 = {value:.4} (1 + ω²/2 = {want:.4}, tol 1e-4: {})", status(ok));
            if let Some(out) = out {
                write_json(&out, cap.support())?;
            }
            failed = !ok;
        }
        Command::Area { input, m, scan } => {
            let cap = read_cap(&input)?;
            let a = sofa_area_with(&cap, scan.t_samples, scan.x_samples);
            let upper = a1(&cap, m)?;
            println!(
                "area = {:.6} (cap {:.6}, niche {:.6}, A1 = {upper:.6}, niche_contained = {})",
                a.area, a.cap_area, a.niche_area, a.niche_contained
            );
            failed = !a.niche_contained;
        }
        Command::Niche { input, scan, out } => {
            let cap = read_cap(&input)?;
            let region = niche(&cap, scan.t_samples, scan.x_samples);
            println!("niche_area = {:.6} ({} columns)", region.area, region.columns.len());
            if let Some(out) = out {
                write(&out, &region.to_csv())?;
            }
        }
        Command::Monotonize { input, out } => {
            let shape = monotonize(&read_samples(&input)?)?;
            println!(
                "sofa_area = {:.6} (cap {:.6}, niche {:.6})",
                shape.area,
                shape.cap.area(),
                shape.niche.area
            );
            if let Some(out) = out {
                write_json(&out, &shape.summary())?;
            }
        }
        Command::CheckCap { input, t_samples } => {
            let cap = read_cap(&input)?;
            let contained = sofa_core::sofa::niche_contained(&cap, t_samples);
            let injective = injectivity_check(&rotation_path(cap.support(), t_samples)?, &cap.fan());
            println!("niche_contained = {contained}, injective = {injective}");
            failed = !contained;
        }
        Command::Optimize { omega, n, m, tol, max_iters, start, out, trace } => {
            let omega = omega.radians();
            let anchor = build_maximizer(&MaximizerSpec::new(omega, n))?;
            let problem = assemble(omega, n, m, &anchor)?;
            let w0 = match start {
                Start::Uniform => uniform_start(&problem),
                Start::Maximizer => boundary_measure(&anchor).weights,
            };
            let s = solve(&problem, &w0, max_iters, tol)?;
            let want = 1.0 + problem.omega.powi(2) / 2.0;
            let ok = s.converged && (s.value - want).abs() <= 1e-3;
            println!(
                "A1* = {:.4} (1 + ω²/2 = {want:.4}, certificate {:.1e}, {} iterations: {})",
                s.value,
                s.certificate,
                s.iterations,
                status(ok)
            );
            if let Some(out) = out {
                write_json(&out, &s.measure(&problem).to_measure())?;
            }
            if let Some(trace) = trace {
                write(&trace, &s.trace_csv())?;
            }
            failed = !ok;
        }
        Command::Hammersley { theta } => {
            let b = polygonal_bound(&theta, &BoundSearch::default())?;
            println!("bound = {b:.4}");
        }
        Command::Verify { suite, out } => {
            let report = verify::run(suite, &mut rng()?)?;
            for c in &report.checks {
                if c.tol > 0.0 {
                    println!("{} {}: {:.6} (want {:.6} ± {:.0e})", status(c.passed), c.name, c.value, c.expected, c.tol);
                } else {
                    println!("{} {}: {:.3e} (want ≤ {:.0e})", status(c.passed), c.name, c.value, c.expected);
                }
            }
            println!("verify {}: {}", report.suite, status(report.passed));
            if let Some(out) = out {
                write_json(&out, &report)?;
            }
            failed = !report.passed;
        }
        Command::Render { input, s1, t_samples, x_samples, out } => {
            if input.is_none() && !s1 {
                bail!("render needs --in, --s1 or both");
            }
            let cap = input.as_deref().map(read_cap).transpose()?;
            let svg = render::svg(cap.as_ref(), s1, t_samples, x_samples)?;
            match out {
                Some(path) => {
                    write(&path, &svg)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{svg}"),
            }
        }
    }
    Ok(failed.then_some(CertificateFailure))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(CertificateFailure)) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
