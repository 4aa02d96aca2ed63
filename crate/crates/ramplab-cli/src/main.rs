//! Command-line front end: generate closed-form ramp curves, verify curve
//! files against the ramp law, run the TreadmillSled transform, sample phase
//! portraits, classify asymptotics, and render CSV data to SVG.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage error, 3 data error.
//! All outputs are deterministic for identical inputs; the SVG carries a
//! version comment as its only environment-dependent line.
//!
//! The environment variable `RAMPLAB_SEED` is reserved for future stochastic
//! features and is ignored by the current deterministic pipeline.

mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ramplab::io::{self, CsvKind, IoError};
use ramplab::{
    classify_asymptotics, parse_family_spec, phase_portrait, ramp_residual,
    ramp_residual_frictionless, reparam_arclength, tms_forward, tms_inverse, BBox, CentralForce,
    Error as LibError, RampConfig, RampFamily, Vec2,
};

#[derive(Parser)]
#[command(
    name = "ramplab",
    version,
    about = "Constant-speed ramp curves under central forces with friction",
    after_help = "Exit codes: 0 ok, 1 verification failed, 2 usage error, 3 data error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a closed-form ramp family as a curve CSV.
    ///
    /// Family specs: circle:R=<r> | v1:u=<rad> | spiral:sign=<+|-> |
    /// polar:[rot=<rad>][,scale=<k>]
    Generate {
        /// Family spec string.
        spec: String,
        /// Friction coefficient.
        #[arg(long)]
        mu: f64,
        /// Constant speed.
        #[arg(long)]
        v: f64,
        /// Arc-length sample spacing. The default gives the 3-point
        /// curvature stencils enough resolution to sit well inside the
        /// default verification tolerance on every family.
        #[arg(long, default_value_t = 2.5e-4)]
        h: f64,
        /// Override the start of the parameter range.
        #[arg(long, allow_hyphen_values = true)]
        t0: Option<f64>,
        /// Override the end of the parameter range.
        #[arg(long, allow_hyphen_values = true)]
        t1: Option<f64>,
        /// Output curve CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a curve CSV against the ramp law; exits 0 iff it passes.
    Verify {
        /// Input curve CSV.
        #[arg(long)]
        curve: PathBuf,
        /// Force spec: icho | power:eps=<+1|-1>,n=<real>[,m=<real>]
        #[arg(long)]
        force: String,
        /// Friction coefficient; 0 selects the frictionless law.
        #[arg(long)]
        mu: f64,
        /// Constant speed.
        #[arg(long)]
        v: f64,
        /// Largest allowed residual.
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        /// Treat the curve samples as a closed loop.
        #[arg(long)]
        closed: bool,
        /// Write the full JSON report here (otherwise it goes to stdout).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// TreadmillSled transform: curve CSV -> t,xi1,xi2 CSV (or back).
    Tms {
        /// Input CSV (curve for forward, TreadmillSled for inverse).
        #[arg(long)]
        input: PathBuf,
        /// Output CSV.
        #[arg(long)]
        output: PathBuf,
        /// Reconstruct the curve from its TreadmillSled.
        #[arg(long)]
        inverse: bool,
        /// Treat the input curve as a closed loop (forward only).
        #[arg(long)]
        closed: bool,
    },
    /// Sample a phase portrait into a directory of trajectory CSVs.
    Phase {
        /// Friction coefficient.
        #[arg(long)]
        mu: f64,
        /// Constant speed (v = 1 uses the linear system, else the quadratic).
        #[arg(long)]
        v: f64,
        /// Region of interest: x0,y0,x1,y1.
        #[arg(long, default_value = "-2,-2,2,2", allow_hyphen_values = true)]
        bbox: String,
        /// Number of seed states on the inscribed circle.
        #[arg(long, default_value_t = 16)]
        seeds: usize,
        /// Integration step size.
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        /// Step budget per direction.
        #[arg(long, default_value_t = 20_000)]
        steps: usize,
        /// Output directory for traj_NNN.csv files and index.json.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Print the asymptotic class of ramps at this configuration.
    Classify {
        /// Friction coefficient.
        #[arg(long)]
        mu: f64,
        /// Constant speed.
        #[arg(long)]
        v: f64,
    },
    /// Render CSV inputs (curves, TreadmillSleds, trajectories, or a phase
    /// index.json) into a single SVG with axes and equal aspect.
    Plot {
        /// Input files.
        inputs: Vec<PathBuf>,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
        /// Canvas size in pixels, WxH.
        #[arg(long, default_value = "800x800")]
        size: String,
    },
}

/// Application failure with its process exit code.
#[derive(Debug)]
enum AppError {
    Usage(String),
    Data(String),
    VerificationFailed,
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Data(_) => 3,
            AppError::VerificationFailed => 1,
        }
    }
}

impl From<LibError> for AppError {
    fn from(e: LibError) -> Self {
        match e {
            LibError::SpecParse(_)
            | LibError::InvalidParameter { .. }
            | LibError::UOutOfRange { .. } => AppError::Usage(e.to_string()),
            other => AppError::Data(other.to_string()),
        }
    }
}

impl From<IoError> for AppError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Data(inner) => AppError::from(inner),
            other => AppError::Data(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with code 2 on usage errors
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                AppError::Usage(msg) => eprintln!("usage error: {msg}"),
                AppError::Data(msg) => eprintln!("data error: {msg}"),
                AppError::VerificationFailed => {}
            }
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Generate {
            spec,
            mu,
            v,
            h,
            t0,
            t1,
            out,
        } => {
            let cfg = RampConfig::new(mu, v)?;
            let kind = parse_family_spec(&spec)?;
            let family = RampFamily::new(cfg, kind)?;
            let (lo, hi) = family.default_range()?;
            let curve = family.sample_range(t0.unwrap_or(lo), t1.unwrap_or(hi), h)?;
            let points: Vec<Vec2> = curve.positions().collect();
            io::write_curve_csv(&out, &points)?;
            println!(
                "generate: wrote {} points to {}",
                points.len(),
                out.display()
            );
            Ok(())
        }
        Command::Verify {
            curve,
            force,
            mu,
            v,
            tol,
            closed,
            report,
        } => {
            let force = CentralForce::parse_spec(&force)?;
            let points = io::read_curve_csv(&curve)?;
            let arc = reparam_arclength(&points, closed)?;
            let result = if mu == 0.0 {
                // frictionless law: the friction coefficient drops out
                let cfg = RampConfig::new(1.0, v)?;
                ramp_residual_frictionless(&arc, &force, &cfg)?
            } else {
                let cfg = RampConfig::new(mu, v)?;
                ramp_residual(&arc, &force, &cfg)?
            };
            let pass = result.max_residual < tol;
            match &report {
                Some(path) => {
                    io::write_report_json(path, &result)?;
                    println!(
                        "verify: max_residual={} tol={} => {}",
                        result.max_residual,
                        tol,
                        if pass { "ok" } else { "fail" }
                    );
                }
                None => println!("{}", result.to_json()),
            }
            if pass {
                Ok(())
            } else {
                Err(AppError::VerificationFailed)
            }
        }
        Command::Tms {
            input,
            output,
            inverse,
            closed,
        } => {
            if inverse {
                let gamma = io::read_tms_csv(&input)?;
                let curve = tms_inverse(&gamma)?;
                let points: Vec<Vec2> = curve.positions().collect();
                io::write_curve_csv(&output, &points)?;
            } else {
                let points = io::read_curve_csv(&input)?;
                let arc = reparam_arclength(&points, closed)?;
                let gamma = tms_forward(&arc);
                io::write_tms_csv(&output, &gamma)?;
            }
            Ok(())
        }
        Command::Phase {
            mu,
            v,
            bbox,
            seeds,
            h,
            steps,
            out_dir,
        } => {
            let cfg = RampConfig::new(mu, v)?;
            let bbox = parse_bbox(&bbox)?;
            if seeds < 2 {
                return Err(AppError::Usage("need at least 2 seeds".into()));
            }
            if h <= 0.0 {
                return Err(AppError::Usage(format!(
                    "step size must be positive, got {h}"
                )));
            }
            let trajectories = phase_portrait(&cfg, &bbox, seeds, None, h, steps);
            let files = io::write_phase_bundle(&out_dir, &trajectories)?;
            println!(
                "phase: wrote {} trajectories to {}",
                files.len(),
                out_dir.display()
            );
            Ok(())
        }
        Command::Classify { mu, v } => {
            let cfg = RampConfig::new(mu, v)?;
            println!("{}", classify_asymptotics(&cfg).name());
            Ok(())
        }
        Command::Plot { inputs, out, size } => {
            if inputs.is_empty() {
                return Err(AppError::Usage("plot needs at least one input file".into()));
            }
            let (width, height) = parse_size(&size)?;
            let mut polylines = Vec::new();
            for input in &inputs {
                load_polylines(input, &mut polylines)?;
            }
            let svg = plot::render_svg(&polylines, width, height);
            std::fs::write(&out, svg).map_err(|e| AppError::Data(e.to_string()))?;
            println!("plot: wrote {}", out.display());
            Ok(())
        }
    }
}

fn parse_bbox(s: &str) -> Result<BBox, AppError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| AppError::Usage(format!("bad bbox `{s}`, expected x0,y0,x1,y1")))?;
    if parts.len() != 4
        || parts.iter().any(|p| !p.is_finite())
        || parts[2] <= parts[0]
        || parts[3] <= parts[1]
    {
        return Err(AppError::Usage(format!(
            "bad bbox `{s}`, expected x0,y0,x1,y1"
        )));
    }
    Ok(BBox::new(
        Vec2::new(parts[0], parts[1]),
        Vec2::new(parts[2], parts[3]),
    ))
}

fn parse_size(s: &str) -> Result<(u32, u32), AppError> {
    let bad = || AppError::Usage(format!("bad size `{s}`, expected WxH"));
    let (w, h) = s.split_once('x').ok_or_else(bad)?;
    let w: u32 = w.trim().parse().map_err(|_| bad())?;
    let h: u32 = h.trim().parse().map_err(|_| bad())?;
    if w == 0 || h == 0 {
        return Err(bad());
    }
    Ok((w, h))
}

/// Load one plottable file into (possibly several) polylines.
fn load_polylines(path: &Path, out: &mut Vec<Vec<(f64, f64)>>) -> Result<(), AppError> {
    if path.extension().and_then(|e| e.to_str()) == Some("json") {
        for file in io::read_phase_index(path)? {
            let rows = io::read_trajectory_csv(&file)?;
            out.push(rows.into_iter().map(|(_, p1, p2)| (p1, p2)).collect());
        }
        return Ok(());
    }
    let header = first_line(path)?;
    match io::detect_csv_kind(&header) {
        Some(CsvKind::Curve) => {
            let pts = io::read_curve_csv(path)?;
            out.push(pts.into_iter().map(|p| (p.x, p.y)).collect());
        }
        Some(CsvKind::Tms) => {
            let gamma = io::read_tms_csv(path)?;
            out.push(gamma.points().iter().map(|p| (p.x, p.y)).collect());
        }
        Some(CsvKind::Trajectory) => {
            let rows = io::read_trajectory_csv(path)?;
            out.push(rows.into_iter().map(|(_, p1, p2)| (p1, p2)).collect());
        }
        None => {
            return Err(AppError::Data(format!(
                "{}: unrecognized header `{header}`",
                path.display()
            )))
        }
    }
    Ok(())
}

fn first_line(path: &Path) -> Result<String, AppError> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| AppError::Data(format!("{}: {e}", path.display())))?;
    Ok(content.lines().next().unwrap_or_default().to_string())
}
