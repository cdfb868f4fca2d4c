//! Command-line front end: deterministic reference curves, Monte Carlo
//! runs, and exact-vs-MC comparison, all emitting CSV data plus a JSON
//! manifest describing the run.
//!
//! Exit codes: 0 success, 2 invalid arguments or unreadable input,
//! 3 tolerance/convergence failure, 4 comparison gate failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimators::{
    estimate_fixed_time_kpoint, estimate_local_real_density, estimate_modified_density_two_time,
    estimate_real_count, McConfig,
};
use crate::exact::{
    modified_density_finite_n, modified_density_limit, spin_corr_limit, ScaledLagParams,
    TwoTimeParams,
};
use crate::pfaffian::{
    fixed_time_modified_density, fixed_time_spin_correlation, mc_group_integral, vandermonde_ln,
    Convention, Involution, OrderedPoints, SkewMatrix,
};
use crate::quad::QuadratureConfig;
use crate::rng::SeedSpec;

pub const SEED_ENV: &str = "GINEVO_SEED";
pub const WORKERS_ENV: &str = "GINEVO_WORKERS";

/// Evaluation grid parsed from `start:stop:step`: inclusive of `start`,
/// exclusive of `stop` (up to a floating tolerance on the step count).
#[derive(Debug, Clone)]
pub struct Grid {
    pub points: Vec<f64>,
    pub step: f64,
}

impl std::str::FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::invalid(format!(
                "grid '{s}' must have the form start:stop:step"
            )));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| {
                p.parse::<f64>()
                    .map_err(|_| Error::invalid(format!("grid '{s}': '{p}' is not a number")))
            })
            .collect::<Result<_>>()?;
        let (start, stop, step) = (nums[0], nums[1], nums[2]);
        if !(step > 0.0) || !(stop >= start) {
            return Err(Error::invalid(format!(
                "grid '{s}' needs stop >= start and step > 0"
            )));
        }
        let count = (((stop - start) / step) - 1e-9).floor().max(0.0) as usize;
        let points = (0..=count).map(|k| start + k as f64 * step).collect();
        Ok(Grid { points, step })
    }
}

/// Comma-separated point list; a newtype so clap treats the whole list as
/// one value rather than repeated occurrences.
#[derive(Debug, Clone)]
struct PointList(Vec<f64>);

fn parse_points(s: &str) -> Result<PointList> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("--points: '{p}' is not a number")))
        })
        .collect::<Result<Vec<f64>>>()
        .map(PointList)
}

/// Decimal formatting with 17 significant digits (round-trip safe for f64).
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    Physical,
    Rescaled,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Physical => Convention::Physical,
            ConventionArg::Rescaled => Convention::Rescaled,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LawArg {
    Density,
    Spin,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InvolutionArg {
    Jt,
    Plain,
}

impl From<InvolutionArg> for Involution {
    fn from(k: InvolutionArg) -> Self {
        match k {
            InvolutionArg::Jt => Involution::JtFlavor,
            InvolutionArg::Plain => Involution::PlainFlavor,
        }
    }
}

#[derive(Debug, Args)]
struct McArgs {
    #[arg(long)]
    samples: usize,
    /// Master seed; defaults to the GINEVO_SEED environment variable or 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; defaults to the GINEVO_WORKERS environment variable
    /// or the number of cores. Results do not depend on this value.
    #[arg(long)]
    workers: Option<usize>,
}

impl McArgs {
    fn seed_spec(&self) -> Result<SeedSpec> {
        let master = match self.seed {
            Some(s) => s,
            None => match std::env::var(SEED_ENV) {
                Ok(v) => v
                    .parse()
                    .map_err(|_| Error::invalid(format!("{SEED_ENV} must be an integer")))?,
                Err(_) => 0,
            },
        };
        Ok(SeedSpec::new(master, 0))
    }

    fn install_pool(&self) -> Result<()> {
        let workers = match self.workers {
            Some(w) => Some(w),
            None => match std::env::var(WORKERS_ENV) {
                Ok(v) => Some(
                    v.parse()
                        .map_err(|_| Error::invalid(format!("{WORKERS_ENV} must be an integer")))?,
                ),
                Err(_) => None,
            },
        };
        if let Some(w) = workers {
            if w == 0 {
                return Err(Error::invalid("--workers must be positive"));
            }
            // Ignore the error if a global pool already exists (e.g. when
            // several commands run in one process); determinism does not
            // depend on the pool size.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
        }
        Ok(())
    }

    fn config(&self) -> Result<McConfig> {
        McConfig::new(self.samples, self.seed_spec()?)
    }
}

#[derive(Debug, Parser)]
#[command(name = "ginevo", version, about = "Real-eigenvalue statistics of matrix Brownian motion", disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact finite-dimension two-time modified density on an x grid.
    ExactTwoTime {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        tau: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, value_parser = clap::value_parser!(Grid), allow_hyphen_values = true)]
        x_grid: Grid,
        #[arg(long)]
        out: PathBuf,
        /// Optional gnuplot-ready two-column data file.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Limiting two-time modified density (y = 0) under the scaled lag.
    LimitTwoTime {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        big_t: f64,
        #[arg(long, value_parser = clap::value_parser!(Grid), allow_hyphen_values = true)]
        x_grid: Grid,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Limiting two-time spin correlation on an x grid.
    SpinCorr {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        big_t: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, value_parser = clap::value_parser!(Grid), allow_hyphen_values = true)]
        x_grid: Grid,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Equal-time Pfaffian law (modified density or spin correlation) at a
    /// fixed point configuration.
    FixedTimePfaffian {
        /// Comma-separated increasing points, even count.
        #[arg(long, value_parser = parse_points, allow_hyphen_values = true)]
        points: PointList,
        #[arg(long, value_enum, default_value = "physical")]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value = "density")]
        law: LawArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo two-time modified density on a (y, x) grid of bin
    /// centers; the grid step is the bin width.
    McTwoTime {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        tau: f64,
        #[arg(long, value_parser = clap::value_parser!(Grid), allow_hyphen_values = true)]
        y_grid: Grid,
        #[arg(long, value_parser = clap::value_parser!(Grid), allow_hyphen_values = true)]
        x_grid: Grid,
        #[command(flatten)]
        mc: McArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo equal-time K-point modified density in disjoint windows.
    McFixedTime {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: f64,
        /// Comma-separated increasing window centers, even count.
        #[arg(long, value_parser = parse_points, allow_hyphen_values = true)]
        centers: PointList,
        #[arg(long)]
        width: f64,
        #[command(flatten)]
        mc: McArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo mean real-eigenvalue count and local density near 0.
    McCounts {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 0.5)]
        half_width: f64,
        #[command(flatten)]
        mc: McArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Haar-unitary group average against the Pfaffian prediction.
    HaarCheck {
        /// Comma-separated increasing points, even count.
        #[arg(long, value_parser = parse_points, allow_hyphen_values = true)]
        points: PointList,
        #[arg(long, value_enum, default_value = "jt")]
        involution: InvolutionArg,
        #[command(flatten)]
        mc: McArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Join an exact CSV and an MC CSV on their (x, y) grid and gate on
    /// per-point z-scores.
    Compare {
        #[arg(long)]
        exact: PathBuf,
        #[arg(long)]
        mc: PathBuf,
        #[arg(long, default_value_t = 3.0)]
        sigma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Serialize)]
struct RunManifest {
    schema: u32,
    command: String,
    params: serde_json::Value,
    seed: Option<SeedSpec>,
    version: String,
    unix_time_secs: u64,
    wall_secs: f64,
    output: String,
}

fn write_manifest(
    out: &Path,
    command: &str,
    params: serde_json::Value,
    seed: Option<SeedSpec>,
    started: Instant,
) -> Result<()> {
    let manifest = RunManifest {
        schema: 1,
        command: command.to_string(),
        params,
        seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        unix_time_secs: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        wall_secs: started.elapsed().as_secs_f64(),
        output: out.display().to_string(),
    };
    let path = manifest_path(out);
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(())
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn write_plot(path: &Option<PathBuf>, xs: &[f64], vs: &[f64]) -> Result<()> {
    if let Some(p) = path {
        let mut s = String::new();
        for (x, v) in xs.iter().zip(vs) {
            let _ = writeln!(s, "{} {}", fmt17(*x), fmt17(*v));
        }
        write_file(p, &s)?;
    }
    Ok(())
}

/// Executes a parsed command; returns `Ok(exit_code)` for gate outcomes and
/// `Err` for argument or numeric failures.
fn execute(cli: Cli) -> Result<i32> {
    let started = Instant::now();
    match cli.command {
        Command::ExactTwoTime {
            n,
            t,
            tau,
            y,
            x_grid,
            out,
            plot,
        } => {
            let p = TwoTimeParams::new(n, t, tau)?;
            let qcfg = QuadratureConfig::default();
            let mut csv = String::from("x,y,t,tau,n,value,quad_err\n");
            let mut vals = Vec::new();
            for &x in &x_grid.points {
                let r = modified_density_finite_n(&p, y, x, &qcfg)?;
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{}",
                    fmt17(x),
                    fmt17(y),
                    fmt17(t),
                    fmt17(tau),
                    n,
                    fmt17(r.value),
                    fmt17(r.error)
                );
                vals.push(r.value);
            }
            write_file(&out, &csv)?;
            write_plot(&plot, &x_grid.points, &vals)?;
            write_manifest(
                &out,
                "exact-two-time",
                serde_json::json!({"n": n, "t": t, "tau": tau, "y": y,
                    "x_grid": {"points": x_grid.points.len(), "step": x_grid.step}}),
                None,
                started,
            )?;
            Ok(0)
        }
        Command::LimitTwoTime {
            t,
            big_t,
            x_grid,
            out,
            plot,
        } => {
            let p = ScaledLagParams::new(t, big_t)?;
            let mut csv = String::from("x,y,t,tau,n,value,quad_err\n");
            let mut vals = Vec::new();
            for &x in &x_grid.points {
                let v = modified_density_limit(&p, x);
                let _ = writeln!(
                    csv,
                    "{},{},{},{},0,{},0",
                    fmt17(x),
                    fmt17(0.0),
                    fmt17(t),
                    fmt17(big_t),
                    fmt17(v)
                );
                vals.push(v);
            }
            write_file(&out, &csv)?;
            write_plot(&plot, &x_grid.points, &vals)?;
            write_manifest(
                &out,
                "limit-two-time",
                serde_json::json!({"t": t, "big_t": big_t,
                    "x_grid": {"points": x_grid.points.len(), "step": x_grid.step}}),
                None,
                started,
            )?;
            Ok(0)
        }
        Command::SpinCorr {
            t,
            big_t,
            y,
            x_grid,
            out,
            plot,
        } => {
            let p = ScaledLagParams::new(t, big_t)?;
            let mut csv = String::from("x,y,t,tau,n,value,quad_err\n");
            let mut vals = Vec::new();
            for &x in &x_grid.points {
                let v = spin_corr_limit(&p, y, x);
                let _ = writeln!(
                    csv,
                    "{},{},{},{},0,{},0",
                    fmt17(x),
                    fmt17(y),
                    fmt17(t),
                    fmt17(big_t),
                    fmt17(v)
                );
                vals.push(v);
            }
            write_file(&out, &csv)?;
            write_plot(&plot, &x_grid.points, &vals)?;
            write_manifest(
                &out,
                "spin-corr",
                serde_json::json!({"t": t, "big_t": big_t, "y": y,
                    "x_grid": {"points": x_grid.points.len(), "step": x_grid.step}}),
                None,
                started,
            )?;
            Ok(0)
        }
        Command::FixedTimePfaffian {
            points,
            convention,
            law,
            out,
        } => {
            let points = points.0;
            let conv: Convention = convention.into();
            let value = match law {
                LawArg::Density => {
                    let pts = OrderedPoints::new(points.clone())?;
                    fixed_time_modified_density(&pts, conv)
                }
                LawArg::Spin => fixed_time_spin_correlation(&points, conv)?,
            };
            let joined = points
                .iter()
                .map(|p| fmt17(*p))
                .collect::<Vec<_>>()
                .join(";");
            let csv = format!(
                "points,convention,law,value\n{},{:?},{:?},{}\n",
                joined,
                conv,
                law,
                fmt17(value)
            );
            write_file(&out, &csv)?;
            write_manifest(
                &out,
                "fixed-time-pfaffian",
                serde_json::json!({"points": points, "convention": format!("{conv:?}"),
                    "law": format!("{law:?}")}),
                None,
                started,
            )?;
            Ok(0)
        }
        Command::McTwoTime {
            n,
            t,
            tau,
            y_grid,
            x_grid,
            mc,
            out,
        } => {
            mc.install_pool()?;
            let cfg = mc.config()?;
            let edges = |g: &Grid| -> Vec<f64> {
                let mut e: Vec<f64> = g.points.iter().map(|c| c - 0.5 * g.step).collect();
                e.push(g.points[g.points.len() - 1] + 0.5 * g.step);
                e
            };
            let grid = estimate_modified_density_two_time(
                n,
                t,
                tau,
                &edges(&y_grid),
                &edges(&x_grid),
                &cfg,
            )?;
            let mut csv = String::from("x,y,t,tau,n,value,stderr\n");
            for (iy, &yc) in y_grid.points.iter().enumerate() {
                for (ix, &xc) in x_grid.points.iter().enumerate() {
                    let c = grid.cell(iy, ix);
                    let _ = writeln!(
                        csv,
                        "{},{},{},{},{},{},{}",
                        fmt17(xc),
                        fmt17(yc),
                        fmt17(t),
                        fmt17(tau),
                        n,
                        fmt17(c.mean),
                        fmt17(c.stderr)
                    );
                }
            }
            write_file(&out, &csv)?;
            write_manifest(
                &out,
                "mc-two-time",
                serde_json::json!({"n": n, "t": t, "tau": tau, "samples": cfg.samples,
                    "y_grid": {"points": y_grid.points.len(), "step": y_grid.step},
                    "x_grid": {"points": x_grid.points.len(), "step": x_grid.step}}),
                Some(cfg.seed),
                started,
            )?;
            Ok(0)
        }
        Command::McFixedTime {
            n,
            t,
            centers,
            width,
            mc,
            out,
        } => {
            let centers = centers.0;
            mc.install_pool()?;
            let cfg = mc.config()?;
            let est = estimate_fixed_time_kpoint(n, t, &centers, width, &cfg)?;
            let scaled = OrderedPoints::new(centers.clone())?;
            let phys = fixed_time_modified_density(&scaled, Convention::Physical);
            let resc = fixed_time_modified_density(&scaled, Convention::Rescaled);
            let joined = centers
                .iter()
                .map(|p| fmt17(*p))
                .collect::<Vec<_>>()
                .join(";");
            let csv = format!(
                "points,width,n,t,samples,value,stderr,prediction_physical,prediction_rescaled\n{},{},{},{},{},{},{},{},{}\n",
                joined,
                fmt17(width),
                n,
                fmt17(t),
                est.samples,
                fmt17(est.mean),
                fmt17(est.stderr),
                fmt17(phys),
                fmt17(resc)
            );
            write_file(&out, &csv)?;
            write_manifest(
                &out,
                "mc-fixed-time",
                serde_json::json!({"n": n, "t": t, "centers": centers, "width": width,
                    "samples": cfg.samples}),
                Some(cfg.seed),
                started,
            )?;
            Ok(0)
        }
        Command::McCounts {
            n,
            t,
            half_width,
            mc,
            out,
        } => {
            mc.install_pool()?;
            let cfg = mc.config()?;
            let count = estimate_real_count(n, t, &cfg)?;
            let density = estimate_local_real_density(n, t, half_width, &cfg)?;
            let count_ref = (2.0 * n as f64 / std::f64::consts::PI).sqrt();
            let dens_ref = 1.0 / (std::f64::consts::PI * t).sqrt();
            let csv = format!(
                "quantity,n,t,value,stderr,reference\ncount,{},{},{},{},{}\ndensity,{},{},{},{},{}\n",
                n,
                fmt17(t),
                fmt17(count.mean),
                fmt17(count.stderr),
                fmt17(count_ref),
                n,
                fmt17(t),
                fmt17(density.mean),
                fmt17(density.stderr),
                fmt17(dens_ref)
            );
            write_file(&out, &csv)?;
            write_manifest(
                &out,
                "mc-counts",
                serde_json::json!({"n": n, "t": t, "half_width": half_width,
                    "samples": cfg.samples}),
                Some(cfg.seed),
                started,
            )?;
            Ok(0)
        }
        Command::HaarCheck {
            points,
            involution,
            mc,
            out,
        } => {
            let points = points.0;
            mc.install_pool()?;
            let cfg = mc.config()?;
            let kind: Involution = involution.into();
            let (mean, stderr) = mc_group_integral(&points, kind, cfg.samples, &cfg.seed)?;
            let (vs, vl) = vandermonde_ln(&points);
            let k = points.len();
            let kernel = SkewMatrix::from_upper(k, |i, j| {
                let d = points[i] - points[j];
                d * (-d * d).exp()
            })?;
            let pf = kernel.pfaffian_value();
            let ratio = mean * vs * vl.exp() / pf;
            let joined = points
                .iter()
                .map(|p| fmt17(*p))
                .collect::<Vec<_>>()
                .join(";");
            let csv = format!(
                "points,samples,mean,stderr,pfaffian_over_vandermonde,ratio\n{},{},{},{},{},{}\n",
                joined,
                cfg.samples,
                fmt17(mean),
                fmt17(stderr),
                fmt17(pf / (vs * vl.exp())),
                fmt17(ratio)
            );
            write_file(&out, &csv)?;
            write_manifest(
                &out,
                "haar-check",
                serde_json::json!({"points": points, "involution": format!("{kind:?}"),
                    "samples": cfg.samples}),
                Some(cfg.seed),
                started,
            )?;
            Ok(0)
        }
        Command::Compare {
            exact,
            mc,
            sigma,
            out,
        } => {
            let gate = compare_files(&exact, &mc, sigma, out.as_deref())?;
            Ok(if gate { 0 } else { 4 })
        }
    }
}

struct CsvRow {
    x: f64,
    y: f64,
    value: f64,
    spread: f64,
}

fn read_value_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::invalid(format!("{}: empty file", path.display())))?;
    let cols: Vec<&str> = header.split(',').collect();
    let find = |name: &str| -> Result<usize> {
        cols.iter()
            .position(|c| *c == name)
            .ok_or_else(|| Error::invalid(format!("{}: missing column '{name}'", path.display())))
    };
    let (ix, iy, iv) = (find("x")?, find("y")?, find("value")?);
    let is = find("stderr").or_else(|_| find("quad_err"))?;
    let mut rows = Vec::new();
    for (ln, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let get = |i: usize| -> Result<f64> {
            fields
                .get(i)
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| {
                    Error::invalid(format!("{}: bad row {}", path.display(), ln + 2))
                })
        };
        rows.push(CsvRow {
            x: get(ix)?,
            y: get(iy)?,
            value: get(iv)?,
            spread: get(is)?,
        });
    }
    Ok(rows)
}

/// Joins the two files on (x, y) and checks every |z| against the gate;
/// returns `Ok(true)` when all joined points pass.
fn compare_files(exact: &Path, mc: &Path, sigma: f64, out: Option<&Path>) -> Result<bool> {
    if !(sigma > 0.0) {
        return Err(Error::invalid("--sigma must be positive"));
    }
    let exact_rows = read_value_csv(exact)?;
    let mc_rows = read_value_csv(mc)?;
    let key_tol = 1e-9;
    let mut csv = String::from("x,y,exact,mc,stderr,z\n");
    let mut joined = 0usize;
    let mut worst: f64 = 0.0;
    for m in &mc_rows {
        let Some(e) = exact_rows
            .iter()
            .find(|e| (e.x - m.x).abs() <= key_tol && (e.y - m.y).abs() <= key_tol)
        else {
            continue;
        };
        joined += 1;
        let z = if m.spread > 0.0 {
            (m.value - e.value) / m.spread
        } else if m.value == e.value {
            0.0
        } else {
            f64::INFINITY
        };
        worst = worst.max(z.abs());
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            fmt17(m.x),
            fmt17(m.y),
            fmt17(e.value),
            fmt17(m.value),
            fmt17(m.spread),
            fmt17(z)
        );
    }
    if joined == 0 {
        return Err(Error::invalid("compare: the two grids share no points"));
    }
    if let Some(p) = out {
        write_file(p, &csv)?;
    }
    println!("compare: {joined} points joined, worst |z| = {worst:.3}, gate = {sigma}");
    Ok(worst <= sigma)
}

/// Entry point: parses `argv`, runs the command, and maps errors to the
/// documented exit codes.
pub fn run<I>(argv: I) -> i32
where
    I: IntoIterator,
    I::Item: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // Help/version requests are success; everything else is an
            // argument error.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ToleranceFailure { .. } | Error::NumericalFailure { .. } => 3,
                _ => 2,
            }
        }
    }
}
