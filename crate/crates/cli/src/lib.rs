//! Command-line front end: CSV traces and JSON reports for every analysis and
//! verification operation of `mingraph`.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mingraph::analysis::{
    asymptotic_angle, check_univalence, geometric_radii, growth_order, trace_boundary,
    GrowthReport, DEFAULT_POINTS_PER_DECADE, DEFAULT_R_MAX, DEFAULT_R_MIN, DEFAULT_WINDOW,
};
use mingraph::verify::{
    catenoid_barrier, check_linear_upper_bound, check_log_lower_bound, msq_residual,
    order_floor_holds, theorem_a_bound, TheoremABound,
};
use mingraph::{Error, ExampleFamily, C64};
use serde::Serialize;
use serde_json::json;

pub const SCHEMA_VERSION: &str = "1";

/// Which subcommand exposes each library operation.
pub const COVERAGE: &[(&str, &str)] = &[
    ("analysis::trace_boundary", "trace"),
    ("analysis::boundary_grid", "trace"),
    ("analysis::growth_order", "order"),
    ("analysis::max_on_circle", "order"),
    ("analysis::geometric_radii", "order"),
    ("numerics::fit_power_law", "order"),
    ("analysis::asymptotic_angle", "angle"),
    ("analysis::check_univalence", "univalence"),
    ("weierstrass::jacobian", "univalence"),
    ("verify::msq_residual", "residual"),
    ("verify::mean_curvature_residual", "residual"),
    ("analysis::preimage", "residual"),
    ("analysis::height_at", "residual"),
    ("numerics::newton_invert", "residual"),
    ("verify::check_log_lower_bound", "bounds"),
    ("verify::check_linear_upper_bound", "bounds"),
    ("verify::catenoid_barrier", "bounds"),
    ("verify::theorem_a_bound", "bounds"),
    ("verify::verify_order_lower_bound", "bounds"),
    ("examples::family_metadata", "figure1"),
    ("weierstrass::verify_representation", "repr-check"),
    ("weierstrass::weierstrass_data", "repr-check"),
    ("numerics::path_integral", "repr-check"),
];

#[derive(Debug, Parser)]
#[command(name = "mingraph", version, about = "Growth of minimal graphs over half-plane domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Boundary curve t -> z(it) as CSV (t,re_z,im_z).
    Trace(TraceArgs),
    /// Growth scan of M(r) and fitted order.
    Order(OrderArgs),
    /// Angular opening of the image domain at radius --rmax.
    Angle(AngleArgs),
    /// Jacobian sign and boundary monotonicity.
    Univalence(UnivalenceArgs),
    /// Minimal surface equation residual on an interior patch.
    Residual(ResidualArgs),
    /// Logarithmic, linear, comparison and order-floor bounds.
    Bounds(BoundsArgs),
    /// Boundary curves for openings 2π, 7π/4 and 3π/2 plus a manifest.
    Figure1(Figure1Args),
    /// Integrated representation against the closed-form map.
    ReprCheck(ReprArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct FamilyArg {
    /// sector:<γ>, critical:<ρ> or halflog.
    #[arg(long, value_parser = parse_family)]
    pub family: ExampleFamily,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long, default_value_t = DEFAULT_R_MIN)]
    pub rmin: f64,
    #[arg(long, default_value_t = DEFAULT_R_MAX)]
    pub rmax: f64,
    #[arg(long, default_value_t = DEFAULT_POINTS_PER_DECADE)]
    pub points_per_decade: usize,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 100.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 2001)]
    pub n: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    #[command(flatten)]
    pub radii: RadiusArgs,
    /// Relative order tolerance; 3% for critical maps, 2% otherwise.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct AngleArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = DEFAULT_R_MAX)]
    pub rmax: f64,
    /// Relative angle tolerance.
    #[arg(long, default_value_t = 0.01)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct UnivalenceArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    /// Largest |ζ| sampled.
    #[arg(long, default_value_t = 1e4)]
    pub tmax: f64,
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 1.0 / 64.0)]
    pub step: f64,
    /// Largest admissible |residual|.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    #[command(flatten)]
    pub radii: RadiusArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct Figure1Args {
    #[arg(long, default_value_t = 100.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 2001)]
    pub n: usize,
    /// Output directory.
    #[arg(long, default_value = "figure1")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReprArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

fn parse_family(s: &str) -> Result<ExampleFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    CheckFailed = 1,
    Usage = 2,
    Numerical = 3,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "usage error: {m}"),
            Self::Numerical(e) => write!(f, "numerical failure: {e}"),
            Self::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(m) => Self::Usage(m),
            e => Self::Numerical(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            Self::Usage(_) => Status::Usage,
            Self::Numerical(_) | Self::Io(_) => Status::Numerical,
        }
    }
}

type CliResult = std::result::Result<Status, CliError>;

fn status(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::CheckFailed
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> std::io::Result<()> {
    match out {
        Some(p) => write_atomic(p, bytes),
        None => std::io::stdout().write_all(bytes),
    }
}

fn to_json<T: Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(v).expect("serialisable report");
    s.push(b'\n');
    s
}

fn json_only(format: Option<Format>, command: &str) -> std::result::Result<(), CliError> {
    match format {
        Some(Format::Csv) => Err(CliError::Usage(format!("{command} only writes json"))),
        _ => Ok(()),
    }
}

fn family_json(f: &ExampleFamily) -> serde_json::Value {
    json!({ "name": f.to_string(), "definition": f })
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Trace(a) => trace(a),
        Command::Order(a) => order(a),
        Command::Angle(a) => angle(a),
        Command::Univalence(a) => univalence(a),
        Command::Residual(a) => residual(a),
        Command::Bounds(a) => bounds(a),
        Command::Figure1(a) => figure1(a),
        Command::ReprCheck(a) => repr_check(a),
    }
}

fn trace_csv(family: &ExampleFamily, tmax: f64, n: usize) -> std::result::Result<(Vec<u8>, bool), CliError> {
    let m = family.build()?;
    let tr = trace_boundary(&m, tmax, n)?;
    let mut s = String::from("t,re_z,im_z\n");
    for p in &tr.samples {
        s.push_str(&format!("{:e},{:e},{:e}\n", p.t, p.z.re, p.z.im));
    }
    Ok((s.into_bytes(), tr.min_increment > 0.0))
}

fn trace(a: TraceArgs) -> CliResult {
    let f = a.family.family;
    let m = f.build()?;
    match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let (bytes, monotone) = trace_csv(&f, a.tmax, a.n)?;
            emit(&a.out.out, &bytes)?;
            Ok(status(monotone))
        }
        Format::Json => {
            let tr = trace_boundary(&m, a.tmax, a.n)?;
            let pass = tr.min_increment > 0.0;
            let report = json!({
                "schema_version": SCHEMA_VERSION,
                "family": family_json(&f),
                "params": { "tmax": a.tmax, "n": a.n },
                "samples": tr.samples,
                "min_increment": tr.min_increment,
                "pass": pass,
            });
            emit(&a.out.out, &to_json(&report))?;
            Ok(status(pass))
        }
    }
}

fn default_order_tol(f: &ExampleFamily) -> f64 {
    match f {
        ExampleFamily::Critical { .. } => 0.03,
        _ => 0.02,
    }
}

/// Fit window for a scan over `[rmin, rmax]`: drops radii below the default
/// window's lower edge when the scan reaches past it.
fn fit_window(rmin: f64, rmax: f64) -> (f64, f64) {
    let lo = rmin.max(DEFAULT_WINDOW.0);
    if lo < rmax {
        (lo, rmax)
    } else {
        (rmin, rmax)
    }
}

fn growth(f: &ExampleFamily, r: &RadiusArgs) -> std::result::Result<GrowthReport, CliError> {
    if !(r.rmin > 0.0 && r.rmax > r.rmin) {
        return Err(CliError::Usage(format!("need 0 < rmin < rmax, got {} and {}", r.rmin, r.rmax)));
    }
    let m = f.build()?;
    let radii = geometric_radii(r.rmin, r.rmax, r.points_per_decade)?;
    Ok(growth_order(&m, &radii, fit_window(r.rmin, r.rmax))?)
}

fn order(a: OrderArgs) -> CliResult {
    let f = a.family.family;
    let rep = growth(&f, &a.radii)?;
    let tol = a.tol.unwrap_or_else(|| default_order_tol(&f));
    let rel = rep.relative_order_error().unwrap_or(f64::INFINITY);
    let pass = rel <= tol && rep.monotone;
    let bytes = match a.out.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut s = String::from("r,M,re_zeta_star,im_zeta_star\n");
            for ((r, m), z) in rep.radii.iter().zip(&rep.m_values).zip(&rep.argmax_points) {
                s.push_str(&format!("{r:e},{m:e},{:e},{:e}\n", z.re, z.im));
            }
            s.into_bytes()
        }
        Format::Json => {
            let samples: Vec<_> = rep
                .radii
                .iter()
                .zip(&rep.m_values)
                .zip(&rep.argmax_points)
                .map(|((r, m), z)| json!({ "r": r, "M": m, "zeta_star": z }))
                .collect();
            to_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "family": family_json(&f),
                "params": {
                    "rmin": a.radii.rmin,
                    "rmax": a.radii.rmax,
                    "points_per_decade": a.radii.points_per_decade,
                    "tol": tol,
                },
                "window": rep.fit.window,
                "samples": samples,
                "fitted_order": rep.fit.slope,
                "intercept": rep.fit.intercept,
                "max_abs_residual": rep.fit.max_abs_residual,
                "samples_used": rep.fit.samples_used,
                "claimed_order": rep.claimed_order,
                "relative_error": rel,
                "monotone": rep.monotone,
                "pass": pass,
            }))
        }
    };
    emit(&a.out.out, &bytes)?;
    Ok(status(pass))
}

fn angle(a: AngleArgs) -> CliResult {
    json_only(a.out.format, "angle")?;
    let f = a.family.family;
    let m = f.build()?;
    let est = asymptotic_angle(&m, a.rmax)?;
    let beta = f.beta();
    let rel = (est.theta_hat - beta).abs() / beta;
    let pass = rel <= a.tol;
    emit(
        &a.out.out,
        &to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "family": family_json(&f),
            "params": { "r": a.rmax, "tol": a.tol },
            "estimate": est,
            "beta": beta,
            "relative_error": rel,
            "pass": pass,
        })),
    )?;
    Ok(status(pass))
}

fn univalence(a: UnivalenceArgs) -> CliResult {
    json_only(a.out.format, "univalence")?;
    let f = a.family.family;
    let m = f.build()?;
    let rep = check_univalence(&m, a.tmax, a.grid)?;
    emit(
        &a.out.out,
        &to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "family": family_json(&f),
            "params": { "tmax": a.tmax, "grid": a.grid },
            "report": rep,
            "pass": rep.pass,
        })),
    )?;
    Ok(status(rep.pass))
}

// Standard interior patch: centred at z(3), half-width 1/2.
const PATCH_ZETA: f64 = 3.0;
const PATCH_HALF_WIDTH: f64 = 0.5;

fn residual(a: ResidualArgs) -> CliResult {
    let f = a.family.family;
    let m = f.build()?;
    let center = m.eval_map(C64::new(PATCH_ZETA, 0.0))?;
    let grid = msq_residual(&m, center, PATCH_HALF_WIDTH, a.step)?;
    let pass = grid.max_abs <= a.tol;
    let bytes = match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("x,y,residual\n");
            for (x, y, r) in grid.nodes() {
                s.push_str(&format!("{x:e},{y:e},{r:e}\n"));
            }
            s.into_bytes()
        }
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "family": family_json(&f),
            "params": { "step": a.step, "tol": a.tol },
            "patch": grid.patch,
            "max_abs": grid.max_abs,
            "invalid_nodes": grid.invalid_nodes,
            "pass": pass,
        })),
    };
    emit(&a.out.out, &bytes)?;
    Ok(status(pass))
}

fn bounds(a: BoundsArgs) -> CliResult {
    json_only(a.out.format, "bounds")?;
    let f = a.family.family;
    let m = f.build()?;
    let rep = growth(&f, &a.radii)?;
    let radii = &rep.radii;

    let log = check_log_lower_bound(&m, radii)?;
    let catenoid: Vec<_> = radii
        .iter()
        .map(|&r| catenoid_barrier(C64::new(r, 0.0), 1.0).map(|u| json!({ "r": r, "u": u })))
        .collect::<mingraph::Result<_>>()?;

    let (linear, linear_pass, linear_k) = match check_linear_upper_bound(&m, radii) {
        Ok(r) => {
            let (p, k) = (r.pass, r.constant);
            (json!({ "status": "checked", "report": r }), p, Some(k))
        }
        Err(Error::Hypothesis(reason)) => (json!({ "status": "refused", "reason": reason }), true, None),
        Err(e) => return Err(e.into()),
    };

    // Comparison bound: the reflected complement of a sector of opening β is
    // |arg z| <= π - β/2, so α = β/2 with C the observed linear constant.
    let comparison = match (linear_k, f) {
        (Some(k), ExampleFamily::Sector { .. }) => match TheoremABound::new(f.beta() / 2.0, k) {
            Ok(setup) => {
                let rows: Vec<_> = rep
                    .radii
                    .iter()
                    .zip(&rep.m_values)
                    .filter(|(&r, _)| r > setup.x1)
                    .map(|(&r, &mv)| {
                        theorem_a_bound(&setup, r).map(|b| json!({ "x": r, "M": mv, "bound": b, "holds": mv <= b }))
                    })
                    .collect::<mingraph::Result<Vec<_>>>()?;
                let holds = rows.iter().all(|r| r["holds"].as_bool() == Some(true));
                json!({ "status": "checked", "setup": setup, "samples": rows, "pass": holds })
            }
            Err(Error::Hypothesis(reason)) => json!({ "status": "refused", "reason": reason }),
            Err(e) => return Err(e.into()),
        },
        _ => json!({ "status": "refused", "reason": "needs a certified linear growth constant" }),
    };
    let comparison_pass = comparison.get("pass").and_then(|p| p.as_bool()).unwrap_or(true);

    let floor = PI / f.beta();
    let floor_pass = order_floor_holds(rep.fit.slope, f.beta());
    let pass = log.pass && linear_pass && comparison_pass && floor_pass;
    emit(
        &a.out.out,
        &to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "family": family_json(&f),
            "params": {
                "rmin": a.radii.rmin,
                "rmax": a.radii.rmax,
                "points_per_decade": a.radii.points_per_decade,
            },
            "window": rep.fit.window,
            "log_lower": log,
            "catenoid": catenoid,
            "linear_upper": linear,
            "comparison": comparison,
            "order_floor": {
                "fitted_order": rep.fit.slope,
                "floor": floor,
                "pass": floor_pass,
            },
            "pass": pass,
        })),
    )?;
    Ok(status(pass))
}

/// Families drawn by `figure1`, with their output file names.
pub const FIGURE1_CURVES: [(&str, &str); 3] = [
    ("halflog", "halflog.csv"),
    ("sector:1.75", "sector_1.75.csv"),
    ("sector:1.5", "sector_1.5.csv"),
];

fn figure1(a: Figure1Args) -> CliResult {
    let mut curves = Vec::new();
    let mut pass = true;
    for (name, file) in FIGURE1_CURVES {
        let f: ExampleFamily = name.parse()?;
        let (bytes, monotone) = trace_csv(&f, a.tmax, a.n)?;
        write_atomic(&a.out.join(file), &bytes)?;
        pass &= monotone;
        curves.push(json!({
            "family": family_json(&f),
            "file": file,
            "beta": f.beta(),
            "beta_over_pi": f.beta() / PI,
            "claimed_order": f.claimed_order(),
            "boundary_monotone": monotone,
        }));
    }
    let manifest = json!({
        "schema_version": SCHEMA_VERSION,
        "params": { "tmax": a.tmax, "n": a.n },
        "columns": ["t", "re_z", "im_z"],
        "curves": curves,
        "timestamp": null,
    });
    write_atomic(&a.out.join("manifest.json"), &to_json(&manifest))?;
    Ok(status(pass))
}

/// Endpoints for the representation check: five radii on two rays.
pub fn repr_endpoints() -> Vec<C64> {
    let mut out = Vec::new();
    for k in 0..5 {
        let s = 0.3 * (40.0f64 / 0.3).powf(k as f64 / 4.0);
        for theta in [-PI / 4.0, PI / 4.0] {
            out.push(C64::from_polar(s, theta));
        }
    }
    out
}

const REPR_TOL: f64 = 1e-8;

fn repr_check(a: ReprArgs) -> CliResult {
    json_only(a.out.format, "repr-check")?;
    let f = a.family.family;
    let m = f.build()?;
    let rows = repr_endpoints()
        .into_iter()
        .map(|z| m.verify_representation(z, a.tol))
        .collect::<mingraph::Result<Vec<_>>>()?;
    let worst = rows.iter().map(|r| r.max()).fold(0.0, f64::max);
    let pass = worst <= REPR_TOL;
    emit(
        &a.out.out,
        &to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "family": family_json(&f),
            "params": { "tol": a.tol, "threshold": REPR_TOL },
            "samples": rows,
            "max_residual": worst,
            "pass": pass,
        })),
    )?;
    Ok(status(pass))
}
