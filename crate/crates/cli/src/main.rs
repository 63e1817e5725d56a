//! `curve-approx`: validate sampling kernels, approximate curves with discrete
//! operators, trace curves out of PBM images, upscale them and smooth point
//! sets.

mod config;
mod io;
mod specimen;
mod svg;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use curve_approx::curves::{apply_operator, scale, sup_error, Curve, CurveError, ExtensionStrategy};
use curve_approx::imagecurve::{
    image_to_curve, load_pbm, polygon_curve, save_pbm, smooth_from_points, trace, upscale, BinaryImage,
    CoordVariant, ImageCurveError, PbmError,
};
use curve_approx::kernels::{validate_kernel, KernelError, TailProbe};
use curve_approx::operators::{DEFAULT_DECAY_TOLERANCE, DEFAULT_TOLERANCE};
use curve_approx::{OperatorError, Support};
use serde_json::json;

use config::{JobConfig, KernelSpec, OperatorSpec};
use svg::Layer;

/// Probe points for `validate`: `t = i/50` on `[0, 1]`.
const VALIDATION_GRID: usize = 51;
/// `n` used by `approx` when none is given.
const DEFAULT_APPROX_N: u32 = 50;

#[derive(Parser)]
#[command(name = "curve-approx", version, about = "Discrete operator approximation of curves and image curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a sampling kernel's partition of unity, absolute sums and tails
    Validate(ValidateArgs),
    /// Approximate a built-in or tabulated curve and report the sup error
    Approx(ApproxArgs),
    /// Trace the curve of a PBM image into a chain code
    Trace(TraceArgs),
    /// Redraw the curve of a PBM image at a higher resolution
    Upscale(UpscaleArgs),
    /// Smooth the polygon through a few points
    Smooth(SmoothArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// fejer, bspline<m>, or bspline with --order
    #[arg(long)]
    kernel: KernelSpec,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    order: Option<u32>,
    /// Allowed partition defect; 1e-10 for compact kernels, 1e-6 otherwise
    #[arg(long, value_parser = positive)]
    tol: Option<f64>,
}

#[derive(Args)]
struct JobArgs {
    /// sampling-fejer, sampling-bspline<m>, szasz, baskakov or bernstein
    #[arg(long, default_value = "sampling-bspline3")]
    operator: OperatorSpec,
    /// B-spline order for `--operator sampling-bspline`
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    order: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,
    /// constant-pad, translate-and-pad, periodic or affine-remap
    #[arg(long)]
    strategy: Option<ExtensionStrategy>,
    /// Truncation tolerance of the operator sums
    #[arg(long, value_parser = positive)]
    tol: Option<f64>,
    /// Number of output samples
    #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u64).range(2..))]
    grid: u64,
}

impl JobArgs {
    fn config(&self) -> JobConfig {
        JobConfig {
            operator: self.operator.clone(),
            order: self.order,
            n: self.n,
            strategy: self.strategy,
            tolerance: self.tol,
            grid: self.grid as usize,
        }
    }
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["curve", "input"])))]
struct ApproxArgs {
    /// spiral, helix, figure or constant
    #[arg(long)]
    curve: Option<String>,
    /// CSV table `t, x1, …, xd`
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Treat the tabulated curve as closed
    #[arg(long, requires = "input")]
    closed: bool,
    #[command(flatten)]
    job: JobArgs,
    /// CSV samples of the approximant (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// JSON chain code (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV coordinate sequences `j, u, v`
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct UpscaleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_parser = positive)]
    factor: f64,
    #[command(flatten)]
    job: JobArgs,
    /// Output PBM (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct SmoothArgs {
    /// CSV points `x, y`
    #[arg(long = "in")]
    input: PathBuf,
    /// Join the last point back to the first
    #[arg(long)]
    closed: bool,
    #[command(flatten)]
    job: JobArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(v) => Err(format!("must be positive and finite, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

/// Why a command failed; decides the exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or names (exit 2).
    Usage(String),
    /// Well-formed request that the inputs cannot satisfy (exit 1).
    Domain(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => f.write_str(m),
        }
    }
}

macro_rules! domain_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Domain(e.to_string())
            }
        }
    )*};
}
domain_failure!(OperatorError, CurveError, ImageCurveError, PbmError, KernelError);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate(a) => validate(a),
        Command::Approx(a) => approx(a),
        Command::Trace(a) => trace_cmd(a),
        Command::Upscale(a) => upscale_cmd(a),
        Command::Smooth(a) => smooth(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(match f {
                Failure::Domain(_) => 1,
                Failure::Usage(_) => 2,
            })
        }
    }
}

fn validate(args: ValidateArgs) -> Result<(), Failure> {
    let kernel = args.kernel.build(args.order)?;
    let tol = args.tol.unwrap_or(match kernel.support() {
        Support::Compact { .. } => DEFAULT_TOLERANCE,
        Support::PolynomialDecay { .. } => DEFAULT_DECAY_TOLERANCE,
    });
    let grid: Vec<f64> = (0..VALIDATION_GRID).map(|i| i as f64 / (VALIDATION_GRID - 1) as f64).collect();
    let report = validate_kernel(&kernel, &grid, tol)?;

    println!("kernel            {}", kernel.name());
    println!("tolerance         {tol:e}");
    println!("partition defect  {:e}", report.max_partition_defect);
    println!("sup abs sum       {:.12}", report.abs_sum_sup);
    println!("truncation bound  {:e}", report.truncation_bound);
    println!("continuity jump   {:e}", report.max_continuity_jump);
    for (TailProbe { delta, n }, mass) in &report.tail_mass {
        println!("tail mass δ={delta} n={n:<4} {mass:e}");
    }
    if report.max_partition_defect <= tol {
        println!("ok");
        Ok(())
    } else {
        Err(Failure::Domain(format!(
            "partition defect {:e} exceeds tolerance {tol:e}",
            report.max_partition_defect
        )))
    }
}

fn approx(args: ApproxArgs) -> Result<(), Failure> {
    let job = args.job.config();
    let gamma = match (&args.curve, &args.input) {
        (Some(name), _) => specimen::builtin(name)?,
        (None, Some(path)) => specimen::from_table(path, args.closed)?,
        (None, None) => unreachable!("clap requires a curve source"),
    };
    let family = job.family()?;
    let strategy = job.strategy(&family, gamma.is_closed())?;
    let n = job.n_or(DEFAULT_APPROX_N);
    let approx = apply_operator(&family, &gamma, n, strategy)?;
    let err = sup_error(&gamma, &approx, job.grid)?;

    emit_samples(&approx, job.grid, args.out.as_deref())?;
    if let Some(path) = &args.svg {
        write_svg(path, &gamma, &approx, job.grid, false)?;
    }
    eprintln!(
        "operator {} n {n} strategy {strategy} tolerance {:e} sup_error {err:e}",
        job.operator,
        family.tolerance()
    );
    Ok(())
}

fn trace_cmd(args: TraceArgs) -> Result<(), Failure> {
    let image = read_pbm(&args.input)?;
    let (chain, seqs) = trace(&image)?;
    let doc = json!({
        "start": chain.start,
        "codes": chain.codes,
        "closed": chain.closed,
        "u": seqs.u,
        "v": seqs.v,
    });
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Domain(e.to_string()))?;
    text.push('\n');
    io::emit(args.out.as_deref(), text.as_bytes())?;
    if let Some(path) = &args.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        let table = std::iter::once(["j".to_string(), "u".into(), "v".into()])
            .chain((0..seqs.len()).map(|j| [j.to_string(), seqs.u[j].to_string(), seqs.v[j].to_string()]));
        for row in table {
            w.write_record(&row).map_err(|e| Failure::Domain(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::Domain(e.to_string()))?;
        io::write_atomic(path, &bytes)?;
    }
    Ok(())
}

fn upscale_cmd(args: UpscaleArgs) -> Result<(), Failure> {
    let job = args.job.config();
    let image = read_pbm(&args.input)?;
    let (chain, seqs) = trace(&image)?;
    let family = job.family()?;
    let strategy = job.strategy(&family, chain.closed)?;
    let n = job.n_or(4 * seqs.len() as u32);
    let up = upscale(&image, args.factor, &family, n, strategy)?;

    io::emit(args.out.as_deref(), &save_pbm(&up))?;
    if let Some(path) = &args.svg {
        let polygon = image_to_curve(&image, CoordVariant::PiecewiseLinear)?;
        let smooth = apply_operator(&family, &polygon, n, strategy)?;
        write_svg(path, &scale(&polygon, args.factor), &scale(&smooth, args.factor), job.grid, true)?;
    }
    eprintln!(
        "{}x{} -> {}x{} operator {} n {n} strategy {strategy}",
        image.rows(),
        image.cols(),
        up.rows(),
        up.cols(),
        job.operator
    );
    Ok(())
}

fn smooth(args: SmoothArgs) -> Result<(), Failure> {
    let job = args.job.config();
    let points = io::read_points(&args.input)?;
    let family = job.family()?;
    let strategy = job.strategy(&family, args.closed)?;
    let n = job.n_or(4 * points.len() as u32);
    let approx = smooth_from_points(&points, args.closed, &family, n, strategy)?;

    emit_samples(&approx, job.grid, args.out.as_deref())?;
    if let Some(path) = &args.svg {
        let polygon = polygon_curve(&points, args.closed)?;
        write_svg(path, &polygon, &approx, job.grid, false)?;
    }
    eprintln!("{} points operator {} n {n} strategy {strategy}", points.len(), job.operator);
    Ok(())
}

fn read_pbm(path: &Path) -> Result<BinaryImage, Failure> {
    load_pbm(&io::read(path)?).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn emit_samples(curve: &Curve, grid: usize, out: Option<&Path>) -> Result<(), Failure> {
    let mut bytes = Vec::new();
    curve.write_csv(grid, &mut bytes).map_err(|e| Failure::Domain(e.to_string()))?;
    io::emit(out, &bytes)
}

/// Draws the first two coordinates of both curves.
fn write_svg(path: &Path, original: &Curve, approx: &Curve, grid: usize, y_down: bool) -> Result<(), Failure> {
    let planar = |c: &Curve| -> Vec<(f64, f64)> {
        c.sample_table(grid)
            .into_iter()
            .map(|row| (row[1], row.get(2).copied().unwrap_or(0.0)))
            .collect()
    };
    let doc = svg::render(
        &[
            Layer { id: "original", stroke: "#1f4e9c", width: 1.5, points: planar(original) },
            Layer { id: "approximant", stroke: "#c8322b", width: 1.5, points: planar(approx) },
        ],
        y_down,
    );
    io::write_atomic(path, doc.as_bytes())
}
