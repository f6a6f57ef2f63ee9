//! `isored`: reductions, spectra and spectral regions from the command line.
//!
//! Exit status is 0 on success, 2 for usage, parse and I/O errors, and 1 for
//! mathematical failures (singular reductions, poles, resonances) or when an
//! inclusion check finds violations.

mod format;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use isored::io::{
    parse_matrix_file, parse_ratfunc, read_network_file, read_raster_csv, write_matrix, write_raster, PgmWindow,
    RasterFormat, DEFAULT_LEVELS,
};
use isored::massspring::{boundary_force, frequency_response, SpringNetwork};
use isored::numerics::Norm;
use isored::reduction::{isospectral_reduce_capped, sequential_reduce_capped};
use isored::regions::{
    check_inclusion, gershgorin_raster, pseudoresonance_raster, pseudospectrum_raster, GridSpec, RasterKind,
    RegionRaster,
};
use isored::wmatrix::{inverse_spectrum, spectral_inverse_capped, spectrum};
use isored::{Error, IndexSet, WMatrix};

use format::{fmt_complex, parse_levels};

#[derive(Parser)]
#[command(
    name = "isored",
    version,
    about = "Isospectral reductions and pseudospectra of matrices over rational functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a matrix over a set of kept indices, optionally through a chain.
    Reduce {
        matrix: PathBuf,
        /// Indices to keep, e.g. 1,2.
        #[arg(long)]
        keep: Option<String>,
        /// Nested index sets separated by '|', e.g. "1,2,3|1,2".
        #[arg(long)]
        chain: Option<String>,
        #[command(flatten)]
        out: MatrixOut,
    },
    /// Print the spectrum (or inverse spectrum) with multiplicities.
    Spectrum {
        matrix: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Spectral inverse (M − λI)^{-1} + λI.
    Specinv {
        matrix: PathBuf,
        #[command(flatten)]
        out: MatrixOut,
    },
    /// Gershgorin-type region raster.
    Gersh {
        matrix: PathBuf,
        #[command(flatten)]
        opts: GershOpts,
    },
    /// Pseudospectrum raster, ‖(M(λ) − λI)^{-1}‖ per grid point.
    Pseudospec {
        matrix: PathBuf,
        #[command(flatten)]
        opts: NormRasterOpts,
    },
    /// Pseudoresonance raster, ‖M(λ) − λI‖ per grid point.
    Pseudores {
        matrix: PathBuf,
        #[command(flatten)]
        opts: NormRasterOpts,
    },
    /// Mass–spring network: build the boundary response and apply an action.
    Spring(SpringArgs),
    /// Check that every member of the inner raster is a member of the outer one.
    CheckInclusion {
        inner: PathBuf,
        outer: PathBuf,
        #[arg(long)]
        eps: f64,
        /// Raster kind of both files: pseudospectrum, pseudoresonance or gershgorin.
        #[arg(long, default_value = "pseudospectrum")]
        kind: String,
    },
}

#[derive(Args)]
struct MatrixOut {
    /// Output matrix file; standard output when omitted.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Largest degree allowed in intermediate rational functions.
    #[arg(long, default_value_t = isored::field::DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
}

#[derive(Args, Clone)]
struct GridOpts {
    /// re_min,re_max,im_min,im_max
    #[arg(long, allow_hyphen_values = true)]
    window: String,
    /// Points per axis as NXxNY.
    #[arg(long, default_value = "200x200")]
    grid: String,
    /// CSV output; standard output when omitted.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Additional PGM image.
    #[arg(long)]
    pgm: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct GershOpts {
    #[command(flatten)]
    grid: GridOpts,
    /// Use the region of the spectral inverse, which encloses the resonances.
    #[arg(long)]
    inverse: bool,
}

#[derive(Args, Clone)]
struct NormRasterOpts {
    #[command(flatten)]
    grid: GridOpts,
    /// Operator norm: 1, 2 or inf.
    #[arg(long, default_value = "2")]
    norm: String,
    /// Tolerances ε whose thresholds 1/ε set the PGM grey-scale window.
    #[arg(long)]
    levels: Option<String>,
}

#[derive(Args)]
struct SpringArgs {
    /// Unit path network with this many nodes.
    #[arg(long, conflicts_with = "network")]
    path: Option<usize>,
    /// Network description file.
    #[arg(long)]
    network: Option<PathBuf>,
    /// Boundary nodes; defaults to all nodes.
    #[arg(long)]
    boundary: Option<String>,
    #[command(subcommand)]
    action: SpringAction,
}

#[derive(Subcommand)]
enum SpringAction {
    /// Write the boundary response matrix R(K; B) in λ = ω².
    Matrix {
        #[command(flatten)]
        out: MatrixOut,
    },
    Spectrum {
        #[arg(long)]
        inverse: bool,
    },
    Specinv {
        #[command(flatten)]
        out: MatrixOut,
    },
    Gersh {
        #[command(flatten)]
        opts: GershOpts,
    },
    Pseudospec {
        #[command(flatten)]
        opts: NormRasterOpts,
    },
    Pseudores {
        #[command(flatten)]
        opts: NormRasterOpts,
    },
    /// Boundary forces for displacement u at angular frequency ω.
    Force {
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
        /// Displacements, e.g. 1,0 or 1,(1+2i).
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
    Violations(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

fn index_set(text: &str) -> CliResult<IndexSet> {
    IndexSet::parse(text).or_else(|e| usage(format!("invalid index set {text:?}: {e}")))
}

/// Parse and I/O errors are reported with the file name.
fn with_path<T>(path: &Path, r: isored::Result<T>) -> CliResult<T> {
    r.map_err(|e| if e.is_math() { Failure::Core(e) } else { Failure::Usage(format!("{}: {e}", path.display())) })
}

fn load_matrix(path: &Path) -> CliResult<WMatrix> {
    with_path(path, parse_matrix_file(path).and_then(|doc| doc.to_matrix()))
}

fn emit_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Core(e.into())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::Core(e.into()))
        }
    }
}

fn parse_window(text: &str) -> CliResult<(f64, f64, f64, f64)> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .or_else(|_| usage(format!("invalid window {text:?}; expected re_min,re_max,im_min,im_max")))?;
    match parts.as_slice() {
        &[a, b, c, d] => Ok((a, b, c, d)),
        _ => usage(format!("window needs four numbers, got {}", parts.len())),
    }
}

fn grid_spec(opts: &GridOpts) -> CliResult<GridSpec> {
    let (a, b, c, d) = parse_window(&opts.window)?;
    let dims: Vec<usize> = opts
        .grid
        .split(['x', 'X'])
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .or_else(|_| usage(format!("invalid grid {:?}; expected NXxNY", opts.grid)))?;
    let (nx, ny) = match *dims.as_slice() {
        [n] => (n, n),
        [nx, ny] => (nx, ny),
        _ => return usage(format!("invalid grid {:?}; expected NXxNY", opts.grid)),
    };
    GridSpec::new((a, b), (c, d), nx, ny).or_else(|e| usage(e.to_string()))
}

fn emit_raster(r: &RegionRaster, opts: &GridOpts, window: PgmWindow) -> CliResult<()> {
    match &opts.output {
        Some(p) => write_raster(r, p, RasterFormat::Csv, window)?,
        None => emit_text(None, &isored::io::raster_to_csv(r))?,
    }
    if let Some(p) = &opts.pgm {
        write_raster(r, p, RasterFormat::Pgm, window)?;
    }
    Ok(())
}

fn run_gersh(m: &WMatrix, opts: &GershOpts) -> CliResult<()> {
    let spec = grid_spec(&opts.grid)?;
    let r = gershgorin_raster(m, spec, opts.inverse)?;
    emit_raster(&r, &opts.grid, PgmWindow::default())
}

fn run_norm_raster(m: &WMatrix, opts: &NormRasterOpts, kind: RasterKind) -> CliResult<()> {
    let spec = grid_spec(&opts.grid)?;
    let p: Norm = opts.norm.parse().or_else(|e: Error| usage(e.to_string()))?;
    let window = match &opts.levels {
        Some(text) => PgmWindow::from_levels(&parse_levels(text).or_else(usage)?).or_else(|e| usage(e.to_string()))?,
        None => PgmWindow::from_levels(&DEFAULT_LEVELS).expect("valid defaults"),
    };
    let r = match kind {
        RasterKind::Pseudoresonance => pseudoresonance_raster(m, spec, p)?,
        _ => pseudospectrum_raster(m, spec, p)?,
    };
    if r.flagged_count() > 0 {
        eprintln!("note: {} grid point(s) flagged where a pole survives cancellation", r.flagged_count());
    }
    emit_raster(&r, &opts.grid, window)
}

fn run_spectrum(m: &WMatrix, inverse: bool) -> CliResult<()> {
    let roots = if inverse { inverse_spectrum(m)? } else { spectrum(m)? };
    let mut text = String::new();
    for (z, mult) in roots.pairs() {
        text.push_str(&format!("{} (×{mult})\n", fmt_complex(*z)));
    }
    emit_text(None, &text)
}

fn run_specinv(m: &WMatrix, out: &MatrixOut) -> CliResult<()> {
    let s = spectral_inverse_capped(m, out.degree_cap)?;
    emit_text(out.output.as_deref(), &write_matrix(&s))
}

fn run_reduce(path: &Path, keep: Option<&str>, chain: Option<&str>, out: &MatrixOut) -> CliResult<()> {
    let m = load_matrix(path)?;
    let mut links: Vec<IndexSet> = match chain {
        Some(text) => text.split('|').map(index_set).collect::<CliResult<_>>()?,
        None => Vec::new(),
    };
    if let Some(k) = keep {
        let k = index_set(k)?;
        if links.last() != Some(&k) {
            links.push(k);
        }
    }
    for b in &links {
        b.check_bounds(m.dim()).or_else(|e| usage(e.to_string()))?;
    }
    let r = match links.as_slice() {
        [] => return usage("reduce needs --keep or --chain"),
        [b] => isospectral_reduce_capped(&m, b, out.degree_cap)?,
        _ => sequential_reduce_capped(&m, &links, out.degree_cap)?,
    };
    emit_text(out.output.as_deref(), &write_matrix(&r))
}

fn parse_vector(text: &str) -> CliResult<Vec<Complex64>> {
    text.split(',')
        .map(|part| {
            let w = parse_ratfunc(part.trim()).or_else(|e| usage(format!("invalid displacement {part:?}: {e}")))?;
            if !w.is_constant() {
                return usage(format!("displacement {part:?} must be a constant"));
            }
            Ok(w.num().coeff(0).to_complex64())
        })
        .collect()
}

fn run_spring(args: &SpringArgs) -> CliResult<()> {
    let net = match (&args.path, &args.network) {
        (Some(n), None) => SpringNetwork::unit_path(*n).or_else(|e| usage(e.to_string()))?,
        (None, Some(p)) => with_path(p, read_network_file(p))?,
        _ => return usage("spring needs exactly one of --path or --network"),
    };
    let b = match &args.boundary {
        Some(text) => index_set(text)?,
        None => IndexSet::full(net.nodes()),
    };
    if b.is_empty() {
        return usage("boundary set is empty");
    }
    b.check_bounds(net.nodes()).or_else(|e| usage(e.to_string()))?;
    if let SpringAction::Force { omega, u } = &args.action {
        let forces = boundary_force(&net, &b, *omega, &parse_vector(u)?)?;
        let text: String = forces.iter().map(|z| format!("{}\n", fmt_complex(*z))).collect();
        return emit_text(None, &text);
    }
    let r = frequency_response(&net, &b)?;
    match &args.action {
        SpringAction::Matrix { out } => emit_text(out.output.as_deref(), &write_matrix(&r)),
        SpringAction::Spectrum { inverse } => run_spectrum(&r, *inverse),
        SpringAction::Specinv { out } => run_specinv(&r, out),
        SpringAction::Gersh { opts } => run_gersh(&r, opts),
        SpringAction::Pseudospec { opts } => run_norm_raster(&r, opts, RasterKind::Pseudospectrum),
        SpringAction::Pseudores { opts } => run_norm_raster(&r, opts, RasterKind::Pseudoresonance),
        SpringAction::Force { .. } => unreachable!("handled above"),
    }
}

fn run_check(inner: &Path, outer: &Path, eps: f64, kind: &str) -> CliResult<()> {
    let kind: RasterKind = kind.parse().or_else(|e: Error| usage(e.to_string()))?;
    if !(eps > 0.0) {
        return usage(format!("--eps must be positive, got {eps}"));
    }
    let a = with_path(inner, read_raster_csv(inner, kind))?;
    let b = with_path(outer, read_raster_csv(outer, kind))?;
    let report = check_inclusion(&a, &b, eps).or_else(|e| usage(e.to_string()))?;
    let mut text = format!(
        "checked {} points, skipped {} flagged, {} violation(s)\n",
        report.checked,
        report.skipped,
        report.violations.len()
    );
    for z in &report.violations {
        text.push_str(&format!("violation at {}\n", fmt_complex(*z)));
    }
    emit_text(None, &text)?;
    if report.holds() {
        Ok(())
    } else {
        Err(Failure::Violations(report.violations.len()))
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(text) = std::env::var("ISORED_THREADS") else {
        return Ok(());
    };
    let n: usize = match text.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return usage(format!("ISORED_THREADS must be a positive integer, got {text:?}")),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .or_else(|e| usage(format!("cannot configure thread pool: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match &cli.command {
        Command::Reduce { matrix, keep, chain, out } => run_reduce(matrix, keep.as_deref(), chain.as_deref(), out),
        Command::Spectrum { matrix, inverse } => run_spectrum(&load_matrix(matrix)?, *inverse),
        Command::Specinv { matrix, out } => run_specinv(&load_matrix(matrix)?, out),
        Command::Gersh { matrix, opts } => run_gersh(&load_matrix(matrix)?, opts),
        Command::Pseudospec { matrix, opts } => {
            run_norm_raster(&load_matrix(matrix)?, opts, RasterKind::Pseudospectrum)
        }
        Command::Pseudores { matrix, opts } => {
            run_norm_raster(&load_matrix(matrix)?, opts, RasterKind::Pseudoresonance)
        }
        Command::Spring(args) => run_spring(args),
        Command::CheckInclusion { inner, outer, eps, kind } => run_check(inner, outer, *eps, kind),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_math() { 1 } else { 2 })
        }
        Err(Failure::Violations(n)) => {
            eprintln!("inclusion fails at {n} grid point(s)");
            ExitCode::from(1)
        }
    }
}
