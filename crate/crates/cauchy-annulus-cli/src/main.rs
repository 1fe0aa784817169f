//! `cauchy-annulus`: sharp Cauchy-transform norms on an annulus, parameter
//! sweeps, figure emission, and the oracle verification suite.
//!
//! Exit codes are a stable contract: 0 success, 1 numeric failure,
//! 2 usage error (including argument parsing, which clap also reports
//! with code 2).

use cauchy_annulus::spectral::{
    self, AnnulusGeometry, SolveMethod, SolveOptions, SpectralError, SpectralResult,
};
use cauchy_annulus::sweep::{emit_csv, emit_svg, run_sweep_with, Quantity, SweepSpec, SweepTable};
use cauchy_annulus::verify::{run_suite, Check, Level};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::collections::HashMap;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_NUMERIC: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Override for the root-refinement relative tolerance (default 1e-12).
const TOL_ENV: &str = "CAUCHY_ANNULUS_ROOT_TOL";

#[derive(Parser)]
#[command(
    name = "cauchy-annulus",
    version,
    about = "Sharp L2 norm of the Cauchy transform on the annulus A(r, R)",
    long_about = "Computes the sharp L2 operator norm 2/kappa_1 of the Cauchy transform on \
A(r, R), the Dirichlet-Cauchy norm 2/k_1, per-mode norms, parameter sweeps with CSV/SVG \
output, and a verification suite that cross-checks every closed form against independent \
discretizations.\n\nSet CAUCHY_ANNULUS_ROOT_TOL to override the default 1e-12 relative \
root tolerance."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GeometryArgs {
    /// Inner radius r (r = 0 selects the exact disk limit)
    #[arg(long = "r")]
    r: f64,
    /// Outer radius R
    #[arg(long = "R", default_value_t = 1.0)]
    big_r: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Sharp Cauchy-transform norm: kappa_1, mu_1 and 2/kappa_1
    Norm {
        #[command(flatten)]
        geometry: GeometryArgs,
    },
    /// Per-mode norms for m = -max-m ..= max-m, flagging the maximum
    ModeSpectrum {
        #[command(flatten)]
        geometry: GeometryArgs,
        /// Largest |m| to report
        #[arg(long = "max-m", default_value_t = 8)]
        max_m: u32,
    },
    /// First Dirichlet eigenvalue data: k_1, lambda_1 and 2/k_1
    Dirichlet {
        #[command(flatten)]
        geometry: GeometryArgs,
    },
    /// Sweep a quantity over the inner radius and emit CSV or SVG
    Sweep {
        /// cauchy-norm | dirichlet-cauchy-norm | kappa | k1 | mode-norm:<m>
        #[arg(long, value_parser = parse_quantity)]
        quantity: Quantity,
        #[arg(long = "r-min", default_value_t = 0.01)]
        r_min: f64,
        #[arg(long = "r-max", default_value_t = 0.99)]
        r_max: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Outer radius R
        #[arg(long = "R", default_value_t = 1.0)]
        big_r: f64,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Emit a stock figure (1: 2/kappa_1(r), 2: 2/k_1(r)) as SVG plus CSV
    Figure {
        /// Which figure to reproduce
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        /// Output SVG path; a sibling .csv is written next to it
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the oracle verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyLevel {
    /// Grids capped at n = 512; runs in a few seconds
    Quick,
    /// Grids up to n = 4096
    Full,
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    match s {
        "cauchy-norm" | "cauchy_norm" => Ok(Quantity::CauchyNorm),
        "dirichlet-cauchy-norm" | "dirichlet_cauchy_norm" => Ok(Quantity::DirichletCauchyNorm),
        "kappa" => Ok(Quantity::Kappa),
        "k1" => Ok(Quantity::K1),
        other => {
            if let Some(m) = other
                .strip_prefix("mode-norm:")
                .or_else(|| other.strip_prefix("mode_norm:"))
            {
                let m: i32 = m
                    .parse()
                    .map_err(|_| format!("invalid mode in '{other}'"))?;
                if m.abs() > spectral::MODE_CAP {
                    return Err(format!(
                        "mode {m} outside the supported range |m| <= {}",
                        spectral::MODE_CAP
                    ));
                }
                Ok(Quantity::ModeNorm(m))
            } else {
                Err(format!(
                    "unknown quantity '{other}' (expected cauchy-norm, \
                     dirichlet-cauchy-norm, kappa, k1 or mode-norm:<m>)"
                ))
            }
        }
    }
}

enum CliError {
    Usage(String),
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => m,
        }
    }
}

/// Geometry problems are usage errors; everything downstream is numeric.
fn classify(err: SpectralError) -> CliError {
    match err {
        SpectralError::InvalidGeometry(_)
        | SpectralError::ModeOutOfRange { .. }
        | SpectralError::TooFewSamples { .. } => CliError::Usage(err.to_string()),
        other => CliError::Numeric(other.to_string()),
    }
}

fn solve_options() -> Result<SolveOptions, CliError> {
    match std::env::var(TOL_ENV) {
        Ok(raw) => {
            let rel_tol: f64 = raw.parse().map_err(|_| {
                CliError::Usage(format!("{TOL_ENV} must be a float, got '{raw}'"))
            })?;
            if !(1e-15..1.0).contains(&rel_tol) {
                return Err(CliError::Usage(format!(
                    "{TOL_ENV} must lie in [1e-15, 1), got {rel_tol}"
                )));
            }
            Ok(SolveOptions { rel_tol })
        }
        Err(_) => Ok(SolveOptions::default()),
    }
}

fn geometry(args: &GeometryArgs) -> Result<AnnulusGeometry, CliError> {
    if !args.r.is_finite() || !args.big_r.is_finite() {
        return Err(CliError::Usage(format!(
            "radii must be finite, got r = {}, R = {}",
            args.r, args.big_r
        )));
    }
    let geom = AnnulusGeometry::new(args.r, args.big_r).map_err(classify)?;
    if geom.is_near_disk() {
        eprintln!(
            "note: r/R = {:.3e} is below {:.0e}; the cross product loses precision there, \
             consider the exact disk limit r = 0",
            geom.ratio(),
            spectral::NEAR_DISK_RATIO
        );
    }
    Ok(geom)
}

fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

fn method_label(m: SolveMethod) -> &'static str {
    match m {
        SolveMethod::CrossProduct => "cross-product root",
        SolveMethod::DiskLimit => "disk path",
    }
}

fn cmd_norm(args: &GeometryArgs) -> Result<(), CliError> {
    let geom = geometry(args)?;
    let opts = solve_options()?;
    let res = spectral::cauchy_norm_with(&geom, &opts).map_err(classify)?;
    println!(
        "annulus A(r = {}, R = {})  [{}]",
        geom.inner(),
        geom.outer(),
        method_label(res.method)
    );
    println!("kappa_1 = {}", fmt12(res.kappa));
    println!("mu_1    = {}   (first mixed ND eigenvalue)", fmt12(res.mu));
    println!("norm    = {}   (= 2/kappa_1, sharp L2 norm)", fmt12(res.norm));
    Ok(())
}

fn cmd_dirichlet(args: &GeometryArgs) -> Result<(), CliError> {
    let geom = geometry(args)?;
    let opts = solve_options()?;
    let res = spectral::dirichlet_k1_with(&geom, &opts).map_err(classify)?;
    println!(
        "annulus A(r = {}, R = {})  [{}]",
        geom.inner(),
        geom.outer(),
        method_label(res.method)
    );
    println!("k_1      = {}", fmt12(res.k1));
    println!("lambda_1 = {}   (first Dirichlet eigenvalue)", fmt12(res.lambda1));
    println!("norm     = {}   (= 2/k_1, Dirichlet-Cauchy)", fmt12(res.norm));
    Ok(())
}

fn cmd_mode_spectrum(args: &GeometryArgs, max_m: u32) -> Result<(), CliError> {
    if max_m < 1 {
        return Err(CliError::Usage("--max-m must be at least 1".into()));
    }
    if max_m as i32 > spectral::MODE_CAP {
        return Err(CliError::Usage(format!(
            "--max-m must not exceed {}",
            spectral::MODE_CAP
        )));
    }
    let geom = geometry(args)?;
    let opts = solve_options()?;

    // modes m and 1 - m share the same reduced problem; solve each once
    let mut cache: HashMap<u32, SpectralResult> = HashMap::new();
    let span = max_m as i32;
    let mut rows = Vec::new();
    for m in -span..=span {
        let reduced = if m >= 1 { m as u32 } else { (1 - m) as u32 };
        let solved = match cache.get(&reduced) {
            Some(s) => *s,
            None => {
                let s = spectral::kappa_nd_with(reduced, &geom, &opts).map_err(classify)?;
                cache.insert(reduced, s);
                s
            }
        };
        rows.push((m, solved));
    }
    let best = rows
        .iter()
        .map(|(_, s)| s.norm)
        .fold(f64::NEG_INFINITY, f64::max);
    println!("{:>5}  {:>18}  {:>18}  {:>18}", "m", "kappa", "mu", "norm");
    for (m, s) in &rows {
        let flag = if s.norm == best { "  <- max" } else { "" };
        println!(
            "{:>5}  {:>18}  {:>18}  {:>18}{}",
            m,
            fmt12(s.kappa),
            fmt12(s.mu),
            fmt12(s.norm),
            flag
        );
    }
    Ok(())
}

fn write_table(
    table: &SweepTable,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let emit = |w: &mut dyn Write| -> Result<(), CliError> {
        match format {
            OutputFormat::Csv => emit_csv(table, w),
            OutputFormat::Svg => emit_svg(table, w),
        }
        .map_err(|e| CliError::Numeric(e.to_string()))
    };
    match out {
        Some(path) => {
            let mut file = File::create(path)
                .map_err(|e| CliError::Numeric(format!("cannot create {}: {e}", path.display())))?;
            emit(&mut file)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            emit(&mut lock)
        }
    }
}

fn cmd_sweep(
    quantity: Quantity,
    r_min: f64,
    r_max: f64,
    steps: usize,
    big_r: f64,
    out: Option<&Path>,
    format: OutputFormat,
) -> Result<(), CliError> {
    let spec = SweepSpec {
        outer: big_r,
        r_min,
        r_max,
        steps,
        quantity,
    };
    let opts = solve_options()?;
    let table = run_sweep_with(&spec, &opts).map_err(|e| match e {
        cauchy_annulus::sweep::SweepError::InvalidSpec(msg) => CliError::Usage(msg),
        other => CliError::Numeric(other.to_string()),
    })?;
    write_table(&table, format, out)
}

fn cmd_figure(which: u8, out: Option<&Path>) -> Result<(), CliError> {
    let quantity = match which {
        1 => Quantity::CauchyNorm,
        2 => Quantity::DirichletCauchyNorm,
        _ => unreachable!("clap range guarantees 1 or 2"),
    };
    let spec = SweepSpec::figure_default(quantity);
    let opts = solve_options()?;
    let table = run_sweep_with(&spec, &opts).map_err(|e| CliError::Numeric(e.to_string()))?;

    let svg_path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(format!("figure{which}.svg")));
    let csv_path = svg_path.with_extension("csv");
    write_table(&table, OutputFormat::Svg, Some(&svg_path))?;
    write_table(&table, OutputFormat::Csv, Some(&csv_path))?;
    Ok(())
}

fn cmd_verify(level: VerifyLevel) -> Result<(), CliError> {
    let level = match level {
        VerifyLevel::Quick => Level::Quick,
        VerifyLevel::Full => Level::Full,
    };
    let started = std::time::Instant::now();
    let checks = run_suite(level);
    let mut failures = 0usize;
    for Check {
        name,
        passed,
        expected,
        actual,
        tolerance,
    } in &checks
    {
        if *passed {
            println!("[PASS] {name}: actual {actual} (expected {expected}, {tolerance})");
        } else {
            failures += 1;
            println!("[FAIL] {name}: actual {actual}, expected {expected}, {tolerance}");
        }
    }
    println!(
        "{} checks, {} failed ({:.2} s)",
        checks.len(),
        failures,
        started.elapsed().as_secs_f64()
    );
    if failures > 0 {
        return Err(CliError::Numeric(format!(
            "{failures} verification check(s) failed"
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Norm { geometry } => cmd_norm(geometry),
        Command::ModeSpectrum { geometry, max_m } => cmd_mode_spectrum(geometry, *max_m),
        Command::Dirichlet { geometry } => cmd_dirichlet(geometry),
        Command::Sweep {
            quantity,
            r_min,
            r_max,
            steps,
            big_r,
            out,
            format,
        } => cmd_sweep(
            *quantity,
            *r_min,
            *r_max,
            *steps,
            *big_r,
            out.as_deref(),
            *format,
        ),
        Command::Figure { which, out } => cmd_figure(*which, out.as_deref()),
        Command::Verify { level } => cmd_verify(*level),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
