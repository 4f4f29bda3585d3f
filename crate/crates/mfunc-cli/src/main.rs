//! Command-line front end: splitting tables, characteristic-function grids,
//! densities, empirical sampling, comparisons, and decay profiles.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 quantitative-check
//! failure (comparison over threshold, inversion refusal, cutoff too
//! small), 3 accuracy warning escalated by --strict.

mod manifest;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use manifest::{manifest_path_for, ManifestBuilder};
use mfunc::arith::PrimeTable;
use mfunc::density::invert_to_density;
use mfunc::empirical::{
    compare_report, empirical_charfun, sample_line, SamplerConfig, TruncationMode,
    DEFAULT_COEFF_CAP,
};
use mfunc::field::{EigenvalueTable, LambdaSeries, NumberField, NumberFieldSpec};
use mfunc::grid::GridAxis;
use mfunc::io;
use mfunc::product::{charfun_grid, decay_profile, required_cutoff, ProductConfig};
use mfunc::{Error, Result};

#[derive(Parser)]
#[command(
    name = "mfunc",
    version,
    about = "Value-distribution densities of logarithmic derivatives of zeta and L-functions"
)]
struct Cli {
    /// Cap the worker thread count (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Escalate accuracy warnings to exit code 3.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Flavor {
    Dedekind,
    Dirichlet,
    CuspForm,
}

impl Flavor {
    fn as_str(self) -> &'static str {
        match self {
            Flavor::Dedekind => "dedekind",
            Flavor::Dirichlet => "dirichlet",
            Flavor::CuspForm => "cusp-form",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Smoothed,
    Sharp,
    PrimePower,
}

impl From<ModeArg> for TruncationMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Smoothed => TruncationMode::Smoothed,
            ModeArg::Sharp => TruncationMode::Sharp,
            ModeArg::PrimePower => TruncationMode::PrimePower,
        }
    }
}

#[derive(Args)]
struct SeriesArgs {
    /// Field spec JSON ({"kind":"rational"} | {"kind":"quadratic","D":-4} |
    /// {"kind":"polynomial","coeffs":[...,1]}).
    #[arg(long)]
    spec: PathBuf,
    /// Coefficient flavor built on the spec.
    #[arg(long, value_enum, default_value = "dedekind")]
    flavor: Flavor,
    /// Eigenvalue CSV (p,lambda) for the cusp-form flavor; the built-in
    /// discriminant-form table is used when absent.
    #[arg(long)]
    eigenvalues: Option<PathBuf>,
}

impl SeriesArgs {
    fn build(&self, delta_limit: u64) -> Result<LambdaSeries> {
        let spec = NumberFieldSpec::from_file(&self.spec)?;
        match self.flavor {
            Flavor::Dedekind => {
                if let Some(false) = spec.heuristic_irreducible() {
                    eprintln!(
                        "warning: defining polynomial looks reducible; interpreting the \
                         product field"
                    );
                }
                Ok(LambdaSeries::dedekind(NumberField::new(spec)))
            }
            Flavor::Dirichlet => match spec.kind {
                mfunc::field::FieldKind::Quadratic { d } => LambdaSeries::dirichlet_quadratic(d),
                _ => Err(Error::ContractViolation(
                    "the dirichlet flavor needs a quadratic field spec (its D gives the \
                     character)"
                        .into(),
                )),
            },
            Flavor::CuspForm => {
                let table = match &self.eigenvalues {
                    Some(path) => EigenvalueTable::from_csv_path(path)?,
                    None => EigenvalueTable::delta(delta_limit)?,
                };
                Ok(LambdaSeries::cusp_form(table))
            }
        }
    }

    fn params(&self) -> serde_json::Value {
        json!({
            "spec": self.spec.display().to_string(),
            "flavor": self.flavor.as_str(),
            "eigenvalues": self.eigenvalues.as_ref().map(|p| p.display().to_string()),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the per-prime splitting table of a number field.
    Split {
        #[command(flatten)]
        series: SeriesArgs,
        /// Include all primes up to this bound.
        #[arg(long, default_value_t = 100)]
        limit: u64,
        /// Output CSV path.
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Compute a characteristic-function grid m(u,v,sigma).
    Mfun {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        sigma: f64,
        /// Grid half-width W; the grid covers [-W, W)^2.
        #[arg(long, default_value_t = 30.0)]
        extent: f64,
        /// Points per axis (even).
        #[arg(long, default_value_t = 256)]
        n: usize,
        /// Euler-product tail tolerance at the worst grid node.
        #[arg(long, default_value_t = 1e-4)]
        tail_tol: f64,
        /// Override the prime cutoff chosen from the tail formula.
        #[arg(long)]
        prime_cutoff: Option<u64>,
        /// Output prefix: writes <out>.csv, <out>.grid, <out>.manifest.json.
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Invert a characteristic-function grid to the density M(z).
    Density {
        /// Charfun binary (<prefix>.grid from mfun).
        #[arg(long)]
        charfun: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Sample the truncated logarithmic derivative along a vertical line and
    /// accumulate its empirical characteristic function.
    Empirical {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        sigma: f64,
        /// Sample over [0, T].
        #[arg(long, short = 'T')]
        t_max: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Smoothing cutoff; coefficients run to x^2.
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value = "smoothed")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Shift the sample lattice by a seeded offset.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        jitter: bool,
        /// Half-width of the empirical characteristic-function grid.
        #[arg(long, default_value_t = 3.2)]
        w_extent: f64,
        /// Points per axis of that grid (even).
        #[arg(long, default_value_t = 32)]
        w_n: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Compare an empirical characteristic function against a model grid.
    Compare {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        empirical: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        threshold: f64,
        /// Restrict the pass/fail statistic to |w| <= this radius.
        #[arg(long)]
        max_radius: Option<f64>,
        /// Report JSON path.
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Shell-decay table and fitted exponent of a characteristic-function
    /// grid.
    Decay {
        #[arg(long)]
        charfun: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        r_min: f64,
        /// Defaults to the largest L1 radius the grid covers.
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long, default_value_t = 24)]
        shells: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
}

/// Warnings that `--strict` escalates to exit 3.
struct Warnings(Vec<String>);

impl Warnings {
    fn new() -> Self {
        Self(Vec::new())
    }
    fn push(&mut self, msg: String) {
        eprintln!("warning: {msg}");
        self.0.push(msg);
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::CutoffTooSmall { .. } | Error::AliasingRisk { .. } => 2,
        _ => 1,
    }
}

fn ensure_parent(path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    Ok(())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let name = prefix.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    prefix.with_file_name(format!("{name}{suffix}"))
}

fn main() {
    let cli = Cli::parse();
    mfunc::parallel::configure_threads(cli.threads);
    let mut warnings = Warnings::new();
    match run(cli.command, &mut warnings) {
        Ok(()) => {
            if cli.strict && !warnings.0.is_empty() {
                eprintln!("strict mode: {} warning(s) escalated", warnings.0.len());
                std::process::exit(3);
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code_for(&err));
        }
    }
}

fn run(command: Command, warnings: &mut Warnings) -> Result<()> {
    match command {
        Command::Split { series, limit, out } => cmd_split(series, limit, out),
        Command::Mfun { series, sigma, extent, n, tail_tol, prime_cutoff, out } => {
            cmd_mfun(series, sigma, extent, n, tail_tol, prime_cutoff, out, warnings)
        }
        Command::Density { charfun, out } => cmd_density(charfun, out, warnings),
        Command::Empirical {
            series,
            sigma,
            t_max,
            samples,
            x,
            mode,
            seed,
            jitter,
            w_extent,
            w_n,
            out,
        } => cmd_empirical(series, sigma, t_max, samples, x, mode, seed, jitter, w_extent, w_n, out),
        Command::Compare { model, empirical, threshold, max_radius, out } => {
            cmd_compare(model, empirical, threshold, max_radius, out)
        }
        Command::Decay { charfun, r_min, r_max, shells, out } => {
            cmd_decay(charfun, r_min, r_max, shells, out, warnings)
        }
    }
}

fn cmd_split(series_args: SeriesArgs, limit: u64, out: PathBuf) -> Result<()> {
    if series_args.flavor != Flavor::Dedekind {
        return Err(Error::ContractViolation(
            "splitting tables exist for the dedekind flavor only".into(),
        ));
    }
    let spec = NumberFieldSpec::from_file(&series_args.spec)?;
    let field = NumberField::new(spec);
    let primes = PrimeTable::sieve(limit.max(2))?;
    ensure_parent(&out)?;
    let mut buf = String::from("p,pattern,exact\n");
    for &p in primes.primes_up_to(limit) {
        let st = field.splitting_type(p)?;
        buf.push_str(&format!("{p},\"{}\",{}\n", st.pattern_string(), st.exact));
    }
    std::fs::write(&out, buf)?;
    println!(
        "wrote splitting table for {} primes to {}",
        primes.primes_up_to(limit).len(),
        out.display()
    );

    let mut mb = ManifestBuilder::new(
        "split",
        json!({ "series": series_args.params(), "limit": limit, "out": out.display().to_string() }),
    );
    mb.input(&series_args.spec);
    mb.output(&out);
    mb.write(&manifest_path_for(&out))
}

#[allow(clippy::too_many_arguments)]
fn cmd_mfun(
    series_args: SeriesArgs,
    sigma: f64,
    extent: f64,
    n: usize,
    tail_tol: f64,
    prime_cutoff: Option<u64>,
    out: PathBuf,
    warnings: &mut Warnings,
) -> Result<()> {
    if !(sigma > 0.5) {
        return Err(Error::ContractViolation(format!("sigma must exceed 1/2, got {sigma}")));
    }
    let series = series_args.build(mfunc::field::DELTA_LIMIT_CAP)?;
    let cutoff = match prime_cutoff {
        Some(p) => p,
        None => required_cutoff(series.bound_degree(), sigma, 2.0 * extent * extent, tail_tol)?,
    };
    let cfg = ProductConfig::new(sigma, cutoff, tail_tol)?;
    let primes = PrimeTable::sieve(cutoff.max(1000))?;
    let grid = charfun_grid(&series, extent, n, &cfg, &primes)?;
    if grid.meta.unconverged_factors > 0 {
        warnings.push(format!(
            "{} local-factor quadratures hit the node ceiling",
            grid.meta.unconverged_factors
        ));
    }
    let origin_dev = (grid.origin_value() - num_complex::Complex64::new(1.0, 0.0)).norm();
    println!(
        "charfun grid {n}x{n} extent {extent} sigma {sigma}: prime cutoff {}, quadrature \
         primes to {}, origin deviation {origin_dev:.3e}",
        grid.meta.prime_cutoff, grid.meta.quad_prime_cutoff
    );

    ensure_parent(&out)?;
    let csv_path = with_suffix(&out, ".csv");
    let grid_path = with_suffix(&out, ".grid");
    let mut csv = Vec::new();
    io::charfun_csv(&mut csv, &grid)?;
    std::fs::write(&csv_path, csv)?;
    io::write_charfun_binary(&grid_path, &grid)?;
    println!("wrote {} and {}", csv_path.display(), grid_path.display());

    let mut mb = ManifestBuilder::new(
        "mfun",
        json!({
            "series": series_args.params(),
            "sigma": sigma,
            "extent": extent,
            "n": n,
            "tail_tol": tail_tol,
            "prime_cutoff": cutoff,
            "out": out.display().to_string(),
        }),
    );
    mb.input(&series_args.spec);
    if let Some(e) = &series_args.eigenvalues {
        mb.input(e);
    }
    mb.output(&csv_path);
    mb.output(&grid_path);
    mb.write(&manifest_path_for(&out))
}

fn cmd_density(charfun: PathBuf, out: PathBuf, warnings: &mut Warnings) -> Result<()> {
    let grid = io::read_charfun_binary(&charfun)?;
    let density = invert_to_density(&grid)?;
    if density.meta.boundary_warning {
        warnings.push(format!(
            "boundary |m| = {:.3e} exceeds 1e-3; density tails may alias",
            density.meta.boundary_max
        ));
    }
    println!(
        "density {}x{}: normalization residual {:.3e}, max imaginary part {:.3e} (peak {:.3e})",
        density.x_axis.len(),
        density.y_axis.len(),
        density.meta.normalization_residual,
        density.meta.max_imag,
        density.meta.peak
    );

    ensure_parent(&out)?;
    let csv_path = with_suffix(&out, ".csv");
    let grid_path = with_suffix(&out, ".grid");
    let mut csv = Vec::new();
    io::density_csv(&mut csv, &density)?;
    std::fs::write(&csv_path, csv)?;
    io::write_density_binary(&grid_path, &density)?;
    println!("wrote {} and {}", csv_path.display(), grid_path.display());

    let mut mb = ManifestBuilder::new(
        "density",
        json!({
            "charfun": charfun.display().to_string(),
            "out": out.display().to_string(),
        }),
    );
    mb.input(&charfun);
    mb.output(&csv_path);
    mb.output(&grid_path);
    mb.write(&manifest_path_for(&out))
}

#[allow(clippy::too_many_arguments)]
fn cmd_empirical(
    series_args: SeriesArgs,
    sigma: f64,
    t_max: f64,
    samples: usize,
    x: f64,
    mode: ModeArg,
    seed: u64,
    jitter: bool,
    w_extent: f64,
    w_n: usize,
    out: PathBuf,
) -> Result<()> {
    let series = series_args.build(mfunc::field::DELTA_LIMIT_CAP)?;
    let cfg = SamplerConfig {
        sigma,
        t_max,
        n_samples: samples,
        x,
        mode: mode.into(),
        seed,
        jitter,
        coeff_cap: DEFAULT_COEFF_CAP,
    };
    cfg.validate()?;
    let primes = PrimeTable::sieve(((x * x) as u64).max(1000))?;
    let sampled = sample_line(&series, &cfg, &primes)?;
    let axis = GridAxis::symmetric(w_extent, w_n)?;
    let emp = empirical_charfun(&sampled, &axis);

    let mean =
        sampled.values.iter().sum::<num_complex::Complex64>() / sampled.values.len() as f64;
    println!(
        "sampled {samples} points over [0,{t_max}] (x = {x}, mode {}): mean value {:.6} + {:.6}i",
        cfg.mode.as_str(),
        mean.re,
        mean.im
    );

    ensure_parent(&out)?;
    let samples_path = with_suffix(&out, ".samples.csv");
    let grid_path = with_suffix(&out, ".empirical.grid");
    let mut csv = Vec::new();
    io::samples_csv(&mut csv, &sampled)?;
    std::fs::write(&samples_path, csv)?;
    io::write_empirical_binary(&grid_path, &emp)?;
    println!("wrote {} and {}", samples_path.display(), grid_path.display());

    let mut mb = ManifestBuilder::new(
        "empirical",
        json!({
            "series": series_args.params(),
            "sigma": sigma,
            "t_max": t_max,
            "samples": samples,
            "x": x,
            "mode": cfg.mode.as_str(),
            "seed": seed,
            "jitter": jitter,
            "w_extent": w_extent,
            "w_n": w_n,
            "out": out.display().to_string(),
        }),
    );
    mb.input(&series_args.spec);
    if let Some(e) = &series_args.eigenvalues {
        mb.input(e);
    }
    mb.output(&samples_path);
    mb.output(&grid_path);
    mb.write(&manifest_path_for(&out))
}

fn cmd_compare(
    model: PathBuf,
    empirical: PathBuf,
    threshold: f64,
    max_radius: Option<f64>,
    out: PathBuf,
) -> Result<()> {
    let model_grid = io::read_charfun_binary(&model)?;
    let emp_grid = io::read_empirical_binary(&empirical)?;
    let report = compare_report(&emp_grid, &model_grid, threshold, max_radius)?;
    ensure_parent(&out)?;
    std::fs::write(&out, serde_json::to_string_pretty(&report)? + "\n")?;
    println!(
        "compare: max deviation {:.5} (threshold {threshold}), mean {:.5}, regime {} -> {}",
        report.max_dev,
        report.mean_dev,
        report.regime,
        if report.pass { "pass" } else { "FAIL" }
    );

    let mut mb = ManifestBuilder::new(
        "compare",
        json!({
            "model": model.display().to_string(),
            "empirical": empirical.display().to_string(),
            "threshold": threshold,
            "max_radius": max_radius,
            "out": out.display().to_string(),
        }),
    );
    mb.input(&model);
    mb.input(&empirical);
    mb.output(&out);
    mb.write(&manifest_path_for(&out))?;

    if !report.pass {
        std::process::exit(2);
    }
    Ok(())
}

fn cmd_decay(
    charfun: PathBuf,
    r_min: f64,
    r_max: Option<f64>,
    shells: usize,
    out: PathBuf,
    warnings: &mut Warnings,
) -> Result<()> {
    let grid = io::read_charfun_binary(&charfun)?;
    let r_hi = r_max.unwrap_or(2.0 * grid.u_axis.extent());
    let profile = decay_profile(&grid, r_min, r_hi, shells);
    if !profile.conclusive {
        warnings.push("decay not conclusive within the grid extent".into());
    }
    match profile.fitted_exponent {
        Some(e) => println!(
            "decay exponent {e:.4} over r in [{r_min},{r_hi}] ({shells} shells); 1/sigma = {:.4}",
            1.0 / grid.meta.sigma
        ),
        None => println!("decay fit not possible on this grid"),
    }
    ensure_parent(&out)?;
    let mut csv = Vec::new();
    io::decay_csv(&mut csv, &profile, grid.meta.sigma)?;
    std::fs::write(&out, csv)?;

    let mut mb = ManifestBuilder::new(
        "decay",
        json!({
            "charfun": charfun.display().to_string(),
            "r_min": r_min,
            "r_max": r_hi,
            "shells": shells,
            "out": out.display().to_string(),
        }),
    );
    mb.input(&charfun);
    mb.output(&out);
    mb.write(&manifest_path_for(&out))
}
