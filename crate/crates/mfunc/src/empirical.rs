//! Sampling the truncated logarithmic derivative along a vertical line and
//! comparing its empirical statistics against the model.
//!
//! The sampled function is `F(t) = -sum_n c(n) / n^(sigma+it)` with the sum
//! organized per prime power (nothing else contributes). Samples sit on a
//! uniform t-lattice, optionally shifted by one seeded offset per run; the
//! lattice structure is what makes the phase-recurrence evaluation fast, so
//! per-point jitter is deliberately not offered.

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::density::TestFunction;
use crate::error::{Error, Result};
use crate::field::LambdaSeries;
use crate::grid::GridAxis;
use crate::kahan::KahanSum;
use crate::local::minimal_truncation;
use crate::parallel;
use crate::product::CharFunGrid;

/// How the Dirichlet series is truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationMode {
    /// Log-weighted cutoff: full weight below x, linear log taper to x^2.
    Smoothed,
    /// Plain truncation at x^2.
    Sharp,
    /// All prime powers of p <= x^2, the m-sum truncated per prime by a
    /// geometric tail tolerance.
    PrimePower,
}

impl TruncationMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Smoothed => "smoothed",
            Self::Sharp => "sharp",
            Self::PrimePower => "prime_power",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "smoothed" => Ok(Self::Smoothed),
            "sharp" => Ok(Self::Sharp),
            "prime_power" | "prime-power" => Ok(Self::PrimePower),
            other => Err(Error::Parse(format!(
                "unknown truncation mode {other:?} (smoothed|sharp|prime_power)"
            ))),
        }
    }
}

/// Default cap on x^2 (the coefficient enumeration is ~ pi(x^2) terms).
pub const DEFAULT_COEFF_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub sigma: f64,
    /// Sample over [0, t_max].
    pub t_max: f64,
    pub n_samples: usize,
    /// Smoothing cutoff; coefficients run to x^2.
    pub x: f64,
    pub mode: TruncationMode,
    pub seed: u64,
    /// Shift the whole lattice by one seeded offset in [0,1) steps.
    pub jitter: bool,
    /// Memory cap on x^2.
    pub coeff_cap: u64,
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.sigma.is_finite() || !(self.t_max > 0.0) {
            return Err(Error::ContractViolation("need finite sigma and t_max > 0".into()));
        }
        if self.n_samples < 1000 {
            return Err(Error::ContractViolation(format!(
                "need at least 1000 samples, got {}",
                self.n_samples
            )));
        }
        if !(self.x > 1.0) {
            return Err(Error::ContractViolation(format!("need x > 1, got {}", self.x)));
        }
        if (self.x * self.x) as u64 > self.coeff_cap {
            return Err(Error::Resource(format!(
                "x^2 = {:.3e} exceeds the coefficient cap {}",
                self.x * self.x,
                self.coeff_cap
            )));
        }
        Ok(())
    }
}

/// One prime-power term of the truncated series.
#[derive(Debug, Clone, Copy)]
pub struct Term {
    pub p: u64,
    pub m: u32,
    /// Smoothing weight times the coefficient (no sigma scaling).
    pub lambda_weighted: Complex64,
}

/// The coefficient support of a truncation, ordered by (p, m).
#[derive(Debug, Clone)]
pub struct CoefficientSet {
    pub terms: Vec<Term>,
    pub x: f64,
    pub mode: TruncationMode,
}

impl CoefficientSet {
    /// Map view keyed by n = p^m, restricted to n <= x^2 (prime-power mode
    /// may carry terms beyond x^2 for small primes; they are per-prime tail
    /// terms, not indexable by n here).
    pub fn coefficient_map(&self) -> std::collections::BTreeMap<u64, Complex64> {
        let cap = (self.x * self.x).floor() as u64;
        let mut out = std::collections::BTreeMap::new();
        for t in &self.terms {
            if let Some(n) = checked_pow(t.p, t.m) {
                if n <= cap {
                    out.insert(n, t.lambda_weighted);
                }
            }
        }
        out
    }
}

fn checked_pow(p: u64, m: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..m {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// Enumerate the weighted coefficients of the chosen truncation. Smoothed
/// weights are 1 below x and log(x^2/n)/log(x) between x and x^2; the
/// support is prime powers only, so work scales with pi(x^2).
pub fn smoothed_coefficients(
    series: &LambdaSeries,
    x: f64,
    mode: TruncationMode,
    sigma: f64,
    primes: &crate::arith::PrimeTable,
) -> Result<CoefficientSet> {
    let x2 = x * x;
    if primes.limit() < x2 as u64 {
        return Err(Error::ContractViolation(format!(
            "prime table covers {} but x^2 = {x2}",
            primes.limit()
        )));
    }
    let mut terms = Vec::new();
    for &p in primes.primes_up_to(x2 as u64) {
        match mode {
            TruncationMode::Smoothed | TruncationMode::Sharp => {
                let mut n = p as f64;
                let mut m = 1u32;
                while n <= x2 {
                    let lam = series.value(p, m)?;
                    if lam.norm_sqr() != 0.0 {
                        let weight = if matches!(mode, TruncationMode::Sharp) || n <= x {
                            1.0
                        } else {
                            (x2 / n).ln() / x.ln()
                        };
                        terms.push(Term { p, m, lambda_weighted: lam * weight });
                    }
                    n *= p as f64;
                    m += 1;
                }
            }
            TruncationMode::PrimePower => {
                let (m_max, _) = minimal_truncation(p, sigma, series.bound_degree(), 1e-12);
                for m in 1..=m_max as u32 {
                    let lam = series.value(p, m)?;
                    if lam.norm_sqr() != 0.0 {
                        terms.push(Term { p, m, lambda_weighted: lam });
                    }
                }
            }
        }
    }
    Ok(CoefficientSet { terms, x, mode })
}

/// Empirical values of the truncated series along the vertical line.
#[derive(Debug, Clone)]
pub struct SampleSeries {
    pub t_values: Vec<f64>,
    pub values: Vec<Complex64>,
    pub config: SamplerConfig,
    /// Crude bound sum |c(n)| / n^sigma; every |value| stays below it.
    pub crude_bound: f64,
    pub flavor: String,
}

const SAMPLE_CHUNK: usize = 4096;

/// Evaluate the truncated series at `n_samples` lattice points of [0, t_max].
///
/// Evaluation walks a unit-modulus phase per term with one complex multiply
/// per sample, re-anchored by direct trigonometric calls at every chunk
/// boundary so rounding drift cannot accumulate; a test pins the result to
/// the direct-call oracle at 1e-9.
pub fn sample_line(
    series: &LambdaSeries,
    cfg: &SamplerConfig,
    primes: &crate::arith::PrimeTable,
) -> Result<SampleSeries> {
    cfg.validate()?;
    let coeffs = smoothed_coefficients(series, cfg.x, cfg.mode, cfg.sigma, primes)?;

    // Scaled real/imag amplitude and angular frequency per term.
    let n_terms = coeffs.terms.len();
    let mut amp_re = Vec::with_capacity(n_terms);
    let mut amp_im = Vec::with_capacity(n_terms);
    let mut omega = Vec::with_capacity(n_terms);
    let mut bound = KahanSum::new();
    let mut all_real = true;
    for t in &coeffs.terms {
        let log_p = (t.p as f64).ln();
        let scale = (-(t.m as f64) * cfg.sigma * log_p).exp();
        let a = t.lambda_weighted * scale;
        amp_re.push(a.re);
        amp_im.push(a.im);
        if a.im != 0.0 {
            all_real = false;
        }
        omega.push(t.m as f64 * log_p);
        bound.add(a.norm());
    }

    let dt = cfg.t_max / cfg.n_samples as f64;
    let shift = if cfg.jitter {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
        (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    } else {
        0.0
    };
    let t_values: Vec<f64> = (0..cfg.n_samples).map(|k| (k as f64 + shift) * dt).collect();

    let n_chunks = cfg.n_samples.div_ceil(SAMPLE_CHUNK);
    let chunks: Vec<Vec<Complex64>> = parallel::ordered_map_indices(n_chunks, |c| {
        let start = c * SAMPLE_CHUNK;
        let len = SAMPLE_CHUNK.min(cfg.n_samples - start);
        let t0 = t_values[start];
        // Phase state per term at the chunk start.
        let mut z_re: Vec<f64> = Vec::with_capacity(n_terms);
        let mut z_im: Vec<f64> = Vec::with_capacity(n_terms);
        let mut s_re: Vec<f64> = Vec::with_capacity(n_terms);
        let mut s_im: Vec<f64> = Vec::with_capacity(n_terms);
        for i in 0..n_terms {
            let (sin0, cos0) = (-t0 * omega[i]).sin_cos();
            z_re.push(cos0);
            z_im.push(sin0);
            let (sin_d, cos_d) = (-dt * omega[i]).sin_cos();
            s_re.push(cos_d);
            s_im.push(sin_d);
        }
        // Term-blocked accumulation: each block of coefficient state stays
        // cache-resident while all samples of the chunk sweep it. Partial
        // sums fold into the per-sample totals in fixed block order and the
        // in-block sum uses four independent lanes, so the arithmetic order
        // (and hence every output bit) is independent of the thread count.
        const BLOCK: usize = 8192;
        const LANES: usize = 4;
        let mut out_re = vec![0.0f64; len];
        let mut out_im = vec![0.0f64; len];
        let mut block_start = 0usize;
        while block_start < n_terms {
            let block_end = (block_start + BLOCK).min(n_terms);
            let whole = block_start + (block_end - block_start) / LANES * LANES;
            for (o_re, o_im) in out_re.iter_mut().zip(out_im.iter_mut()) {
                let mut acc_re = [0.0f64; LANES];
                let mut acc_im = [0.0f64; LANES];
                if all_real {
                    for i in (block_start..whole).step_by(LANES) {
                        for l in 0..LANES {
                            let k = i + l;
                            acc_re[l] += amp_re[k] * z_re[k];
                            acc_im[l] += amp_re[k] * z_im[k];
                            let zr = z_re[k] * s_re[k] - z_im[k] * s_im[k];
                            let zi = z_re[k] * s_im[k] + z_im[k] * s_re[k];
                            z_re[k] = zr;
                            z_im[k] = zi;
                        }
                    }
                    for k in whole..block_end {
                        acc_re[0] += amp_re[k] * z_re[k];
                        acc_im[0] += amp_re[k] * z_im[k];
                        let zr = z_re[k] * s_re[k] - z_im[k] * s_im[k];
                        let zi = z_re[k] * s_im[k] + z_im[k] * s_re[k];
                        z_re[k] = zr;
                        z_im[k] = zi;
                    }
                } else {
                    for k in block_start..block_end {
                        let l = k % LANES;
                        acc_re[l] += amp_re[k] * z_re[k] - amp_im[k] * z_im[k];
                        acc_im[l] += amp_re[k] * z_im[k] + amp_im[k] * z_re[k];
                        let zr = z_re[k] * s_re[k] - z_im[k] * s_im[k];
                        let zi = z_re[k] * s_im[k] + z_im[k] * s_re[k];
                        z_re[k] = zr;
                        z_im[k] = zi;
                    }
                }
                *o_re += (acc_re[0] + acc_re[1]) + (acc_re[2] + acc_re[3]);
                *o_im += (acc_im[0] + acc_im[1]) + (acc_im[2] + acc_im[3]);
            }
            block_start = block_end;
        }
        out_re
            .into_iter()
            .zip(out_im)
            .map(|(re, im)| Complex64::new(-re, -im))
            .collect()
    });
    let values: Vec<Complex64> = chunks.into_iter().flatten().collect();
    debug_assert_eq!(values.len(), cfg.n_samples);

    Ok(SampleSeries {
        t_values,
        values,
        config: *cfg,
        crude_bound: bound.value(),
        flavor: series.flavor(),
    })
}

/// Metadata of an empirical characteristic-function grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmpiricalMeta {
    pub sigma: f64,
    pub flavor: String,
    pub t_max: f64,
    pub n_samples: usize,
    pub x: f64,
    pub mode: TruncationMode,
    pub seed: u64,
    pub jitter: bool,
}

/// Mean of exp(i <value, w>) over the samples, on a centered square grid.
#[derive(Debug, Clone)]
pub struct EmpiricalCharFun {
    pub u_axis: GridAxis,
    pub v_axis: GridAxis,
    pub values: Vec<Complex64>,
    pub meta: EmpiricalMeta,
}

impl EmpiricalCharFun {
    pub fn value_at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.v_axis.len() + j]
    }
}

/// Accumulate the empirical characteristic function on `axis x axis`:
/// node (i,j) receives the sample mean of exp(i(Re F * u_i + Im F * v_j)).
/// The per-sample matrix is a rank-one outer product, accumulated over
/// fixed-size chunks and combined in chunk order.
pub fn empirical_charfun(samples: &SampleSeries, axis: &GridAxis) -> EmpiricalCharFun {
    let n = axis.len();
    let h = axis.zero_index();
    let step = axis.step();
    let n_chunks = samples.values.len().div_ceil(SAMPLE_CHUNK);
    let partials: Vec<Vec<Complex64>> = parallel::ordered_map_indices(n_chunks, |c| {
        let start = c * SAMPLE_CHUNK;
        let end = (start + SAMPLE_CHUNK).min(samples.values.len());
        let mut acc = vec![Complex64::new(0.0, 0.0); n * n];
        let mut eu = vec![Complex64::new(0.0, 0.0); n];
        let mut ev = vec![Complex64::new(0.0, 0.0); n];
        for &f in &samples.values[start..end] {
            // Outward recurrences anchored at the exact zero node.
            fill_phase_axis(&mut eu, h, step * f.re);
            fill_phase_axis(&mut ev, h, step * f.im);
            for i in 0..n {
                let row = &mut acc[i * n..(i + 1) * n];
                let s = eu[i];
                for (slot, &e) in row.iter_mut().zip(&ev) {
                    *slot += s * e;
                }
            }
        }
        acc
    });
    let mut total = vec![Complex64::new(0.0, 0.0); n * n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    let inv = 1.0 / samples.values.len() as f64;
    for v in &mut total {
        *v *= inv;
    }
    EmpiricalCharFun {
        u_axis: *axis,
        v_axis: *axis,
        values: total,
        meta: EmpiricalMeta {
            sigma: samples.config.sigma,
            flavor: samples.flavor.clone(),
            t_max: samples.config.t_max,
            n_samples: samples.config.n_samples,
            x: samples.config.x,
            mode: samples.config.mode,
            seed: samples.config.seed,
            jitter: samples.config.jitter,
        },
    }
}

/// e^(i k phase) for node offsets k = i - h, anchored so the center is
/// exactly one and mirrored nodes are exact conjugates.
fn fill_phase_axis(buf: &mut [Complex64], h: usize, phase: f64) {
    let ratio = Complex64::from_polar(1.0, phase);
    buf[h] = Complex64::new(1.0, 0.0);
    for i in h + 1..buf.len() {
        buf[i] = buf[i - 1] * ratio;
    }
    let conj = ratio.conj();
    for i in (0..h).rev() {
        buf[i] = buf[i + 1] * conj;
    }
}

/// Mean of Phi over the sampled values.
pub fn empirical_average(samples: &SampleSeries, phi: &TestFunction) -> Result<f64> {
    let mut acc = KahanSum::new();
    for v in &samples.values {
        acc.add(phi.eval(v.re, v.im)?);
    }
    Ok(acc.value() / samples.values.len() as f64)
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareShell {
    pub r_lo: f64,
    pub r_hi: f64,
    pub count: usize,
    pub max_dev: f64,
    pub mean_dev: f64,
}

/// Deviation statistics between an empirical grid and the model grid.
#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    /// Max |empirical - model| over nodes with |w| <= max_radius.
    pub max_dev: f64,
    pub mean_dev: f64,
    pub threshold: f64,
    /// Euclidean radius restricting the pass/fail region (the whole grid
    /// when absent).
    pub max_radius: Option<f64>,
    /// "absolutely-convergent" above sigma = 1; "model-vs-model" below,
    /// where the truncated series is not checkable against the true
    /// logarithmic derivative without zero data.
    pub regime: String,
    pub pass: bool,
    pub shells: Vec<CompareShell>,
}

/// Compare an empirical characteristic function against the model grid on
/// identical axes.
pub fn compare_report(
    empirical: &EmpiricalCharFun,
    model: &CharFunGrid,
    threshold: f64,
    max_radius: Option<f64>,
) -> Result<CompareReport> {
    if empirical.u_axis != model.u_axis || empirical.v_axis != model.v_axis {
        return Err(Error::GridMismatch(format!(
            "empirical axes ({} x {}, step {:.6e}) vs model axes ({} x {}, step {:.6e})",
            empirical.u_axis.len(),
            empirical.v_axis.len(),
            empirical.u_axis.step(),
            model.u_axis.len(),
            model.v_axis.len(),
            model.u_axis.step()
        )));
    }
    let n = empirical.u_axis.len();
    let r_max_grid = empirical.u_axis.extent() * std::f64::consts::SQRT_2;
    let n_shells = 16usize;
    let shell_width = r_max_grid / n_shells as f64;
    let mut shells: Vec<CompareShell> = (0..n_shells)
        .map(|k| CompareShell {
            r_lo: k as f64 * shell_width,
            r_hi: (k + 1) as f64 * shell_width,
            count: 0,
            max_dev: 0.0,
            mean_dev: 0.0,
        })
        .collect();
    let mut max_dev = 0.0f64;
    let mut sum_dev = KahanSum::new();
    let mut counted = 0usize;
    for i in 0..n {
        let u = empirical.u_axis.node(i);
        for j in 0..n {
            let v = empirical.v_axis.node(j);
            let dev = (empirical.value_at(i, j) - model.value_at(i, j)).norm();
            let r = (u * u + v * v).sqrt();
            let k = ((r / shell_width) as usize).min(n_shells - 1);
            shells[k].count += 1;
            shells[k].mean_dev += dev;
            if dev > shells[k].max_dev {
                shells[k].max_dev = dev;
            }
            if max_radius.map_or(true, |rm| r <= rm) {
                counted += 1;
                sum_dev.add(dev);
                if dev > max_dev {
                    max_dev = dev;
                }
            }
        }
    }
    for s in &mut shells {
        if s.count > 0 {
            s.mean_dev /= s.count as f64;
        }
    }
    if counted == 0 {
        return Err(Error::ContractViolation(
            "no grid nodes inside the comparison radius".into(),
        ));
    }
    Ok(CompareReport {
        max_dev,
        mean_dev: sum_dev.value() / counted as f64,
        threshold,
        max_radius,
        regime: if empirical.meta.sigma > 1.0 {
            "absolutely-convergent".into()
        } else {
            "model-vs-model".into()
        },
        pass: max_dev < threshold,
        shells,
    })
}
