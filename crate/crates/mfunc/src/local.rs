//! Local characteristic factors: the unit-interval average of
//! exp(i u a1(t) + i v a2(t)) built from the coefficient series of one prime.
//!
//! The integrand is entire in exp(2 pi i t), so the uniform N-point rule
//! converges geometrically; adaptivity is plain doubling with reuse of the
//! already-computed nodes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::LambdaSeries;
use crate::kahan::KahanSum;

/// Evaluation knobs for local factors.
#[derive(Debug, Clone, Copy)]
pub struct LocalEvalConfig {
    /// Real part of s; must exceed 1/2.
    pub sigma: f64,
    /// Truncation tolerance for the sum over prime powers.
    pub m_tail_tol: f64,
    /// Quadrature self-consistency tolerance (doubling stops below this).
    pub quad_tol: f64,
    /// Node ceiling, a power of two >= 64.
    pub max_nodes: u32,
}

impl LocalEvalConfig {
    pub fn new(sigma: f64) -> Result<Self> {
        Self::with_tolerances(sigma, 1e-12, 1e-13, 1 << 14)
    }

    pub fn with_tolerances(sigma: f64, m_tail_tol: f64, quad_tol: f64, max_nodes: u32) -> Result<Self> {
        let cfg = Self { sigma, m_tail_tol, quad_tol, max_nodes };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.5) {
            return Err(Error::ContractViolation(format!(
                "sigma must exceed 1/2, got {}",
                self.sigma
            )));
        }
        if !(self.m_tail_tol > 0.0) || !(self.quad_tol > 0.0) {
            return Err(Error::ContractViolation("tolerances must be positive".into()));
        }
        if self.max_nodes < 64 || !self.max_nodes.is_power_of_two() {
            return Err(Error::ContractViolation(format!(
                "max_nodes must be a power of two >= 64, got {}",
                self.max_nodes
            )));
        }
        Ok(())
    }
}

/// Coefficient series of one prime, truncated with a certified geometric
/// tail bound: entry m-1 holds Lambda(p^m) / p^(m sigma), split into real
/// and imaginary parts so complex coefficients cost nothing extra.
#[derive(Debug, Clone)]
pub struct TruncatedApSeries {
    p: u64,
    sigma: f64,
    re: Vec<f64>,
    im: Vec<f64>,
    tail_bound: f64,
    second_moment: f64,
    all_real: bool,
}

/// Smallest truncation length whose geometric tail bound
/// `B log p * p^(-sigma(M+1)) / (1 - p^(-sigma))` drops below `tol`.
pub(crate) fn minimal_truncation(p: u64, sigma: f64, bound_degree: f64, tol: f64) -> (usize, f64) {
    let q = (p as f64).powf(-sigma);
    let log_p = (p as f64).ln();
    let mut m = 1usize;
    let mut bound = bound_degree * log_p * q.powi(2) / (1.0 - q);
    while bound >= tol && m < 100_000 {
        m += 1;
        bound *= q;
    }
    (m, bound)
}

/// Build the truncated coefficient series for one prime.
pub fn build_ap_series(
    series: &LambdaSeries,
    p: u64,
    cfg: &LocalEvalConfig,
) -> Result<TruncatedApSeries> {
    cfg.validate()?;
    let (m_max, tail_bound) = minimal_truncation(p, cfg.sigma, series.bound_degree(), cfg.m_tail_tol);
    let mut re = Vec::with_capacity(m_max);
    let mut im = Vec::with_capacity(m_max);
    let mut second = KahanSum::new();
    let mut all_real = true;
    for m in 1..=m_max {
        let lam = series.value(p, m as u32)?;
        let scale = (p as f64).powf(-(m as f64) * cfg.sigma);
        let (r, i) = (lam.re * scale, lam.im * scale);
        re.push(r);
        im.push(i);
        second.add(r * r + i * i);
        if i != 0.0 {
            all_real = false;
        }
    }
    Ok(TruncatedApSeries {
        p,
        sigma: cfg.sigma,
        re,
        im,
        tail_bound,
        second_moment: second.value(),
        all_real,
    })
}

impl TruncatedApSeries {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn m_max(&self) -> usize {
        self.re.len()
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn coefficients(&self) -> (&[f64], &[f64]) {
        (&self.re, &self.im)
    }

    pub fn all_real(&self) -> bool {
        self.all_real
    }

    /// sum_m |Lambda(p^m)|^2 / p^(2 m sigma) over the stored terms.
    pub fn second_moment(&self) -> f64 {
        self.second_moment
    }

    /// The pair (a1, a2) at a point of the unit interval:
    /// a1 = -sum Re cos + sum Im sin, a2 = -sum Re sin - sum Im cos.
    pub fn eval_ap(&self, t: f64) -> (f64, f64) {
        let theta = std::f64::consts::TAU * t;
        let (step_cos, step_sin) = (theta.cos(), theta.sin());
        // cos(m theta), sin(m theta) by angle addition.
        let (mut c, mut s) = (step_cos, step_sin);
        let (mut a1, mut a2) = (0.0f64, 0.0f64);
        for m in 0..self.re.len() {
            a1 += -self.re[m] * c + self.im[m] * s;
            a2 += -self.re[m] * s - self.im[m] * c;
            let next_c = c * step_cos - s * step_sin;
            let next_s = s * step_cos + c * step_sin;
            (c, s) = (next_c, next_s);
        }
        (a1, a2)
    }

    /// Tables of a1, a2 at the N uniform nodes t_j = j/N.
    pub fn ap_tables(&self, n: u32) -> (Vec<f64>, Vec<f64>) {
        let mut a1 = Vec::with_capacity(n as usize);
        let mut a2 = Vec::with_capacity(n as usize);
        for j in 0..n {
            let (x, y) = self.eval_ap(j as f64 / n as f64);
            a1.push(x);
            a2.push(y);
        }
        (a1, a2)
    }
}

/// Result of the adaptive local-factor quadrature. Non-convergence at the
/// node ceiling is reported as a warning on the value, not an error.
#[derive(Debug, Clone, Copy)]
pub struct LocalFactorValue {
    pub value: Complex64,
    pub nodes: u32,
    pub converged: bool,
    /// Magnitude of the last doubling update, an a-posteriori error proxy.
    pub last_delta: f64,
}

fn average_at_nodes(series: &TruncatedApSeries, n: u32, offset: f64, u: f64, v: f64) -> Complex64 {
    let mut sum_re = KahanSum::new();
    let mut sum_im = KahanSum::new();
    for j in 0..n {
        let t = (j as f64 + offset) / n as f64;
        let (a1, a2) = series.eval_ap(t);
        let phase = u * a1 + v * a2;
        sum_re.add(phase.cos());
        sum_im.add(phase.sin());
    }
    Complex64::new(sum_re.value(), sum_im.value()) / n as f64
}

/// The local factor m_p(u, v, sigma): average of exp(i u a1 + i v a2) over
/// the unit interval, uniform rule doubled from 64 nodes until two
/// consecutive levels agree within `quad_tol`.
pub fn local_factor(
    series: &TruncatedApSeries,
    u: f64,
    v: f64,
    cfg: &LocalEvalConfig,
) -> LocalFactorValue {
    let mut n: u32 = 64;
    let mut value = average_at_nodes(series, n, 0.0, u, v);
    let mut last_delta = f64::INFINITY;
    while n < cfg.max_nodes {
        // The 2N-node rule is the mean of the N-node rule and its midpoints.
        let midpoints = average_at_nodes(series, n, 0.5, u, v);
        let refined = (value + midpoints) / 2.0;
        last_delta = (refined - value).norm();
        value = refined;
        n *= 2;
        if last_delta < cfg.quad_tol {
            return LocalFactorValue { value, nodes: n, converged: true, last_delta };
        }
    }
    LocalFactorValue { value, nodes: n, converged: false, last_delta }
}

/// Second-moment proxy mu = (u^2+v^2)/4 * sum |Lambda(p^m)|^2 p^(-2m sigma).
pub fn second_moment_mu(series: &TruncatedApSeries, u: f64, v: f64) -> f64 {
    (u * u + v * v) / 4.0 * series.second_moment()
}

/// Principal-branch logarithm of the local factor. Refuses outside the
/// mu < 1/4 regime where the branch is guaranteed: there the factor stays
/// in the right half-plane and the principal log is the honest one.
pub fn log_local_factor(
    series: &TruncatedApSeries,
    u: f64,
    v: f64,
    cfg: &LocalEvalConfig,
) -> Result<Complex64> {
    let mu = second_moment_mu(series, u, v);
    if !(mu < 0.25) {
        return Err(Error::Regime { mu });
    }
    Ok(local_factor(series, u, v, cfg).value.ln())
}

/// Fast tail approximation log m_p = -mu, valid in the same regime as
/// [`log_local_factor`]; the Euler-product tail uses it wholesale.
pub fn log_local_factor_tail_approx(series: &TruncatedApSeries, u: f64, v: f64) -> f64 {
    -second_moment_mu(series, u, v)
}
