//! Truncated Euler products of local factors and characteristic-function
//! grids.
//!
//! A product is cut at a prime `P` with the certified-style tail estimate
//! `d^2 (u^2+v^2) * 2/(2 sigma - 1) * P^(1-2 sigma) * log P`, the integral
//! comparison for `sum_{p>P} log^2 p / p^(2 sigma)`. Grids amortize each
//! local factor's quadrature across all nodes and switch to the second-order
//! logarithm approximation `log m_p = -mu` for primes beyond a radius where
//! the cubic remainder is provably below a budget; the switch point and the
//! achieved bounds travel in the grid metadata.

use num_complex::Complex64;

use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::field::LambdaSeries;
use crate::grid::GridAxis;
use crate::kahan::KahanSum;
use crate::local::{
    build_ap_series, local_factor, LocalEvalConfig, LocalFactorValue, TruncatedApSeries,
};
use crate::parallel;

/// Ceiling on the number of quadrature primes in grid assembly; beyond it
/// the log fast path takes over regardless of the budget check (recorded in
/// the metadata when it happens).
const QUAD_PRIME_CAP: u64 = 50_000;
const QUAD_PRIME_FLOOR: u64 = 53;

/// Configuration of a truncated Euler product.
#[derive(Debug, Clone, Copy)]
pub struct ProductConfig {
    pub sigma: f64,
    /// Include local factors for all primes `<= prime_cutoff`.
    pub prime_cutoff: u64,
    /// Reject evaluations whose tail bound exceeds this.
    pub tail_tol: f64,
    pub local: LocalEvalConfig,
}

impl ProductConfig {
    pub fn new(sigma: f64, prime_cutoff: u64, tail_tol: f64) -> Result<Self> {
        if prime_cutoff < 2 {
            return Err(Error::ContractViolation(format!(
                "prime cutoff must be >= 2, got {prime_cutoff}"
            )));
        }
        if !(tail_tol > 0.0) {
            return Err(Error::ContractViolation("tail tolerance must be positive".into()));
        }
        Ok(Self { sigma, prime_cutoff, tail_tol, local: LocalEvalConfig::new(sigma)? })
    }

    /// Default cutoff for a grid of half-width `extent`: invert the tail
    /// formula at the worst node (u^2+v^2 = 2 extent^2).
    pub fn for_grid(
        sigma: f64,
        extent: f64,
        tail_tol: f64,
        bound_degree: f64,
    ) -> Result<Self> {
        let cutoff = required_cutoff(bound_degree, sigma, 2.0 * extent * extent, tail_tol)?;
        Self::new(sigma, cutoff, tail_tol)
    }
}

/// Tail bound for the omitted primes `p > cutoff` at the point (u, v):
/// `C_tail (u^2+v^2) * 2/(2 sigma-1) * cutoff^(1-2 sigma) * log cutoff`
/// with `C_tail = bound_degree^2`.
pub fn tail_bound(bound_degree: f64, sigma: f64, cutoff: u64, u: f64, v: f64) -> f64 {
    let c_tail = bound_degree * bound_degree;
    let p = cutoff as f64;
    c_tail * (u * u + v * v) * 2.0 / (2.0 * sigma - 1.0) * p.powf(1.0 - 2.0 * sigma) * p.ln()
}

/// Smallest cutoff whose tail bound at `u^2+v^2 = max_uv_sq` is below
/// `tail_tol`. Errors if the sieve cap cannot reach the tolerance.
pub fn required_cutoff(
    bound_degree: f64,
    sigma: f64,
    max_uv_sq: f64,
    tail_tol: f64,
) -> Result<u64> {
    let bound_at = |p: u64| {
        let pf = p as f64;
        bound_degree * bound_degree * max_uv_sq * 2.0 / (2.0 * sigma - 1.0)
            * pf.powf(1.0 - 2.0 * sigma)
            * pf.ln()
    };
    // The formula is monotone decreasing once (2 sigma - 1) ln P > 1; the
    // floor keeps the search inside that regime for sigma >= 0.55.
    let floor = 1000u64;
    if bound_at(floor) <= tail_tol {
        let mut lo = 2u64;
        let mut hi = floor;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if bound_at(mid.max(2)) <= tail_tol {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return Ok(lo.max(2));
    }
    let mut hi = floor;
    while bound_at(hi) > tail_tol {
        hi = hi.saturating_mul(2);
        if hi > crate::arith::SIEVE_CAP {
            return Err(Error::Resource(format!(
                "no prime cutoff below the sieve cap reaches tail tolerance {tail_tol:.3e} \
                 (sigma={sigma}, |w|^2={max_uv_sq})"
            )));
        }
    }
    let mut lo = hi / 2;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if bound_at(mid) <= tail_tol {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Product of a slice of factors by balanced pairwise reduction; bounds the
/// rounding-error growth to O(log n) and makes the result insensitive to
/// traversal order.
fn balanced_product(factors: &[Complex64]) -> Complex64 {
    match factors.len() {
        0 => Complex64::new(1.0, 0.0),
        1 => factors[0],
        n => balanced_product(&factors[..n / 2]) * balanced_product(&factors[n / 2..]),
    }
}

/// Result of a truncated-product evaluation.
#[derive(Debug, Clone, Copy)]
pub struct ProductValue {
    pub value: Complex64,
    pub tail_bound: f64,
    /// Number of local factors whose quadrature hit the node ceiling.
    pub unconverged: u32,
}

/// The finite product over all primes `p <= cfg.prime_cutoff`, every factor
/// evaluated by adaptive quadrature, combined in ascending prime order.
pub fn truncated_product(
    series: &LambdaSeries,
    u: f64,
    v: f64,
    cfg: &ProductConfig,
    primes: &PrimeTable,
) -> Result<ProductValue> {
    cfg.local.validate()?;
    if primes.limit() < cfg.prime_cutoff {
        return Err(Error::ContractViolation(format!(
            "prime table covers {} but the cutoff is {}",
            primes.limit(),
            cfg.prime_cutoff
        )));
    }
    let bound = tail_bound(series.bound_degree(), cfg.sigma, cfg.prime_cutoff, u, v);
    if bound > cfg.tail_tol {
        // Saturate at the sieve cap when even that cannot reach the
        // tolerance; "at least" stays true either way.
        let required = required_cutoff(series.bound_degree(), cfg.sigma, u * u + v * v, cfg.tail_tol)
            .unwrap_or(crate::arith::SIEVE_CAP);
        return Err(Error::CutoffTooSmall {
            cutoff: cfg.prime_cutoff,
            bound,
            tol: cfg.tail_tol,
            required,
        });
    }
    let plist = primes.primes_up_to(cfg.prime_cutoff);
    let locals: Vec<Result<LocalFactorValue>> = parallel::ordered_map(plist, |&p| {
        let ap = build_ap_series(series, p, &cfg.local)?;
        Ok(local_factor(&ap, u, v, &cfg.local))
    });
    let mut factors = Vec::with_capacity(locals.len());
    let mut unconverged = 0u32;
    for r in locals {
        let lf = r?;
        if !lf.converged {
            unconverged += 1;
        }
        factors.push(lf.value);
    }
    Ok(ProductValue { value: balanced_product(&factors), tail_bound: bound, unconverged })
}

/// Metadata carried by a characteristic-function grid.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CharFunMeta {
    pub sigma: f64,
    pub flavor: String,
    pub bound_degree: f64,
    pub prime_cutoff: u64,
    /// Primes above this entered through the log fast path.
    pub quad_prime_cutoff: u64,
    pub tail_tol: f64,
    /// Tail bound at the worst grid node.
    pub max_tail_bound: f64,
    /// Budget allowed to the fast-path remainder when picking the switch.
    pub fast_path_budget: f64,
    /// Fast-path remainder bound actually achieved at the reference radius.
    pub fast_path_remainder: f64,
    pub quad_tol: f64,
    pub m_tail_tol: f64,
    pub unconverged_factors: u64,
}

/// Sampled characteristic function on a square centered grid.
#[derive(Debug, Clone)]
pub struct CharFunGrid {
    pub u_axis: GridAxis,
    pub v_axis: GridAxis,
    /// Row-major: index `i * n_v + j` holds the value at (u_i, v_j).
    pub values: Vec<Complex64>,
    pub meta: CharFunMeta,
}

impl CharFunGrid {
    pub fn value_at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.v_axis.len() + j]
    }

    /// Value at the (0,0) node.
    pub fn origin_value(&self) -> Complex64 {
        self.value_at(self.u_axis.zero_index(), self.v_axis.zero_index())
    }

    /// Largest |m| over the boundary ring of the grid.
    pub fn boundary_max(&self) -> f64 {
        let (nu, nv) = (self.u_axis.len(), self.v_axis.len());
        let mut best = 0.0f64;
        for i in 0..nu {
            for j in 0..nv {
                if i == 0 || j == 0 || i == nu - 1 || j == nv - 1 {
                    best = best.max(self.value_at(i, j).norm());
                }
            }
        }
        best
    }
}

/// Remainder bound for running the log fast path on all primes > m:
/// cubic term 1/4 (r d)^3 * sum (log p / p^sigma)^3 plus the mu^2 term,
/// both sums replaced by their integral comparisons.
fn fast_path_remainder(bound_degree: f64, sigma: f64, m: u64, r: f64) -> f64 {
    let mf = m as f64;
    let lg = mf.ln();
    let a3 = 3.0 * sigma - 1.0;
    let i3 = mf.powf(1.0 - 3.0 * sigma) * (lg * lg / a3 + 2.0 * lg / (a3 * a3) + 2.0 / (a3 * a3 * a3));
    let a4 = 4.0 * sigma - 1.0;
    let lg3 = lg * lg * lg;
    let i4 = mf.powf(1.0 - 4.0 * sigma)
        * (lg3 / a4 + 3.0 * lg * lg / (a4 * a4) + 6.0 * lg / (a4 * a4 * a4) + 6.0 / (a4 * a4 * a4 * a4));
    let rd = r * bound_degree;
    0.25 * rd.powi(3) * i3 + rd.powi(4) / 16.0 * i4
}

/// Reference radius for the fast-path budget: the full grid diagonal when
/// small, else a cap past which only the (already tiny) far field is
/// affected.
const FAST_PATH_RADIUS_CAP: f64 = 24.0;

fn pick_quad_cutoff(bound_degree: f64, sigma: f64, r_max: f64, budget: f64, limit: u64) -> (u64, f64) {
    let r_ref = r_max.min(FAST_PATH_RADIUS_CAP);
    let cap = QUAD_PRIME_CAP.min(limit);
    let mut lo = QUAD_PRIME_FLOOR;
    if fast_path_remainder(bound_degree, sigma, cap, r_ref) > budget {
        return (cap, fast_path_remainder(bound_degree, sigma, cap, r_ref));
    }
    let mut hi = cap;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if fast_path_remainder(bound_degree, sigma, mid, r_ref) <= budget {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (lo, fast_path_remainder(bound_degree, sigma, lo, r_ref))
}

/// One prime's local-factor grid, accumulated into `acc` by elementwise
/// multiplication. The quadrature nodes are shared across the whole grid;
/// the v-dependence enters through per-node geometric phase recurrences
/// anchored at the exact zero node.
fn multiply_factor_grid(
    acc: &mut [Complex64],
    ap: &TruncatedApSeries,
    axis: &GridAxis,
    nodes: u32,
) {
    let n = axis.len();
    let h = axis.zero_index();
    let step = axis.step();
    let (a1, a2) = ap.ap_tables(nodes);
    // E2[t][j] = exp(i v_j a2(t)), built outward from v = 0 so the center
    // column stays exactly 1.
    let mut e2 = vec![Complex64::new(0.0, 0.0); nodes as usize * n];
    for (t, row) in e2.chunks_mut(n).enumerate() {
        let ratio = Complex64::from_polar(1.0, step * a2[t]);
        row[h] = Complex64::new(1.0, 0.0);
        for j in h + 1..n {
            row[j] = row[j - 1] * ratio;
        }
        let ratio_conj = ratio.conj();
        for j in (0..h).rev() {
            row[j] = row[j + 1] * ratio_conj;
        }
    }
    let inv_n = 1.0 / nodes as f64;
    parallel::for_each_chunk_mut(acc, n, |i, acc_row| {
        let u = axis.node(i);
        let mut row = vec![Complex64::new(0.0, 0.0); n];
        for t in 0..nodes as usize {
            let s = Complex64::from_polar(1.0, u * a1[t]);
            let e2_row = &e2[t * n..(t + 1) * n];
            for (slot, &e) in row.iter_mut().zip(e2_row) {
                *slot += s * e;
            }
        }
        for (a, &r) in acc_row.iter_mut().zip(&row) {
            *a *= r * inv_n;
        }
    });
}

/// Assemble the characteristic-function grid over `[-extent, extent)^2`.
///
/// Primes up to the quadrature switch get full per-prime factor grids;
/// the remaining primes up to the cutoff enter as a single closed-form
/// Gaussian factor `exp(-(u^2+v^2)/4 * S2_tail)` from the second-order
/// log expansion. Both cutoffs and the achieved remainder bounds are
/// recorded in the metadata.
pub fn charfun_grid(
    series: &LambdaSeries,
    extent: f64,
    n_points: usize,
    cfg: &ProductConfig,
    primes: &PrimeTable,
) -> Result<CharFunGrid> {
    cfg.local.validate()?;
    let axis = GridAxis::symmetric(extent, n_points)?;
    if primes.limit() < cfg.prime_cutoff {
        return Err(Error::ContractViolation(format!(
            "prime table covers {} but the cutoff is {}",
            primes.limit(),
            cfg.prime_cutoff
        )));
    }
    let degree = series.bound_degree();
    let max_uv_sq = 2.0 * extent * extent;
    let max_tail = tail_bound(degree, cfg.sigma, cfg.prime_cutoff, extent, extent);
    if max_tail > cfg.tail_tol {
        return Err(Error::CutoffTooSmall {
            cutoff: cfg.prime_cutoff,
            bound: max_tail,
            tol: cfg.tail_tol,
            required: required_cutoff(degree, cfg.sigma, max_uv_sq, cfg.tail_tol)
                .unwrap_or(crate::arith::SIEVE_CAP),
        });
    }

    let r_max = 2.0 * extent;
    let budget = cfg.tail_tol.min(1e-4);
    let (quad_cutoff, remainder) =
        pick_quad_cutoff(degree, cfg.sigma, r_max, budget, cfg.prime_cutoff);

    let n = axis.len();
    let mut values = vec![Complex64::new(1.0, 0.0); n * n];
    let mut unconverged = 0u64;

    // Quadrature primes, ascending; the reduction order is fixed so results
    // do not depend on the worker count.
    let corner = axis.node(0).abs();
    let top = axis.node(n - 1).abs().max(corner);
    for &p in primes.primes_up_to(quad_cutoff.min(cfg.prime_cutoff)) {
        let ap = build_ap_series(series, p, &cfg.local)?;
        // Node count fixed per prime by probing the worst corners.
        let mut nodes = 0u32;
        for &(u, v) in &[(corner, corner), (corner, top), (top, corner)] {
            let probe = local_factor(&ap, -u, v, &cfg.local);
            if !probe.converged {
                unconverged += 1;
            }
            nodes = nodes.max(probe.nodes);
        }
        multiply_factor_grid(&mut values, &ap, &axis, nodes);
    }

    // Second-order tail over the remaining primes: a single Gaussian factor
    // per node with scale S2 = sum second moments.
    let tail_primes: Vec<u64> = primes
        .primes_up_to(cfg.prime_cutoff)
        .iter()
        .copied()
        .filter(|&p| p > quad_cutoff)
        .collect();
    let mut s2_tail = KahanSum::new();
    {
        let chunked: Vec<f64> = parallel::ordered_map_indices(
            tail_primes.chunks(4096).count(),
            |c| {
                let chunk = &tail_primes[c * 4096..((c + 1) * 4096).min(tail_primes.len())];
                let mut acc = KahanSum::new();
                for &p in chunk {
                    let ap = build_ap_series(series, p, &cfg.local)
                        .expect("tail series construction cannot fail after the quad pass");
                    acc.add(ap.second_moment());
                }
                acc.value()
            },
        );
        for v in chunked {
            s2_tail.add(v);
        }
    }
    let s2 = s2_tail.value();
    if s2 != 0.0 {
        parallel::for_each_chunk_mut(&mut values, n, |i, row| {
            let u = axis.node(i);
            for (j, slot) in row.iter_mut().enumerate() {
                let v = axis.node(j);
                *slot *= (-(u * u + v * v) / 4.0 * s2).exp();
            }
        });
    }

    Ok(CharFunGrid {
        u_axis: axis,
        v_axis: axis,
        values,
        meta: CharFunMeta {
            sigma: cfg.sigma,
            flavor: series.flavor(),
            bound_degree: degree,
            prime_cutoff: cfg.prime_cutoff,
            quad_prime_cutoff: quad_cutoff,
            tail_tol: cfg.tail_tol,
            max_tail_bound: max_tail,
            fast_path_budget: budget,
            fast_path_remainder: remainder,
            quad_tol: cfg.local.quad_tol,
            m_tail_tol: cfg.local.m_tail_tol,
            unconverged_factors: unconverged,
        },
    })
}

/// One shell of the decay profile.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ShellStat {
    pub r_lo: f64,
    pub r_hi: f64,
    pub count: usize,
    pub max_abs: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DecayProfile {
    pub shells: Vec<ShellStat>,
    /// Least-squares slope of log(-log max|m|) against log r over the used
    /// shells; compare with 1/sigma.
    pub fitted_exponent: Option<f64>,
    /// False when the extent shows too little decay to fit.
    pub conclusive: bool,
}

/// Shell maxima of |m| in the L1 radius r = |u| + |v|, with a stretched-
/// exponential fit of the decay exponent.
pub fn decay_profile(grid: &CharFunGrid, r_min: f64, r_max: f64, n_shells: usize) -> DecayProfile {
    assert!(r_max > r_min && r_min >= 0.0 && n_shells >= 2);
    let width = (r_max - r_min) / n_shells as f64;
    let mut shells: Vec<ShellStat> = (0..n_shells)
        .map(|k| ShellStat {
            r_lo: r_min + k as f64 * width,
            r_hi: r_min + (k + 1) as f64 * width,
            count: 0,
            max_abs: 0.0,
        })
        .collect();
    let (nu, nv) = (grid.u_axis.len(), grid.v_axis.len());
    for i in 0..nu {
        let u = grid.u_axis.node(i);
        for j in 0..nv {
            let r = u.abs() + grid.v_axis.node(j).abs();
            if r < r_min || r >= r_max {
                continue;
            }
            let k = (((r - r_min) / width) as usize).min(n_shells - 1);
            let a = grid.value_at(i, j).norm();
            shells[k].count += 1;
            if a > shells[k].max_abs {
                shells[k].max_abs = a;
            }
        }
    }
    // Fit y = log(-log S) against x = log r_mid over populated, decayed
    // shells.
    let pts: Vec<(f64, f64)> = shells
        .iter()
        .filter(|s| s.count > 0 && s.max_abs > 0.0 && s.max_abs < 0.999)
        .map(|s| {
            let r_mid = 0.5 * (s.r_lo + s.r_hi);
            (r_mid.ln(), (-s.max_abs.ln()).ln())
        })
        .collect();
    let decayed = shells.iter().filter(|s| s.count > 0).all(|s| s.max_abs < 0.5);
    if pts.len() < 3 {
        return DecayProfile { shells, fitted_exponent: None, conclusive: false };
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    DecayProfile { shells, fitted_exponent: Some(slope), conclusive: decayed }
}
