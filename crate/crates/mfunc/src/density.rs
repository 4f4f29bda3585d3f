//! Fourier inversion of characteristic-function grids to densities, and
//! test-function integrals against them.
//!
//! Measure conventions are fixed here once: |dz| = (2 pi)^-1 dx dy,
//! |dw| = (2 pi)^-1 du dv, and the additive character is
//! psi_w(z) = exp(i (Re z Re w + Im z Im w)). Grids store bare function
//! values; every quadrature weight carries its own (2 pi)^-1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dft::{centered_dft_2d, Sign};
use crate::error::{Error, Result};
use crate::grid::GridAxis;
use crate::kahan::KahanSum;
use crate::product::CharFunGrid;

/// Boundary |m| above which inversion refuses outright.
pub const BOUNDARY_REFUSE: f64 = 0.1;
/// Boundary |m| above which inversion proceeds but flags a warning.
pub const BOUNDARY_WARN: f64 = 1e-3;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityMeta {
    pub sigma: f64,
    pub flavor: String,
    /// |(2 pi)^-1 sum M dx dy - 1|.
    pub normalization_residual: f64,
    /// Largest |imaginary part| discarded by the projection to real values.
    pub max_imag: f64,
    /// Peak |M| after projection.
    pub peak: f64,
    /// Most negative density value (discretization ringing; reported, never
    /// clipped).
    pub min_value: f64,
    /// Largest |m| on the source grid boundary.
    pub boundary_max: f64,
    pub boundary_warning: bool,
    pub source_prime_cutoff: u64,
}

/// Real density values on the reciprocal z-grid of a characteristic-function
/// grid.
#[derive(Debug, Clone)]
pub struct DensityGrid {
    pub x_axis: GridAxis,
    pub y_axis: GridAxis,
    /// Row-major: index `a * n_y + b` holds M(x_a + i y_b).
    pub values: Vec<f64>,
    pub meta: DensityMeta,
}

impl DensityGrid {
    pub fn value_at(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.y_axis.len() + b]
    }

    /// (2 pi)^-1 sum M dx dy.
    pub fn normalization(&self) -> f64 {
        let w = self.x_axis.step() * self.y_axis.step() / std::f64::consts::TAU;
        KahanSum::sum_iter(self.values.iter().copied()) * w
    }
}

/// Invert a characteristic-function grid to the density on the reciprocal
/// grid: M(z) = (2 pi)^-1 sum m(w) exp(-i<z,w>) du dv.
///
/// The quadrature is symmetric: the lowest row and column of the centered
/// even grid have no mirror node at +extent, so they enter with weight
/// zero. That keeps the summed integrand conjugate-even, and the density
/// real to rounding rather than to the size of |m| at the boundary.
pub fn invert_to_density(grid: &CharFunGrid) -> Result<DensityGrid> {
    let boundary_max = grid.boundary_max();
    if boundary_max >= BOUNDARY_REFUSE {
        return Err(Error::AliasingRisk { boundary_max, limit: BOUNDARY_REFUSE });
    }
    let (nu, nv) = (grid.u_axis.len(), grid.v_axis.len());
    let mut symmetrized = grid.values.clone();
    for j in 0..nv {
        symmetrized[j] = Complex64::new(0.0, 0.0);
    }
    for i in 0..nu {
        symmetrized[i * nv] = Complex64::new(0.0, 0.0);
    }
    let transformed = centered_dft_2d(&symmetrized, nu, nv, Sign::Minus);
    let weight =
        grid.u_axis.step() * grid.v_axis.step() / std::f64::consts::TAU;
    let mut values = Vec::with_capacity(transformed.len());
    let mut max_imag = 0.0f64;
    let mut peak = 0.0f64;
    let mut min_value = f64::INFINITY;
    for z in &transformed {
        let re = z.re * weight;
        let im = (z.im * weight).abs();
        if im > max_imag {
            max_imag = im;
        }
        if re.abs() > peak {
            peak = re.abs();
        }
        if re < min_value {
            min_value = re;
        }
        values.push(re);
    }
    let x_axis = grid.u_axis.reciprocal();
    let y_axis = grid.v_axis.reciprocal();
    let density = DensityGrid {
        x_axis,
        y_axis,
        values,
        meta: DensityMeta {
            sigma: grid.meta.sigma,
            flavor: grid.meta.flavor.clone(),
            normalization_residual: 0.0,
            max_imag,
            peak,
            min_value,
            boundary_max,
            boundary_warning: boundary_max >= BOUNDARY_WARN,
            source_prime_cutoff: grid.meta.prime_cutoff,
        },
    };
    let residual = (density.normalization() - 1.0).abs();
    let mut density = density;
    density.meta.normalization_residual = residual;
    Ok(density)
}

/// Transform the (real, projected) density back to the w-grid:
/// m~(w) = (2 pi)^-1 sum M(z) exp(+i<z,w>) dx dy. Up to the discarded
/// imaginary part this undoes [`invert_to_density`] exactly.
pub fn forward_transform(density: &DensityGrid) -> Vec<Complex64> {
    let (nx, ny) = (density.x_axis.len(), density.y_axis.len());
    let complex: Vec<Complex64> =
        density.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let transformed = centered_dft_2d(&complex, nx, ny, Sign::Plus);
    let weight = density.x_axis.step() * density.y_axis.step() / std::f64::consts::TAU;
    transformed.into_iter().map(|z| z * weight).collect()
}

/// Test functions with grid-computable transforms.
#[derive(Debug, Clone)]
pub enum TestFunction {
    /// exp(-|z - center|^2 / (2 width^2)).
    Gaussian { center: (f64, f64), width: f64 },
    /// Indicator of [x0,x1] x [y0,y1] mollified by a Gaussian of scale
    /// `smoothing` per axis.
    SmoothedRectangle { x0: f64, x1: f64, y0: f64, y1: f64, smoothing: f64 },
    /// Arbitrary samples aligned with the density grid they are used on.
    Sampled { values: Vec<f64> },
}

fn smooth_step(x: f64, a: f64, b: f64, s: f64) -> f64 {
    let r = std::f64::consts::SQRT_2 * s;
    0.5 * (libm::erf((x - a) / r) - libm::erf((x - b) / r))
}

/// 1D transform factor of a sharp interval: int_a^b exp(i x u) dx.
fn interval_factor(a: f64, b: f64, u: f64) -> Complex64 {
    if u.abs() < 1e-12 {
        Complex64::new(b - a, 0.0)
    } else {
        (Complex64::new(0.0, b * u).exp() - Complex64::new(0.0, a * u).exp())
            / Complex64::new(0.0, u)
    }
}

impl TestFunction {
    pub fn gaussian(center: (f64, f64), width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::ContractViolation("gaussian width must be positive".into()));
        }
        Ok(Self::Gaussian { center, width })
    }

    pub fn smoothed_rectangle(x0: f64, x1: f64, y0: f64, y1: f64, smoothing: f64) -> Result<Self> {
        if !(x1 > x0 && y1 > y0 && smoothing > 0.0) {
            return Err(Error::ContractViolation(
                "rectangle needs x1 > x0, y1 > y0 and positive smoothing".into(),
            ));
        }
        Ok(Self::SmoothedRectangle { x0, x1, y0, y1, smoothing })
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        match self {
            Self::Gaussian { center, width } => {
                let (dx, dy) = (x - center.0, y - center.1);
                Ok((-(dx * dx + dy * dy) / (2.0 * width * width)).exp())
            }
            Self::SmoothedRectangle { x0, x1, y0, y1, smoothing } => {
                Ok(smooth_step(x, *x0, *x1, *smoothing) * smooth_step(y, *y0, *y1, *smoothing))
            }
            Self::Sampled { .. } => Err(Error::ContractViolation(
                "sampled test functions are evaluated through their grid".into(),
            )),
        }
    }

    /// Closed-form transform Phi~(w) = int Phi(z) psi_w(z) |dz|; None for
    /// sampled functions (their transform is taken on the grid).
    pub fn transform(&self, u: f64, v: f64) -> Option<Complex64> {
        match self {
            Self::Gaussian { center, width } => {
                let s2 = width * width;
                let phase = Complex64::new(0.0, center.0 * u + center.1 * v).exp();
                Some(s2 * phase * (-(s2 * (u * u + v * v)) / 2.0).exp())
            }
            Self::SmoothedRectangle { x0, x1, y0, y1, smoothing } => {
                let s2 = smoothing * smoothing;
                let fx = interval_factor(*x0, *x1, u) * (-s2 * u * u / 2.0).exp();
                let fy = interval_factor(*y0, *y1, v) * (-s2 * v * v / 2.0).exp();
                Some(fx * fy / std::f64::consts::TAU)
            }
            Self::Sampled { .. } => None,
        }
    }

    /// Total mass int Phi |dz| when known in closed form.
    pub fn total_mass(&self) -> Option<f64> {
        match self {
            Self::Gaussian { width, .. } => Some(width * width),
            Self::SmoothedRectangle { x0, x1, y0, y1, .. } => {
                Some((x1 - x0) * (y1 - y0) / std::f64::consts::TAU)
            }
            Self::Sampled { .. } => None,
        }
    }
}

/// Result of a density-side test-function integral.
#[derive(Debug, Clone, Copy)]
pub struct IntegralValue {
    pub value: f64,
    /// Mass of Phi not captured by the grid quadrature (closed-form total
    /// minus the grid total); zero when the total mass is unknown.
    pub escaped_mass: f64,
}

/// int Phi(z) M(z) |dz| by grid quadrature.
pub fn integrate_against(density: &DensityGrid, phi: &TestFunction) -> Result<IntegralValue> {
    let (nx, ny) = (density.x_axis.len(), density.y_axis.len());
    let weight = density.x_axis.step() * density.y_axis.step() / std::f64::consts::TAU;
    let mut acc = KahanSum::new();
    let mut phi_mass = KahanSum::new();
    match phi {
        TestFunction::Sampled { values } => {
            if values.len() != density.values.len() {
                return Err(Error::GridMismatch(format!(
                    "sampled test function has {} values, grid has {}",
                    values.len(),
                    density.values.len()
                )));
            }
            for (&f, &m) in values.iter().zip(&density.values) {
                acc.add(f * m);
            }
            return Ok(IntegralValue { value: acc.value() * weight, escaped_mass: 0.0 });
        }
        _ => {
            for a in 0..nx {
                let x = density.x_axis.node(a);
                for b in 0..ny {
                    let f = phi.eval(x, density.y_axis.node(b))?;
                    acc.add(f * density.value_at(a, b));
                    phi_mass.add(f);
                }
            }
        }
    }
    let escaped = phi
        .total_mass()
        .map(|total| (total - phi_mass.value() * weight).max(0.0))
        .unwrap_or(0.0);
    Ok(IntegralValue { value: acc.value() * weight, escaped_mass: escaped })
}

/// The Parseval route: int Phi~(w) m(-w) |dw| evaluated on the w-grid, real
/// part returned. Must agree with [`integrate_against`] on the inverted
/// density.
pub fn fourier_pairing(grid: &CharFunGrid, phi: &TestFunction) -> Result<f64> {
    let (nu, nv) = (grid.u_axis.len(), grid.v_axis.len());
    let weight = grid.u_axis.step() * grid.v_axis.step() / std::f64::consts::TAU;
    let mut acc_re = KahanSum::new();
    match phi {
        TestFunction::Sampled { .. } => Err(Error::ContractViolation(
            "fourier_pairing needs a closed-form transform; pair sampled functions \
             through integrate_against"
                .into(),
        )),
        _ => {
            for i in 0..nu {
                let u = grid.u_axis.node(i);
                for j in 0..nv {
                    let v = grid.v_axis.node(j);
                    let phi_t = phi.transform(u, v).expect("closed-form kinds transform");
                    // m(-w) = conj m(w) by construction of the local factors.
                    let term = phi_t * grid.value_at(i, j).conj();
                    acc_re.add(term.re);
                }
            }
            Ok(acc_re.value() * weight)
        }
    }
}
