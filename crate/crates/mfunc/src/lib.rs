//! Numerical toolkit for the value-distribution of logarithmic derivatives
//! of Dedekind zeta functions and related L-functions.
//!
//! The pipeline has three legs:
//!
//! 1. **Model.** The characteristic function `m(u,v,σ)` is an Euler product of
//!    local factors, each a unit-interval average of a unimodular exponential
//!    built from generalized von Mangoldt coefficients ([`local`], [`product`]).
//! 2. **Density.** Fourier inversion of the characteristic-function grid yields
//!    the density `M_σ(z)` whose integrals against test functions describe the
//!    value-distribution ([`density`]).
//! 3. **Experiment.** Sampling the truncated logarithmic derivative along a
//!    vertical line gives empirical characteristic functions and test-function
//!    averages to compare against the model ([`empirical`]).
//!
//! Number-field arithmetic (prime splitting, Kronecker symbols, Hecke
//! eigenvalues) lives in [`arith`] and [`field`].
//!
//! Data-parallel inner loops run on rayon when the `parallel` feature is
//! enabled (default); a sequential fallback is always available and can be
//! forced at runtime through [`parallel::set_sequential`].

pub mod arith;
pub mod density;
pub mod dft;
pub mod empirical;
pub mod error;
pub mod field;
pub mod grid;
pub mod io;
pub mod kahan;
pub mod local;
pub mod parallel;
pub mod product;

pub use error::{Error, Result};
