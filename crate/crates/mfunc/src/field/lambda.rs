//! Generalized von Mangoldt coefficient series: Dedekind,
//! quadratic-Dirichlet, and cusp-form flavors behind one accessor.

use std::sync::Arc;

use num_complex::Complex64;

use crate::arith::kronecker_symbol;
use crate::error::{Error, Result};
use crate::field::{EigenvalueTable, NumberField};

/// Satake parameters: the unit-circle (for |lambda| <= 2) roots of
/// X^2 - lambda X + 1.
#[derive(Debug, Clone, Copy)]
pub struct SatakePair {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl SatakePair {
    pub fn from_eigenvalue(lambda: f64) -> Self {
        if lambda.abs() <= 2.0 {
            let im = (4.0 - lambda * lambda).sqrt() / 2.0;
            let alpha = Complex64::new(lambda / 2.0, im);
            Self { alpha, beta: alpha.conj() }
        } else {
            let root = (lambda * lambda - 4.0).sqrt() / 2.0;
            let alpha = Complex64::new(lambda / 2.0 + root, 0.0);
            Self { alpha, beta: Complex64::new(lambda / 2.0 - root, 0.0) }
        }
    }

    /// alpha^m + beta^m, real because the pair is conjugate or real.
    pub fn power_sum(&self, m: u32) -> f64 {
        (self.alpha.powu(m) + self.beta.powu(m)).re
    }
}

/// alpha^m + beta^m via the recursion c_{m+1} = lambda c_m - c_{m-1}
/// (valid whenever alpha beta = 1 and alpha + beta = lambda).
pub fn power_sum_recursive(lambda: f64, m: u32) -> f64 {
    match m {
        0 => 2.0,
        1 => lambda,
        _ => {
            let (mut prev, mut cur) = (2.0, lambda);
            for _ in 1..m {
                (prev, cur) = (cur, lambda * cur - prev);
            }
            cur
        }
    }
}

/// Per-prime accessor for the coefficients of -L'/L as a Dirichlet series
/// over prime powers.
#[derive(Debug, Clone)]
pub enum LambdaSeries {
    /// Dedekind zeta of a number field.
    Dedekind(Arc<NumberField>),
    /// Dirichlet L-function of the real primitive character mod |d|.
    DirichletQuadratic { d: i64 },
    /// Cusp-form L-function with eigenvalues from a table.
    CuspForm(Arc<EigenvalueTable>),
}

impl LambdaSeries {
    pub fn dedekind(field: NumberField) -> Self {
        Self::Dedekind(Arc::new(field))
    }

    pub fn dirichlet_quadratic(d: i64) -> Result<Self> {
        if !crate::field::is_fundamental_discriminant(d) {
            return Err(Error::ContractViolation(format!(
                "{d} is not a fundamental discriminant"
            )));
        }
        Ok(Self::DirichletQuadratic { d })
    }

    pub fn cusp_form(table: EigenvalueTable) -> Self {
        Self::CuspForm(Arc::new(table))
    }

    /// The coefficient at p^m.
    pub fn value(&self, p: u64, m: u32) -> Result<Complex64> {
        debug_assert!(m >= 1);
        let log_p = (p as f64).ln();
        match self {
            Self::Dedekind(field) => Ok(Complex64::new(field.lambda_value(p, m)?, 0.0)),
            Self::DirichletQuadratic { d } => {
                let chi = kronecker_symbol(*d, p);
                let chi_m = if chi == 0 {
                    0.0
                } else if chi == -1 && m % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
                Ok(Complex64::new(chi_m * log_p, 0.0))
            }
            Self::CuspForm(table) => {
                let lambda = table.lambda(p).ok_or(Error::MissingEigenvalue { p })?;
                Ok(Complex64::new(power_sum_recursive(lambda, m) * log_p, 0.0))
            }
        }
    }

    /// Uniform coefficient bound: |Lambda(p^m)| <= bound_degree * log p.
    pub fn bound_degree(&self) -> f64 {
        match self {
            Self::Dedekind(field) => field.degree() as f64,
            Self::DirichletQuadratic { .. } => 1.0,
            Self::CuspForm(_) => 2.0,
        }
    }

    /// All built-in flavors have real coefficients; the evaluation pipeline
    /// nonetheless carries imaginary parts for the general case.
    pub fn is_real(&self) -> bool {
        true
    }

    pub fn flavor(&self) -> String {
        match self {
            Self::Dedekind(field) => format!("dedekind[{}]", field.spec().label()),
            Self::DirichletQuadratic { d } => format!("dirichlet[{d}]"),
            Self::CuspForm(table) => format!("cusp_form[{}]", table.label()),
        }
    }
}

/// Check the factorization identity zeta_{Q(sqrt(D))} = zeta * L(s, chi_D) at
/// the coefficient level: Lambda_K(p^m) = Lambda(p^m) * (1 + chi_D(p)^m) for
/// p not dividing 2D. Both sides are computed through independent paths and
/// compared as exact integer multipliers of log p.
pub fn quadratic_consistency_check(d: i64, p: u64, m: u32) -> Result<bool> {
    if !crate::field::is_fundamental_discriminant(d) {
        return Err(Error::ContractViolation(format!(
            "{d} is not a fundamental discriminant"
        )));
    }
    if p == 2 || d.unsigned_abs() % p == 0 {
        return Err(Error::ContractViolation(format!(
            "consistency check needs p coprime to 2D, got p={p}, D={d}"
        )));
    }
    let field = NumberField::new(crate::field::NumberFieldSpec::quadratic(d)?);
    let lhs = field.lambda_multiplier(p, m)?;
    let chi = kronecker_symbol(d, p);
    let chi_m: i64 = if chi == -1 && m % 2 == 1 { -1 } else { 1 };
    let rhs = 1 + chi_m;
    Ok(lhs as i64 == rhs)
}
