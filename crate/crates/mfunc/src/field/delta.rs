//! Hecke eigenvalues for cusp forms.
//!
//! Only the weight-12 discriminant form is built in; its eigenvalues come
//! from the q-expansion q * prod (1-q^n)^24 computed by power-series
//! multiplication (the product is applied through its pentagonal-number
//! expansion, which is the same series with almost all terms zero). Other
//! forms are supplied by the user as a CSV of normalized eigenvalues.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Cap on the built-in q-expansion length.
pub const DELTA_LIMIT_CAP: u64 = 10_000;

/// Coefficients tau(1..=limit) of the discriminant form, exact integers.
pub fn delta_tau_series(limit: u64) -> Result<Vec<i128>> {
    if limit == 0 {
        return Err(Error::EmptyRange("tau series needs limit >= 1".into()));
    }
    if limit > DELTA_LIMIT_CAP {
        return Err(Error::Resource(format!(
            "tau series limit {limit} exceeds cap {DELTA_LIMIT_CAP}; supply eigenvalues by file"
        )));
    }
    let n = limit as usize;
    // Euler / pentagonal expansion of prod (1 - q^k) up to degree n-1:
    // sum_j (-1)^j q^{j(3j-1)/2} over positive and negative j.
    let mut eta = vec![0i128; n];
    eta[0] = 1;
    let mut j: i64 = 1;
    loop {
        let mut hit = false;
        for g in [j * (3 * j - 1) / 2, j * (3 * j + 1) / 2] {
            if (g as usize) < n {
                eta[g as usize] += if j % 2 == 0 { 1 } else { -1 };
                hit = true;
            }
        }
        if !hit {
            break;
        }
        j += 1;
    }
    // (eta)^24 by 24 successive multiplications with the sparse series.
    let support: Vec<(usize, i128)> = eta
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    let mut acc = vec![0i128; n];
    acc[0] = 1;
    let mut scratch = vec![0i128; n];
    for _ in 0..24 {
        scratch.iter_mut().for_each(|v| *v = 0);
        for &(shift, sign) in &support {
            for i in 0..n - shift {
                if acc[i] != 0 {
                    scratch[i + shift] += sign * acc[i];
                }
            }
        }
        std::mem::swap(&mut acc, &mut scratch);
    }
    // The leading q shifts everything by one: tau(m) = [q^(m-1)] eta^24.
    Ok(acc)
}

/// Normalized Hecke eigenvalues lambda(p) = tau(p) / p^(11/2) at primes
/// p <= limit.
pub fn delta_eigenvalues(limit: u64) -> Result<BTreeMap<u64, f64>> {
    let tau = delta_tau_series(limit)?;
    let mut out = BTreeMap::new();
    for p in 2..=limit {
        if crate::field::is_prime_u64(p) {
            let lam = tau[(p - 1) as usize] as f64 / (p as f64).powf(5.5);
            out.insert(p, lam);
        }
    }
    Ok(out)
}

/// Table of normalized cusp-form eigenvalues keyed by prime.
#[derive(Debug, Clone)]
pub struct EigenvalueTable {
    label: String,
    map: BTreeMap<u64, f64>,
}

impl EigenvalueTable {
    /// Built-in table for the discriminant form.
    pub fn delta(limit: u64) -> Result<Self> {
        Ok(Self { label: "delta".into(), map: delta_eigenvalues(limit)? })
    }

    /// Parse a `p,lambda` CSV (comment lines start with '#').
    pub fn from_csv_str(label: &str, text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("p,") {
                continue;
            }
            let mut parts = line.split(',');
            let (p, lam) = match (parts.next(), parts.next()) {
                (Some(a), Some(b)) => (a.trim(), b.trim()),
                _ => {
                    return Err(Error::Parse(format!(
                        "eigenvalue CSV line {}: expected `p,lambda`, got {line:?}",
                        lineno + 1
                    )))
                }
            };
            let p: u64 = p.parse().map_err(|_| {
                Error::Parse(format!("eigenvalue CSV line {}: bad prime {p:?}", lineno + 1))
            })?;
            if !crate::field::is_prime_u64(p) {
                return Err(Error::Parse(format!(
                    "eigenvalue CSV line {}: {p} is not prime",
                    lineno + 1
                )));
            }
            let lam: f64 = lam.parse().map_err(|_| {
                Error::Parse(format!("eigenvalue CSV line {}: bad value {lam:?}", lineno + 1))
            })?;
            map.insert(p, lam);
        }
        Ok(Self { label: label.into(), map })
    }

    pub fn from_csv_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let label = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        Self::from_csv_str(&label.unwrap_or_else(|| "cusp_form".into()), &text)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lambda(&self, p: u64) -> Option<f64> {
        self.map.get(&p).copied()
    }

    pub fn max_prime(&self) -> Option<u64> {
        self.map.keys().next_back().copied()
    }
}
