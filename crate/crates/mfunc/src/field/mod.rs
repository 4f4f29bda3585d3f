//! Number-field descriptors and per-prime splitting types.
//!
//! A field is given by a monic integer polynomial, with shortcuts for the
//! rational field and quadratic fields (which route through the Kronecker
//! symbol and are exact at every prime, including ramified ones). For the
//! polynomial kind the splitting type at a good prime comes from the
//! distinct-degree pattern of the polynomial mod p; primes dividing the
//! polynomial discriminant fall back to a documented inexact pattern unless
//! the spec file supplies an override.

mod delta;
mod lambda;

pub use delta::{delta_eigenvalues, delta_tau_series, EigenvalueTable, DELTA_LIMIT_CAP};
pub use lambda::{power_sum_recursive, quadratic_consistency_check, LambdaSeries, SatakePair};

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::arith::{distinct_degree_pattern, kronecker_symbol, pow_mod, FpPoly};
use crate::error::{Error, Result};
use crate::parallel;

/// How the field is described.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    /// Quadratic field of fundamental discriminant `d`.
    Quadratic { d: i64 },
    /// Field defined by a monic irreducible integer polynomial, coefficients
    /// ascending. Irreducibility is the caller's responsibility; reducible
    /// input degrades into a product interpretation.
    Polynomial { coeffs: Vec<i64> },
}

/// Ramification/residue-degree multiset of a rational prime: one `(e, f)`
/// entry per prime ideal above p. The fundamental equation `sum e*f = d`
/// holds for every value this module produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    pub pairs: Vec<(u32, u32)>,
    /// False only for primes dividing the defining polynomial's discriminant
    /// when no override is present; the pattern is then the documented
    /// fallback, not the true factorization.
    pub exact: bool,
}

impl SplittingType {
    pub fn total_degree(&self) -> u32 {
        self.pairs.iter().map(|&(e, f)| e * f).sum()
    }

    pub fn is_completely_split(&self) -> bool {
        self.pairs.iter().all(|&(e, f)| e == 1 && f == 1)
    }

    /// Display form like "(1,1)(1,2)".
    pub fn pattern_string(&self) -> String {
        self.pairs
            .iter()
            .map(|&(e, f)| format!("({e},{f})"))
            .collect()
    }
}

/// Number-field specification plus optional per-prime overrides for bad
/// primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberFieldSpec {
    pub kind: FieldKind,
    pub overrides: BTreeMap<u64, SplittingType>,
}

/// On-disk JSON form of [`NumberFieldSpec`].
#[derive(Serialize, Deserialize)]
struct SpecFile {
    kind: String,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    overrides: Option<BTreeMap<String, Vec<(u32, u32)>>>,
}

fn is_squarefree(mut n: u64) -> bool {
    let mut d = 2u64;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        while n % d == 0 {
            n /= d;
        }
        d += 1;
    }
    true
}

/// Fundamental discriminant test: either d = 1 mod 4 and squarefree, or
/// d = 4m with m = 2 or 3 mod 4 and m squarefree. (1 itself is excluded.)
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    if d.rem_euclid(4) == 1 {
        return is_squarefree(d.unsigned_abs());
    }
    if d % 4 != 0 {
        return false;
    }
    let m = d / 4;
    let r = m.rem_euclid(4);
    (r == 2 || r == 3) && is_squarefree(m.unsigned_abs())
}

impl NumberFieldSpec {
    pub fn rational() -> Self {
        Self { kind: FieldKind::Rational, overrides: BTreeMap::new() }
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return Err(Error::ContractViolation(format!(
                "{d} is not a fundamental discriminant"
            )));
        }
        Ok(Self { kind: FieldKind::Quadratic { d }, overrides: BTreeMap::new() })
    }

    pub fn polynomial(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::ContractViolation(
                "defining polynomial needs degree >= 1".into(),
            ));
        }
        if *coeffs.last().unwrap() != 1 {
            return Err(Error::ContractViolation(
                "defining polynomial must be monic".into(),
            ));
        }
        Ok(Self { kind: FieldKind::Polynomial { coeffs }, overrides: BTreeMap::new() })
    }

    pub fn with_overrides(mut self, overrides: BTreeMap<u64, SplittingType>) -> Result<Self> {
        let d = self.degree();
        for (p, st) in &overrides {
            if st.total_degree() != d {
                return Err(Error::ContractViolation(format!(
                    "override at p={p} sums to {} instead of the degree {d}",
                    st.total_degree()
                )));
            }
        }
        self.overrides = overrides;
        Ok(self)
    }

    pub fn degree(&self) -> u32 {
        match &self.kind {
            FieldKind::Rational => 1,
            FieldKind::Quadratic { .. } => 2,
            FieldKind::Polynomial { coeffs } => (coeffs.len() - 1) as u32,
        }
    }

    /// Defining polynomial used for splitting (the quadratic kind never uses
    /// it at runtime, but exposes it so tests can cross-check both paths):
    /// x^2 - x + (1-D)/4 for D = 1 mod 4, x^2 - D/4 otherwise.
    pub fn defining_polynomial(&self) -> Vec<i64> {
        match &self.kind {
            FieldKind::Rational => vec![0, 1],
            FieldKind::Quadratic { d } => {
                if d.rem_euclid(4) == 1 {
                    vec![(1 - d) / 4, -1, 1]
                } else {
                    vec![-d / 4, 0, 1]
                }
            }
            FieldKind::Polynomial { coeffs } => coeffs.clone(),
        }
    }

    /// Advisory irreducibility heuristic for the polynomial kind:
    /// `Some(true)` when some small prime certifies irreducibility,
    /// `Some(false)` when a rational root proves reducibility, `None` when
    /// undecided. Never enforced.
    pub fn heuristic_irreducible(&self) -> Option<bool> {
        let coeffs = match &self.kind {
            FieldKind::Polynomial { coeffs } => coeffs,
            _ => return Some(true),
        };
        for p in [3u64, 5, 7, 11, 13] {
            let f = FpPoly::from_int_poly(coeffs, p);
            if f.degree() != Some(coeffs.len() - 1) {
                continue;
            }
            if let Ok((pattern, true)) = distinct_degree_pattern(&f) {
                if pattern.pairs() == [(self.degree(), 1)] {
                    return Some(true);
                }
            }
        }
        // Rational root test over divisors of the constant term.
        let c0 = coeffs[0];
        if c0 == 0 {
            return Some(false);
        }
        let eval = |x: i64| -> i128 {
            coeffs.iter().rev().fold(0i128, |acc, &c| acc * x as i128 + c as i128)
        };
        let bound = c0.unsigned_abs();
        for r in 1..=bound {
            if bound % r == 0 {
                if eval(r as i64) == 0 || eval(-(r as i64)) == 0 {
                    return Some(false);
                }
            }
        }
        None
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(s)?;
        let base = match file.kind.as_str() {
            "rational" => Self::rational(),
            "quadratic" => {
                let d = file.d.ok_or_else(|| {
                    Error::Parse("quadratic field spec needs a \"D\" entry".into())
                })?;
                Self::quadratic(d)?
            }
            "polynomial" => {
                let coeffs = file.coeffs.ok_or_else(|| {
                    Error::Parse("polynomial field spec needs a \"coeffs\" entry".into())
                })?;
                Self::polynomial(coeffs)?
            }
            other => {
                return Err(Error::Parse(format!(
                    "unknown field kind {other:?} (expected rational|quadratic|polynomial)"
                )))
            }
        };
        let mut overrides = BTreeMap::new();
        if let Some(raw) = file.overrides {
            for (key, pairs) in raw {
                let p: u64 = key.parse().map_err(|_| {
                    Error::Parse(format!("override key {key:?} is not a prime number"))
                })?;
                overrides.insert(p, SplittingType { pairs, exact: true });
            }
        }
        base.with_overrides(overrides)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> String {
        let (kind, d, coeffs) = match &self.kind {
            FieldKind::Rational => ("rational", None, None),
            FieldKind::Quadratic { d } => ("quadratic", Some(*d), None),
            FieldKind::Polynomial { coeffs } => ("polynomial", None, Some(coeffs.clone())),
        };
        let overrides = if self.overrides.is_empty() {
            None
        } else {
            Some(
                self.overrides
                    .iter()
                    .map(|(p, st)| (p.to_string(), st.pairs.clone()))
                    .collect(),
            )
        };
        serde_json::to_string(&SpecFile { kind: kind.into(), d, coeffs, overrides })
            .expect("spec serialization cannot fail")
    }

    /// Short display name for CSV headers and manifests.
    pub fn label(&self) -> String {
        match &self.kind {
            FieldKind::Rational => "Q".into(),
            FieldKind::Quadratic { d } => format!("Q(sqrt({d}))"),
            FieldKind::Polynomial { coeffs } => {
                let terms: Vec<String> = coeffs
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match i {
                        0 => format!("{c}"),
                        1 if c == 1 => "x".into(),
                        1 => format!("{c}x"),
                        _ if c == 1 => format!("x^{i}"),
                        _ => format!("{c}x^{i}"),
                    })
                    .collect();
                terms.join("+").replace("+-", "-")
            }
        }
    }
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A number field with a synchronized splitting-type cache; behaves as if
/// pure and is freely shareable across threads.
#[derive(Debug)]
pub struct NumberField {
    spec: NumberFieldSpec,
    cache: RwLock<HashMap<u64, SplittingType>>,
}

/// Primes above this are computed on the fly instead of cached; Euler-product
/// tails walk millions of primes once each and would only bloat the map.
const SPLITTING_CACHE_LIMIT: u64 = 100_000;

impl NumberField {
    pub fn new(spec: NumberFieldSpec) -> Self {
        Self { spec, cache: RwLock::new(HashMap::new()) }
    }

    pub fn spec(&self) -> &NumberFieldSpec {
        &self.spec
    }

    pub fn degree(&self) -> u32 {
        self.spec.degree()
    }

    /// Splitting type of the rational prime p.
    pub fn splitting_type(&self, p: u64) -> Result<SplittingType> {
        if let Some(hit) = self.cache.read().unwrap().get(&p) {
            return Ok(hit.clone());
        }
        if !is_prime_u64(p) {
            return Err(Error::ContractViolation(format!("{p} is not prime")));
        }
        let st = self.compute_splitting(p)?;
        debug_assert_eq!(st.total_degree(), self.degree());
        if p <= SPLITTING_CACHE_LIMIT {
            self.cache.write().unwrap().insert(p, st.clone());
        }
        Ok(st)
    }

    fn compute_splitting(&self, p: u64) -> Result<SplittingType> {
        if let Some(st) = self.spec.overrides.get(&p) {
            return Ok(st.clone());
        }
        match &self.spec.kind {
            FieldKind::Rational => Ok(SplittingType { pairs: vec![(1, 1)], exact: true }),
            FieldKind::Quadratic { d } => Ok(match kronecker_symbol(*d, p) {
                1 => SplittingType { pairs: vec![(1, 1), (1, 1)], exact: true },
                -1 => SplittingType { pairs: vec![(1, 2)], exact: true },
                _ => SplittingType { pairs: vec![(2, 1)], exact: true },
            }),
            FieldKind::Polynomial { coeffs } => {
                let f = FpPoly::from_int_poly(coeffs, p);
                let (pattern, squarefree) = distinct_degree_pattern(&f)?;
                let mut pairs: Vec<(u32, u32)> = Vec::new();
                for &(deg, count) in pattern.pairs() {
                    for _ in 0..count {
                        pairs.push((1, deg));
                    }
                }
                if squarefree {
                    Ok(SplittingType { pairs, exact: true })
                } else {
                    // Bad prime without an override: keep the radical's
                    // factors as unramified ideals and assign the remaining
                    // degree to a single totally ramified block. Inexact,
                    // but the coefficient bound d*log(p) still holds.
                    let used: u32 = pairs.iter().map(|&(e, f)| e * f).sum();
                    let rest = self.degree() - used;
                    if rest > 0 {
                        pairs.push((rest, 1));
                    }
                    pairs.sort_unstable();
                    Ok(SplittingType { pairs, exact: false })
                }
            }
        }
    }

    /// Fast complete-split test (avoids the full pattern for the polynomial
    /// kind: p splits completely iff x^p = x mod (f, p)).
    pub fn is_completely_split(&self, p: u64) -> Result<bool> {
        if let Some(st) = self.spec.overrides.get(&p) {
            return Ok(st.is_completely_split());
        }
        match &self.spec.kind {
            FieldKind::Rational => Ok(true),
            FieldKind::Quadratic { d } => Ok(kronecker_symbol(*d, p) == 1),
            FieldKind::Polynomial { coeffs } => {
                let f = FpPoly::from_int_poly(coeffs, p);
                if f.degree().map(|d| d as u32) != Some(self.degree()) {
                    return Ok(false);
                }
                let frob = FpPoly::x(p).pow_mod(p, &f);
                Ok(frob == FpPoly::x(p).rem(&f))
            }
        }
    }

    /// Fraction of primes up to `limit` that split completely; approaches
    /// 1/[L:Q] for the Galois closure L by Chebotarev.
    pub fn split_fraction(&self, primes: &crate::arith::PrimeTable, limit: u64) -> Result<f64> {
        if limit < 1000 {
            return Err(Error::EmptyRange(format!(
                "split_fraction needs limit >= 1000, got {limit}"
            )));
        }
        if primes.limit() < limit {
            return Err(Error::ContractViolation(
                "prime table smaller than requested limit".into(),
            ));
        }
        let plist = primes.primes_up_to(limit);
        let flags = parallel::ordered_map(plist, |&p| {
            self.is_completely_split(p).unwrap_or(false)
        });
        let count = flags.iter().filter(|&&b| b).count();
        Ok(count as f64 / plist.len() as f64)
    }

    /// Generalized von Mangoldt coefficient divided by log p: the integer
    /// sum of residue degrees f_j dividing m.
    pub fn lambda_multiplier(&self, p: u64, m: u32) -> Result<u32> {
        let st = self.splitting_type(p)?;
        Ok(st.pairs.iter().filter(|&&(_, f)| m % f == 0).map(|&(_, f)| f).sum())
    }

    /// The coefficient itself, `log p * sum_{f_j | m} f_j`.
    pub fn lambda_value(&self, p: u64, m: u32) -> Result<f64> {
        Ok(self.lambda_multiplier(p, m)? as f64 * (p as f64).ln())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{poly_discriminant, PrimeTable};

    #[test]
    fn fundamental_discriminants() {
        for d in [-4i64, -3, -7, -8, 5, 8, 12, 13, -40, 40] {
            assert!(is_fundamental_discriminant(d), "{d}");
        }
        for d in [0i64, 1, 2, 3, 4, -1, -2, 9, 25, -9, 18] {
            assert!(!is_fundamental_discriminant(d), "{d}");
        }
    }

    #[test]
    fn gaussian_integers_splitting() {
        let field = NumberField::new(NumberFieldSpec::quadratic(-4).unwrap());
        // 2 ramifies, 3 inert, 5 splits.
        assert_eq!(field.splitting_type(2).unwrap().pairs, vec![(2, 1)]);
        assert_eq!(field.splitting_type(3).unwrap().pairs, vec![(1, 2)]);
        assert_eq!(field.splitting_type(5).unwrap().pairs, vec![(1, 1), (1, 1)]);
        assert!(field.splitting_type(2).unwrap().exact);
    }

    #[test]
    fn polynomial_splitting_examples() {
        let field = NumberField::new(NumberFieldSpec::polynomial(vec![1, 0, 1]).unwrap());
        assert_eq!(field.splitting_type(5).unwrap().pairs, vec![(1, 1), (1, 1)]);
        assert_eq!(field.splitting_type(3).unwrap().pairs, vec![(1, 2)]);
        // p = 2 divides disc(x^2+1) = -4: inexact fallback.
        let st = field.splitting_type(2).unwrap();
        assert!(!st.exact);
        assert_eq!(st.total_degree(), 2);
    }

    #[test]
    fn rejects_composite_primes() {
        let field = NumberField::new(NumberFieldSpec::rational());
        assert!(field.splitting_type(10).is_err());
        assert!(field.splitting_type(1).is_err());
    }

    #[test]
    fn fundamental_equation_holds_on_corpus() {
        let primes = PrimeTable::sieve(10_000).unwrap();
        let fields = [
            NumberFieldSpec::rational(),
            NumberFieldSpec::quadratic(-4).unwrap(),
            NumberFieldSpec::quadratic(5).unwrap(),
            NumberFieldSpec::polynomial(vec![-2, 0, 0, 1]).unwrap(),
            NumberFieldSpec::polynomial(vec![-1, -1, 0, 1]).unwrap(),
            NumberFieldSpec::polynomial(vec![1, 0, 0, 0, 1]).unwrap(),
        ];
        for spec in fields {
            let d = spec.degree();
            let field = NumberField::new(spec);
            for &p in primes.primes() {
                let st = field.splitting_type(p).unwrap();
                assert_eq!(st.total_degree(), d, "p={p}");
            }
        }
    }

    #[test]
    fn quadratic_polynomial_path_agrees_with_kronecker_path() {
        let primes = PrimeTable::sieve(10_000).unwrap();
        for d in [-4i64, 5, -8, 13, -40] {
            let quad = NumberField::new(NumberFieldSpec::quadratic(d).unwrap());
            let poly_spec =
                NumberFieldSpec::polynomial(quad.spec().defining_polynomial()).unwrap();
            let disc = poly_discriminant(&poly_spec.defining_polynomial()).unwrap();
            let poly = NumberField::new(poly_spec);
            for &p in primes.primes() {
                let via_poly = poly.splitting_type(p).unwrap();
                if !via_poly.exact {
                    // Inexact only at primes dividing the discriminant.
                    assert_eq!(disc % p as i128, 0, "d={d} p={p}");
                    continue;
                }
                let via_kron = quad.splitting_type(p).unwrap();
                assert_eq!(via_poly.pairs, via_kron.pairs, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn inexact_exactly_at_discriminant_primes() {
        let coeffs = vec![-2i64, 0, 0, 1]; // x^3 - 2, disc -108 = -2^2 3^3
        let disc = poly_discriminant(&coeffs).unwrap();
        let field = NumberField::new(NumberFieldSpec::polynomial(coeffs).unwrap());
        let primes = PrimeTable::sieve(10_000).unwrap();
        for &p in primes.primes() {
            let st = field.splitting_type(p).unwrap();
            assert_eq!(st.exact, disc % p as i128 != 0, "p={p}");
        }
    }

    #[test]
    fn override_replaces_fallback() {
        let spec = NumberFieldSpec::polynomial(vec![-2, 0, 0, 1])
            .unwrap()
            .with_overrides(BTreeMap::from([
                (2, SplittingType { pairs: vec![(3, 1)], exact: true }),
                (3, SplittingType { pairs: vec![(3, 1)], exact: true }),
            ]))
            .unwrap();
        let field = NumberField::new(spec);
        assert_eq!(field.splitting_type(2).unwrap().pairs, vec![(3, 1)]);
        assert!(field.splitting_type(2).unwrap().exact);
    }

    #[test]
    fn override_must_match_degree() {
        let bad = NumberFieldSpec::polynomial(vec![-2, 0, 0, 1])
            .unwrap()
            .with_overrides(BTreeMap::from([(
                2,
                SplittingType { pairs: vec![(1, 1)], exact: true },
            )]));
        assert!(bad.is_err());
    }

    #[test]
    fn lambda_values() {
        // Rational field: classical von Mangoldt.
        let q = NumberField::new(NumberFieldSpec::rational());
        assert!((q.lambda_value(2, 3).unwrap() - 2f64.ln()).abs() < 1e-15);
        // Gaussian integers, inert prime 3: zero at odd m, 2 log 3 at even m.
        let qi = NumberField::new(NumberFieldSpec::quadratic(-4).unwrap());
        assert_eq!(qi.lambda_value(3, 1).unwrap(), 0.0);
        assert!((qi.lambda_value(3, 2).unwrap() - 2.0 * 3f64.ln()).abs() < 1e-15);
        // Completely split: d log p for every m.
        assert!((qi.lambda_value(5, 7).unwrap() - 2.0 * 5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn lambda_bounded_by_d_log_p() {
        let primes = PrimeTable::sieve(10_000).unwrap();
        let field = NumberField::new(NumberFieldSpec::polynomial(vec![-2, 0, 0, 1]).unwrap());
        let d = field.degree() as f64;
        for &p in primes.primes() {
            for m in 1..=20 {
                let v = field.lambda_value(p, m).unwrap();
                assert!(v >= 0.0);
                assert!(v <= d * (p as f64).ln() + 1e-12, "p={p} m={m}");
            }
        }
    }

    #[test]
    fn split_fractions_match_chebotarev() {
        let primes = PrimeTable::sieve(100_000).unwrap();
        let q = NumberField::new(NumberFieldSpec::rational());
        assert_eq!(q.split_fraction(&primes, 100_000).unwrap(), 1.0);
        let qi = NumberField::new(NumberFieldSpec::quadratic(-4).unwrap());
        let f = qi.split_fraction(&primes, 100_000).unwrap();
        assert!((f - 0.5).abs() < 0.01, "{f}");
        let cubic = NumberField::new(NumberFieldSpec::polynomial(vec![-2, 0, 0, 1]).unwrap());
        let f = cubic.split_fraction(&primes, 100_000).unwrap();
        assert!((f - 1.0 / 6.0).abs() < 0.02, "{f}");
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = NumberFieldSpec::from_json_str(
            r#"{"kind":"polynomial","coeffs":[-2,0,0,1],"overrides":{"2":[[3,1]],"3":[[3,1]]}}"#,
        )
        .unwrap();
        assert_eq!(spec.degree(), 3);
        assert_eq!(spec.overrides[&2].pairs, vec![(3, 1)]);
        let again = NumberFieldSpec::from_json_str(&spec.to_json()).unwrap();
        assert_eq!(spec, again);

        assert!(NumberFieldSpec::from_json_str(r#"{"kind":"quadratic","D":-4}"#).is_ok());
        assert!(NumberFieldSpec::from_json_str(r#"{"kind":"rational"}"#).is_ok());
        assert!(NumberFieldSpec::from_json_str(r#"{"kind":"cubic"}"#).is_err());
        assert!(NumberFieldSpec::from_json_str(r#"{"kind":"quadratic","D":9}"#).is_err());
    }

    #[test]
    fn heuristic_irreducibility() {
        assert_eq!(
            NumberFieldSpec::polynomial(vec![-2, 0, 0, 1]).unwrap().heuristic_irreducible(),
            Some(true)
        );
        // (x-1)(x-2) = x^2 - 3x + 2 has the rational root 1.
        assert_eq!(
            NumberFieldSpec::polynomial(vec![2, -3, 1]).unwrap().heuristic_irreducible(),
            Some(false)
        );
    }
}
