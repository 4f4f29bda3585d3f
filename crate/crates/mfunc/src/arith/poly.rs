//! Polynomials over prime fields and the distinct-degree factorization
//! pattern.
//!
//! Only the multiset of irreducible-factor degrees is ever computed; explicit
//! factors are never needed downstream.

use crate::error::{Error, Result};

/// Dense polynomial over `F_p`, coefficients ascending, leading coefficient
/// nonzero. The zero polynomial is the empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(p >= 2);
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    /// Reduce an integer polynomial mod p.
    pub fn from_int_poly(coeffs: &[i64], p: u64) -> Self {
        let reduced = coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        Self::new(p, reduced)
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self { p, coeffs: vec![1] }
    }

    /// The monomial x.
    pub fn x(p: u64) -> Self {
        Self { p, coeffs: vec![0, 1] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn mul_mod_p(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = out[i + j] + self.mul_mod_p(a, b);
                out[i + j] = t % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + self.p - b) % self.p;
        }
        Self::new(self.p, out)
    }

    fn inv_mod_p(&self, a: u64) -> u64 {
        // p prime, a != 0.
        super::pow_mod(a, self.p - 2, self.p)
    }

    /// Remainder of self by divisor (divisor nonzero).
    pub fn rem(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero());
        let d = divisor.degree().unwrap();
        let lead_inv = self.inv_mod_p(*divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let k = rem.len() - 1;
            let factor = self.mul_mod_p(rem[k], lead_inv);
            if factor != 0 {
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    let idx = k - d + i;
                    let t = self.mul_mod_p(factor, dc);
                    rem[idx] = (rem[idx] + self.p - t) % self.p;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Self { p: self.p, coeffs: rem }
    }

    /// Exact quotient self / divisor (panics in debug if not exact).
    pub fn div_exact(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero());
        let d = divisor.degree().unwrap();
        let lead_inv = self.inv_mod_p(*divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            debug_assert!(self.is_zero());
            return Self::zero(self.p);
        }
        let mut quot = vec![0u64; rem.len() - d];
        while rem.len() > d {
            let k = rem.len() - 1;
            let factor = self.mul_mod_p(rem[k], lead_inv);
            quot[k - d] = factor;
            if factor != 0 {
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    let idx = k - d + i;
                    let t = self.mul_mod_p(factor, dc);
                    rem[idx] = (rem[idx] + self.p - t) % self.p;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        debug_assert!(rem.is_empty(), "division not exact");
        Self::new(self.p, quot)
    }

    /// Monic gcd (canonical form for tests and callers).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    pub fn into_monic(mut self) -> Self {
        if let Some(&lead) = self.coeffs.last() {
            if lead != 1 {
                let inv = self.inv_mod_p(lead);
                for c in &mut self.coeffs {
                    *c = (*c as u128 * inv as u128 % self.p as u128) as u64;
                }
            }
        }
        self
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.p);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul_mod_p(c, i as u64 % self.p))
            .collect();
        Self::new(self.p, out)
    }

    /// Given f(x) = g(x^p), recover g (valid when f' = 0 in char p).
    fn deflate(&self) -> Self {
        let step = self.p as usize;
        let out = self.coeffs.iter().step_by(step).copied().collect();
        Self::new(self.p, out)
    }

    /// self^exp mod modulus by repeated squaring.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// Product of the distinct irreducible factors (the radical), correct in
    /// characteristic p: when f' = 0 the polynomial is a p-th power and is
    /// deflated first.
    pub fn radical(&self) -> Self {
        let deg = match self.degree() {
            None | Some(0) => return Self::one(self.p),
            Some(d) => d,
        };
        let _ = deg;
        let deriv = self.derivative();
        if deriv.is_zero() {
            return self.deflate().radical();
        }
        let d = self.gcd(&deriv);
        if d.degree() == Some(0) {
            return self.clone().into_monic();
        }
        // Factors of multiplicity 1 survive in f/d; every repeated factor
        // divides d. Merge the two radicals without duplicates.
        let part = self.div_exact(&d).into_monic();
        let rad_d = d.radical();
        let dup = part.gcd(&rad_d);
        if dup.degree() == Some(0) {
            part.mul(&rad_d)
        } else {
            part.mul(&rad_d.div_exact(&dup))
        }
    }
}

/// Multiset of irreducible-factor degrees: ascending `(degree, count)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreePattern {
    pairs: Vec<(u32, u32)>,
}

impl DegreePattern {
    pub fn new(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.retain(|&(_, c)| c > 0);
        pairs.sort_unstable();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Sum of degree * count.
    pub fn total_degree(&self) -> u32 {
        self.pairs.iter().map(|&(d, c)| d * c).sum()
    }
}

/// Distinct-degree factorization pattern of a monic polynomial over `F_p`.
///
/// Returns the multiset of irreducible-factor degrees of the *squarefree
/// part* (the radical) together with a flag telling whether the input itself
/// was squarefree. When the flag is true the pattern is exactly the factor
/// pattern of `f`; otherwise the caller must handle the lost multiplicities.
pub fn distinct_degree_pattern(f: &FpPoly) -> Result<(DegreePattern, bool)> {
    if !f.is_monic() || f.degree().unwrap_or(0) < 1 {
        return Err(Error::ContractViolation(format!(
            "distinct_degree_pattern needs a monic polynomial of degree >= 1, got {:?}",
            f.coeffs()
        )));
    }
    let p = f.modulus();
    let radical = f.radical();
    let squarefree = radical.degree() == f.degree();

    let mut pairs = Vec::new();
    let mut g = radical;
    let x = FpPoly::x(p);
    // h = x^(p^k) mod g, advanced one Frobenius step per round.
    let mut h = x.pow_mod(p, &g);
    let mut k = 1u32;
    while let Some(deg) = g.degree() {
        if deg == 0 {
            break;
        }
        if 2 * (k as usize) > deg {
            // Whatever remains is a single irreducible factor.
            pairs.push((deg as u32, 1));
            break;
        }
        let factor = h.sub(&x).gcd(&g);
        if let Some(fd) = factor.degree() {
            if fd > 0 {
                pairs.push((k, (fd as u32) / k));
                g = g.div_exact(&factor).into_monic();
                h = h.rem(&g);
            }
        }
        h = h.pow_mod(p, &g);
        k += 1;
    }
    Ok((DegreePattern::new(pairs), squarefree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};

    #[test]
    fn degree_pattern_examples() {
        // x^2 + 1 mod 5 = (x-2)(x+2): degrees {1:2}.
        let (pat, sf) = distinct_degree_pattern(&FpPoly::new(5, vec![1, 0, 1])).unwrap();
        assert!(sf);
        assert_eq!(pat.pairs(), &[(1, 2)]);
        // x^2 + 1 mod 3 irreducible: {2:1}.
        let (pat, sf) = distinct_degree_pattern(&FpPoly::new(3, vec![1, 0, 1])).unwrap();
        assert!(sf);
        assert_eq!(pat.pairs(), &[(2, 1)]);
        // x^2 + 1 mod 2 = (x+1)^2: not squarefree, radical pattern {1:1}.
        let (pat, sf) = distinct_degree_pattern(&FpPoly::new(2, vec![1, 0, 1])).unwrap();
        assert!(!sf);
        assert_eq!(pat.pairs(), &[(1, 1)]);
    }

    #[test]
    fn rejects_non_monic() {
        assert!(distinct_degree_pattern(&FpPoly::new(5, vec![1, 2])).is_err());
        assert!(distinct_degree_pattern(&FpPoly::new(5, vec![3])).is_err());
    }

    /// Memoized lists of monic irreducibles of degree k over F_p, found by
    /// trial division against smaller-degree polynomials.
    struct IrreducibleCache {
        map: std::collections::HashMap<(u64, usize), Vec<FpPoly>>,
    }

    impl IrreducibleCache {
        fn new() -> Self {
            Self { map: std::collections::HashMap::new() }
        }

        fn get(&mut self, p: u64, k: usize) -> &[FpPoly] {
            if !self.map.contains_key(&(p, k)) {
                let mut list = Vec::new();
                let count = (p as u128).pow(k as u32);
                for idx in 0..count {
                    let mut coeffs = Vec::with_capacity(k + 1);
                    let mut v = idx;
                    for _ in 0..k {
                        coeffs.push((v % p as u128) as u64);
                        v /= p as u128;
                    }
                    coeffs.push(1);
                    let cand = FpPoly::new(p, coeffs);
                    let reducible = (1..=k / 2).any(|j| {
                        // Degree-j divisor test against already-built lists.
                        let smaller: Vec<FpPoly> = self.get(p, j).to_vec();
                        smaller.iter().any(|g| cand.rem(g).is_zero())
                    });
                    if !reducible {
                        list.push(cand);
                    }
                }
                self.map.insert((p, k), list);
            }
            &self.map[&(p, k)]
        }
    }

    /// Brute-force factor-degree oracle: strip irreducible divisors of
    /// ascending degree by trial division. Returns (degree, count) with
    /// multiplicity, plus the distinct pattern.
    fn brute_force_pattern(
        f: &FpPoly,
        cache: &mut IrreducibleCache,
    ) -> (Vec<(u32, u32)>, Vec<(u32, u32)>) {
        let p = f.modulus();
        let mut rest = f.clone().into_monic();
        let mut with_mult: Vec<u32> = Vec::new(); // degree per factor copy
        let mut distinct: Vec<u32> = Vec::new();
        let top = rest.degree().unwrap();
        for k in 1..=top / 2 {
            if rest.degree() == Some(0) {
                break;
            }
            for cand in cache.get(p, k).to_vec() {
                let mut hit = false;
                while rest.rem(&cand).is_zero() {
                    rest = rest.div_exact(&cand).into_monic();
                    with_mult.push(k as u32);
                    hit = true;
                }
                if hit {
                    distinct.push(k as u32);
                }
                if rest.degree() == Some(0) {
                    break;
                }
            }
        }
        if let Some(d) = rest.degree() {
            if d > 0 {
                with_mult.push(d as u32);
                distinct.push(d as u32);
            }
        }
        (tally(with_mult), tally(distinct))
    }

    fn tally(mut degs: Vec<u32>) -> Vec<(u32, u32)> {
        degs.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::new();
        for d in degs {
            match out.last_mut() {
                Some((dd, c)) if *dd == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    #[test]
    fn pattern_matches_brute_force_oracle() {
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut cache = IrreducibleCache::new();
        for _ in 0..1000 {
            let p = primes[(rng.next_u64() % primes.len() as u64) as usize];
            let deg = 1 + (rng.next_u64() % 6) as usize;
            let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.next_u64() % p).collect();
            coeffs.push(1);
            let f = FpPoly::new(p, coeffs);
            let (with_mult, distinct) = brute_force_pattern(&f, &mut cache);
            let (pattern, squarefree) = distinct_degree_pattern(&f).unwrap();
            let oracle_squarefree = with_mult == distinct;
            assert_eq!(squarefree, oracle_squarefree, "p={p} f={:?}", f.coeffs());
            assert_eq!(pattern.pairs(), distinct.as_slice(), "p={p} f={:?}", f.coeffs());
            if squarefree {
                assert_eq!(pattern.total_degree() as usize, f.degree().unwrap());
            }
        }
    }

    #[test]
    fn frobenius_power_matches_naive_multiplication() {
        // x^(p^k) mod f by repeated squaring vs naive repeated multiplication.
        for &p in &[2u64, 3, 5, 7] {
            for seed in 0..6u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let deg = 2 + (rng.next_u64() % 3) as usize; // degree 2..4
                let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.next_u64() % p).collect();
                coeffs.push(1);
                let f = FpPoly::new(p, coeffs);
                for k in 1..=3u32 {
                    let exp = p.pow(k);
                    let fast = FpPoly::x(p).pow_mod(exp, &f);
                    let mut naive = FpPoly::one(p);
                    for _ in 0..exp {
                        naive = naive.mul(&FpPoly::x(p)).rem(&f);
                    }
                    assert_eq!(fast, naive, "p={p} k={k} f={:?}", f.coeffs());
                }
            }
        }
    }

    #[test]
    fn radical_of_p_th_power() {
        // (x+1)^4 mod 2 has zero derivative twice over.
        let f = FpPoly::new(2, vec![1, 0, 0, 0, 1]); // x^4 + 1 = (x+1)^4 mod 2
        assert_eq!(f.radical().coeffs(), &[1, 1]);
    }
}
