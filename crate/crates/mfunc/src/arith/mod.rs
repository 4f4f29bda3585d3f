//! Rational-prime arithmetic: sieve, Kronecker symbol, and polynomial
//! arithmetic over prime fields.

mod poly;

pub use poly::{distinct_degree_pattern, DegreePattern, FpPoly};

use crate::error::{Error, Result};

/// Hard ceiling on the sieve range; Euler-product cutoffs stay far below it.
pub const SIEVE_CAP: u64 = 100_000_000;

/// Ascending table of all rational primes up to `limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Sieve of Eratosthenes over `[2, limit]`.
    pub fn sieve(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::EmptyRange(format!(
                "prime sieve needs limit >= 2, got {limit}"
            )));
        }
        if limit > SIEVE_CAP {
            return Err(Error::Resource(format!(
                "sieve limit {limit} exceeds cap {SIEVE_CAP}"
            )));
        }
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        let mut i = 2usize;
        while i * i <= n {
            if !composite[i] {
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }
        for (k, &c) in composite.iter().enumerate().skip(2) {
            if !c {
                primes.push(k as u64);
            }
        }
        Ok(Self { limit, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `p <= bound` (requires `bound <= limit`).
    pub fn primes_up_to(&self, bound: u64) -> &[u64] {
        let cut = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..cut]
    }

    /// Membership test by binary search; valid for `n <= limit`.
    pub fn is_prime(&self, n: u64) -> bool {
        debug_assert!(n <= self.limit);
        self.primes.binary_search(&n).is_ok()
    }
}

/// Kronecker symbol `(d/n)` for any integer `d` and `n >= 1`.
///
/// Completely multiplicative in `n`; extends the Jacobi symbol by the usual
/// rule at 2: `(d/2)` is 0 for even `d`, +1 for `d ≡ ±1 (mod 8)`, −1 for
/// `d ≡ ±3 (mod 8)`.
pub fn kronecker_symbol(d: i64, n: u64) -> i32 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut sign = 1i32;
    if n % 2 == 0 {
        if d % 2 == 0 {
            return 0;
        }
        let mut twos = 0u32;
        while n % 2 == 0 {
            n /= 2;
            twos += 1;
        }
        if twos % 2 == 1 {
            let r = d.rem_euclid(8);
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
    }
    // Jacobi symbol (a/n) with n odd, via quadratic reciprocity.
    let mut a = d.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// `(base^exp) mod m` without overflow.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m > 0);
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Discriminant of a monic integer polynomial, exact in i128.
///
/// Computed as `(-1)^(n(n-1)/2) * Res(f, f')` with the resultant evaluated by
/// fraction-free (Bareiss) elimination of the Sylvester matrix. Returns `None`
/// if an intermediate value overflows i128.
pub fn poly_discriminant(coeffs: &[i64]) -> Option<i128> {
    let n = coeffs.len().checked_sub(1)?;
    if n == 0 || *coeffs.last()? != 1 {
        return None;
    }
    if n == 1 {
        return Some(1);
    }
    // f' coefficients.
    let deriv: Vec<i64> = (1..=n).map(|i| coeffs[i] * i as i64).collect();
    let dim = 2 * n - 1;
    let mut mat = vec![vec![0i128; dim]; dim];
    // n-1 shifted rows of f, n shifted rows of f'.
    for r in 0..n - 1 {
        for (k, &c) in coeffs.iter().rev().enumerate() {
            mat[r][r + k] = c as i128;
        }
    }
    for r in 0..n {
        for (k, &c) in deriv.iter().rev().enumerate() {
            mat[n - 1 + r][r + k] = c as i128;
        }
    }
    // Bareiss fraction-free elimination: the final pivot is the determinant.
    let mut prev: i128 = 1;
    for k in 0..dim - 1 {
        if mat[k][k] == 0 {
            let swap = (k + 1..dim).find(|&r| mat[r][k] != 0)?;
            mat.swap(k, swap);
            for v in mat[k].iter_mut() {
                *v = -*v;
            }
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let num = mat[k][k].checked_mul(mat[i][j])?
                    .checked_sub(mat[i][k].checked_mul(mat[k][j])?)?;
                mat[i][j] = num / prev;
            }
            mat[i][k] = 0;
        }
        prev = mat[k][k];
    }
    let res = mat[dim - 1][dim - 1];
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Some(sign * res)
}
