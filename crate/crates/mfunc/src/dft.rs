//! Centered 2D discrete Fourier transforms.
//!
//! Grids use the centered layout of [`crate::grid::GridAxis`] (index n/2 at
//! zero). The transform is a dense separable pass for general even sizes;
//! power-of-two sizes take an iterative radix-2 fast path. Both paths give
//! identical results to rounding error, which a test pins down.

use num_complex::Complex64;

use crate::parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// Kernel exp(+i ...) per element product.
    Plus,
    /// Kernel exp(-i ...).
    Minus,
}

impl Sign {
    fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// 1D centered DFT: out[k] = sum_j data[j] * exp(sign * i * 2pi (k-h)(j-h)/n)
/// with h = n/2. Equivalent to fftshift-conjugated plain DFT; exact-index
/// twiddle lookup keeps it free of phase drift.
fn centered_dft_1d(data: &[Complex64], sign: Sign, twiddle: &[Complex64]) -> Vec<Complex64> {
    let n = data.len();
    let h = n / 2;
    let _ = sign; // sign is baked into the twiddle table
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, slot) in out.iter_mut().enumerate() {
        // (k-h)(j-h) mod n, kept in unsigned arithmetic: both shifts by h
        // flip signs, so (k-h)(j-h) = (k+h)(j+h) mod n when n | 2h(k+j+...)
        // does not generally hold; use i64 products reduced mod n instead.
        let kk = k as i64 - h as i64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &v) in data.iter().enumerate() {
            let jj = j as i64 - h as i64;
            let idx = (kk * jj).rem_euclid(n as i64) as usize;
            acc += v * twiddle[idx];
        }
        *slot = acc;
    }
    out
}

/// Iterative radix-2 FFT (in natural order, DIT with bit reversal),
/// kernel exp(sign * 2pi i jk / n).
fn fft_pow2(data: &mut [Complex64], sign: Sign) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 0..n {
        if i < j {
            data.swap(i, j);
        }
        let mut mask = n >> 1;
        while mask > 0 && j & mask != 0 {
            j ^= mask;
            mask >>= 1;
        }
        j |= mask;
    }
    let s = sign.as_f64();
    let mut len = 2usize;
    while len <= n {
        let ang = s * std::f64::consts::TAU / len as f64;
        let wlen = Complex64::new(ang.cos(), ang.sin());
        for start in (0..n).step_by(len) {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let a = data[start + k];
                let b = data[start + k + len / 2] * w;
                data[start + k] = a + b;
                data[start + k + len / 2] = a - b;
                w *= wlen;
            }
        }
        len <<= 1;
    }
}

/// Centered 1D transform via the radix-2 path: ifftshift, FFT, fftshift.
fn centered_fft_1d_pow2(data: &[Complex64], sign: Sign) -> Vec<Complex64> {
    let n = data.len();
    let h = n / 2;
    // ifftshift: move the zero node to index 0.
    let mut buf: Vec<Complex64> = (0..n).map(|i| data[(i + h) % n]).collect();
    fft_pow2(&mut buf, sign);
    // fftshift the output back to centered order.
    (0..n).map(|k| buf[(k + h) % n]).collect()
}

fn transform_1d(data: &[Complex64], sign: Sign, twiddle: &[Complex64]) -> Vec<Complex64> {
    if data.len().is_power_of_two() {
        centered_fft_1d_pow2(data, sign)
    } else {
        centered_dft_1d(data, sign, twiddle)
    }
}

fn twiddle_table(n: usize, sign: Sign) -> Vec<Complex64> {
    let s = sign.as_f64();
    (0..n)
        .map(|l| {
            let ang = s * std::f64::consts::TAU * l as f64 / n as f64;
            Complex64::new(ang.cos(), ang.sin())
        })
        .collect()
}

/// Separable centered 2D transform of a row-major `rows x cols` matrix:
/// out[a][b] = sum_{i,j} data[i][j] * exp(sign i 2pi ((a-h)(i-h)/rows + (b-h)(j-h)/cols)).
///
/// No normalization factor is applied; callers carry their own measure
/// weights.
pub fn centered_dft_2d(
    data: &[Complex64],
    rows: usize,
    cols: usize,
    sign: Sign,
) -> Vec<Complex64> {
    assert_eq!(data.len(), rows * cols);
    assert!(rows % 2 == 0 && cols % 2 == 0, "centered grids need even sizes");
    let tw_cols = twiddle_table(cols, sign);
    // Pass 1: transform each row.
    let mut mid = vec![Complex64::new(0.0, 0.0); rows * cols];
    parallel::for_each_chunk_mut(&mut mid, cols, |i, out_row| {
        let row = &data[i * cols..(i + 1) * cols];
        out_row.copy_from_slice(&transform_1d(row, sign, &tw_cols));
    });
    // Pass 2: transform each column, via transpose - rows - transpose.
    let mut t = transpose(&mid, rows, cols);
    let tw_rows = twiddle_table(rows, sign);
    parallel::for_each_chunk_mut(&mut t, rows, |_, col| {
        let v = transform_1d(col, sign, &tw_rows);
        col.copy_from_slice(&v);
    });
    transpose(&t, cols, rows)
}

fn transpose(data: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            out[j * rows + i] = data[i * cols + j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_reference(
        data: &[Complex64],
        rows: usize,
        cols: usize,
        sign: Sign,
    ) -> Vec<Complex64> {
        let s = sign.as_f64();
        let (hr, hc) = (rows as i64 / 2, cols as i64 / 2);
        let mut out = vec![Complex64::new(0.0, 0.0); rows * cols];
        for a in 0..rows as i64 {
            for b in 0..cols as i64 {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..rows as i64 {
                    for j in 0..cols as i64 {
                        let phase = s
                            * std::f64::consts::TAU
                            * (((a - hr) * (i - hr)) as f64 / rows as f64
                                + ((b - hc) * (j - hc)) as f64 / cols as f64);
                        acc += data[(i * cols as i64 + j) as usize]
                            * Complex64::new(phase.cos(), phase.sin());
                    }
                }
                out[(a * cols as i64 + b) as usize] = acc;
            }
        }
        out
    }

    fn sample_data(rows: usize, cols: usize) -> Vec<Complex64> {
        (0..rows * cols)
            .map(|k| {
                let x = (k as f64 * 0.7311).sin();
                let y = (k as f64 * 0.2713).cos();
                Complex64::new(x, 0.3 * y)
            })
            .collect()
    }

    #[test]
    fn pow2_path_matches_direct_sum() {
        let (r, c) = (16, 16);
        let data = sample_data(r, c);
        let fast = centered_dft_2d(&data, r, c, Sign::Minus);
        let slow = direct_reference(&data, r, c, Sign::Minus);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).norm() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn dense_path_matches_direct_sum() {
        let (r, c) = (12, 20); // not powers of two
        let data = sample_data(r, c);
        let fast = centered_dft_2d(&data, r, c, Sign::Plus);
        let slow = direct_reference(&data, r, c, Sign::Plus);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).norm() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn round_trip_identity() {
        let (r, c) = (32, 32);
        let data = sample_data(r, c);
        let fwd = centered_dft_2d(&data, r, c, Sign::Minus);
        let back = centered_dft_2d(&fwd, r, c, Sign::Plus);
        let scale = (r * c) as f64;
        for (orig, b) in data.iter().zip(&back) {
            assert!((orig - b / scale).norm() < 1e-10);
        }
    }

    #[test]
    fn indexing_conventions_agree_across_paths() {
        // The same 16-point data as a pow2 grid vs embedded in a dense-only
        // code path: force the dense path by calling the 1D kernel directly.
        let n = 16;
        let data: Vec<Complex64> = (0..n)
            .map(|k| Complex64::new((k as f64).sin(), (k as f64 * 0.5).cos()))
            .collect();
        let tw = twiddle_table(n, Sign::Minus);
        let dense = centered_dft_1d(&data, Sign::Minus, &tw);
        let fast = centered_fft_1d_pow2(&data, Sign::Minus);
        for (a, b) in dense.iter().zip(&fast) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
