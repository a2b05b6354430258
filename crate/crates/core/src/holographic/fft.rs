//! Direct DFT and an iterative radix-2 decimation-in-time FFT, both with
//! operation counters.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCount {
    pub complex_mults: u64,
    pub complex_adds: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.complex_mults + self.complex_adds
    }
}

/// X_m = sum_j x_j e^{-2πijm/L} for m in 0..bins.
pub fn dft(x: &[Complex64], bins: usize) -> (Vec<Complex64>, OpCount) {
    let len = x.len();
    let mut ops = OpCount::default();
    let out = (0..bins)
        .map(|m| {
            let mut acc = Complex64::ZERO;
            for (j, v) in x.iter().enumerate() {
                // reduce jm mod L before forming the angle to keep it accurate
                let angle = -2.0 * PI * ((j * m) % len) as f64 / len as f64;
                acc += v * Complex64::from_polar(1.0, angle);
                ops.complex_mults += 1;
                ops.complex_adds += 1;
            }
            acc
        })
        .collect();
    (out, ops)
}

/// Full forward transform of a power-of-two length input.
pub fn fft(x: &[Complex64]) -> (Vec<Complex64>, OpCount) {
    let len = x.len();
    assert!(len.is_power_of_two(), "radix-2 FFT needs a power-of-two length, got {len}");
    let bits = len.trailing_zeros();
    let mut a: Vec<Complex64> = (0..len)
        .map(|i| x[if bits == 0 { 0 } else { i.reverse_bits() >> (usize::BITS - bits) }])
        .collect();
    let mut ops = OpCount::default();
    let mut size = 2;
    while size <= len {
        let half = size / 2;
        let step = Complex64::from_polar(1.0, -2.0 * PI / size as f64);
        for start in (0..len).step_by(size) {
            for k in 0..half {
                // twiddles from the exact angle rather than repeated products
                let w = if k == 0 { Complex64::new(1.0, 0.0) } else { Complex64::from_polar(1.0, step.arg() * k as f64) };
                let t = w * a[start + k + half];
                let u = a[start + k];
                a[start + k] = u + t;
                a[start + k + half] = u - t;
                ops.complex_mults += 1;
                ops.complex_adds += 2;
            }
        }
        size *= 2;
    }
    (a, ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fft_matches_dft() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for len in [1usize, 2, 4, 8, 16, 32, 64, 1024] {
            let x: Vec<Complex64> = (0..len)
                .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect();
            let (a, _) = dft(&x, len);
            let (b, ops) = fft(&x);
            for (u, v) in a.iter().zip(&b) {
                assert_abs_diff_eq!((u - v).norm(), 0.0, epsilon = 1e-10);
            }
            let log = len.trailing_zeros() as u64;
            assert_eq!(ops.complex_mults, len as u64 / 2 * log);
        }
    }

    #[test]
    fn constant_and_single_frequency() {
        let x = vec![Complex64::new(2.0, 0.0); 8];
        let (c, _) = fft(&x);
        assert_abs_diff_eq!(c[0].re, 16.0, epsilon = 1e-12);
        for v in &c[1..] {
            assert_abs_diff_eq!(v.norm(), 0.0, epsilon = 1e-12);
        }
        let x: Vec<Complex64> = (0..8).map(|j| Complex64::from_polar(1.0, 2.0 * PI * 3.0 * j as f64 / 8.0)).collect();
        let (c, ops) = dft(&x, 8);
        assert_abs_diff_eq!(c[3].re, 8.0, epsilon = 1e-12);
        assert_eq!(ops.complex_mults, 64);
    }
}
