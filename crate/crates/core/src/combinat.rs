//! Small exact-integer helpers shared across modules.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Falling factorial n (n-1) ... (n-k+1).
pub fn falling(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, j| acc * j)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Smallest t with 2^t >= x (x >= 1).
pub fn ceil_log2(x: &BigInt) -> u32 {
    assert!(*x >= BigInt::one(), "ceil_log2 of non-positive value");
    let bits = x.bits() as u32;
    let pow = BigInt::one() << (bits - 1);
    if pow == *x {
        bits - 1
    } else {
        bits
    }
}
