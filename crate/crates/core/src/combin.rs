//! Exact binomial coefficients.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `C(a, b)` with the convention that it is zero when `b < 0` or `a < b`,
/// negative `a` included.
pub fn binomial_signed(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b {
        return BigInt::zero();
    }
    BigInt::from(binomial(a as usize, b as usize))
}

pub fn binomial_u64(n: usize, k: usize) -> Option<u64> {
    u64::try_from(binomial(n, k)).ok()
}
