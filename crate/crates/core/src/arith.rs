//! Integer helpers shared by the divisibility formulas.
//!
//! Conventions: `gcd(0, x) = |x|`, `gcd(0, 0) = 0`, and `0` divides only `0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Non-negative gcd of all values; zero for an empty or all-zero input.
pub fn gcd_all<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    let mut acc = BigInt::zero();
    for v in values {
        if !v.is_zero() {
            acc = acc.gcd(v);
        }
    }
    acc
}

pub fn gcd_i64(values: &[i64]) -> u64 {
    values.iter().fold(0u64, |acc, &v| acc.gcd(&v.unsigned_abs()))
}

/// `d | x` with the zero convention `0 | x ⇔ x = 0`.
pub fn divides(d: &BigInt, x: &BigInt) -> bool {
    if d.is_zero() {
        x.is_zero()
    } else {
        (x % d.abs()).is_zero()
    }
}

pub fn divides_i128(d: i128, x: i128) -> bool {
    if d == 0 {
        x == 0
    } else {
        x % d == 0
    }
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    a.unsigned_abs().gcd(&b.unsigned_abs()) as i128
}
