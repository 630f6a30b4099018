//! Exact integer helpers for normalisation constants.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `n!!`, with the conventions `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigUint {
    let mut acc = BigUint::one();
    let mut k = n;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    acc
}

pub fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    r.to_f64().unwrap_or(f64::NAN)
}

/// Square root of a non-negative exact rational, evaluated in floating point.
pub fn sqrt_rational(r: &BigRational) -> f64 {
    to_f64(r).sqrt()
}

/// Integer power of two as a rational; negative exponents allowed.
pub fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Convert a doubled half-integer to `f64`.
pub fn half(x2: i64) -> f64 {
    x2 as f64 / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(double_factorial(-1), BigUint::one());
        assert_eq!(double_factorial(0), BigUint::one());
        assert_eq!(double_factorial(7), BigUint::from(105u32));
        assert_eq!(double_factorial(8), BigUint::from(384u32));
    }

    #[test]
    fn rationals() {
        let r = ratio(BigUint::from(9u32), BigUint::from(4u32));
        assert_eq!(sqrt_rational(&r), 1.5);
        assert_eq!(to_f64(&pow2(-3)), 0.125);
        assert_eq!(to_f64(&pow2(4)), 16.0);
        let big = ratio(factorial(80), factorial(79));
        assert_eq!(to_f64(&big), 80.0);
    }
}
