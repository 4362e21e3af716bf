//! Shared exact-arithmetic helpers: big rationals, factorials, binomials and
//! falling factorials.
//!
//! Every quantity in this crate is an exact integer or an exact rational;
//! floating point never appears. `Rat` values produced by `num-rational` are
//! always stored in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficient type used throughout the crate.
pub type Rat = BigRational;

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
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

/// Falling factorial `(t)_k = t(t-1)...(t-k+1)`, with `(t)_0 = 1`.
pub fn falling_factorial(t: u64, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as u64 {
        if i >= t {
            return BigInt::zero();
        }
        acc *= t - i;
    }
    acc
}

/// Rational from an integer.
pub fn rat_int<T: Into<BigInt>>(n: T) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational `p / q`; panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// `base^exp` for a rational base and an integer exponent of either sign.
///
/// Panics when raising zero to a negative power.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let positive = base.pow(exp.unsigned_abs().try_into().expect("exponent too large"));
    if exp > 0 {
        positive
    } else {
        assert!(!positive.is_zero(), "zero base with negative exponent");
        positive.recip()
    }
}

/// Converts an exact rational known to be an integer; panics otherwise.
pub fn rat_to_int(r: &Rat) -> BigInt {
    assert!(r.is_integer(), "expected integer value, got {r}");
    r.to_integer()
}

/// True iff `r >= 0`.
pub fn is_nonnegative(r: &Rat) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(8, 4), BigInt::from(70));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(5, 0), BigInt::one());
        assert_eq!(falling_factorial(5, 3), BigInt::from(60));
        assert_eq!(falling_factorial(2, 3), BigInt::zero());
    }

    #[test]
    fn rational_powers() {
        assert_eq!(rat_pow(&rat(2, 3), 2), rat(4, 9));
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(rat_pow(&rat(7, 1), 0), Rat::one());
    }
}
