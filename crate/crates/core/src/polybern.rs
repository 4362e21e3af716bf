//! `S`-restricted poly-Bernoulli numbers.
//!
//! `B_{n,S}^{(k)} = Σ_i {n brace i}_S·(-1)^{n-i}·i!/(i+1)^k` for any integer
//! `k`; negative `k` turns the division into exact integer multiplication.
//! The generating-function route reads `n![t^n]` of
//! `Li_k(-E_S(-t)) / (-E_S(-t))`, and for `k >= 1` the same series is
//! rebuilt from `k - 1` nested integrals of `u'·Li_j(u)/u` on top of
//! `Li_1(u) = -log(1 - u)`, using the derivative rule
//! `Li_k'(z) = Li_{k-1}(z)/z`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{factorial, rat_pow, rat_int, Rat};
use crate::blockset::BlockSizeSet;
use crate::series::TruncatedEgf;
use crate::stirling::StirlingTriangle;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyBernoulliError {
    #[error("the iterated-integral route needs k >= 1")]
    NonpositiveOrder,
}

/// `B_{n,S}^{(k)}` by the defining finite sum.
pub fn poly_bernoulli(n: usize, k: i64, set: &BlockSizeSet) -> Rat {
    let triangle = StirlingTriangle::build(set, n);
    let mut acc = Rat::default();
    for (i, st) in triangle.row(n).iter().enumerate() {
        if st == &BigInt::default() {
            continue;
        }
        let sign = if (n - i).is_multiple_of(2) { 1 } else { -1 };
        let term = Rat::from_integer(st * sign * factorial(i))
            * rat_pow(&rat_int((i + 1) as i64), -k);
        acc += term;
    }
    acc
}

/// The polylogarithm `Li_k(t) = Σ_{m>=1} t^m/m^k` as a truncated series,
/// exact for every integer `k`.
pub fn polylog_series(k: i64, order: usize) -> TruncatedEgf {
    let mut coeffs = vec![Rat::default(); order + 1];
    for (m, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = rat_pow(&rat_int(m as i64), -k);
    }
    TruncatedEgf::from_coeffs(coeffs)
}

/// `u(t) = -E_S(-t) = Σ_{s∈S} (-1)^{s+1} t^s/s!`, the polylog argument.
fn polylog_argument(set: &BlockSizeSet, order: usize) -> TruncatedEgf {
    let e = set.egf(order);
    let coeffs = e
        .coeffs()
        .iter()
        .enumerate()
        .map(|(s, c)| if s % 2 == 0 { -c } else { c.clone() })
        .collect();
    TruncatedEgf::from_coeffs(coeffs)
}

/// `B_{n,S}^{(k)} = n![t^n] Li_k(-E_S(-t)) / (-E_S(-t))`.
pub fn pb_egf(n: usize, k: i64, set: &BlockSizeSet) -> Rat {
    let valuation = set.min_element() as usize;
    let order = n + valuation;
    let u = polylog_argument(set, order);
    let li = polylog_series(k, order).compose(&u).expect("u(0) = 0");
    let series = li.div_exact(&u).expect("Li_k(u) and u share their valuation");
    series.egf_coeff(n)
}

/// `B_{n,S}^{(k)}` for `k >= 1` through the iterated-integral identity: the
/// innermost layer is `-log(1 + E_S(-t)) = Li_1(u)` and each of the `k - 1`
/// integrations applies `G ↦ ∫ u'·(G/u)`. The working order is
/// over-provisioned by one valuation step per division.
pub fn pb_iterated_integral(
    n: usize,
    k: i64,
    set: &BlockSizeSet,
) -> Result<Rat, PolyBernoulliError> {
    if k < 1 {
        return Err(PolyBernoulliError::NonpositiveOrder);
    }
    let valuation = set.min_element() as usize;
    let order = n + (k as usize) * valuation;
    let u = polylog_argument(set, order);

    // Li_1(u) = -log(1 - u).
    let mut layer = u.neg().log1p().expect("u(0) = 0").neg();
    for _ in 1..k {
        let quotient = layer.div_exact(&u.truncate(layer.order())).expect(
            "Li_j(u) has the valuation of u",
        );
        let u_prime = u.derivative().truncate(quotient.order());
        layer = quotient.mul(&u_prime).integrate();
    }
    let series = layer
        .div_exact(&u.truncate(layer.order()))
        .expect("Li_k(u) has the valuation of u");
    debug_assert!(series.order() >= n);
    Ok(series.egf_coeff(n))
}
