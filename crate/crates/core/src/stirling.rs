//! `S`-restricted Stirling numbers of the second kind, Bell numbers and
//! polynomials, potential-polynomial values, and the generalized Dobinski
//! series with a rigorous stopping rule.
//!
//! The Stirling numbers come through three independent routes that must agree
//! exactly: the multinomial sum over block-size multiplicities
//! ([`stirling_direct`]), extraction from the generating function
//! `(E_S)^k/k!` ([`stirling_egf`]), and the one-element recurrence
//! ([`stirling_rec`]).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{binomial, factorial, falling_factorial, rat_to_int, Rat};
use crate::blockset::BlockSizeSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StirlingError {
    #[error("tolerance must be positive")]
    NonpositiveTolerance,
    #[error("the Dobinski argument must be positive")]
    NonpositiveArgument,
}

/// Lower-triangular table of `{n brace k}_S` for `0 <= k <= n <= max_n`.
#[derive(Debug, Clone)]
pub struct StirlingTriangle {
    set: BlockSizeSet,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTriangle {
    /// Builds the full triangle with the one-element recurrence
    /// `{n brace k}_S = Σ_{s∈S, s<=n} C(n-1, s-1)·{n-s brace k-1}_S`.
    pub fn build(set: &BlockSizeSet, max_n: usize) -> Self {
        let members = set.enumerate(max_n as u32);
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let mut row = vec![BigInt::zero(); n + 1];
            for &s in &members {
                let s = s as usize;
                if s > n {
                    break;
                }
                let ways = binomial(n - 1, s - 1);
                for k in 1..=n {
                    if k - 1 <= n - s {
                        let prev = &rows[n - s][k - 1];
                        if !prev.is_zero() {
                            row[k] += &ways * prev;
                        }
                    }
                }
            }
            rows.push(row);
        }
        StirlingTriangle {
            set: set.clone(),
            rows,
        }
    }

    pub fn set(&self) -> &BlockSizeSet {
        &self.set
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `{n brace k}_S`; zero for `k > n`.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            BigInt::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    /// Row sum `B_{n,S}`.
    pub fn bell(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }
}

/// `{n brace k}_S` by the multinomial sum over solutions of
/// `Σ c_i·s_i = n`, `Σ c_i = k` with each `s_i` in `S`: every solution
/// contributes `n! / (Π c_i!·(s_i!)^{c_i})`.
pub fn stirling_direct(n: usize, k: usize, set: &BlockSizeSet) -> BigInt {
    assert!(k <= n, "a partition of [n] has at most n blocks");
    let members = set.enumerate(n as u32);
    let mut total = BigInt::zero();
    let n_fact = factorial(n);
    // Depth-first over multiplicities, pruning on the remaining sum and the
    // remaining block budget.
    fn dfs(
        members: &[u32],
        idx: usize,
        rem_n: usize,
        rem_k: usize,
        denom: BigInt,
        n_fact: &BigInt,
        total: &mut BigInt,
    ) {
        if rem_n == 0 && rem_k == 0 {
            let (q, r) = num_integer::Integer::div_rem(n_fact, &denom);
            debug_assert!(r.is_zero(), "the multinomial weight is an integer");
            *total += q;
            return;
        }
        if idx == members.len() || rem_k == 0 {
            return;
        }
        let s = members[idx] as usize;
        let c_max = (rem_n / s).min(rem_k);
        let s_fact = factorial(s);
        let mut c_term = BigInt::one();
        for c in 0..=c_max {
            if c > 0 {
                c_term = c_term * c * &s_fact;
            }
            dfs(
                members,
                idx + 1,
                rem_n - c * s,
                rem_k - c,
                &denom * &c_term,
                n_fact,
                total,
            );
        }
    }
    dfs(&members, 0, n, k, BigInt::one(), &n_fact, &mut total);
    total
}

/// `{n brace k}_S` as `n![x^n] (E_S(x))^k / k!`.
pub fn stirling_egf(n: usize, k: usize, set: &BlockSizeSet) -> BigInt {
    assert!(k <= n, "a partition of [n] has at most n blocks");
    let value = set.egf(n).pow_int(k).egf_coeff(n) / Rat::from_integer(factorial(k));
    rat_to_int(&value)
}

/// `{n brace k}_S` by the memoized one-element recurrence.
pub fn stirling_rec(n: usize, k: usize, set: &BlockSizeSet) -> BigInt {
    assert!(k <= n, "a partition of [n] has at most n blocks");
    StirlingTriangle::build(set, n).get(n, k)
}

/// `B_{n,S} = Σ_k {n brace k}_S`.
pub fn bell_number(n: usize, set: &BlockSizeSet) -> BigInt {
    StirlingTriangle::build(set, n).bell(n)
}

/// The polynomial `B_{n,S}(x) = Σ_k {n brace k}_S x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellPolynomial {
    coeffs: Vec<BigInt>,
}

impl BellPolynomial {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        BellPolynomial { coeffs }
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^k`; zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }
}

impl std::fmt::Display for BellPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let abs = c.magnitude();
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `B_{n,S}(x)` from the Stirling triangle.
pub fn bell_polynomial(n: usize, set: &BlockSizeSet) -> BellPolynomial {
    let triangle = StirlingTriangle::build(set, n);
    BellPolynomial::from_coeffs(triangle.row(n).to_vec())
}

/// Table of potential-polynomial values `f_{S,t}^{(n)}(0)` for
/// `n <= max_n`, `t <= max_t`.
#[derive(Debug, Clone)]
pub struct PotentialTable {
    set: BlockSizeSet,
    values: Vec<Vec<BigInt>>,
}

impl PotentialTable {
    pub fn build(set: &BlockSizeSet, max_n: usize, max_t: u64) -> Self {
        let triangle = StirlingTriangle::build(set, max_n);
        let values = (0..=max_n)
            .map(|n| {
                (0..=max_t)
                    .map(|t| potential_from_row(triangle.row(n), t))
                    .collect()
            })
            .collect();
        PotentialTable {
            set: set.clone(),
            values,
        }
    }

    pub fn set(&self) -> &BlockSizeSet {
        &self.set
    }

    pub fn get(&self, n: usize, t: u64) -> BigInt {
        self.values[n][t as usize].clone()
    }
}

fn potential_from_row(row: &[BigInt], t: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for (k, st) in row.iter().enumerate() {
        if !st.is_zero() {
            acc += st * falling_factorial(t, k);
        }
    }
    acc
}

/// `f_{S,t}^{(n)}(0) = Σ_k {n brace k}_S (t)_k`: the number of functions
/// `[n] -> [t]` whose every nonempty fiber has size in `S`.
pub fn potential_value(n: usize, t: u64, set: &BlockSizeSet) -> BigInt {
    potential_from_row(StirlingTriangle::build(set, n).row(n), t)
}

/// A one-sided bracket `[partial_sum, partial_sum + tail_bound]` around a
/// nonnegative-term series limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub partial_sum: Rat,
    pub tail_bound: Rat,
}

impl Bracket {
    pub fn lower(&self) -> Rat {
        self.partial_sum.clone()
    }

    pub fn upper(&self) -> Rat {
        &self.partial_sum + &self.tail_bound
    }

    /// True iff `value` lies inside the bracket.
    pub fn contains(&self, value: &Rat) -> bool {
        &self.partial_sum <= value && *value <= self.upper()
    }
}

/// Partial sums of the Dobinski-type series
/// `e^x·B_{n,S}(x) = Σ_ℓ f_{S,ℓ}^{(n)}(0)·x^ℓ/ℓ!` with a rigorous tail bound.
///
/// Stopping rule: with `a_ℓ = ℓ^n·x^ℓ/ℓ!` we have `f_{S,ℓ}^{(n)}(0) <= ℓ^n`
/// (there are at most `ℓ^n` functions `[n] -> [ℓ]`), and for
/// `ℓ >= L+1` with `L = 2(n + ceil(x))` the term ratio satisfies
///
/// ```text
/// a_{ℓ+1}/a_ℓ = (1 + 1/ℓ)^n · x/(ℓ+1)
///            <= x·ℓ / ((ℓ-n)(ℓ+1))          [(1+t)^n <= 1/(1-nt)]
///            <= 1/2,
/// ```
///
/// because `2·x·ℓ <= (ℓ-n)(ℓ+1)` reduces, after substituting
/// `ℓ = 2n + 2c + 1` with `c = ceil(x) >= x`, to the manifestly nonnegative
/// `n² + cn + 2n + 2c + 1 >= 0`, and the middle expression is decreasing in
/// `ℓ`. Hence the tail past `L` is at most the geometric sum `2·a_{L+1}`.
/// `L` is then raised further until `2·a_{L+1} <= tol`, so the returned bound
/// is also below `tol <= tol·e^x`.
pub fn dobinski(
    n: usize,
    set: &BlockSizeSet,
    x: &Rat,
    tol: &Rat,
) -> Result<Bracket, StirlingError> {
    if !tol.is_positive() {
        return Err(StirlingError::NonpositiveTolerance);
    }
    if !x.is_positive() {
        return Err(StirlingError::NonpositiveArgument);
    }
    let ceil_x: usize = x
        .ceil()
        .to_integer()
        .try_into()
        .expect("Dobinski argument too large");
    let mut l = 2 * (n + ceil_x);

    // a_ℓ = ℓ^n x^ℓ / ℓ!, maintained incrementally from a_{L+1}.
    let term = |l: usize| -> Rat {
        Rat::from_integer(BigInt::from(l).pow(n as u32)) * crate::arith::rat_pow(x, l as i64)
            / Rat::from_integer(factorial(l))
    };
    let two = Rat::from_integer(BigInt::from(2));
    while &two * term(l + 1) > *tol {
        l += 1;
    }
    let tail_bound = &two * term(l + 1);

    let triangle = StirlingTriangle::build(set, n);
    let mut partial_sum = Rat::zero();
    let mut x_pow = Rat::one();
    let mut l_fact = BigInt::one();
    for ell in 0..=l {
        if ell > 0 {
            x_pow *= x;
            l_fact *= ell;
        }
        let f = potential_from_row(triangle.row(n), ell as u64);
        partial_sum += Rat::from_integer(f) * &x_pow / Rat::from_integer(l_fact.clone());
    }
    Ok(Bracket {
        partial_sum,
        tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn s136() -> BlockSizeSet {
        BlockSizeSet::finite(vec![1, 3, 6]).unwrap()
    }

    #[test]
    fn direct_route_examples() {
        assert_eq!(stirling_direct(4, 2, &s136()), rat_int(4).to_integer());
        assert_eq!(stirling_direct(9, 9, &BlockSizeSet::All), BigInt::one());
        assert_eq!(stirling_direct(7, 7, &s136()), BigInt::one());
        assert_eq!(stirling_direct(6, 2, &BlockSizeSet::odd()), BigInt::from(16));
        assert_eq!(stirling_direct(0, 0, &BlockSizeSet::even()), BigInt::one());
        assert_eq!(stirling_direct(3, 0, &BlockSizeSet::All), BigInt::zero());
    }

    #[test]
    fn egf_route_examples() {
        assert_eq!(stirling_egf(7, 3, &s136()), BigInt::from(70));
        assert_eq!(stirling_egf(3, 2, &BlockSizeSet::All), BigInt::from(3));
        assert_eq!(stirling_egf(5, 2, &BlockSizeSet::odd()), BigInt::zero());
    }

    #[test]
    fn recurrence_route_examples() {
        assert_eq!(stirling_rec(6, 4, &s136()), BigInt::from(20));
        assert_eq!(stirling_rec(8, 4, &s136()), BigInt::from(280));
        assert_eq!(stirling_rec(2, 1, &BlockSizeSet::even()), BigInt::one());
    }

    #[test]
    fn support_is_zero_off_the_semigroup() {
        // {n brace k}_S = 0 whenever n is not a k-term sum of members of S.
        let set = BlockSizeSet::even();
        for n in 0..=8usize {
            for k in 0..=n {
                if n % 2 == 1 {
                    assert_eq!(stirling_rec(n, k, &set), BigInt::zero());
                }
            }
        }
        assert_eq!(stirling_rec(5, 2, &BlockSizeSet::odd()), BigInt::zero());
    }

    #[test]
    fn bell_values_and_polynomials() {
        assert_eq!(bell_number(4, &s136()), BigInt::from(5));
        assert_eq!(bell_number(3, &BlockSizeSet::All), BigInt::from(5));
        assert_eq!(bell_number(0, &BlockSizeSet::even()), BigInt::one());

        let b6 = bell_polynomial(6, &s136());
        assert_eq!(b6.to_string(), "x^6 + 20x^4 + 10x^2 + x");
        assert_eq!(b6.eval(&rat(1, 1)), rat_int(32));
    }

    #[test]
    fn potential_values() {
        assert_eq!(potential_value(3, 2, &s136()), BigInt::from(2));
        assert_eq!(potential_value(0, 7, &BlockSizeSet::even()), BigInt::one());
        assert_eq!(potential_value(2, 3, &BlockSizeSet::All), BigInt::from(9));

        let table = PotentialTable::build(&BlockSizeSet::All, 4, 3);
        assert_eq!(table.get(2, 3), BigInt::from(9));
        assert_eq!(table.get(0, 0), BigInt::one());
        assert_eq!(table.get(4, 2), BigInt::from(16));
    }

    #[test]
    fn triangle_invariants() {
        let triangle = StirlingTriangle::build(&s136(), 8);
        assert_eq!(triangle.get(0, 0), BigInt::one());
        for n in 1..=8 {
            assert_eq!(triangle.get(n, 0), BigInt::zero());
            assert_eq!(triangle.get(n, n + 1), BigInt::zero());
            assert!(triangle.row(n).iter().all(|v| !v.is_negative()));
        }
    }

    #[test]
    fn dobinski_brackets_bell_polynomial() {
        let tol = rat(1, 1_000_000);
        let e_bracket = e_power_bracket(&rat(1, 1));

        for (n, set) in [
            (3usize, BlockSizeSet::All),
            (0, BlockSizeSet::even()),
            (6, s136()),
        ] {
            let bracket = dobinski(n, &set, &rat(1, 1), &tol).unwrap();
            assert!(bracket.tail_bound <= tol);
            // e^x·B_{n,S}(x) lies in [lo·B, hi·B]; that interval must meet
            // the Dobinski bracket on both sides.
            let b = bell_polynomial(n, &set).eval(&rat(1, 1));
            assert!(bracket.partial_sum <= &e_bracket.1 * &b);
            assert!(bracket.upper() >= &e_bracket.0 * &b);
        }
    }

    #[test]
    fn dobinski_with_larger_argument() {
        let tol = rat(1, 100_000_000);
        let x = rat(3, 1);
        let bracket = dobinski(2, &BlockSizeSet::All, &x, &tol).unwrap();
        let (lo, hi) = e_power_bracket(&x);
        let b = bell_polynomial(2, &BlockSizeSet::All).eval(&x); // x + x^2
        assert!(bracket.partial_sum <= hi * &b);
        assert!(bracket.upper() >= lo * &b);
        assert!(bracket.tail_bound <= tol);
    }

    #[test]
    fn dobinski_rejects_bad_inputs() {
        assert_eq!(
            dobinski(2, &BlockSizeSet::All, &rat(1, 1), &rat(0, 1)),
            Err(StirlingError::NonpositiveTolerance)
        );
        assert_eq!(
            dobinski(2, &BlockSizeSet::All, &rat(-1, 1), &rat(1, 10)),
            Err(StirlingError::NonpositiveArgument)
        );
    }

    /// Exact rational bracket around `e^x` for `0 < x <= 8`: the Taylor
    /// partial sum plus a geometric remainder bound.
    fn e_power_bracket(x: &Rat) -> (Rat, Rat) {
        let terms = 60usize;
        let mut lo = Rat::zero();
        let mut x_pow = Rat::one();
        let mut fact = BigInt::one();
        for j in 0..=terms {
            if j > 0 {
                x_pow *= x;
                fact *= j;
            }
            lo += &x_pow / Rat::from_integer(fact.clone());
        }
        // Remainder: x^{T+1}/(T+1)! · 1/(1 - x/(T+2)), valid since x < T+2.
        let next = &x_pow * x / Rat::from_integer(&fact * (terms + 1));
        let ratio = x / Rat::from_integer(BigInt::from(terms + 2));
        assert!(ratio < Rat::one());
        let rem = next / (Rat::one() - ratio);
        (lo.clone(), lo + rem)
    }
}
