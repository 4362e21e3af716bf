//! Exact truncated power-series arithmetic over big rationals.
//!
//! [`TruncatedEgf`] stores the ordinary coefficients `c_0..c_N` of a series
//! truncated at a fixed order `N`; the exponential-generating-function
//! coefficient `n![x^n]` is recovered by [`TruncatedEgf::egf_coeff`].
//! [`TruncatedEgf2`] is the bivariate analogue on a rectangular grid.
//!
//! Storage is dense and every operation is exact. The truncation order is an
//! explicit argument everywhere; binary operations require equal orders and
//! panic otherwise, while the mathematically partial operations (`exp`,
//! `log1p`, `compose`, `quasi_inverse`, `div_exact`) report precondition
//! violations as errors.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{factorial, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("{op} requires a zero constant term")]
    NonzeroConstantTerm { op: &'static str },
    #[error("dividend valuation {num} is below divisor valuation {den}")]
    ValuationTooLow { num: usize, den: usize },
    #[error("division by the zero series")]
    ZeroDivisor,
}

/// A univariate power series with exact rational coefficients, truncated at a
/// fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedEgf {
    coeffs: Vec<Rat>,
}

impl TruncatedEgf {
    /// Series from ordinary coefficients `c_0..c_N`; the order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant term");
        TruncatedEgf { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedEgf {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    /// The monomial `x`, truncated at `order >= 1`.
    pub fn x(order: usize) -> Self {
        assert!(order >= 1, "x does not fit in a constant series");
        let mut s = Self::zero(order);
        s.coeffs[1] = Rat::one();
        s
    }

    /// `e^x` truncated at `order`.
    pub fn exp_x(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|n| Rat::new(BigInt::one(), factorial(n)))
            .collect();
        TruncatedEgf { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ordinary coefficient `[x^n]`; panics when `n` exceeds the order.
    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    /// EGF coefficient `n![x^n]`; panics when `n` exceeds the order.
    pub fn egf_coeff(&self, n: usize) -> Rat {
        &self.coeffs[n] * Rat::from_integer(factorial(n))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Index of the lowest nonzero coefficient, or `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops coefficients above `order` (never extends).
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncate cannot extend a series");
        TruncatedEgf {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn assert_same_order(&self, other: &Self, op: &str) {
        assert_eq!(
            self.order(),
            other.order(),
            "{op} requires equal truncation orders"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_order(other, "add");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        TruncatedEgf { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_order(other, "sub");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        TruncatedEgf { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedEgf {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        TruncatedEgf {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product through the shared order.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_order(other, "mul");
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedEgf { coeffs }
    }

    /// `self^k` by repeated multiplication; `a^0 = 1`.
    pub fn pow_int(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `exp(self)`, requiring a zero constant term.
    ///
    /// Uses the recurrence `n·b_n = Σ_{j=1..n} j·a_j·b_{n-j}` obtained from
    /// `b' = a'·b`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm { op: "exp" });
        }
        let order = self.order();
        let mut b = vec![Rat::zero(); order + 1];
        b[0] = Rat::one();
        for n in 1..=order {
            let mut acc = Rat::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &b[n - j] * Rat::from_integer(BigInt::from(j));
                }
            }
            b[n] = acc / Rat::from_integer(BigInt::from(n));
        }
        Ok(TruncatedEgf { coeffs: b })
    }

    /// `log(1 + self)`, requiring a zero constant term.
    ///
    /// Uses `c_n = a_n - (1/n)·Σ_{j=1..n-1} j·c_j·a_{n-j}` from `c'(1+a) = a'`.
    pub fn log1p(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm { op: "log1p" });
        }
        let order = self.order();
        let mut c = vec![Rat::zero(); order + 1];
        for n in 1..=order {
            let mut acc = Rat::zero();
            for j in 1..n {
                if !c[j].is_zero() && !self.coeffs[n - j].is_zero() {
                    acc += &c[j] * &self.coeffs[n - j] * Rat::from_integer(BigInt::from(j));
                }
            }
            c[n] = &self.coeffs[n] - acc / Rat::from_integer(BigInt::from(n));
        }
        Ok(TruncatedEgf { coeffs: c })
    }

    /// Composition `self ∘ inner` by Horner evaluation; `inner` must have a
    /// zero constant term and the same order.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.assert_same_order(inner, "compose");
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm { op: "compose" });
        }
        let order = self.order();
        let mut acc = Self::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `Σ_{j>=0} self^j = 1/(1 - self)`, requiring a zero constant term.
    pub fn quasi_inverse(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm { op: "quasi_inverse" });
        }
        let order = self.order();
        let mut q = vec![Rat::zero(); order + 1];
        q[0] = Rat::one();
        for n in 1..=order {
            let mut acc = Rat::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &q[n - j];
                }
            }
            q[n] = acc;
        }
        Ok(TruncatedEgf { coeffs: q })
    }

    /// Antiderivative with zero constant term. The result keeps the input
    /// order, so the contribution of the input's top coefficient is dropped;
    /// callers over-provision the order by one per nested integral.
    pub fn integrate(&self) -> Self {
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
            *c = &self.coeffs[n - 1] / Rat::from_integer(BigInt::from(n));
        }
        TruncatedEgf { coeffs }
    }

    /// Formal derivative. The result keeps the input order with a zero top
    /// coefficient; it is exact only through `order - 1`.
    pub fn derivative(&self) -> Self {
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (n, c) in coeffs.iter_mut().enumerate().take(order) {
            *c = &self.coeffs[n + 1] * Rat::from_integer(BigInt::from(n + 1));
        }
        TruncatedEgf { coeffs }
    }

    /// Exact quotient `self / den`. Requires `valuation(self) >=
    /// valuation(den)`; the result order is `order - valuation(den)`.
    pub fn div_exact(&self, den: &Self) -> Result<Self, SeriesError> {
        self.assert_same_order(den, "div_exact");
        let dval = den.valuation().ok_or(SeriesError::ZeroDivisor)?;
        let nval = self.valuation().unwrap_or(usize::MAX);
        if nval < dval {
            return Err(SeriesError::ValuationTooLow {
                num: nval,
                den: dval,
            });
        }
        let order = self.order() - dval;
        let lead = &den.coeffs[dval];
        let mut q = vec![Rat::zero(); order + 1];
        for n in 0..=order {
            let mut acc = self.coeffs[n + dval].clone();
            for j in 1..=n {
                if !den.coeffs[dval + j].is_zero() {
                    acc -= &den.coeffs[dval + j] * &q[n - j];
                }
            }
            q[n] = acc / lead;
        }
        Ok(TruncatedEgf { coeffs: q })
    }
}

/// A bivariate power series with exact rational coefficients on the grid
/// `0..=nx` by `0..=ny`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedEgf2 {
    nx: usize,
    ny: usize,
    coeffs: Vec<Vec<Rat>>,
}

impl TruncatedEgf2 {
    pub fn zero(nx: usize, ny: usize) -> Self {
        TruncatedEgf2 {
            nx,
            ny,
            coeffs: vec![vec![Rat::zero(); ny + 1]; nx + 1],
        }
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        let mut s = Self::zero(nx, ny);
        s.coeffs[0][0] = Rat::one();
        s
    }

    /// The separable product `a(x)·b(y)`.
    pub fn outer_product(a: &TruncatedEgf, b: &TruncatedEgf) -> Self {
        let (nx, ny) = (a.order(), b.order());
        let mut s = Self::zero(nx, ny);
        for i in 0..=nx {
            if a.coeff(i).is_zero() {
                continue;
            }
            for j in 0..=ny {
                s.coeffs[i][j] = a.coeff(i) * b.coeff(j);
            }
        }
        s
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    /// Ordinary coefficient `[x^n y^k]`; panics when out of range.
    pub fn coeff(&self, n: usize, k: usize) -> &Rat {
        &self.coeffs[n][k]
    }

    /// EGF coefficient `n!·k!·[x^n y^k]`; panics when out of range.
    pub fn egf_coeff2(&self, n: usize, k: usize) -> Rat {
        &self.coeffs[n][k] * Rat::from_integer(factorial(n) * factorial(k))
    }

    fn assert_same_orders(&self, other: &Self, op: &str) {
        assert_eq!(
            (self.nx, self.ny),
            (other.nx, other.ny),
            "{op} requires equal truncation orders"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_orders(other, "add");
        let mut s = self.clone();
        for i in 0..=self.nx {
            for j in 0..=self.ny {
                s.coeffs[i][j] += &other.coeffs[i][j];
            }
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_orders(other, "sub");
        let mut s = self.clone();
        for i in 0..=self.nx {
            for j in 0..=self.ny {
                s.coeffs[i][j] -= &other.coeffs[i][j];
            }
        }
        s
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        let mut s = self.clone();
        for row in &mut s.coeffs {
            for c in row {
                *c *= factor;
            }
        }
        s
    }

    /// Plain two-dimensional convolution, `O(nx²·ny²)`.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_orders(other, "mul");
        let mut s = Self::zero(self.nx, self.ny);
        for i in 0..=self.nx {
            for j in 0..=self.ny {
                let a = &self.coeffs[i][j];
                if a.is_zero() {
                    continue;
                }
                for p in 0..=self.nx - i {
                    for q in 0..=self.ny - j {
                        let b = &other.coeffs[p][q];
                        if !b.is_zero() {
                            s.coeffs[i + p][j + q] += a * b;
                        }
                    }
                }
            }
        }
        s
    }

    pub fn pow_int(&self, k: usize) -> Self {
        let mut acc = Self::one(self.nx, self.ny);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `Σ_{j>=0} self^j = 1/(1 - self)`, requiring a zero constant term.
    ///
    /// Computed from `q = 1 + w·q` in ascending grid order; the defining
    /// convolution never touches `q[i][j]` itself because `w[0][0] = 0`.
    pub fn quasi_inverse(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0][0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm { op: "quasi_inverse" });
        }
        let mut q = Self::zero(self.nx, self.ny);
        q.coeffs[0][0] = Rat::one();
        for i in 0..=self.nx {
            for j in 0..=self.ny {
                if i == 0 && j == 0 {
                    continue;
                }
                let mut acc = Rat::zero();
                for a in 0..=i {
                    for b in 0..=j {
                        if (a, b) == (0, 0) || self.coeffs[a][b].is_zero() {
                            continue;
                        }
                        acc += &self.coeffs[a][b] * &q.coeffs[i - a][j - b];
                    }
                }
                q.coeffs[i][j] = acc;
            }
        }
        Ok(q)
    }

    /// `exp(self)`, requiring a zero constant term. Summing powers terminates
    /// because a series with positive total-degree valuation contributes
    /// nothing beyond the `nx + ny`-th power.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0][0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm { op: "exp" });
        }
        let mut acc = Self::one(self.nx, self.ny);
        let mut term = Self::one(self.nx, self.ny);
        for j in 1..=self.nx + self.ny {
            term = term.mul(self);
            acc = acc.add(&term.scale(&Rat::new(BigInt::one(), factorial(j))));
        }
        Ok(acc)
    }
}
