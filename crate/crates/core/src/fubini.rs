//! `S`-restricted Fubini (ordered Bell) numbers.
//!
//! `F_{n,S} = Σ_k k!·{n brace k}_S` counts ordered set partitions of `[n]`
//! with block sizes in `S`, equivalently rankings of `n` candidates whose tie
//! group sizes lie in `S`. The generating-function route extracts
//! `n![x^n] 1/(1 - E_S(x))`; both routes must agree exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{binomial, factorial, rat_to_int, Rat};
use crate::blockset::BlockSizeSet;
use crate::stirling::{Bracket, PotentialTable, StirlingTriangle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FubiniError {
    #[error("tolerance must be positive")]
    NonpositiveTolerance,
}

/// `F_{n,S}` by the defining sum over the Stirling triangle.
pub fn fubini(n: usize, set: &BlockSizeSet) -> BigInt {
    fubini_from_triangle(&StirlingTriangle::build(set, n), n)
}

fn fubini_from_triangle(triangle: &StirlingTriangle, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for (k, st) in triangle.row(n).iter().enumerate() {
        if !st.is_zero() {
            acc += factorial(k) * st;
        }
    }
    acc
}

/// The values `F_{0,S} .. F_{N,S}`.
#[derive(Debug, Clone)]
pub struct FubiniSequence {
    set: BlockSizeSet,
    values: Vec<BigInt>,
}

impl FubiniSequence {
    pub fn build(set: &BlockSizeSet, max_n: usize) -> Self {
        let triangle = StirlingTriangle::build(set, max_n);
        FubiniSequence {
            set: set.clone(),
            values: (0..=max_n).map(|n| fubini_from_triangle(&triangle, n)).collect(),
        }
    }

    pub fn set(&self) -> &BlockSizeSet {
        &self.set
    }

    pub fn get(&self, n: usize) -> &BigInt {
        &self.values[n]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// `F_{n,S} = n![x^n] 1/(1 - E_S(x))`.
pub fn fubini_egf(n: usize, set: &BlockSizeSet) -> BigInt {
    let series = set
        .egf(n)
        .quasi_inverse()
        .expect("E_S has no constant term");
    rat_to_int(&series.egf_coeff(n))
}

/// Partial sums of `F_{n,S} = (1/2)·Σ_k 2^{-k}·f_{S,k}^{(n)}(0)` with a
/// rigorous tail bound.
///
/// With `b_k = k^n/2^k` we have `f_{S,k}^{(n)}(0) <= k^n` and for
/// `k >= K+1` with `K >= 4n+4` the ratio
/// `b_{k+1}/b_k = (1+1/k)^n/2 <= 1/(2(1-n/k)) <= 2/3`, decreasing in `k`,
/// so the tail past `K` is at most `(1/2)·b_{K+1}·3 < 2·b_{K+1}`. `K` is
/// raised until `2·b_{K+1} <= tol`.
pub fn fubini_dobinski(
    n: usize,
    set: &BlockSizeSet,
    tol: &Rat,
) -> Result<Bracket, FubiniError> {
    if !tol.is_positive() {
        return Err(FubiniError::NonpositiveTolerance);
    }
    let term = |k: usize| -> Rat {
        Rat::new(
            BigInt::from(k).pow(n as u32),
            BigInt::one() << k,
        )
    };
    let mut cutoff = 4 * n + 4;
    let two = Rat::from_integer(BigInt::from(2));
    while &two * term(cutoff + 1) > *tol {
        cutoff += 1;
    }
    let tail_bound = &two * term(cutoff + 1);

    let potentials = PotentialTable::build(set, n, cutoff as u64);
    let mut partial_sum = Rat::zero();
    for k in 0..=cutoff {
        partial_sum += Rat::new(potentials.get(n, k as u64), BigInt::one() << (k + 1));
    }
    Ok(Bracket {
        partial_sum,
        tail_bound,
    })
}

/// Both sides of the generalized Poonen identity
/// `2^q F_{n,S} = Σ_ℓ C(n,ℓ)·F_{ℓ,S}·f_{S,q}^{(n-ℓ)}(0)
///              + Σ_{ℓ=0}^{q-1} 2^{q-ℓ-1}·f_{S,ℓ}^{(n)}(0)`.
///
/// The second sum's `ℓ = 0` term is `2^{q-1}·{n brace 0}_S`, nonzero only
/// for `n = 0`; including it makes the identity hold at `n = 0` as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoonenIdentity {
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl PoonenIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates both sides of the Poonen identity exactly; `q >= 1`.
pub fn poonen_check(n: usize, q: u32, set: &BlockSizeSet) -> PoonenIdentity {
    assert!(q >= 1, "the Poonen identity needs q >= 1");
    let fubini_seq = FubiniSequence::build(set, n);
    let potentials = PotentialTable::build(set, n, q as u64);

    let lhs = (BigInt::one() << q) * fubini_seq.get(n);

    let mut rhs = BigInt::zero();
    for l in 0..=n {
        let f = fubini_seq.get(l);
        if f.is_zero() {
            continue;
        }
        rhs += binomial(n, l) * f * potentials.get(n - l, q as u64);
    }
    for l in 0..q {
        let phi = potentials.get(n, l as u64);
        if !phi.is_zero() {
            rhs += (BigInt::one() << (q - l - 1)) * phi;
        }
    }
    PoonenIdentity { lhs, rhs }
}

/// The closing congruence
/// `(2^q - 1)·F_{n,S} ≡ Σ_{ℓ=0}^{q-1} 2^{q-ℓ-1}·f_{S,ℓ}^{(n)}(0) (mod q)`;
/// exact residues are compared.
pub fn congruence_check(n: usize, q: u32, set: &BlockSizeSet) -> bool {
    assert!(q >= 1, "the congruence needs q >= 1");
    let q_big = BigInt::from(q);
    let lhs = ((BigInt::one() << q) - 1) * fubini(n, set);
    let potentials = PotentialTable::build(set, n, (q - 1) as u64);
    let mut rhs = BigInt::zero();
    for l in 0..q {
        rhs += (BigInt::one() << (q - l - 1)) * potentials.get(n, l as u64);
    }
    num_integer::Integer::mod_floor(&lhs, &q_big)
        == num_integer::Integer::mod_floor(&rhs, &q_big)
}
