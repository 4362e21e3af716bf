//! Exponential Riordan arrays.
//!
//! `⟨g, f⟩` with `g(0) != 0`, `f(0) = 0`, `f'(0) != 0` is the lower
//! triangular matrix whose column `k` has generating function `g·f^k/k!`,
//! i.e. entries `d_{n,k} = (n!/k!)·[x^n] g·f^k`. The group product is
//! `⟨g,f⟩ * ⟨h,ℓ⟩ = ⟨g·h(f), ℓ(f)⟩`; inverses of the truncated matrices are
//! taken by exact forward substitution rather than compositional inversion
//! of `f`, since only the inverse entries are ever used.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{factorial, rat_to_int, Rat};
use crate::blockset::BlockSizeSet;
use crate::series::TruncatedEgf;
use crate::stirling::BellPolynomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RiordanError {
    #[error("g must have a nonzero constant term")]
    GConstantTermZero,
    #[error("f must have a zero constant term")]
    FConstantTermNonzero,
    #[error("f must have a nonzero linear coefficient")]
    FDerivativeZero,
    #[error("series order {order} is too small for a {size}x{size} matrix")]
    OrderTooSmall { order: usize, size: usize },
    #[error("matrix sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("matrix has a zero diagonal entry at row {row}")]
    SingularDiagonal { row: usize },
    #[error("the stirling matrix of S requires 1 in S")]
    OneNotInSet,
}

/// An exact lower-triangular matrix; row `n` stores columns `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerTriangular {
    rows: Vec<Vec<Rat>>,
}

impl LowerTriangular {
    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|n| {
                let mut row = vec![Rat::zero(); n + 1];
                row[n] = Rat::one();
                row
            })
            .collect();
        LowerTriangular { rows }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} must have {} entries", n + 1);
        }
        LowerTriangular { rows }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(n, k)`; zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> Rat {
        if k > n {
            Rat::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn row(&self, n: usize) -> &[Rat] {
        &self.rows[n]
    }

    pub fn row_sums(&self) -> Vec<Rat> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    /// Exact matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self, RiordanError> {
        if self.size() != other.size() {
            return Err(RiordanError::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let rows = (0..self.size())
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        let mut acc = Rat::zero();
                        for i in k..=n {
                            if !self.rows[n][i].is_zero() && !other.rows[i][k].is_zero() {
                                acc += &self.rows[n][i] * &other.rows[i][k];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(LowerTriangular { rows })
    }

    /// Matrix-vector product; `v.len()` must equal the size.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.size());
        (0..self.size())
            .map(|n| {
                let mut acc = Rat::zero();
                for k in 0..=n {
                    acc += &self.rows[n][k] * &v[k];
                }
                acc
            })
            .collect()
    }

    /// Exact inverse by forward substitution; fails on a zero diagonal.
    pub fn inverse(&self) -> Result<Self, RiordanError> {
        let size = self.size();
        for n in 0..size {
            if self.rows[n][n].is_zero() {
                return Err(RiordanError::SingularDiagonal { row: n });
            }
        }
        let mut inv = vec![vec![Rat::zero(); size]; size];
        for k in 0..size {
            for n in k..size {
                let mut acc = if n == k { Rat::one() } else { Rat::zero() };
                for i in k..n {
                    if !inv[i][k].is_zero() {
                        acc -= &self.rows[n][i] * &inv[i][k];
                    }
                }
                inv[n][k] = acc / &self.rows[n][n];
            }
        }
        Ok(LowerTriangular {
            rows: (0..size).map(|n| inv[n][..=n].to_vec()).collect(),
        })
    }

    /// The leading `size x size` principal submatrix.
    pub fn leading(&self, size: usize) -> Self {
        assert!(size <= self.size());
        LowerTriangular {
            rows: self.rows[..size].to_vec(),
        }
    }

    /// Block-diagonal sum; `self ⊕ other` places `other` after `self`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let offset = self.size();
        let mut rows = self.rows.clone();
        for n in 0..other.size() {
            let mut row = vec![Rat::zero(); offset + n + 1];
            for k in 0..=n {
                row[offset + k] = other.rows[n][k].clone();
            }
            rows.push(row);
        }
        LowerTriangular { rows }
    }

    /// All entries as exact integers; panics when an entry is not integral.
    pub fn to_int_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(rat_to_int).collect())
            .collect()
    }
}

/// An exponential Riordan array together with its truncated matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiordanArray {
    g: TruncatedEgf,
    f: TruncatedEgf,
    matrix: LowerTriangular,
}

impl RiordanArray {
    /// Builds the `size x size` truncation of `⟨g, f⟩`; series orders must be
    /// at least `size - 1`.
    pub fn build(g: &TruncatedEgf, f: &TruncatedEgf, size: usize) -> Result<Self, RiordanError> {
        assert!(size >= 1, "a Riordan matrix has at least one row");
        let needed = size - 1;
        for s in [g, f] {
            if s.order() < needed {
                return Err(RiordanError::OrderTooSmall {
                    order: s.order(),
                    size,
                });
            }
        }
        let g = g.truncate(needed);
        let f = f.truncate(needed);
        if g.coeff(0).is_zero() {
            return Err(RiordanError::GConstantTermZero);
        }
        if needed >= 1 {
            if !f.coeff(0).is_zero() {
                return Err(RiordanError::FConstantTermNonzero);
            }
            if f.coeff(1).is_zero() {
                return Err(RiordanError::FDerivativeZero);
            }
        }
        // Column k has generating function g·f^k/k!.
        let mut rows = vec![Vec::with_capacity(size); size];
        let mut column_gf = g.clone();
        for k in 0..size {
            if k > 0 {
                column_gf = column_gf.mul(&f);
            }
            let k_fact = Rat::from_integer(factorial(k));
            for n in k..size {
                let entry = column_gf.egf_coeff(n) / &k_fact;
                rows[n].push(entry);
            }
        }
        Ok(RiordanArray {
            g,
            f,
            matrix: LowerTriangular { rows },
        })
    }

    /// `M_S = ⟨1, E_S(x)⟩` with entries `{n brace k}_S`; requires `1 ∈ S` so
    /// that `f'(0) != 0`.
    pub fn stirling_matrix(set: &BlockSizeSet, size: usize) -> Result<Self, RiordanError> {
        if !set.contains(1) {
            return Err(RiordanError::OneNotInSet);
        }
        let order = (size - 1).max(1);
        Self::build(&TruncatedEgf::one(order), &set.egf(order), size)
    }

    pub fn g(&self) -> &TruncatedEgf {
        &self.g
    }

    pub fn f(&self) -> &TruncatedEgf {
        &self.f
    }

    pub fn matrix(&self) -> &LowerTriangular {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    /// Group product `⟨g,f⟩ * ⟨h,ℓ⟩ = ⟨g·h(f), ℓ(f)⟩`. The result's matrix
    /// equals the exact product of the entry matrices.
    pub fn multiply(&self, other: &Self) -> Result<Self, RiordanError> {
        if self.size() != other.size() {
            return Err(RiordanError::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let g = self
            .g
            .mul(&other.g.compose(&self.f).expect("f has zero constant term"));
        let f = other.f.compose(&self.f).expect("f has zero constant term");
        let product = Self::build(&g, &f, self.size())?;
        debug_assert_eq!(
            product.matrix,
            self.matrix.mul(&other.matrix).expect("sizes match"),
            "group product must agree with the matrix product"
        );
        Ok(product)
    }

    /// Exact inverse of the truncated matrix.
    pub fn inverse(&self) -> Result<LowerTriangular, RiordanError> {
        self.matrix.inverse()
    }

    /// The factorization `⟨g,f⟩ = ⟨g,x⟩ * ([1] ⊕ ⟨f',f⟩)`; returns the two
    /// factors, the right one as a matrix. Multiplying them back reproduces
    /// the array exactly.
    pub fn factorize(&self) -> Result<(RiordanArray, LowerTriangular), RiordanError> {
        let size = self.size();
        let order = self.g.order();
        let left = Self::build(&self.g, &TruncatedEgf::x(order.max(1)).truncate(order), size)?;
        let right = if size == 1 {
            LowerTriangular::identity(1)
        } else {
            // ⟨f', f⟩ at size-1: f' is exact through order-1, enough for the
            // smaller block.
            let shifted = Self::build(
                &self.f.derivative().truncate(order - 1),
                &self.f.truncate(order - 1),
                size - 1,
            )?;
            LowerTriangular::identity(1).direct_sum(&shifted.matrix)
        };
        Ok((left, right))
    }
}

/// The product of the first `size - 1` factors of
/// `M_Odd = Π_{ℓ>=1} (I_ℓ ⊕ P̄)` with `P̄ = ⟨cosh x, x⟩`, each factor
/// truncated to `size x size`. Agrees with `⟨1, sinh x⟩` on every entry of
/// the leading `size x size` block.
pub fn odd_product_prefix(size: usize) -> LowerTriangular {
    assert!(size >= 1);
    if size == 1 {
        return LowerTriangular::identity(1);
    }
    let order = size - 1;
    let cosh = BlockSizeSet::even().egf(order).add(&TruncatedEgf::one(order));
    let pbar = RiordanArray::build(&cosh, &TruncatedEgf::x(order), size - 1)
        .expect("cosh(0) = 1 and x qualifies");
    let mut acc = LowerTriangular::identity(size);
    for l in 1..size {
        let factor = LowerTriangular::identity(l).direct_sum(&pbar.matrix().leading(size - l));
        acc = acc.mul(&factor).expect("sizes match");
    }
    acc
}

/// `B_{n,S}(x)` through the inverse-triangle recurrence
/// `B_{m,S}(x) = x^m - Σ_{k<m} {m brace k}_S^{-1} B_{k,S}(x)`, the identity
/// behind the determinantal formula. Requires `1 ∈ S`; agrees exactly with
/// the Stirling-triangle route.
pub fn bell_det(n: usize, set: &BlockSizeSet) -> Result<BellPolynomial, RiordanError> {
    let inverse = RiordanArray::stirling_matrix(set, n + 1)?.inverse()?;
    let mut polys: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut coeffs = vec![Rat::zero(); m + 1];
        coeffs[m] = Rat::one();
        for k in 0..m {
            let t = inverse.get(m, k);
            if !t.is_zero() {
                for (d, c) in polys[k].iter().enumerate() {
                    coeffs[d] -= &t * c;
                }
            }
        }
        polys.push(coeffs);
    }
    Ok(BellPolynomial::from_coeffs(
        polys[n].iter().map(rat_to_int).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use crate::stirling::{bell_number, bell_polynomial};

    fn s136() -> BlockSizeSet {
        BlockSizeSet::finite(vec![1, 3, 6]).unwrap()
    }

    fn pascal(size: usize) -> RiordanArray {
        RiordanArray::build(
            &TruncatedEgf::exp_x(size - 1),
            &TruncatedEgf::x(size - 1),
            size,
        )
        .unwrap()
    }

    #[test]
    fn pascal_matrix_entries() {
        let p = pascal(5);
        for n in 0..5 {
            for k in 0..=n {
                assert_eq!(
                    p.matrix().get(n, k),
                    Rat::from_integer(binomial(n, k)),
                    "({n},{k})"
                );
            }
        }
    }

    #[test]
    fn identity_and_cosh_arrays() {
        let size = 5;
        let id = RiordanArray::build(
            &TruncatedEgf::one(size - 1),
            &TruncatedEgf::x(size - 1),
            size,
        )
        .unwrap();
        assert_eq!(*id.matrix(), LowerTriangular::identity(size));

        // ⟨cosh x, x⟩ by the column rule: entries C(n,k)·(1+(-1)^{n+k})/2,
        // column 0 included (it carries cosh itself).
        let cosh = BlockSizeSet::even().egf(4).add(&TruncatedEgf::one(4));
        let c = RiordanArray::build(&cosh, &TruncatedEgf::x(4), size).unwrap();
        for n in 0..5 {
            for k in 0..=n {
                let want = if (n + k) % 2 == 0 {
                    Rat::from_integer(binomial(n, k))
                } else {
                    Rat::zero()
                };
                assert_eq!(c.matrix().get(n, k), want, "({n},{k})");
            }
        }
    }

    #[test]
    fn build_rejects_bad_series() {
        let x = TruncatedEgf::x(4);
        assert_eq!(
            RiordanArray::build(&TruncatedEgf::zero(4), &x, 5).unwrap_err(),
            RiordanError::GConstantTermZero
        );
        assert_eq!(
            RiordanArray::build(&TruncatedEgf::exp_x(4), &TruncatedEgf::one(4), 5).unwrap_err(),
            RiordanError::FConstantTermNonzero
        );
        assert_eq!(
            RiordanArray::build(&TruncatedEgf::exp_x(4), &TruncatedEgf::x(4).pow_int(2), 5)
                .unwrap_err(),
            RiordanError::FDerivativeZero
        );
        assert_eq!(
            RiordanArray::build(&TruncatedEgf::exp_x(2), &TruncatedEgf::x(2), 5).unwrap_err(),
            RiordanError::OrderTooSmall { order: 2, size: 5 }
        );
    }

    #[test]
    fn stirling_matrix_matches_triangle() {
        let m = RiordanArray::stirling_matrix(&BlockSizeSet::All, 4).unwrap();
        let expected = LowerTriangular::from_int_rows(&[
            vec![1],
            vec![0, 1],
            vec![0, 1, 1],
            vec![0, 1, 3, 1],
        ]);
        assert_eq!(*m.matrix(), expected);

        assert_eq!(
            RiordanArray::stirling_matrix(&BlockSizeSet::even(), 4).unwrap_err(),
            RiordanError::OneNotInSet
        );
    }

    #[test]
    fn group_product() {
        let p = pascal(6);
        let pp = p.multiply(&p).unwrap();
        for n in 0..6 {
            for k in 0..=n {
                let want = Rat::from_integer(binomial(n, k) * BigInt::from(2).pow((n - k) as u32));
                assert_eq!(pp.matrix().get(n, k), want);
            }
        }

        let id = RiordanArray::build(
            &TruncatedEgf::one(5),
            &TruncatedEgf::x(5),
            6,
        )
        .unwrap();
        let m = RiordanArray::stirling_matrix(&s136(), 6).unwrap();
        assert_eq!(m.multiply(&id).unwrap().matrix(), m.matrix());
    }

    #[test]
    fn inverse_properties() {
        let id = LowerTriangular::identity(6);
        assert_eq!(id.inverse().unwrap(), id);

        let p = pascal(6);
        let inv = p.inverse().unwrap();
        for n in 0..6 {
            for k in 0..=n {
                let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
                assert_eq!(inv.get(n, k), Rat::from_integer(binomial(n, k) * sign));
            }
        }
        assert_eq!(p.matrix().mul(&inv).unwrap(), LowerTriangular::identity(6));

        let singular = LowerTriangular::from_int_rows(&[vec![1], vec![1, 0]]);
        assert_eq!(
            singular.inverse().unwrap_err(),
            RiordanError::SingularDiagonal { row: 1 }
        );
    }

    #[test]
    fn orthogonality_and_inverse_relations() {
        for set in [BlockSizeSet::All, BlockSizeSet::odd(), s136()] {
            let m = RiordanArray::stirling_matrix(&set, 8).unwrap();
            let t = m.inverse().unwrap();
            assert_eq!(
                m.matrix().mul(&t).unwrap(),
                LowerTriangular::identity(8),
                "{set}"
            );
            // Applying M_S then T_S returns the original vector.
            let v: Vec<Rat> = (0..8).map(|i| Rat::from_integer((3 * i as i64 - 5).into())).collect();
            assert_eq!(t.apply(&m.matrix().apply(&v)), v);
        }
    }

    #[test]
    fn row_sums_are_bell_numbers() {
        let m = RiordanArray::stirling_matrix(&s136(), 8).unwrap();
        let sums = m.matrix().row_sums();
        for (n, sum) in sums.iter().enumerate() {
            assert_eq!(*sum, Rat::from_integer(bell_number(n, &s136())));
        }
    }

    #[test]
    fn factorization_recomposes() {
        let sinh = BlockSizeSet::odd().egf(7);
        let arrays = [
            RiordanArray::build(&TruncatedEgf::one(7), &sinh, 8).unwrap(),
            RiordanArray::stirling_matrix(&BlockSizeSet::UpTo(2), 8).unwrap(),
            pascal(8),
        ];
        for a in arrays {
            let (left, right) = a.factorize().unwrap();
            let product = left.matrix().mul(&right).unwrap();
            assert_eq!(product, *a.matrix());
        }
        // Pascal's factorization is trivial: f = x gives [1] ⊕ I.
        let (left, right) = pascal(4).factorize().unwrap();
        assert_eq!(left.matrix(), pascal(4).matrix());
        assert_eq!(right, LowerTriangular::identity(4));
    }

    #[test]
    fn odd_product_prefix_matches_m_odd() {
        assert_eq!(odd_product_prefix(1), LowerTriangular::identity(1));

        let expected5 = LowerTriangular::from_int_rows(&[
            vec![1],
            vec![0, 1],
            vec![0, 0, 1],
            vec![0, 1, 0, 1],
            vec![0, 0, 4, 0, 1],
        ]);
        assert_eq!(odd_product_prefix(5), expected5);
        assert_eq!(odd_product_prefix(5).get(3, 1), Rat::one());

        for size in 2..=8 {
            let m_odd = RiordanArray::stirling_matrix(&BlockSizeSet::odd(), size).unwrap();
            assert_eq!(odd_product_prefix(size), *m_odd.matrix(), "size {size}");
        }
    }

    #[test]
    fn bell_det_matches_triangle_route() {
        assert_eq!(
            bell_det(6, &s136()).unwrap().to_string(),
            "x^6 + 20x^4 + 10x^2 + x"
        );
        assert_eq!(
            bell_det(0, &BlockSizeSet::All).unwrap(),
            bell_polynomial(0, &BlockSizeSet::All)
        );
        assert_eq!(
            bell_det(4, &BlockSizeSet::All).unwrap().to_string(),
            "x^4 + 6x^3 + 7x^2 + x"
        );
        for n in 0..=8 {
            for set in [BlockSizeSet::All, BlockSizeSet::odd(), s136()] {
                assert_eq!(bell_det(n, &set).unwrap(), bell_polynomial(n, &set));
            }
        }
        assert_eq!(
            bell_det(3, &BlockSizeSet::even()).unwrap_err(),
            RiordanError::OneNotInSet
        );
    }
}
