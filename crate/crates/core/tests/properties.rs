//! Randomized invariants: ring laws of the series engine, inverse pairs,
//! Riordan group consistency, and lonesum encode/decode round trips.

use num_traits::Zero;
use proptest::prelude::*;

use rpt_core::arith::Rat;
use rpt_core::blockset::BlockSizeSet;
use rpt_core::lonesum::{decode, is_lonesum, reconstruct, OrderedPartitionPair};
use rpt_core::riordan::RiordanArray;
use rpt_core::series::{TruncatedEgf, TruncatedEgf2};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

/// A series of the given order with small rational coefficients.
fn series(order: usize) -> impl Strategy<Value = TruncatedEgf> {
    prop::collection::vec(small_rat(), order + 1).prop_map(TruncatedEgf::from_coeffs)
}

/// Same, but with a zero constant term.
fn series_valuation1(order: usize) -> impl Strategy<Value = TruncatedEgf> {
    series(order).prop_map(|s| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = Rat::zero();
        TruncatedEgf::from_coeffs(coeffs)
    })
}

/// A bivariate series on a 3x3 grid.
fn series2() -> impl Strategy<Value = TruncatedEgf2> {
    prop::collection::vec(prop::collection::vec(small_rat(), 4), 4).prop_map(|rows| {
        let mut acc = TruncatedEgf2::zero(3, 3);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let mut xi = vec![Rat::zero(); 4];
                xi[i] = v.clone();
                let mut yj = vec![Rat::zero(); 4];
                yj[j] = Rat::new(1.into(), 1.into());
                acc = acc.add(&TruncatedEgf2::outer_product(
                    &TruncatedEgf::from_coeffs(xi),
                    &TruncatedEgf::from_coeffs(yj),
                ));
            }
        }
        acc
    })
}

/// Splits `0..count` into `blocks` nonempty groups plus a leftover set,
/// deterministically from `seed`. Requires `count >= blocks`.
fn deal(count: usize, blocks: usize, seed: u64) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut state = seed | 1;
    let next = move |state: &mut u64| {
        *state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (*state >> 33) as usize
    };
    let mut idx: Vec<usize> = (0..count).collect();
    for i in (1..count).rev() {
        let j = next(&mut state) % (i + 1);
        idx.swap(i, j);
    }
    let mut out = vec![Vec::new(); blocks];
    let mut zeros = Vec::new();
    for (pos, &i) in idx.iter().enumerate() {
        if pos < blocks {
            out[pos].push(i);
        } else {
            let slot = next(&mut state) % (blocks + 1);
            if slot < blocks {
                out[slot].push(i);
            } else {
                zeros.push(i);
            }
        }
    }
    (out, zeros)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mul_is_commutative(a in series(6), b in series(6)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mul_is_associative(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_distributes_over_add(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn exp_and_log1p_are_mutual_inverses(a in series_valuation1(7)) {
        let e = a.exp().unwrap();
        let back = e.sub(&TruncatedEgf::one(7)).log1p().unwrap();
        prop_assert_eq!(back, a.clone());
        let l = a.log1p().unwrap();
        prop_assert_eq!(l.exp().unwrap(), a.add(&TruncatedEgf::one(7)));
    }

    #[test]
    fn quasi_inverse_inverts_one_minus_w(w in series_valuation1(7)) {
        let q = w.quasi_inverse().unwrap();
        let one_minus_w = TruncatedEgf::one(7).sub(&w);
        prop_assert_eq!(q.mul(&one_minus_w), TruncatedEgf::one(7));
    }

    #[test]
    fn derivative_undoes_integrate(a in series(6)) {
        // Exact for series of degree < order: zero out the top coefficient.
        let mut coeffs = a.coeffs().to_vec();
        let order = coeffs.len() - 1;
        coeffs[order] = Rat::zero();
        let a = TruncatedEgf::from_coeffs(coeffs);
        prop_assert_eq!(a.integrate().derivative(), a);
    }

    #[test]
    fn division_recovers_factors(a in series(6), b in series(6)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let product = a.mul(&b);
        let b_val = b.valuation().unwrap();
        let quotient = product.div_exact(&b).unwrap();
        prop_assert_eq!(quotient, a.truncate(6 - b_val));
    }

    #[test]
    fn bivariate_mul_commutes(a in series2(), b in series2()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn riordan_group_product_matches_matrix_product(
        g1 in small_rat(), tail_a in series(5), g2 in small_rat(), tail_b in series(5),
    ) {
        prop_assume!(!g1.is_zero() && !g2.is_zero());
        let build = |g0: &Rat, tail: &TruncatedEgf| {
            let mut g = tail.coeffs().to_vec();
            g[0] = g0.clone();
            let mut f = tail.coeffs().to_vec();
            f[0] = Rat::zero();
            f[1] = Rat::new(1.into(), 1.into());
            RiordanArray::build(
                &TruncatedEgf::from_coeffs(g),
                &TruncatedEgf::from_coeffs(f),
                6,
            )
            .unwrap()
        };
        let a = build(&g1, &tail_a);
        let b = build(&g2, &tail_b);
        let group = a.multiply(&b).unwrap();
        let matrix = a.matrix().mul(b.matrix()).unwrap();
        prop_assert_eq!(group.matrix().clone(), matrix);

        // Factorization re-multiplies to the original array.
        let (left, right) = a.factorize().unwrap();
        prop_assert_eq!(left.matrix().mul(&right).unwrap(), a.matrix().clone());
    }

    #[test]
    fn stirling_inverse_relations(v in prop::collection::vec(-20i64..=20, 7)) {
        let set = BlockSizeSet::odd();
        let m = RiordanArray::stirling_matrix(&set, 7).unwrap();
        let t = m.inverse().unwrap();
        let vec: Vec<Rat> = v.iter().map(|&x| Rat::new(x.into(), 1.into())).collect();
        let round = t.apply(&m.matrix().apply(&vec));
        prop_assert_eq!(round, vec);
    }

    #[test]
    fn lonesum_round_trip_from_random_pairs(
        m in 0usize..=3,
        row_extra in 0usize..=3,
        col_extra in 0usize..=3,
        seed in any::<u64>(),
    ) {
        let n = m + row_extra;
        let k = m + col_extra;
        let (row_blocks, zero_rows) = deal(n, m, seed);
        let (col_blocks, zero_cols) = deal(k, m, seed.rotate_left(17));
        let pair =
            OrderedPartitionPair::new(row_blocks, col_blocks, zero_rows, zero_cols).unwrap();
        let matrix = reconstruct(&pair, n, k).unwrap();
        prop_assert!(is_lonesum(&matrix));
        prop_assert_eq!(reconstruct(&decode(&matrix).unwrap(), n, k).unwrap(), matrix);
    }
}
