//! The `verify` command: formula-vs-oracle suites. Each suite prints one
//! `ok` line with its check count, or stops at the first counterexample.

use num_bigint::BigInt;
use num_traits::One;

use rpt_core::arith::{rat, rat_int, Rat};
use rpt_core::blockset::BlockSizeSet;
use rpt_core::fubini::{congruence_check, fubini, fubini_dobinski, fubini_egf, poonen_check};
use rpt_core::lonesum::{
    count_egf, count_restricted, decode, decomposable_count, is_lonesum, reconstruct,
    BinaryMatrix, CountVariant,
};
use rpt_core::oracle::{
    count_ordered_partitions, count_partitions_by_k, scan_matrices, OracleError,
};
use rpt_core::polybern::{pb_egf, pb_iterated_integral, poly_bernoulli};
use rpt_core::riordan::{odd_product_prefix, LowerTriangular, RiordanArray};
use rpt_core::series::TruncatedEgf;
use rpt_core::stirling::{
    bell_number, bell_polynomial, dobinski, stirling_direct, stirling_egf, stirling_rec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Stirling,
    Riordan,
    Dobinski,
    Fubini,
    Lonesum,
    Polybernoulli,
    All,
}

/// A failed check: what was compared and the first counterexample.
pub struct Mismatch {
    pub suite: &'static str,
    pub detail: String,
}

pub enum VerifyError {
    Mismatch(Mismatch),
    Guardrail(OracleError),
}

impl From<OracleError> for VerifyError {
    fn from(e: OracleError) -> Self {
        VerifyError::Guardrail(e)
    }
}

type Checks = Result<u64, VerifyError>;

fn family() -> Vec<BlockSizeSet> {
    vec![
        BlockSizeSet::All,
        BlockSizeSet::UpTo(2),
        BlockSizeSet::UpTo(3),
        BlockSizeSet::AtLeast(2),
        BlockSizeSet::even(),
        BlockSizeSet::odd(),
        BlockSizeSet::finite(vec![1, 3, 6]).unwrap(),
    ]
}

fn fail(suite: &'static str, detail: String) -> VerifyError {
    VerifyError::Mismatch(Mismatch { suite, detail })
}

pub fn run(suite: Suite, max_cells: usize, oracle_cap: usize) -> Result<(), VerifyError> {
    let suites: Vec<(&str, Box<dyn Fn() -> Checks>)> = vec![
        (
            "stirling",
            Box::new(|| stirling_suite()) as Box<dyn Fn() -> Checks>,
        ),
        ("riordan", Box::new(|| riordan_suite())),
        ("dobinski", Box::new(|| dobinski_suite())),
        ("fubini", Box::new(|| fubini_suite())),
        (
            "lonesum",
            Box::new(move || lonesum_suite(max_cells, oracle_cap)),
        ),
        ("polybernoulli", Box::new(|| polybernoulli_suite())),
    ];
    for (name, runner) in suites {
        let selected = matches!(suite, Suite::All)
            || matches!(
                (suite, name),
                (Suite::Stirling, "stirling")
                    | (Suite::Riordan, "riordan")
                    | (Suite::Dobinski, "dobinski")
                    | (Suite::Fubini, "fubini")
                    | (Suite::Lonesum, "lonesum")
                    | (Suite::Polybernoulli, "polybernoulli")
            );
        if !selected {
            continue;
        }
        let checks = runner()?;
        println!("ok {name}: {checks} checks");
    }
    Ok(())
}

fn stirling_suite() -> Checks {
    let mut checks = 0;
    for set in family() {
        for n in 0..=10usize {
            for k in 0..=n {
                let direct = stirling_direct(n, k, &set);
                let egf = stirling_egf(n, k, &set);
                let rec = stirling_rec(n, k, &set);
                if direct != egf || direct != rec {
                    return Err(fail(
                        "stirling",
                        format!(
                            "n={n} k={k} S={set}: direct={direct} egf={egf} recurrence={rec}"
                        ),
                    ));
                }
                checks += 1;
            }
        }
        for n in 0..=8usize {
            let by_k = count_partitions_by_k(n, &set)?;
            for (k, &count) in by_k.iter().enumerate() {
                let formula = stirling_rec(n, k, &set);
                if formula != BigInt::from(count) {
                    return Err(fail(
                        "stirling",
                        format!("oracle n={n} k={k} S={set}: formula={formula} oracle={count}"),
                    ));
                }
                checks += 1;
            }
            let bell = bell_number(n, &set);
            let oracle: u64 = by_k.iter().sum();
            if bell != BigInt::from(oracle) {
                return Err(fail(
                    "stirling",
                    format!("bell n={n} S={set}: formula={bell} oracle={oracle}"),
                ));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn riordan_suite() -> Checks {
    let size = 8usize;
    let order = size - 1;
    let mut checks = 0;
    let mut arrays = vec![
        RiordanArray::build(&TruncatedEgf::exp_x(order), &TruncatedEgf::x(order), size)
            .expect("pascal"),
    ];
    for set in family().iter().filter(|s| s.contains(1)) {
        arrays.push(RiordanArray::stirling_matrix(set, size).expect("1 in S"));
    }
    for a in &arrays {
        for b in &arrays {
            let group = a.multiply(b).expect("same size");
            let matrix = a.matrix().mul(b.matrix()).expect("same size");
            if *group.matrix() != matrix {
                return Err(fail("riordan", "group law vs matrix product".to_string()));
            }
            checks += 1;
        }
        let inv = a.matrix().inverse().expect("unit diagonal");
        if a.matrix().mul(&inv).expect("same size") != LowerTriangular::identity(size) {
            return Err(fail("riordan", "orthogonality M·T = I".to_string()));
        }
        checks += 1;
        let (left, right) = a.factorize().expect("valid array");
        if left.matrix().mul(&right).expect("same size") != *a.matrix() {
            return Err(fail("riordan", "factorization re-multiplication".to_string()));
        }
        checks += 1;
    }
    let m_odd = RiordanArray::stirling_matrix(&BlockSizeSet::odd(), size).expect("1 is odd");
    if odd_product_prefix(size) != *m_odd.matrix() {
        return Err(fail("riordan", "odd product prefix vs M_Odd".to_string()));
    }
    checks += 1;
    Ok(checks)
}

/// Exact rational bracket around `e^x` (Taylor sum plus geometric remainder).
fn e_bracket(x: &Rat) -> (Rat, Rat) {
    let terms = 60usize;
    let mut lo = Rat::from_integer(0.into());
    let mut x_pow = Rat::one();
    let mut fact = BigInt::one();
    for j in 0..=terms {
        if j > 0 {
            x_pow *= x;
            fact *= j;
        }
        lo += &x_pow / Rat::from_integer(fact.clone());
    }
    let next = &x_pow * x / Rat::from_integer(&fact * (terms + 1));
    let ratio = x / Rat::from_integer(BigInt::from(terms + 2));
    assert!(ratio < Rat::one());
    (lo.clone(), lo + next / (Rat::one() - ratio))
}

fn dobinski_suite() -> Checks {
    let tol = rat(1, 100_000_000);
    let x = rat(1, 1);
    let (e_lo, e_hi) = e_bracket(&x);
    let mut checks = 0;
    for set in family() {
        for n in 0..=6usize {
            let bracket = dobinski(n, &set, &x, &tol).expect("valid inputs");
            let target = bell_polynomial(n, &set).eval(&x);
            if bracket.tail_bound > tol
                || bracket.partial_sum > &e_hi * &target
                || bracket.upper() < &e_lo * &target
            {
                return Err(fail(
                    "dobinski",
                    format!("bell series n={n} S={set}: bracket misses e·B"),
                ));
            }
            checks += 1;

            let bracket = fubini_dobinski(n, &set, &tol).expect("valid tolerance");
            let target = Rat::from_integer(fubini(n, &set));
            if bracket.tail_bound > tol || !bracket.contains(&target) {
                return Err(fail(
                    "dobinski",
                    format!("fubini series n={n} S={set}: bracket misses F"),
                ));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn fubini_suite() -> Checks {
    let mut checks = 0;
    for set in family() {
        for n in 0..=10usize {
            let a = fubini(n, &set);
            let b = fubini_egf(n, &set);
            if a != b {
                return Err(fail(
                    "fubini",
                    format!("n={n} S={set}: definition={a} egf={b}"),
                ));
            }
            checks += 1;
        }
        for n in 0..=8usize {
            let oracle = count_ordered_partitions(n, &set)?;
            if fubini(n, &set) != BigInt::from(oracle) {
                return Err(fail("fubini", format!("oracle n={n} S={set}")));
            }
            checks += 1;
        }
        for n in 0..=6usize {
            for q in 1..=5u32 {
                let identity = poonen_check(n, q, &set);
                if !identity.holds() {
                    return Err(fail(
                        "fubini",
                        format!(
                            "poonen n={n} q={q} S={set}: {} != {}",
                            identity.lhs, identity.rhs
                        ),
                    ));
                }
                if !congruence_check(n, q, &set) {
                    return Err(fail("fubini", format!("congruence n={n} q={q} S={set}")));
                }
                checks += 2;
            }
        }
    }
    Ok(checks)
}

fn lonesum_suite(max_cells: usize, oracle_cap: usize) -> Checks {
    let fam = family();
    let mut checks = 0;
    for s1 in &fam {
        for s2 in &fam {
            for n in 0..=5usize {
                for k in 0..=5usize {
                    let formula = count_restricted(n, k, s1, s2);
                    let egf = count_egf(n, k, s1, s2, CountVariant::NoZeros);
                    if formula != egf {
                        return Err(fail(
                            "lonesum",
                            format!(
                                "n={n} k={k} S1={s1} S2={s2}: formula={formula} egf={egf}"
                            ),
                        ));
                    }
                    checks += 1;
                }
            }
        }
    }

    let all = BlockSizeSet::All;
    let mut shapes: Vec<(usize, usize)> = Vec::new();
    for n in 0..=max_cells {
        for k in 0..=max_cells {
            if n * k <= max_cells {
                shapes.push((n, k));
            }
        }
    }
    for &(n, k) in &shapes {
        checks += scan_check(n, k, &all, &all, oracle_cap)?;
    }
    for s1 in &fam {
        for s2 in &fam {
            for n in 0..=3usize {
                for k in 0..=3usize {
                    checks += scan_check(n, k, s1, s2, oracle_cap)?;
                }
            }
        }
    }

    for n in 0..=3usize {
        for k in 0..=3usize {
            for bits in 0..1u64 << (n * k) {
                let m = BinaryMatrix::from_bits(n, k, bits);
                if is_lonesum(&m) {
                    let pair = decode(&m).expect("lonesum decodes");
                    if reconstruct(&pair, n, k).expect("valid pair") != m {
                        return Err(fail(
                            "lonesum",
                            format!("round trip failed on\n{m}"),
                        ));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(checks)
}

fn scan_check(
    n: usize,
    k: usize,
    s1: &BlockSizeSet,
    s2: &BlockSizeSet,
    oracle_cap: usize,
) -> Checks {
    let report = scan_matrices(n, k, s1, s2, oracle_cap)?;
    let with_zeros = count_egf(n, k, s1, s2, CountVariant::WithZeros);
    if with_zeros != BigInt::from(report.restricted_with_zeros) {
        return Err(fail(
            "lonesum",
            format!(
                "with-zeros n={n} k={k} S1={s1} S2={s2}: egf={with_zeros} scan={}",
                report.restricted_with_zeros
            ),
        ));
    }
    let mut checks = 1;
    for (r, &count) in report.decomposable_by_order.iter().enumerate() {
        let formula = decomposable_count(n, k, s1, s2, Some(r));
        if formula != BigInt::from(count) {
            return Err(fail(
                "lonesum",
                format!(
                    "decomposable r={r} n={n} k={k} S1={s1} S2={s2}: egf={formula} scan={count}"
                ),
            ));
        }
        checks += 1;
    }
    let total = decomposable_count(n, k, s1, s2, None);
    if total != BigInt::from(report.decomposable_total()) {
        return Err(fail(
            "lonesum",
            format!("decomposable total n={n} k={k} S1={s1} S2={s2}"),
        ));
    }
    Ok(checks + 1)
}

fn polybernoulli_suite() -> Checks {
    let mut checks = 0;
    for set in family() {
        for n in 0..=10usize {
            for k in -3..=3i64 {
                let sum = poly_bernoulli(n, k, &set);
                let egf = pb_egf(n, k, &set);
                if sum != egf {
                    return Err(fail(
                        "polybernoulli",
                        format!("n={n} k={k} S={set}: sum={sum} egf={egf}"),
                    ));
                }
                checks += 1;
            }
            for k in 1..=3i64 {
                let integral = pb_iterated_integral(n, k, &set).expect("k >= 1");
                if integral != poly_bernoulli(n, k, &set) {
                    return Err(fail(
                        "polybernoulli",
                        format!("integral n={n} k={k} S={set}"),
                    ));
                }
                checks += 1;
            }
        }
    }
    for n in 0..=6usize {
        for k in 0..=6usize {
            let pb = poly_bernoulli(n, -(k as i64), &BlockSizeSet::All);
            let lo = rpt_core::lonesum::classical_lo(n, k);
            if pb != Rat::from_integer(lo.clone()) {
                return Err(fail(
                    "polybernoulli",
                    format!("brewbaker n={n} k={k}: B={pb} Lo={lo}"),
                ));
            }
            checks += 1;
        }
    }
    // Bernoulli numbers via the defining recurrence, b_1 = -1/2.
    let mut bernoulli = vec![Rat::one()];
    for n in 1..=10usize {
        let mut acc = Rat::from_integer(0.into());
        for (j, b) in bernoulli.iter().enumerate() {
            acc += Rat::from_integer(rpt_core::arith::binomial(n + 1, j)) * b;
        }
        bernoulli.push(-acc / rat_int((n + 1) as i64));
    }
    for (n, b) in bernoulli.iter().enumerate() {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        if poly_bernoulli(n, 1, &BlockSizeSet::All) != b * rat_int(sign) {
            return Err(fail("polybernoulli", format!("bernoulli n={n}")));
        }
        checks += 1;
    }
    Ok(checks)
}
