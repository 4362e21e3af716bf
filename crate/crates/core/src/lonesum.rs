//! Lonesum matrices: structure, ordered-partition encoding, restricted
//! counting formulas, bivariate generating functions, and lonesum
//! decomposability.
//!
//! A 0-1 matrix is lonesum when it is uniquely reconstructible from its row
//! and column sums, equivalently when it avoids both 2x2 permutation
//! matrices. Such a matrix is encoded by a pair of ordered partitions: the
//! nonzero rows grouped by type in ascending row-sum order, the nonzero
//! columns grouped by type in descending column-sum order, plus the all-zero
//! index sets. Entry `(r, c)` is 1 exactly when the column's block index does
//! not exceed the row's block index.
//!
//! Counting conventions: `S1` restricts row-type multiplicities (the `x`
//! variable, matrix height `n`), `S2` restricts column-type multiplicities
//! (the `y` variable, width `k`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{factorial, rat_to_int};
use crate::blockset::BlockSizeSet;
use crate::series::{TruncatedEgf, TruncatedEgf2};
use crate::stirling::StirlingTriangle;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LonesumError {
    #[error("matrix rows must be equal-length strings of 0s and 1s")]
    ParseMatrix,
    #[error("matrix is not lonesum")]
    NotLonesum,
    #[error("invalid ordered partition pair: {0}")]
    InvalidPartitionPair(&'static str),
}

/// A dense 0-1 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<bool>,
}

impl BinaryMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        BinaryMatrix {
            n_rows,
            n_cols,
            data: vec![false; n_rows * n_cols],
        }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        let data = rows.iter().flatten().map(|&b| b != 0).collect();
        BinaryMatrix {
            n_rows,
            n_cols,
            data,
        }
    }

    /// Decodes `bits` (row-major, bit `i` is entry `(i / k, i % k)`) into an
    /// `n x k` matrix; the canonical enumeration order of exhaustive scans.
    pub fn from_bits(n_rows: usize, n_cols: usize, bits: u64) -> Self {
        let mut m = Self::zeros(n_rows, n_cols);
        for i in 0..n_rows * n_cols {
            if bits >> i & 1 == 1 {
                m.data[i] = true;
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.n_cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r * self.n_cols + c] = value;
    }

    pub fn row_sum(&self, r: usize) -> usize {
        (0..self.n_cols).filter(|&c| self.get(r, c)).count()
    }

    pub fn col_sum(&self, c: usize) -> usize {
        (0..self.n_rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.n_rows).map(|r| self.row_sum(r)).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.n_cols).map(|c| self.col_sum(c)).collect()
    }

    pub fn row_pattern(&self, r: usize) -> Vec<bool> {
        (0..self.n_cols).map(|c| self.get(r, c)).collect()
    }

    pub fn col_pattern(&self, c: usize) -> Vec<bool> {
        (0..self.n_rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols, self.n_rows);
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// The submatrix induced by the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                write!(f, "{}", if self.get(r, c) { '1' } else { '0' })?;
            }
            if r + 1 < self.n_rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl FromStr for BinaryMatrix {
    type Err = LonesumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lines: Vec<&str> = s.lines().filter(|l| !l.trim().is_empty()).collect();
        let rows = lines
            .iter()
            .map(|line| {
                line.trim()
                    .chars()
                    .map(|ch| match ch {
                        '0' => Ok(0u8),
                        '1' => Ok(1u8),
                        _ => Err(LonesumError::ParseMatrix),
                    })
                    .collect::<Result<Vec<u8>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(LonesumError::ParseMatrix);
        }
        Ok(BinaryMatrix::from_rows(&rows))
    }
}

/// True iff no pair of rows and pair of columns induces `[[1,0],[0,1]]` or
/// `[[0,1],[1,0]]`; equivalently, the row supports form a chain.
pub fn is_lonesum(m: &BinaryMatrix) -> bool {
    for r1 in 0..m.n_rows() {
        for r2 in r1 + 1..m.n_rows() {
            let mut first_minus_second = false;
            let mut second_minus_first = false;
            for c in 0..m.n_cols() {
                match (m.get(r1, c), m.get(r2, c)) {
                    (true, false) => first_minus_second = true,
                    (false, true) => second_minus_first = true,
                    _ => {}
                }
                if first_minus_second && second_minus_first {
                    return false;
                }
            }
        }
    }
    true
}

/// The ordered-partition encoding of a lonesum matrix: row blocks in
/// ascending row-sum order, column blocks in descending column-sum order,
/// and the all-zero index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartitionPair {
    pub row_blocks: Vec<Vec<usize>>,
    pub col_blocks: Vec<Vec<usize>>,
    pub zero_rows: Vec<usize>,
    pub zero_cols: Vec<usize>,
}

impl OrderedPartitionPair {
    /// Builds a pair, sorting block contents and the zero sets; block counts
    /// must match and blocks must be nonempty.
    pub fn new(
        row_blocks: Vec<Vec<usize>>,
        col_blocks: Vec<Vec<usize>>,
        zero_rows: Vec<usize>,
        zero_cols: Vec<usize>,
    ) -> Result<Self, LonesumError> {
        if row_blocks.len() != col_blocks.len() {
            return Err(LonesumError::InvalidPartitionPair(
                "row and column partitions must have the same number of blocks",
            ));
        }
        if row_blocks.iter().chain(&col_blocks).any(Vec::is_empty) {
            return Err(LonesumError::InvalidPartitionPair("blocks must be nonempty"));
        }
        let mut pair = OrderedPartitionPair {
            row_blocks,
            col_blocks,
            zero_rows,
            zero_cols,
        };
        for block in pair.row_blocks.iter_mut().chain(&mut pair.col_blocks) {
            block.sort_unstable();
        }
        pair.zero_rows.sort_unstable();
        pair.zero_cols.sort_unstable();
        Ok(pair)
    }

    /// The common number of blocks `m`.
    pub fn num_blocks(&self) -> usize {
        self.row_blocks.len()
    }
}

fn check_partition(
    blocks: &[Vec<usize>],
    zeros: &[usize],
    bound: usize,
) -> Result<(), LonesumError> {
    let mut seen = vec![false; bound];
    for &i in blocks.iter().flatten().chain(zeros) {
        if i >= bound {
            return Err(LonesumError::InvalidPartitionPair("index out of range"));
        }
        if seen[i] {
            return Err(LonesumError::InvalidPartitionPair("duplicate index"));
        }
        seen[i] = true;
    }
    if seen.iter().all(|&s| s) {
        Ok(())
    } else {
        Err(LonesumError::InvalidPartitionPair(
            "blocks and zero set must cover all indices",
        ))
    }
}

/// Rebuilds the `n x k` lonesum matrix encoded by `pair`: entry `(r, c)` is 1
/// iff `block(c) <= block(r)`, so rows in later blocks accumulate the column
/// blocks of earlier indices.
pub fn reconstruct(
    pair: &OrderedPartitionPair,
    n_rows: usize,
    n_cols: usize,
) -> Result<BinaryMatrix, LonesumError> {
    check_partition(&pair.row_blocks, &pair.zero_rows, n_rows)?;
    check_partition(&pair.col_blocks, &pair.zero_cols, n_cols)?;
    let mut row_block = vec![usize::MAX; n_rows];
    for (b, block) in pair.row_blocks.iter().enumerate() {
        for &r in block {
            row_block[r] = b;
        }
    }
    let mut col_block = vec![usize::MAX; n_cols];
    for (b, block) in pair.col_blocks.iter().enumerate() {
        for &c in block {
            col_block[c] = b;
        }
    }
    let mut m = BinaryMatrix::zeros(n_rows, n_cols);
    for (r, &rb) in row_block.iter().enumerate() {
        if rb == usize::MAX {
            continue;
        }
        for (c, &cb) in col_block.iter().enumerate() {
            if cb != usize::MAX && cb <= rb {
                m.set(r, c, true);
            }
        }
    }
    Ok(m)
}

/// Recovers the ordered-partition pair of a lonesum matrix. Inverse of
/// [`reconstruct`]: rows are grouped by pattern and ordered by ascending sum,
/// columns by descending sum.
pub fn decode(m: &BinaryMatrix) -> Result<OrderedPartitionPair, LonesumError> {
    if !is_lonesum(m) {
        return Err(LonesumError::NotLonesum);
    }
    let group = |patterns: Vec<(usize, Vec<bool>, usize)>| -> (Vec<(usize, Vec<usize>)>, Vec<usize>) {
        // patterns: (index, pattern, sum); groups nonzero indices by pattern.
        let mut zeros = Vec::new();
        let mut groups: Vec<(Vec<bool>, usize, Vec<usize>)> = Vec::new();
        for (idx, pattern, sum) in patterns {
            if sum == 0 {
                zeros.push(idx);
                continue;
            }
            match groups.iter_mut().find(|(p, _, _)| *p == pattern) {
                Some((_, _, members)) => members.push(idx),
                None => groups.push((pattern, sum, vec![idx])),
            }
        }
        // Distinct nonzero patterns of a lonesum matrix form a chain, so
        // their sums are pairwise distinct.
        let mut sums: Vec<usize> = groups.iter().map(|(_, s, _)| *s).collect();
        sums.sort_unstable();
        assert!(
            sums.windows(2).all(|w| w[0] < w[1]),
            "distinct types of a lonesum matrix have distinct sums"
        );
        (
            groups.into_iter().map(|(_, s, members)| (s, members)).collect(),
            zeros,
        )
    };

    let (mut row_groups, zero_rows) = group(
        (0..m.n_rows())
            .map(|r| (r, m.row_pattern(r), m.row_sum(r)))
            .collect(),
    );
    let (mut col_groups, zero_cols) = group(
        (0..m.n_cols())
            .map(|c| (c, m.col_pattern(c), m.col_sum(c)))
            .collect(),
    );
    row_groups.sort_by_key(|(sum, _)| *sum);
    col_groups.sort_by_key(|(sum, _)| std::cmp::Reverse(*sum));
    assert_eq!(
        row_groups.len(),
        col_groups.len(),
        "a lonesum matrix has as many row types as column types"
    );
    OrderedPartitionPair::new(
        row_groups.into_iter().map(|(_, members)| members).collect(),
        col_groups.into_iter().map(|(_, members)| members).collect(),
        zero_rows,
        zero_cols,
    )
}

/// `|Lo_{S1,S2}(n,k)| = Σ_m m!·{n brace m}_{S1}·m!·{k brace m}_{S2}`:
/// lonesum matrices without all-zero rows or columns, row-type multiplicities
/// in `S1`, column-type multiplicities in `S2`.
pub fn count_restricted(n: usize, k: usize, s1: &BlockSizeSet, s2: &BlockSizeSet) -> BigInt {
    let rows = StirlingTriangle::build(s1, n);
    let cols = StirlingTriangle::build(s2, k);
    let mut total = BigInt::zero();
    for m in 0..=n.min(k) {
        let a = rows.get(n, m);
        if a.is_zero() {
            continue;
        }
        let b = cols.get(k, m);
        if b.is_zero() {
            continue;
        }
        let mf = factorial(m);
        total += &mf * a * &mf * b;
    }
    total
}

/// Which zero-row/column policy a generating-function count uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountVariant {
    /// `1/(1 - E_{S1}(x)·E_{S2}(y))`: no all-zero rows or columns.
    NoZeros,
    /// `(1+E_{S1}(x))(1+E_{S2}(y)) / (1 - E_{S1}(x)·E_{S2}(y))`: all-zero
    /// rows (columns) allowed when their count lies in `S1` (`S2`).
    WithZeros,
}

fn one_plus(e: &TruncatedEgf) -> TruncatedEgf {
    e.add(&TruncatedEgf::one(e.order()))
}

/// `n!k![x^n y^k]` of the chosen lonesum generating function.
pub fn count_egf(
    n: usize,
    k: usize,
    s1: &BlockSizeSet,
    s2: &BlockSizeSet,
    variant: CountVariant,
) -> BigInt {
    let e1 = s1.egf(n);
    let e2 = s2.egf(k);
    let core = TruncatedEgf2::outer_product(&e1, &e2)
        .quasi_inverse()
        .expect("E_S1(x)E_S2(y) has no constant term");
    let series = match variant {
        CountVariant::NoZeros => core,
        CountVariant::WithZeros => {
            TruncatedEgf2::outer_product(&one_plus(&e1), &one_plus(&e2)).mul(&core)
        }
    };
    rat_to_int(&series.egf_coeff2(n, k))
}

/// Classical lonesum count
/// `|Lo(n,k)| = Σ_m m!·{n+1 brace m+1}·m!·{k+1 brace m+1}` (all-zero rows
/// and columns allowed, no type restriction).
pub fn classical_lo(n: usize, k: usize) -> BigInt {
    let rows = StirlingTriangle::build(&BlockSizeSet::All, n + 1);
    let cols = StirlingTriangle::build(&BlockSizeSet::All, k + 1);
    let mut total = BigInt::zero();
    for m in 0..=n.min(k) {
        let mf = factorial(m);
        total += &mf * rows.get(n + 1, m + 1) * &mf * cols.get(k + 1, m + 1);
    }
    total
}

/// Connected-component analysis of a 0-1 matrix's nonzero part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    /// Number of connected components (the decomposition order when
    /// `decomposable` holds).
    pub order: usize,
    /// Per component: (row indices, column indices), each ascending.
    pub components: Vec<(Vec<usize>, Vec<usize>)>,
    /// True iff every component's induced submatrix is lonesum.
    pub decomposable: bool,
}

/// Splits the bipartite graph of nonzero rows/columns (edge where the entry
/// is 1) into connected components and checks each induced submatrix for the
/// lonesum property.
pub fn decompose(m: &BinaryMatrix) -> DecompositionReport {
    let nonzero_rows: Vec<usize> = (0..m.n_rows()).filter(|&r| m.row_sum(r) > 0).collect();
    let mut row_seen = vec![false; m.n_rows()];
    let mut col_seen = vec![false; m.n_cols()];
    let mut components = Vec::new();
    for &start in &nonzero_rows {
        if row_seen[start] {
            continue;
        }
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut stack = vec![(true, start)];
        row_seen[start] = true;
        while let Some((is_row, idx)) = stack.pop() {
            if is_row {
                rows.push(idx);
                for c in 0..m.n_cols() {
                    if m.get(idx, c) && !col_seen[c] {
                        col_seen[c] = true;
                        stack.push((false, c));
                    }
                }
            } else {
                cols.push(idx);
                for r in 0..m.n_rows() {
                    if m.get(r, idx) && !row_seen[r] {
                        row_seen[r] = true;
                        stack.push((true, r));
                    }
                }
            }
        }
        rows.sort_unstable();
        cols.sort_unstable();
        components.push((rows, cols));
    }
    components.sort();
    let decomposable = components
        .iter()
        .all(|(rows, cols)| is_lonesum(&m.submatrix(rows, cols)));
    DecompositionReport {
        order: components.len(),
        components,
        decomposable,
    }
}

/// `n!k![x^n y^k]` of the lonesum-decomposable generating function: with
/// `Q = 1/(1-E_{S1}(x)E_{S2}(y))`, order `r` uses
/// `(1+E_{S1})(1+E_{S2})·(Q-1)^r/r!` and the total (`r = None`) uses
/// `(1+E_{S1})(1+E_{S2})·exp(Q-1)`.
pub fn decomposable_count(
    n: usize,
    k: usize,
    s1: &BlockSizeSet,
    s2: &BlockSizeSet,
    r: Option<usize>,
) -> BigInt {
    let e1 = s1.egf(n);
    let e2 = s2.egf(k);
    let q = TruncatedEgf2::outer_product(&e1, &e2)
        .quasi_inverse()
        .expect("E_S1(x)E_S2(y) has no constant term");
    let q_minus_one = q.sub(&TruncatedEgf2::one(n, k));
    let nonzero_part = match r {
        Some(r) => q_minus_one
            .pow_int(r)
            .scale(&crate::arith::Rat::new(1.into(), factorial(r))),
        None => q_minus_one.exp().expect("Q - 1 has no constant term"),
    };
    let series =
        TruncatedEgf2::outer_product(&one_plus(&e1), &one_plus(&e2)).mul(&nonzero_part);
    rat_to_int(&series.egf_coeff2(n, k))
}
