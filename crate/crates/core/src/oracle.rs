//! Brute-force enumeration oracles: ground truth for every closed form in
//! the crate.
//!
//! Set partitions are enumerated as restricted growth strings in
//! lexicographic order; 0-1 matrices are enumerated in row-major bit order.
//! Guardrails are hard errors rather than silent truncation, because an
//! oracle must never approximate.

use thiserror::Error;

use crate::arith::factorial;
use crate::blockset::BlockSizeSet;
use crate::lonesum::{decompose, is_lonesum, BinaryMatrix};

/// Default cell budget for matrix scans; raisable via
/// [`scan_matrices`]'s `max_cells`, hard-capped at [`SCAN_HARD_CAP`].
pub const SCAN_DEFAULT_CELLS: usize = 20;
/// Absolute limit on `n*k` for exhaustive matrix scans.
pub const SCAN_HARD_CAP: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle guardrail exceeded: {what} (limit {limit})")]
    Guardrail { what: &'static str, limit: u64 },
}

/// Iterator over all set partitions of `[n]` as restricted growth strings,
/// in lexicographic order. `a[i]` is the block index of element `i+1`, with
/// `a[0] = 0` and `a[i] <= 1 + max(a[..i])`.
#[derive(Debug, Clone)]
pub struct PartitionIterator {
    state: Option<Vec<usize>>,
    first: bool,
}

impl PartitionIterator {
    pub fn new(n: usize) -> Self {
        PartitionIterator {
            state: Some(vec![0; n]),
            first: true,
        }
    }
}

impl Iterator for PartitionIterator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let state = self.state.as_mut()?;
        if self.first {
            self.first = false;
            return Some(state.clone());
        }
        // Lexicographic successor: bump the rightmost position that can
        // still grow, zero the suffix.
        let n = state.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.state = None;
                return None;
            }
            i -= 1;
            let cap = 1 + state[..i].iter().max().copied().unwrap_or(0);
            if state[i] < cap {
                state[i] += 1;
                state[i + 1..n].fill(0);
                return Some(state.clone());
            }
        }
    }
}

/// Block sizes of a restricted growth string.
pub fn block_sizes(rgs: &[usize]) -> Vec<usize> {
    let k = rgs.iter().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; k];
    for &b in rgs {
        sizes[b] += 1;
    }
    sizes
}

const PARTITION_LIMIT: usize = 10;
const ORDERED_PARTITION_LIMIT: usize = 8;
const FUNCTION_SPACE_LIMIT: u64 = 10_000_000;

/// Counts partitions of `[n]` whose every block size lies in `set`, split by
/// block count: entry `k` of the result is `{n brace k}_S`.
pub fn count_partitions_by_k(
    n: usize,
    set: &BlockSizeSet,
) -> Result<Vec<u64>, OracleError> {
    if n > PARTITION_LIMIT {
        return Err(OracleError::Guardrail {
            what: "set-partition enumeration",
            limit: PARTITION_LIMIT as u64,
        });
    }
    let mut by_k = vec![0u64; n + 1];
    for rgs in PartitionIterator::new(n) {
        let sizes = block_sizes(&rgs);
        if sizes.iter().all(|&s| set.contains(s as u32)) {
            by_k[sizes.len()] += 1;
        }
    }
    Ok(by_k)
}

/// Total count of `S`-admissible partitions of `[n]` (the Bell number
/// `B_{n,S}`).
pub fn count_partitions(n: usize, set: &BlockSizeSet) -> Result<u64, OracleError> {
    Ok(count_partitions_by_k(n, set)?.iter().sum())
}

/// Counts ordered partitions of `[n]` with block sizes in `set`:
/// `Σ_k k!·(partitions with k blocks)`.
pub fn count_ordered_partitions(n: usize, set: &BlockSizeSet) -> Result<u64, OracleError> {
    if n > ORDERED_PARTITION_LIMIT {
        return Err(OracleError::Guardrail {
            what: "ordered-partition enumeration",
            limit: ORDERED_PARTITION_LIMIT as u64,
        });
    }
    let by_k = count_partitions_by_k(n, set)?;
    Ok(by_k
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let kf: u64 = factorial(k).try_into().expect("k! fits in u64 at oracle scale");
            kf * c
        })
        .sum())
}

/// Counts functions `g: [n] -> [t]` whose every nonempty fiber has size in
/// `set`, by direct enumeration of all `t^n` functions.
pub fn count_functions(n: usize, t: usize, set: &BlockSizeSet) -> Result<u64, OracleError> {
    let space = (t as u64).checked_pow(n as u32);
    match space {
        Some(s) if s <= FUNCTION_SPACE_LIMIT => {}
        _ => {
            return Err(OracleError::Guardrail {
                what: "function enumeration",
                limit: FUNCTION_SPACE_LIMIT,
            })
        }
    }
    if n == 0 {
        return Ok(1);
    }
    if t == 0 {
        return Ok(0);
    }
    let mut g = vec![0usize; n];
    let mut count = 0u64;
    loop {
        let mut fibers = vec![0usize; t];
        for &v in &g {
            fibers[v] += 1;
        }
        if fibers.iter().all(|&c| c == 0 || set.contains(c as u32)) {
            count += 1;
        }
        // Mixed-radix increment.
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            g[i] += 1;
            if g[i] < t {
                break;
            }
            g[i] = 0;
            i += 1;
        }
    }
}

/// Tallies from one pass over all `2^{nk}` matrices of a given shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    /// Lonesum matrices, no type restriction.
    pub lonesum: u64,
    /// Lonesum, no all-zero rows/columns, row-type multiplicities in `S1`
    /// and column-type multiplicities in `S2`.
    pub restricted_no_zeros: u64,
    /// Lonesum, type multiplicities restricted as above, all-zero row count
    /// in `S1 ∪ {0}` and all-zero column count in `S2 ∪ {0}`.
    pub restricted_with_zeros: u64,
    /// Lonesum-decomposable matrices under the same type restriction, by
    /// decomposition order; entry `r` for `r = 0..=min(n,k)`.
    pub decomposable_by_order: Vec<u64>,
}

impl ScanReport {
    pub fn decomposable_total(&self) -> u64 {
        self.decomposable_by_order.iter().sum()
    }
}

/// Exhaustively scans every `n x k` 0-1 matrix. `max_cells` bounds `n*k` and
/// is itself capped at [`SCAN_HARD_CAP`].
pub fn scan_matrices(
    n: usize,
    k: usize,
    s1: &BlockSizeSet,
    s2: &BlockSizeSet,
    max_cells: usize,
) -> Result<ScanReport, OracleError> {
    let limit = max_cells.min(SCAN_HARD_CAP);
    if n * k > limit {
        return Err(OracleError::Guardrail {
            what: "matrix scan",
            limit: limit as u64,
        });
    }
    let mut report = ScanReport {
        lonesum: 0,
        restricted_no_zeros: 0,
        restricted_with_zeros: 0,
        decomposable_by_order: vec![0; n.min(k) + 1],
    };
    for bits in 0..1u64 << (n * k) {
        let m = BinaryMatrix::from_bits(n, k, bits);
        let lonesum = is_lonesum(&m);
        if lonesum {
            report.lonesum += 1;
        }
        let (types_ok, zeros_ok) = type_restrictions(&m, s1, s2);
        if lonesum && types_ok {
            if zeros_ok {
                report.restricted_with_zeros += 1;
            }
            if m.row_sums().iter().all(|&s| s > 0) && m.col_sums().iter().all(|&s| s > 0) {
                report.restricted_no_zeros += 1;
            }
        }
        if types_ok && zeros_ok {
            let dec = decompose(&m);
            if dec.decomposable {
                report.decomposable_by_order[dec.order] += 1;
            }
        }
    }
    Ok(report)
}

/// (nonzero row/column type multiplicities all in `S1`/`S2`,
///  zero-row count in `S1 ∪ {0}` and zero-column count in `S2 ∪ {0}`).
fn type_restrictions(m: &BinaryMatrix, s1: &BlockSizeSet, s2: &BlockSizeSet) -> (bool, bool) {
    let group = |patterns: Vec<Vec<bool>>| -> (Vec<usize>, usize) {
        let mut zero = 0usize;
        let mut groups: Vec<(Vec<bool>, usize)> = Vec::new();
        for p in patterns {
            if p.iter().all(|&b| !b) {
                zero += 1;
                continue;
            }
            match groups.iter_mut().find(|(q, _)| *q == p) {
                Some((_, c)) => *c += 1,
                None => groups.push((p, 1)),
            }
        }
        (groups.into_iter().map(|(_, c)| c).collect(), zero)
    };
    let (row_types, zero_rows) = group((0..m.n_rows()).map(|r| m.row_pattern(r)).collect());
    let (col_types, zero_cols) = group((0..m.n_cols()).map(|c| m.col_pattern(c)).collect());
    let types_ok = row_types.iter().all(|&c| s1.contains(c as u32))
        && col_types.iter().all(|&c| s2.contains(c as u32));
    let zeros_ok = (zero_rows == 0 || s1.contains(zero_rows as u32))
        && (zero_cols == 0 || s2.contains(zero_cols as u32));
    (types_ok, zeros_ok)
}

/// Kamano's obstruction: true iff the matrix contains a submatrix obtainable
/// from `U = [[1,1,0],[1,0,1]]` or its transpose by row/column permutations.
/// Independent of [`decompose`]; a pair of rows realizes the pattern exactly
/// when its columns exhibit all three of (1,1), (1,0), (0,1).
pub fn contains_u_pattern(m: &BinaryMatrix) -> bool {
    let witness = |m: &BinaryMatrix| -> bool {
        for r1 in 0..m.n_rows() {
            for r2 in r1 + 1..m.n_rows() {
                let (mut both, mut only1, mut only2) = (false, false, false);
                for c in 0..m.n_cols() {
                    match (m.get(r1, c), m.get(r2, c)) {
                        (true, true) => both = true,
                        (true, false) => only1 = true,
                        (false, true) => only2 = true,
                        (false, false) => {}
                    }
                }
                if both && only1 && only2 {
                    return true;
                }
            }
        }
        false
    };
    witness(m) || witness(&m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_iterator_counts_bell_numbers() {
        let bell = [1u64, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(PartitionIterator::new(n).count() as u64, b);
        }
    }

    #[test]
    fn partition_iterator_is_duplicate_free() {
        let mut seen = std::collections::HashSet::new();
        for rgs in PartitionIterator::new(6) {
            assert!(seen.insert(rgs));
        }
        assert_eq!(seen.len(), 203);
    }

    #[test]
    fn restricted_partition_counts() {
        let s136 = BlockSizeSet::finite(vec![1, 3, 6]).unwrap();
        let by_k = count_partitions_by_k(4, &s136).unwrap();
        assert_eq!(by_k, vec![0, 0, 4, 0, 1]);

        assert_eq!(count_partitions(0, &BlockSizeSet::even()).unwrap(), 1);

        let by_k = count_partitions_by_k(6, &BlockSizeSet::odd()).unwrap();
        assert_eq!(by_k, vec![0, 0, 16, 0, 20, 0, 1]);
    }

    #[test]
    fn ordered_partition_counts() {
        assert_eq!(count_ordered_partitions(3, &BlockSizeSet::All).unwrap(), 13);
        assert_eq!(count_ordered_partitions(0, &BlockSizeSet::even()).unwrap(), 1);
        assert_eq!(count_ordered_partitions(3, &BlockSizeSet::odd()).unwrap(), 7);
        assert_eq!(count_ordered_partitions(4, &BlockSizeSet::even()).unwrap(), 7);
    }

    #[test]
    fn function_counts() {
        let s136 = BlockSizeSet::finite(vec![1, 3, 6]).unwrap();
        assert_eq!(count_functions(3, 2, &s136).unwrap(), 2);
        assert_eq!(count_functions(0, 5, &s136).unwrap(), 1);
        assert_eq!(count_functions(2, 3, &BlockSizeSet::All).unwrap(), 9);
        assert_eq!(count_functions(3, 0, &BlockSizeSet::All).unwrap(), 0);
    }

    #[test]
    fn guardrails_are_hard_errors() {
        assert!(matches!(
            count_partitions(11, &BlockSizeSet::All),
            Err(OracleError::Guardrail { .. })
        ));
        assert!(matches!(
            count_ordered_partitions(9, &BlockSizeSet::All),
            Err(OracleError::Guardrail { .. })
        ));
        assert!(matches!(
            count_functions(30, 10, &BlockSizeSet::All),
            Err(OracleError::Guardrail { .. })
        ));
        assert!(matches!(
            scan_matrices(5, 5, &BlockSizeSet::All, &BlockSizeSet::All, SCAN_DEFAULT_CELLS),
            Err(OracleError::Guardrail { .. })
        ));
        // The hard cap binds even when the caller asks for more.
        assert!(matches!(
            scan_matrices(5, 5, &BlockSizeSet::All, &BlockSizeSet::All, 100),
            Err(OracleError::Guardrail { limit: 24, .. })
        ));
    }

    #[test]
    fn matrix_scans() {
        let all = BlockSizeSet::All;
        let report = scan_matrices(2, 2, &all, &all, SCAN_DEFAULT_CELLS).unwrap();
        assert_eq!(report.lonesum, 14);
        assert_eq!(report.restricted_no_zeros, 5);
        assert_eq!(report.restricted_with_zeros, 14);
        assert_eq!(report.decomposable_by_order, vec![1, 13, 2]);
        assert_eq!(report.decomposable_total(), 16);

        let report = scan_matrices(1, 1, &all, &all, SCAN_DEFAULT_CELLS).unwrap();
        assert_eq!(report.lonesum, 2);

        let report = scan_matrices(2, 3, &all, &all, SCAN_DEFAULT_CELLS).unwrap();
        assert_eq!(report.lonesum, 46);
        assert_eq!(report.restricted_no_zeros, 13);

        // Frozen from an independent enumeration.
        let report =
            scan_matrices(3, 2, &BlockSizeSet::odd(), &BlockSizeSet::UpTo(2), SCAN_DEFAULT_CELLS)
                .unwrap();
        assert_eq!(report.restricted_no_zeros, 1);
        assert_eq!(report.restricted_with_zeros, 16);
        assert_eq!(report.decomposable_by_order, vec![1, 15, 6]);
    }

    #[test]
    fn u_pattern_oracle() {
        let u: BinaryMatrix = "110\n101".parse().unwrap();
        assert!(contains_u_pattern(&u));
        assert!(contains_u_pattern(&u.transpose()));
        let ones: BinaryMatrix = "11\n11".parse().unwrap();
        assert!(!contains_u_pattern(&ones));

        // Components-based decomposability agrees with U-avoidance.
        for (n, k) in [(2usize, 3usize), (3, 3), (3, 2)] {
            for bits in 0..1u64 << (n * k) {
                let m = BinaryMatrix::from_bits(n, k, bits);
                assert_eq!(
                    decompose(&m).decomposable,
                    !contains_u_pattern(&m),
                    "{m}"
                );
            }
        }
    }
}
