//! Block-size restriction sets.
//!
//! A [`BlockSizeSet`] describes which block cardinalities are admissible in a
//! set partition: all sizes, sizes bounded above or below, sizes in a residue
//! class, an explicit finite list, or a union of such sets. Membership is
//! decidable for every positive integer and the elements can be enumerated in
//! ascending order up to any bound, which is all the generating-function
//! machinery needs.
//!
//! Sets have a canonical text form shared with the CLI:
//! `all`, `<=m`, `>=m`, `even`, `odd`, `{a,b,c}`, `mod(m;r1,r2;min)`, and
//! `|`-joined unions thereof.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use thiserror::Error;

use crate::arith::factorial;
use crate::series::TruncatedEgf;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlockSetError {
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("finite set must be a nonempty strictly ascending list of positive integers")]
    BadFiniteList,
    #[error("modulus must be at least 1 and residues must be nonempty and less than the modulus")]
    BadResidues,
    #[error("union must have at least one member")]
    EmptyUnion,
    #[error("cannot parse block-size set from {0:?}")]
    Parse(String),
}

/// A set of admissible block sizes, `S ⊆ {1, 2, 3, ...}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockSizeSet {
    /// Every positive integer.
    All,
    /// `{1, ..., m}`.
    UpTo(u32),
    /// `{m, m+1, ...}`.
    AtLeast(u32),
    /// Sizes `s >= min` with `s mod modulus` in `residues`.
    Residues {
        modulus: u32,
        residues: BTreeSet<u32>,
        min: u32,
    },
    /// An explicit strictly ascending list.
    Finite(Vec<u32>),
    /// Union of member sets.
    Union(Vec<BlockSizeSet>),
}

impl BlockSizeSet {
    pub fn up_to(m: u32) -> Result<Self, BlockSetError> {
        if m == 0 {
            return Err(BlockSetError::ZeroBound);
        }
        Ok(BlockSizeSet::UpTo(m))
    }

    pub fn at_least(m: u32) -> Result<Self, BlockSetError> {
        if m == 0 {
            return Err(BlockSetError::ZeroBound);
        }
        Ok(BlockSizeSet::AtLeast(m))
    }

    pub fn finite(elements: Vec<u32>) -> Result<Self, BlockSetError> {
        if elements.is_empty()
            || elements[0] == 0
            || elements.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(BlockSetError::BadFiniteList);
        }
        Ok(BlockSizeSet::Finite(elements))
    }

    pub fn residues(
        modulus: u32,
        residues: BTreeSet<u32>,
        min: u32,
    ) -> Result<Self, BlockSetError> {
        if modulus == 0 || residues.is_empty() || residues.iter().any(|&r| r >= modulus) {
            return Err(BlockSetError::BadResidues);
        }
        if min == 0 {
            return Err(BlockSetError::ZeroBound);
        }
        Ok(BlockSizeSet::Residues {
            modulus,
            residues,
            min,
        })
    }

    pub fn union(members: Vec<BlockSizeSet>) -> Result<Self, BlockSetError> {
        if members.is_empty() {
            return Err(BlockSetError::EmptyUnion);
        }
        Ok(BlockSizeSet::Union(members))
    }

    /// The even positive integers.
    pub fn even() -> Self {
        BlockSizeSet::Residues {
            modulus: 2,
            residues: BTreeSet::from([0]),
            min: 2,
        }
    }

    /// The odd positive integers.
    pub fn odd() -> Self {
        BlockSizeSet::Residues {
            modulus: 2,
            residues: BTreeSet::from([1]),
            min: 1,
        }
    }

    /// Membership test; `s` must be a positive integer.
    pub fn contains(&self, s: u32) -> bool {
        if s == 0 {
            return false;
        }
        match self {
            BlockSizeSet::All => true,
            BlockSizeSet::UpTo(m) => s <= *m,
            BlockSizeSet::AtLeast(m) => s >= *m,
            BlockSizeSet::Residues {
                modulus,
                residues,
                min,
            } => s >= *min && residues.contains(&(s % modulus)),
            BlockSizeSet::Finite(elements) => elements.binary_search(&s).is_ok(),
            BlockSizeSet::Union(members) => members.iter().any(|m| m.contains(s)),
        }
    }

    /// All members `<= bound`, in ascending order.
    pub fn enumerate(&self, bound: u32) -> Vec<u32> {
        (1..=bound).filter(|&s| self.contains(s)).collect()
    }

    /// The smallest element of the set (every constructible set is nonempty).
    pub fn min_element(&self) -> u32 {
        match self {
            BlockSizeSet::All => 1,
            BlockSizeSet::UpTo(_) => 1,
            BlockSizeSet::AtLeast(m) => *m,
            BlockSizeSet::Residues { modulus, min, .. } => (*min..*min + *modulus)
                .find(|&s| self.contains(s))
                .expect("residue set is nonempty"),
            BlockSizeSet::Finite(elements) => elements[0],
            BlockSizeSet::Union(members) => members
                .iter()
                .map(BlockSizeSet::min_element)
                .min()
                .expect("union is nonempty"),
        }
    }

    /// The single-block generating function `E_S(x) = Σ_{s∈S} x^s/s!`,
    /// truncated at `order`. The constant term is always zero.
    pub fn egf(&self, order: usize) -> TruncatedEgf {
        let mut coeffs = vec![BigRational::default(); order + 1];
        for s in self.enumerate(order as u32) {
            let s = s as usize;
            coeffs[s] = BigRational::new(1.into(), factorial(s));
        }
        TruncatedEgf::from_coeffs(coeffs)
    }
}

impl fmt::Display for BlockSizeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSizeSet::All => write!(f, "all"),
            BlockSizeSet::UpTo(m) => write!(f, "<={m}"),
            BlockSizeSet::AtLeast(m) => write!(f, ">={m}"),
            BlockSizeSet::Residues {
                modulus,
                residues,
                min,
            } => {
                if *self == BlockSizeSet::even() {
                    write!(f, "even")
                } else if *self == BlockSizeSet::odd() {
                    write!(f, "odd")
                } else {
                    let rs: Vec<String> = residues.iter().map(u32::to_string).collect();
                    write!(f, "mod({modulus};{};{min})", rs.join(","))
                }
            }
            BlockSizeSet::Finite(elements) => {
                let es: Vec<String> = elements.iter().map(u32::to_string).collect();
                write!(f, "{{{}}}", es.join(","))
            }
            BlockSizeSet::Union(members) => {
                let ms: Vec<String> = members.iter().map(BlockSizeSet::to_string).collect();
                write!(f, "{}", ms.join("|"))
            }
        }
    }
}

impl FromStr for BlockSizeSet {
    type Err = BlockSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split('|').map(str::trim).collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(BlockSetError::Parse(s.to_string()));
        }
        let mut members = parts
            .into_iter()
            .map(parse_atom)
            .collect::<Result<Vec<_>, _>>()?;
        if members.len() == 1 {
            Ok(members.pop().expect("one member"))
        } else {
            BlockSizeSet::union(members)
        }
    }
}

fn parse_atom(s: &str) -> Result<BlockSizeSet, BlockSetError> {
    let err = || BlockSetError::Parse(s.to_string());
    match s {
        "all" => return Ok(BlockSizeSet::All),
        "even" => return Ok(BlockSizeSet::even()),
        "odd" => return Ok(BlockSizeSet::odd()),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("<=") {
        return BlockSizeSet::up_to(rest.trim().parse().map_err(|_| err())?);
    }
    if let Some(rest) = s.strip_prefix(">=") {
        return BlockSizeSet::at_least(rest.trim().parse().map_err(|_| err())?);
    }
    if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        let elements = inner
            .split(',')
            .map(|e| e.trim().parse().map_err(|_| err()))
            .collect::<Result<Vec<u32>, _>>()?;
        return BlockSizeSet::finite(elements);
    }
    if let Some(inner) = s.strip_prefix("mod(").and_then(|r| r.strip_suffix(')')) {
        let fields: Vec<&str> = inner.split(';').collect();
        if fields.len() != 3 {
            return Err(err());
        }
        let modulus = fields[0].trim().parse().map_err(|_| err())?;
        let residues = fields[1]
            .split(',')
            .map(|r| r.trim().parse().map_err(|_| err()))
            .collect::<Result<BTreeSet<u32>, _>>()?;
        let min = fields[2].trim().parse().map_err(|_| err())?;
        return BlockSizeSet::residues(modulus, residues, min);
    }
    Err(err())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn same_membership(a: &BlockSizeSet, b: &BlockSizeSet) -> bool {
        (1..=100).all(|s| a.contains(s) == b.contains(s))
    }

    #[test]
    fn membership_examples() {
        assert!(BlockSizeSet::odd().contains(3));
        assert!(!BlockSizeSet::UpTo(4).contains(5));
        assert!(BlockSizeSet::finite(vec![1, 3, 6]).unwrap().contains(6));
        assert!(!BlockSizeSet::All.contains(0));
    }

    #[test]
    fn canonical_equivalences() {
        let even = BlockSizeSet::residues(2, BTreeSet::from([0]), 2).unwrap();
        let odd = BlockSizeSet::residues(2, BTreeSet::from([1]), 1).unwrap();
        assert!(same_membership(&even, &BlockSizeSet::even()));
        assert!(same_membership(&odd, &BlockSizeSet::odd()));
        assert!(same_membership(&BlockSizeSet::All, &BlockSizeSet::AtLeast(1)));
    }

    #[test]
    fn enumerate_agrees_with_contains() {
        let family = [
            BlockSizeSet::All,
            BlockSizeSet::UpTo(2),
            BlockSizeSet::AtLeast(3),
            BlockSizeSet::even(),
            BlockSizeSet::odd(),
            BlockSizeSet::finite(vec![1, 3, 6]).unwrap(),
            BlockSizeSet::union(vec![BlockSizeSet::UpTo(2), BlockSizeSet::AtLeast(7)]).unwrap(),
        ];
        for set in &family {
            for bound in [0u32, 1, 13, 60] {
                let listed = set.enumerate(bound);
                for s in 1..=bound {
                    assert_eq!(listed.contains(&s), set.contains(s), "{set} at {s}");
                }
                assert!(listed.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn egf_coefficients() {
        let e = BlockSizeSet::All.egf(3);
        assert_eq!(e.coeff(0), &rat(0, 1));
        assert_eq!(e.coeff(1), &rat(1, 1));
        assert_eq!(e.coeff(2), &rat(1, 2));
        assert_eq!(e.coeff(3), &rat(1, 6));

        let even = BlockSizeSet::even().egf(5);
        assert_eq!(even.coeff(2), &rat(1, 2));
        assert_eq!(even.coeff(4), &rat(1, 24));
        for d in [0usize, 1, 3, 5] {
            assert_eq!(even.coeff(d), &rat(0, 1));
        }

        let f = BlockSizeSet::finite(vec![1, 3, 6]).unwrap().egf(2);
        assert_eq!(f.coeff(1), &rat(1, 1));
        assert_eq!(f.coeff(2), &rat(0, 1));
    }

    #[test]
    fn min_element_per_kind() {
        assert_eq!(BlockSizeSet::All.min_element(), 1);
        assert_eq!(BlockSizeSet::AtLeast(4).min_element(), 4);
        assert_eq!(BlockSizeSet::even().min_element(), 2);
        assert_eq!(BlockSizeSet::odd().min_element(), 1);
        assert_eq!(
            BlockSizeSet::finite(vec![3, 7]).unwrap().min_element(),
            3
        );
        let u = BlockSizeSet::union(vec![BlockSizeSet::AtLeast(5), BlockSizeSet::even()]).unwrap();
        assert_eq!(u.min_element(), 2);
    }

    #[test]
    fn dsl_round_trip() {
        for text in ["all", "<=3", ">=2", "even", "odd", "{1,3,6}", "mod(3;1,2;4)", "<=2|>=7"] {
            let set: BlockSizeSet = text.parse().unwrap();
            assert_eq!(set.to_string(), text);
            let again: BlockSizeSet = set.to_string().parse().unwrap();
            assert_eq!(set, again);
        }
    }

    #[test]
    fn dsl_rejects_garbage() {
        for text in ["", "sometimes", "<=0", "{}", "{3,1}", "{0}", "mod(2;5;1)", "|even"] {
            assert!(text.parse::<BlockSizeSet>().is_err(), "{text:?}");
        }
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(BlockSizeSet::up_to(0), Err(BlockSetError::ZeroBound));
        assert_eq!(
            BlockSizeSet::finite(vec![2, 2]),
            Err(BlockSetError::BadFiniteList)
        );
        assert_eq!(BlockSizeSet::union(vec![]), Err(BlockSetError::EmptyUnion));
    }
}
