//! Integer partitions: Young diagrams and cycle types.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinat::factorial;
use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Labels both irreducible representations and conjugacy classes of S_n.
/// The textual form is the comma-joined parts, e.g. `"3,2,1"`; the empty
/// partition prints as the empty string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(join(&parts)));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single-row diagram [n] (the trivial representation).
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The single-column diagram [1^n] (the sign representation).
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// Cycle type [k, 1^(n-k)] of the k-cycles in S_n.
    pub fn cycle_class(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidArgument(format!("cycle length {k} out of range for n = {n}")));
        }
        let mut parts = vec![k];
        parts.extend(std::iter::repeat(1).take(n - k));
        Ok(Partition::from_unsorted(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts (rows of the diagram, cycles of the permutation).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((1..=cols).map(|c| self.0.iter().filter(|&&r| r >= c).count()).collect())
    }

    /// Multiplicity m_k of part k, for k = 1..=max part.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.0.first().copied().unwrap_or(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// z_mu = prod_k k^{m_k} m_k!, the centralizer order of a permutation
    /// of this cycle type.
    pub fn z(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .fold(BigInt::from(1), |acc, (k, &m)| acc * BigInt::from(k).pow(m as u32) * factorial(m))
    }

    /// Size of the conjugacy class with this cycle type: n!/z_mu.
    pub fn class_size(&self) -> BigInt {
        factorial(self.weight()) / self.z()
    }

    /// Union of cycle types: the cycle type of sigma_1 o sigma_2 in S_{m+n}.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    /// Sign of a permutation of this cycle type.
    pub fn sign(&self) -> i32 {
        if (self.weight() - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn ensure_weight(&self, n: usize) -> Result<()> {
        if self.weight() != n {
            return Err(Error::InvalidArgument(format!("partition {self} is not a partition of {n}")));
        }
        Ok(())
    }
}

fn join(parts: &[usize]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .ok()
                    .filter(|&p| p > 0)
                    .ok_or_else(|| Error::InvalidPartition(tok.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a semicolon-separated tuple of partitions, e.g. `"2,1;2,1;3"`.
pub fn parse_tuple(s: &str) -> Result<Vec<Partition>> {
    s.split(';').map(str::parse).collect()
}

pub fn format_tuple(parts: &[&Partition]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";")
}

/// All partitions of `n` in reverse-lexicographic order: `[n]` first,
/// `[1^n]` last. `partitions(0)` is the single empty partition.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partitions_of_four_in_canonical_order() {
        let got: Vec<String> = partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
    }

    #[test]
    fn partitions_of_zero_is_empty_partition() {
        assert_eq!(partitions(0), vec![Partition::empty()]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3,2,1".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!(" 3, 3 ".parse::<Partition>().unwrap(), p(&[3, 3]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(
            "3,x,1".parse::<Partition>(),
            Err(Error::InvalidPartition("x".into()))
        );
        assert!(matches!("1,2".parse::<Partition>(), Err(Error::InvalidPartition(_))));
        assert!(matches!("2,0".parse::<Partition>(), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn tuples() {
        let t = parse_tuple("2,1;2,1;3").unwrap();
        assert_eq!(t, vec![p(&[2, 1]), p(&[2, 1]), p(&[3])]);
        assert_eq!(format_tuple(&[&t[0], &t[1], &t[2]]), "2,1;2,1;3");
    }

    #[test]
    fn class_sizes() {
        assert_eq!(p(&[2, 1, 1, 1, 1]).class_size(), BigInt::from(15));
        assert_eq!(Partition::column(7).class_size(), BigInt::from(1));
        // |T_k| = n!/(k (n-k)!)
        for n in 2..9usize {
            for k in 2..=n {
                let expect = factorial(n) / (BigInt::from(k) * factorial(n - k));
                assert_eq!(Partition::cycle_class(n, k).unwrap().class_size(), expect);
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 0..12 {
            let total: BigInt = partitions(n).iter().map(Partition::class_size).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn conjugate_and_union() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 2, 2]).conjugate(), p(&[3, 3]));
        assert_eq!(p(&[2, 1]).union(&p(&[3, 1])), p(&[3, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }
}
