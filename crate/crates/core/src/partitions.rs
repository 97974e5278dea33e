//! Integer partitions: enumeration, conjugation, counting and divisor sums.
//!
//! Partitions are immutable values. Enumeration streams them in reverse
//! lexicographic order, `(n)` first and `(1, ..., 1)` last, so any
//! reduction over the partitions of `n` has a fixed, reproducible order.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// A non-increasing finite sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// The empty partition of zero.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(
                join(&parts),
                "parts must be positive",
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                join(&parts),
                "parts must be non-increasing",
            ));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts, `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `λ_i` with 1-based index; 0 beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Transposes the Ferrers diagram: `λ̄_a = #{b : λ_b ≥ a}`.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.largest())
            .map(|a| self.parts.iter().take_while(|&&p| p >= a).count())
            .collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }
}

/// The partition `(N)^N`: `N` parts all equal to `N`.
pub fn rectangle(n: usize) -> Result<Partition> {
    if n == 0 {
        return Err(Error::out_of_range("rectangle side", "at least 1", 0));
    }
    Ok(Partition { parts: vec![n; n] })
}

fn join(parts: &[usize]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"3,2,2,1"`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidPartition(s.to_string(), "parts must be positive integers")
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| match e {
            Error::InvalidPartition(_, why) => Error::InvalidPartition(s.to_string(), why),
            other => other,
        })
    }
}

/// Streams the partitions of `n` in reverse lexicographic order.
#[derive(Clone, Debug)]
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Partitions {
    pub fn new(n: usize) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Partitions {
            current: Some(first),
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.take()?;
        // Successor: decrement the last part exceeding 1, then refill the
        // remainder greedily with parts no larger than the decremented one.
        if let Some(i) = current.iter().rposition(|&p| p > 1) {
            let mut next = current[..i].to_vec();
            let v = current[i] - 1;
            let mut rest = current[i] + current.len() - i - 1;
            while rest > 0 {
                let part = rest.min(v);
                next.push(part);
                rest -= part;
            }
            self.current = Some(next);
        }
        Some(Partition { parts: current })
    }
}

/// Every partition of `n` exactly once, `(n)` first and `(1^n)` last.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    Partitions::new(n).collect()
}

/// `p(0), ..., p(n)` by the Euler pentagonal-number recurrence.
pub fn partition_counts(n: usize) -> Vec<BigUint> {
    let mut table: Vec<BigInt> = Vec::with_capacity(n + 1);
    table.push(BigInt::one());
    for i in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1usize.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let mut term = table[i - g1].clone();
            if g2 <= i {
                term += &table[i - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        table.push(acc);
    }
    table
        .into_iter()
        .map(|v| v.to_biguint().expect("partition counts are nonnegative"))
        .collect()
}

/// The partition function `p(n)`.
pub fn partition_count(n: usize) -> BigUint {
    partition_counts(n).pop().expect("table has n + 1 entries")
}

/// Divisor sum `σ_j(n) = Σ_{d | n} d^j`.
pub fn sigma(j: u32, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::out_of_range("n", "at least 1", 0));
    }
    let mut total = BigUint::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigUint::from(d).pow(j);
            let e = n / d;
            if e != d {
                total += BigUint::from(e).pow(j);
            }
        }
        d += 1;
    }
    Ok(total)
}

#[cfg(test)]
pub(crate) fn sigma_f64(j: u32, n: u64) -> f64 {
    num_traits::ToPrimitive::to_f64(&sigma(j, n).expect("n >= 1")).unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerates_zero_as_empty() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
    }

    #[test]
    fn enumerates_four_in_reverse_lex_order() {
        let got = enumerate_partitions(4);
        let want = vec![
            p(&[4]),
            p(&[3, 1]),
            p(&[2, 2]),
            p(&[2, 1, 1]),
            p(&[1, 1, 1, 1]),
        ];
        assert_eq!(got, want);
        assert_eq!(enumerate_partitions(5).len(), 7);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 2, 2, 1]).conjugate(), p(&[4, 3, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for n in 1..6 {
            let r = rectangle(n).unwrap();
            assert!(r.is_self_conjugate());
            assert_eq!(r.size(), n * n);
        }
        assert_eq!(p(&[4, 3, 1]).len(), 3);
    }

    #[test]
    fn rectangle_rejects_zero() {
        assert!(rectangle(0).is_err());
        assert_eq!(rectangle(1).unwrap(), p(&[1]));
        assert_eq!(rectangle(3).unwrap(), p(&[3, 3, 3]));
    }

    #[test]
    fn counts() {
        assert_eq!(partition_count(0), BigUint::from(1u32));
        assert_eq!(partition_count(4), BigUint::from(5u32));
        assert_eq!(partition_count(10), BigUint::from(42u32));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(1, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(sigma(1, 6).unwrap(), BigUint::from(12u32));
        assert_eq!(sigma(3, 4).unwrap(), BigUint::from(73u32));
        assert_eq!(sigma(0, 12).unwrap(), BigUint::from(6u32));
        assert!(sigma(1, 0).is_err());
    }

    #[test]
    fn parses_text_form() {
        assert_eq!("3,2,2,1".parse::<Partition>().unwrap(), p(&[3, 2, 2, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2,3".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 2, 2, 1]).to_string(), "3,2,2,1");
    }

    #[test]
    fn part_indexing_is_one_based() {
        let l = p(&[3, 2, 2, 1]);
        assert_eq!(l.part(1), 3);
        assert_eq!(l.part(4), 1);
        assert_eq!(l.part(5), 0);
        assert_eq!(l.part(0), 0);
    }
}
