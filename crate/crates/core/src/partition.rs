//! Canonical integer partitions and the statistics used throughout the crate.
//!
//! A [`Partition`] stores its parts in non-increasing order. The empty
//! partition is the unique partition of 0. Multiplicities are derived on
//! demand from the sorted parts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Builds a partition from parts in any order. Zero and negative values
    /// are rejected.
    pub fn new<I>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut parts = Vec::new();
        for v in values {
            if v <= 0 {
                return Err(Error::NonPositivePart(v));
            }
            parts.push(u32::try_from(v).map_err(|_| Error::Overflow)?);
        }
        Ok(Self::from_parts(parts))
    }

    /// Builds a partition from positive parts in any order.
    ///
    /// Panics if a part is zero; use [`Partition::new`] for untrusted input.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "zero part");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// Builds a partition from `(part, multiplicity)` pairs.
    pub fn from_multiplicities<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut parts = Vec::new();
        for (part, count) in pairs {
            parts.extend(std::iter::repeat_n(part, count as usize));
        }
        Self::from_parts(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn largest_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// `λ_1 - λ_2 + λ_3 - ...` over the sorted parts.
    pub fn alt_sum(&self) -> u64 {
        // Pairs (λ_{2i-1}, λ_{2i}) contribute non-negative differences.
        self.parts
            .chunks(2)
            .map(|c| u64::from(c[0]) - c.get(1).map_or(0, |&p| u64::from(p)))
            .sum()
    }

    pub fn odd_count(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.largest_part() as usize;
        let mut cols = vec![0u32; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Self::from_sorted_unchecked(cols)
    }

    /// Largest odd part, or 0 when every part is even.
    pub fn largest_odd_part(&self) -> u32 {
        self.parts.iter().copied().find(|p| p % 2 == 1).unwrap_or(0)
    }

    /// Largest part with odd multiplicity, or 0 when every multiplicity is even.
    pub fn largest_odd_multiplicity_part(&self) -> u32 {
        self.multiplicities()
            .into_iter()
            .find(|&(_, m)| m % 2 == 1)
            .map_or(0, |(p, _)| p)
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn multiplicity(&self, part: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == part).count() as u32
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    pub fn all_odd(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1)
    }

    pub fn all_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// Multiset union of two partitions.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            let take_left = match (self.parts.get(i), other.parts.get(j)) {
                (Some(a), Some(b)) => a >= b,
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Self::from_sorted_unchecked(parts)
    }

    /// Exponent notation with largest part first, e.g. `(3^2,1)`; `∅` for
    /// the empty partition.
    pub fn exponent_notation(&self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        let body: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|(p, m)| {
                if m == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{m}")
                }
            })
            .collect();
        format!("({})", body.join(","))
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts, largest first; `∅` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let body: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `7,2,1`, `1,2,7`, `2^5,4^4`, an optional surrounding pair of
    /// parentheses, and the empty string or `∅` for the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::PartitionSyntax {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut body = s.trim();
        if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            body = inner.trim();
        }
        if body.is_empty() || body == "∅" {
            return Ok(Self::empty());
        }
        let mut values = Vec::new();
        for token in body.split(',') {
            let token = token.trim();
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (token, "1"),
            };
            let base: i64 = base
                .parse()
                .map_err(|_| syntax("expected an integer part"))?;
            let exp: usize = exp
                .parse()
                .map_err(|_| syntax("expected a non-negative exponent"))?;
            values.extend(std::iter::repeat_n(base, exp));
        }
        Self::new(values)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Self::new(parts.into_iter().map(i64::from))
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Partition::new([1, 2, 7]).unwrap().parts(), &[7, 2, 1]);
        assert_eq!(Partition::new([2, 2, 3]).unwrap().parts(), &[3, 2, 2]);
        assert!(Partition::new([]).unwrap().is_empty());
        assert_eq!(Partition::new([3, 0]), Err(Error::NonPositivePart(0)));
        assert_eq!(Partition::new([-4]), Err(Error::NonPositivePart(-4)));
    }

    #[test]
    fn weights() {
        assert_eq!(p("7,2,1").weight(), 10);
        assert_eq!(Partition::empty().weight(), 0);
        assert_eq!(p("14,8,8,4,4,3,3,1,1,1,1").weight(), 48);
    }

    #[test]
    fn alternating_sum() {
        assert_eq!(p("7,2,1").alt_sum(), 6);
        assert_eq!(Partition::empty().alt_sum(), 0);
        assert_eq!(p("4,3").alt_sum(), 1);
    }

    #[test]
    fn odd_parts() {
        assert_eq!(p("4,2,1").odd_count(), 1);
        assert_eq!(Partition::empty().odd_count(), 0);
        assert_eq!(p("3,3,1,1,1,1").odd_count(), 6);
    }

    #[test]
    fn conjugation() {
        assert_eq!(p("3,2").conjugate(), p("2,2,1"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p("5,3,3,1").conjugate().conjugate(), p("5,3,3,1"));
    }

    #[test]
    fn largest_odd_statistics() {
        assert_eq!(p("14,8,8,4,4,3,3,1,1,1,1").largest_odd_part(), 3);
        assert_eq!(p("4,2").largest_odd_part(), 0);
        assert_eq!(p("7").largest_odd_part(), 7);

        assert_eq!(
            p("7,7,7,4,4,4,4,2,2,2,2,2,1").largest_odd_multiplicity_part(),
            7
        );
        assert_eq!(p("2,2").largest_odd_multiplicity_part(), 0);
        assert_eq!(p("5").largest_odd_multiplicity_part(), 5);
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("2^5,4^4"), p("4,4,4,4,2,2,2,2,2"));
        assert_eq!(p("(1,2,7)"), p("7,2,1"));
        assert_eq!(p(""), Partition::empty());
        assert_eq!(p("∅"), Partition::empty());
        assert!("1,x".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
        assert_eq!(p("2,2,1,1,1").exponent_notation(), "(2^2,1^3)");
        assert_eq!(p("3,3,1").exponent_notation(), "(3^2,1)");
        assert_eq!(Partition::empty().exponent_notation(), "∅");
        assert_eq!(p("1,2,7").to_string(), "7,2,1");
    }

    #[test]
    fn union_and_multiplicities() {
        let u = p("7,2,1").union(&p("7,7,4,4,4,4,2,2,2,2"));
        assert_eq!(u, p("7,7,7,4,4,4,4,2,2,2,2,2,1"));
        assert_eq!(u.multiplicities(), vec![(7, 3), (4, 4), (2, 5), (1, 1)]);
        assert_eq!(u.multiplicity(2), 5);
        assert_eq!(u.multiplicity(3), 0);
    }

    #[test]
    fn serde_uses_part_list() {
        let json = serde_json::to_string(&p("3,1,1")).unwrap();
        assert_eq!(json, "[3,1,1]");
        let back: Partition = serde_json::from_str("[1,3,1]").unwrap();
        assert_eq!(back, p("3,1,1"));
        assert!(serde_json::from_str::<Partition>("[0]").is_err());
    }
}
