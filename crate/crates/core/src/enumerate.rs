//! Streams of partitions of `n` under multiplicity caps and congruence filters.
//!
//! Partitions are produced in lexicographically descending order of their
//! part sequences, e.g. `(3)`, `(2,1)`, `(1,1,1)`. The stream keeps one
//! `(part, multiplicity)` frame per distinct part of the current partition.

use std::collections::BTreeMap;

use crate::bounds::{BoundSequence, CongruenceFilter};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    AltSum,
    OddCount,
    Length,
}

impl Statistic {
    pub fn of(self, p: &Partition) -> u64 {
        match self {
            Statistic::AltSum => p.alt_sum(),
            Statistic::OddCount => p.odd_count() as u64,
            Statistic::Length => p.len() as u64,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::AltSum => "alt-sum",
            Statistic::OddCount => "odd-count",
            Statistic::Length => "length",
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "alt-sum" | "alt_sum" | "l_a" | "la" => Ok(Statistic::AltSum),
            "odd-count" | "odd_count" | "l_o" | "lo" => Ok(Statistic::OddCount),
            "length" | "len" | "l" => Ok(Statistic::Length),
            other => Err(format!("unknown statistic {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    part: u32,
    mult: u32,
}

/// Iterator over the partitions of `n` admitted by a bound rule and filter.
#[derive(Debug, Clone)]
pub struct BoundedPartitions<'a> {
    n: u32,
    bounds: &'a BoundSequence,
    filter: Option<&'a CongruenceFilter>,
    stack: Vec<Frame>,
    remaining: u32,
    started: bool,
    done: bool,
}

impl<'a> BoundedPartitions<'a> {
    pub fn new(n: u32, bounds: &'a BoundSequence, filter: Option<&'a CongruenceFilter>) -> Self {
        Self {
            n,
            bounds,
            filter,
            stack: Vec::new(),
            remaining: n,
            started: false,
            done: false,
        }
    }

    /// Pushes the largest admissible part below `below` with its largest
    /// usable multiplicity.
    fn push_first_below(&mut self, below: u32) -> bool {
        let top = below.saturating_sub(1).min(self.remaining);
        for part in (1..=top).rev() {
            if let Some(f) = self.filter {
                if !f.allows_part(part) {
                    continue;
                }
            }
            let mult = self.bounds.bound(part).cap(self.remaining / part);
            if mult > 0 {
                self.stack.push(Frame { part, mult });
                self.remaining -= part * mult;
                return true;
            }
        }
        false
    }

    /// Greedily completes the current prefix; false on a dead end.
    fn descend(&mut self) -> bool {
        while self.remaining > 0 {
            let below = self.stack.last().map_or(self.n + 1, |f| f.part);
            if !self.push_first_below(below) {
                return false;
            }
        }
        true
    }

    /// Moves to the next prefix in order; false when the stream is exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some(frame) = self.stack.pop() {
            self.remaining += frame.part * frame.mult;
            if frame.mult > 1 {
                let mult = frame.mult - 1;
                self.stack.push(Frame {
                    part: frame.part,
                    mult,
                });
                self.remaining -= frame.part * mult;
                return true;
            }
            if self.push_first_below(frame.part) {
                return true;
            }
        }
        false
    }

    fn current(&self) -> Partition {
        let mut parts = Vec::new();
        for f in &self.stack {
            parts.extend(std::iter::repeat_n(f.part, f.mult as usize));
        }
        Partition::from_sorted_unchecked(parts)
    }
}

impl Iterator for BoundedPartitions<'_> {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let mut alive = if self.started { self.backtrack() } else { true };
        self.started = true;
        while alive {
            if self.descend() {
                let p = self.current();
                if self.filter.is_none_or(|f| f.accepts_complete(&p)) {
                    return Some(p);
                }
            }
            alive = self.backtrack();
        }
        self.done = true;
        None
    }
}

pub fn enumerate_bounded<'a>(
    n: u32,
    bounds: &'a BoundSequence,
    filter: Option<&'a CongruenceFilter>,
) -> BoundedPartitions<'a> {
    BoundedPartitions::new(n, bounds, filter)
}

pub fn count_total(n: u32, bounds: &BoundSequence) -> u64 {
    enumerate_bounded(n, bounds, None).count() as u64
}

pub fn count_by_statistic(n: u32, bounds: &BoundSequence, stat: Statistic) -> BTreeMap<u64, u64> {
    histogram(enumerate_bounded(n, bounds, None), stat)
}

pub fn histogram<I>(partitions: I, stat: Statistic) -> BTreeMap<u64, u64>
where
    I: IntoIterator<Item = Partition>,
{
    let mut out = BTreeMap::new();
    for p in partitions {
        *out.entry(stat.of(&p)).or_insert(0) += 1;
    }
    out
}

/// All partitions of `n`, grouped by statistic value; each group is sorted
/// lexicographically ascending, matching the layout of the worked tables.
pub fn group_by_statistic(
    n: u32,
    bounds: &BoundSequence,
    stat: Statistic,
) -> BTreeMap<u64, Vec<Partition>> {
    let mut out: BTreeMap<u64, Vec<Partition>> = BTreeMap::new();
    for p in enumerate_bounded(n, bounds, None) {
        out.entry(stat.of(&p)).or_default().push(p);
    }
    for group in out.values_mut() {
        group.reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Bound;

    fn all(c: u32) -> BoundSequence {
        BoundSequence::constant(Bound::Finite(c))
    }

    #[test]
    fn order_is_lexicographic_descending() {
        let free = BoundSequence::unbounded();
        let got: Vec<String> = enumerate_bounded(4, &free, None)
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, vec!["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
    }

    #[test]
    fn zero_yields_empty_partition() {
        for bounds in [all(0), all(3), BoundSequence::unbounded()] {
            let got: Vec<Partition> = enumerate_bounded(0, &bounds, None).collect();
            assert_eq!(got, vec![Partition::empty()]);
        }
    }

    #[test]
    fn seven_with_small_caps() {
        assert_eq!(count_total(7, &all(3)), 12);
        assert_eq!(
            count_total(7, &BoundSequence::evens_only(Bound::Finite(1))),
            12
        );
        assert_eq!(count_total(1, &all(0)), 0);
    }

    #[test]
    fn histograms_for_seven() {
        let expected: BTreeMap<u64, u64> = [(1, 5), (3, 4), (5, 2), (7, 1)].into_iter().collect();
        let even1 = BoundSequence::evens_only(Bound::Finite(1));
        assert_eq!(count_by_statistic(7, &all(3), Statistic::AltSum), expected);
        assert_eq!(count_by_statistic(7, &even1, Statistic::OddCount), expected);
        assert_eq!(count_by_statistic(7, &even1, Statistic::AltSum), expected);
    }

    #[test]
    fn congruence_and_side_conditions() {
        let free = BoundSequence::unbounded();
        let odd = CongruenceFilter::new(2, 1).unwrap();
        let got: Vec<String> = enumerate_bounded(6, &free, Some(&odd))
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, vec!["5,1", "3,3", "3,1,1,1", "1,1,1,1,1,1"]);

        let corrected = odd.with_corrections();
        let got: Vec<String> = enumerate_bounded(6, &free, Some(&corrected))
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, vec!["5,1", "3,3"]);

        // Parts ≡ 2 (mod 3): dead ends at remainder 1 must be skipped.
        let f = CongruenceFilter::new(3, 2).unwrap();
        let got: Vec<String> = enumerate_bounded(9, &free, Some(&f))
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, vec!["5,2,2"]);
    }

    #[test]
    fn grouped_rows_ascend() {
        let rows = group_by_statistic(7, &all(3), Statistic::AltSum);
        let row1: Vec<String> = rows[&1].iter().map(Partition::exponent_notation).collect();
        assert_eq!(
            row1,
            vec!["(2^2,1^3)", "(2^3,1)", "(3,2,1^2)", "(3^2,1)", "(4,3)"]
        );
    }
}
