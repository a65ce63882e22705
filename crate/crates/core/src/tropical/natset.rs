use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tropical::TropValue;

/// An eventually periodic subset of `Z≥0`:
/// `transient ∪ { n ≥ T : n mod p ∈ residues }`.
///
/// Values are always canonical: the threshold `T` is minimal and then the
/// period `p` is minimal, with `p = 0` encoding finite sets. Two `NatSet`s
/// are therefore equal iff they denote the same set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatSet {
    period: usize,
    transient: Vec<bool>,
    residues: Vec<bool>,
}

impl NatSet {
    /// `finite ∪ { n ≥ threshold : n mod period ∈ residues }`. Elements of
    /// `finite` may lie above the threshold.
    pub fn new(
        finite: impl IntoIterator<Item = u64>,
        threshold: u64,
        period: u64,
        residues: impl IntoIterator<Item = u64>,
    ) -> Result<NatSet> {
        let finite: BTreeSet<usize> = finite.into_iter().map(|n| n as usize).collect();
        let residues: BTreeSet<usize> = residues.into_iter().map(|r| r as usize).collect();
        let (threshold, period) = (threshold as usize, period as usize);
        if let Some(&r) = residues.iter().find(|&&r| r >= period.max(1)) {
            return Err(Error::InvalidNatSet(format!(
                "residue {r} is not below the period {period}"
            )));
        }
        if period == 0 && !residues.is_empty() {
            return Err(Error::InvalidNatSet("period 0 admits no residues".into()));
        }
        let start = finite.last().map_or(threshold, |&m| threshold.max(m + 1));
        Ok(Self::canonical(start, period, |n| {
            finite.contains(&n)
                || (n >= threshold && period > 0 && residues.contains(&(n % period)))
        }))
    }

    pub fn empty() -> NatSet {
        NatSet {
            period: 0,
            transient: Vec::new(),
            residues: Vec::new(),
        }
    }

    /// All of `Z≥0`.
    pub fn naturals() -> NatSet {
        NatSet {
            period: 1,
            transient: Vec::new(),
            residues: vec![true],
        }
    }

    pub fn finite(elements: impl IntoIterator<Item = u64>) -> NatSet {
        let elements: BTreeSet<usize> = elements.into_iter().map(|n| n as usize).collect();
        let len = elements.last().map_or(0, |&m| m + 1);
        Self::canonical(len, 0, |n| elements.contains(&n))
    }

    /// `Z≥0` minus the progression `{ period·k + offset : k ≥ 0 }`.
    pub fn complement_of_progression(offset: u64, period: u64) -> NatSet {
        assert!(offset < period, "offset must be a residue");
        let period = period as usize;
        let offset = offset as usize;
        Self::canonical(0, period, |n| n % period != offset)
    }

    /// Canonical form of a set given by its membership predicate, where
    /// the set is known to be `period`-periodic from `start` on (`period = 0`:
    /// no elements at or beyond `start`).
    pub(crate) fn canonical(start: usize, period: usize, member: impl Fn(usize) -> bool) -> NatSet {
        let tail_nonempty = period > 0 && (start..start + period).any(&member);
        if !tail_nonempty {
            let len = (0..start).rev().find(|&n| member(n)).map_or(0, |m| m + 1);
            return NatSet {
                period: 0,
                transient: (0..len).map(&member).collect(),
                residues: Vec::new(),
            };
        }
        let pattern: Vec<bool> = (start..start + period).map(&member).collect();
        let q = (1..=period)
            .filter(|q| period.is_multiple_of(*q))
            .find(|&q| (0..period).all(|i| pattern[i] == pattern[(i + q) % period]))
            .unwrap_or(period);
        let mut threshold = start;
        while threshold > 0 && member(threshold - 1) == member(threshold - 1 + q) {
            threshold -= 1;
        }
        let residues = (0..q)
            .map(|r| member(threshold + (r + q - threshold % q) % q))
            .collect();
        NatSet {
            period: q,
            transient: (0..threshold).map(&member).collect(),
            residues,
        }
    }

    pub fn threshold(&self) -> usize {
        self.transient.len()
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period == 0
    }

    pub fn is_empty(&self) -> bool {
        self.period == 0 && self.transient.is_empty()
    }

    /// Elements below the threshold.
    pub fn transient(&self) -> impl Iterator<Item = u64> + '_ {
        self.transient
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(n, _)| n as u64)
    }

    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        self.residues
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(r, _)| r as u64)
    }

    pub fn contains(&self, n: u64) -> bool {
        let n = n as usize;
        if n < self.transient.len() {
            self.transient[n]
        } else {
            self.period > 0 && self.residues[n % self.period]
        }
    }

    /// Members strictly below `bound`.
    pub fn elements_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&n| self.contains(n)).collect()
    }

    /// `Val_S(j)`: distance from `j` to the least element of `S` that is `≥ j`,
    /// or `∞` when there is none.
    pub fn val_at(&self, j: u64) -> TropValue {
        let j = j as usize;
        let threshold = self.transient.len();
        if let Some(n) = (j..threshold).find(|&n| self.transient[n]) {
            return TropValue::Finite((n - j) as u64);
        }
        if self.period == 0 {
            return TropValue::Infinite;
        }
        let start = j.max(threshold);
        (start..start + self.period)
            .find(|&n| self.residues[n % self.period])
            .map_or(TropValue::Infinite, |n| TropValue::Finite((n - j) as u64))
    }

    /// `{ i - j : i ∈ S, i ≥ j }`.
    pub fn shift(&self, j: u64) -> NatSet {
        let j = j as usize;
        Self::canonical(self.threshold().saturating_sub(j), self.period, |n| {
            self.contains((n + j) as u64)
        })
    }
}

fn join(items: impl Iterator<Item = u64>) -> String {
    items.map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for NatSet {
    /// Same syntax the parser accepts: `{0,1}` or `{0}+per(2;3;0,2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(self.transient()))?;
        if self.period > 0 {
            write!(
                f,
                "+per({};{};{})",
                self.threshold(),
                self.period,
                join(self.residues())
            )?;
        }
        Ok(())
    }
}

impl fmt::Debug for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatSet({self})")
    }
}

impl Serialize for NatSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
