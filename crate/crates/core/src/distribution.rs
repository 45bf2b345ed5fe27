//! Exact count distributions shared by the closed forms and the oracle.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactmath::{BigNat, SequenceFamily};
use crate::pattern::Pattern;

/// What the index of a [`CountDistribution`] means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexKind {
    /// Number of cyclic jumps; always even.
    Tau,
    /// Number of cyclic occurrences of a pattern.
    Occurrences,
    /// Remaining weight after column deletion, which for a run pattern
    /// `0...0` equals its occurrence count.
    Weight,
}

impl IndexKind {
    pub fn name(&self) -> &'static str {
        match self {
            IndexKind::Tau => "tau",
            IndexKind::Occurrences => "occurrences",
            IndexKind::Weight => "weight",
        }
    }
}

/// The set of sequences a distribution is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    /// All sequences with a fixed number of zeros and ones.
    Family(SequenceFamily),
    /// All `2^N` words of length `N`.
    AllWords(usize),
}

impl Scope {
    pub fn len(&self) -> usize {
        match self {
            Scope::Family(family) => family.len(),
            Scope::AllWords(len) => *len,
        }
    }
}

/// Exact map from an index to the number of sequences having that index.
///
/// Entries are stored densely: occurrence and weight distributions cover
/// every index from 0 to the largest nonzero one, jump distributions cover
/// every even index from 2 (or 0, when the only sequence is constant) to the
/// largest nonzero one. Two distributions built from the same counts are
/// therefore equal no matter which route produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountDistribution {
    scope: Scope,
    kind: IndexKind,
    entries: BTreeMap<usize, BigNat>,
}

impl CountDistribution {
    pub fn new(scope: Scope, kind: IndexKind, sparse: BTreeMap<usize, BigNat>) -> Self {
        let mut sparse: BTreeMap<usize, BigNat> =
            sparse.into_iter().filter(|(_, count)| !count.is_zero()).collect();
        let Some(&top) = sparse.keys().next_back() else {
            return Self { scope, kind, entries: sparse };
        };
        let bottom = match kind {
            IndexKind::Tau => *sparse.keys().next().unwrap_or(&0).min(&2),
            _ => 0,
        };
        let step = if kind == IndexKind::Tau { 2 } else { 1 };
        let entries = (bottom..=top)
            .step_by(step)
            .map(|index| (index, sparse.remove(&index).unwrap_or_default()))
            .collect();
        Self { scope, kind, entries }
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn kind(&self) -> IndexKind {
        self.kind
    }

    pub fn entries(&self) -> &BTreeMap<usize, BigNat> {
        &self.entries
    }

    /// Count at `index`; zero outside the stored range.
    pub fn get(&self, index: usize) -> BigNat {
        self.entries.get(&index).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigNat {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigNat)> {
        self.entries.iter().map(|(index, count)| (*index, count))
    }

    /// Same counts, compared without regard to scope or index kind.
    pub fn same_counts(&self, other: &CountDistribution) -> bool {
        self.entries == other.entries
    }
}

/// Joint distribution of several statistics over one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDistribution {
    family: SequenceFamily,
    patterns: Vec<Pattern>,
    entries: BTreeMap<Vec<usize>, BigNat>,
}

impl JointDistribution {
    /// Zero cells are dropped; the stored map is sparse.
    pub fn new(
        family: SequenceFamily,
        patterns: Vec<Pattern>,
        entries: BTreeMap<Vec<usize>, BigNat>,
    ) -> Self {
        let entries = entries.into_iter().filter(|(_, count)| !count.is_zero()).collect();
        Self { family, patterns, entries }
    }

    pub fn family(&self) -> SequenceFamily {
        self.family
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, BigNat> {
        &self.entries
    }

    pub fn get(&self, index: &[usize]) -> BigNat {
        self.entries.get(index).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigNat {
        self.entries.values().sum()
    }

    /// Marginal distribution of coordinate `axis`.
    pub fn marginal(&self, axis: usize) -> CountDistribution {
        let mut sparse: BTreeMap<usize, BigNat> = BTreeMap::new();
        for (index, count) in &self.entries {
            *sparse.entry(index[axis]).or_default() += count;
        }
        let kind = self.patterns[axis].index_kind();
        CountDistribution::new(Scope::Family(self.family), kind, sparse)
    }

    /// Sum out the listed coordinate, keeping the others in order.
    pub fn sum_out(&self, axis: usize) -> JointDistribution {
        let mut merged: BTreeMap<Vec<usize>, BigNat> = BTreeMap::new();
        for (index, count) in &self.entries {
            let mut key = index.clone();
            key.remove(axis);
            *merged.entry(key).or_default() += count;
        }
        let mut patterns = self.patterns.clone();
        patterns.remove(axis);
        JointDistribution::new(self.family, patterns, merged)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sparse(pairs: &[(usize, u64)]) -> BTreeMap<usize, BigNat> {
        pairs.iter().map(|&(k, v)| (k, BigNat::from(v))).collect()
    }

    #[test]
    fn occurrence_distributions_are_dense_from_zero() {
        let family = SequenceFamily::new(5, 3).unwrap();
        let dist = CountDistribution::new(
            Scope::Family(family),
            IndexKind::Occurrences,
            sparse(&[(0, 8), (1, 32), (3, 16), (7, 0)]),
        );
        let keys: Vec<_> = dist.entries().keys().copied().collect();
        assert_eq!(keys, vec![0, 1, 2, 3]);
        assert_eq!(dist.get(2), BigNat::from(0u32));
        assert_eq!(dist.total(), BigNat::from(56u32));
    }

    #[test]
    fn tau_distributions_step_by_two() {
        let family = SequenceFamily::new(3, 4).unwrap();
        let dist = CountDistribution::new(
            Scope::Family(family),
            IndexKind::Tau,
            sparse(&[(2, 7), (6, 7)]),
        );
        let keys: Vec<_> = dist.entries().keys().copied().collect();
        assert_eq!(keys, vec![2, 4, 6]);
        let constant = CountDistribution::new(
            Scope::Family(SequenceFamily::new(0, 4).unwrap()),
            IndexKind::Tau,
            sparse(&[(0, 1)]),
        );
        assert_eq!(constant.entries().len(), 1);
    }

    #[test]
    fn empty_distribution_stays_empty() {
        let family = SequenceFamily::new(2, 2).unwrap();
        let dist = CountDistribution::new(Scope::Family(family), IndexKind::Weight, BTreeMap::new());
        assert!(dist.entries().is_empty());
        assert_eq!(dist.total(), BigNat::from(0u32));
    }
}
