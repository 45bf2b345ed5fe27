//! Jump-count distributions `T^{mn}_tau` of cyclic binary sequences and the
//! census of sequence types.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::distribution::{CountDistribution, IndexKind, Scope};
use crate::error::{CountError, Result};
use crate::exactmath::{binomial, exact_div, factorial, BigNat, SequenceFamily};

fn half_tau(tau: usize) -> Result<usize> {
    if tau % 2 == 1 {
        Err(CountError::InvalidTau(tau))
    } else {
        Ok(tau / 2)
    }
}

/// Number of sequences of `family` with exactly `tau` cyclic jumps.
///
/// Evaluated as `N h C(m,h) C(n,h) / (m n)` with `h = tau/2`; the division
/// comes last and is checked to be exact.
pub fn t_number(family: SequenceFamily, tau: usize) -> Result<BigNat> {
    let h = half_tau(tau)?;
    family.require_nondegenerate()?;
    let (m, n) = (family.zeros(), family.ones());
    if h == 0 || h > m.min(n) {
        return Ok(BigNat::zero());
    }
    let numerator = BigNat::from(family.len() * h)
        * binomial(m as u64, h as i64)
        * binomial(n as u64, h as i64);
    exact_div(&numerator, &BigNat::from(m * n), "jump count")
}

/// Same contract as [`t_number`], walking the ratio
/// `T_{tau+2} / T_tau = 4 (m - tau/2)(n - tau/2) / (tau (tau + 2))` up from
/// `T_2 = N`.
pub fn t_number_by_recurrence(family: SequenceFamily, tau: usize) -> Result<BigNat> {
    let h = half_tau(tau)?;
    family.require_nondegenerate()?;
    let (m, n) = (family.zeros(), family.ones());
    if h == 0 || h > m.min(n) {
        return Ok(BigNat::zero());
    }
    let mut value = BigNat::from(family.len());
    for step in 1..h {
        // tau = 2 step; 4 (m - step)(n - step) / (2 step (2 step + 2))
        value *= (m - step) * (n - step);
        value = exact_div(&value, &BigNat::from(step * (step + 1)), "jump recurrence")?;
    }
    Ok(value)
}

/// The full jump distribution of a family.
///
/// Degenerate families hold the single constant sequence, with zero jumps.
pub fn t_distribution(family: SequenceFamily) -> Result<CountDistribution> {
    let sparse: BTreeMap<usize, BigNat> = if family.is_degenerate() {
        BTreeMap::from([(0, BigNat::one())])
    } else {
        let top = family.zeros().min(family.ones());
        (1..=top)
            .into_par_iter()
            .map(|h| t_number(family, 2 * h).map(|count| (2 * h, count)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .collect()
    };
    Ok(CountDistribution::new(Scope::Family(family), IndexKind::Tau, sparse))
}

/// Number of words of length `len` (all digit counts) with `tau` jumps:
/// the sum over families, which collapses to `2 C(N, tau)`.
pub fn t_sum_over_n(len: usize, tau: usize) -> Result<BigNat> {
    half_tau(tau)?;
    if len == 0 {
        return Err(CountError::EmptyFamily);
    }
    if tau == 0 {
        return Ok(BigNat::from(2u32));
    }
    Ok(binomial(len as u64, tau as i64) * 2u32)
}

/// The same total, summed family by family.
pub fn t_sum_over_n_by_families(len: usize, tau: usize) -> Result<BigNat> {
    half_tau(tau)?;
    if tau == 0 {
        return Ok(BigNat::from(2u32));
    }
    let mut total = BigNat::zero();
    for ones in 1..len {
        total += t_number(SequenceFamily::new(len - ones, ones)?, tau)?;
    }
    Ok(total)
}

/// The unordered block-length partitions of a sequence's zero runs and one
/// runs, each listed in descending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SequenceType {
    zero_blocks: Vec<usize>,
    one_blocks: Vec<usize>,
}

impl SequenceType {
    pub fn new(mut zero_blocks: Vec<usize>, mut one_blocks: Vec<usize>) -> Result<Self> {
        if zero_blocks.len() != one_blocks.len()
            || zero_blocks.is_empty()
            || zero_blocks.iter().chain(&one_blocks).any(|&b| b == 0)
        {
            return Err(CountError::Domain(format!(
                "a type needs two partitions of equal positive height, got {zero_blocks:?} and {one_blocks:?}"
            )));
        }
        zero_blocks.sort_unstable_by(|a, b| b.cmp(a));
        one_blocks.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { zero_blocks, one_blocks })
    }

    pub fn zero_blocks(&self) -> &[usize] {
        &self.zero_blocks
    }

    pub fn one_blocks(&self) -> &[usize] {
        &self.one_blocks
    }

    /// Shared number of blocks.
    pub fn height(&self) -> usize {
        self.zero_blocks.len()
    }

    /// Number of sequences of this type: `N h! (h-1)!` over the factorials of
    /// the part multiplicities of both partitions.
    pub fn multiplicity(&self) -> Result<BigNat> {
        let len: usize = self.zero_blocks.iter().sum::<usize>() + self.one_blocks.iter().sum::<usize>();
        let h = self.height() as u64;
        let numerator = BigNat::from(len) * factorial(h) * factorial(h - 1);
        let denominator = multiplicity_factorials(&self.zero_blocks) * multiplicity_factorials(&self.one_blocks);
        exact_div(&numerator, &denominator, "type multiplicity")
    }
}

impl std::fmt::Display for SequenceType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |parts: &[usize]| parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{({}),({})}}", join(&self.zero_blocks), join(&self.one_blocks))
    }
}

fn multiplicity_factorials(descending: &[usize]) -> BigNat {
    let mut product = BigNat::one();
    let mut i = 0;
    while i < descending.len() {
        let run = descending[i..].iter().take_while(|&&p| p == descending[i]).count();
        product *= factorial(run as u64);
        i += run;
    }
    product
}

/// Partitions of `weight` into exactly `parts` parts, each descending,
/// emitted in lexicographically descending order.
pub(crate) fn partitions(weight: usize, parts: usize) -> Vec<Vec<usize>> {
    fn fill(weight: usize, parts: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if weight == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if weight < parts {
            return;
        }
        let largest = cap.min(weight - (parts - 1));
        for first in (1..=largest).rev() {
            // The remaining parts cannot exceed `first`.
            if first * parts < weight {
                break;
            }
            prefix.push(first);
            fill(weight - first, parts - 1, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(weight, parts, weight, &mut Vec::new(), &mut out);
    out
}

/// Every type of the family with its number of sequences, ordered by
/// height and then lexicographically.
pub fn type_census(family: SequenceFamily) -> Result<Vec<(SequenceType, BigNat)>> {
    family.require_nondegenerate()?;
    let (m, n) = (family.zeros(), family.ones());
    let mut census = Vec::new();
    for h in 1..=m.min(n) {
        let zero_parts = partitions(m, h);
        let one_parts = partitions(n, h);
        for zeros in &zero_parts {
            for ones in &one_parts {
                let ty = SequenceType::new(zeros.clone(), ones.clone())?;
                let count = ty.multiplicity()?;
                census.push((ty, count));
            }
        }
    }
    census.sort_by(|a, b| (a.0.height(), &a.0).cmp(&(b.0.height(), &b.0)));
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::partition_count;

    fn fam(m: usize, n: usize) -> SequenceFamily {
        SequenceFamily::new(m, n).unwrap()
    }

    fn nat(v: u64) -> BigNat {
        BigNat::from(v)
    }

    #[test]
    fn point_values() {
        assert_eq!(t_number(fam(3, 4), 2).unwrap(), nat(7));
        assert_eq!(t_number(fam(3, 4), 4).unwrap(), nat(21));
        assert_eq!(t_number(fam(5, 5), 6).unwrap(), nat(120));
        assert_eq!(t_number(fam(3, 4), 8).unwrap(), nat(0));
        for (m, n) in [(1, 1), (2, 7), (6, 3)] {
            assert_eq!(t_number(fam(m, n), 2).unwrap(), nat((m + n) as u64));
        }
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(t_number_by_recurrence(fam(5, 5), 4).unwrap(), nat(80));
        assert_eq!(t_number_by_recurrence(fam(3, 4), 8).unwrap(), nat(0));
        assert_eq!(t_number_by_recurrence(fam(4, 4), 8).unwrap(), nat(2));
    }

    #[test]
    fn errors() {
        assert_eq!(t_number(fam(3, 4), 3), Err(CountError::InvalidTau(3)));
        assert_eq!(
            t_number(fam(0, 4), 2),
            Err(CountError::DegenerateFamily { zeros: 0, ones: 4 })
        );
        assert!(t_number_by_recurrence(fam(3, 0), 2).is_err());
        assert_eq!(t_sum_over_n(7, 5), Err(CountError::InvalidTau(5)));
    }

    #[test]
    fn distributions() {
        let dist = t_distribution(fam(3, 4)).unwrap();
        let got: Vec<_> = dist.iter().map(|(k, v)| (k, v.clone())).collect();
        assert_eq!(got, vec![(2, nat(7)), (4, nat(21)), (6, nat(7))]);
        let dist = t_distribution(fam(5, 5)).unwrap();
        let got: Vec<_> = dist.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(got, [10u64, 80, 120, 40, 2].map(nat).to_vec());
        let dist = t_distribution(fam(1, 1)).unwrap();
        assert_eq!(dist.entries().len(), 1);
        assert_eq!(dist.get(2), nat(2));
        let constant = t_distribution(fam(0, 3)).unwrap();
        assert_eq!(constant.get(0), nat(1));
        assert_eq!(constant.total(), nat(1));
    }

    #[test]
    fn sums_over_families() {
        assert_eq!(t_sum_over_n(7, 4).unwrap(), nat(70));
        assert_eq!(t_sum_over_n(10, 10).unwrap(), nat(2));
        assert_eq!(t_sum_over_n(9, 4).unwrap(), nat(252));
        assert_eq!(t_sum_over_n_by_families(9, 4).unwrap(), nat(252));
    }

    #[test]
    fn census_of_four_zeros_three_ones() {
        let census = type_census(fam(4, 3)).unwrap();
        assert_eq!(census.len(), 4);
        let first = &census[0];
        assert_eq!(first.0, SequenceType::new(vec![4], vec![3]).unwrap());
        assert_eq!(first.1, nat(7));
        let counts: Vec<_> = census.iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(counts.iter().sum::<BigNat>(), nat(35));
        let expected = [
            (vec![4], vec![3], 7u64),
            (vec![3, 1], vec![2, 1], 14),
            (vec![2, 2], vec![2, 1], 7),
            (vec![2, 1, 1], vec![1, 1, 1], 7),
        ];
        for (zeros, ones, count) in expected {
            let ty = SequenceType::new(zeros, ones).unwrap();
            let found = census.iter().find(|(t, _)| *t == ty).expect("type present");
            assert_eq!(found.1, nat(count), "{ty}");
        }
    }

    #[test]
    fn census_trivial_and_size() {
        let census = type_census(fam(1, 1)).unwrap();
        assert_eq!(census.len(), 1);
        assert_eq!(census[0].1, nat(2));
        for (m, n) in [(5, 4), (6, 6), (7, 3)] {
            let census = type_census(fam(m, n)).unwrap();
            let types: BigNat = (1..=m.min(n) as u64)
                .map(|h| partition_count(h, m as u64) * partition_count(h, n as u64))
                .sum();
            assert_eq!(BigNat::from(census.len()), types);
            let total: BigNat = census.iter().map(|(_, c)| c.clone()).sum();
            assert_eq!(total, fam(m, n).size());
        }
    }

    #[test]
    fn partitions_enumeration() {
        assert_eq!(partitions(6, 3), vec![vec![4, 1, 1], vec![3, 2, 1], vec![2, 2, 2]]);
        assert_eq!(partitions(7, 2), vec![vec![6, 1], vec![5, 2], vec![4, 3]]);
        assert!(partitions(3, 4).is_empty());
    }

    #[test]
    fn sequence_type_rejects_unequal_heights() {
        assert!(SequenceType::new(vec![2, 1], vec![3]).is_err());
        assert!(SequenceType::new(vec![], vec![]).is_err());
    }
}
