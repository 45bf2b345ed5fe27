//! Direct enumeration of Young-De Moivre tableaux (compositions) with
//! column deletion; the ground truth for [`crate::coeffs`].

use std::collections::BTreeMap;

use crate::exactmath::BigNat;

/// Calls `visit` with every composition of `weight` into `parts` positive parts.
pub fn for_each_composition(weight: usize, parts: usize, mut visit: impl FnMut(&[usize])) {
    fn go(weight: usize, parts: usize, prefix: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if parts == 0 {
            if weight == 0 {
                visit(prefix);
            }
            return;
        }
        if weight < parts {
            return;
        }
        for first in 1..=weight - (parts - 1) {
            prefix.push(first);
            go(weight - first, parts - 1, prefix, visit);
            prefix.pop();
        }
    }
    go(weight, parts, &mut Vec::with_capacity(parts), &mut visit);
}

/// Tally of `(dimension, weight)` of what survives after deleting the first
/// `s + 1` columns of every composition of `i` into `j` parts.
pub fn residual_profile(s: usize, i: usize, j: usize) -> BTreeMap<(usize, usize), BigNat> {
    let cut = s + 1;
    let mut tally: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for_each_composition(i, j, |parts| {
        let dimension = parts.iter().filter(|&&p| p > cut).count();
        let weight = parts.iter().map(|&p| p.saturating_sub(cut)).sum();
        *tally.entry((dimension, weight)).or_insert(0) += 1;
    });
    tally.into_iter().map(|(key, count)| (key, BigNat::from(count))).collect()
}

/// Compositions of `i` into `j` parts with exactly `k` parts longer than `s + 1`.
pub fn dimension_count(s: usize, i: usize, j: usize, k: usize) -> BigNat {
    residual_profile(s, i, j)
        .into_iter()
        .filter(|((dimension, _), _)| *dimension == k)
        .map(|(_, count)| count)
        .sum()
}

/// Compositions of `m` into `h` parts whose residual weight after deleting
/// `s + 1` columns is `g`.
pub fn weight_count(s: usize, m: usize, g: usize, h: usize) -> BigNat {
    residual_profile(s, m, h)
        .into_iter()
        .filter(|((_, weight), _)| *weight == g)
        .map(|(_, count)| count)
        .sum()
}

/// Compositions of `m`, of any height, left with weight `g` after deleting
/// `s + 1` columns.
pub fn weight_count_all_heights(s: usize, m: usize, g: usize) -> BigNat {
    (1..=m).map(|h| weight_count(s, m, g, h)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::demoivre;

    #[test]
    fn compositions_are_counted_by_de_moivre() {
        for weight in 0..=9 {
            for parts in 0..=9 {
                let mut count = 0u64;
                for_each_composition(weight, parts, |c| {
                    assert_eq!(c.iter().sum::<usize>(), weight);
                    count += 1;
                });
                assert_eq!(BigNat::from(count), demoivre(parts as u64, weight as u64));
            }
        }
    }

    #[test]
    fn small_profiles() {
        assert_eq!(dimension_count(0, 6, 2, 2), BigNat::from(3u32));
        assert_eq!(dimension_count(0, 6, 3, 2), BigNat::from(6u32));
        assert_eq!(dimension_count(0, 4, 4, 0), BigNat::from(1u32));
        assert_eq!(weight_count(1, 7, 3, 3), BigNat::from(3u32));
        assert_eq!(weight_count(1, 7, 2, 3), BigNat::from(9u32));
        assert_eq!(dimension_count(0, 0, 0, 0), BigNat::from(1u32));
    }
}
