//! Closed-form occurrence distributions of strings in cyclic sequences.
//!
//! Every formula here runs through the same bijection: a sequence with `h`
//! zero blocks and `h` one blocks is a loop of two compositions of height
//! `h`, and each composition of the ones is shared by `N/n C(n, h)` loops
//! per composition of the zeros. Statistics of the zero blocks are then
//! column-deletion coefficients from [`crate::coeffs`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeffs::{c_general, weight_count};
use crate::distribution::{CountDistribution, JointDistribution, Scope};
use crate::error::{CountError, Result};
use crate::exactmath::{binomial, demoivre, exact_div, BigNat, SequenceFamily};
use crate::pattern::{Pattern, PatternClass};
use crate::tnumbers::t_number;

/// `(N / n) * sum_h zero_statistic(h) C(n, h)`, the division done last.
fn over_heights(family: SequenceFamily, mut zero_statistic: impl FnMut(usize) -> BigNat) -> BigNat {
    let (m, n) = (family.zeros(), family.ones());
    let mut sum = BigNat::zero();
    for h in 1..=m.min(n) {
        let term = zero_statistic(h);
        if !term.is_zero() {
            sum += term * binomial(n as u64, h as i64);
        }
    }
    exact_div(&(sum * family.len()), &BigNat::from(n), "loop count").expect("loop counts are integral")
}

/// Distribution for a solved pattern, without the length check.
fn closed_form(family: SequenceFamily, pattern: &Pattern) -> Result<CountDistribution> {
    family.require_nondegenerate()?;
    let class = pattern.class().ok_or_else(|| CountError::UnsupportedPattern(pattern.to_string()))?;
    let kind = pattern.index_kind();
    let digit = match class {
        PatternClass::Single { digit }
        | PatternClass::Run { digit, .. }
        | PatternClass::RunThenOther { digit, .. }
        | PatternClass::Isolated { digit } => digit,
        PatternClass::Jump => 0,
    };
    if digit == 1 {
        let mirrored = closed_form(family.complement(), &pattern.complement())?;
        let sparse = mirrored.iter().map(|(index, count)| (index, count.clone())).collect();
        return Ok(CountDistribution::new(Scope::Family(family), kind, sparse));
    }
    let (m, n) = (family.zeros(), family.ones());
    let top = m.min(n);
    let sparse: BTreeMap<usize, BigNat> = match class {
        PatternClass::Single { .. } => BTreeMap::from([(m, family.size())]),
        PatternClass::Jump => (1..=top).map(|h| Ok((h, t_number(family, 2 * h)?))).collect::<Result<_>>()?,
        PatternClass::Run { run, .. } => (0..m)
            .into_par_iter()
            .map(|g| (g, over_heights(family, |h| weight_count(run - 2, m, g, h))))
            .collect(),
        PatternClass::RunThenOther { run, .. } => (0..=m / run)
            .into_par_iter()
            .map(|l| (l, over_heights(family, |h| c_general(run - 2, m, h, l))))
            .collect(),
        PatternClass::Isolated { .. } => (0..=top)
            .into_par_iter()
            .map(|l| (l, over_heights(family, |h| if l > h { BigNat::zero() } else { c_general(0, m, h, h - l) })))
            .collect(),
    };
    Ok(CountDistribution::new(Scope::Family(family), kind, sparse))
}

fn check_length(family: SequenceFamily, pattern: &Pattern) -> Result<()> {
    if pattern.len() >= family.len() {
        return Err(CountError::PatternTooLong { pattern: pattern.to_string(), len: family.len() });
    }
    Ok(())
}

/// Full occurrence distribution of `pattern` over `family`.
///
/// Run patterns (`00`, `111`, ...) are indexed by residual weight, which for
/// them equals the occurrence count.
pub fn count_distribution(family: SequenceFamily, pattern: &Pattern) -> Result<CountDistribution> {
    if !pattern.is_solved() {
        return Err(CountError::UnsupportedPattern(pattern.to_string()));
    }
    family.require_nondegenerate()?;
    check_length(family, pattern)?;
    closed_form(family, pattern)
}

/// Number of sequences of `family` containing `pattern` exactly `h` times.
pub fn count_pattern(family: SequenceFamily, pattern: &Pattern, h: usize) -> Result<BigNat> {
    Ok(count_distribution(family, pattern)?.get(h))
}

fn require_fits(family: SequenceFamily, patterns: &[Pattern]) -> Result<()> {
    family.require_nondegenerate()?;
    patterns.iter().try_for_each(|pattern| check_length(family, pattern))
}

fn patterns(texts: &[&str]) -> Vec<Pattern> {
    texts.iter().map(|text| text.parse().expect("literal pattern")).collect()
}

/// Joint distribution of the `01` count `h` and the `001` count `l`.
pub fn joint_01_001(family: SequenceFamily) -> Result<JointDistribution> {
    let pats = patterns(&["01", "001"]);
    require_fits(family, &pats)?;
    let (m, n) = (family.zeros(), family.ones());
    let mut cells = BTreeMap::new();
    for h in 1..=m.min(n) {
        for l in 0..=h {
            let count = over_single_height(family, h, c_general(0, m, h, l));
            cells.insert(vec![h, l], count);
        }
    }
    Ok(JointDistribution::new(family, pats, cells))
}

/// Joint distribution of the `01` count `h` and the `101` count `l`.
pub fn joint_01_101(family: SequenceFamily) -> Result<JointDistribution> {
    let pats = patterns(&["01", "101"]);
    require_fits(family, &pats)?;
    let (m, n) = (family.zeros(), family.ones());
    let mut cells = BTreeMap::new();
    for h in 1..=m.min(n) {
        for l in 0..=h {
            let count = over_single_height(family, h, c_general(0, m, h, h - l));
            cells.insert(vec![h, l], count);
        }
    }
    Ok(JointDistribution::new(family, pats, cells))
}

/// Joint distribution of the counts of `01`, `001` and `0001`, indexed
/// `(h, l', l)`.
///
/// A cell is `N/n C(h,l) C(h-l, l'-l) M^l_{m-h-l'} C(n,h)`; at `l = 0` only
/// `l' = m - h` survives, giving `N/n C(n, m-h) C(n-m+h, 2h-m)`.
pub fn triple_01_001_0001(family: SequenceFamily) -> Result<JointDistribution> {
    let pats = patterns(&["01", "001", "0001"]);
    require_fits(family, &pats)?;
    let (m, n) = (family.zeros(), family.ones());
    let mut cells = BTreeMap::new();
    for h in 1..=m.min(n) {
        for l2 in 0..=h.min(m - h) {
            for l3 in 0..=l2 {
                let zeros = binomial(h as u64, l3 as i64)
                    * binomial((h - l3) as u64, (l2 - l3) as i64)
                    * demoivre(l3 as u64, (m - h - l2) as u64);
                cells.insert(vec![h, l2, l3], over_single_height(family, h, zeros));
            }
        }
    }
    Ok(JointDistribution::new(family, pats, cells))
}

fn over_single_height(family: SequenceFamily, h: usize, zero_statistic: BigNat) -> BigNat {
    let n = family.ones();
    let numerator = zero_statistic * binomial(n as u64, h as i64) * family.len();
    exact_div(&numerator, &BigNat::from(n), "loop count").expect("loop counts are integral")
}

/// Cyclic selections of `n` out of `len` points in which consecutive chosen
/// points have at least `p - 1` unchosen points between them:
/// `len / (len - q n) C(len - q n, n)` with `q = p - 1`.
///
/// `p = 0` imposes nothing, like `p = 1`.
pub fn kaplansky(len: usize, n: usize, p: usize) -> BigNat {
    if n == 0 {
        return BigNat::one();
    }
    let gap = p.saturating_sub(1);
    let Some(free) = len.checked_sub(gap * n) else {
        return BigNat::zero();
    };
    if free < n {
        return BigNat::zero();
    }
    let numerator = BigNat::from(len) * binomial(free as u64, n as i64);
    exact_div(&numerator, &BigNat::from(free), "selection count").expect("integral by rotation")
}

/// Nonempty subsets of `Z_len` containing exactly `h` cyclic runs of `r`
/// consecutive elements, i.e. words with exactly `h` occurrences of `1^r`.
pub fn fibonacci_gf(len: usize, r: usize, h: usize) -> Result<BigNat> {
    if len == 0 || r == 0 {
        return Err(CountError::Domain(format!("need N >= 1 and r >= 1, got N = {len}, r = {r}")));
    }
    // The full set contains every one of the len windows.
    let full = BigNat::from(u8::from(h == len));
    if r >= len {
        let partial = if h == 0 { (BigNat::one() << len) - 2u32 } else { BigNat::zero() };
        return Ok(partial + full);
    }
    let run = Pattern::new(vec![1; r])?;
    let mut total = full;
    for ones in 1..len {
        total += closed_form(SequenceFamily::new(len - ones, ones)?, &run)?.get(h);
    }
    Ok(total)
}

/// Number of all `2^N` words of length `len` with exactly `l` occurrences
/// of `001`.
pub fn all_sequences_001(len: usize, l: usize) -> Result<BigNat> {
    if len < 3 {
        return Err(CountError::Domain(format!("need N >= 3, got {len}")));
    }
    let pattern: Pattern = "001".parse()?;
    // Both constant words contain no 001.
    let mut total = BigNat::from(if l == 0 { 2u32 } else { 0 });
    for ones in 1..len {
        total += closed_form(SequenceFamily::new(len - ones, ones)?, &pattern)?.get(l);
    }
    Ok(total)
}

/// The same count through the double binomial sum
/// `(N/l) sum_m C(N-m-1, l-1) sum_h C(m-h-1, l-1) C(N-m-l, h-l)`, valid for
/// `l >= 1`.
pub fn all_sequences_001_binomial(len: usize, l: usize) -> Result<BigNat> {
    if l == 0 {
        return Err(CountError::Domain("the binomial form needs l >= 1".into()));
    }
    let mut sum = BigNat::zero();
    for m in 1..len {
        let ones = len - m;
        let outer = binomial((ones - 1) as u64, l as i64 - 1);
        if outer.is_zero() {
            continue;
        }
        let mut inner = BigNat::zero();
        for h in l..m {
            inner += binomial((m - h - 1) as u64, l as i64 - 1)
                * crate::exactmath::choose(ones as i64 - l as i64, h as i64 - l as i64);
        }
        sum += outer * inner;
    }
    exact_div(&(sum * len), &BigNat::from(l), "001 word count")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(m: usize, n: usize) -> SequenceFamily {
        SequenceFamily::new(m, n).unwrap()
    }

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn nat(v: u64) -> BigNat {
        BigNat::from(v)
    }

    fn values(dist: &CountDistribution) -> Vec<u64> {
        dist.iter().map(|(_, c)| c.try_into().unwrap()).collect()
    }

    #[test]
    fn five_three_examples() {
        assert_eq!(count_pattern(fam(5, 3), &p("111"), 0).unwrap(), nat(48));
        assert_eq!(count_pattern(fam(5, 3), &p("001"), 1).unwrap(), nat(32));
        assert_eq!(count_pattern(fam(5, 3), &p("000"), 3).unwrap(), nat(8));
        assert_eq!(values(&count_distribution(fam(5, 3), &p("000")).unwrap()), vec![8, 24, 16, 8]);
        assert_eq!(values(&count_distribution(fam(5, 3), &p("010")).unwrap()), vec![8, 32, 0, 16]);
        assert_eq!(count_pattern(fam(4, 4), &p("001"), 0).unwrap(), nat(2));
    }

    #[test]
    fn jumps_and_pairs() {
        for (m, n) in [(3, 4), (5, 5), (2, 7)] {
            for h in 0..6 {
                let t = if h == 0 { nat(0) } else { t_number(fam(m, n), 2 * h).unwrap() };
                assert_eq!(count_pattern(fam(m, n), &p("01"), h).unwrap(), t);
                assert_eq!(count_pattern(fam(m, n), &p("10"), h).unwrap(), t);
                let pairs = if h >= m { nat(0) } else { t_number(fam(m, n), 2 * (m - h)).unwrap() };
                assert_eq!(count_pattern(fam(m, n), &p("00"), h).unwrap(), pairs, "({m},{n}) h={h}");
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            count_pattern(fam(5, 3), &p("0110"), 0),
            Err(CountError::UnsupportedPattern("0110".into()))
        );
        assert!(matches!(count_pattern(fam(0, 3), &p("01"), 0), Err(CountError::DegenerateFamily { .. })));
        assert!(matches!(count_pattern(fam(1, 2), &p("001"), 0), Err(CountError::PatternTooLong { .. })));
        assert!(matches!(joint_01_101(fam(1, 1)), Err(CountError::PatternTooLong { .. })));
    }

    #[test]
    fn joint_four_four() {
        let joint = joint_01_001(fam(4, 4)).unwrap();
        let expected = [((1, 1), 8u64), ((2, 1), 24), ((2, 2), 12), ((3, 1), 24), ((4, 0), 2)];
        assert_eq!(joint.entries().len(), expected.len());
        for ((h, l), v) in expected {
            assert_eq!(joint.get(&[h, l]), nat(v));
        }
        assert_eq!(values(&joint.marginal(1)), vec![2, 56, 12]);
        assert_eq!(values(&joint.marginal(0)), vec![0, 8, 36, 24, 2]);
    }

    #[test]
    fn joint_marginals_match_single_patterns() {
        for (m, n) in [(5, 3), (3, 5), (6, 6), (7, 2)] {
            let f = fam(m, n);
            let joint = joint_01_101(f).unwrap();
            assert!(joint.marginal(1).same_counts(&count_distribution(f, &p("101")).unwrap()));
            let triple = triple_01_001_0001(f).unwrap();
            assert_eq!(triple.sum_out(2), joint_01_001(f).unwrap());
            assert!(triple.marginal(2).same_counts(&count_distribution(f, &p("0001")).unwrap()));
            assert_eq!(triple.total(), f.size());
        }
        let joint = joint_01_101(fam(5, 3)).unwrap();
        assert_eq!(values(&joint.marginal(1)), vec![24, 24, 8]);
    }

    #[test]
    fn kaplansky_examples() {
        assert_eq!(kaplansky(6, 2, 2), nat(9));
        assert_eq!(kaplansky(9, 1, 4), nat(9));
        assert_eq!(kaplansky(5, 2, 3), nat(0));
        assert_eq!(kaplansky(6, 2, 3), nat(3));
        assert_eq!(kaplansky(7, 0, 3), nat(1));
        assert_eq!(kaplansky(5, 3, 1), binomial(5, 3));
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci_gf(4, 2, 2).unwrap(), nat(4));
        assert_eq!(fibonacci_gf(5, 3, 0).unwrap(), nat(20));
        assert_eq!(fibonacci_gf(4, 2, 0).unwrap(), nat(6));
        for len in 3..=14usize {
            let total: BigNat = (0..=len).map(|h| fibonacci_gf(len, 2, h).unwrap()).sum();
            assert_eq!(total, (BigNat::one() << len) - 1u32);
            // Nonempty independent sets of the cycle.
            let independent: BigNat = (1..=len / 2).map(|n| kaplansky(len, n, 2)).sum();
            assert_eq!(fibonacci_gf(len, 2, 0).unwrap(), independent, "N={len}");
        }
        assert_eq!(fibonacci_gf(3, 5, 0).unwrap(), nat(6));
        assert_eq!(fibonacci_gf(3, 5, 3).unwrap(), nat(1));
    }

    #[test]
    fn all_words_001() {
        for len in 3..=14 {
            let total: BigNat = (0..=len).map(|l| all_sequences_001(len, l).unwrap()).sum();
            assert_eq!(total, BigNat::one() << len);
            assert!(all_sequences_001(len, len / 3 + 1).unwrap().is_zero());
            for l in 1..=len / 3 {
                assert_eq!(all_sequences_001(len, l).unwrap(), all_sequences_001_binomial(len, l).unwrap());
            }
        }
    }
}
