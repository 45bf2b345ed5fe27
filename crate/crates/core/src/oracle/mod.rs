//! Brute-force ground truth.
//!
//! Sequences are `u64` words with digit `alpha_{i+1}` in bit `i`. A family is
//! walked in colex order of its one-positions (Gosper's hack), split into
//! contiguous rank ranges that are tallied independently and merged by exact
//! addition, so the result never depends on the chunking.

mod sweep;
pub mod tableau;

use std::collections::BTreeMap;
use std::hash::Hash;

use num_integer::binomial as binom_u64;
use rayon::prelude::*;

use crate::distribution::{CountDistribution, IndexKind, JointDistribution, Scope};
use crate::error::{CountError, Result};
use crate::exactmath::{BigNat, SequenceFamily};
use crate::pattern::Pattern;
use crate::tnumbers::SequenceType;

pub use sweep::{equivalence_sweep, SweepMismatch, SweepReport};

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "CYCLOSEQ_ORACLE_CAP";
pub const DEFAULT_CAP: usize = 20;
/// Words must fit a machine word.
const HARD_LIMIT: usize = 63;

/// The configured cap on the sequence length.
pub fn oracle_cap() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|value| value.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_CAP)
        .min(HARD_LIMIT)
}

/// How the enumeration is scheduled. Both produce identical tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

/// The per-sequence statistic to tally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reducer {
    /// Number of cyclic jumps.
    Jumps,
    /// Occurrence count of each pattern.
    Occurrences(Vec<Pattern>),
    /// The block-length type; fixed families only.
    Types,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleQuery {
    pub scope: Scope,
    pub reducer: Reducer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutput {
    Single(CountDistribution),
    Joint(JointDistribution),
    Types(BTreeMap<SequenceType, BigNat>),
}

/// Runs a query with the configured cap.
pub fn enumerate(query: &OracleQuery, execution: Execution) -> Result<OracleOutput> {
    enumerate_with_cap(query, execution, oracle_cap())
}

pub fn enumerate_with_cap(query: &OracleQuery, execution: Execution, cap: usize) -> Result<OracleOutput> {
    let len = query.scope.len();
    if len > cap.min(HARD_LIMIT) {
        return Err(CountError::CapExceeded { len, cap: cap.min(HARD_LIMIT) });
    }
    if len == 0 {
        return Err(CountError::EmptyFamily);
    }
    match &query.reducer {
        Reducer::Jumps => {
            let counts = tally(query.scope, execution, |word| jumps(word, len))?;
            Ok(OracleOutput::Single(CountDistribution::new(query.scope, IndexKind::Tau, counts)))
        }
        Reducer::Occurrences(patterns) if patterns.len() == 1 => {
            let pattern = &patterns[0];
            let counts = tally(query.scope, execution, |word| occurrences(word, len, pattern))?;
            Ok(OracleOutput::Single(CountDistribution::new(query.scope, pattern.index_kind(), counts)))
        }
        Reducer::Occurrences(patterns) => {
            let Scope::Family(family) = query.scope else {
                return Err(CountError::Domain("joint tallies need a fixed family".into()));
            };
            let counts = tally(query.scope, execution, |word| {
                patterns.iter().map(|pattern| occurrences(word, len, pattern)).collect::<Vec<_>>()
            })?;
            Ok(OracleOutput::Joint(JointDistribution::new(family, patterns.clone(), counts)))
        }
        Reducer::Types => {
            let Scope::Family(family) = query.scope else {
                return Err(CountError::Domain("type tallies need a fixed family".into()));
            };
            family.require_nondegenerate()?;
            let counts = tally(query.scope, execution, |word| {
                word_type(word, len).expect("nondegenerate words have a type")
            })?;
            Ok(OracleOutput::Types(counts))
        }
    }
}

/// Oracle jump distribution of a family or of all words.
pub fn jump_distribution(scope: Scope, execution: Execution) -> Result<CountDistribution> {
    match enumerate(&OracleQuery { scope, reducer: Reducer::Jumps }, execution)? {
        OracleOutput::Single(dist) => Ok(dist),
        _ => unreachable!("jump reducer yields a single distribution"),
    }
}

/// Oracle occurrence distribution of one pattern.
pub fn pattern_distribution(scope: Scope, pattern: &Pattern, execution: Execution) -> Result<CountDistribution> {
    let query = OracleQuery { scope, reducer: Reducer::Occurrences(vec![pattern.clone()]) };
    match enumerate(&query, execution)? {
        OracleOutput::Single(dist) => Ok(dist),
        _ => unreachable!("one pattern yields a single distribution"),
    }
}

/// Oracle joint distribution of several patterns over a family.
pub fn joint_distribution(family: SequenceFamily, patterns: &[Pattern], execution: Execution) -> Result<JointDistribution> {
    let query = OracleQuery { scope: Scope::Family(family), reducer: Reducer::Occurrences(patterns.to_vec()) };
    match enumerate(&query, execution)? {
        OracleOutput::Joint(joint) => Ok(joint),
        OracleOutput::Single(dist) => {
            let cells = dist.iter().map(|(index, count)| (vec![index], count.clone())).collect();
            Ok(JointDistribution::new(family, patterns.to_vec(), cells))
        }
        OracleOutput::Types(_) => unreachable!("occurrence reducer never yields types"),
    }
}

/// Oracle census of types, ordered like [`crate::tnumbers::type_census`].
pub fn type_tally(family: SequenceFamily, execution: Execution) -> Result<Vec<(SequenceType, BigNat)>> {
    match enumerate(&OracleQuery { scope: Scope::Family(family), reducer: Reducer::Types }, execution)? {
        OracleOutput::Types(map) => {
            let mut census: Vec<_> = map.into_iter().collect();
            census.sort_by(|a, b| (a.0.height(), &a.0).cmp(&(b.0.height(), &b.0)));
            Ok(census)
        }
        _ => unreachable!("type reducer yields types"),
    }
}

/// Visits every word of the scope and returns the exact multiplicity of each
/// key.
pub fn tally<K, F>(scope: Scope, execution: Execution, key: F) -> Result<BTreeMap<K, BigNat>>
where
    K: Ord + Hash + Send,
    F: Fn(u64) -> K + Sync,
{
    let len = scope.len();
    if len == 0 || len > HARD_LIMIT {
        return Err(CountError::CapExceeded { len, cap: HARD_LIMIT });
    }
    let (total, ones) = match scope {
        Scope::Family(family) => (binom_u64(len as u64, family.ones() as u64), Some(family.ones())),
        Scope::AllWords(_) => (1u64 << len, None),
    };
    let chunk = |range: (u64, u64)| -> BTreeMap<K, u64> {
        let mut local = BTreeMap::new();
        match ones {
            Some(ones) => for_each_combination(len, ones, range.0, range.1, |word| {
                *local.entry(key(word)).or_insert(0u64) += 1;
            }),
            None => (range.0..range.1).for_each(|word| *local.entry(key(word)).or_insert(0u64) += 1),
        }
        local
    };
    let merge = |mut a: BTreeMap<K, u64>, b: BTreeMap<K, u64>| {
        for (k, v) in b {
            *a.entry(k).or_insert(0) += v;
        }
        a
    };
    let merged = match execution {
        Execution::Sequential => chunk((0, total)),
        Execution::Parallel => {
            let pieces = (rayon::current_num_threads() as u64 * 8).clamp(1, total.max(1));
            let step = total.div_ceil(pieces).max(1);
            let ranges: Vec<(u64, u64)> =
                (0..total).step_by(step as usize).map(|start| (start, (start + step).min(total))).collect();
            ranges.into_par_iter().map(chunk).reduce(BTreeMap::new, merge)
        }
    };
    Ok(merged.into_iter().map(|(k, v)| (k, BigNat::from(v))).collect())
}

/// The colex-rank `rank` subset of size `ones` from `len` positions.
fn unrank_colex(len: usize, ones: usize, mut rank: u64) -> u64 {
    let mut word = 0u64;
    let mut top = len;
    for k in (1..=ones).rev() {
        // Largest position c with C(c, k) <= rank.
        let mut c = k - 1;
        while c + 1 < top && binom_u64((c + 1) as u64, k as u64) <= rank {
            c += 1;
        }
        rank -= binom_u64(c as u64, k as u64);
        word |= 1 << c;
        top = c;
    }
    word
}

/// Calls `visit` for the combinations of colex rank `start..end`.
fn for_each_combination(len: usize, ones: usize, start: u64, end: u64, mut visit: impl FnMut(u64)) {
    if start >= end {
        return;
    }
    if ones == 0 {
        visit(0);
        return;
    }
    let mut word = unrank_colex(len, ones, start);
    for rank in start..end {
        visit(word);
        if rank + 1 < end {
            // Gosper's hack: next word with the same popcount.
            let low = word & word.wrapping_neg();
            let ripple = word + low;
            word = ripple | (((word ^ ripple) >> 2) / low);
        }
    }
}

fn mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn rotate_right(word: u64, by: usize, len: usize) -> u64 {
    let by = by % len;
    if by == 0 {
        return word;
    }
    ((word >> by) | (word << (len - by))) & mask(len)
}

/// Number of cyclic neighbours with different digits.
pub fn jumps(word: u64, len: usize) -> usize {
    (word ^ rotate_right(word, 1, len)).count_ones() as usize
}

/// Number of starting positions `i` at which `alpha_i, alpha_{i+1}, ...`
/// (indices mod N) spells the pattern, including wraparound windows.
pub fn occurrences(word: u64, len: usize, pattern: &Pattern) -> usize {
    let digits = pattern.digits();
    if digits.len() <= len {
        let width = digits.len();
        let target = digits.iter().enumerate().fold(0u64, |acc, (t, &d)| acc | (u64::from(d) << t));
        let window = mask(width);
        (0..len).filter(|&i| rotate_right(word, i, len) & window == target).count()
    } else {
        (0..len)
            .filter(|&i| digits.iter().enumerate().all(|(t, &d)| (word >> ((i + t) % len)) & 1 == u64::from(d)))
            .count()
    }
}

fn word_type(word: u64, len: usize) -> Result<SequenceType> {
    let digits: Vec<u8> = (0..len).map(|i| ((word >> i) & 1) as u8).collect();
    type_signature(&digits)
}

/// Sorted block lengths of the zero runs and one runs of a cyclic sequence.
pub fn type_signature(sequence: &[u8]) -> Result<SequenceType> {
    let len = sequence.len();
    let Some(start) = (0..len).find(|&i| sequence[i] != sequence[(i + len - 1) % len]) else {
        return Err(CountError::ConstantSequence);
    };
    // Walk from a block boundary so no block wraps.
    let (mut zeros, mut ones) = (Vec::new(), Vec::new());
    let mut run = 0;
    for step in 0..len {
        let digit = sequence[(start + step) % len];
        run += 1;
        if sequence[(start + step + 1) % len] != digit {
            if digit == 0 { zeros.push(run) } else { ones.push(run) }
            run = 0;
        }
    }
    SequenceType::new(zeros, ones)
}

/// Parses a string of `0` and `1` into digits.
pub fn parse_sequence(text: &str) -> Result<Vec<u8>> {
    Ok(text.parse::<Pattern>()?.digits().to_vec())
}
