use crate::distribution::{CountDistribution, Scope};
use crate::error::Result;
use crate::exactmath::SequenceFamily;
use crate::pattern::Pattern;
use crate::patterncounts::count_distribution;
use crate::tnumbers::{t_distribution, t_sum_over_n, t_sum_over_n_by_families};

use super::{jump_distribution, pattern_distribution, Execution};

/// A closed form that disagreed with enumeration. `pattern` is `None` for
/// the jump distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepMismatch {
    pub family: SequenceFamily,
    pub pattern: Option<Pattern>,
    pub closed_form: CountDistribution,
    pub oracle: CountDistribution,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SweepReport {
    pub max_len: usize,
    pub max_pattern_len: usize,
    pub families: usize,
    pub distributions_checked: usize,
    pub mismatches: Vec<SweepMismatch>,
    /// `(N, tau)` pairs where the family-by-family jump sum missed `2 C(N, tau)`.
    pub jump_sum_failures: Vec<(usize, usize)>,
    pub jump_sums_checked: usize,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.jump_sum_failures.is_empty()
    }
}

/// Compares every closed form against enumeration: the jump distribution of
/// every family with `2 <= N <= max_len`, and every solved pattern of length
/// up to `max_pattern_len` (and shorter than `N`) on every nondegenerate
/// family. Also checks the jump sum over families for `N <= jump_sum_len`.
pub fn equivalence_sweep(
    max_len: usize,
    max_pattern_len: usize,
    jump_sum_len: usize,
    execution: Execution,
) -> Result<SweepReport> {
    let mut report = SweepReport { max_len, max_pattern_len, ..SweepReport::default() };
    let patterns: Vec<Pattern> = (1..=max_pattern_len)
        .flat_map(Pattern::all_of_length)
        .filter(Pattern::is_solved)
        .collect();
    for len in 1..=max_len {
        for family in SequenceFamily::all_of_length(len) {
            report.families += 1;
            let scope = Scope::Family(family);
            let closed = t_distribution(family)?;
            let oracle = jump_distribution(scope, execution)?;
            report.distributions_checked += 1;
            if closed != oracle {
                report.mismatches.push(SweepMismatch { family, pattern: None, closed_form: closed, oracle });
            }
            if family.is_degenerate() {
                continue;
            }
            for pattern in patterns.iter().filter(|p| p.len() < len) {
                let closed = count_distribution(family, pattern)?;
                let oracle = pattern_distribution(scope, pattern, execution)?;
                report.distributions_checked += 1;
                if closed != oracle {
                    report.mismatches.push(SweepMismatch {
                        family,
                        pattern: Some(pattern.clone()),
                        closed_form: closed,
                        oracle,
                    });
                }
            }
        }
    }
    for len in 2..=jump_sum_len {
        for tau in (2..=len).step_by(2) {
            report.jump_sums_checked += 1;
            if t_sum_over_n_by_families(len, tau)? != t_sum_over_n(len, tau)? {
                report.jump_sum_failures.push((len, tau));
            }
        }
    }
    Ok(report)
}
