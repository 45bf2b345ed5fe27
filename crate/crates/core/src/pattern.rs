use std::fmt;
use std::str::FromStr;

use crate::distribution::IndexKind;
use crate::error::CountError;

/// An ordered binary string searched cyclically inside sequences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    digits: Vec<u8>,
}

/// The string families with a closed-form occurrence distribution, written
/// in terms of the digit `d` that plays the role of zero. When `d` is 1 the
/// count is taken over the complementary family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternClass {
    /// A single digit `d`; every sequence contains it exactly `count(d)` times.
    Single { digit: u8 },
    /// `01` or `10`: half the jump count.
    Jump,
    /// `d^run` with `run >= 2`.
    Run { digit: u8, run: usize },
    /// `d^run e` or `e d^run` with `run >= 2`, `e` the other digit.
    RunThenOther { digit: u8, run: usize },
    /// `e d e`: an isolated `d`.
    Isolated { digit: u8 },
}

impl Pattern {
    pub fn new(digits: Vec<u8>) -> Result<Self, CountError> {
        if digits.is_empty() || digits.iter().any(|&d| d > 1) {
            let text: String = digits.iter().map(|d| d.to_string()).collect();
            return Err(CountError::InvalidPattern(text));
        }
        Ok(Self { digits })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// Interchange zeros and ones.
    pub fn complement(&self) -> Pattern {
        Pattern { digits: self.digits.iter().map(|d| 1 - d).collect() }
    }

    /// Number of zeros `r` and ones `s` in the pattern.
    pub fn digit_counts(&self) -> (usize, usize) {
        let ones = self.digits.iter().filter(|&&d| d == 1).count();
        (self.digits.len() - ones, ones)
    }

    /// Classify against the solved families; `None` means oracle only.
    pub fn class(&self) -> Option<PatternClass> {
        let d = &self.digits;
        let len = d.len();
        if len == 1 {
            return Some(PatternClass::Single { digit: d[0] });
        }
        if len == 2 && d[0] != d[1] {
            return Some(PatternClass::Jump);
        }
        if d.iter().all(|&x| x == d[0]) {
            return Some(PatternClass::Run { digit: d[0], run: len });
        }
        let head = d[0];
        if d[..len - 1].iter().all(|&x| x == head) && d[len - 1] != head {
            return Some(PatternClass::RunThenOther { digit: head, run: len - 1 });
        }
        let tail = d[len - 1];
        if d[1..].iter().all(|&x| x == tail) && d[0] != tail {
            return Some(PatternClass::RunThenOther { digit: tail, run: len - 1 });
        }
        if len == 3 && d[0] == d[2] && d[1] != d[0] {
            return Some(PatternClass::Isolated { digit: d[1] });
        }
        None
    }

    pub fn is_solved(&self) -> bool {
        self.class().is_some()
    }

    /// Run patterns are indexed by remaining weight, everything else by
    /// plain occurrence count.
    pub fn index_kind(&self) -> IndexKind {
        match self.class() {
            Some(PatternClass::Run { .. }) => IndexKind::Weight,
            _ => IndexKind::Occurrences,
        }
    }

    /// Every binary pattern of the given length, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Pattern> {
        (0..1u64 << len).map(move |bits| Pattern {
            digits: (0..len).rev().map(|i| ((bits >> i) & 1) as u8).collect(),
        })
    }
}

impl FromStr for Pattern {
    type Err = CountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(CountError::InvalidPattern(s.to_string())),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if digits.is_empty() {
            return Err(CountError::InvalidPattern(s.to_string()));
        }
        Ok(Pattern { digits })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("0110").to_string(), "0110");
        assert!("".parse::<Pattern>().is_err());
        assert!("012".parse::<Pattern>().is_err());
        assert_eq!(p("0011").digit_counts(), (2, 2));
        assert_eq!(p("001").complement(), p("110"));
    }

    #[test]
    fn classification() {
        use PatternClass::*;
        assert_eq!(p("1").class(), Some(Single { digit: 1 }));
        assert_eq!(p("10").class(), Some(Jump));
        assert_eq!(p("00").class(), Some(Run { digit: 0, run: 2 }));
        assert_eq!(p("1111").class(), Some(Run { digit: 1, run: 4 }));
        assert_eq!(p("001").class(), Some(RunThenOther { digit: 0, run: 2 }));
        assert_eq!(p("100").class(), Some(RunThenOther { digit: 0, run: 2 }));
        assert_eq!(p("0111").class(), Some(RunThenOther { digit: 1, run: 3 }));
        assert_eq!(p("1110").class(), Some(RunThenOther { digit: 1, run: 3 }));
        assert_eq!(p("101").class(), Some(Isolated { digit: 0 }));
        assert_eq!(p("010").class(), Some(Isolated { digit: 1 }));
        for unsolved in ["0110", "0101", "0010", "0100", "1001", "0011"] {
            assert_eq!(p(unsolved).class(), None, "{unsolved}");
        }
    }

    #[test]
    fn all_length_three_patterns_are_solved() {
        assert_eq!(Pattern::all_of_length(3).count(), 8);
        assert!(Pattern::all_of_length(3).all(|u| u.is_solved()));
        assert_eq!(Pattern::all_of_length(4).filter(|u| u.is_solved()).count(), 6);
    }
}
