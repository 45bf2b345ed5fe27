//! Arbitrary-precision integer kernel.
//!
//! Every count in the crate is a [`BigNat`]. The functions here are total on
//! their domains: out-of-range binomials vanish instead of failing, because
//! most of the sums elsewhere run their indices past the natural bounds and
//! rely on the vanishing terms.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{CountError, Result};

/// Arbitrary-precision nonnegative integer.
pub type BigNat = BigUint;

/// Binomial coefficient `C(a, b)`; zero when `b < 0` or `b > a`.
pub fn binomial(a: u64, b: i64) -> BigNat {
    if b < 0 || b as u64 > a {
        return BigNat::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigNat::one();
    for step in 1..=b {
        // acc * (a - b + step) is always divisible by step.
        acc *= a - b + step;
        acc /= step;
    }
    acc
}

/// Binomial with a possibly negative top index, which yields zero.
pub(crate) fn choose(a: i64, b: i64) -> BigNat {
    if a < 0 {
        BigNat::zero()
    } else {
        binomial(a as u64, b)
    }
}

/// Falling factorial `(x)_k = x (x-1) ... (x-k+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: u64, k: u64) -> BigNat {
    if k > x {
        return BigNat::zero();
    }
    (0..k).fold(BigNat::one(), |acc, i| acc * (x - i))
}

pub fn factorial(x: u64) -> BigNat {
    falling_factorial(x, x)
}

/// Stirling number of the second kind `S(r, l)`.
///
/// Evaluated through the alternating sum
/// `S(r, l) = (1/l!) * sum_j (-1)^j C(l, j) (l - j)^r`.
pub fn stirling2(r: u64, l: u64) -> BigNat {
    if l > r {
        return BigNat::zero();
    }
    if l == 0 {
        return if r == 0 { BigNat::one() } else { BigNat::zero() };
    }
    let mut sum = BigInt::zero();
    for j in 0..=l {
        let term = BigInt::from(binomial(l, j as i64)) * num_traits::pow(BigInt::from(l - j), r as usize);
        if j.is_odd() {
            sum -= term;
        } else {
            sum += term;
        }
    }
    let (quot, rem) = sum.div_rem(&BigInt::from(factorial(l)));
    debug_assert!(rem.is_zero() && !quot.is_negative());
    quot.to_biguint().expect("stirling numbers are nonnegative")
}

/// De Moivre number `M^h_m`: compositions of `m` into `h` ordered positive parts.
///
/// `M^0_0 = 1` (the empty composition); `M^0_m = 0` for `m > 0`.
pub fn demoivre(h: u64, m: u64) -> BigNat {
    match (h, m) {
        (0, 0) => BigNat::one(),
        (0, _) | (_, 0) => BigNat::zero(),
        _ => binomial(m - 1, h as i64 - 1),
    }
}

/// Number of partitions of `m` into exactly `h` positive parts, order disregarded.
pub fn partition_count(h: u64, m: u64) -> BigNat {
    if h > m {
        return BigNat::zero();
    }
    let (h, m) = (h as usize, m as usize);
    // table[k][w]: partitions of w into exactly k parts, filled by
    // p(k, w) = p(k - 1, w - 1) + p(k, w - k).
    let mut table = vec![vec![BigNat::zero(); m + 1]; h + 1];
    table[0][0] = BigNat::one();
    for k in 1..=h {
        for w in k..=m {
            let mut value = table[k - 1][w - 1].clone();
            value += &table[k][w - k];
            table[k][w] = value;
        }
    }
    std::mem::take(&mut table[h][m])
}

/// Exact quotient; errors if `den` does not divide `num`.
pub(crate) fn exact_div(num: &BigNat, den: &BigNat, what: &str) -> Result<BigNat> {
    let (quot, rem) = num.div_rem(den);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(CountError::Domain(format!("{what}: {num} is not divisible by {den}")))
    }
}

/// Lossy conversion used at the boundary to floating-point code.
pub fn to_f64(value: &BigNat) -> f64 {
    value.to_f64().unwrap_or(f64::INFINITY)
}

/// The pair `(m zeros, n ones)` classifying the `C(m + n, n)` cyclic sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SequenceFamily {
    zeros: usize,
    ones: usize,
}

impl SequenceFamily {
    pub fn new(zeros: usize, ones: usize) -> Result<Self> {
        if zeros + ones == 0 {
            return Err(CountError::EmptyFamily);
        }
        Ok(Self { zeros, ones })
    }

    pub fn zeros(&self) -> usize {
        self.zeros
    }

    pub fn ones(&self) -> usize {
        self.ones
    }

    /// Sequence length `N = m + n`.
    pub fn len(&self) -> usize {
        self.zeros + self.ones
    }

    /// A family is degenerate when it contains a single constant sequence.
    pub fn is_degenerate(&self) -> bool {
        self.zeros == 0 || self.ones == 0
    }

    /// Swap the roles of the digits.
    pub fn complement(&self) -> Self {
        Self { zeros: self.ones, ones: self.zeros }
    }

    /// Number of sequences in the family, `C(N, m)`.
    pub fn size(&self) -> BigNat {
        binomial(self.len() as u64, self.zeros as i64)
    }

    pub(crate) fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(CountError::DegenerateFamily { zeros: self.zeros, ones: self.ones })
        } else {
            Ok(())
        }
    }

    /// Every family of length `len`, ordered by the number of ones.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = SequenceFamily> {
        (0..=len).map(move |ones| SequenceFamily { zeros: len - ones, ones })
    }
}

impl std::fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(m={}, n={})", self.zeros, self.ones)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> BigNat {
        BigNat::from(v)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(7, 3), nat(35));
        assert_eq!(binomial(5, 0), nat(1));
        assert_eq!(binomial(4, 7), nat(0));
        assert_eq!(binomial(0, 0), nat(1));
        assert_eq!(binomial(4, -1), nat(0));
    }

    #[test]
    fn binomial_survives_large_arguments() {
        let expected: BigNat = "98913082887808032681188722800".parse().unwrap();
        assert_eq!(binomial(100, 49), expected);
        // Past the 64-bit range.
        assert!(binomial(70, 35) > BigNat::from(u64::MAX));
    }

    #[test]
    fn choose_vanishes_on_negative_top() {
        assert_eq!(choose(-1, 0), nat(0));
        assert_eq!(choose(-3, 2), nat(0));
        assert_eq!(choose(3, 2), nat(3));
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(3, 2), nat(3));
        assert_eq!(stirling2(5, 2), nat(15));
        for r in 0..10 {
            assert_eq!(stirling2(r, r), nat(1));
        }
        assert_eq!(stirling2(0, 0), nat(1));
        assert_eq!(stirling2(4, 0), nat(0));
        assert_eq!(stirling2(2, 5), nat(0));
    }

    #[test]
    fn demoivre_examples() {
        assert_eq!(demoivre(3, 6), nat(10));
        assert_eq!(demoivre(4, 6), nat(10));
        for m in 1..8 {
            assert_eq!(demoivre(1, m), nat(1));
        }
        assert_eq!(demoivre(0, 0), nat(1));
        assert_eq!(demoivre(0, 3), nat(0));
        assert_eq!(demoivre(3, 0), nat(0));
        assert_eq!(demoivre(5, 3), nat(0));
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_count(3, 6), nat(3));
        assert_eq!(partition_count(2, 7), nat(3));
        for m in 0..10 {
            assert_eq!(partition_count(m, m), nat(1));
        }
        assert_eq!(partition_count(0, 4), nat(0));
        assert_eq!(partition_count(5, 4), nat(0));
    }

    #[test]
    fn family_basics() {
        let family = SequenceFamily::new(3, 4).unwrap();
        assert_eq!(family.len(), 7);
        assert_eq!(family.size(), nat(35));
        assert_eq!(family.complement(), SequenceFamily::new(4, 3).unwrap());
        assert!(!family.is_degenerate());
        assert!(SequenceFamily::new(0, 4).unwrap().is_degenerate());
        assert_eq!(SequenceFamily::new(0, 0), Err(CountError::EmptyFamily));
        assert_eq!(SequenceFamily::all_of_length(3).count(), 4);
    }

    #[test]
    fn exact_div_rejects_remainders() {
        assert_eq!(exact_div(&nat(12), &nat(4), "t").unwrap(), nat(3));
        assert!(exact_div(&nat(13), &nat(4), "t").is_err());
    }
}
