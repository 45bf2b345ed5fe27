//! Moments of the jump distribution and floating-point approximations.
//!
//! Exact paths return integers or rationals; only the functions returning
//! [`ApproxValue`] touch floating point.

use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::error::{CountError, Result};
use crate::exactmath::{binomial, falling_factorial, stirling2, to_f64, BigNat, SequenceFamily};

/// A finite floating-point approximation tagged with the formula behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxValue {
    pub value: f64,
    pub context: &'static str,
}

impl ApproxValue {
    fn new(value: f64, context: &'static str) -> Result<Self> {
        if value.is_finite() {
            Ok(Self { value, context })
        } else {
            Err(CountError::Domain(format!("{context}: value {value} is not finite")))
        }
    }
}

/// The constant `a = -1/2 + ln 2` of the jump asymptotics.
pub const ASYMPTOTIC_A: f64 = LN_2 - 0.5;

/// `sum_h h^r C(m,h) C(n,h)`: the `r`-th moment of `h = tau/2`, times `C(N, m)`.
pub fn moment_exact(m: usize, n: usize, r: u32) -> BigNat {
    (0..=m.min(n))
        .map(|h| Pow::pow(BigNat::from(h), r) * binomial(m as u64, h as i64) * binomial(n as u64, h as i64))
        .sum()
}

/// [`moment_exact`] divided by `C(N, m)`.
pub fn normalized_moment(m: usize, n: usize, r: u32) -> BigRational {
    BigRational::new(
        BigInt::from(moment_exact(m, n, r)),
        BigInt::from(binomial((m + n) as u64, m as i64)),
    )
}

fn rational(num: BigNat, den: BigNat) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Closed forms of the low moments: `C(N,m)`, `(mn/N) C(N,m)`,
/// `m^2 n^2 / (N (N-1)) C(N,m)` and, for `m = n`, `m^3 (m+1) / (4 (2m-1)) C(2m,m)`.
pub fn moment_closed_form(m: usize, n: usize, r: u32) -> Option<BigRational> {
    let len = m + n;
    let size = binomial(len as u64, m as i64);
    let (mb, nb) = (BigNat::from(m), BigNat::from(n));
    match r {
        0 => Some(rational(size, BigNat::from(1u32))),
        1 if len > 0 => Some(rational(&mb * &nb * size, BigNat::from(len))),
        2 if len > 1 => Some(rational(
            Pow::pow(&mb, 2u32) * Pow::pow(&nb, 2u32) * size,
            BigNat::from(len * (len - 1)),
        )),
        3 if m == n && m > 0 => Some(rational(
            Pow::pow(&mb, 3u32) * (m + 1) * size,
            BigNat::from(4 * (2 * m - 1)),
        )),
        _ => None,
    }
}

/// The Stirling-number expansion of the `r`-th moment:
/// `C(N,m) m^2 n^2 / (2^{r-2} N (N-1)) sum_{l=1}^{r-1} S(r-1, l) A^l`, with
/// `A^1 = 1` and `A^l = (2mn/N)^{l-1} (N-2)_{l-2} / (N-1)^{l-2}`.
///
/// Orders 0 and 1 return the exact moments.
pub fn moment_approx(m: usize, n: usize, r: u32) -> Result<ApproxValue> {
    const CONTEXT: &str = "stirling moment expansion";
    let len = m + n;
    if len < 2 {
        return Err(CountError::Domain(format!("moment expansion needs N >= 2, got {len}")));
    }
    let size = to_f64(&binomial(len as u64, m as i64));
    let (mf, nf, nn) = (m as f64, n as f64, len as f64);
    if r <= 1 {
        let exact = moment_closed_form(m, n, r).expect("orders 0 and 1 have closed forms");
        return ApproxValue::new(rational_to_f64(&exact), CONTEXT);
    }
    let ratio = 2.0 * mf * nf / nn;
    let mut sum = 0.0;
    for l in 1..r as u64 {
        let a = if l == 1 {
            1.0
        } else {
            ratio.powi(l as i32 - 1) * to_f64(&falling_factorial(len as u64 - 2, l - 2))
                / (nn - 1.0).powi(l as i32 - 2)
        };
        sum += to_f64(&stirling2(r as u64 - 1, l)) * a;
    }
    let prefactor = size * mf * mf * nf * nf / (2f64.powi(r as i32 - 2) * nn * (nn - 1.0));
    ApproxValue::new(prefactor * sum, CONTEXT)
}

pub fn rational_to_f64(value: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

/// The binomial model of the jump count:
/// `2 C(N, tau) p^tau (1-p)^{N-tau}` with `p = 2mn / (N (N-1))`.
pub fn binomial_jump_pmf(family: SequenceFamily, tau: usize) -> Result<ApproxValue> {
    let len = family.len();
    if tau % 2 == 1 {
        return Err(CountError::InvalidTau(tau));
    }
    if len < 2 || tau > len {
        return Err(CountError::Domain(format!("need N >= 2 and tau <= N, got N = {len}, tau = {tau}")));
    }
    let p = 2.0 * (family.zeros() * family.ones()) as f64 / (len * (len - 1)) as f64;
    let value = 2.0 * to_f64(&binomial(len as u64, tau as i64)) * p.powi(tau as i32) * (1.0 - p).powi((len - tau) as i32);
    ApproxValue::new(value, "binomial jump model")
}

/// Gaussian approximation of a binomial: `2^{m+1} e^{-(2h-m)^2 / (2m)} / sqrt(2 pi m)`.
pub fn stirling_binomial(m: usize, h: f64) -> Result<ApproxValue> {
    if m == 0 {
        return Err(CountError::Domain("needs m >= 1".into()));
    }
    let mf = m as f64;
    let value = 2f64.powf(mf + 1.0) * (-(2.0 * h - mf).powi(2) / (2.0 * mf)).exp() / (2.0 * PI * mf).sqrt();
    ApproxValue::new(value, "gaussian binomial")
}

/// Harmonic mean `mu` with `1/mu = 1/m + 1/n`.
pub fn harmonic_mean(family: SequenceFamily) -> Result<f64> {
    family.require_nondegenerate()?;
    let (m, n) = (family.zeros() as f64, family.ones() as f64);
    Ok(m * n / (m + n))
}

/// Large-family approximation of the jump numbers:
/// `tau e^{-tau^2/(2 mu) + 2 tau + a N} / (pi mu^{3/2} sqrt(N))`.
pub fn t_asymptotic(family: SequenceFamily, tau: f64) -> Result<ApproxValue> {
    let mu = harmonic_mean(family)?;
    let nn = family.len() as f64;
    let exponent = -tau * tau / (2.0 * mu) + 2.0 * tau + ASYMPTOTIC_A * nn;
    ApproxValue::new(tau * exponent.exp() / (PI * mu.powf(1.5) * nn.sqrt()), "jump asymptotics")
}

/// The asymptotic curve as a function of `h = tau/2`, sampled on `[from, to]`.
pub fn t_asymptotic_curve(family: SequenceFamily, from: f64, to: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    if step.is_nan() || step <= 0.0 || to.is_nan() || from.is_nan() || to < from {
        return Err(CountError::Domain(format!("bad sweep range {from}..{to} by {step}")));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize;
    (0..=count)
        .map(|i| {
            let h = from + i as f64 * step;
            Ok((h, t_asymptotic(family, 2.0 * h)?.value))
        })
        .collect()
}

/// Gaussian approximation of `2 C(N, tau)`, the number of all words with
/// `tau` jumps: `2^{N+2} / sqrt(2 pi N) e^{-(2 tau - N)^2 / (2N)}`.
pub fn allwords_jump_gaussian(len: usize, tau: f64) -> Result<ApproxValue> {
    if len == 0 {
        return Err(CountError::EmptyFamily);
    }
    let nn = len as f64;
    let value = 2f64.powf(nn + 2.0) / (2.0 * PI * nn).sqrt() * (-(2.0 * tau - nn).powi(2) / (2.0 * nn)).exp();
    ApproxValue::new(value, "all-words gaussian")
}

/// Wallis partial products `pi_2 = 4`, `pi_{N+2} = pi_N N (N+2) / (N+1)^2`,
/// for even `N` up to `last`.
pub fn wallis_sequence(last: usize) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    let mut value = 4.0;
    let mut n = 2;
    while n <= last {
        out.push((n, value));
        let nf = n as f64;
        value *= nf * (nf + 2.0) / ((nf + 1.0) * (nf + 1.0));
        n += 2;
    }
    out
}

/// Normalized exact and approximate moments side by side.
pub fn moment_pair(m: usize, n: usize, r: u32) -> Result<(f64, f64)> {
    let exact = rational_to_f64(&normalized_moment(m, n, r));
    let size = to_f64(&binomial((m + n) as u64, m as i64));
    let approx = moment_approx(m, n, r)?.value / size;
    Ok((exact, approx))
}

/// A number quoted in the text next to the value its formula produces.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotedValue {
    pub label: String,
    pub printed: f64,
    pub computed: f64,
    pub tolerance: f64,
}

impl QuotedValue {
    pub fn holds(&self) -> bool {
        (self.printed - self.computed).abs() <= self.tolerance
    }
}

const TABLE3_BINOMIAL: [f64; 6] = [0.15, 10.66, 77.71, 121.42, 40.65, 1.46];
const TABLE4_ASYMPTOTIC: [f64; 6] = [8.62, 80.40, 127.95, 34.44, 1.76, 0.02];

/// The moment approximations quoted for the jump distribution, each side
/// normalized by `C(N, m)` except the `m = 4, n = 2` pair, which is quoted
/// unnormalized with prefactor `C(N, m ^ n)`.
pub fn quoted_moments() -> Result<Vec<QuotedValue>> {
    let mut out = Vec::new();
    let mut pair = |m: usize, r: u32, exact: f64, approx: f64| -> Result<()> {
        let (e, a) = moment_pair(m, m, r)?;
        out.push(QuotedValue { label: format!("m={m} r={r} exact"), printed: exact, computed: e, tolerance: 0.01 });
        out.push(QuotedValue { label: format!("m={m} r={r} approx"), printed: approx, computed: a, tolerance: 0.01 });
        Ok(())
    };
    pair(2, 4, 30.0 / 9.0, 29.0 / 9.0)?;
    pair(3, 4, 11.70, 11.61)?;
    pair(10, 4, 827.40, 827.22)?;
    pair(15, 4, 3829.74, 3829.48)?;
    pair(10, 5, 4895.51, 4891.65)?;
    out.push(QuotedValue {
        label: "m=4 n=2 r=3 exact".into(),
        printed: 56.0,
        computed: to_f64(&moment_exact(4, 2, 3)),
        tolerance: 0.01,
    });
    let scale = to_f64(&binomial(6, 2)) / to_f64(&binomial(6, 4));
    out.push(QuotedValue {
        label: "m=4 n=2 r=3 approx".into(),
        printed: 58.67,
        computed: moment_approx(4, 2, 3)?.value * scale,
        tolerance: 0.01,
    });
    Ok(out)
}

/// The binomial-model row for five zeros and five ones, scaled by `C(10, 5)`.
pub fn quoted_binomial_row() -> Result<Vec<QuotedValue>> {
    let family = SequenceFamily::new(5, 5)?;
    TABLE3_BINOMIAL
        .iter()
        .enumerate()
        .map(|(i, &printed)| {
            let tau = 2 * i;
            Ok(QuotedValue {
                label: format!("binomial tau={tau}"),
                printed,
                computed: binomial_jump_pmf(family, tau)?.value * 252.0,
                tolerance: 0.01,
            })
        })
        .collect()
}

/// The asymptotic row for five zeros and five ones.
pub fn quoted_asymptotic_row() -> Result<Vec<QuotedValue>> {
    let family = SequenceFamily::new(5, 5)?;
    TABLE4_ASYMPTOTIC
        .iter()
        .enumerate()
        .map(|(i, &printed)| {
            let tau = 2 * (i + 1);
            Ok(QuotedValue {
                label: format!("asymptotic tau={tau}"),
                printed,
                computed: t_asymptotic(family, tau as f64)?.value,
                tolerance: 0.01,
            })
        })
        .collect()
}
