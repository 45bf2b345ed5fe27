//! Ring Ising partition functions and the persistent-walk weight polynomial,
//! both contractions of the exact jump numbers with real weights.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::analytics::rational_to_f64;
use crate::distribution::Scope;
use crate::error::{CountError, Result};
use crate::exactmath::{binomial, to_f64, BigNat, SequenceFamily};
use crate::oracle::{self, Execution};
use crate::tnumbers::t_distribution;

/// `N` spins on a ring with dimensionless coupling `nu = J / kT`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsingParams {
    len: usize,
    nu: f64,
}

impl IsingParams {
    pub fn new(len: usize, nu: f64) -> Result<Self> {
        if len == 0 {
            return Err(CountError::EmptyFamily);
        }
        if !nu.is_finite() {
            return Err(CountError::Domain(format!("coupling {nu} is not finite")));
        }
        Ok(Self { len, nu })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

/// Sum in a fixed pairwise tree so the result does not depend on how the
/// terms were produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        len => {
            let (left, right) = values.split_at(len / 2);
            pairwise_sum(left) + pairwise_sum(right)
        }
    }
}

/// `Z = sum_tau T^{N-n,n}_tau e^{(N - 2 tau) nu}` over configurations with
/// `n` up spins; the energy of a ring with `tau` unlike bonds is `J (2 tau - N)`.
pub fn ising_partition_fixed(params: IsingParams, n: usize) -> Result<f64> {
    let len = params.len;
    if n > len {
        return Err(CountError::Domain(format!("n = {n} exceeds N = {len}")));
    }
    let family = SequenceFamily::new(len - n, n)?;
    family.require_nondegenerate()?;
    let dist = t_distribution(family)?;
    let terms: Vec<f64> = dist
        .iter()
        .map(|(tau, count)| to_f64(count) * ((len as f64 - 2.0 * tau as f64) * params.nu).exp())
        .collect();
    Ok(pairwise_sum(&terms))
}

/// `(2 cosh nu)^N + (2 sinh nu)^N`.
pub fn ising_partition_total(params: IsingParams) -> f64 {
    let n = params.len as i32;
    (2.0 * params.nu.cosh()).powi(n) + (2.0 * params.nu.sinh()).powi(n)
}

/// The total assembled family by family, plus the two aligned rings.
pub fn ising_partition_by_families(params: IsingParams) -> Result<f64> {
    let len = params.len;
    let mut terms: Vec<f64> = (1..len).map(|n| ising_partition_fixed(params, n)).collect::<Result<_>>()?;
    terms.push(2.0 * (len as f64 * params.nu).exp());
    Ok(pairwise_sum(&terms))
}

/// Boltzmann sum over all `2^N` rings, enumerated by the oracle.
pub fn ising_partition_brute_force(params: IsingParams, execution: Execution) -> Result<f64> {
    let len = params.len;
    let cap = oracle::oracle_cap();
    if len > cap {
        return Err(CountError::CapExceeded { len, cap });
    }
    let tally = oracle::tally(Scope::AllWords(len), execution, |word| oracle::jumps(word, len))?;
    let terms: Vec<f64> = tally
        .iter()
        .map(|(tau, count)| to_f64(count) * ((len as f64 - 2.0 * *tau as f64) * params.nu).exp())
        .collect();
    Ok(pairwise_sum(&terms))
}

/// Integer coefficients `d_tau` of `Z - (2 cosh nu)^N = sum_tau d_tau e^{(N - 2 tau) nu}`:
/// the oracle's ring count with `tau` unlike bonds minus `C(N, tau)`.
pub fn cosh_only_deficit_coefficients(len: usize, execution: Execution) -> Result<Vec<(usize, BigInt)>> {
    let cap = oracle::oracle_cap();
    if len > cap {
        return Err(CountError::CapExceeded { len, cap });
    }
    let tally = oracle::tally(Scope::AllWords(len), execution, |word| oracle::jumps(word, len))?;
    Ok((0..=len)
        .map(|tau| {
            let rings = BigInt::from(tally.get(&tau).cloned().unwrap_or_default());
            (tau, rings - BigInt::from(binomial(len as u64, tau as i64)))
        })
        .collect())
}

const DEFICIT_BITS: usize = 320;

/// `e^x` as a fixed-point integer scaled by `2^bits`, from the Taylor series
/// in exact rationals.
fn exp_fixed(x: f64, bits: usize) -> BigInt {
    let x = BigRational::from_float(x).expect("finite");
    let bound = x.abs().ceil().to_integer();
    let mut term = BigRational::from_integer(BigInt::one() << bits);
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    loop {
        sum += term.to_integer();
        term = term * &x / BigInt::from(k);
        if BigInt::from(k) > bound && term.abs() < BigRational::one() {
            return sum;
        }
        k += 1;
    }
}

/// The oracle deficit of the cosh-only formula. The terms cancel almost
/// completely for small `nu`, so the sum `sum_tau d_tau y^tau` with
/// `y = e^{-2 nu}` is taken in 320-bit fixed point and only then scaled by
/// `e^{N nu}`.
pub fn cosh_only_deficit(params: IsingParams, execution: Execution) -> Result<f64> {
    let len = params.len;
    let coefficients = cosh_only_deficit_coefficients(len, execution)?;
    let y = exp_fixed(-2.0 * params.nu, DEFICIT_BITS);
    let mut numerator = BigInt::zero();
    for (tau, d) in coefficients.iter().rev() {
        numerator = numerator * &y + d * (BigInt::one() << (DEFICIT_BITS * (len - *tau)));
    }
    // Term tau is d_tau Y^tau 2^{bits (N - tau)}, all over 2^{bits N}.
    let value = BigRational::new(numerator, BigInt::one() << (DEFICIT_BITS * len));
    Ok(rational_to_f64(&value) * (len as f64 * params.nu).exp())
}

/// A walk of `N` unit steps ending at displacement `k`, where each step
/// repeats the previous direction with weight `beta` and reverses with
/// weight `alpha = 1 - beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkSpec {
    steps: usize,
    k: i64,
    alpha: f64,
}

impl WalkSpec {
    pub fn new(steps: usize, k: i64, alpha: f64) -> Result<Self> {
        if steps == 0 || k.unsigned_abs() as usize > steps || (steps as i64 + k) % 2 != 0 {
            return Err(CountError::InvalidDisplacement { steps, k });
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(CountError::Domain(format!("alpha = {alpha} must lie in [0, 1]")));
        }
        Ok(Self { steps, k, alpha })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        1.0 - self.alpha
    }

    /// Right steps and left steps.
    pub fn family(&self) -> SequenceFamily {
        let right = (self.steps as i64 + self.k) / 2;
        SequenceFamily::new(right as usize, self.steps - right as usize).expect("steps >= 1")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkPolynomial {
    /// `(tau, T_tau)`: number of cyclic step sequences with `tau` reversals.
    pub coefficients: Vec<(usize, BigNat)>,
    /// `sum_tau T_tau alpha^tau beta^{N - tau}`.
    pub scalar: f64,
}

pub fn walk_weight_polynomial(spec: WalkSpec) -> Result<WalkPolynomial> {
    let dist = t_distribution(spec.family())?;
    let coefficients: Vec<(usize, BigNat)> = dist.iter().map(|(tau, count)| (tau, count.clone())).collect();
    let terms: Vec<f64> = coefficients
        .iter()
        .map(|(tau, count)| {
            to_f64(count) * spec.alpha().powi(*tau as i32) * spec.beta().powi((spec.steps - tau) as i32)
        })
        .collect();
    Ok(WalkPolynomial { coefficients, scalar: pairwise_sum(&terms) })
}

/// `C(N, (N+k)/2)`, which the coefficients always sum to.
pub fn walk_path_count(spec: WalkSpec) -> BigNat {
    binomial(spec.steps as u64, (spec.steps as i64 + spec.k) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn deficit_is_the_sinh_term() {
        for len in 1..=12 {
            let coefficients = cosh_only_deficit_coefficients(len, Execution::Sequential).unwrap();
            for (tau, d) in &coefficients {
                let magnitude = BigInt::from(binomial(len as u64, *tau as i64));
                assert_eq!(*d, if tau % 2 == 0 { magnitude } else { -magnitude }, "N={len} tau={tau}");
            }
            for nu in [0.1, 0.5, 1.0, -0.3] {
                let params = IsingParams::new(len, nu).unwrap();
                let sinh = (2.0 * nu.sinh()).powi(len as i32);
                let deficit = cosh_only_deficit(params, Execution::Sequential).unwrap();
                assert!(rel(deficit, sinh) < 1e-13, "N={len} nu={nu}: {deficit} vs {sinh}");
            }
        }
    }

    #[test]
    fn fixed_partition_small_ring() {
        let params = IsingParams::new(4, 0.5).unwrap();
        let expected = 4.0 + 2.0 * (-2.0f64).exp();
        assert!(rel(ising_partition_fixed(params, 2).unwrap(), expected) < 1e-14);
        let zero = IsingParams::new(9, 0.0).unwrap();
        assert!(rel(ising_partition_fixed(zero, 4).unwrap(), 126.0) < 1e-14);
        assert!(matches!(ising_partition_fixed(params, 0), Err(CountError::DegenerateFamily { .. })));
    }

    #[test]
    fn totals_agree() {
        for len in 1..=12 {
            for nu in [0.1, 0.5, 1.0] {
                let params = IsingParams::new(len, nu).unwrap();
                let closed = ising_partition_total(params);
                let brute = ising_partition_brute_force(params, Execution::Parallel).unwrap();
                assert!(rel(closed, brute) < 1e-12, "N={len} nu={nu}");
                assert!(rel(ising_partition_by_families(params).unwrap(), closed) < 1e-10);
            }
        }
        assert_eq!(ising_partition_total(IsingParams::new(6, 0.0).unwrap()), 64.0);
    }

    #[test]
    fn walk_examples() {
        let poly = walk_weight_polynomial(WalkSpec::new(7, 1, 0.5).unwrap()).unwrap();
        let coeffs: Vec<_> = poly.coefficients.iter().map(|(t, c)| (*t, c.clone())).collect();
        assert_eq!(coeffs, vec![(2, BigNat::from(7u32)), (4, BigNat::from(21u32)), (6, BigNat::from(7u32))]);
        assert!(rel(poly.scalar, 35.0 / 128.0) < 1e-14);
        let poly = walk_weight_polynomial(WalkSpec::new(4, 0, 0.3).unwrap()).unwrap();
        assert!(rel(poly.scalar, 4.0 * 0.09 * 0.49 + 2.0 * 0.3f64.powi(4)) < 1e-14);
        let straight = walk_weight_polynomial(WalkSpec::new(5, -5, 0.2).unwrap()).unwrap();
        assert_eq!(straight.coefficients, vec![(0, BigNat::from(1u32))]);
        assert!(matches!(WalkSpec::new(4, 1, 0.3), Err(CountError::InvalidDisplacement { .. })));
        assert!(matches!(WalkSpec::new(4, 6, 0.3), Err(CountError::InvalidDisplacement { .. })));
    }
}
