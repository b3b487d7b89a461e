use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ratio_to_f64;
use crate::error::{domain, Error, Result};

const MAX_TERMS: usize = 100_000;

/// Parameter set of a generalized hypergeometric series `pFq`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeomParams {
    pub numerator: Vec<BigRational>,
    pub denominator: Vec<BigRational>,
    pub argument: f64,
}

fn non_positive_integer(r: &BigRational) -> Option<u64> {
    if r.is_integer() && !r.is_positive() {
        r.to_integer().abs().to_u64()
    } else {
        None
    }
}

impl HypergeomParams {
    /// Number of terms after which the series terminates, if any numerator
    /// parameter is a non-positive integer `-n` (the smallest such `n + 1`).
    pub fn termination(&self) -> Option<u64> {
        self.numerator.iter().filter_map(non_positive_integer).min().map(|n| n + 1)
    }

    /// A denominator parameter `-m` is only admissible when the series has
    /// already terminated before the `(m+1)`-th factor is reached.
    pub fn validate(&self) -> Result<()> {
        let stop = self.termination();
        for b in &self.denominator {
            if let Some(m) = non_positive_integer(b) {
                match stop {
                    Some(n_terms) if n_terms - 1 <= m => {}
                    _ => {
                        return domain(format!(
                            "denominator parameter {b} vanishes before the series terminates"
                        ))
                    }
                }
            }
        }
        Ok(())
    }
}

/// `₁F₂(a; b1, b2; z)` by direct summation.
///
/// Summation stops at the first term `t_k` with `|t_k| < 1e-16 |S_k|` once
/// the term ratio has dropped below `1/2`; from that point on the magnitudes
/// decrease geometrically, so the neglected tail is bounded by `2 |t_k|`.
/// The denominators must not be non-positive integers.
pub fn hyp1f2(a: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    for b in [b1, b2] {
        if b <= 0.0 && b.fract() == 0.0 {
            return domain(format!("₁F₂ denominator parameter {b} is a non-positive integer"));
        }
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) / ((b1 + kf) * (b2 + kf) * (kf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term == 0.0 || (ratio.abs() < 0.5 && term.abs() < 1e-16 * sum.abs()) {
            return Ok(sum);
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::Numeric(format!(
        "₁F₂({a}; {b1}, {b2}; {z}) did not converge within {MAX_TERMS} terms"
    )))
}

/// Terminating `₃F₂(-n, a2, a3; b1, b2; 1)` summed exactly.
///
/// Fails with a domain error when a denominator Pochhammer symbol reaches
/// zero before the series terminates.
pub fn hyp3f2_terminating_exact(
    n: u32,
    a2: &BigRational,
    a3: &BigRational,
    b1: &BigRational,
    b2: &BigRational,
) -> Result<BigRational> {
    let one = BigRational::one();
    let a1 = -BigRational::from_integer(n.into());
    let mut term = one.clone();
    let mut sum = one.clone();
    for k in 0..n {
        let kr = BigRational::from_integer(k.into());
        let den = (b1 + &kr) * (b2 + &kr) * (&kr + &one);
        if den.is_zero() {
            return domain(format!(
                "₃F₂(-{n}, {a2}, {a3}; {b1}, {b2}; 1): denominator vanishes at term {}",
                k + 1
            ));
        }
        term = term * (&a1 + &kr) * (a2 + &kr) * (a3 + &kr) / den;
        sum += &term;
    }
    Ok(sum)
}

/// [`hyp3f2_terminating_exact`] converted to `f64`.
pub fn hyp3f2_terminating(
    n: u32,
    a2: &BigRational,
    a3: &BigRational,
    b1: &BigRational,
    b2: &BigRational,
) -> Result<f64> {
    hyp3f2_terminating_exact(n, a2, a3, b1, b2).map(|s| ratio_to_f64(&s))
}
