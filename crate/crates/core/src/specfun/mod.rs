//! Scalar special functions.
//!
//! Integer-valued and rational quantities (factorials, Pochhammer symbols,
//! Laguerre coefficients, terminating hypergeometric sums) are computed in
//! exact arithmetic and only converted to `f64` at the end.

mod bessel;
mod hypergeom;
mod laguerre;
mod ylm;

pub use bessel::spherical_bessel;
pub use hypergeom::{hyp1f2, hyp3f2_terminating, hyp3f2_terminating_exact, HypergeomParams};
pub use laguerre::{assoc_laguerre, LaguerrePoly};

/// `L_p^α(x)` by the three-term recurrence, without building coefficients.
pub fn assoc_laguerre_value(p: u32, alpha: u32, x: f64) -> f64 {
    laguerre::laguerre_recurrence(p, alpha as f64, x)
}
pub use ylm::{harmonic_at_equator, spherical_harmonic};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;

use crate::error::{domain, Result};

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!` in floating point. Overflows to infinity above 170.
pub fn factorial_f64(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n!!` for `n >= -1`, exact.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial of {n} is not finite");
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// `1 / n!!`.
///
/// `(-1)!! = 0!! = 1`. For `n <= -2` the double factorial is taken as
/// infinite and the reciprocal is exactly `0.0`, so that pruned terms drop
/// out of the sums they appear in.
pub fn double_factorial_reciprocal(n: i64) -> f64 {
    if n <= -2 {
        return 0.0;
    }
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    1.0 / acc
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)` in exact arithmetic.
pub fn pochhammer(a: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// `Γ(k / 2)` for integer `k`.
///
/// Poles at `k = 0, -2, -4, ...` are reported as domain errors.
pub fn gamma_half(k: i64) -> Result<f64> {
    if k <= 0 && k % 2 == 0 {
        return domain(format!("gamma_half({k}) sits on a pole of Γ"));
    }
    if k <= 0 {
        // Γ(x) = Γ(x + 1) / x
        let x = k as f64 / 2.0;
        return Ok(gamma_half(k + 2)? / x);
    }
    if k % 2 == 0 {
        return Ok(factorial_f64((k / 2 - 1) as u32));
    }
    // Γ(n + 1/2) = (2n - 1)!! √π / 2^n
    let n = (k - 1) / 2;
    let df = 1.0 / double_factorial_reciprocal(2 * n - 1);
    Ok(df * PI.sqrt() / 2f64.powi(n as i32))
}

/// Converts an exact rational to the nearest `f64`.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Builds the rational `num / den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
