use num_complex::Complex64;
use std::f64::consts::PI;

use super::double_factorial_reciprocal;
use crate::error::{domain, Result};

fn check_lm(l: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > l {
        return domain(format!("|m| > l for (l, m) = ({l}, {m})"));
    }
    Ok(())
}

/// Orthonormalized associated Legendre function `√((2l+1)/4π (l-m)!/(l+m)!) P_l^m(cos θ)`
/// for `m >= 0`, Condon-Shortley phase included.
fn normalized_legendre(l: u32, m: u32, theta: f64) -> f64 {
    let (s, x) = theta.sin_cos();
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mf = m as f64;
    let mut prev = pmm;
    let mut cur = x * (2.0 * mf + 3.0).sqrt() * pmm;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let lp = lf - 1.0;
        let a_prev = ((4.0 * lp * lp - 1.0) / (lp * lp - mf * mf)).sqrt();
        let next = a * (x * cur - prev / a_prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Complex spherical harmonic `Y_l^m(θ, φ)` with the Condon-Shortley phase,
/// orthonormal over the unit sphere.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    check_lm(l, m)?;
    let am = m.unsigned_abs();
    let p = normalized_legendre(l, am, theta);
    let y = Complex64::from_polar(p, am as f64 * phi);
    if m < 0 {
        let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
        Ok(y.conj() * sign)
    } else {
        Ok(y)
    }
}

/// `Y_l^m(π/2, 0)` from its double-factorial closed form
///
/// `(-1)^{(l+m)/2} √((2l+1)/4π) √((l-|m|-1)!! (l+|m|-1)!! / ((l-|m|)!! (l+|m|)!!))`,
///
/// exactly zero when `l + m` is odd.
pub fn harmonic_at_equator(l: u32, m: i32) -> Result<f64> {
    check_lm(l, m)?;
    let (l, m) = (l as i64, m as i64);
    if (l + m).rem_euclid(2) == 1 {
        return Ok(0.0);
    }
    let am = m.abs();
    let ratio = double_factorial_reciprocal(l - am) * double_factorial_reciprocal(l + am)
        / (double_factorial_reciprocal(l - am - 1) * double_factorial_reciprocal(l + am - 1));
    let sign = if ((l + m) / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(sign * ((2 * l + 1) as f64 / (4.0 * PI)).sqrt() * ratio.sqrt())
}
