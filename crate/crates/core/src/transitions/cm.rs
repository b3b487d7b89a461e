use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{BeamConfig, CMState};
use crate::oracle::{exact_cm_radial, ExactRadial};
use crate::specfun::{factorial, factorial_f64, hyp3f2_terminating_exact, pochhammer, rat};

/// How a CM radial element was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialRoute {
    /// Pochhammer / ₃F₂ closed form with the states in the given order.
    ClosedForm,
    /// Closed form with initial and final states exchanged (the integral is
    /// symmetric); used when the direct ordering hits a vanishing
    /// denominator.
    ClosedFormSwapped,
    /// Both orderings degenerate; exact Laguerre expansion used instead.
    ExactFallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmRadial {
    pub value: f64,
    pub route: RadialRoute,
}

/// Dimensionless part of `⟨G_f| (k R_⊥/4)^e |G_i⟩` (the factor
/// `(k w_R/4)^e` removed) from the closed form
///
/// `(1+|M_i|)_{n_i⁻} ((|M_f|-|M_i|-e)/2)_{n_f⁻} Γ(s+1) / √(n_i⁻! n_f⁻! n_i⁺! n_f⁺!)
///  × ₃F₂(-n_i⁻, s+1, (|M_i|-|M_f|+e)/2+1; 1+|M_i|, (|M_i|-N_f+e)/2+1; 1)`
///
/// with `s = (|M_i|+|M_f|+e)/2`. Fails with a domain error when a
/// denominator Pochhammer symbol of the ₃F₂ vanishes before termination.
pub fn cm_radial_closed_form(cm_i: &CMState, cm_f: &CMState, exponent: u32) -> Result<ExactRadial> {
    let mi = cm_i.m.unsigned_abs() as i64;
    let mf = cm_f.m.unsigned_abs() as i64;
    let e = exponent as i64;
    if (mi + mf + e) % 2 != 0 {
        return domain(format!(
            "|M_i| + |M_f| + e must be even, got {mi} + {mf} + {e}"
        ));
    }
    let s = (mi + mf + e) / 2;
    let (ni, nf) = (cm_i.n_minus(), cm_f.n_minus());
    let pre = pochhammer(&rat(1 + mi, 1), ni)
        * pochhammer(&rat(mf - mi - e, 2), nf)
        * BigRational::from_integer(factorial(s as u32));
    let series = hyp3f2_terminating_exact(
        ni,
        &rat(s + 1, 1),
        &rat(mi - mf + e + 2, 2),
        &rat(1 + mi, 1),
        &rat(mi - cm_f.n as i64 + e + 2, 2),
    )?;
    let den: BigInt = factorial(ni) * factorial(nf) * factorial(cm_i.n_plus()) * factorial(cm_f.n_plus());
    Ok(ExactRadial {
        coeff: pre * series,
        sqrt_arg: BigRational::new(BigInt::one(), den),
    })
}

fn check_delta(cm_i: &CMState, cm_f: &CMState, exponent: u32) -> Result<()> {
    if (cm_f.m - cm_i.m).unsigned_abs() != exponent {
        return domain(format!(
            "CM radial element needs M_f - M_i = ±{exponent}, got M_i={}, M_f={}",
            cm_i.m, cm_f.m
        ));
    }
    Ok(())
}

/// `⟨G_{N_f,M_f}| (k R_⊥/4)^e |G_{N_i,M_i}⟩` for `M_f - M_i = ±e`, with
/// `k_wr = k w_R`.
///
/// The closed form is tried with the states in order, then exchanged; if
/// both orderings are degenerate the exact expansion is used and the route
/// is reported as [`RadialRoute::ExactFallback`].
pub fn cm_radial_element(cm_i: &CMState, cm_f: &CMState, exponent: u32, k_wr: f64) -> Result<CmRadial> {
    check_delta(cm_i, cm_f, exponent)?;
    let scale = (k_wr / 4.0).powi(exponent as i32);
    let (exact, route) = match cm_radial_closed_form(cm_i, cm_f, exponent) {
        Ok(v) => (v, RadialRoute::ClosedForm),
        Err(Error::Domain(_)) => match cm_radial_closed_form(cm_f, cm_i, exponent) {
            Ok(v) => (v, RadialRoute::ClosedFormSwapped),
            Err(Error::Domain(_)) => (exact_cm_radial(cm_i, cm_f, exponent), RadialRoute::ExactFallback),
            Err(e) => return Err(e),
        },
        Err(e) => return Err(e),
    };
    Ok(CmRadial {
        value: exact.to_f64() * scale,
        route,
    })
}

/// Magnitude of the CM probability prefactor
/// `(4/(k w₀))^{|l|+1} √(|l|! / Γ(2l'+2)) / ((1+l') Γ(|l|-l'+1))`.
/// The phase `i^{l'(1+sgn l)}` drops out of the probability.
pub fn cm_probability_coefficient(beam: &BeamConfig, l_prime: u32) -> f64 {
    let al = beam.winding.unsigned_abs();
    (4.0 / beam.k_w0).powi(al as i32 + 1)
        * (factorial_f64(al) / factorial_f64(2 * l_prime + 1)).sqrt()
        / ((1 + l_prime) as f64 * factorial_f64(al - l_prime))
}

/// CM transition probability from `cm_i` to the state with energy number
/// `n_f` and `M_f = M_i + sgn(l)(|l| - l')`, electronic factor excluded.
///
/// The ratio `w_R/w₀` is the spread of `cm_i`. Returns 0 when `l' > |l|` or
/// when `(N_f, M_f)` is not a trap state.
pub fn cm_probability(beam: &BeamConfig, cm_i: &CMState, n_f: u32, l_prime: u32) -> Result<f64> {
    let l = beam.winding;
    let al = l.unsigned_abs();
    if l_prime > al {
        return Ok(0.0);
    }
    let e = al - l_prime;
    let m_f = cm_i.m + l.signum() * e as i32;
    if !CMState::exists(n_f as i64, m_f as i64) {
        return Ok(0.0);
    }
    let cm_f = CMState::new(n_f, m_f, cm_i.k + beam.k_w0, cm_i.w_r)?;
    let radial = cm_radial_element(cm_i, &cm_f, e, beam.k_w0 * cm_i.w_r)?;
    let amp = cm_probability_coefficient(beam, l_prime) * radial.value;
    Ok(amp * amp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(n: u32, m: i32) -> CMState {
        CMState::new(n, m, 0.0, 1.0).unwrap()
    }

    #[test]
    fn orthonormality_limit() {
        for (n, m) in [(0, 0), (3, 1), (6, 0), (7, -3)] {
            let a = st(n, m);
            let r = cm_radial_element(&a, &a, 0, 0.3).unwrap();
            assert!((r.value - 1.0).abs() < 1e-14);
        }
        let r = cm_radial_element(&st(6, 0), &st(8, 0), 0, 0.3).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn known_quadratic_element() {
        // N_i = 0, M_i = 0 → N_f = 2, M_f = 2: √2 (k w_R/4)²
        let kwr = 0.8;
        let r = cm_radial_element(&st(0, 0), &st(2, 2), 2, kwr).unwrap();
        let expect = 2f64.sqrt() * (kwr / 4.0).powi(2);
        assert!((r.value - expect).abs() < 1e-15);
        assert_eq!(r.route, RadialRoute::ClosedForm);
    }

    #[test]
    fn degenerate_parameters_fall_back() {
        // (6, 0) → (8, 2): both orderings hit a vanishing ₃F₂ denominator
        let r = cm_radial_element(&st(6, 0), &st(8, 2), 2, 4.0).unwrap();
        assert_eq!(r.route, RadialRoute::ExactFallback);
        assert!((r.value - 2.0 * 5f64.sqrt()).abs() < 1e-13);
        // (2, 0) → (4, 2): direct ordering degenerate, exchanged one is not
        let r = cm_radial_element(&st(2, 0), &st(4, 2), 2, 4.0).unwrap();
        assert_ne!(r.route, RadialRoute::ClosedForm);
        assert!((r.value - 6f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn delta_mismatch_is_rejected() {
        assert!(cm_radial_element(&st(2, 0), &st(3, 1), 2, 1.0).is_err());
    }

    #[test]
    fn probability_selection_in_n() {
        let beam = BeamConfig::with_winding(2);
        let cm_i = CMState::new(6, 0, 0.0, 1e-4).unwrap();
        for n_f in 0..=14 {
            let d = cm_probability(&beam, &cm_i, n_f, 0).unwrap();
            let q = cm_probability(&beam, &cm_i, n_f, 1).unwrap();
            assert_eq!(d != 0.0, [4, 6, 8].contains(&n_f), "dipole N_f={n_f}");
            assert_eq!(q != 0.0, [5, 7].contains(&n_f), "quadrupole N_f={n_f}");
        }
        assert_eq!(cm_probability(&beam, &cm_i, 6, 3).unwrap(), 0.0);
    }
}
