use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::harmonics::Vec3;
use crate::model::{AtomSpec, BeamConfig, Branch};
use crate::specfun::{
    double_factorial_reciprocal, factorial_f64, gamma_half, hyp1f2, spherical_harmonic,
};

/// Dimensional prefactor `2π² e w₀ / √3` in reduced units.
pub const REDUCED_PREFACTOR: f64 = 1.0;

/// One term `(p, l', σ, branch)` of the interaction sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TransitionChannel {
    /// Plane-wave expansion order.
    pub p: u32,
    /// Split index of the solid harmonic, `0 <= l' <= |l|`.
    pub l_prime: u32,
    /// Polarization component, `-1`, `0` or `+1`.
    pub sigma: i32,
    pub branch: Branch,
}

impl TransitionChannel {
    /// `l' + p + 1`: 1 for dipole, 2 for quadrupole, ...
    pub fn multipole_order(&self) -> u32 {
        self.l_prime + self.p + 1
    }

    /// Change of CM angular momentum, `sgn(l)(|l| - l')`.
    pub fn delta_cm_m(&self, l: i32) -> i32 {
        l.signum() * (l.unsigned_abs() as i32 - self.l_prime as i32)
    }

    /// Change of electronic `m`, `sgn(l) l' + σ`.
    pub fn delta_m(&self, l: i32) -> i32 {
        l.signum() * self.l_prime as i32 + self.sigma
    }
}

/// All channels with `l' + p + 1 <= max_multipole` and `l' <= |l|`, ordered
/// by multipole order, then `l'`, then `p`, then `σ`, then branch.
pub fn enumerate_channels(l: i32, max_multipole: u32) -> Vec<TransitionChannel> {
    let mut out = Vec::new();
    for order in 1..=max_multipole {
        for l_prime in 0..order.min(l.unsigned_abs() + 1) {
            let p = order - 1 - l_prime;
            for sigma in -1..=1 {
                for branch in Branch::ALL {
                    out.push(TransitionChannel {
                        p,
                        l_prime,
                        sigma,
                        branch,
                    });
                }
            }
        }
    }
    out
}

/// Channel-dependent factor of the matrix element,
///
/// `i^{p + l'(1+sgn l)} √((2p+1)/Γ(2l'+2)) / ((l'+p+1) Γ(p+3/2) Γ(|l|-l'+1))`.
pub fn channel_coefficient(l: i32, ch: &TransitionChannel) -> Result<Complex64> {
    let (p, lp) = (ch.p as i64, ch.l_prime as i64);
    let al = l.unsigned_abs() as i64;
    let power = p + lp * (1 + l.signum() as i64);
    let phase = match power.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let magnitude = ((2 * p + 1) as f64 / factorial_f64((2 * lp + 1) as u32)).sqrt()
        / ((lp + p + 1) as f64 * gamma_half(2 * p + 3)? * factorial_f64((al - lp) as u32));
    Ok(phase * magnitude)
}

/// Beam-dependent prefactor `(2π² e w₀/√3) (4/(k w₀))^{|l|+1} √(|l|!)`.
pub fn global_prefactor(beam: &BeamConfig) -> f64 {
    let al = beam.winding.unsigned_abs();
    REDUCED_PREFACTOR * (4.0 / beam.k_w0).powi(al as i32 + 1) * factorial_f64(al).sqrt()
}

/// `₁F₂((p+l'+1)/2; p+3/2, (p+l'+3)/2; -(a/2)²)`, the radial kernel left
/// after the λ integration; `a = k r m_{n,e}/m_t`.
pub fn radial_kernel(p: u32, l_prime: u32, a: f64) -> Result<f64> {
    let (p, lp) = (p as f64, l_prime as f64);
    hyp1f2(
        (p + lp + 1.0) / 2.0,
        p + 1.5,
        (p + lp + 3.0) / 2.0,
        -0.25 * a * a,
    )
}

/// Closed form of `∫_0^1 λ^{l'} j_p(aλ) dλ`:
/// `a^p / ((l'+p+1)(2p+1)!!) · ₁F₂((p+l'+1)/2; p+3/2, (p+l'+3)/2; -(a/2)²)`.
pub fn lambda_kernel(p: u32, l_prime: u32, a: f64) -> Result<f64> {
    let lead = a.powi(p as i32) * double_factorial_reciprocal(2 * p as i64 + 1)
        / (l_prime + p + 1) as f64;
    Ok(lead * radial_kernel(p, l_prime, a)?)
}

/// Contribution of one channel to the interaction density at CM position
/// `cm` and relative coordinate `rel` (both in units of `w₀`):
///
/// `s P C ε_σ e^{ikZ} (kR_⊥/4)^{|l|-l'} e^{i sgn(l)(|l|-l')Φ} (s k|r| f/2)^{l'+p+1} ₁F₂
///  Y_{l'}^{sgn(l) l'}(r̂) Y_1^σ(r̂) Y_p^0(r̂)`.
///
/// Summed over all `p`, `l'`, `σ` this converges to
/// `√3/(2π²)` times the field-based density
/// [`interaction_pointwise`](crate::oracle::interaction_pointwise).
pub fn channel_interaction(
    beam: &BeamConfig,
    atom: &AtomSpec,
    cm: &Vec3,
    rel: &Vec3,
    ch: &TransitionChannel,
) -> Result<Complex64> {
    let l = beam.winding;
    let e = l.unsigned_abs() as i32 - ch.l_prime as i32;
    let s = ch.branch.sign() as f64;
    let f = ch.branch.mass_fraction(atom);
    let big_r = cm[0].hypot(cm[1]);
    let big_phi = cm[1].atan2(cm[0]);
    let r = (rel[0] * rel[0] + rel[1] * rel[1] + rel[2] * rel[2]).sqrt();
    let theta = if r == 0.0 { 0.0 } else { (rel[2] / r).clamp(-1.0, 1.0).acos() };
    let phi = rel[1].atan2(rel[0]);
    let a = beam.k_w0 * r * f;
    let cm_part = Complex64::from_polar(
        (beam.k_w0 * big_r / 4.0).powi(e),
        beam.k_w0 * cm[2] + (l.signum() * e) as f64 * big_phi,
    );
    let rel_part = (0.5 * s * a).powi(ch.multipole_order() as i32) * radial_kernel(ch.p, ch.l_prime, a)?;
    let ang = spherical_harmonic(ch.l_prime, l.signum() * ch.l_prime as i32, theta, phi)?
        * spherical_harmonic(1, ch.sigma, theta, phi)?
        * spherical_harmonic(ch.p, 0, theta, phi)?;
    Ok(channel_coefficient(l, ch)?
        * beam.eps(ch.sigma)
        * cm_part
        * ang
        * (s * global_prefactor(beam) * beam.amplitude * rel_part))
}
