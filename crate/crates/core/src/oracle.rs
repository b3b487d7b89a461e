//! Brute-force counterparts of the closed forms.
//!
//! Nothing here calls the closed-form routine it checks: the CM radial
//! integral is expanded into exact monomials, angular integrals are done by
//! product quadrature on the sphere, and the λ integral and the transverse
//! overlap by adaptive quadrature.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::harmonics::{field_raw, FieldPoint, Vec3};
use crate::model::{cm_wavefunction, AtomSpec, BeamConfig, Branch, CMState, ElectronicState};
use crate::quad::{gauss_legendre, integrate, integrate_semi_infinite};
use crate::specfun::{
    assoc_laguerre, double_factorial_reciprocal, factorial, ratio_to_f64, spherical_bessel,
    spherical_harmonic,
};
use crate::transitions::{channel_coefficient, global_prefactor, TransitionChannel};

/// Quadrature family used by an oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Gauss-Legendre in the first axis, uniform periodic rule in the second.
    GaussLegendreUniform,
    /// Adaptive Gauss-Kronrod in the first axis, uniform periodic rule in
    /// the second.
    AdaptiveUniform,
}

/// Node counts, domain and tolerance of a product quadrature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    /// Node count per axis; for adaptive axes this is ignored.
    pub nodes: Vec<usize>,
    /// Domain per axis.
    pub bounds: Vec<(f64, f64)>,
    /// Target relative tolerance.
    pub tolerance: f64,
}

impl QuadratureSpec {
    /// `64 × 128` rule over `(cos θ, φ) ∈ [-1, 1] × [0, 2π)`.
    pub fn sphere() -> Self {
        Self {
            scheme: Scheme::GaussLegendreUniform,
            nodes: vec![64, 128],
            bounds: vec![(-1.0, 1.0), (0.0, 2.0 * PI)],
            tolerance: 1e-10,
        }
    }

    /// Adaptive in `R_⊥ ∈ [0, ∞)`, 64 uniform nodes in `Φ`.
    pub fn transverse() -> Self {
        Self {
            scheme: Scheme::AdaptiveUniform,
            nodes: vec![2, 64],
            bounds: vec![(0.0, f64::INFINITY), (0.0, 2.0 * PI)],
            tolerance: 1e-11,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes.len() != self.bounds.len() || self.nodes.is_empty() {
            return Err(Error::Domain("quadrature spec needs one node count per axis".into()));
        }
        if self.nodes.iter().any(|&n| n < 2) {
            return Err(Error::Domain("quadrature node counts must be >= 2".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Domain("quadrature tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// `sign · √sqrt_arg · coeff` in the form `coeff · √sqrt_arg` with both
/// factors exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRadial {
    pub coeff: BigRational,
    pub sqrt_arg: BigRational,
}

impl ExactRadial {
    /// The exact square of the value.
    pub fn square(&self) -> BigRational {
        &self.coeff * &self.coeff * &self.sqrt_arg
    }

    pub fn signum(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Exact equality of the represented reals.
    pub fn same_value(&self, other: &ExactRadial) -> bool {
        self.signum() == other.signum() && self.square() == other.square()
    }

    /// Rounded once, after the exact square is formed.
    pub fn to_f64(&self) -> f64 {
        self.signum() as f64 * ratio_to_f64(&self.square()).sqrt()
    }
}

/// Dimensionless `⟨G_f| (R_⊥/w_R)^e |G_i⟩` (so the physical element is this
/// times `(k w_R/4)^e`), exactly.
///
/// With `x = (R_⊥/w_R)²` the integrand is a polynomial times `x^s e^{-x}`,
/// `s = (|M_i|+|M_f|+e)/2`, and each monomial integrates to a factorial.
///
/// # Panics
///
/// If `|M_i| + |M_f| + e` is odd: the selection rules upstream never ask
/// for such an element.
pub fn exact_cm_radial(cm_i: &CMState, cm_f: &CMState, exponent: u32) -> ExactRadial {
    let (mi, mf) = (cm_i.m.unsigned_abs(), cm_f.m.unsigned_abs());
    assert!(
        (mi + mf + exponent) % 2 == 0,
        "exact_cm_radial: |M_i| + |M_f| + e = {mi} + {mf} + {exponent} is odd"
    );
    let s = (mi + mf + exponent) / 2;
    let li = assoc_laguerre(cm_i.n_minus(), mi);
    let lf = assoc_laguerre(cm_f.n_minus(), mf);
    let mut acc = BigRational::zero();
    for (a, ca) in li.coeffs.iter().enumerate() {
        for (b, cb) in lf.coeffs.iter().enumerate() {
            let moment = factorial(s + a as u32 + b as u32);
            acc += ca * cb * BigRational::from_integer(moment);
        }
    }
    let num: BigInt = factorial(cm_i.n_minus()) * factorial(cm_f.n_minus());
    let den: BigInt = factorial(cm_i.n_plus()) * factorial(cm_f.n_plus());
    ExactRadial {
        coeff: acc,
        sqrt_arg: BigRational::new(num, den),
    }
}

/// `∫ f(θ, φ) dΩ` on the default `64 × 128` product rule.
pub fn sphere_quadrature(f: impl Fn(f64, f64) -> Complex64) -> Complex64 {
    sphere_quadrature_with(&QuadratureSpec::sphere(), f)
}

/// `∫ f(θ, φ) dΩ` with Gauss-Legendre nodes in `cos θ` and a uniform rule in
/// `φ`; exact for band-limited integrands below the node counts.
pub fn sphere_quadrature_with(spec: &QuadratureSpec, f: impl Fn(f64, f64) -> Complex64) -> Complex64 {
    let (x, w) = gauss_legendre(spec.nodes[0]);
    let n_phi = spec.nodes[1];
    let dphi = 2.0 * PI / n_phi as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (xi, wi) in x.iter().zip(&w) {
        let theta = xi.clamp(-1.0, 1.0).acos();
        let mut ring = Complex64::new(0.0, 0.0);
        for j in 0..n_phi {
            ring += f(theta, j as f64 * dphi);
        }
        acc += ring * (wi * dphi);
    }
    acc
}

/// `∫_0^1 λ^{l'} j_p(aλ) dλ` by adaptive quadrature.
pub fn lambda_channel_integral(p: u32, l_prime: u32, a: f64) -> Result<f64> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("lambda integral needs a >= 0, got {a}")));
    }
    integrate(
        |t: f64| t.powi(l_prime as i32) * spherical_bessel(p, a * t),
        0.0,
        1.0,
        1e-13,
        0.0,
        2000,
    )
    .map(|i| i.value)
}

/// `∫∫ conj(Ψ_f) w Ψ_g R_⊥ dR_⊥ dΦ` at `R_z = 0`.
pub fn transverse_overlap(
    psi_f: &CMState,
    psi_g: &CMState,
    weight: impl Fn(f64, f64) -> Complex64,
) -> Result<Complex64> {
    transverse_overlap_with(&QuadratureSpec::transverse(), psi_f, psi_g, weight)
}

pub fn transverse_overlap_with(
    spec: &QuadratureSpec,
    psi_f: &CMState,
    psi_g: &CMState,
    weight: impl Fn(f64, f64) -> Complex64,
) -> Result<Complex64> {
    spec.validate()?;
    let n_phi = spec.nodes[1];
    let dphi = 2.0 * PI / n_phi as f64;
    // (Σ_Φ integrand, Σ_Φ |integrand|) on the ring of radius r
    let ring = |r: f64| -> (Complex64, f64) {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for j in 0..n_phi {
            let phi = j as f64 * dphi;
            let v = cm_wavefunction(psi_f, r, phi, 0.0).conj() * weight(r, phi) * cm_wavefunction(psi_g, r, phi, 0.0);
            acc += v;
            mag += v.norm();
        }
        (acc * (dphi * r), mag * dphi * r)
    };
    let scale = psi_f.w_r.max(psi_g.w_r);
    let magnitude = integrate_semi_infinite(|u| scale * ring(scale * u).1, 1e-4, 1e-300, 4000)?.value;
    let floor = 1e-3 * spec.tolerance * magnitude;
    let re = integrate_semi_infinite(|u| scale * ring(scale * u).0.re, spec.tolerance, floor, 4000)?;
    let im = integrate_semi_infinite(|u| scale * ring(scale * u).0.im, spec.tolerance, floor, 4000)?;
    Ok(Complex64::new(re.value, im.value))
}

/// Electronic radial factor with the ₁F₂ rebuilt from the λ integral:
///
/// `(s a/2)^{q} ₁F₂(...) = s^q (a/2)^{l'+1} 2^{-p} (l'+p+1) (2p+1)!! ∫_0^1 λ^{l'} j_p(aλ) dλ`,
/// `a = k r f`, `q = l'+p+1`, integrated against `F_f F_i r²`.
pub fn electronic_radial_oracle(
    e_i: &ElectronicState,
    e_f: &ElectronicState,
    channel: &TransitionChannel,
    k_scale: f64,
    atom: &AtomSpec,
) -> Result<f64> {
    let (p, lp) = (channel.p, channel.l_prime);
    let q = channel.multipole_order() as i32;
    let f = channel.branch.mass_fraction(atom);
    let s = channel.branch.sign() as f64;
    let lead = s.powi(q) * (lp + p + 1) as f64 / double_factorial_reciprocal(2 * p as i64 + 1)
        / 2f64.powi(p as i32);
    let kernel = |r: f64| -> f64 {
        let a = k_scale * r * f;
        if a == 0.0 {
            return 0.0;
        }
        let lam = lambda_channel_integral(p, lp, a).unwrap_or(f64::NAN);
        lead * (0.5 * a).powi(lp as i32 + 1) * lam
    };
    let g = |r: f64| e_f.radial.eval(r) * e_i.radial.eval(r) * r * r * kernel(r);
    let scale = e_i.radial.scale.max(e_f.radial.scale);
    let magnitude = integrate_semi_infinite(|u| (scale * g(scale * u)).abs(), 1e-5, 1e-300, 4000)?.value;
    integrate_semi_infinite(|u| scale * g(scale * u), 1e-9, 1e-12 * magnitude, 4000).map(|i| i.value)
}

/// Absorption amplitude of one channel with every integral done by
/// quadrature: the CM factor as `2π ×` a transverse overlap with weight
/// `(k R_⊥/4)^{|l|-l'} e^{i sgn(l)(|l|-l')Φ}`, the angular factor on the
/// sphere and the electronic factor through [`electronic_radial_oracle`].
pub fn matrix_element_oracle(
    atom: &AtomSpec,
    beam: &BeamConfig,
    e_i: &ElectronicState,
    e_f: &ElectronicState,
    cm_i: &CMState,
    cm_f: &CMState,
    channel: &TransitionChannel,
) -> Result<Complex64> {
    let l = beam.winding;
    let zero = Complex64::new(0.0, 0.0);
    let expect_k = cm_i.k + beam.k_w0;
    if (cm_f.k - expect_k).abs() > 1e-9 * expect_k.abs().max(1.0) || channel.l_prime > l.unsigned_abs() {
        return Ok(zero);
    }
    let e = (l.unsigned_abs() - channel.l_prime) as i32;
    let turn = (l.signum() * e) as f64;
    let cm = 2.0
        * PI
        * transverse_overlap(cm_f, cm_i, |r, phi| {
            Complex64::from_polar((beam.k_w0 * r / 4.0).powi(e), turn * phi)
        })?;
    let mf = l.signum() * channel.l_prime as i32;
    let angular = sphere_quadrature(|theta, phi| {
        let y = |l: u32, m: i32| spherical_harmonic(l, m, theta, phi).expect("valid index");
        y(e_f.l, e_f.m).conj() * y(channel.l_prime, mf) * y(1, channel.sigma) * y(channel.p, 0) * y(e_i.l, e_i.m)
    });
    let radial = electronic_radial_oracle(e_i, e_f, channel, beam.k_a, atom)?;
    Ok(channel_coefficient(l, channel)?
        * beam.eps(channel.sigma)
        * cm
        * angular
        * (channel.branch.sign() as f64 * atom.charge * global_prefactor(beam) * beam.amplitude * radial))
}

/// Pointwise interaction density of one branch from the field itself: a
/// charge of sign `s` at `R + s f r` couples as
///
/// `s · D(s f r) ∫_0^1 E(R + s λ f r) dλ`, `D(v) = |v| √(4π/3) Σ_σ ε_σ Y_1^σ(v̂)`,
///
/// with `E` the near-axis field and all lengths in units of `w₀`.
pub fn interaction_pointwise(
    beam: &BeamConfig,
    atom: &AtomSpec,
    cm: &Vec3,
    rel: &Vec3,
    branch: Branch,
) -> Result<Complex64> {
    let f = branch.mass_fraction(atom);
    let s = branch.sign() as f64;
    let at = |t: f64| -> Complex64 {
        let p = [cm[0] + s * t * f * rel[0], cm[1] + s * t * f * rel[1], cm[2] + s * t * f * rel[2]];
        field_raw(beam, &FieldPoint::new(p))
    };
    let re = integrate(|t| at(t).re, 0.0, 1.0, 1e-13, 1e-300, 2000)?.value;
    let im = integrate(|t| at(t).im, 0.0, 1.0, 1e-13, 1e-300, 2000)?.value;
    let r = (rel[0] * rel[0] + rel[1] * rel[1] + rel[2] * rel[2]).sqrt();
    if r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let theta = (rel[2] / r).clamp(-1.0, 1.0).acos();
    let phi = rel[1].atan2(rel[0]);
    let mut dip = Complex64::new(0.0, 0.0);
    for sigma in -1..=1 {
        dip += beam.eps(sigma) * spherical_harmonic(1, sigma, theta, phi)?;
    }
    // s · D(s f r) = s² f D(r)
    Ok(dip * (f * r * (4.0 * PI / 3.0).sqrt()) * Complex64::new(re, im))
}
