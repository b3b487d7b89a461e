//! Regular solid harmonics and the Laguerre-Gaussian field.
//!
//! The solid harmonics use the normalization
//! `ℛ_l^m(v) = 𝒞_l^m |v|^l Y_l^m(θ, φ)` with
//! `𝒞_l^m = [4π / (2l+1) / (l-m)! / (l+m)!]^{1/2}`, for which the
//! translation theorem carries no extra coefficients:
//! `ℛ_l^m(x + y) = Σ_{l',m'} ℛ_{l'}^{m'}(x) ℛ_{l-l'}^{m-m'}(y)`.
//!
//! Lengths are in units of the beam waist `w₀`; the axial phase is
//! `k w₀ · z`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::model::{AtomSpec, BeamConfig, Branch};
use crate::specfun::{double_factorial_reciprocal, factorial_f64, spherical_harmonic};

pub type Vec3 = [f64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SolidHarmonicIndex {
    pub l: u32,
    pub m: i32,
}

impl SolidHarmonicIndex {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return domain(format!("solid harmonic index needs |m| <= l, got ({l}, {m})"));
        }
        Ok(Self { l, m })
    }
}

/// A point at which the field is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    /// Cartesian position in units of `w₀`.
    pub position: Vec3,
    /// `ωt`.
    pub time_phase: f64,
}

impl FieldPoint {
    pub fn new(position: Vec3) -> Self {
        Self {
            position,
            time_phase: 0.0,
        }
    }
}

/// `𝒞_l^m = [4π / (2l+1) / (l-m)! / (l+m)!]^{1/2}`.
pub fn c_coefficient(l: u32, m: i32) -> Result<f64> {
    if m.unsigned_abs() > l {
        return domain(format!("c_coefficient needs |m| <= l, got ({l}, {m})"));
    }
    let lm = (l as i64 - m as i64) as u32;
    let lp = (l as i64 + m as i64) as u32;
    Ok((4.0 * PI / (2 * l + 1) as f64 / factorial_f64(lm) / factorial_f64(lp)).sqrt())
}

fn spherical_coords(v: &Vec3) -> (f64, f64, f64) {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if r == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
    let phi = v[1].atan2(v[0]);
    (r, theta, phi)
}

/// `ℛ_l^m(v) = 𝒞_l^m r^l Y_l^m(θ, φ)`.
pub fn regular_solid_harmonic(idx: SolidHarmonicIndex, v: &Vec3) -> Complex64 {
    let (r, theta, phi) = spherical_coords(v);
    if idx.l == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let c = c_coefficient(idx.l, idx.m).expect("index validated on construction");
    let y = spherical_harmonic(idx.l, idx.m, theta, phi).expect("index validated on construction");
    y * (c * r.powi(idx.l as i32))
}

/// Translation theorem:
/// `Σ_{l'=0}^{l} Σ_{m'} sign^{l-l'} ℛ_{l'}^{m'}(x) ℛ_{l-l'}^{m-m'}(y) = ℛ_l^m(x + sign·y)`.
pub fn translate_solid_harmonic(idx: SolidHarmonicIndex, x: &Vec3, y: &Vec3, sign: i32) -> Complex64 {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    let l = idx.l as i32;
    let mut acc = Complex64::new(0.0, 0.0);
    for lp in 0..=l {
        let rest = l - lp;
        let s = if sign < 0 && rest % 2 == 1 { -1.0 } else { 1.0 };
        for mp in -lp..=lp {
            let mr = idx.m - mp;
            if mr.abs() > rest {
                continue;
            }
            let a = regular_solid_harmonic(SolidHarmonicIndex { l: lp as u32, m: mp }, x);
            let b = regular_solid_harmonic(SolidHarmonicIndex { l: rest as u32, m: mr }, y);
            acc += a * b * s;
        }
    }
    acc
}

fn transverse(v: &Vec3) -> (f64, f64) {
    (v[0].hypot(v[1]), v[1].atan2(v[0]))
}

/// Near-axis field `E₀ / √(|l|!) (r_⊥/w₀)^{|l|} exp[i(lφ + kz - ωt)]`.
pub fn field_raw(beam: &BeamConfig, pt: &FieldPoint) -> Complex64 {
    let al = beam.winding.unsigned_abs();
    let (rp, phi) = transverse(&pt.position);
    let mag = beam.amplitude / factorial_f64(al).sqrt() * rp.powi(al as i32);
    let phase = beam.winding as f64 * phi + beam.k_w0 * pt.position[2] - pt.time_phase;
    Complex64::from_polar(mag, phase)
}

/// Solid-harmonic form
/// `(-1)^{(l+|l|)/2} 2^{|l|} √(|l|!) E₀ ℛ_{|l|}^{l}(r_⊥/w₀) exp[i(kz - ωt)]`.
pub fn field_solid_form(beam: &BeamConfig, pt: &FieldPoint) -> Complex64 {
    let l = beam.winding;
    let al = l.unsigned_abs();
    let p = &pt.position;
    let rperp = [p[0], p[1], 0.0];
    let sh = regular_solid_harmonic(SolidHarmonicIndex { l: al, m: l }, &rperp);
    let sign = if l > 0 && l % 2 == 1 { -1.0 } else { 1.0 };
    let pref = sign * 2f64.powi(al as i32) * factorial_f64(al).sqrt() * beam.amplitude;
    sh * pref * Complex64::from_polar(1.0, beam.k_w0 * p[2] - pt.time_phase)
}

/// Which expansion of the translated field to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslatedForm {
    /// Double sum over `(l', m')` of solid-harmonic products.
    SolidDoubleSum,
    /// Double sum with the equatorial harmonics written through double
    /// factorials; only `m' = sgn(l) l'` survives.
    DoubleFactorial,
    /// The collapsed single sum over `l'`.
    SingleSum,
}

/// One `(l', m')` term of a translated-field expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslatedTerm {
    pub l_prime: u32,
    pub m_prime: i32,
    pub value: Complex64,
}

/// Geometry shared by the translated-field forms.
struct Displacement {
    /// `λ f |r_⊥|` with `f` the branch mass fraction.
    inner_perp: f64,
    inner_phi: f64,
    outer_perp: f64,
    outer_phi: f64,
    /// `±1` from the branch.
    sign: i32,
    plane_wave: Complex64,
}

fn displacement(
    beam: &BeamConfig,
    atom: &AtomSpec,
    cm: &Vec3,
    rel: &Vec3,
    lambda: f64,
    branch: Branch,
) -> Displacement {
    let f = branch.mass_fraction(atom);
    let sign = branch.sign();
    let (rp, phi) = transverse(rel);
    let (big_rp, big_phi) = transverse(cm);
    let z = cm[2] + sign as f64 * lambda * f * rel[2];
    Displacement {
        inner_perp: lambda * f * rp,
        inner_phi: phi,
        outer_perp: big_rp,
        outer_phi: big_phi,
        sign,
        plane_wave: Complex64::from_polar(beam.amplitude, beam.k_w0 * z),
    }
}

/// Displaced point `R ± λ (m_{n,e}/m_t) r` used by the given branch.
pub fn displaced_point(atom: &AtomSpec, cm: &Vec3, rel: &Vec3, lambda: f64, branch: Branch) -> Vec3 {
    let s = branch.sign() as f64 * lambda * branch.mass_fraction(atom);
    [cm[0] + s * rel[0], cm[1] + s * rel[1], cm[2] + s * rel[2]]
}

/// Term-by-term expansion of `E(R ± λ (m_{n,e}/m_t) r)` in one of the
/// double-sum forms. The terms add up to the field value.
pub fn field_translated_terms(
    beam: &BeamConfig,
    atom: &AtomSpec,
    cm: &Vec3,
    rel: &Vec3,
    lambda: f64,
    branch: Branch,
    form: TranslatedForm,
) -> Vec<TranslatedTerm> {
    let l = beam.winding;
    let al = l.unsigned_abs() as i32;
    let d = displacement(beam, atom, cm, rel, lambda, branch);
    let common = d.plane_wave * 2f64.powi(al) * factorial_f64(al as u32).sqrt();
    let mut terms = Vec::new();
    for lp in 0..=al {
        let rest = al - lp;
        let sgn = if d.sign < 0 && lp % 2 == 1 { -1.0 } else { 1.0 };
        let radial = sgn * d.inner_perp.powi(lp) * d.outer_perp.powi(rest);
        match form {
            TranslatedForm::SolidDoubleSum => {
                let phase_sign = if l > 0 && l % 2 == 1 { -1.0 } else { 1.0 };
                for mp in -lp..=lp {
                    let mr = l - mp;
                    if mr.abs() > rest {
                        continue;
                    }
                    let inner = c_coefficient(lp as u32, mp).unwrap()
                        * spherical_harmonic(lp as u32, mp, PI / 2.0, d.inner_phi).unwrap();
                    let outer = c_coefficient(rest as u32, mr).unwrap()
                        * spherical_harmonic(rest as u32, mr, PI / 2.0, d.outer_phi).unwrap();
                    terms.push(TranslatedTerm {
                        l_prime: lp as u32,
                        m_prime: mp,
                        value: common * inner * outer * (phase_sign * radial),
                    });
                }
            }
            TranslatedForm::DoubleFactorial => {
                for mp in -lp..=lp {
                    let (lp64, mp64, rest64) = (lp as i64, mp as i64, rest as i64);
                    let mr = (l - mp) as i64;
                    let value = if (lp64 + mp64).rem_euclid(2) != 0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        let weight = double_factorial_reciprocal(lp64 - mp64.abs())
                            * double_factorial_reciprocal(lp64 + mp64.abs())
                            * double_factorial_reciprocal(rest64 - mr.abs())
                            * double_factorial_reciprocal(rest64 + mr.abs());
                        let phase = Complex64::from_polar(
                            1.0,
                            mp as f64 * d.inner_phi + mr as f64 * d.outer_phi,
                        );
                        common * phase * (radial * weight)
                    };
                    terms.push(TranslatedTerm {
                        l_prime: lp as u32,
                        m_prime: mp,
                        value,
                    });
                }
            }
            TranslatedForm::SingleSum => {
                let s = l.signum();
                let weight = double_factorial_reciprocal(2 * lp as i64)
                    * double_factorial_reciprocal(2 * rest as i64);
                let phase = Complex64::from_polar(
                    1.0,
                    (s * lp) as f64 * d.inner_phi + (s * rest) as f64 * d.outer_phi,
                );
                terms.push(TranslatedTerm {
                    l_prime: lp as u32,
                    m_prime: s * lp,
                    value: common * phase * (radial * weight),
                });
            }
        }
    }
    terms
}

/// `E(R ± λ (m_{n,e}/m_t) r)` evaluated through one of the translated forms
/// (time phase zero). All forms agree with [`field_solid_form`] at
/// [`displaced_point`].
pub fn field_translated(
    beam: &BeamConfig,
    atom: &AtomSpec,
    cm: &Vec3,
    rel: &Vec3,
    lambda: f64,
    branch: Branch,
    form: TranslatedForm,
) -> Complex64 {
    field_translated_terms(beam, atom, cm, rel, lambda, branch, form)
        .iter()
        .map(|t| t.value)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beam(l: i32) -> BeamConfig {
        BeamConfig {
            winding: l,
            ..BeamConfig::default()
        }
    }

    #[test]
    fn c_coefficient_values() {
        assert!((c_coefficient(0, 0).unwrap() - (4.0 * PI).sqrt()).abs() < 1e-15);
        assert!((c_coefficient(1, 0).unwrap() - (4.0 * PI / 3.0).sqrt()).abs() < 1e-15);
        assert!((c_coefficient(2, 1).unwrap() - (4.0 * PI / 30.0).sqrt()).abs() < 1e-15);
        assert!(c_coefficient(1, 2).is_err());
        assert!(SolidHarmonicIndex::new(2, -3).is_err());
    }

    #[test]
    fn low_degree_solid_harmonics() {
        let v = [0.3, -1.2, 0.7];
        let r0 = regular_solid_harmonic(SolidHarmonicIndex { l: 0, m: 0 }, &v);
        assert!((r0 - 1.0).norm() < 1e-15);
        let r10 = regular_solid_harmonic(SolidHarmonicIndex { l: 1, m: 0 }, &[0.0, 0.0, 2.5]);
        assert!((r10 - 2.5).norm() < 1e-15);
        // ℛ_2^2 = (x + iy)² / (2 · 2!!) with the Condon-Shortley sign (+)
        let r22 = regular_solid_harmonic(SolidHarmonicIndex { l: 2, m: 2 }, &v);
        let z = Complex64::new(v[0], v[1]);
        assert!((r22 - z * z / 8.0).norm() < 1e-15);
        // ℛ_1^1 = -(x + iy) / 2
        let r11 = regular_solid_harmonic(SolidHarmonicIndex { l: 1, m: 1 }, &v);
        assert!((r11 + z / 2.0).norm() < 1e-15);
    }

    #[test]
    fn translation_low_orders() {
        let x = [0.2, 0.5, -0.4];
        let y = [-0.7, 0.1, 0.9];
        let t0 = translate_solid_harmonic(SolidHarmonicIndex { l: 0, m: 0 }, &x, &y, -1);
        assert!((t0 - 1.0).norm() < 1e-15);
        let t1 = translate_solid_harmonic(SolidHarmonicIndex { l: 1, m: 0 }, &x, &y, 1);
        assert!((t1 - (x[2] + y[2])).norm() < 1e-15);
        let t1m = translate_solid_harmonic(SolidHarmonicIndex { l: 1, m: 0 }, &x, &y, -1);
        assert!((t1m - (x[2] - y[2])).norm() < 1e-15);
    }

    #[test]
    fn field_special_points() {
        let pt = FieldPoint::new([0.3, 0.4, 0.0]);
        assert!((field_raw(&beam(0), &pt) - 1.0).norm() < 1e-15);
        let axis = FieldPoint::new([0.0, 0.0, 0.2]);
        assert_eq!(field_raw(&beam(2), &axis).norm(), 0.0);
        // the e^{-3iφ} winding
        let p = FieldPoint::new([0.01, 0.02, 0.0]);
        let v = field_raw(&beam(-3), &p);
        let phi = 0.02f64.atan2(0.01);
        let expect = (0.01f64.hypot(0.02)).powi(3) / 6f64.sqrt();
        assert!((v - Complex64::from_polar(expect, -3.0 * phi)).norm() < 1e-18);
    }

    #[test]
    fn solid_form_matches_raw() {
        for l in -6..=6 {
            for p in [[0.1, 0.2, 0.3], [-0.05, 0.3, -1.0], [0.4, -0.4, 0.0]] {
                let pt = FieldPoint {
                    position: p,
                    time_phase: 0.4,
                };
                let a = field_raw(&beam(l), &pt);
                let b = field_solid_form(&beam(l), &pt);
                assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300), "l={l}");
            }
        }
    }

    #[test]
    fn double_factorial_form_collapses() {
        let atom = AtomSpec::default();
        let cm = [0.02, -0.01, 0.1];
        let rel = [0.3, 0.4, -0.2];
        for l in [-4, -3, -2, -1, 1, 2, 3, 4] {
            let terms = field_translated_terms(
                &beam(l),
                &atom,
                &cm,
                &rel,
                0.6,
                Branch::Nuclear,
                TranslatedForm::DoubleFactorial,
            );
            for t in terms {
                if t.m_prime != l.signum() * t.l_prime as i32 {
                    assert_eq!(t.value, Complex64::new(0.0, 0.0), "l={l} {t:?}");
                }
            }
        }
    }
}
