use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

use vortrans::angular::{multi_harmonic_integral, wigner3j_int, AngularBraKet};
use vortrans::harmonics::{regular_solid_harmonic, translate_solid_harmonic, SolidHarmonicIndex};
use vortrans::model::CMState;
use vortrans::oracle::{sphere_quadrature, transverse_overlap};
use vortrans::specfun::{spherical_bessel, spherical_harmonic};

fn vec3() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0)
}

fn index(max_l: u32) -> impl Strategy<Value = (u32, i32)> {
    (0..=max_l).prop_flat_map(|l| (Just(l), -(l as i32)..=l as i32))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn translation_reproduces_shifted_harmonic((l, m) in index(8), x in vec3(), y in vec3(), minus in any::<bool>()) {
        let sign = if minus { -1 } else { 1 };
        let s = sign as f64;
        let idx = SolidHarmonicIndex::new(l, m).unwrap();
        let sum = translate_solid_harmonic(idx, &x, &y, sign);
        let direct = regular_solid_harmonic(idx, &[x[0] + s * y[0], x[1] + s * y[1], x[2] + s * y[2]]);
        let scale = 2f64.powi(l as i32 + 1);
        prop_assert!((sum - direct).norm() <= 1e-12 * scale.max(direct.norm()));
    }

    #[test]
    fn solid_harmonics_are_homogeneous((l, m) in index(8), v in vec3(), c in 0.1f64..3.0) {
        let idx = SolidHarmonicIndex::new(l, m).unwrap();
        let a = regular_solid_harmonic(idx, &[c * v[0], c * v[1], c * v[2]]);
        let b = regular_solid_harmonic(idx, &v) * c.powi(l as i32);
        prop_assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
    }

    #[test]
    fn wigner3j_symmetries(l1 in 0u32..5, l2 in 0u32..5, l3 in 0u32..5, m1 in -4i32..=4, m2 in -4i32..=4) {
        let m3 = -m1 - m2;
        let w = wigner3j_int(l1, l2, l3, m1, m2, m3);
        // cyclic permutation
        prop_assert_eq!(w, wigner3j_int(l2, l3, l1, m2, m3, m1));
        let phase = if (l1 + l2 + l3) % 2 == 0 { 1.0 } else { -1.0 };
        // odd permutation and m reversal
        prop_assert!((wigner3j_int(l2, l1, l3, m2, m1, m3) - phase * w).abs() < 1e-15);
        prop_assert!((wigner3j_int(l1, l2, l3, -m1, -m2, -m3) - phase * w).abs() < 1e-15);
    }

    #[test]
    fn multi_harmonic_matches_quadrature(f in index(4), a in index(3), s in -1i32..=1, p in 0u32..3, i in index(3)) {
        // put the ket on the m sum rule when possible
        let m_i = f.1 - a.1 - s;
        let i = if m_i.unsigned_abs() <= i.0 { (i.0, m_i) } else { i };
        let bk = AngularBraKet::new(f, vec![a, (1, s), (p, 0)], i).unwrap();
        let exact = multi_harmonic_integral(&bk);
        let quad = sphere_quadrature(|t, ph| {
            let y = |(l, m): (u32, i32)| spherical_harmonic(l, m, t, ph).unwrap();
            y(f).conj() * y(a) * y((1, s)) * y((p, 0)) * y(i)
        });
        prop_assert!((quad - Complex64::new(exact, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn plane_wave_expansion(a in 0.0f64..8.0, theta in 0.0f64..PI) {
        // e^{i a cos θ} = Σ_p i^p √(4π(2p+1)) j_p(a) Y_p^0(θ)
        let mut sum = Complex64::new(0.0, 0.0);
        let mut ip = Complex64::new(1.0, 0.0);
        for p in 0..60u32 {
            let y = spherical_harmonic(p, 0, theta, 0.0).unwrap();
            sum += ip * (4.0 * PI * (2 * p + 1) as f64).sqrt() * spherical_bessel(p, a) * y;
            ip *= Complex64::i();
        }
        let direct = Complex64::from_polar(1.0, a * theta.cos());
        prop_assert!((sum - direct).norm() < 1e-11);
    }
}

#[test]
fn cm_states_are_orthonormal() {
    let mut states = Vec::new();
    for n in 0..=8u32 {
        for k in 0..=n {
            states.push(CMState::new(n, 2 * k as i32 - n as i32, 0.0, 0.8).unwrap());
        }
    }
    for a in &states {
        for b in &states {
            let v = transverse_overlap(a, b, |_, _| Complex64::new(2.0 * PI, 0.0)).unwrap();
            let expect = if a == b { 1.0 } else { 0.0 };
            assert!((v - expect).norm() < 1e-9, "{a:?} {b:?}: {v}");
        }
    }
}

#[test]
fn spherical_harmonic_normalization() {
    let n = sphere_quadrature(|t, p| spherical_harmonic(6, -3, t, p).unwrap().norm_sqr().into());
    assert_relative_eq!(n.re, 1.0, max_relative = 1e-12);
}
