use num_complex::Complex64;

use vortrans::model::{AtomSpec, BeamConfig, Branch, CMState, ElectronicState};
use vortrans::oracle::{exact_cm_radial, matrix_element_oracle};
use vortrans::quad::gauss_legendre;
use vortrans::transitions::{
    cm_probability, cm_radial_element, conservation_check, electronic_radial_element,
    enumerate_channels, matrix_element, matrix_element_with, Kernel, Process, TransitionChannel,
};
use vortrans::verify::hydrogenic_basis;

fn channel(p: u32, l_prime: u32, sigma: i32, branch: Branch) -> TransitionChannel {
    TransitionChannel {
        p,
        l_prime,
        sigma,
        branch,
    }
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn amplitudes_match_full_quadrature_oracle() {
    let atom = AtomSpec::default();
    let mut beam = BeamConfig::with_winding(1);
    beam.k_a = 0.05;
    let s1 = ElectronicState::hydrogenic(1, 0, 0).unwrap();
    let p2 = ElectronicState::hydrogenic(2, 1, 1).unwrap();
    let d3 = ElectronicState::hydrogenic(3, 2, 2).unwrap();
    let w = 0.05;
    let k_f = beam.k_w0;
    let cases = [
        // dipole 1s → 2p, CM (6,0) → (5,1)
        (&s1, &p2, CMState::new(5, 1, k_f, w).unwrap(), channel(0, 0, 1, Branch::Nuclear)),
        (&s1, &p2, CMState::new(7, 1, k_f, w).unwrap(), channel(0, 0, 1, Branch::Electronic)),
        // quadrupole p=0, l'=1: 1s → 3d with Δm = 1 + σ, ΔM = 0
        (&s1, &d3, CMState::new(6, 0, k_f, w).unwrap(), channel(0, 1, 1, Branch::Nuclear)),
        (&s1, &ElectronicState::hydrogenic(3, 2, 0).unwrap(), CMState::new(6, 0, k_f, w).unwrap(), channel(0, 1, -1, Branch::Electronic)),
    ];
    let cm_i = CMState::new(6, 0, 0.0, w).unwrap();
    for (e_i, e_f, cm_f, ch) in cases {
        let got = matrix_element(&atom, &beam, e_i, e_f, &cm_i, &cm_f, &ch).unwrap();
        let oracle = matrix_element_oracle(&atom, &beam, e_i, e_f, &cm_i, &cm_f, &ch).unwrap();
        assert!(got.probability > 0.0, "{ch:?}");
        assert!(rel_err(got.amplitude, oracle) < 1e-7, "{ch:?}: {} vs {oracle}", got.amplitude);
    }
}

#[test]
fn parity_forbidden_quadrupole_is_exact_zero() {
    // 1s → 2p cannot go through an order-2 channel; (6,0) → (5,1) also
    // misses the ΔM = 0 rule of l' = 1 at l = 1
    let atom = AtomSpec::default();
    let beam = BeamConfig::with_winding(1);
    let s1 = ElectronicState::hydrogenic(1, 0, 0).unwrap();
    let p2 = ElectronicState::hydrogenic(2, 1, 1).unwrap();
    let cm_i = CMState::new(6, 0, 0.0, 0.05).unwrap();
    let cm_f = CMState::new(5, 1, beam.k_w0, 0.05).unwrap();
    for sigma in -1..=1 {
        let r = matrix_element(&atom, &beam, &s1, &p2, &cm_i, &cm_f, &channel(0, 1, sigma, Branch::Nuclear)).unwrap();
        assert_eq!(r.amplitude, Complex64::new(0.0, 0.0));
        assert!(!r.conserved.parity);
        let o = matrix_element_oracle(&atom, &beam, &s1, &p2, &cm_i, &cm_f, &channel(0, 1, sigma, Branch::Nuclear))
            .unwrap();
        assert!(o.norm() < 1e-20);
    }
}

#[test]
fn dipole_channels_keep_delta_m_equal_sigma() {
    let atom = AtomSpec::default();
    let basis = hydrogenic_basis(2).unwrap();
    for l in -3..=3 {
        let beam = BeamConfig::with_winding(l);
        let cm_i = CMState::new(6, 0, 0.0, 1e-2).unwrap();
        let cm_f = CMState::new(6 + l.unsigned_abs(), l, beam.k_w0, 1e-2).unwrap();
        for ch in enumerate_channels(l, 1) {
            for e_i in &basis {
                for e_f in &basis {
                    let r = matrix_element(&atom, &beam, e_i, e_f, &cm_i, &cm_f, &ch).unwrap();
                    if r.probability > 0.0 {
                        assert_eq!(e_f.m - e_i.m, ch.sigma);
                        assert_eq!((e_f.l as i32 - e_i.l as i32).abs(), 1);
                    }
                }
            }
        }
    }
}

#[test]
fn emission_results_pass_conservation() {
    let atom = AtomSpec::default();
    let basis = hydrogenic_basis(2).unwrap();
    let beam = BeamConfig::with_winding(-2);
    let hi = CMState::new(8, -2, beam.k_w0, 1e-2).unwrap();
    let lo = CMState::new(6, 0, 0.0, 1e-2).unwrap();
    let mut results = Vec::new();
    for ch in enumerate_channels(-2, 2) {
        for e_i in &basis {
            for e_f in &basis {
                results.push(
                    matrix_element_with(&atom, &beam, e_i, e_f, &hi, &lo, &ch, Process::Emission, Kernel::Full).unwrap(),
                );
            }
        }
    }
    let report = conservation_check(&results);
    assert!(report.nonzero > 0);
    assert!(report.is_clean(), "{:?}", report.violations);
}

#[test]
fn corrupted_amplitude_is_flagged() {
    let atom = AtomSpec::default();
    let beam = BeamConfig::with_winding(2);
    let s1 = ElectronicState::hydrogenic(1, 0, 0).unwrap();
    let p2 = ElectronicState::hydrogenic(2, 1, 0).unwrap();
    let cm_i = CMState::new(6, 0, 0.0, 1e-2).unwrap();
    let cm_f = CMState::new(6, 0, beam.k_w0, 1e-2).unwrap();
    let mut r = matrix_element(&atom, &beam, &s1, &p2, &cm_i, &cm_f, &channel(0, 0, 1, Branch::Nuclear)).unwrap();
    assert_eq!(r.probability, 0.0);
    assert!(conservation_check(std::slice::from_ref(&r)).is_clean());
    r.amplitude = Complex64::new(1e-3, 0.0);
    let report = conservation_check(&[r]);
    let rules: Vec<_> = report.violations.iter().map(|v| v.rule.as_str()).collect();
    assert!(rules.contains(&"angular_momentum_z"), "{rules:?}");
}

#[test]
fn closed_form_matches_exact_expansion_exhaustively() {
    let mut states = Vec::new();
    for n in 0..=10u32 {
        for k in 0..=n {
            states.push(CMState::new(n, 2 * k as i32 - n as i32, 0.0, 1.0).unwrap());
        }
    }
    for a in &states {
        for b in &states {
            let e = (b.m - a.m).unsigned_abs();
            if e > 6 {
                continue;
            }
            let got = cm_radial_element(a, b, e, 4.0).unwrap().value;
            let exact = exact_cm_radial(a, b, e).to_f64();
            assert!((got - exact).abs() <= 1e-9 * exact.abs(), "{a:?} {b:?}: {got} vs {exact}");
        }
    }
}

#[test]
fn zero_winding_is_plane_wave_limit() {
    let beam = BeamConfig::with_winding(0);
    let cm_i = CMState::new(6, 0, 0.0, 1e-4).unwrap();
    for n_f in 0..=12 {
        let p = cm_probability(&beam, &cm_i, n_f, 0).unwrap();
        let expect = if n_f == 6 { (4.0 / beam.k_w0).powi(2) } else { 0.0 };
        assert!((p - expect).abs() <= 1e-15 * expect, "N_f={n_f}: {p}");
    }
    assert_eq!(cm_probability(&beam, &cm_i, 6, 1).unwrap(), 0.0);
}

#[test]
fn final_state_parity_split() {
    for n_i in 0..=10u32 {
        for k in 0..=n_i {
            let m_i = 2 * k as i32 - n_i as i32;
            let cm_i = CMState::new(n_i, m_i, 0.0, 1e-3).unwrap();
            for l in [-4, -3, -2, -1, 1, 2, 3, 4] {
                let beam = BeamConfig::with_winding(l);
                let reach = |lp: u32| -> Vec<u32> {
                    (0..=n_i + 6)
                        .filter(|&n| cm_probability(&beam, &cm_i, n, lp).unwrap() > 0.0)
                        .collect()
                };
                let (d, q) = (reach(0), reach(1));
                assert!(!d.is_empty() && !q.is_empty());
                for a in &d {
                    for b in &q {
                        assert_eq!((a + b) % 2, 1, "N_i={n_i} M_i={m_i} l={l}");
                    }
                }
            }
        }
    }
}

#[test]
fn electronic_radial_matches_fixed_rule_refinement() {
    let atom = AtomSpec::new(0.6, 0.4, 1.0).unwrap();
    let s2 = ElectronicState::hydrogenic(2, 0, 0).unwrap();
    let ch = channel(0, 0, 0, Branch::Electronic);
    let k = 0.3;
    let adaptive = electronic_radial_element(&s2, &s2, &ch, k, &atom, Kernel::Full).unwrap();
    let fixed = |n: usize| -> f64 {
        let (x, w) = gauss_legendre(n);
        let (lx, lw) = gauss_legendre(40);
        let (a, b) = (0.0, 80.0);
        x.iter()
            .zip(&w)
            .map(|(xi, wi)| {
                let r = 0.5 * (b - a) * (xi + 1.0) + a;
                let arg = k * r * 0.4;
                // (−kr f/2) Si(a)/a for p = l' = 0, Si(a)/a = ∫_0^1 sinc(aλ) dλ
                let si_over_a: f64 = lx
                    .iter()
                    .zip(&lw)
                    .map(|(t, v)| {
                        let u = 0.5 * arg * (t + 1.0);
                        0.5 * v * if u == 0.0 { 1.0 } else { u.sin() / u }
                    })
                    .sum();
                let kernel = -0.5 * arg * si_over_a;
                0.5 * (b - a) * wi * s2.radial.eval(r).powi(2) * r * r * kernel
            })
            .sum()
    };
    let (coarse, fine) = (fixed(100), fixed(200));
    assert!((coarse - fine).abs() < 1e-12 * fine.abs());
    assert!(adaptive != 0.0 && adaptive.is_finite());
    assert!((adaptive - fine).abs() < 1e-9 * fine.abs(), "{adaptive} vs {fine}");
}
