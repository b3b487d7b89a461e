use num_complex::Complex64;
use std::f64::consts::PI;
use vortrans::model::{AtomSpec, BeamConfig, Branch};
use vortrans::oracle::interaction_pointwise;
use vortrans::transitions::{channel_interaction, enumerate_channels};

#[test]
fn channel_sum_reproduces_field_integral() {
    let atom = AtomSpec::new(0.7, 0.3, 1.0).unwrap();
    let cm = [0.31, -0.22, 0.4];
    let rel = [0.05, 0.08, -0.06];
    for l in -3..=3 {
        let mut beam = BeamConfig::with_winding(l);
        beam.k_w0 = 6.0;
        beam.eps = BeamConfig::eps_from_cartesian(
            Complex64::new(0.6, 0.1),
            Complex64::new(-0.3, 0.5),
            Complex64::new(0.2, -0.4),
        );
        for branch in Branch::ALL {
            let expect = interaction_pointwise(&beam, &atom, &cm, &rel, branch).unwrap()
                * (3f64.sqrt() / (2.0 * PI * PI));
            let mut sum = Complex64::new(0.0, 0.0);
            for ch in enumerate_channels(l, 24) {
                if ch.branch == branch {
                    sum += channel_interaction(&beam, &atom, &cm, &rel, &ch).unwrap();
                }
            }
            let err = (sum - expect).norm() / expect.norm();
            assert!(err < 1e-10, "l={l} branch={branch:?}: {sum} vs {expect} ({err:e})");
        }
    }
}
