//! Oracle cross-check suites with a serializable pass/fail report.
//!
//! Each check compares a closed-form routine against its brute-force
//! counterpart over a randomized (seeded) or exhaustive parameter set and
//! records the largest relative error seen. Relative errors are taken
//! against `max(|reference|, floor)` where the floor is stated per check;
//! it keeps exact zeros and cancellation points from producing spurious
//! infinities.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::angular::{multi_harmonic_integral, wigner3j_int, AngularBraKet};
use crate::error::{Error, Result};
use crate::harmonics::{
    displaced_point, field_raw, field_solid_form, field_translated, field_translated_terms,
    regular_solid_harmonic, translate_solid_harmonic, FieldPoint, SolidHarmonicIndex,
    TranslatedForm, Vec3,
};
use crate::model::{AtomSpec, BeamConfig, Branch, CMState, ElectronicState};
use crate::oracle::{
    exact_cm_radial, lambda_channel_integral, sphere_quadrature, transverse_overlap,
};
use crate::specfun::{
    assoc_laguerre, harmonic_at_equator, hyp1f2, ratio_to_f64, rat, spherical_bessel,
    spherical_harmonic,
};
use crate::transitions::{
    cm_probability, cm_radial_closed_form, cm_radial_element, conservation_check,
    enumerate_channels, lambda_kernel, matrix_element, ConservationReport, RadialRoute,
    TransitionResult,
};

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Specfun,
    Harmonics,
    Angular,
    Radial,
    Lambda,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::All,
        Suite::Specfun,
        Suite::Harmonics,
        Suite::Angular,
        Suite::Radial,
        Suite::Lambda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Specfun => "specfun",
            Suite::Harmonics => "harmonics",
            Suite::Angular => "angular",
            Suite::Radial => "radial",
            Suite::Lambda => "lambda",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub suite: Suite,
    pub samples: usize,
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Running maximum of relative errors.
struct Tracker {
    max: f64,
    samples: usize,
}

impl Tracker {
    fn new() -> Self {
        Self { max: 0.0, samples: 0 }
    }

    fn push(&mut self, value: f64, reference: f64, floor: f64) {
        self.push_abs((value - reference).abs(), reference.abs().max(floor));
    }

    fn push_complex(&mut self, value: Complex64, reference: Complex64, floor: f64) {
        self.push_abs((value - reference).norm(), reference.norm().max(floor));
    }

    fn push_abs(&mut self, diff: f64, denom: f64) {
        self.samples += 1;
        let e = if diff == 0.0 { 0.0 } else { diff / denom };
        // NaN must fail the check
        if e.is_nan() || e > self.max {
            self.max = if e.is_nan() { f64::INFINITY } else { e };
        }
    }

    fn finish(self, name: &str, suite: Suite, tolerance: f64, start: Instant) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            suite,
            samples: self.samples,
            max_rel_error: self.max,
            tolerance,
            passed: self.max <= tolerance,
            seconds: start.elapsed().as_secs_f64(),
            note: None,
        }
    }
}

fn failed(name: &str, suite: Suite, tolerance: f64, start: Instant, err: &Error) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        suite,
        samples: 0,
        max_rel_error: f64::INFINITY,
        tolerance,
        passed: false,
        seconds: start.elapsed().as_secs_f64(),
        note: Some(err.to_string()),
    }
}

fn guarded(name: &str, suite: Suite, tolerance: f64, f: impl FnOnce() -> Result<CheckResult>) -> CheckResult {
    let start = Instant::now();
    f().unwrap_or_else(|e| failed(name, suite, tolerance, start, &e))
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_vec(rng: &mut ChaCha8Rng, half_width: f64) -> Vec3 {
    [
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    ]
}

// ---------------------------------------------------------------- specfun

/// `j_p(x)` against its power series summed in exact rationals at rational
/// `x = k/8`, `p <= 12`, `x <= 20`.
pub fn check_bessel(seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut rng = rng_for(seed, 1);
    let mut t = Tracker::new();
    for _ in 0..60 {
        let p: u32 = rng.gen_range(0..=12);
        let k: i64 = rng.gen_range(1..=160);
        let x = rat(k, 8);
        // x^p Σ_j (-x²/2)^j / (j! (2p+2j+1)!!)
        let mut lead = BigRational::one();
        for i in 1..=p {
            lead = lead * &x / rat(2 * i as i64 + 1, 1);
        }
        let y = -(&x * &x) / rat(2, 1);
        let mut term = BigRational::one();
        let mut sum = BigRational::one();
        for j in 1..400u32 {
            term = term * &y / rat(j as i64 * (2 * p as i64 + 2 * j as i64 + 1), 1);
            sum += &term;
            if j > 20 && ratio_to_f64(&term).abs() < 1e-40 {
                break;
            }
        }
        let exact = ratio_to_f64(&(lead * sum));
        let xf = k as f64 / 8.0;
        // floor follows the 1/x envelope of j_p
        t.push(spherical_bessel(p, xf), exact, 1e-12 / xf.max(1.0));
    }
    t.finish("bessel_vs_exact_series", Suite::Specfun, 1e-11, start)
}

/// `₁F₂` against exact rational summation at rational arguments.
pub fn check_hyp1f2(seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut rng = rng_for(seed, 2);
    let mut t = Tracker::new();
    for _ in 0..60 {
        let a = rat(rng.gen_range(1..=12), 2);
        let b1 = rat(rng.gen_range(1..=12), 2);
        let b2 = rat(rng.gen_range(1..=12), 2);
        let z = rat(-rng.gen_range(0..=400), 16);
        let mut term = BigRational::one();
        let mut sum = BigRational::one();
        for k in 0..600i64 {
            let kk = rat(k, 1);
            term = term * (&a + &kk) * &z / ((&b1 + &kk) * (&b2 + &kk) * rat(k + 1, 1));
            sum += &term;
            if term.is_zero() || (k > 30 && ratio_to_f64(&term).abs() < 1e-40) {
                break;
            }
        }
        let f = |r: &BigRational| ratio_to_f64(r);
        let v = hyp1f2(f(&a), f(&b1), f(&b2), f(&z));
        match v {
            Ok(v) => t.push(v, f(&sum), 1e-12),
            Err(e) => return failed("hyp1f2_vs_exact_series", Suite::Specfun, 1e-12, start, &e),
        }
    }
    t.finish("hyp1f2_vs_exact_series", Suite::Specfun, 1e-11, start)
}

/// Laguerre recurrence against the exact expansion evaluated at rational
/// points; error relative to the absolute term sum.
pub fn check_laguerre(seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut rng = rng_for(seed, 3);
    let mut t = Tracker::new();
    for _ in 0..200 {
        let p = rng.gen_range(0..=20);
        let alpha = rng.gen_range(0..=20);
        let x = rat(rng.gen_range(0..=400), 8);
        let poly = assoc_laguerre(p, alpha);
        let exact = ratio_to_f64(&poly.eval_exact(&x));
        let xf = ratio_to_f64(&x);
        t.push(poly.eval_recurrence(xf), exact, 1e-3 * poly.abs_term_sum(xf));
    }
    t.finish("laguerre_recurrence_vs_exact", Suite::Specfun, 1e-11, start)
}

/// Double-factorial closed form of `Y_l^m(π/2, 0)` against the Legendre
/// recursion, `l <= 16`.
pub fn check_equator_harmonics() -> CheckResult {
    let start = Instant::now();
    let mut t = Tracker::new();
    for l in 0..=16u32 {
        for m in -(l as i32)..=l as i32 {
            let direct = spherical_harmonic(l, m, std::f64::consts::FRAC_PI_2, 0.0).expect("valid");
            let closed = harmonic_at_equator(l, m).expect("valid");
            t.push_complex(Complex64::new(closed, 0.0), direct, 1e-3);
        }
    }
    t.finish("equator_harmonic_closed_form", Suite::Specfun, 1e-12, start)
}

// -------------------------------------------------------------- harmonics

/// Translation theorem for `l <= 8`, every `m`, 100 random vector pairs and
/// both signs. Floor: `1e-3 (|x| + |y|)^l 𝒞`-scale, taken as the largest
/// term magnitude.
pub fn check_translation_identity(seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut rng = rng_for(seed, 10);
    let mut t = Tracker::new();
    for _ in 0..100 {
        let x = random_vec(&mut rng, 1.0);
        let y = random_vec(&mut rng, 1.0);
        for sign in [1, -1] {
            let target = [x[0] + sign as f64 * y[0], x[1] + sign as f64 * y[1], x[2] + sign as f64 * y[2]];
            for l in 0..=8u32 {
                let scale = regular_scale(l, &x, &y);
                for m in -(l as i32)..=l as i32 {
                    let idx = SolidHarmonicIndex { l, m };
                    let sum = translate_solid_harmonic(idx, &x, &y, sign);
                    let direct = regular_solid_harmonic(idx, &target);
                    t.push_complex(sum, direct, 1e-3 * scale);
                }
            }
        }
    }
    t.finish("translation_identity", Suite::Harmonics, 1e-10, start)
}

/// Magnitude scale `(|x| + |y|)^l / l!` of degree-`l` solid harmonics.
fn regular_scale(l: u32, x: &Vec3, y: &Vec3) -> f64 {
    let n = |v: &Vec3| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (n(x) + n(y)).powi(l as i32) / crate::specfun::factorial_f64(l)
}

/// Near-axis field in its raw and solid-harmonic forms, `|l| <= 6`, 1000
/// random points.
pub fn check_field_forms(seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut rng = rng_for(seed, 11);
    let mut t = Tracker::new();
    for _ in 0..1000 {
        let l = rng.gen_range(-6..=6);
        let beam = BeamConfig::with_winding(l);
        let pt = FieldPoint::new(random_vec(&mut rng, 1.5));
        let raw = field_raw(&beam, &pt);
        t.push_complex(field_solid_form(&beam, &pt), raw, 1e-300);
    }
    t.finish("field_raw_vs_solid_form", Suite::Harmonics, 1e-12, start)
}

/// The three translated-field forms against the field at the displaced
/// point, `|l| <= 4`, both branches, random `λ`.
pub fn check_translated_forms(seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut rng = rng_for(seed, 12);
    let atom = AtomSpec::new(0.64, 0.36, 1.0).expect("valid fractions");
    let mut t = Tracker::new();
    for _ in 0..400 {
        let l = rng.gen_range(-4..=4);
        let beam = BeamConfig::with_winding(l);
        let cm = random_vec(&mut rng, 1.0);
        let rel = random_vec(&mut rng, 1.0);
        let lambda = rng.gen_range(0.0..1.0);
        for branch in Branch::ALL {
            let p = displaced_point(&atom, &cm, &rel, lambda, branch);
            let direct = field_solid_form(&beam, &FieldPoint::new(p));
            let floor = 1e-3 * beam.amplitude * regular_scale(l.unsigned_abs(), &cm, &rel)
                * 2f64.powi(l.abs())
                * crate::specfun::factorial_f64(l.unsigned_abs()).sqrt();
            for form in [TranslatedForm::SolidDoubleSum, TranslatedForm::DoubleFactorial, TranslatedForm::SingleSum] {
                t.push_complex(field_translated(&beam, &atom, &cm, &rel, lambda, branch, form), direct, floor);
            }
        }
    }
    t.finish("translated_forms_vs_displaced_field", Suite::Harmonics, 1e-11, start)
}

/// In the double-factorial form, every term with `m' != sgn(l) l'` must be
/// exactly zero; the reported error is the largest such term magnitude.
pub fn check_double_sum_collapse(seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut rng = rng_for(seed, 13);
    let atom = AtomSpec::default();
    let mut t = Tracker::new();
    for l in (-4..=4).filter(|&l| l != 0) {
        let beam = BeamConfig::with_winding(l);
        for _ in 0..50 {
            let cm = random_vec(&mut rng, 1.0);
            let rel = random_vec(&mut rng, 1.0);
            let lambda = rng.gen_range(0.0..1.0);
            for branch in Branch::ALL {
                for term in field_translated_terms(&beam, &atom, &cm, &rel, lambda, branch, TranslatedForm::DoubleFactorial) {
                    if term.m_prime != l.signum() * term.l_prime as i32 {
                        t.push_abs(term.value.norm(), 1.0);
                    }
                }
            }
        }
    }
    let mut r = t.finish("double_sum_collapse", Suite::Harmonics, 0.0, start);
    r.note = Some("max |term| over m' != sgn(l) l'; must be exactly 0".into());
    r
}

// ---------------------------------------------------------------- angular

/// `multi_harmonic_integral` for the four-factor pattern against sphere
/// quadrature, random indices `l <= 4`.
pub fn check_multi_harmonic(seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut rng = rng_for(seed, 20);
    let mut t = Tracker::new();
    let pick = |rng: &mut ChaCha8Rng| {
        let l: u32 = rng.gen_range(0..=4);
        let m = rng.gen_range(-(l as i32)..=l as i32);
        (l, m)
    };
    let mut nonzero = 0;
    while nonzero < 60 {
        let f = pick(&mut rng);
        let a = pick(&mut rng);
        let s = rng.gen_range(-1..=1);
        let p = (rng.gen_range(0..=4u32), 0);
        let mut i = pick(&mut rng);
        // steer half the samples onto the m sum rule
        if rng.gen_bool(0.5) {
            let m = f.1 - a.1 - s;
            if m.unsigned_abs() <= i.0 {
                i.1 = m;
            }
        }
        let bk = AngularBraKet::new(f, vec![a, (1, s), p], i).expect("valid");
        let exact = multi_harmonic_integral(&bk);
        let quad = sphere_quadrature(|th, ph| {
            let y = |(l, m): (u32, i32)| spherical_harmonic(l, m, th, ph).expect("valid");
            y(f).conj() * y(a) * y((1, s)) * y(p) * y(i)
        });
        if exact != 0.0 {
            nonzero += 1;
        }
        t.push_complex(Complex64::new(exact, 0.0), quad, 1e-3);
    }
    t.finish("multi_harmonic_vs_sphere_quadrature", Suite::Angular, 1e-10, start)
}

/// Orthogonality `Σ_{m1,m2} (2j+1) (l1 l2 j; m1 m2 m)(l1 l2 j'; m1 m2 m) = δ_{jj'}`.
pub fn check_3j_orthogonality() -> CheckResult {
    let start = Instant::now();
    let mut t = Tracker::new();
    for l1 in 0..=4u32 {
        for l2 in 0..=4u32 {
            for j in l1.abs_diff(l2)..=l1 + l2 {
                for jp in l1.abs_diff(l2)..=l1 + l2 {
                    let mm = j.min(jp) as i32;
                    for m in -mm..=mm {
                        let mut acc = 0.0;
                        for m1 in -(l1 as i32)..=l1 as i32 {
                            let m2 = -m - m1;
                            if m2.unsigned_abs() > l2 {
                                continue;
                            }
                            acc += (2 * j + 1) as f64
                                * wigner3j_int(l1, l2, j, m1, m2, m)
                                * wigner3j_int(l1, l2, jp, m1, m2, m);
                        }
                        t.push(acc, if j == jp { 1.0 } else { 0.0 }, 1.0);
                    }
                }
            }
        }
    }
    t.finish("wigner3j_orthogonality", Suite::Angular, 1e-13, start)
}

/// Hydrogen-like states with `n <= n_max`, all `l`, `m`.
pub fn hydrogenic_basis(n_max: u32) -> Result<Vec<ElectronicState>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for l in 0..n {
            for m in -(l as i32)..=l as i32 {
                out.push(ElectronicState::hydrogenic(n, l, m)?);
            }
        }
    }
    Ok(out)
}

/// Absorption results over every order `<= 2` channel, `|l| <= max_abs_l`,
/// hydrogen-like pairs with `n <= 3`, from CM state `(6, 0)` to the state
/// selected by the `ΔM` rule (`N_f = N_i + |ΔM|`) and to one that misses it.
pub fn conservation_sweep(max_abs_l: i32, w_ratio: f64) -> Result<Vec<TransitionResult>> {
    let basis = hydrogenic_basis(3)?;
    let atom = AtomSpec::default();
    let cm_i = CMState::new(6, 0, 0.0, w_ratio)?;
    let mut out = Vec::new();
    for l in -max_abs_l..=max_abs_l {
        let beam = BeamConfig::with_winding(l);
        let k_f = cm_i.k + beam.k_w0;
        for ch in enumerate_channels(l, 2) {
            let dm = ch.delta_cm_m(l);
            let hit = CMState::new(6 + dm.unsigned_abs(), dm, k_f, w_ratio)?;
            let miss = CMState::new(8 + dm.unsigned_abs(), dm + 2, k_f, w_ratio)?;
            for e_i in &basis {
                for e_f in &basis {
                    for cm_f in [&hit, &miss] {
                        out.push(matrix_element(&atom, &beam, e_i, e_f, &cm_i, cm_f, &ch)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Conservation rules over [`conservation_sweep`]; the reported error is
/// the number of violations.
pub fn check_conservation(max_abs_l: i32) -> CheckResult {
    guarded("conservation_sweep", Suite::Angular, 0.0, || {
        let start = Instant::now();
        let results = conservation_sweep(max_abs_l, 1e-3)?;
        let report: ConservationReport = conservation_check(&results);
        let dipole_dm_ok = results
            .iter()
            .filter(|r| r.probability > 0.0 && r.channel.l_prime == 0)
            .all(|r| r.delta_m() == r.channel.sigma);
        let bad = report.violations.len() + usize::from(!dipole_dm_ok);
        Ok(CheckResult {
            name: "conservation_sweep".into(),
            suite: Suite::Angular,
            samples: report.checked,
            max_rel_error: bad as f64,
            tolerance: 0.0,
            passed: bad == 0 && report.nonzero > 0,
            seconds: start.elapsed().as_secs_f64(),
            note: Some(format!(
                "{} nonzero amplitudes, {} violations, l'=0 rows with Δm = σ: {}",
                report.nonzero,
                report.violations.len(),
                dipole_dm_ok
            )),
        })
    })
}

// ----------------------------------------------------------------- radial

fn random_radial_case(rng: &mut ChaCha8Rng, n_max: u32, e_max: u32) -> (CMState, CMState, u32) {
    loop {
        let n_i = rng.gen_range(0..=n_max);
        let m_i = 2 * rng.gen_range(0..=n_i) as i32 - n_i as i32;
        let e = rng.gen_range(0..=e_max);
        let m_f = if rng.gen_bool(0.5) { m_i + e as i32 } else { m_i - e as i32 };
        let n_f = rng.gen_range(0..=n_max);
        if CMState::exists(n_f as i64, m_f as i64) {
            let a = CMState::new(n_i, m_i, 0.0, 1.0).expect("exists");
            let b = CMState::new(n_f, m_f, 0.0, 1.0).expect("exists");
            return (a, b, e);
        }
    }
}

/// Closed-form CM radial element (through [`cm_radial_element`] at
/// `k w_R = 4`) against the exact expansion, 500 random cases with
/// `N <= 20`, `e <= 6`. Closed-form routes are also compared exactly.
pub fn check_cm_radial(seed: u64, cases: usize) -> CheckResult {
    guarded("cm_radial_closed_form_vs_exact", Suite::Radial, 1e-9, || {
        let start = Instant::now();
        let mut rng = rng_for(seed, 30);
        let mut t = Tracker::new();
        let mut routes = [0usize; 3];
        let mut exact_mismatch = 0;
        for _ in 0..cases {
            let (a, b, e) = random_radial_case(&mut rng, 20, 6);
            let oracle = exact_cm_radial(&a, &b, e);
            let r = cm_radial_element(&a, &b, e, 4.0)?;
            let closed = match r.route {
                RadialRoute::ClosedForm => {
                    routes[0] += 1;
                    Some(cm_radial_closed_form(&a, &b, e)?)
                }
                RadialRoute::ClosedFormSwapped => {
                    routes[1] += 1;
                    Some(cm_radial_closed_form(&b, &a, e)?)
                }
                RadialRoute::ExactFallback => {
                    routes[2] += 1;
                    None
                }
            };
            if closed.is_some_and(|c| !c.same_value(&oracle)) {
                exact_mismatch += 1;
            }
            t.push(r.value, oracle.to_f64(), 1e-300);
        }
        let mut res = t.finish("cm_radial_closed_form_vs_exact", Suite::Radial, 1e-9, start);
        res.passed &= exact_mismatch == 0;
        res.note = Some(format!(
            "routes: closed form {}, exchanged {}, exact fallback {}; exact mismatches {exact_mismatch}",
            routes[0], routes[1], routes[2]
        ));
        Ok(res)
    })
}

/// `2π ×` transverse overlap with weight `(kR/4)^e e^{±ieΦ}` against the
/// closed form, random `N <= 10`, `e <= 4`.
pub fn check_transverse_overlap(seed: u64) -> CheckResult {
    guarded("transverse_overlap_vs_closed_form", Suite::Radial, 1e-8, || {
        let start = Instant::now();
        let mut rng = rng_for(seed, 31);
        let mut t = Tracker::new();
        let k = 3.0;
        for _ in 0..40 {
            let (a, b, e) = random_radial_case(&mut rng, 10, 4);
            let (a, b) = (a.with_spread(0.6)?, b.with_spread(0.6)?);
            let turn = (b.m - a.m) as f64;
            let quad = transverse_overlap(&b, &a, |r, phi| Complex64::from_polar((k * r / 4.0).powi(e as i32), turn * phi))?
                * (2.0 * std::f64::consts::PI);
            let closed = cm_radial_element(&a, &b, e, k * 0.6)?.value;
            // floor: the element scale of a unit-overlap pair
            t.push_complex(quad, Complex64::new(closed, 0.0), 1e-6 * (k * 0.6 / 4.0).powi(e as i32));
        }
        Ok(t.finish("transverse_overlap_vs_closed_form", Suite::Radial, 1e-8, start))
    })
}

/// Least-squares slope of `ln P_CM` against `ln(w_R/w₀)` over four decades,
/// for `1 <= |l| <= 4`, `l' <= 1`. Passes when the slope is `2(|l| - l')`
/// to `1e-6` and the largest fit residual is below `1e-6`.
pub fn check_scaling_law() -> CheckResult {
    guarded("cm_probability_scaling_law", Suite::Radial, 1e-6, || {
        let start = Instant::now();
        let mut worst = 0.0f64;
        let mut samples = 0;
        let mut fits = Vec::new();
        for l in [-4, -3, -2, -1, 1, 2, 3, 4] {
            let beam = BeamConfig::with_winding(l);
            for lp in 0..=1u32.min(l.unsigned_abs()) {
                let e = l.unsigned_abs() - lp;
                let (xs, ys): (Vec<f64>, Vec<f64>) = (0..=8)
                    .map(|k| {
                        let w = 10f64.powf(-5.0 + 0.5 * k as f64);
                        let cm = CMState::new(6, 0, 0.0, w).expect("valid");
                        let p = cm_probability(&beam, &cm, 6 + e, lp).expect("finite");
                        (w.ln(), p.ln())
                    })
                    .unzip();
                let (slope, resid) = linear_fit(&xs, &ys);
                let expect = 2.0 * e as f64;
                worst = worst.max((slope - expect).abs()).max(resid);
                samples += xs.len();
                fits.push(format!("l={l},l'={lp}:{slope:.9}"));
            }
        }
        Ok(CheckResult {
            name: "cm_probability_scaling_law".into(),
            suite: Suite::Radial,
            samples,
            max_rel_error: worst,
            tolerance: 1e-6,
            passed: worst <= 1e-6,
            seconds: start.elapsed().as_secs_f64(),
            note: Some(format!(
                "documented discrepancy: the probability is the squared amplitude, so P_CM ∝ (w_R/w₀)^(2(|l|-l')), twice the exponent |l|-l' quoted for the amplitude-level estimate; slopes {}",
                fits.join(" ")
            )),
        })
    })
}

/// Slope and largest absolute residual of the least-squares line.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let resid = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (my + slope * (x - mx))).abs())
        .fold(0.0, f64::max);
    (slope, resid)
}

// ----------------------------------------------------------------- lambda

/// Closed-form λ integral against adaptive quadrature over
/// `p, l' <= 4`, `a ∈ {0.1, 1, 5}`.
pub fn check_lambda() -> CheckResult {
    guarded("lambda_closed_form_vs_quadrature", Suite::Lambda, 1e-10, || {
        let start = Instant::now();
        let mut t = Tracker::new();
        for p in 0..=4 {
            for lp in 0..=4 {
                for a in [0.1, 1.0, 5.0] {
                    let quad = lambda_channel_integral(p, lp, a)?;
                    t.push(lambda_kernel(p, lp, a)?, quad, 1e-300);
                }
            }
        }
        Ok(t.finish("lambda_closed_form_vs_quadrature", Suite::Lambda, 1e-10, start))
    })
}

// ------------------------------------------------------------------ suites

/// Runs the checks of `suite`.
pub fn run_suite(suite: Suite, seed: u64) -> VerifyReport {
    let want = |s: Suite| suite == Suite::All || suite == s;
    let mut checks = Vec::new();
    if want(Suite::Specfun) {
        checks.push(check_bessel(seed));
        checks.push(check_hyp1f2(seed));
        checks.push(check_laguerre(seed));
        checks.push(check_equator_harmonics());
    }
    if want(Suite::Harmonics) {
        checks.push(check_translation_identity(seed));
        checks.push(check_field_forms(seed));
        checks.push(check_translated_forms(seed));
        checks.push(check_double_sum_collapse(seed));
    }
    if want(Suite::Angular) {
        checks.push(check_multi_harmonic(seed));
        checks.push(check_3j_orthogonality());
        checks.push(check_conservation(4));
    }
    if want(Suite::Radial) {
        checks.push(check_cm_radial(seed, 500));
        checks.push(check_transverse_overlap(seed));
        checks.push(check_scaling_law());
    }
    if want(Suite::Lambda) {
        checks.push(check_lambda());
    }
    VerifyReport {
        suite,
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
