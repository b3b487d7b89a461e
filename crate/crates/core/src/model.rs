//! State and configuration types.
//!
//! Unit conventions: CM lengths are in units of the beam waist `w₀`, so the
//! trap spread `w_R` is the ratio `w_R / w₀` and CM energies are in units of
//! `ħ² / (w_R² m_t)`. Electronic radial coordinates are in an arbitrary unit
//! `u`; [`BeamConfig::k_a`] is the wavenumber in `1/u`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::integrate_semi_infinite;
use crate::specfun::factorial_f64;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidState(msg.into()))
}

/// Eigenstate of the 2D isotropic trap times an axial plane wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CmStateFields")]
pub struct CMState {
    /// Trap energy number `N`.
    pub n: u32,
    /// CM angular momentum `M` in units of `ħ`.
    pub m: i32,
    /// Axial wavenumber `K` in units of `1/w₀`.
    pub k: f64,
    /// Trap spread `w_R` in units of `w₀`.
    pub w_r: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CmStateFields {
    n: u32,
    m: i32,
    #[serde(default)]
    k: f64,
    w_r: f64,
}

impl TryFrom<CmStateFields> for CMState {
    type Error = Error;
    fn try_from(f: CmStateFields) -> Result<Self> {
        CMState::new(f.n, f.m, f.k, f.w_r)
    }
}

impl CMState {
    pub fn new(n: u32, m: i32, k: f64, w_r: f64) -> Result<Self> {
        if m.unsigned_abs() > n {
            return invalid(format!("CM state needs |M| <= N, got N={n}, M={m}"));
        }
        if (n as i64 - m as i64).rem_euclid(2) != 0 {
            return invalid(format!("CM state needs N and M of equal parity, got N={n}, M={m}"));
        }
        if !(w_r.is_finite() && w_r > 0.0) {
            return invalid(format!("CM spread w_R must be positive and finite, got {w_r}"));
        }
        if !k.is_finite() {
            return invalid("axial wavenumber must be finite");
        }
        Ok(Self { n, m, k, w_r })
    }

    /// Whether `(N, M)` labels an existing trap state.
    pub fn exists(n: i64, m: i64) -> bool {
        n >= 0 && m.abs() <= n && (n - m).rem_euclid(2) == 0
    }

    /// `n⁻ = (N - |M|) / 2`, the radial Laguerre degree.
    pub fn n_minus(&self) -> u32 {
        (self.n - self.m.unsigned_abs()) / 2
    }

    /// `n⁺ = (N + |M|) / 2`.
    pub fn n_plus(&self) -> u32 {
        (self.n + self.m.unsigned_abs()) / 2
    }

    /// `𝒩 = √(2 n⁻! / n⁺!) / w_R`.
    pub fn normalization(&self) -> f64 {
        (2.0 * factorial_f64(self.n_minus()) / factorial_f64(self.n_plus())).sqrt() / self.w_r
    }

    /// `G_{N,M}(x) = 𝒩 x^{|M|} L_{n⁻}^{|M|}(x²) e^{-x²/2}` at `x = R_⊥ / w_R`.
    pub fn radial(&self, r_perp: f64) -> f64 {
        let x = r_perp / self.w_r;
        let am = self.m.unsigned_abs();
        let lag = crate::specfun::assoc_laguerre_value(self.n_minus(), am, x * x);
        self.normalization() * x.powi(am as i32) * lag * (-0.5 * x * x).exp()
    }

    pub fn with_spread(&self, w_r: f64) -> Result<Self> {
        Self::new(self.n, self.m, self.k, w_r)
    }
}

/// `Ψ_R = (1/2π) G_{N,M}(R_⊥/w_R) exp[i(K R_z + M Φ)]`.
///
/// The transverse integral of `|Ψ_R|²` is `1/(2π)`; the remaining `1/(2π)`
/// is the delta normalization of the axial plane wave.
pub fn cm_wavefunction(state: &CMState, r_perp: f64, phi: f64, r_z: f64) -> Complex64 {
    Complex64::from_polar(
        state.radial(r_perp) / (2.0 * PI),
        state.k * r_z + state.m as f64 * phi,
    )
}

/// Trap energy `(N + 1)` in units of `ħ² / (w_R² m_t)`.
pub fn cm_energy(state: &CMState) -> f64 {
    state.n as f64 + 1.0
}

/// Radial profile `r ↦ F_{n,l}(r)` of an electronic state.
#[derive(Clone)]
pub struct RadialProfile {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Characteristic length, used to scale quadrature maps.
    pub scale: f64,
    pub label: String,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("label", &self.label)
            .field("scale", &self.scale)
            .finish()
    }
}

impl RadialProfile {
    pub fn new(
        label: impl Into<String>,
        scale: f64,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            f: Arc::new(f),
            scale,
            label: label.into(),
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.f)(r)
    }

    /// `∫_0^∞ g(r) dr` with the map `r = scale · t/(1-t)`.
    pub fn integrate(&self, g: impl Fn(f64) -> f64, rel_tol: f64) -> Result<f64> {
        let s = self.scale;
        integrate_semi_infinite(|u| s * g(s * u), rel_tol, 1e-300, 4000).map(|i| i.value)
    }

    /// `∫ F² r² dr`.
    pub fn norm_squared(&self) -> Result<f64> {
        self.integrate(
            |r| {
                let v = self.eval(r) * r;
                v * v
            },
            1e-12,
        )
    }
}

/// Normalized hydrogen-like radial function with Bohr-radius analogue
/// `scale`:
///
/// `F(r) = √((2/na)³ (n-l-1)! / (2n (n+l)!)) ρ^l e^{-ρ/2} L_{n-l-1}^{2l+1}(ρ)`,
/// `ρ = 2r / (na)`.
pub fn hydrogenic_radial(n: u32, l: u32, scale: f64) -> Result<RadialProfile> {
    if n == 0 || l >= n {
        return Err(Error::Domain(format!(
            "hydrogenic radial function needs 0 <= l < n, got n={n}, l={l}"
        )));
    }
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::Domain(format!("radial scale must be positive, got {scale}")));
    }
    let na = n as f64 * scale;
    let norm = ((2.0 / na).powi(3) * factorial_f64(n - l - 1)
        / (2.0 * n as f64 * factorial_f64(n + l)))
    .sqrt();
    let f = move |r: f64| {
        let rho = 2.0 * r / na;
        norm * rho.powi(l as i32)
            * (-0.5 * rho).exp()
            * crate::specfun::assoc_laguerre_value(n - l - 1, 2 * l + 1, rho)
    };
    Ok(RadialProfile::new(
        format!("hydrogenic(n={n}, l={l}, a={scale})"),
        na,
        f,
    ))
}

/// Electronic state `F_{n,l}(r) Y_l^m(θ, φ)`.
#[derive(Debug, Clone)]
pub struct ElectronicState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    pub radial: RadialProfile,
}

impl ElectronicState {
    /// Checks the quantum-number bounds and that `∫ F² r² dr = 1` to `1e-8`.
    pub fn new(n: u32, l: u32, m: i32, radial: RadialProfile) -> Result<Self> {
        if n == 0 || l >= n {
            return invalid(format!("electronic state needs 0 <= l < n, got n={n}, l={l}"));
        }
        if m.unsigned_abs() > l {
            return invalid(format!("electronic state needs |m| <= l, got l={l}, m={m}"));
        }
        let norm = radial.norm_squared()?;
        if (norm - 1.0).abs() > 1e-8 {
            return invalid(format!(
                "radial profile {} has ∫F²r²dr = {norm}, expected 1",
                radial.label
            ));
        }
        Ok(Self { n, l, m, radial })
    }

    /// Hydrogen-like state with unit Bohr radius.
    pub fn hydrogenic(n: u32, l: u32, m: i32) -> Result<Self> {
        Self::new(n, l, m, hydrogenic_radial(n, l, 1.0)?)
    }
}

/// Laguerre-Gaussian beam parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamConfig {
    /// Winding number `l`.
    pub winding: i32,
    /// Dimensionless `k w₀`.
    #[serde(default = "default_k_w0")]
    pub k_w0: f64,
    /// Wavenumber in units of the electronic length unit, `k a`.
    #[serde(default = "default_k_a")]
    pub k_a: f64,
    /// Spherical polarization amplitudes `(ε₋₁, ε₀, ε₊₁)`.
    #[serde(default = "default_eps")]
    pub eps: [Complex64; 3],
    /// Scale of `E₀`.
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
}

pub const DEFAULT_K_W0: f64 = 40.0;
/// `k a₀` of hydrogen Lyman-α (121.6 nm).
pub const DEFAULT_K_A: f64 = 2.734e-3;

fn default_k_w0() -> f64 {
    DEFAULT_K_W0
}
fn default_k_a() -> f64 {
    DEFAULT_K_A
}
fn default_amplitude() -> f64 {
    1.0
}
fn default_eps() -> [Complex64; 3] {
    // linear x polarization: ε_{±1} = ±E_x/√2, ε₀ = 0
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [Complex64::new(-h, 0.0), Complex64::new(0.0, 0.0), Complex64::new(h, 0.0)]
}

impl Default for BeamConfig {
    fn default() -> Self {
        Self {
            winding: 0,
            k_w0: DEFAULT_K_W0,
            k_a: DEFAULT_K_A,
            eps: default_eps(),
            amplitude: 1.0,
        }
    }
}

impl BeamConfig {
    pub fn with_winding(winding: i32) -> Self {
        Self {
            winding,
            ..Self::default()
        }
    }

    /// Polarization amplitudes from Cartesian components,
    /// `ε_{±1} = ±(E_x ± i E_y)/√2`, `ε₀ = E_z`.
    pub fn eps_from_cartesian(ex: Complex64, ey: Complex64, ez: Complex64) -> [Complex64; 3] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let i = Complex64::i();
        [-(ex - i * ey) * h, ez, (ex + i * ey) * h]
    }

    /// `ε_σ` for `σ ∈ {-1, 0, 1}`.
    pub fn eps(&self, sigma: i32) -> Complex64 {
        self.eps[(sigma + 1) as usize]
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k_w0.is_finite() && self.k_w0 > 0.0) {
            return invalid(format!("k_w0 must be positive, got {}", self.k_w0));
        }
        if !(self.k_a.is_finite() && self.k_a > 0.0) {
            return invalid(format!("k_a must be positive, got {}", self.k_a));
        }
        if !(self.amplitude.is_finite() && self.amplitude > 0.0) {
            return invalid(format!("amplitude must be positive, got {}", self.amplitude));
        }
        if self.eps.iter().any(|e| !(e.re.is_finite() && e.im.is_finite())) {
            return invalid("polarization amplitudes must be finite");
        }
        Ok(())
    }

    /// Copy with `Σ |ε_σ|² = 1`.
    pub fn normalized(&self) -> Result<Self> {
        let n: f64 = self.eps.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
        if n == 0.0 {
            return invalid("polarization vector is zero");
        }
        let mut out = self.clone();
        for e in &mut out.eps {
            *e /= n;
        }
        Ok(out)
    }
}

/// Two-particle atom: mass fractions and charge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AtomFields")]
pub struct AtomSpec {
    /// `m_n / m_t`.
    pub mass_fraction_n: f64,
    /// `m_e / m_t`.
    pub mass_fraction_e: f64,
    /// Particle charge in units of `e`; scales every amplitude.
    pub charge: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomFields {
    mass_fraction_n: f64,
    mass_fraction_e: f64,
    #[serde(default = "default_charge")]
    charge: f64,
}

fn default_charge() -> f64 {
    1.0
}

impl TryFrom<AtomFields> for AtomSpec {
    type Error = Error;
    fn try_from(f: AtomFields) -> Result<Self> {
        AtomSpec::new(f.mass_fraction_n, f.mass_fraction_e, f.charge)
    }
}

/// `m_e / m_t` for hydrogen.
pub const HYDROGEN_ELECTRON_FRACTION: f64 = 1.0 / 1837.15;

impl AtomSpec {
    /// Accepts fractions summing to one within `1e-12`, then stores
    /// `m_e/m_t` and `1 - m_e/m_t` so the stored pair sums to one exactly.
    pub fn new(mass_fraction_n: f64, mass_fraction_e: f64, charge: f64) -> Result<Self> {
        for f in [mass_fraction_n, mass_fraction_e] {
            if !(f > 0.0 && f < 1.0) {
                return invalid(format!("mass fractions must lie in (0, 1), got {f}"));
            }
        }
        if (mass_fraction_n + mass_fraction_e - 1.0).abs() > 1e-12 {
            return invalid(format!(
                "mass fractions must sum to 1, got {mass_fraction_n} + {mass_fraction_e}"
            ));
        }
        if !charge.is_finite() {
            return invalid("charge must be finite");
        }
        Self::from_electron_fraction(mass_fraction_e, charge)
    }

    pub fn from_electron_fraction(mass_fraction_e: f64, charge: f64) -> Result<Self> {
        if !(mass_fraction_e > 0.0 && mass_fraction_e < 1.0) {
            return invalid(format!("mass fraction must lie in (0, 1), got {mass_fraction_e}"));
        }
        let atom = Self {
            mass_fraction_n: 1.0 - mass_fraction_e,
            mass_fraction_e,
            charge,
        };
        debug_assert_eq!(atom.mass_fraction_n + atom.mass_fraction_e, 1.0);
        Ok(atom)
    }
}

impl Default for AtomSpec {
    fn default() -> Self {
        Self::from_electron_fraction(HYDROGEN_ELECTRON_FRACTION, 1.0).expect("valid constant")
    }
}

/// The two displacement terms of the multipolar interaction: the field is
/// sampled at `R + λ (m_n/m_t) r` (nuclear) or `R - λ (m_e/m_t) r`
/// (electronic).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Branch {
    Nuclear,
    Electronic,
}

impl Branch {
    pub const ALL: [Branch; 2] = [Branch::Nuclear, Branch::Electronic];

    pub fn sign(self) -> i32 {
        match self {
            Branch::Nuclear => 1,
            Branch::Electronic => -1,
        }
    }

    pub fn mass_fraction(self, atom: &AtomSpec) -> f64 {
        match self {
            Branch::Nuclear => atom.mass_fraction_n,
            Branch::Electronic => atom.mass_fraction_e,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Branch::Nuclear => 1,
            Branch::Electronic => 2,
        }
    }
}

impl TryFrom<u8> for Branch {
    type Error = String;
    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Branch::Nuclear),
            2 => Ok(Branch::Electronic),
            _ => Err(format!("branch must be 1 or 2, got {v}")),
        }
    }
}

impl From<Branch> for u8 {
    fn from(b: Branch) -> u8 {
        b.index()
    }
}
