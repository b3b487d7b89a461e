use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::channel::{channel_coefficient, global_prefactor};
use super::cm::{cm_radial_element, RadialRoute};
use super::electronic::{electronic_radial_element, Kernel};
use super::TransitionChannel;
use crate::angular::{multi_harmonic_integral, parity_allowed, AngularBraKet};
use crate::error::Result;
use crate::model::{AtomSpec, BeamConfig, CMState, ElectronicState};

/// Absorption or its hermitian-conjugate emission term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Process {
    #[default]
    Absorption,
    Emission,
}

impl Process {
    /// `+1` for absorption, `-1` for emission.
    pub fn sign(self) -> i32 {
        match self {
            Process::Absorption => 1,
            Process::Emission => -1,
        }
    }
}

/// Quantum numbers of one side of a transition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateLabels {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    pub cm_n: u32,
    pub cm_m: i32,
    pub cm_k: f64,
}

impl StateLabels {
    pub fn new(e: &ElectronicState, cm: &CMState) -> Self {
        Self {
            n: e.n,
            l: e.l,
            m: e.m,
            cm_n: cm.n,
            cm_m: cm.m,
            cm_k: cm.k,
        }
    }
}

/// Which conservation laws the labels of a transition satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConservationFlags {
    /// `K_f = K_i ± k`.
    pub axial_momentum: bool,
    /// `Δm + ΔM = ±(l + σ)`.
    pub angular_momentum_z: bool,
    /// `l_f + l_i + l' + p + 1` even.
    pub parity: bool,
}

/// Amplitude of a single channel.
///
/// `amplitude` is in reduced units (see
/// [`REDUCED_PREFACTOR`](super::REDUCED_PREFACTOR)); `probability` is
/// `|amplitude|²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionResult {
    pub amplitude: Complex64,
    pub probability: f64,
    pub channel: TransitionChannel,
    /// Beam winding number.
    pub l: i32,
    pub polarization: Complex64,
    pub process: Process,
    pub initial: StateLabels,
    #[serde(rename = "final")]
    pub final_state: StateLabels,
    pub conserved: ConservationFlags,
    /// Route of the CM radial element; `None` when a selection rule zeroed
    /// the amplitude before it was needed.
    pub cm_route: Option<RadialRoute>,
}

impl TransitionResult {
    pub fn delta_m(&self) -> i32 {
        self.final_state.m - self.initial.m
    }

    pub fn delta_cm_m(&self) -> i32 {
        self.final_state.cm_m - self.initial.cm_m
    }
}

/// Absorption amplitude with the full radial kernel.
pub fn matrix_element(
    atom: &AtomSpec,
    beam: &BeamConfig,
    e_i: &ElectronicState,
    e_f: &ElectronicState,
    cm_i: &CMState,
    cm_f: &CMState,
    channel: &TransitionChannel,
) -> Result<TransitionResult> {
    matrix_element_with(atom, beam, e_i, e_f, cm_i, cm_f, channel, Process::Absorption, Kernel::Full)
}

/// Channel amplitude
///
/// `s P C ε_σ δ_{ΔM, sgn(l)(|l|-l')} ⟨G_f|(kR/4)^{|l|-l'}|G_i⟩ ⟨F_f|(s k r f/2)^{l'+p+1} ₁F₂|F_i⟩
///  ∫ Y_{l_f}^{m_f*} Y_{l'}^{sgn(l) l'} Y_1^σ Y_p^0 Y_{l_i}^{m_i} dΩ`
///
/// with `s`, `f` from the branch, `P` from
/// [`global_prefactor`] and `C` from [`channel_coefficient`]. The CM factor
/// is the radial overlap alone; the azimuthal `1/2π` and the axial delta
/// normalization are absorbed into the reduced units.
///
/// Emission is the conjugate of the absorption amplitude from `final` to
/// `initial`, with `K_f = K_i - k`. Selection-rule zeros (axial momentum,
/// `ΔM` delta, angular integral) are exact.
#[allow(clippy::too_many_arguments)]
pub fn matrix_element_with(
    atom: &AtomSpec,
    beam: &BeamConfig,
    e_i: &ElectronicState,
    e_f: &ElectronicState,
    cm_i: &CMState,
    cm_f: &CMState,
    channel: &TransitionChannel,
    process: Process,
    kernel: Kernel,
) -> Result<TransitionResult> {
    beam.validate()?;
    let l = beam.winding;
    let ps = process.sign();
    let axial = {
        let expect = cm_i.k + ps as f64 * beam.k_w0;
        (cm_f.k - expect).abs() <= 1e-9 * expect.abs().max(1.0)
    };
    let dm = e_f.m - e_i.m;
    let d_cm = cm_f.m - cm_i.m;
    let conserved = ConservationFlags {
        axial_momentum: axial,
        angular_momentum_z: dm + d_cm == ps * (l + channel.sigma),
        parity: parity_allowed(e_f.l, e_i.l, channel.l_prime, channel.p),
    };
    let mut result = TransitionResult {
        amplitude: Complex64::new(0.0, 0.0),
        probability: 0.0,
        channel: *channel,
        l,
        polarization: beam.eps(channel.sigma),
        process,
        initial: StateLabels::new(e_i, cm_i),
        final_state: StateLabels::new(e_f, cm_f),
        conserved,
        cm_route: None,
    };
    // absorption always runs lower -> upper; emission swaps and conjugates
    let (lo_e, hi_e, lo_cm, hi_cm) = match process {
        Process::Absorption => (e_i, e_f, cm_i, cm_f),
        Process::Emission => (e_f, e_i, cm_f, cm_i),
    };
    if !axial || channel.l_prime > l.unsigned_abs() || hi_cm.m - lo_cm.m != channel.delta_cm_m(l) {
        return Ok(result);
    }
    let bk = AngularBraKet::new(
        (hi_e.l, hi_e.m),
        vec![
            (channel.l_prime, l.signum() * channel.l_prime as i32),
            (1, channel.sigma),
            (channel.p, 0),
        ],
        (lo_e.l, lo_e.m),
    )?;
    let angular = multi_harmonic_integral(&bk);
    if angular == 0.0 {
        return Ok(result);
    }
    let eps = beam.eps(channel.sigma);
    if eps == Complex64::new(0.0, 0.0) {
        return Ok(result);
    }
    let e = l.unsigned_abs() - channel.l_prime;
    let cm = cm_radial_element(lo_cm, hi_cm, e, beam.k_w0 * lo_cm.w_r)?;
    result.cm_route = Some(cm.route);
    if cm.value == 0.0 {
        return Ok(result);
    }
    let radial = electronic_radial_element(lo_e, hi_e, channel, beam.k_a, atom, kernel)?;
    let amp = channel_coefficient(l, channel)?
        * eps
        * (channel.branch.sign() as f64 * atom.charge * global_prefactor(beam) * beam.amplitude * cm.value * radial * angular);
    result.amplitude = match process {
        Process::Absorption => amp,
        Process::Emission => amp.conj(),
    };
    result.probability = result.amplitude.norm_sqr();
    Ok(result)
}
