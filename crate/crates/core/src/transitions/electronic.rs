use serde::{Deserialize, Serialize};

use super::channel::radial_kernel;
use super::TransitionChannel;
use crate::error::{Error, Result};
use crate::model::{AtomSpec, ElectronicState};
use crate::quad::integrate_semi_infinite;

/// Radial kernel used in the electronic factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// `(± k r f/2)^{l'+p+1} ₁F₂(...; -(k r f)²/4)`.
    #[default]
    Full,
    /// Leading term only: the ₁F₂ replaced by 1.
    LeadingTerm,
}

const REL_TOL: f64 = 1e-10;
const MAX_INTERVALS: usize = 4000;

/// `⟨F_f| (s k r f/2)^{l'+p+1} ₁F₂((p+l'+1)/2; p+3/2, (p+l'+3)/2; -(k r f)²/4) |F_i⟩`
/// with `s` and `f` the sign and mass fraction of the channel's branch and
/// `k_scale = k a` in the radial length unit.
///
/// The integral runs over `[0, ∞)` with weight `r²`. Convergence is
/// declared at relative tolerance `1e-10` or at an absolute floor of
/// `1e-13 ∫|integrand|`, so exact radial orthogonality returns a value at
/// the noise level rather than failing.
pub fn electronic_radial_element(
    e_i: &ElectronicState,
    e_f: &ElectronicState,
    channel: &TransitionChannel,
    k_scale: f64,
    atom: &AtomSpec,
    kernel: Kernel,
) -> Result<f64> {
    if !(k_scale.is_finite() && k_scale > 0.0) {
        return Err(Error::Domain(format!("k_scale must be positive, got {k_scale}")));
    }
    let q = channel.multipole_order() as i32;
    let f = channel.branch.mass_fraction(atom);
    let s = channel.branch.sign() as f64;
    let (p, lp) = (channel.p, channel.l_prime);
    let integrand = |r: f64| -> f64 {
        let a = k_scale * r * f;
        let factor = match kernel {
            Kernel::Full => radial_kernel(p, lp, a).unwrap_or(f64::NAN),
            Kernel::LeadingTerm => 1.0,
        };
        e_f.radial.eval(r) * e_i.radial.eval(r) * r * r * (0.5 * s * a).powi(q) * factor
    };
    let scale = e_i.radial.scale.max(e_f.radial.scale);
    let mapped = |u: f64| scale * integrand(scale * u);
    let magnitude = integrate_semi_infinite(|u| mapped(u).abs(), 1e-6, 1e-300, MAX_INTERVALS)
        .map_err(|e| diagnose(e_i, e_f, channel, k_scale, &e))?;
    let floor = 1e-13 * magnitude.value;
    integrate_semi_infinite(mapped, REL_TOL, floor, MAX_INTERVALS)
        .map(|i| i.value)
        .map_err(|e| diagnose(e_i, e_f, channel, k_scale, &e))
}

fn diagnose(
    e_i: &ElectronicState,
    e_f: &ElectronicState,
    ch: &TransitionChannel,
    k_scale: f64,
    err: &Error,
) -> Error {
    Error::Numeric(format!(
        "electronic radial integral ({}, {}) -> ({}, {}) with {} and {} failed for channel p={}, l'={}, branch {}, k a = {k_scale}: {err}",
        e_i.n,
        e_i.l,
        e_f.n,
        e_f.l,
        e_i.radial.label,
        e_f.radial.label,
        ch.p,
        ch.l_prime,
        ch.branch.index()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Branch;

    fn ch(p: u32, l_prime: u32, branch: Branch) -> TransitionChannel {
        TransitionChannel {
            p,
            l_prime,
            sigma: 0,
            branch,
        }
    }

    #[test]
    fn leading_dipole_term_is_scaled_dipole_integral() {
        // ⟨2p| r |1s⟩ = 128 √6 / 243 for hydrogen (a = 1)
        let s1 = ElectronicState::hydrogenic(1, 0, 0).unwrap();
        let p2 = ElectronicState::hydrogenic(2, 1, 0).unwrap();
        let atom = AtomSpec::default();
        let k = 0.01;
        let v = electronic_radial_element(&s1, &p2, &ch(0, 0, Branch::Nuclear), k, &atom, Kernel::LeadingTerm)
            .unwrap();
        let expect = 0.5 * k * atom.mass_fraction_n * 128.0 * 6f64.sqrt() / 243.0;
        assert!((v - expect).abs() < 1e-10 * expect.abs());
        let e = electronic_radial_element(&s1, &p2, &ch(0, 0, Branch::Electronic), k, &atom, Kernel::LeadingTerm)
            .unwrap();
        let expect_e = -0.5 * k * atom.mass_fraction_e * 128.0 * 6f64.sqrt() / 243.0;
        assert!((e - expect_e).abs() < 1e-10 * expect_e.abs());
    }

    #[test]
    fn small_k_power_law() {
        let s1 = ElectronicState::hydrogenic(2, 0, 0).unwrap();
        let d3 = ElectronicState::hydrogenic(3, 2, 0).unwrap();
        let atom = AtomSpec::default();
        let c = ch(1, 0, Branch::Nuclear);
        let a = electronic_radial_element(&s1, &d3, &c, 1e-4, &atom, Kernel::Full).unwrap();
        let b = electronic_radial_element(&s1, &d3, &c, 2e-4, &atom, Kernel::Full).unwrap();
        assert!((b / a - 4.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_scale() {
        let s1 = ElectronicState::hydrogenic(1, 0, 0).unwrap();
        let r = electronic_radial_element(&s1, &s1, &ch(0, 0, Branch::Nuclear), 0.0, &AtomSpec::default(), Kernel::Full);
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
