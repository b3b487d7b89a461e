use serde::{Deserialize, Serialize};

use super::TransitionResult;
use crate::angular::parity_allowed;

/// One failed rule on one result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Position of the result in the checked slice.
    pub index: usize,
    pub rule: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConservationReport {
    pub checked: usize,
    pub nonzero: usize,
    pub violations: Vec<Violation>,
}

impl ConservationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every nonzero amplitude against
///
/// - `Δm + ΔM = ±(l + σ)` (sign by process),
/// - `|ΔM| <= |l|`,
/// - electronic angular momentum taken from the beam, `|Δm ∓ σ| <= |l|`,
/// - `l_f + l_i + l' + p + 1` even.
///
/// Zero amplitudes are counted but not checked.
pub fn conservation_check(results: &[TransitionResult]) -> ConservationReport {
    let mut report = ConservationReport {
        checked: results.len(),
        ..Default::default()
    };
    for (index, r) in results.iter().enumerate() {
        if r.amplitude.norm_sqr() == 0.0 {
            continue;
        }
        report.nonzero += 1;
        let ps = r.process.sign();
        let (dm, d_cm) = (r.delta_m(), r.delta_cm_m());
        let al = r.l.unsigned_abs();
        let sigma = r.channel.sigma;
        let mut flag = |rule: &str, detail: String| {
            report.violations.push(Violation {
                index,
                rule: rule.to_string(),
                detail,
            })
        };
        if dm + d_cm != ps * (r.l + sigma) {
            flag(
                "angular_momentum_z",
                format!("Δm + ΔM = {dm} + {d_cm}, expected {}", ps * (r.l + sigma)),
            );
        }
        if d_cm.unsigned_abs() > al {
            flag("cm_transfer_bound", format!("|ΔM| = {} exceeds |l| = {al}", d_cm.abs()));
        }
        let orbital = dm - ps * sigma;
        if orbital.unsigned_abs() > al {
            flag(
                "electronic_transfer_bound",
                format!("electronic OAM transfer {orbital} exceeds |l| = {al}"),
            );
        }
        if !parity_allowed(r.final_state.l, r.initial.l, r.channel.l_prime, r.channel.p) {
            flag(
                "parity",
                format!(
                    "l_f + l_i + l' + p + 1 = {} is odd",
                    r.final_state.l + r.initial.l + r.channel.l_prime + r.channel.p + 1
                ),
            );
        }
    }
    report
}
