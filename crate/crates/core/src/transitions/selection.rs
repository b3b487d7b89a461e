use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::enumerate_channels;
use crate::angular::{multi_harmonic_integral, AngularBraKet};

/// One row of the selection-rule table for a given winding number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionRuleRow {
    pub p: u32,
    pub l_prime: u32,
    /// `sgn(l)` when the row depends on it (`l' > 0`), otherwise `None`.
    pub sign_l: Option<i32>,
    /// Allowed `Δl = l_f - l_i`, ascending.
    pub delta_l: Vec<i32>,
    /// `Δm` for `σ = -1, 0, +1`.
    pub delta_m: [i32; 3],
    /// `ΔM` for this `l`.
    pub delta_cm_m: i32,
    /// `ΔM` as a rule in `l`: `l`, `l-1`, `-|l|+1`, ...
    pub delta_cm_rule: String,
}

impl SelectionRuleRow {
    pub fn multipole_order(&self) -> u32 {
        self.p + self.l_prime + 1
    }
}

/// Reference `l_i` for probing `Δl`: large enough that no lower bound on
/// `l_f` cuts the set.
const PROBE_L: u32 = 6;

/// Selection rules for all `(p, l')` with multipole order `<= max_order`.
///
/// `Δl` is read off the angular engine: the set of `l_f - l_i` for which
/// some `σ` and `m_i` give a nonzero angular integral.
pub fn selection_table(l: i32, max_order: u32) -> Vec<SelectionRuleRow> {
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    for ch in enumerate_channels(l, max_order) {
        if !seen.insert((ch.multipole_order(), ch.l_prime, ch.p)) {
            continue;
        }
        let sgn = l.signum();
        let factor_m = sgn * ch.l_prime as i32;
        let mut delta_l = BTreeSet::new();
        for sigma in -1..=1 {
            for m_i in -1..=1 {
                let m_f = m_i + factor_m + sigma;
                for l_f in 0..=PROBE_L + ch.multipole_order() {
                    if m_f.unsigned_abs() > l_f {
                        continue;
                    }
                    let bk = AngularBraKet::new(
                        (l_f, m_f),
                        vec![(ch.l_prime, factor_m), (1, sigma), (ch.p, 0)],
                        (PROBE_L, m_i),
                    )
                    .expect("indices are in range");
                    if multi_harmonic_integral(&bk) != 0.0 {
                        delta_l.insert(l_f as i32 - PROBE_L as i32);
                    }
                }
            }
        }
        let lp = ch.l_prime as i32;
        let rule = match (lp, sgn) {
            (0, _) => "l".to_string(),
            (_, 1) => format!("l-{lp}"),
            _ => format!("-|l|+{lp}"),
        };
        rows.push(SelectionRuleRow {
            p: ch.p,
            l_prime: ch.l_prime,
            sign_l: (lp > 0).then_some(sgn),
            delta_l: delta_l.into_iter().collect(),
            delta_m: [factor_m - 1, factor_m, factor_m + 1],
            delta_cm_m: ch.delta_cm_m(l),
            delta_cm_rule: rule,
        });
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_for_positive_and_negative_winding() {
        let plus = selection_table(2, 2);
        assert_eq!(plus.len(), 3);
        assert_eq!(plus[0].delta_l, vec![-1, 1]);
        assert_eq!(plus[0].delta_m, [-1, 0, 1]);
        assert_eq!(plus[0].delta_cm_rule, "l");
        assert_eq!(plus[1].delta_l, vec![-2, 0, 2]);
        assert_eq!((plus[2].p, plus[2].l_prime), (0, 1));
        assert_eq!(plus[2].delta_m, [0, 1, 2]);
        assert_eq!(plus[2].delta_cm_m, 1);
        assert_eq!(plus[2].delta_cm_rule, "l-1");
        let minus = selection_table(-2, 2);
        assert_eq!(minus[2].delta_m, [-2, -1, 0]);
        assert_eq!(minus[2].delta_cm_m, -1);
        assert_eq!(minus[2].delta_cm_rule, "-|l|+1");
        assert_eq!(minus[2].sign_l, Some(-1));
        assert_eq!(minus[0].sign_l, None);
    }

    #[test]
    fn zero_winding_has_only_plane_wave_rows() {
        let t = selection_table(0, 1);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].delta_cm_m, 0);
        assert!(selection_table(0, 2).iter().all(|r| r.l_prime == 0));
    }

    #[test]
    fn rows_conserve_total_projection() {
        for l in -4..=4 {
            for row in selection_table(l, 3) {
                for (i, dm) in row.delta_m.iter().enumerate() {
                    assert_eq!(dm + row.delta_cm_m, l + i as i32 - 1);
                }
            }
        }
    }
}
