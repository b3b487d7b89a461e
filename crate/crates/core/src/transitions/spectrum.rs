use serde::{Deserialize, Serialize};

use super::cm::cm_probability;
use crate::error::Result;
use crate::model::{BeamConfig, CMState};

/// One `(N_f, l')` entry of a CM spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n_f: u32,
    pub m_f: i32,
    pub l_prime: u32,
    pub p_cm: f64,
    pub p_cm_normalized: f64,
}

/// One `(l, w_R/w₀, l')` entry of a winding-number scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub l: i32,
    pub wr_ratio: f64,
    pub l_prime: u32,
    pub p_cm: f64,
}

/// CM probabilities from `cm_i` to every existing `(N_f, M_f)` with
/// `N_f <= nf_max`, for each `l' <= min(|l|, max_order - 1)`.
///
/// The CM probability depends on the channel only through `l'`, so each
/// `l'` appears once. The normalization reference is the largest
/// probability at `N_f = norm_nf`; it is returned alongside the rows and
/// is zero (giving NaN normalized values) when nothing reaches `norm_nf`.
pub fn cm_spectrum(
    beam: &BeamConfig,
    cm_i: &CMState,
    nf_max: u32,
    max_order: u32,
    norm_nf: u32,
) -> Result<(Vec<SpectrumRow>, f64)> {
    let l = beam.winding;
    let lp_max = l.unsigned_abs().min(max_order.saturating_sub(1));
    let mut rows = Vec::new();
    for n_f in 0..=nf_max {
        for l_prime in 0..=lp_max {
            let m_f = cm_i.m + l.signum() * (l.unsigned_abs() - l_prime) as i32;
            if !CMState::exists(n_f as i64, m_f as i64) {
                continue;
            }
            rows.push(SpectrumRow {
                n_f,
                m_f,
                l_prime,
                p_cm: cm_probability(beam, cm_i, n_f, l_prime)?,
                p_cm_normalized: f64::NAN,
            });
        }
    }
    let reference = rows
        .iter()
        .filter(|r| r.n_f == norm_nf)
        .map(|r| r.p_cm)
        .fold(0.0, f64::max);
    for r in &mut rows {
        r.p_cm_normalized = r.p_cm / reference;
    }
    Ok((rows, reference))
}

/// Rows of a scan at one `(l, w_R/w₀)` grid point: one per `l' <=
/// min(|l|, max_order - 1)` whose final state `(N_f, M_i + sgn(l)(|l|-l'))`
/// exists.
pub fn scan_point(
    beam: &BeamConfig,
    cm_i: &CMState,
    n_f: u32,
    wr_ratio: f64,
    max_order: u32,
) -> Result<Vec<ScanRow>> {
    let cm = cm_i.with_spread(wr_ratio)?;
    let l = beam.winding;
    let lp_max = l.unsigned_abs().min(max_order.saturating_sub(1));
    let mut rows = Vec::new();
    for l_prime in 0..=lp_max {
        let m_f = cm.m + l.signum() * (l.unsigned_abs() - l_prime) as i32;
        if !CMState::exists(n_f as i64, m_f as i64) {
            continue;
        }
        rows.push(ScanRow {
            l,
            wr_ratio,
            l_prime,
            p_cm: cm_probability(beam, &cm, n_f, l_prime)?,
        });
    }
    Ok(rows)
}
