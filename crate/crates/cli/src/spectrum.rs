use anyhow::anyhow;
use std::path::PathBuf;

use vortrans::model::{BeamConfig, CMState, DEFAULT_K_W0};
use vortrans::transitions::{cm_spectrum, scan_point, ScanRow};

use crate::failure::{Failure, OrFail};
use crate::output::{map_grid, real, write_csv};

#[derive(clap::Args)]
pub struct SpectrumArgs {
    /// Initial CM energy number.
    #[arg(long = "Ni", default_value_t = 6)]
    pub n_i: u32,
    /// Initial CM angular momentum.
    #[arg(long = "Mi", default_value_t = 0, allow_negative_numbers = true)]
    pub m_i: i32,
    /// Beam winding number.
    #[arg(long, allow_negative_numbers = true)]
    pub l: i32,
    /// Trap spread in units of the beam waist, w_R/w0.
    #[arg(long, default_value_t = 1e-4)]
    pub wr_ratio: f64,
    #[arg(long, default_value_t = DEFAULT_K_W0)]
    pub k_w0: f64,
    /// Largest final energy number.
    #[arg(long, default_value_t = 14)]
    pub nf_max: u32,
    /// Highest multipole order.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub order: u32,
    /// Final energy number whose largest probability normalizes the
    /// spectrum.
    #[arg(long, default_value_t = 6)]
    pub norm_nf: u32,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct ScanArgs {
    #[arg(long = "Ni", default_value_t = 6)]
    pub n_i: u32,
    #[arg(long = "Mi", default_value_t = 0, allow_negative_numbers = true)]
    pub m_i: i32,
    /// Final CM energy number.
    #[arg(long = "Nf", default_value_t = 12)]
    pub n_f: u32,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub l_min: i32,
    #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
    pub l_max: i32,
    /// Comma-separated w_R/w0 values.
    #[arg(long, value_delimiter = ',', default_value = "1e-5,1e-4,1e-3,1e-2")]
    pub wr_ratios: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_K_W0)]
    pub k_w0: f64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub order: u32,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn beam(l: i32, k_w0: f64) -> Result<BeamConfig, Failure> {
    let b = BeamConfig {
        k_w0,
        ..BeamConfig::with_winding(l)
    };
    b.validate().or_usage("invalid beam")?;
    Ok(b)
}

/// Re-derives the selection rules a CM row must satisfy before it is
/// written.
fn check_row(cm_i: &CMState, l: i32, l_prime: u32, n_f: u32, m_f: i32, p: f64) -> Result<(), Failure> {
    let d_cm = m_f - cm_i.m;
    let expect = l.signum() * (l.unsigned_abs() as i32 - l_prime as i32);
    let mut bad = Vec::new();
    if d_cm != expect {
        bad.push(format!("ΔM = {d_cm}, rule gives {expect}"));
    }
    if !CMState::exists(n_f as i64, m_f as i64) {
        bad.push(format!("final state ({n_f}, {m_f}) does not exist"));
    }
    if !(p >= 0.0 && p.is_finite()) {
        bad.push(format!("probability {p} is not a finite non-negative number"));
    }
    if p > 0.0 {
        let e = l.unsigned_abs() - l_prime;
        if (n_f as i64 - cm_i.n as i64).unsigned_abs() > e as u64 {
            bad.push(format!("|ΔN| = {} exceeds |l| - l' = {e}", (n_f as i64 - cm_i.n as i64).abs()));
        }
        for sigma in -1..=1 {
            // electronic Δm carried by the same channel
            let dm = l.signum() * l_prime as i32 + sigma;
            if dm + d_cm != l + sigma {
                bad.push(format!("Δm + ΔM = {} for σ = {sigma}", dm + d_cm));
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::numeric(anyhow!(
            "row N_f={n_f}, M_f={m_f}, l'={l_prime} fails re-verification: {}",
            bad.join("; ")
        )))
    }
}

pub fn run_spectrum(a: &SpectrumArgs) -> Result<(), Failure> {
    let beam = beam(a.l, a.k_w0)?;
    let cm_i = CMState::new(a.n_i, a.m_i, 0.0, a.wr_ratio).or_usage("invalid initial CM state")?;
    let (rows, reference) = cm_spectrum(&beam, &cm_i, a.nf_max, a.order, a.norm_nf).or_numeric("CM spectrum")?;
    if reference == 0.0 {
        eprintln!(
            "warning: no channel reaches N_f = {}; the normalized column is NaN",
            a.norm_nf
        );
    }
    let mut out = Vec::with_capacity(rows.len());
    for r in &rows {
        check_row(&cm_i, a.l, r.l_prime, r.n_f, r.m_f, r.p_cm)?;
        out.push(vec![
            r.n_f.to_string(),
            r.m_f.to_string(),
            r.l_prime.to_string(),
            real(r.p_cm),
            real(r.p_cm_normalized),
        ]);
    }
    write_csv(a.output.as_deref(), &["N_f", "M_f", "l_prime", "P_cm", "P_cm_normalized"], &out)
}

pub fn run_scan(a: &ScanArgs) -> Result<(), Failure> {
    if a.l_min > a.l_max {
        return Err(Failure::usage(anyhow!("--l-min {} exceeds --l-max {}", a.l_min, a.l_max)));
    }
    let mut ratios = a.wr_ratios.clone();
    if ratios.is_empty() || ratios.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(Failure::usage(anyhow!("--wr-ratios must be positive numbers")));
    }
    ratios.sort_by(f64::total_cmp);
    ratios.dedup();
    let cm_i = CMState::new(a.n_i, a.m_i, 0.0, ratios[0]).or_usage("invalid initial CM state")?;
    beam(0, a.k_w0)?;

    let grid: Vec<(i32, f64)> = (a.l_min..=a.l_max)
        .flat_map(|l| ratios.iter().map(move |&w| (l, w)))
        .collect();
    let order = a.order;
    let n_f = a.n_f;
    let point = |&(l, w): &(i32, f64)| -> Result<Vec<ScanRow>, Failure> {
        scan_point(&beam(l, a.k_w0)?, &cm_i, n_f, w, order).or_numeric(format!("scan point l={l}, w_R/w0={w}"))
    };
    let blocks = map_grid(&grid, point)?;
    let references = map_grid(&ratios, |&w| {
        let rows = scan_point(&beam(0, a.k_w0)?, &cm_i, n_f, w, order).or_numeric("l = 0 reference")?;
        Ok(rows.iter().find(|r| r.l_prime == 0).map_or(0.0, |r| r.p_cm))
    })?;
    if references.contains(&0.0) {
        eprintln!(
            "warning: P_CM vanishes for l = 0 at N_f = {n_f} (orthogonal CM states); the normalized column is NaN"
        );
    }

    let mut out = Vec::new();
    for ((l, w), rows) in grid.iter().zip(&blocks) {
        let idx = ratios.iter().position(|r| r == w).expect("ratio from the list");
        for r in rows {
            let m_f = a.m_i + l.signum() * (l.unsigned_abs() - r.l_prime) as i32;
            check_row(&cm_i, *l, r.l_prime, n_f, m_f, r.p_cm)?;
            out.push(vec![
                l.to_string(),
                real(*w),
                r.l_prime.to_string(),
                real(r.p_cm),
                real(r.p_cm / references[idx]),
            ]);
        }
    }
    write_csv(a.output.as_deref(), &["l", "wr_ratio", "l_prime", "P_cm", "P_cm_over_P_l0"], &out)
}
