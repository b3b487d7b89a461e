use anyhow::anyhow;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use vortrans::model::{AtomSpec, BeamConfig, CMState, ElectronicState, RadialProfile, hydrogenic_radial};
use vortrans::transitions::{
    conservation_check, enumerate_channels, matrix_element_with, ConservationReport, Kernel, Process,
    TransitionResult,
};

use crate::failure::{Failure, OrFail};
use crate::output::{map_grid, write_json};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: String,
    #[serde(default)]
    pub atom: AtomSpec,
    pub beam: BeamConfig,
    /// Trap spread `w_R / w0`.
    pub w_ratio: f64,
    #[serde(default = "default_order")]
    pub max_order: u32,
    #[serde(default)]
    pub process: Process,
    #[serde(default)]
    pub kernel: Kernel,
    pub initial: Side,
    #[serde(rename = "final")]
    pub final_state: Side,
    #[serde(default)]
    pub output: OutputOptions,
}

fn default_order() -> u32 {
    2
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Side {
    pub electronic: Electronic,
    pub cm: Cm,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Electronic {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    #[serde(default)]
    pub radial: Radial,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Radial {
    /// Hydrogen-like function with Bohr-radius analogue `scale`.
    Hydrogenic {
        #[serde(default = "one")]
        scale: f64,
    },
    /// Normalized `r^{n-1} e^{-ζ r}`.
    Slater { zeta: f64 },
}

fn one() -> f64 {
    1.0
}

impl Default for Radial {
    fn default() -> Self {
        Radial::Hydrogenic { scale: 1.0 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cm {
    pub n: u32,
    pub m: i32,
    /// Axial wavenumber in units of `1/w0`. Defaults to 0 initially and to
    /// the momentum-conserving value finally.
    pub k: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputOptions {
    /// Also list channels whose amplitude vanishes.
    #[serde(default)]
    pub include_zero: bool,
}

#[derive(Serialize)]
pub struct Report {
    pub version: &'static str,
    pub results: Vec<TransitionResult>,
    /// Coherent sum over every channel.
    pub total_amplitude: Complex64,
    pub total_probability: f64,
    pub conservation: ConservationReport,
}

fn slater(n: u32, zeta: f64) -> anyhow::Result<RadialProfile> {
    if !(zeta.is_finite() && zeta > 0.0) {
        return Err(anyhow!("zeta must be positive, got {zeta}"));
    }
    let fact: f64 = (1..=2 * n).map(f64::from).product();
    let norm = (2.0 * zeta).powf(n as f64 + 0.5) / fact.sqrt();
    Ok(RadialProfile::new(format!("slater(n={n}, zeta={zeta})"), 1.0 / zeta, move |r| {
        norm * r.powi(n as i32 - 1) * (-zeta * r).exp()
    }))
}

fn electronic(e: &Electronic, at: &str) -> Result<ElectronicState, Failure> {
    let radial = match e.radial {
        Radial::Hydrogenic { scale } => hydrogenic_radial(e.n, e.l, scale).map_err(anyhow::Error::from),
        Radial::Slater { zeta } => slater(e.n, zeta),
    }
    .or_usage(format!("{at}.radial"))?;
    ElectronicState::new(e.n, e.l, e.m, radial).or_usage(at.to_string())
}

/// Parses and validates a scenario; every error maps to exit code 2.
pub fn parse(text: &str) -> Result<Scenario, Failure> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let sc: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Failure::usage(anyhow!("at `{path}`: {}", e.into_inner()))
    })?;
    if sc.version != SCHEMA_VERSION {
        return Err(Failure::usage(anyhow!(
            "at `version`: unsupported schema version {:?}, expected {SCHEMA_VERSION:?}",
            sc.version
        )));
    }
    if !(sc.w_ratio.is_finite() && sc.w_ratio > 0.0) {
        return Err(Failure::usage(anyhow!("at `w_ratio`: must be positive, got {}", sc.w_ratio)));
    }
    if sc.max_order == 0 {
        return Err(Failure::usage(anyhow!("at `max_order`: must be at least 1")));
    }
    sc.beam.validate().or_usage("at `beam`")?;
    Ok(sc)
}

pub fn evaluate(sc: &Scenario) -> Result<Report, Failure> {
    let e_i = electronic(&sc.initial.electronic, "at `initial.electronic`")?;
    let e_f = electronic(&sc.final_state.electronic, "at `final.electronic`")?;
    let k_i = sc.initial.cm.k.unwrap_or(0.0);
    let k_f = sc
        .final_state
        .cm
        .k
        .unwrap_or(k_i + sc.process.sign() as f64 * sc.beam.k_w0);
    let cm_i = CMState::new(sc.initial.cm.n, sc.initial.cm.m, k_i, sc.w_ratio).or_usage("at `initial.cm`")?;
    let cm_f = CMState::new(sc.final_state.cm.n, sc.final_state.cm.m, k_f, sc.w_ratio).or_usage("at `final.cm`")?;

    let channels = enumerate_channels(sc.beam.winding, sc.max_order);
    let all = map_grid(&channels, |ch| {
        matrix_element_with(&sc.atom, &sc.beam, &e_i, &e_f, &cm_i, &cm_f, ch, sc.process, sc.kernel)
            .or_numeric(format!("channel {ch:?}"))
    })?;
    let conservation = conservation_check(&all);
    let total_amplitude: Complex64 = all.iter().map(|r| r.amplitude).sum();
    let results: Vec<_> = if sc.output.include_zero {
        all
    } else {
        all.into_iter().filter(|r| r.amplitude.norm_sqr() > 0.0).collect()
    };
    Ok(Report {
        version: SCHEMA_VERSION,
        results,
        total_amplitude,
        total_probability: total_amplitude.norm_sqr(),
        conservation,
    })
}

pub fn run(path: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path).or_usage(format!("cannot read {}", path.display()))?;
    let sc = parse(&text)?;
    let report = evaluate(&sc)?;
    write_json(&report, output)?;
    if report.conservation.is_clean() {
        Ok(())
    } else {
        Err(Failure::numeric(anyhow!("conservation check reported violations")))
    }
}
