//! Channel enumeration, selection rules, radial elements, matrix elements
//! and center-of-mass transition probabilities.
//!
//! Amplitudes are in reduced units: the dimensional prefactor
//! `2π² e w₀ / √3` of the interaction Hamiltonian is set to
//! [`REDUCED_PREFACTOR`] = 1, so only ratios of probabilities carry meaning.

mod channel;
mod cm;
mod conservation;
mod electronic;
mod element;
mod selection;
mod spectrum;

pub use channel::{
    channel_coefficient, channel_interaction, enumerate_channels, global_prefactor, lambda_kernel, radial_kernel,
    TransitionChannel, REDUCED_PREFACTOR,
};
pub use cm::{
    cm_probability, cm_probability_coefficient, cm_radial_closed_form, cm_radial_element,
    CmRadial, RadialRoute,
};
pub use conservation::{conservation_check, ConservationReport, Violation};
pub use electronic::{electronic_radial_element, Kernel};
pub use element::{
    matrix_element, matrix_element_with, ConservationFlags, Process, StateLabels, TransitionResult,
};
pub use selection::{selection_table, SelectionRuleRow};
pub use spectrum::{cm_spectrum, scan_point, ScanRow, SpectrumRow};
