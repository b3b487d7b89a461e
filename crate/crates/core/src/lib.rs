//! Transition amplitudes, selection rules and center-of-mass transition
//! probabilities for a trapped two-particle atom driven by a
//! Laguerre-Gaussian beam.
//!
//! The crate is organized bottom-up:
//!
//! - [`specfun`]: exact and floating-point special functions.
//! - [`quad`]: Gauss-Legendre nodes and adaptive Gauss-Kronrod integration.
//! - [`harmonics`]: regular solid harmonics, their translation theorem and
//!   the beam field in its several equivalent forms.
//! - [`angular`]: Wigner 3j symbols, Gaunt coefficients and multi-harmonic
//!   angular integrals.
//! - [`model`]: trap eigenstates, electronic states, beam and atom parameters.
//! - [`transitions`]: channels, selection rules, radial elements, matrix
//!   elements and CM probabilities.
//! - [`oracle`]: independent brute-force evaluations used for cross-checks.
//! - [`verify`]: the cross-check suites with a serializable report.

pub mod angular;
pub mod error;
pub mod harmonics;
pub mod model;
pub mod oracle;
pub mod quad;
pub mod specfun;
pub mod transitions;
pub mod verify;

pub use error::{Error, Result};
