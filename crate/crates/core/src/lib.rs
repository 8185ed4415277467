//! Cavity optomechanics of levitated dielectric objects.
//!
//! The crate computes, from a handful of experimental inputs, whether a
//! dielectric sphere held by an optical tweezer, or a thin rod trapped by the
//! cavity light itself, can reach the strong-coupling, good-cavity regime
//! needed to swap a single photon into its centre-of-mass motion.
//!
//! The pipeline runs in stages:
//!
//! * [`cavity`]: decay rate, waist and resonance shifts of a Fabry–Pérot
//!   cavity perturbed by a dielectric body, both in closed form and by direct
//!   quadrature over the body volume.
//! * [`sphere`] and [`rod`]: trap frequencies, linear couplings and the
//!   driven coupling rate g for the two geometries.
//! * [`pulse`]: the phonon number during a single-photon swap, and the
//!   homodyne-conditioned mechanical state.
//! * [`environment`]: gas damping, heating, decoherence and bulk temperature.
//! * [`scenario`] and [`report`]: TOML scenario files, regime checks and
//!   parameter sweeps.
//!
//! All computation is in SI units with angular frequencies; Hz and Torr
//! appear only in scenario files and reports.
//!
//! ```
//! use optolev::{evaluate_scenario, Scenario};
//!
//! let report = evaluate_scenario(&Scenario::preset("sphere-appendix-h")?)?;
//! assert!(report.good_cavity.ok);
//! assert!(report.strong_coupling.g_over_kappa > 0.9);
//! # Ok::<(), optolev::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cavity;
pub mod constants;
pub mod environment;
pub mod error;
pub mod object;
pub mod pulse;
pub mod quadrature;
pub mod report;
pub mod rod;
pub mod scenario;
pub mod sphere;

pub use cavity::{BodyGeometry, CavityConfig, ModeField, ModeLabel, Pose, Shape};
pub use constants::{AngularFrequency, PhysicalConstants, Pressure};
pub use environment::{DecoherenceBudget, GasEnvironment, ThermalInput};
pub use error::{Error, Result};
pub use object::DielectricObject;
pub use pulse::{phonon_trace, PhononTrace, PulseProtocol};
pub use report::{evaluate_scenario, sweep, FeasibilityReport};
pub use rod::{CooledDof, SelfTrapSolution};
pub use scenario::Scenario;
pub use sphere::{DriveConfig, OptomechParams, TweezerConfig};
