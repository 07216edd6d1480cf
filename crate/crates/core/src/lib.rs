//! Adiabatic quantum annealing search for a single hole on a flat
//! N-site landscape with all-to-all hopping.
//!
//! The dynamics from the uniform initial state stay in the plane spanned by
//! the hole and the uniform superposition of the other sites, so lattices
//! with millions of sites reduce to a 2x2 problem. A dense full-space
//! integrator is kept alongside to check that reduction.

pub mod analysis;
pub mod annealing;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod numerics;

pub use analysis::{GapScalingReport, Variant};
pub use annealing::{AdiabaticFactor, BisectionConfig, TauMin};
pub use dynamics::{FullState, ReducedState, RunRecord, Sample, StepPolicy};
pub use error::{Error, Result};
pub use model::{ModelParams, Schedule, ScheduleKind, SpectralPoint};
