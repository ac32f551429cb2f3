//! Equilibrium values for abstract argumentation networks.
//!
//! A framework plus an arbitrary initial valuation is driven to an
//! equilibrium, either by the iterative update (`gr`) or by the labelling
//! pipeline (`cp`). `enhanced` repeats the process for the undecided part,
//! and `models` holds the related numerical models used for comparison.

pub mod adf;
pub mod afn;
pub mod cp;
pub mod enhanced;
pub mod error;
pub mod fixtures;
pub mod framework;
pub mod gr;
pub mod io;
pub mod models;
pub mod semantics;
pub mod solver;
pub mod valuation;

pub use error::{Error, Result};
pub use framework::{ArgSet, ArgumentId, Framework, FrameworkFormat};
pub use valuation::{Label, Labelling, Valuation};
