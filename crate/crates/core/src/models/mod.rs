//! Comparison models: direct substitution, Pereira's propagation, the
//! h-categoriser, weighted numerical networks, social vote semantics and
//! the Hassell host–parasitoid recurrence.

pub mod categoriser;
pub mod hassell;
pub mod naive;
pub mod numerical;
pub mod pereira;
pub mod social;

pub use categoriser::h_categoriser;
pub use hassell::{hassell_fixed_point, hassell_simulate, HassellParams, HassellState};
pub use naive::{naive_iteration, period};
pub use numerical::{kappa_two_cycle, numafn_solve, NumericalNetwork};
pub use pereira::{pereira_alpha, pereira_beta};
pub use social::{social_solve, tau_epsilon, SocialFramework, VoteTally};
