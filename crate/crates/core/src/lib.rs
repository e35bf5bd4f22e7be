//! Exact and stochastic analysis of weighted voting systems under
//! exchangeable (common-belief) voting measures.
//!
//! A voting measure is described by a mixing measure μ on `[0, 1]`
//! ([`BeliefMeasure`]); every coalition probability then depends only on the
//! coalition size, so all quantities reduce to per-size coalition counts
//! ([`engine::SizeProfile`]) weighted by the size kernel
//! ([`measures::Kernel`]).
//!
//! ```
//! use cbpower::{engine, BeliefMeasure, WeightedVotingSystem};
//!
//! let sys = WeightedVotingSystem::simple_majority(3).unwrap();
//! let report = engine::analyze(&sys, &BeliefMeasure::shapley_shubik()).unwrap();
//! assert_eq!(report.voters[0].d.to_string(), "1/3");
//! assert_eq!(report.voters[0].s.to_string(), "5/6");
//! ```

pub mod asymptotics;
pub mod engine;
mod error;
pub mod exact;
pub mod measures;
pub mod montecarlo;
mod quantity;
pub mod systems;

pub use error::{Error, Result};
pub use exact::Rational;
pub use measures::{BeliefMeasure, Kernel};
pub use quantity::Quantity;
pub use systems::{ExplicitVotingSystem, VotingRule, WeightedVotingSystem};
