//! Sampling and analysis of ferromagnetic exponential random graph models (ERGMs)
//! restricted to a metastable well.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] dense bitset graphs with cached degrees and canonical edge indexing,
//! * [`counts`] homomorphism counts and the per-edge change counts driving the dynamics,
//! * [`landscape`] the constant-graphon free energy `L(p)` and its stationary points,
//! * [`glauber`] single chains, monotone pairs and the Erdős–Rényi coupling,
//! * [`observables`] and [`stats`] the measurements and their post-processing,
//! * [`oracle`] exact enumeration for tiny graphs, used as ground truth in tests,
//! * [`experiments`] dataset configuration, seeding, parallel runs and CSV output.
//!
//! Sample generation parallelises over independent chains with rayon when the
//! `parallel` feature is enabled (the default); see [`par`].

pub mod counts;
pub mod error;
pub mod experiments;
pub mod glauber;
pub mod graph;
pub mod landscape;
pub mod observables;
pub mod oracle;
pub mod par;
pub mod stats;

pub use counts::{GraphKind, SmallGraph};
pub use error::{Error, Result};
pub use glauber::{ChainState, CouplingMode, CoupledPair};
pub use graph::{EdgeId, GraphState};
pub use landscape::{ErgmSpec, Regime, RegimeReport, StationaryPoint};

/// Seeded generator used for every chain.
pub type ChainRng = rand_chacha::ChaCha8Rng;
