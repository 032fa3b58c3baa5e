//! Targeted influence maximization with attribute-based diversity.
//!
//! Seeds are chosen greedily over a corpus of reverse reachable sets whose roots are
//! drawn in proportion to a per-node target score, trading expected captured
//! target score against a monotone submodular diversity function of the seed set.

pub mod baselines;
pub mod diversity;
pub mod error;
pub mod estimator;
pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod profiles;
pub mod rng;
pub mod sampler;
pub mod selector;
pub mod simulator;

pub use error::{AditumError, Result};
