//! Monotone submodular set-diversity functions with incremental marginal gains.
//!
//! Each function is a stateful object over a growing seed set: `gain(v)` is the
//! marginal gain of adding `v` to the committed set, `commit(v)` adds it.

mod attribute_wise;
mod class;
mod entropy;
mod hamming;
pub mod negative;
mod numeric;

pub use attribute_wise::{aw_theoretical_max, AttributeWise};
pub use class::{ClassDiversity, Concave};
pub use entropy::EntropyDiversity;
pub use hamming::{hamming_distance, HammingBalls, HammingDiversity};
pub use numeric::{NumericDiversity, NumericWeighting};

use crate::error::{AditumError, Result};
use crate::graph::NodeId;

/// Incrementally evaluated set function `div(S)`.
///
/// `gain` is read-only and may be called from several threads between commits.
pub trait DiversityFunction: Send + Sync {
    /// Current `div(S)`.
    fn value(&self) -> f64;

    /// `div(S ∪ {v}) − div(S)`, never negative.
    fn gain(&self, v: NodeId) -> f64;

    /// Adds `v` to `S`. Committing a node twice is a usage error.
    fn commit(&mut self, v: NodeId) -> Result<()>;

    /// Empties `S`.
    fn reset(&mut self);

    /// Nodes committed so far, in commit order.
    fn committed(&self) -> &[NodeId];

    /// Short identifier used in reports.
    fn name(&self) -> &'static str;

    /// Upper bound of `div` over size-`k` sets, used to rescale the objective.
    fn max_value(&self, k: usize) -> Option<f64>;
}

/// Membership bookkeeping shared by all implementations.
#[derive(Debug, Clone, Default)]
pub(crate) struct Committed {
    mask: Vec<bool>,
    order: Vec<NodeId>,
}

impl Committed {
    pub(crate) fn new(node_count: usize) -> Self {
        Committed {
            mask: vec![false; node_count],
            order: Vec::new(),
        }
    }

    pub(crate) fn insert(&mut self, v: NodeId) -> Result<()> {
        match self.mask.get_mut(v as usize) {
            None => Err(AditumError::usage(format!("node {v} out of range"))),
            Some(true) => Err(AditumError::usage(format!("node {v} committed twice"))),
            Some(slot) => {
                *slot = true;
                self.order.push(v);
                Ok(())
            }
        }
    }

    pub(crate) fn clear(&mut self) {
        for &v in &self.order {
            self.mask[v as usize] = false;
        }
        self.order.clear();
    }

    pub(crate) fn order(&self) -> &[NodeId] {
        &self.order
    }
}

/// `x` clipped at zero to absorb negative rounding residue.
#[inline]
pub(crate) fn clip(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Diversity that is identically zero; makes the selector a pure capital maximizer.
#[derive(Debug, Clone)]
pub struct NoDiversity {
    committed: Committed,
}

impl NoDiversity {
    pub fn new(node_count: usize) -> Self {
        NoDiversity {
            committed: Committed::new(node_count),
        }
    }
}

impl DiversityFunction for NoDiversity {
    fn value(&self) -> f64 {
        0.0
    }

    fn gain(&self, _v: NodeId) -> f64 {
        0.0
    }

    fn commit(&mut self, v: NodeId) -> Result<()> {
        self.committed.insert(v)
    }

    fn reset(&mut self) {
        self.committed.clear();
    }

    fn committed(&self) -> &[NodeId] {
        self.committed.order()
    }

    fn name(&self) -> &'static str {
        "none"
    }

    fn max_value(&self, _k: usize) -> Option<f64> {
        None
    }
}
