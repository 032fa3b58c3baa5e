use super::{Committed, DiversityFunction};
use crate::error::{AditumError, Result};
use crate::graph::NodeId;
use crate::profiles::ProfileSet;

/// Attribute-wise diversity: `Σ_j ω_j Σ_{a ∈ dom_j(S)} Σ_{i=1}^{n_a} i^{−λ}`.
///
/// The gain of `v` only depends on the counts `n_a` of `v`'s own values, so both
/// `gain` and `commit` run in `O(|𝒜[v]|)`.
#[derive(Debug, Clone)]
pub struct AttributeWise<'a> {
    profiles: &'a ProfileSet,
    lambda: f64,
    counts: Vec<u32>,
    value: f64,
    committed: Committed,
}

impl<'a> AttributeWise<'a> {
    pub fn new(profiles: &'a ProfileSet, lambda: f64) -> Result<Self> {
        if !(lambda >= 1.0 && lambda.is_finite()) {
            return Err(AditumError::config(format!("λ must be ≥ 1, got {lambda}")));
        }
        Ok(AttributeWise {
            profiles,
            lambda,
            counts: vec![0; profiles.schema().total_values()],
            value: 0.0,
            committed: Committed::new(profiles.node_count()),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `n_a` for value `a` among committed nodes.
    pub fn count(&self, a: crate::profiles::ValueId) -> u32 {
        self.counts[a as usize]
    }
}

impl DiversityFunction for AttributeWise<'_> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, v: NodeId) -> f64 {
        let schema = self.profiles.schema();
        self.profiles
            .profile(v)
            .iter()
            .enumerate()
            .filter_map(|(j, a)| a.map(|a| schema.weight(j) * f64::from(self.counts[a as usize] + 1).powf(-self.lambda)))
            .sum()
    }

    fn commit(&mut self, v: NodeId) -> Result<()> {
        self.committed.insert(v)?;
        self.value += self.gain(v);
        for a in self.profiles.values(v) {
            self.counts[a as usize] += 1;
        }
        Ok(())
    }

    fn reset(&mut self) {
        self.counts.iter_mut().for_each(|c| *c = 0);
        self.value = 0.0;
        self.committed.clear();
    }

    fn committed(&self) -> &[NodeId] {
        self.committed.order()
    }

    fn name(&self) -> &'static str {
        "aw"
    }

    fn max_value(&self, k: usize) -> Option<f64> {
        let schema = self.profiles.schema();
        Some(aw_theoretical_max(k, &schema.domain_sizes(), schema.weights(), self.lambda))
    }
}

/// Largest attainable attribute-wise diversity for `k` nodes, reached when each
/// attribute's values are spread as evenly as possible over the `k` nodes:
/// `Σ_j ω_j ( d_j Σ_{i=1}^{⌊k/d_j⌋} i^{−λ} + (k mod d_j)(1 + ⌊k/d_j⌋)^{−λ} )`.
pub fn aw_theoretical_max(k: usize, domain_sizes: &[usize], weights: &[f64], lambda: f64) -> f64 {
    domain_sizes
        .iter()
        .zip(weights)
        .filter(|(&d, _)| d > 0)
        .map(|(&d, &w)| {
            let full = k / d;
            let rest = k % d;
            let head: f64 = (1..=full).map(|i| (i as f64).powf(-lambda)).sum();
            w * (d as f64 * head + rest as f64 * ((1 + full) as f64).powf(-lambda))
        })
        .sum()
}
