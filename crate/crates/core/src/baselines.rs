//! Degree-plus-diversity greedy baseline.

use crate::diversity::{Concave, DiversityFunction, NumericDiversity, NumericWeighting};
use crate::error::{AditumError, Result};
use crate::graph::{DiffusionGraph, NodeId};

/// Greedy on `(1−γ)·Σ_{u∈S} deg(u) + γ·D(S)` with `deg` the out-degree and
/// `D(S) = Σ_m log₂(1 + Σ_{u∈S} ω_um·g(u))`. Ties go to the lower node id.
pub fn deg_d_greedy(
    graph: &DiffusionGraph,
    preferences: &[Vec<f64>],
    weighting: NumericWeighting,
    gamma: f64,
    k: usize,
) -> Result<Vec<NodeId>> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(AditumError::usage(format!("γ = {gamma} must lie in [0,1]")));
    }
    let n = graph.node_count();
    if k == 0 || k > n {
        return Err(AditumError::usage(format!("k = {k} must lie in 1..={n}")));
    }
    let mut d = NumericDiversity::new(graph, preferences, weighting, Concave::Log2OnePlus)?;
    let mut chosen = vec![false; n];
    let mut seeds = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(NodeId, f64)> = None;
        for v in 0..n as NodeId {
            if chosen[v as usize] {
                continue;
            }
            let score = (1.0 - gamma) * graph.out_degree(v) as f64 + gamma * d.gain(v);
            if best.is_none_or(|(_, b)| score > b) {
                best = Some((v, score));
            }
        }
        let (v, _) = best.expect("k ≤ n leaves a candidate");
        chosen[v as usize] = true;
        d.commit(v)?;
        seeds.push(v);
    }
    Ok(seeds)
}

/// `γ` matching a capital/diversity trade-off `α`.
pub fn gamma_for_alpha(alpha: f64) -> f64 {
    1.0 - alpha
}
