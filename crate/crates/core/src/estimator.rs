//! Sizing the RR corpus and turning coverage into expected capital.
//!
//! `θ` follows the two-phase scheme of TIM+: a doubling search for a lower bound
//! `KPT*` on the expected spread of a random size-`k` seed set, a refinement that
//! measures the coverage of a greedy cover on a fresh corpus, and `θ = ⌈λ / KPT⁺⌉`.

use log::warn;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{AditumError, Result};
use crate::graph::{DiffusionGraph, NodeId, TargetSet};
use crate::rng::Domain;
use crate::sampler::{self, RRCorpus, RRSet, RootSampler, TriggerModel};

/// Accuracy parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimationParams {
    /// `ε ∈ (0,1)`.
    pub epsilon: f64,
    /// Confidence exponent `ℓ`; the guarantee holds with probability `1 − n^{−ℓ}`.
    pub ell: f64,
    /// Hard limit on `θ` and on any estimation corpus.
    pub theta_cap: usize,
}

impl Default for EstimationParams {
    fn default() -> Self {
        EstimationParams {
            epsilon: 0.1,
            ell: 1.0,
            theta_cap: 10_000_000,
        }
    }
}

impl EstimationParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(AditumError::config(format!("ε = {} must lie in (0,1)", self.epsilon)));
        }
        if !(self.ell > 0.0) {
            return Err(AditumError::config(format!("ℓ = {} must be positive", self.ell)));
        }
        if self.theta_cap == 0 {
            return Err(AditumError::config("θ cap must be at least 1"));
        }
        Ok(())
    }
}

/// Outcome of the θ computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaEstimate {
    /// `None` when `θ` was given directly.
    pub kpt_star: Option<f64>,
    pub kpt_plus: Option<f64>,
    pub theta: usize,
    /// `θ` hit the configured cap.
    pub capped: bool,
}

/// `ln C(n, k)` through log-gamma.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let (n, k) = (n as f64, k as f64);
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}

/// `λ = (8+2ε)·n·(ℓ ln n + ln C(n,k) + ln 2)·ε⁻²`.
pub fn lambda(node_count: usize, k: usize, epsilon: f64, ell: f64) -> f64 {
    let n = node_count as f64;
    (8.0 + 2.0 * epsilon) * n * (ell * n.ln() + ln_binomial(node_count, k) + std::f64::consts::LN_2)
        / (epsilon * epsilon)
}

/// `θ = ⌈λ / kpt⌉`, capped at `cap`. Returns `(θ, capped)`.
pub fn compute_theta(kpt: f64, epsilon: f64, ell: f64, k: usize, node_count: usize, cap: usize) -> Result<(usize, bool)> {
    if !(kpt >= 1.0) {
        return Err(AditumError::usage(format!("KPT = {kpt} must be at least 1")));
    }
    if k == 0 || k > node_count {
        return Err(AditumError::usage(format!("k = {k} must lie in 1..={node_count}")));
    }
    let raw = (lambda(node_count, k, epsilon, ell) / kpt).ceil().max(1.0);
    if !raw.is_finite() || raw > cap as f64 {
        warn!("θ = {raw:.0} exceeds the cap {cap}; using the cap");
        return Ok((cap, true));
    }
    Ok((raw as usize, false))
}

/// `κ(R) = 1 − (1 − w(R)/m)^k` with `w(R)` the number of edges entering `R`.
fn width_statistic(graph: &DiffusionGraph, set: &RRSet, k: usize) -> f64 {
    let m = graph.edge_count();
    if m == 0 {
        return 0.0;
    }
    let w: usize = set.members.iter().map(|&v| graph.in_degree(v)).sum();
    1.0 - (1.0 - w as f64 / m as f64).powi(k as i32)
}

fn set_count(node_count: usize, ell: f64, i: u32) -> usize {
    let n = node_count as f64;
    ((6.0 * ell * n.ln() + 6.0 * n.log2().ln()) * 2f64.powi(i as i32)).ceil() as usize
}

/// Doubling search for `KPT*`. Also returns the corpus of the last round, which the
/// refinement reuses.
fn kpt_search<M: TriggerModel>(
    graph: &DiffusionGraph,
    roots: &RootSampler,
    model: &M,
    k: usize,
    ell: f64,
    cap: usize,
    seed: u64,
) -> (f64, Vec<RRSet>) {
    let n = graph.node_count();
    let rounds = (n as f64).log2();
    let mut last = Vec::new();
    let mut i = 1u32;
    while f64::from(i) < rounds {
        let count = set_count(n, ell, i).min(cap);
        let sets = sampler::generate_sets(graph, roots, model, count, seed, Domain::KptEstimation, u64::from(i));
        let mean = sets.iter().map(|s| width_statistic(graph, s, k)).sum::<f64>() / count as f64;
        last = sets;
        if mean > 1.0 / 2f64.powi(i as i32) {
            return ((n as f64 * mean / 2.0).max(1.0), last);
        }
        i += 1;
    }
    (1.0, last)
}

/// `KPT*`.
pub fn kpt_estimation<M: TriggerModel>(
    graph: &DiffusionGraph,
    targets: &TargetSet,
    model: &M,
    k: usize,
    params: &EstimationParams,
    seed: u64,
) -> Result<f64> {
    params.validate()?;
    model.validate(graph)?;
    let roots = RootSampler::new(graph, targets)?;
    Ok(kpt_search(graph, &roots, model, k, params.ell, params.theta_cap, seed).0)
}

/// Greedy maximum coverage by set count; ties by ascending id.
pub(crate) fn greedy_cover(corpus: &RRCorpus, k: usize) -> Vec<NodeId> {
    let n = corpus.node_count();
    let mut covered = vec![false; corpus.len()];
    let mut gain: Vec<usize> = (0..n as NodeId).map(|v| corpus.sets_containing(v).len()).collect();
    let mut chosen = vec![false; n];
    let mut seeds = Vec::new();
    for _ in 0..k.min(n) {
        let best = (0..n).filter(|&v| !chosen[v]).max_by(|&a, &b| gain[a].cmp(&gain[b]).then(b.cmp(&a)));
        let Some(best) = best else { break };
        if gain[best] == 0 {
            break;
        }
        chosen[best] = true;
        seeds.push(best as NodeId);
        for &r in corpus.sets_containing(best as NodeId) {
            if !covered[r as usize] {
                covered[r as usize] = true;
                for &u in corpus.members(r) {
                    gain[u as usize] -= 1;
                }
            }
        }
    }
    seeds
}

/// Full θ computation: `KPT*`, refinement to `KPT⁺`, then `θ`.
pub fn estimate_theta<M: TriggerModel>(
    graph: &DiffusionGraph,
    targets: &TargetSet,
    model: &M,
    k: usize,
    params: &EstimationParams,
    seed: u64,
) -> Result<ThetaEstimate> {
    params.validate()?;
    model.validate(graph)?;
    let n = graph.node_count();
    if k == 0 || k > n {
        return Err(AditumError::usage(format!("k = {k} must lie in 1..={n}")));
    }
    let roots = RootSampler::new(graph, targets)?;
    let (kpt_star, last) = kpt_search(graph, &roots, model, k, params.ell, params.theta_cap, seed);

    let mut kpt_plus = kpt_star;
    if !last.is_empty() {
        let probe = sampler::corpus_from_generated(graph, last);
        let cover = greedy_cover(&probe, k);
        let (eps, ell, nf) = (params.epsilon, params.ell, n as f64);
        let eps_r = 5.0 * (ell * eps * eps / (k as f64 + ell)).cbrt();
        let lambda_r = (2.0 + eps_r) * ell * nf * nf.ln() / (eps_r * eps_r);
        let count = ((lambda_r / kpt_star).ceil() as usize).clamp(1, params.theta_cap);
        let fresh = sampler::generate_sets(graph, &roots, model, count, seed, Domain::KptRefinement, 0);
        let fresh = sampler::corpus_from_generated(graph, fresh);
        let refined = fresh.coverage_fraction(&cover) * nf / (1.0 + eps_r);
        kpt_plus = refined.max(kpt_star);
    }
    let (theta, capped) = compute_theta(kpt_plus, params.epsilon, params.ell, k, n, params.theta_cap)?;
    Ok(ThetaEstimate {
        kpt_star: Some(kpt_star),
        kpt_plus: Some(kpt_plus),
        theta,
        capped,
    })
}

/// `E[C(S)] = T_TS · (covered sets / θ)`.
///
/// Roots are drawn with probability `t(r)/T_TS`, so the covered fraction is already
/// an unbiased estimate of `E[C(S)]/T_TS`; weighting sets by `t(root)` a second time
/// would bias the estimate toward high-score targets.
pub fn expected_capital(covered_sets: usize, theta: usize, total_target_score: f64) -> Result<f64> {
    if theta == 0 {
        return Err(AditumError::usage("θ must be at least 1"));
    }
    if covered_sets > theta {
        return Err(AditumError::usage(format!("{covered_sets} covered sets out of θ = {theta}")));
    }
    Ok(total_target_score * covered_sets as f64 / theta as f64)
}

/// `E[C(S)]` of a seed set on a corpus.
pub fn corpus_capital(corpus: &RRCorpus, seeds: &[NodeId], total_target_score: f64) -> Result<f64> {
    let covered = corpus.covered_mask(seeds).iter().filter(|&&c| c).count();
    expected_capital(covered, corpus.len(), total_target_score)
}
