//! Greedy seed selection on an RR corpus for `α·capital + (1−α)·diversity`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diversity::DiversityFunction;
use crate::error::{AditumError, Result};
use crate::estimator;
use crate::graph::NodeId;
use crate::sampler::RRCorpus;

/// Selection parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectConfig {
    pub k: usize,
    pub alpha: f64,
    /// `T_TS`, used to convert coverage into expected capital.
    pub total_target_score: f64,
    /// Lazy evaluation with staleness tags. `false` re-evaluates every candidate in
    /// every round; the selected sequence is the same.
    pub lazy: bool,
    /// Rescale capital to `[0,1]` by the total root score and diversity by the
    /// function's maximum for `k` seeds.
    pub normalize: bool,
}

impl SelectConfig {
    pub fn new(k: usize, alpha: f64, total_target_score: f64) -> Self {
        SelectConfig {
            k,
            alpha,
            total_target_score,
            lazy: true,
            normalize: false,
        }
    }
}

/// One greedy round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub node: NodeId,
    /// `Σ t(root)` over sets newly covered by `node`.
    pub capital_gain: f64,
    pub diversity_gain: f64,
    /// Score the queue ranked `node` by (after scaling when normalized).
    pub combined: f64,
    /// Sets covered after this round.
    pub covered_sets: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedResult {
    pub seeds: Vec<NodeId>,
    pub trace: Vec<IterationRecord>,
    pub alpha: f64,
    pub k: usize,
    pub theta: usize,
    pub covered_sets: usize,
    pub total_target_score: f64,
    pub expected_capital: f64,
    pub diversity: String,
    pub diversity_value: f64,
    /// `max div` over `k` seeds, when the function knows it.
    pub diversity_max: Option<f64>,
    pub normalized: bool,
    pub elapsed_ms: u128,
    #[serde(skip)]
    pub covered: Vec<u32>,
}

impl SeedResult {
    /// `α·E[C(S)] + (1−α)·div(S)`.
    pub fn objective(&self) -> f64 {
        objective_value(self, self.alpha)
    }

    /// `α·E[C]/T_TS + (1−α)·div/div_max`; `None` without a known maximum.
    pub fn normalized_objective(&self) -> Option<f64> {
        let max = self.diversity_max.filter(|&m| m > 0.0)?;
        let capital = if self.total_target_score > 0.0 {
            self.expected_capital / self.total_target_score
        } else {
            0.0
        };
        Some(self.alpha * capital + (1.0 - self.alpha) * self.diversity_value / max)
    }
}

/// `α·E[C(S)] + (1−α)·div(S)`.
pub fn objective_value(result: &SeedResult, alpha: f64) -> f64 {
    alpha * result.expected_capital + (1.0 - alpha) * result.diversity_value
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    score: f64,
    node: NodeId,
    tag: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // max-heap: higher score first, then lower node id
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then_with(|| other.node.cmp(&self.node))
    }
}

struct State<'a> {
    corpus: &'a RRCorpus,
    covered: Vec<bool>,
    alpha: f64,
    capital_scale: f64,
    diversity_scale: f64,
}

impl State<'_> {
    /// `Σ t(root)` over uncovered sets containing `v`, summed in index order so the
    /// value does not depend on when it is computed.
    fn capital(&self, v: NodeId) -> f64 {
        self.corpus
            .sets_containing(v)
            .iter()
            .filter(|&&r| !self.covered[r as usize])
            .map(|&r| self.corpus.root_score(r))
            .sum()
    }

    fn score(&self, capital: f64, diversity: f64) -> f64 {
        self.alpha * capital * self.capital_scale + (1.0 - self.alpha) * diversity * self.diversity_scale
    }

    fn evaluate(&self, v: NodeId, diversity: &dyn DiversityFunction) -> (f64, f64, f64) {
        let c = self.capital(v);
        let d = diversity.gain(v);
        (self.score(c, d), c, d)
    }
}

/// Greedy selection of up to `k` seeds over `corpus`.
///
/// Ranks candidates by `α·Σ t(root(R)) + (1−α)·Δdiv` over still-uncovered sets;
/// ties go to the lower node id. Stops early, with a warning, once no candidate
/// has a positive score. `diversity` must be fresh.
pub fn build_seed_set(
    corpus: &RRCorpus,
    diversity: &mut dyn DiversityFunction,
    config: &SelectConfig,
) -> Result<SeedResult> {
    let start = Instant::now();
    if corpus.is_empty() {
        return Err(AditumError::usage("cannot select seeds from an empty corpus"));
    }
    if config.k == 0 {
        return Err(AditumError::usage("k must be at least 1"));
    }
    if !(0.0..=1.0).contains(&config.alpha) {
        return Err(AditumError::usage(format!("α = {} must lie in [0,1]", config.alpha)));
    }
    if !diversity.committed().is_empty() {
        return Err(AditumError::usage("diversity state must be fresh"));
    }
    let n = corpus.node_count();
    let diversity_max = diversity.max_value(config.k);
    let (capital_scale, diversity_scale) = if config.normalize {
        let total = corpus.total_root_score();
        let max = diversity_max.filter(|&m| m > 0.0).ok_or_else(|| {
            AditumError::config(format!("{} diversity has no known maximum to normalize by", diversity.name()))
        })?;
        (if total > 0.0 { 1.0 / total } else { 0.0 }, 1.0 / max)
    } else {
        (1.0, 1.0)
    };
    let mut state = State {
        corpus,
        covered: vec![false; corpus.len()],
        alpha: config.alpha,
        capital_scale,
        diversity_scale,
    };
    let mut chosen = vec![false; n];
    let mut seeds = Vec::with_capacity(config.k);
    let mut trace = Vec::with_capacity(config.k);
    let mut covered_count = 0usize;
    let mut covered_ids = Vec::new();

    let mut heap: BinaryHeap<Entry> = {
        let div: &dyn DiversityFunction = diversity;
        let st = &state;
        (0..n as NodeId)
            .into_par_iter()
            .map(|v| Entry {
                score: st.evaluate(v, div).0,
                node: v,
                tag: 0,
            })
            .collect::<Vec<_>>()
            .into()
    };

    while seeds.len() < config.k {
        let pick = if config.lazy {
            lazy_pick(&mut heap, &state, diversity, seeds.len())
        } else {
            eager_pick(&state, diversity, &chosen)
        };
        let Some((v, score, capital, div_gain)) = pick else {
            break;
        };
        if !(score > 0.0) {
            warn!(
                "no candidate improves the objective after {} seeds; stopping short of k = {}",
                seeds.len(),
                config.k
            );
            break;
        }
        chosen[v as usize] = true;
        seeds.push(v);
        diversity.commit(v)?;
        for &r in corpus.sets_containing(v) {
            if !state.covered[r as usize] {
                state.covered[r as usize] = true;
                covered_count += 1;
                covered_ids.push(r);
            }
        }
        trace.push(IterationRecord {
            node: v,
            capital_gain: capital,
            diversity_gain: div_gain,
            combined: score,
            covered_sets: covered_count,
        });
    }
    covered_ids.sort_unstable();
    let expected_capital = estimator::expected_capital(covered_count, corpus.len(), config.total_target_score)?;
    Ok(SeedResult {
        seeds,
        trace,
        alpha: config.alpha,
        k: config.k,
        theta: corpus.len(),
        covered_sets: covered_count,
        total_target_score: config.total_target_score,
        expected_capital,
        diversity: diversity.name().to_string(),
        diversity_value: diversity.value(),
        diversity_max,
        normalized: config.normalize,
        elapsed_ms: start.elapsed().as_millis(),
        covered: covered_ids,
    })
}

fn lazy_pick(
    heap: &mut BinaryHeap<Entry>,
    state: &State<'_>,
    diversity: &dyn DiversityFunction,
    round: usize,
) -> Option<(NodeId, f64, f64, f64)> {
    while let Some(top) = heap.pop() {
        let (score, capital, div_gain) = state.evaluate(top.node, diversity);
        if top.tag == round {
            return Some((top.node, score, capital, div_gain));
        }
        heap.push(Entry {
            score,
            node: top.node,
            tag: round,
        });
    }
    None
}

fn eager_pick(state: &State<'_>, diversity: &dyn DiversityFunction, chosen: &[bool]) -> Option<(NodeId, f64, f64, f64)> {
    let mut best: Option<(NodeId, f64, f64, f64)> = None;
    for v in 0..chosen.len() as NodeId {
        if chosen[v as usize] {
            continue;
        }
        let (score, capital, div_gain) = state.evaluate(v, diversity);
        if best.is_none_or(|b| score.total_cmp(&b.1) == Ordering::Greater) {
            best = Some((v, score, capital, div_gain));
        }
    }
    best
}
