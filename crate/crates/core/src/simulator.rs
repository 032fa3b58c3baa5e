//! Forward diffusion: Monte Carlo estimates and exact enumeration on small graphs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AditumError, Result};
use crate::graph::{DiffusionGraph, NodeId, TargetSet};
use crate::rng::{self, Domain};
use crate::sampler::{DiffusionModel, TriggerModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub runs: usize,
    /// Mean `|A(S)|`.
    pub mean_spread: f64,
    pub spread_stderr: f64,
    /// Mean `Σ_{v ∈ A(S) ∩ TS} t(v)`.
    pub mean_capital: f64,
    pub capital_stderr: f64,
}

/// Exact expected spread and capital.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub spread: f64,
    pub capital: f64,
}

struct RunScratch {
    active: Vec<u32>,
    sampled: Vec<u32>,
    trigger_start: Vec<u32>,
    trigger_len: Vec<u32>,
    triggers: Vec<NodeId>,
    buffer: Vec<NodeId>,
    queue: Vec<NodeId>,
    epoch: u32,
}

impl RunScratch {
    fn new(n: usize) -> Self {
        RunScratch {
            active: vec![0; n],
            sampled: vec![0; n],
            trigger_start: vec![0; n],
            trigger_len: vec![0; n],
            triggers: Vec::new(),
            buffer: Vec::new(),
            queue: Vec::new(),
            epoch: 0,
        }
    }
}

/// One run: triggers are sampled the first time a node is probed and reused for
/// the rest of the run. Returns `(spread, capital)`.
fn run_once<M: TriggerModel>(
    graph: &DiffusionGraph,
    targets: &TargetSet,
    model: &M,
    seeds: &[NodeId],
    rng: &mut rand_chacha::ChaCha8Rng,
    s: &mut RunScratch,
) -> (f64, f64) {
    s.epoch += 1;
    let epoch = s.epoch;
    s.triggers.clear();
    s.queue.clear();
    for &v in seeds {
        if s.active[v as usize] != epoch {
            s.active[v as usize] = epoch;
            s.queue.push(v);
        }
    }
    let mut head = 0;
    while head < s.queue.len() {
        let u = s.queue[head];
        head += 1;
        for &w in graph.out_neighbors(u) {
            if s.active[w as usize] == epoch {
                continue;
            }
            if s.sampled[w as usize] != epoch {
                s.sampled[w as usize] = epoch;
                s.buffer.clear();
                model.sample_trigger(graph, w, rng, &mut s.buffer);
                s.trigger_start[w as usize] = s.triggers.len() as u32;
                s.trigger_len[w as usize] = s.buffer.len() as u32;
                s.triggers.extend_from_slice(&s.buffer);
            }
            let start = s.trigger_start[w as usize] as usize;
            let len = s.trigger_len[w as usize] as usize;
            if s.triggers[start..start + len].contains(&u) {
                s.active[w as usize] = epoch;
                s.queue.push(w);
            }
        }
    }
    let capital = s
        .queue
        .iter()
        .filter(|&&v| targets.contains(v))
        .map(|&v| graph.target_score(v))
        .sum();
    (s.queue.len() as f64, capital)
}

fn check_seeds(graph: &DiffusionGraph, seeds: &[NodeId]) -> Result<()> {
    if seeds.is_empty() {
        return Err(AditumError::usage("seed set is empty"));
    }
    if let Some(&v) = seeds.iter().find(|&&v| v as usize >= graph.node_count()) {
        return Err(AditumError::usage(format!("seed {v} is not a node of the graph")));
    }
    Ok(())
}

fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Monte Carlo estimate over `runs` independent live-edge instances. Run `i` draws
/// from its own stream, so the report does not depend on the thread count.
pub fn simulate<M: TriggerModel>(
    graph: &DiffusionGraph,
    targets: &TargetSet,
    model: &M,
    seeds: &[NodeId],
    runs: usize,
    master_seed: u64,
) -> Result<SimulationReport> {
    check_seeds(graph, seeds)?;
    if runs == 0 {
        return Err(AditumError::usage("runs must be at least 1"));
    }
    model.validate(graph)?;
    let outcomes: Vec<(f64, f64)> = (0..runs as u64)
        .into_par_iter()
        .map_init(
            || RunScratch::new(graph.node_count()),
            |scratch, run| {
                let mut rng = rng::stream(master_seed, Domain::Simulation, 0, run);
                run_once(graph, targets, model, seeds, &mut rng, scratch)
            },
        )
        .collect();
    let spreads: Vec<f64> = outcomes.iter().map(|o| o.0).collect();
    let capitals: Vec<f64> = outcomes.iter().map(|o| o.1).collect();
    let (mean_spread, spread_stderr) = mean_and_stderr(&spreads);
    let (mean_capital, capital_stderr) = mean_and_stderr(&capitals);
    Ok(SimulationReport {
        runs,
        mean_spread,
        spread_stderr,
        mean_capital,
        capital_stderr,
    })
}

/// Largest number of live-edge outcomes [`exhaustive_expectation`] will enumerate.
pub const MAX_OUTCOMES: u64 = 1 << 20;

fn reach_with(graph: &DiffusionGraph, seeds: &[NodeId], live: impl Fn(NodeId, usize) -> bool) -> Vec<bool> {
    // live(w, i): whether the i-th in-edge of w is live
    let n = graph.node_count();
    let mut active = vec![false; n];
    let mut queue = Vec::new();
    for &v in seeds {
        if !active[v as usize] {
            active[v as usize] = true;
            queue.push(v);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &w in graph.out_neighbors(u) {
            if active[w as usize] {
                continue;
            }
            let hit = graph.in_neighbors(w).iter().enumerate().any(|(i, &x)| x == u && live(w, i));
            if hit {
                active[w as usize] = true;
                queue.push(w);
            }
        }
    }
    active
}

fn tally(graph: &DiffusionGraph, targets: &TargetSet, active: &[bool], p: f64, acc: &mut Expectation) {
    for (v, &a) in active.iter().enumerate() {
        if a {
            acc.spread += p;
            if targets.contains(v as NodeId) {
                acc.capital += p * graph.target_score(v as NodeId);
            }
        }
    }
}

/// Exact expectation by enumerating every live-edge outcome. IC enumerates the
/// `2^|E|` edge subsets; LT enumerates each node's choice of at most one in-edge.
/// Refuses instances with more than [`MAX_OUTCOMES`] outcomes.
pub fn exhaustive_expectation(
    graph: &DiffusionGraph,
    targets: &TargetSet,
    model: DiffusionModel,
    seeds: &[NodeId],
) -> Result<Expectation> {
    check_seeds(graph, seeds)?;
    model.validate(graph)?;
    let n = graph.node_count();
    // in-edge probabilities per node, in in-neighbor order
    let probs: Vec<Vec<f64>> = (0..n as NodeId)
        .map(|w| graph.in_edges(w).map(|(_, e)| graph.edge_prob(e)).collect())
        .collect();
    let mut acc = Expectation { spread: 0.0, capital: 0.0 };
    match model {
        DiffusionModel::IndependentCascade => {
            let m = graph.edge_count();
            if m > 20 {
                return Err(AditumError::usage(format!("{m} edges is too many to enumerate (limit 20)")));
            }
            let mut base = vec![0usize; n + 1];
            for w in 0..n {
                base[w + 1] = base[w] + probs[w].len();
            }
            for mask in 0u32..(1u32 << m) {
                let mut p = 1.0;
                for w in 0..n {
                    for (i, &b) in probs[w].iter().enumerate() {
                        p *= if mask >> (base[w] + i) & 1 == 1 { b } else { 1.0 - b };
                    }
                }
                if p == 0.0 {
                    continue;
                }
                let active = reach_with(graph, seeds, |w, i| mask >> (base[w as usize] + i) & 1 == 1);
                tally(graph, targets, &active, p, &mut acc);
            }
        }
        DiffusionModel::LinearThreshold => {
            // choice d_w = in-degree means "no live in-edge"
            let radix: Vec<usize> = probs.iter().map(|p| p.len() + 1).collect();
            let total = radix.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r as u64).filter(|&x| x <= MAX_OUTCOMES));
            if total.is_none() {
                return Err(AditumError::usage(format!(
                    "linear threshold outcome space exceeds {MAX_OUTCOMES} outcomes"
                )));
            }
            let mut choice = vec![0usize; n];
            loop {
                let mut p = 1.0;
                for w in 0..n {
                    let d = probs[w].len();
                    p *= if choice[w] == d {
                        (1.0 - probs[w].iter().sum::<f64>()).max(0.0)
                    } else {
                        probs[w][choice[w]]
                    };
                }
                if p > 0.0 {
                    let active = reach_with(graph, seeds, |w, i| choice[w as usize] == i);
                    tally(graph, targets, &active, p, &mut acc);
                }
                let mut w = 0;
                while w < n {
                    choice[w] += 1;
                    if choice[w] < radix[w] {
                        break;
                    }
                    choice[w] = 0;
                    w += 1;
                }
                if w == n {
                    break;
                }
            }
        }
    }
    Ok(acc)
}
