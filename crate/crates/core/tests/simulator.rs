mod common;

use std::collections::VecDeque;

use aditum::graph::{DiffusionGraph, NodeId, TargetMode, TargetSet};
use aditum::sampler::DiffusionModel;
use aditum::simulator::{exhaustive_expectation, simulate};
use proptest::prelude::*;

/// `E[C(S)]` under IC by enumerating live-edge subsets directly.
fn ic_reference(g: &DiffusionGraph, targets: &TargetSet, seeds: &[NodeId]) -> f64 {
    let m = g.edge_count();
    let n = g.node_count();
    let mut total = 0.0;
    for live in 0u64..1 << m {
        let mut prob = 1.0;
        for e in 0..m {
            let b = g.edge_prob(e as u32);
            prob *= if live >> e & 1 == 1 { b } else { 1.0 - b };
        }
        let mut active = vec![false; n];
        let mut queue: VecDeque<NodeId> = seeds.iter().copied().collect();
        for &s in seeds {
            active[s as usize] = true;
        }
        while let Some(u) = queue.pop_front() {
            for e in 0..m {
                let (a, b) = g.edge(e as u32);
                if a == u && live >> e & 1 == 1 && !active[b as usize] {
                    active[b as usize] = true;
                    queue.push_back(b);
                }
            }
        }
        let capital: f64 = (0..n as NodeId)
            .filter(|&v| active[v as usize] && targets.contains(v))
            .map(|v| g.target_score(v))
            .sum();
        total += prob * capital;
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exhaustive_ic_matches_direct_enumeration(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let g = common::with_random_scores(common::micro_graph(&mut r, 6, 10), &mut r);
        let targets = TargetSet::select(&g, TargetMode::Threshold(0.0)).unwrap();
        let seeds = [0, 3];
        let exact = exhaustive_expectation(&g, &targets, DiffusionModel::IndependentCascade, &seeds).unwrap();
        prop_assert!((exact.capital - ic_reference(&g, &targets, &seeds)).abs() < 1e-9);
    }
}

#[test]
fn monte_carlo_agrees_with_enumeration() {
    let mut r = common::rng(4);
    let g = common::with_random_scores(common::micro_graph(&mut r, 7, 12), &mut r);
    let targets = TargetSet::select(&g, TargetMode::Threshold(0.0)).unwrap();
    let exact = exhaustive_expectation(&g, &targets, DiffusionModel::IndependentCascade, &[1]).unwrap();
    let mc = simulate(&g, &targets, &DiffusionModel::IndependentCascade, &[1], 20_000, 4).unwrap();
    assert!((mc.mean_capital - exact.capital).abs() < 4.0 * mc.capital_stderr.max(1e-3));
}
