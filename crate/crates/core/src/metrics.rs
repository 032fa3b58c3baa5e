//! Evaluation metrics over selected seed sets and the CSV row format.
//!
//! Metrics CSV columns, in order:
//! `dataset, diversity, k, alpha, target, rng_seed, theta, seeds_selected,
//! expected_capital, diversity_value, diversity_max, diversity_ratio, objective,
//! seed_entropy`. Empty cells mean "not applicable".

use std::collections::{BTreeMap, HashSet};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::diversity::aw_theoretical_max;
use crate::error::{AditumError, Result};
use crate::graph::NodeId;
use crate::profiles::ProfileSet;
use crate::selector::SeedResult;

/// Shannon entropy (bits) of the attribute values of `seeds`, times the coverage
/// penalty `ζ = (1 + log₂(|dom| / |dom(S)|))⁻¹`. Zero when the seeds carry no values.
pub fn seed_entropy(seeds: &[NodeId], profiles: &ProfileSet) -> f64 {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &v in seeds {
        for a in profiles.values(v) {
            *counts.entry(a).or_default() += 1;
        }
    }
    let total: usize = counts.values().sum();
    if total == 0 {
        return 0.0;
    }
    let entropy: f64 = counts
        .values()
        .map(|&c| {
            let p = c as f64 / total as f64;
            -p * p.log2()
        })
        .sum();
    let dom = profiles.schema().total_values() as f64;
    let zeta = 1.0 / (1.0 + (dom / counts.len() as f64).log2());
    entropy * zeta
}

/// `|S1 ∩ S2| / k`.
pub fn seed_overlap(s1: &[NodeId], s2: &[NodeId], k: usize) -> Result<f64> {
    if s1.len() != k || s2.len() != k {
        return Err(AditumError::usage(format!(
            "overlap needs two seed sets of size {k}, got {} and {}",
            s1.len(),
            s2.len()
        )));
    }
    let a: HashSet<NodeId> = s1.iter().copied().collect();
    let shared = s2.iter().collect::<HashSet<_>>().into_iter().filter(|v| a.contains(v)).count();
    Ok(shared as f64 / k as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub k: usize,
    pub alpha: f64,
    pub diversity: f64,
    pub maximum: f64,
    pub ratio: f64,
}

/// Achieved attribute-wise diversity against its maximum for size-`k` sets.
pub fn diversity_curve(results: &[SeedResult], profiles: &ProfileSet, lambda: f64) -> Vec<CurveRow> {
    let schema = profiles.schema();
    let sizes = schema.domain_sizes();
    results
        .iter()
        .map(|r| {
            let maximum = aw_theoretical_max(r.k, &sizes, schema.weights(), lambda);
            CurveRow {
                k: r.k,
                alpha: r.alpha,
                diversity: r.diversity_value,
                maximum,
                ratio: if maximum > 0.0 { r.diversity_value / maximum } else { 0.0 },
            }
        })
        .collect()
}

/// One line of the metrics CSV. Field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub dataset: String,
    pub diversity: String,
    pub k: usize,
    pub alpha: f64,
    pub target: String,
    pub rng_seed: u64,
    pub theta: usize,
    pub seeds_selected: usize,
    pub expected_capital: f64,
    pub diversity_value: f64,
    pub diversity_max: Option<f64>,
    pub diversity_ratio: Option<f64>,
    pub objective: f64,
    pub seed_entropy: Option<f64>,
}

impl MetricsRow {
    pub fn from_result(
        dataset: &str,
        target: &str,
        rng_seed: u64,
        result: &SeedResult,
        profiles: Option<&ProfileSet>,
    ) -> Self {
        let ratio = result
            .diversity_max
            .filter(|&m| m > 0.0)
            .map(|m| result.diversity_value / m);
        MetricsRow {
            dataset: dataset.to_string(),
            diversity: result.diversity.clone(),
            k: result.k,
            alpha: result.alpha,
            target: target.to_string(),
            rng_seed,
            theta: result.theta,
            seeds_selected: result.seeds.len(),
            expected_capital: result.expected_capital,
            diversity_value: result.diversity_value,
            diversity_max: result.diversity_max,
            diversity_ratio: ratio,
            objective: result.objective(),
            seed_entropy: profiles.map(|p| seed_entropy(&result.seeds, p)),
        }
    }
}

/// Writes rows with a header line.
pub fn write_metrics_csv<W: Write>(writer: W, rows: &[MetricsRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    if rows.is_empty() {
        w.write_record(METRICS_COLUMNS)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub const METRICS_COLUMNS: [&str; 14] = [
    "dataset",
    "diversity",
    "k",
    "alpha",
    "target",
    "rng_seed",
    "theta",
    "seeds_selected",
    "expected_capital",
    "diversity_value",
    "diversity_max",
    "diversity_ratio",
    "objective",
    "seed_entropy",
];
