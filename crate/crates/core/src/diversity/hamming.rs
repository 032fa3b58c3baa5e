use std::sync::OnceLock;

use rayon::prelude::*;

use super::{Committed, DiversityFunction};
use crate::error::{AditumError, Result};
use crate::graph::{DiffusionGraph, NodeId};
use crate::profiles::ProfileSet;

/// Attribute mismatches between two profiles. A missing value mismatches everything,
/// including another missing value.
pub fn hamming_distance(profiles: &ProfileSet, u: NodeId, v: NodeId) -> usize {
    profiles
        .profile(u)
        .iter()
        .zip(profiles.profile(v))
        .filter(|(a, b)| match (a, b) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
        .count()
}

/// Lazily built Hamming balls `B^ξ_v = { u ∈ IR(v) : dist(u,v) ≤ ξ }`, where `IR(v)`
/// holds every node reachable from `v` by a directed path (not `v` itself).
#[derive(Debug)]
pub struct HammingBalls<'a> {
    graph: &'a DiffusionGraph,
    profiles: &'a ProfileSet,
    radius: usize,
    balls: Vec<OnceLock<Vec<NodeId>>>,
}

impl<'a> HammingBalls<'a> {
    pub fn new(graph: &'a DiffusionGraph, profiles: &'a ProfileSet, radius: usize) -> Result<Self> {
        if radius == 0 {
            return Err(AditumError::config("Hamming radius ξ must be a positive integer"));
        }
        if profiles.node_count() != graph.node_count() {
            return Err(AditumError::config(format!(
                "{} profiles for {} graph nodes",
                profiles.node_count(),
                graph.node_count()
            )));
        }
        Ok(HammingBalls {
            graph,
            profiles,
            radius,
            balls: (0..graph.node_count()).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Sorted members of `B^ξ_v`, computed on first access and cached.
    pub fn ball(&self, v: NodeId) -> &[NodeId] {
        self.balls[v as usize].get_or_init(|| {
            self.graph
                .forward_reachable(v)
                .into_iter()
                .filter(|&u| hamming_distance(self.profiles, u, v) <= self.radius)
                .collect()
        })
    }

    /// Builds every ball up front, in parallel.
    pub fn precompute_all(&self) {
        (0..self.balls.len() as NodeId).into_par_iter().for_each(|v| {
            self.ball(v);
        });
    }

    pub fn node_count(&self) -> usize {
        self.balls.len()
    }
}

/// Hamming-ball diversity `|⋃_{v∈S} B^ξ_v|`.
#[derive(Debug)]
pub struct HammingDiversity<'a> {
    balls: HammingBalls<'a>,
    covered: Vec<bool>,
    value: usize,
    committed: Committed,
}

impl<'a> HammingDiversity<'a> {
    pub fn new(balls: HammingBalls<'a>) -> Self {
        let n = balls.node_count();
        HammingDiversity {
            balls,
            covered: vec![false; n],
            value: 0,
            committed: Committed::new(n),
        }
    }

    pub fn balls(&self) -> &HammingBalls<'a> {
        &self.balls
    }

    pub fn is_covered(&self, u: NodeId) -> bool {
        self.covered[u as usize]
    }
}

impl DiversityFunction for HammingDiversity<'_> {
    fn value(&self) -> f64 {
        self.value as f64
    }

    fn gain(&self, v: NodeId) -> f64 {
        self.balls.ball(v).iter().filter(|&&u| !self.covered[u as usize]).count() as f64
    }

    fn commit(&mut self, v: NodeId) -> Result<()> {
        self.committed.insert(v)?;
        for &u in self.balls.ball(v) {
            if !self.covered[u as usize] {
                self.covered[u as usize] = true;
                self.value += 1;
            }
        }
        Ok(())
    }

    fn reset(&mut self) {
        self.covered.iter_mut().for_each(|c| *c = false);
        self.value = 0;
        self.committed.clear();
    }

    fn committed(&self) -> &[NodeId] {
        self.committed.order()
    }

    fn name(&self) -> &'static str {
        "hamming"
    }

    fn max_value(&self, _k: usize) -> Option<f64> {
        Some(self.balls.node_count() as f64)
    }
}
