use super::{clip, Committed, Concave, DiversityFunction};
use crate::error::{AditumError, Result};
use crate::graph::{DiffusionGraph, NodeId};

/// Per-node multiplier `g(u)` in the numeric diversity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumericWeighting {
    /// `g(u) = 1`
    Unit,
    /// `g(u) = out-degree(u)`
    OutDegree,
}

impl std::str::FromStr for NumericWeighting {
    type Err = AditumError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" | "u" => Ok(NumericWeighting::Unit),
            "degree" | "out-degree" | "w" => Ok(NumericWeighting::OutDegree),
            other => Err(AditumError::config(format!("unknown g mode `{other}`"))),
        }
    }
}

/// Numeric-preference diversity `D(S) = Σ_m f(Σ_{u∈S} ω_um · g(u))`.
#[derive(Debug, Clone)]
pub struct NumericDiversity<'a> {
    preferences: &'a [Vec<f64>],
    scale: Vec<f64>,
    sums: Vec<f64>,
    f: Concave,
    weighting: NumericWeighting,
    value: f64,
    committed: Committed,
}

impl<'a> NumericDiversity<'a> {
    /// `preferences[u]` is node `u`'s vector over `M` types. Every node needs a
    /// vector of the same length.
    pub fn new(
        graph: &DiffusionGraph,
        preferences: &'a [Vec<f64>],
        weighting: NumericWeighting,
        f: Concave,
    ) -> Result<Self> {
        if preferences.len() != graph.node_count() {
            return Err(AditumError::config(format!(
                "{} preference vectors for {} nodes",
                preferences.len(),
                graph.node_count()
            )));
        }
        let width = preferences.first().map_or(0, Vec::len);
        if let Some(v) = preferences.iter().position(|row| row.len() != width) {
            return Err(AditumError::config(format!("preference vector of node {v} is missing or incomplete")));
        }
        if preferences.iter().flatten().any(|w| !(0.0..=1.0).contains(w)) {
            return Err(AditumError::config("preferences must lie in [0,1]"));
        }
        let scale = (0..graph.node_count() as NodeId)
            .map(|u| match weighting {
                NumericWeighting::Unit => 1.0,
                NumericWeighting::OutDegree => graph.out_degree(u) as f64,
            })
            .collect();
        Ok(NumericDiversity {
            preferences,
            scale,
            sums: vec![0.0; width],
            f,
            weighting,
            value: 0.0,
            committed: Committed::new(graph.node_count()),
        })
    }

    pub fn weighting(&self) -> NumericWeighting {
        self.weighting
    }
}

impl DiversityFunction for NumericDiversity<'_> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, v: NodeId) -> f64 {
        let g = self.scale[v as usize];
        clip(
            self.preferences[v as usize]
                .iter()
                .zip(&self.sums)
                .filter(|(&w, _)| w > 0.0)
                .map(|(&w, &s)| self.f.increment(s, w * g))
                .sum(),
        )
    }

    fn commit(&mut self, v: NodeId) -> Result<()> {
        self.committed.insert(v)?;
        let g = self.scale[v as usize];
        for (s, &w) in self.sums.iter_mut().zip(&self.preferences[v as usize]) {
            *s += w * g;
        }
        self.value = self.sums.iter().map(|&s| self.f.apply(s)).sum();
        Ok(())
    }

    fn reset(&mut self) {
        self.sums.iter_mut().for_each(|s| *s = 0.0);
        self.value = 0.0;
        self.committed.clear();
    }

    fn committed(&self) -> &[NodeId] {
        self.committed.order()
    }

    fn name(&self) -> &'static str {
        match self.weighting {
            NumericWeighting::Unit => "numeric-u",
            NumericWeighting::OutDegree => "numeric-w",
        }
    }

    fn max_value(&self, _k: usize) -> Option<f64> {
        None
    }
}
