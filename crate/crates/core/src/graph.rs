//! Directed diffusion graph with edge probabilities `b` and node target scores `t`.
//!
//! Nodes are addressed by dense ids `0..node_count`; external string labels are kept
//! for I/O. Edges keep their input order as edge ids, and both adjacency directions
//! are stored in compressed (CSR) form.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Exp1;

use crate::error::{AditumError, Result};
use crate::rng::{self, Domain};

pub type NodeId = u32;
pub type EdgeId = u32;

/// How edge probabilities are obtained at load time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Third column is the probability `b(u,v)` in (0,1].
    Explicit,
    /// `b(u,v) = 1 / in-degree(v)`; a third column, if present, is ignored.
    UniformIndegree,
    /// Third column is the interaction count `P_uv`; `b(u,v) = P_uv / Σ_w P_wv`.
    Interaction,
}

impl std::str::FromStr for WeightMode {
    type Err = AditumError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explicit" => Ok(WeightMode::Explicit),
            "uniform" | "uniform_indegree" | "uniform-indegree" => Ok(WeightMode::UniformIndegree),
            "interaction" => Ok(WeightMode::Interaction),
            other => Err(AditumError::config(format!("unknown weight mode `{other}`"))),
        }
    }
}

/// One parsed edge-list line.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub src: String,
    pub dst: String,
    pub weight: Option<f64>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
struct Csr {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    edges: Vec<EdgeId>,
}

impl Csr {
    fn build(node_count: usize, edges: &[(NodeId, NodeId)], outgoing: bool) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for &(u, v) in edges {
            let key = if outgoing { u } else { v };
            offsets[key as usize + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0; edges.len()];
        let mut ids = vec![0; edges.len()];
        for (id, &(u, v)) in edges.iter().enumerate() {
            let (key, other) = if outgoing { (u, v) } else { (v, u) };
            let slot = cursor[key as usize];
            neighbors[slot] = other;
            ids[slot] = id as EdgeId;
            cursor[key as usize] += 1;
        }
        Csr {
            offsets,
            neighbors,
            edges: ids,
        }
    }

    fn range(&self, v: NodeId) -> std::ops::Range<usize> {
        self.offsets[v as usize]..self.offsets[v as usize + 1]
    }
}

/// Directed graph `⟨V, E, b, t⟩`. Immutable once built; share freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionGraph {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<(NodeId, NodeId)>,
    probs: Vec<f64>,
    out: Csr,
    inc: Csr,
    target_scores: Vec<f64>,
}

impl DiffusionGraph {
    /// Builds a graph from labelled edges with explicit probabilities.
    ///
    /// Target scores default to 1.0 for every node.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S, f64)]) -> Result<Self> {
        let records: Vec<EdgeRecord> = edges
            .iter()
            .enumerate()
            .map(|(i, (u, v, w))| EdgeRecord {
                src: u.as_ref().to_string(),
                dst: v.as_ref().to_string(),
                weight: Some(*w),
                line: i + 1,
            })
            .collect();
        Self::from_records(records, WeightMode::Explicit)
    }

    /// Builds a graph over dense ids `0..node_count` (labels are the decimal ids).
    pub fn from_dense(node_count: usize, edges: &[(NodeId, NodeId, f64)]) -> Result<Self> {
        let labels: Vec<String> = (0..node_count).map(|i| i.to_string()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as NodeId))
            .collect();
        let mut pairs = Vec::with_capacity(edges.len());
        let mut probs = Vec::with_capacity(edges.len());
        for (i, &(u, v, b)) in edges.iter().enumerate() {
            if u as usize >= node_count || v as usize >= node_count {
                return Err(AditumError::format_at(i + 1, format!("edge ({u},{v}) references a node outside 0..{node_count}")));
            }
            pairs.push((u, v));
            probs.push(b);
        }
        Self::assemble(labels, index, pairs, probs, WeightMode::Explicit, None)
    }

    /// Builds a graph from parsed records, deriving `b` according to `mode`.
    pub fn from_records(records: Vec<EdgeRecord>, mode: WeightMode) -> Result<Self> {
        let mut labels = Vec::new();
        let mut index: HashMap<String, NodeId> = HashMap::new();
        let mut intern = |label: &str, labels: &mut Vec<String>| -> NodeId {
            if let Some(&id) = index.get(label) {
                return id;
            }
            let id = labels.len() as NodeId;
            labels.push(label.to_string());
            index.insert(label.to_string(), id);
            id
        };
        let mut pairs = Vec::with_capacity(records.len());
        let mut raw = Vec::with_capacity(records.len());
        let mut lines = Vec::with_capacity(records.len());
        for rec in &records {
            if rec.src == rec.dst {
                return Err(AditumError::format_at(rec.line, format!("self-loop on node `{}`", rec.src)));
            }
            let u = intern(&rec.src, &mut labels);
            let v = intern(&rec.dst, &mut labels);
            let w = match (mode, rec.weight) {
                (WeightMode::Explicit, None) => {
                    return Err(AditumError::format_at(rec.line, "explicit weight mode requires a third column"))
                }
                (WeightMode::Interaction, None) => {
                    return Err(AditumError::format_at(rec.line, "missing interaction count for edge"))
                }
                (_, Some(w)) => w,
                (WeightMode::UniformIndegree, None) => 1.0,
            };
            pairs.push((u, v));
            raw.push(w);
            lines.push(rec.line);
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as NodeId))
            .collect();
        Self::assemble(labels, index, pairs, raw, mode, Some(&lines))
    }

    fn assemble(
        labels: Vec<String>,
        index: HashMap<String, NodeId>,
        edges: Vec<(NodeId, NodeId)>,
        raw: Vec<f64>,
        mode: WeightMode,
        lines: Option<&[usize]>,
    ) -> Result<Self> {
        let line_of = |i: usize| lines.map(|l| l[i]).unwrap_or(i + 1);
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(AditumError::format_at(line_of(i), format!("self-loop on node {u}")));
            }
            if !seen.insert((u, v)) {
                return Err(AditumError::format_at(
                    line_of(i),
                    format!("duplicate edge ({}, {})", labels[u as usize], labels[v as usize]),
                ));
            }
        }
        let n = labels.len();
        let out = Csr::build(n, &edges, true);
        let inc = Csr::build(n, &edges, false);
        let mut graph = DiffusionGraph {
            labels,
            index,
            edges,
            probs: raw,
            out,
            inc,
            target_scores: vec![1.0; n],
        };
        match mode {
            WeightMode::Explicit => {
                for (i, &b) in graph.probs.iter().enumerate() {
                    if !(b > 0.0 && b <= 1.0) {
                        return Err(AditumError::format_at(line_of(i), format!("edge probability {b} outside (0,1]")));
                    }
                }
            }
            WeightMode::UniformIndegree => graph = graph.derive_weights_uniform(),
            WeightMode::Interaction => {
                for (i, &p) in graph.probs.iter().enumerate() {
                    if !(p > 0.0 && p.is_finite()) {
                        return Err(AditumError::format_at(line_of(i), format!("interaction count {p} must be positive")));
                    }
                }
                let counts = graph.probs.clone();
                graph = graph.normalize_incoming(&counts);
            }
        }
        Ok(graph)
    }

    /// Parses a whitespace-separated `src dst [weight]` edge list. Lines starting with
    /// `#` and blank lines are skipped.
    pub fn read_edge_records<R: BufRead>(reader: R) -> Result<Vec<EdgeRecord>> {
        let mut records = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let src = fields.next().unwrap();
            let dst = fields
                .next()
                .ok_or_else(|| AditumError::format_at(lineno, "edge line needs at least two fields"))?;
            let weight = match fields.next() {
                Some(w) => Some(
                    w.parse::<f64>()
                        .map_err(|_| AditumError::format_at(lineno, format!("unparsable weight `{w}`")))?,
                ),
                None => None,
            };
            if fields.next().is_some() {
                return Err(AditumError::format_at(lineno, "too many fields on edge line"));
            }
            records.push(EdgeRecord {
                src: src.to_string(),
                dst: dst.to_string(),
                weight,
                line: lineno,
            });
        }
        Ok(records)
    }

    /// Reads an edge list and builds the graph.
    pub fn load<R: BufRead>(reader: R, mode: WeightMode) -> Result<Self> {
        Self::from_records(Self::read_edge_records(reader)?, mode)
    }

    /// Sets `b(u,v) = 1/n_v` where `n_v` is the in-degree of `v`.
    pub fn derive_weights_uniform(mut self) -> Self {
        for v in 0..self.node_count() as NodeId {
            let range = self.inc.range(v);
            let deg = range.len() as f64;
            for slot in range {
                self.probs[self.inc.edges[slot] as usize] = 1.0 / deg;
            }
        }
        self
    }

    /// Sets `b(u,v) = P_uv / P_v` from per-edge interaction counts keyed by labels.
    pub fn derive_weights_interaction(self, counts: &HashMap<(String, String), f64>) -> Result<Self> {
        let mut per_edge = Vec::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            let key = (self.labels[u as usize].clone(), self.labels[v as usize].clone());
            match counts.get(&key) {
                Some(&p) if p > 0.0 && p.is_finite() => per_edge.push(p),
                Some(&p) => {
                    return Err(AditumError::format(format!("interaction count {p} for ({}, {}) must be positive", key.0, key.1)))
                }
                None => return Err(AditumError::format(format!("missing interaction count for edge ({}, {})", key.0, key.1))),
            }
        }
        Ok(self.normalize_incoming(&per_edge))
    }

    fn normalize_incoming(mut self, counts: &[f64]) -> Self {
        for v in 0..self.node_count() as NodeId {
            let range = self.inc.range(v);
            let total: f64 = range.clone().map(|s| counts[self.inc.edges[s] as usize]).sum();
            for slot in range {
                let e = self.inc.edges[slot] as usize;
                self.probs[e] = counts[e] / total;
            }
        }
        self
    }

    /// Replaces target scores; every score must lie in (0,1].
    pub fn with_target_scores(mut self, scores: Vec<f64>) -> Result<Self> {
        if scores.len() != self.node_count() {
            return Err(AditumError::usage(format!(
                "{} target scores for {} nodes",
                scores.len(),
                self.node_count()
            )));
        }
        if let Some((v, t)) = scores.iter().enumerate().find(|(_, &t)| !(t > 0.0 && t <= 1.0)) {
            return Err(AditumError::format(format!("target score {t} of node `{}` outside (0,1]", self.labels[v])));
        }
        self.target_scores = scores;
        Ok(self)
    }

    /// Reads `node t` lines. Every graph node must be listed exactly once.
    pub fn load_target_scores<R: BufRead>(self, reader: R) -> Result<Self> {
        let mut scores = vec![f64::NAN; self.node_count()];
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let label = fields.next().unwrap();
            let t: f64 = fields
                .next()
                .ok_or_else(|| AditumError::format_at(lineno, "node weight line needs `node t`"))?
                .parse()
                .map_err(|_| AditumError::format_at(lineno, "unparsable target score"))?;
            let v = self
                .node_id(label)
                .ok_or_else(|| AditumError::format_at(lineno, format!("unknown node `{label}`")))?;
            if !scores[v as usize].is_nan() {
                return Err(AditumError::format_at(lineno, format!("duplicate score for node `{label}`")));
            }
            if !(t > 0.0 && t <= 1.0) {
                return Err(AditumError::format_at(lineno, format!("target score {t} outside (0,1]")));
            }
            scores[v as usize] = t;
        }
        if let Some(v) = scores.iter().position(|t| t.is_nan()) {
            return Err(AditumError::format(format!("no target score for node `{}`", self.labels[v])));
        }
        self.with_target_scores(scores)
    }

    /// Target scores from in-degree, min-max scaled into (0,1] as `(d - min + 1) / (max - min + 1)`.
    pub fn with_indegree_target_scores(self) -> Self {
        let degs: Vec<usize> = (0..self.node_count() as NodeId).map(|v| self.in_degree(v)).collect();
        let min = degs.iter().copied().min().unwrap_or(0);
        let max = degs.iter().copied().max().unwrap_or(0);
        let span = (max - min + 1) as f64;
        let scores = degs.iter().map(|&d| (d - min + 1) as f64 / span).collect();
        self.with_target_scores(scores).expect("scaled in-degree scores lie in (0,1]")
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn target_score(&self, v: NodeId) -> f64 {
        self.target_scores[v as usize]
    }

    pub fn target_scores(&self) -> &[f64] {
        &self.target_scores
    }

    /// Edge endpoints by edge id (input order).
    pub fn edge(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e as usize]
    }

    pub fn edge_prob(&self, e: EdgeId) -> f64 {
        self.probs[e as usize]
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out.range(v).len()
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.inc.range(v).len()
    }

    /// `(target, edge id)` pairs for edges leaving `v`.
    pub fn out_edges(&self, v: NodeId) -> impl ExactSizeIterator<Item = (NodeId, EdgeId)> + '_ {
        self.out.range(v).map(move |s| (self.out.neighbors[s], self.out.edges[s]))
    }

    /// `(source, edge id)` pairs for edges entering `v`.
    pub fn in_edges(&self, v: NodeId) -> impl ExactSizeIterator<Item = (NodeId, EdgeId)> + '_ {
        self.inc.range(v).map(move |s| (self.inc.neighbors[s], self.inc.edges[s]))
    }

    pub fn out_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.out.neighbors[self.out.range(v)]
    }

    pub fn in_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.inc.neighbors[self.inc.range(v)]
    }

    /// Σ_u b(u,v) over incoming edges of `v`.
    pub fn incoming_mass(&self, v: NodeId) -> f64 {
        self.in_edges(v).map(|(_, e)| self.edge_prob(e)).sum()
    }

    /// Nodes reachable from `v` along directed edges, excluding `v` itself.
    pub fn forward_reachable(&self, v: NodeId) -> Vec<NodeId> {
        let mut seen = vec![false; self.node_count()];
        seen[v as usize] = true;
        let mut stack = vec![v];
        let mut out = Vec::new();
        while let Some(u) = stack.pop() {
            for &w in self.out_neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    out.push(w);
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Writes the graph as an explicit-weight edge list in edge-id order.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            writeln!(w, "{} {} {}", self.labels[u as usize], self.labels[v as usize], self.probs[e])?;
        }
        Ok(())
    }

    /// Writes `node t` lines in dense-id order.
    pub fn write_target_scores<W: Write>(&self, mut w: W) -> Result<()> {
        for (label, t) in self.labels.iter().zip(&self.target_scores) {
            writeln!(w, "{label} {t}")?;
        }
        Ok(())
    }
}

/// How the target set is chosen from the target scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetMode {
    /// All nodes with `t(v) >= τ`.
    Threshold(f64),
    /// The `⌈q·|V|/100⌉` highest-scoring nodes, ties by ascending id.
    TopPercent(f64),
}

impl std::str::FromStr for TargetMode {
    type Err = AditumError;

    /// Accepts `threshold:0.5`, `top:25` or `top:25%`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| AditumError::config(format!("target mode `{s}` must be `threshold:<τ>` or `top:<q>`")))?;
        let value: f64 = value
            .trim_end_matches('%')
            .parse()
            .map_err(|_| AditumError::config(format!("bad target mode value in `{s}`")))?;
        match kind {
            "threshold" => Ok(TargetMode::Threshold(value)),
            "top" => Ok(TargetMode::TopPercent(value)),
            other => Err(AditumError::config(format!("unknown target mode `{other}`"))),
        }
    }
}

impl std::fmt::Display for TargetMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TargetMode::Threshold(t) => write!(f, "threshold:{t}"),
            TargetMode::TopPercent(q) => write!(f, "top:{q}"),
        }
    }
}

/// Nodes whose activation earns capital, with `T_TS = Σ t(v)` over members.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSet {
    members: Vec<NodeId>,
    mask: Vec<bool>,
    total_score: f64,
}

impl TargetSet {
    /// Target set from an explicit member list (deduplicated, sorted).
    pub fn from_members(graph: &DiffusionGraph, members: impl IntoIterator<Item = NodeId>) -> Result<Self> {
        let mut mask = vec![false; graph.node_count()];
        for v in members {
            if v as usize >= mask.len() {
                return Err(AditumError::usage(format!("target node {v} out of range")));
            }
            mask[v as usize] = true;
        }
        let members: Vec<NodeId> = (0..mask.len() as NodeId).filter(|&v| mask[v as usize]).collect();
        if members.is_empty() {
            return Err(AditumError::config("empty target set: capital is identically zero"));
        }
        let total_score = members.iter().map(|&v| graph.target_score(v)).sum();
        Ok(TargetSet {
            members,
            mask,
            total_score,
        })
    }

    pub fn select(graph: &DiffusionGraph, mode: TargetMode) -> Result<Self> {
        let n = graph.node_count();
        match mode {
            TargetMode::Threshold(tau) => {
                if !(0.0..=1.0).contains(&tau) {
                    return Err(AditumError::config(format!("target threshold {tau} outside [0,1]")));
                }
                Self::from_members(graph, (0..n as NodeId).filter(|&v| graph.target_score(v) >= tau))
            }
            TargetMode::TopPercent(q) => {
                if !(q > 0.0 && q <= 100.0) {
                    return Err(AditumError::config(format!("top percentage {q} outside (0,100]")));
                }
                let count = ((q * n as f64 / 100.0) - 1e-9).ceil().max(0.0) as usize;
                let mut order: Vec<NodeId> = (0..n as NodeId).collect();
                order.sort_by(|&a, &b| {
                    graph
                        .target_score(b)
                        .total_cmp(&graph.target_score(a))
                        .then(a.cmp(&b))
                });
                order.truncate(count.min(n));
                Self::from_members(graph, order)
            }
        }
    }

    /// Sorted member ids.
    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.mask.get(v as usize).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn total_score(&self) -> f64 {
        self.total_score
    }
}

/// Seeded random digraph over dense ids with uniform in-degree weights.
///
/// Node `u` gets `max(1, ⌈Exp(1)·mean_out_degree⌉)` out-edges (capped at `n−1`);
/// heads are drawn without repetition with probability `∝ (v+1)^{−0.8}`, which
/// gives a skewed in-degree distribution. Deterministic given `seed`.
pub fn random_graph(node_count: usize, mean_out_degree: f64, seed: u64) -> Result<DiffusionGraph> {
    if node_count < 2 {
        return Err(AditumError::config("random graphs need at least 2 nodes"));
    }
    if !(mean_out_degree > 0.0) {
        return Err(AditumError::config("mean out-degree must be positive"));
    }
    let weights: Vec<f64> = (0..node_count).map(|v| ((v + 1) as f64).powf(-0.8)).collect();
    let heads = WeightedIndex::new(&weights).map_err(|e| AditumError::config(e.to_string()))?;
    let mut edges = Vec::new();
    for u in 0..node_count as NodeId {
        let mut rng = rng::stream(seed, Domain::Graph, 0, u64::from(u));
        let e: f64 = rng.sample(Exp1);
        let degree = ((e * mean_out_degree).ceil() as usize).clamp(1, node_count - 1);
        let mut chosen: Vec<NodeId> = Vec::with_capacity(degree);
        while chosen.len() < degree {
            let v = heads.sample(&mut rng) as NodeId;
            if v != u && !chosen.contains(&v) {
                chosen.push(v);
            }
        }
        edges.extend(chosen.into_iter().map(|v| (u, v, 1.0)));
    }
    Ok(DiffusionGraph::from_dense(node_count, &edges)?.derive_weights_uniform())
}
