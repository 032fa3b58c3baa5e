//! Random reverse reachable (RR) sets with target-weighted roots.
//!
//! A root `r` is drawn from the target set with probability `t(r) / T_TS`, then the
//! set collects every node that reaches `r` through live edges of one sampled
//! instance of the triggering model. Sets are generated in parallel; each set draws
//! from its own counter-based stream so the corpus depends only on the master seed.

use std::io::Write;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{AditumError, Result};
use crate::graph::{DiffusionGraph, NodeId, TargetSet};
use crate::rng::{self, Domain};

/// Trigger distribution of a triggering model: which in-neighbors of `v` are live.
pub trait TriggerModel: Sync {
    /// Appends the sampled trigger set of `v` (its live in-neighbors) to `out`.
    fn sample_trigger<R: Rng + ?Sized>(&self, graph: &DiffusionGraph, v: NodeId, rng: &mut R, out: &mut Vec<NodeId>);

    /// Checks that the graph's weights are admissible for this model.
    fn validate(&self, _graph: &DiffusionGraph) -> Result<()> {
        Ok(())
    }
}

/// Independent cascade and linear threshold, in live-edge form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffusionModel {
    /// Each edge `(u,v)` is live independently with probability `b(u,v)`.
    IndependentCascade,
    /// Each node keeps at most one live in-edge, `(u,v)` with probability `b(u,v)`.
    LinearThreshold,
}

impl std::str::FromStr for DiffusionModel {
    type Err = AditumError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ic" => Ok(DiffusionModel::IndependentCascade),
            "lt" => Ok(DiffusionModel::LinearThreshold),
            other => Err(AditumError::config(format!("unknown diffusion model `{other}`"))),
        }
    }
}

impl std::fmt::Display for DiffusionModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DiffusionModel::IndependentCascade => "ic",
            DiffusionModel::LinearThreshold => "lt",
        })
    }
}

impl TriggerModel for DiffusionModel {
    fn sample_trigger<R: Rng + ?Sized>(&self, graph: &DiffusionGraph, v: NodeId, rng: &mut R, out: &mut Vec<NodeId>) {
        match self {
            DiffusionModel::IndependentCascade => {
                for (u, e) in graph.in_edges(v) {
                    let b = graph.edge_prob(e);
                    if b >= 1.0 || rng.random::<f64>() < b {
                        out.push(u);
                    }
                }
            }
            DiffusionModel::LinearThreshold => {
                if graph.in_degree(v) == 0 {
                    return;
                }
                let mut x: f64 = rng.random();
                for (u, e) in graph.in_edges(v) {
                    x -= graph.edge_prob(e);
                    if x < 0.0 {
                        out.push(u);
                        return;
                    }
                }
            }
        }
    }

    fn validate(&self, graph: &DiffusionGraph) -> Result<()> {
        if *self == DiffusionModel::LinearThreshold {
            for v in 0..graph.node_count() as NodeId {
                let mass = graph.incoming_mass(v);
                if mass > 1.0 + 1e-9 {
                    return Err(AditumError::config(format!(
                        "linear threshold needs Σ_u b(u,v) ≤ 1, node `{}` has {mass}",
                        graph.label(v)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Draws roots from the target set with probability proportional to `t`.
#[derive(Debug, Clone)]
pub struct RootSampler {
    members: Vec<NodeId>,
    dist: WeightedIndex<f64>,
}

impl RootSampler {
    pub fn new(graph: &DiffusionGraph, targets: &TargetSet) -> Result<Self> {
        if targets.is_empty() {
            return Err(AditumError::config("cannot sample roots from an empty target set"));
        }
        let members = targets.members().to_vec();
        let dist = WeightedIndex::new(members.iter().map(|&v| graph.target_score(v)))
            .map_err(|e| AditumError::config(format!("invalid target scores: {e}")))?;
        Ok(RootSampler { members, dist })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> NodeId {
        self.members[self.dist.sample(rng)]
    }
}

/// Reusable traversal buffers.
#[derive(Debug, Default)]
pub struct Scratch {
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<NodeId>,
    trigger: Vec<NodeId>,
}

impl Scratch {
    pub fn new(node_count: usize) -> Self {
        Scratch {
            stamp: vec![0; node_count],
            epoch: 0,
            queue: Vec::new(),
            trigger: Vec::new(),
        }
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }
}

/// Nodes that reach `root` through live edges of one sampled instance, root first.
///
/// Each node's trigger set is sampled once, when the node is first reached, so every
/// in-edge is examined at most once.
pub fn reverse_reachable<M: TriggerModel, R: Rng + ?Sized>(
    graph: &DiffusionGraph,
    model: &M,
    root: NodeId,
    rng: &mut R,
    scratch: &mut Scratch,
) -> Vec<NodeId> {
    scratch.next_epoch();
    let epoch = scratch.epoch;
    scratch.queue.clear();
    scratch.queue.push(root);
    scratch.stamp[root as usize] = epoch;
    let mut head = 0;
    while head < scratch.queue.len() {
        let v = scratch.queue[head];
        head += 1;
        scratch.trigger.clear();
        model.sample_trigger(graph, v, rng, &mut scratch.trigger);
        for &u in &scratch.trigger {
            if scratch.stamp[u as usize] != epoch {
                scratch.stamp[u as usize] = epoch;
                scratch.queue.push(u);
            }
        }
    }
    scratch.queue.clone()
}

/// One RR-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RRSet {
    pub id: u32,
    pub root: NodeId,
    pub members: Vec<NodeId>,
}

/// Samples a single RR-set with the given id.
pub fn generate_rr_set<M: TriggerModel, R: Rng + ?Sized>(
    graph: &DiffusionGraph,
    roots: &RootSampler,
    model: &M,
    id: u32,
    rng: &mut R,
    scratch: &mut Scratch,
) -> RRSet {
    let root = roots.sample(rng);
    let members = reverse_reachable(graph, model, root, rng, scratch);
    RRSet { id, root, members }
}

/// A collection of RR-sets with the inverted index `v ↦ {sets containing v}`.
///
/// Members are stored once in a flat array; ids are positions `0..θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RRCorpus {
    node_count: usize,
    offsets: Vec<usize>,
    members: Vec<NodeId>,
    roots: Vec<NodeId>,
    root_scores: Vec<f64>,
    index_offsets: Vec<usize>,
    index: Vec<u32>,
}

impl RRCorpus {
    /// Builds a corpus from explicit sets; `root_scores[i]` is `t(root)` of set `i`.
    /// Set ids are reassigned to positions.
    pub fn from_sets(node_count: usize, sets: Vec<RRSet>, root_scores: Vec<f64>) -> Result<Self> {
        if sets.len() != root_scores.len() {
            return Err(AditumError::usage("one root score per set required"));
        }
        let mut offsets = Vec::with_capacity(sets.len() + 1);
        offsets.push(0);
        let mut members = Vec::new();
        let mut roots = Vec::with_capacity(sets.len());
        for set in sets {
            if set.members.iter().any(|&v| v as usize >= node_count) {
                return Err(AditumError::usage(format!("set {} references a node outside the graph", set.id)));
            }
            if !set.members.contains(&set.root) {
                return Err(AditumError::usage(format!("set {} does not contain its root", set.id)));
            }
            roots.push(set.root);
            members.extend_from_slice(&set.members);
            offsets.push(members.len());
        }
        Ok(Self::index(node_count, offsets, members, roots, root_scores))
    }

    fn index(
        node_count: usize,
        offsets: Vec<usize>,
        members: Vec<NodeId>,
        roots: Vec<NodeId>,
        root_scores: Vec<f64>,
    ) -> Self {
        let mut index_offsets = vec![0usize; node_count + 1];
        for &v in &members {
            index_offsets[v as usize + 1] += 1;
        }
        for i in 0..node_count {
            index_offsets[i + 1] += index_offsets[i];
        }
        let mut cursor = index_offsets.clone();
        let mut index = vec![0u32; members.len()];
        for set in 0..roots.len() {
            for &v in &members[offsets[set]..offsets[set + 1]] {
                index[cursor[v as usize]] = set as u32;
                cursor[v as usize] += 1;
            }
        }
        RRCorpus {
            node_count,
            offsets,
            members,
            roots,
            root_scores,
            index_offsets,
            index,
        }
    }

    /// `θ`.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn members(&self, set: u32) -> &[NodeId] {
        &self.members[self.offsets[set as usize]..self.offsets[set as usize + 1]]
    }

    pub fn root(&self, set: u32) -> NodeId {
        self.roots[set as usize]
    }

    /// `t(root)` of the set.
    pub fn root_score(&self, set: u32) -> f64 {
        self.root_scores[set as usize]
    }

    /// `ℛ(v)`: ids of the sets containing `v`, ascending.
    pub fn sets_containing(&self, v: NodeId) -> &[u32] {
        &self.index[self.index_offsets[v as usize]..self.index_offsets[v as usize + 1]]
    }

    /// `Σ |R|` over the corpus.
    pub fn total_members(&self) -> usize {
        self.members.len()
    }

    pub fn total_root_score(&self) -> f64 {
        self.root_scores.iter().sum()
    }

    /// Mask of sets hit by at least one node of `seeds`.
    pub fn covered_mask(&self, seeds: &[NodeId]) -> Vec<bool> {
        let mut covered = vec![false; self.len()];
        for &s in seeds {
            for &r in self.sets_containing(s) {
                covered[r as usize] = true;
            }
        }
        covered
    }

    /// Fraction of sets intersecting `seeds`.
    pub fn coverage_fraction(&self, seeds: &[NodeId]) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let hit = self.covered_mask(seeds).iter().filter(|&&c| c).count();
        hit as f64 / self.len() as f64
    }

    pub fn set(&self, set: u32) -> RRSet {
        RRSet {
            id: set,
            root: self.root(set),
            members: self.members(set).to_vec(),
        }
    }

    /// Debug dump, one `id root member...` line per set. Not a stable format.
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        for set in 0..self.len() as u32 {
            write!(w, "{} {}", set, self.root(set))?;
            for &v in self.members(set) {
                write!(w, " {v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Generates `count` sets with ids `first..first+count` from stream family
/// `(seed, domain, sub)`.
pub(crate) fn generate_sets<M: TriggerModel>(
    graph: &DiffusionGraph,
    roots: &RootSampler,
    model: &M,
    count: usize,
    seed: u64,
    domain: Domain,
    sub: u64,
) -> Vec<RRSet> {
    (0..count as u32)
        .into_par_iter()
        .map_init(
            || Scratch::new(graph.node_count()),
            |scratch, id| {
                let mut rng = rng::stream(seed, domain, sub, u64::from(id));
                generate_rr_set(graph, roots, model, id, &mut rng, scratch)
            },
        )
        .collect()
}

pub(crate) fn corpus_from_generated(graph: &DiffusionGraph, sets: Vec<RRSet>) -> RRCorpus {
    let mut offsets = Vec::with_capacity(sets.len() + 1);
    offsets.push(0);
    let total: usize = sets.iter().map(|s| s.members.len()).sum();
    let mut members = Vec::with_capacity(total);
    let mut roots = Vec::with_capacity(sets.len());
    let mut scores = Vec::with_capacity(sets.len());
    for set in sets {
        roots.push(set.root);
        scores.push(graph.target_score(set.root));
        members.extend_from_slice(&set.members);
        offsets.push(members.len());
    }
    RRCorpus::index(graph.node_count(), offsets, members, roots, scores)
}

/// Generates a corpus of `theta` RR-sets. The result depends only on the inputs and
/// `master_seed`, not on the number of worker threads.
pub fn generate_corpus<M: TriggerModel>(
    graph: &DiffusionGraph,
    targets: &TargetSet,
    model: &M,
    theta: usize,
    master_seed: u64,
) -> Result<RRCorpus> {
    if theta == 0 {
        return Err(AditumError::usage("θ must be at least 1"));
    }
    if theta > u32::MAX as usize {
        return Err(AditumError::usage(format!("θ = {theta} exceeds the supported corpus size")));
    }
    model.validate(graph)?;
    let roots = RootSampler::new(graph, targets)?;
    let sets = generate_sets(graph, &roots, model, theta, master_seed, Domain::Corpus, 0);
    Ok(corpus_from_generated(graph, sets))
}
