//! Random instance generators and from-scratch reference evaluations shared by the
//! integration tests. The reference evaluations do not use the library's
//! incremental state.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use aditum::diversity::{
    AttributeWise, ClassDiversity, Concave, DiversityFunction, EntropyDiversity, HammingBalls, HammingDiversity,
    NumericDiversity, NumericWeighting,
};
use aditum::graph::{DiffusionGraph, NodeId};
use aditum::profiles::{ClassMap, ProfileSet, Schema};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple digraph with up to `max_edges` edges and `b` in (0,1].
pub fn micro_graph(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> DiffusionGraph {
    let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
    for u in 0..n as NodeId {
        for v in 0..n as NodeId {
            if u != v {
                pairs.push((u, v));
            }
        }
    }
    pairs.shuffle(rng);
    let m = rng.random_range(0..=max_edges.min(pairs.len()));
    let edges: Vec<_> = pairs[..m]
        .iter()
        .map(|&(u, v)| (u, v, 1.0 - rng.random::<f64>() * 0.95))
        .collect();
    DiffusionGraph::from_dense(n, &edges).unwrap()
}

/// Same topology with `b(u,v) = 1/in-degree(v)`, admissible for linear threshold.
pub fn micro_graph_lt(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> DiffusionGraph {
    micro_graph(rng, n, max_edges).derive_weights_uniform()
}

/// Random target scores in (0,1].
pub fn with_random_scores(g: DiffusionGraph, rng: &mut ChaCha8Rng) -> DiffusionGraph {
    let scores = (0..g.node_count()).map(|_| 1.0 - rng.random::<f64>() * 0.99).collect();
    g.with_target_scores(scores).unwrap()
}

/// Random profiles over `domain_sizes`, each cell missing with probability `missing`.
pub fn random_profiles(rng: &mut ChaCha8Rng, n: usize, domain_sizes: &[usize], missing: f64) -> ProfileSet {
    let schema = Schema::numbered(domain_sizes).unwrap();
    let rows = (0..n)
        .map(|_| {
            domain_sizes
                .iter()
                .enumerate()
                .map(|(j, &d)| {
                    if rng.random::<f64>() < missing {
                        None
                    } else {
                        let label = (rng.random_range(0..d) + 1).to_string();
                        schema.value_id(j, &label)
                    }
                })
                .collect()
        })
        .collect();
    ProfileSet::from_rows(schema, rows).unwrap()
}

pub fn random_classes(rng: &mut ChaCha8Rng, n: usize, h: usize, unit: bool) -> ClassMap {
    let mut cm = ClassMap::from_assignment((0..n).map(|_| rng.random_range(0..h) as u32).collect());
    if !unit {
        cm.rewards = (0..n).map(|_| 0.25 + rng.random::<f64>() * 2.0).collect();
    }
    cm
}

pub fn random_preferences(rng: &mut ChaCha8Rng, n: usize, width: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..width).map(|_| if rng.random::<f64>() < 0.3 { 0.0 } else { rng.random() }).collect())
        .collect()
}

// ----- reference evaluations -----

/// `Σ_j ω_j Σ_{a ∈ dom(A_j)} Σ_{i=1}^{n_a} i^{−λ}`.
pub fn aw_reference(p: &ProfileSet, set: &[NodeId], lambda: f64) -> f64 {
    let schema = p.schema();
    let mut counts: HashMap<(usize, u32), usize> = HashMap::new();
    for &v in set {
        for (j, cell) in p.profile(v).iter().enumerate() {
            if let Some(a) = cell {
                *counts.entry((j, *a)).or_default() += 1;
            }
        }
    }
    counts
        .iter()
        .map(|(&(j, _), &n)| schema.weight(j) * (1..=n).map(|i| (i as f64).powf(-lambda)).sum::<f64>())
        .sum()
}

/// Nodes reachable from `v` by a directed path of length ≥ 1, `v` excluded.
pub fn reachable_excluding(g: &DiffusionGraph, v: NodeId) -> HashSet<NodeId> {
    let mut seen = HashSet::new();
    let mut queue: VecDeque<NodeId> = g.out_neighbors(v).iter().copied().collect();
    while let Some(u) = queue.pop_front() {
        if u != v && seen.insert(u) {
            queue.extend(g.out_neighbors(u).iter().copied());
        }
    }
    seen
}

/// Mismatching attributes; a missing cell mismatches everything, itself included.
pub fn mismatches(p: &ProfileSet, u: NodeId, v: NodeId) -> usize {
    p.profile(u)
        .iter()
        .zip(p.profile(v))
        .filter(|(a, b)| a.is_none() || b.is_none() || a != b)
        .count()
}

/// `|∪_{v∈S} {u ∈ IR(v) : dist(u,v) ≤ ξ}|`.
pub fn hamming_reference(g: &DiffusionGraph, p: &ProfileSet, set: &[NodeId], xi: usize) -> f64 {
    let mut covered = HashSet::new();
    for &v in set {
        for u in reachable_excluding(g, v) {
            if mismatches(p, u, v) <= xi {
                covered.insert(u);
            }
        }
    }
    covered.len() as f64
}

/// Joint entropy of the membership indicators of `set`'s profiles over the value
/// space, each value weighted by its relative frequency in all profiles.
pub fn entropy_reference(p: &ProfileSet, set: &[NodeId]) -> f64 {
    let mut freq: HashMap<u32, f64> = HashMap::new();
    let mut total = 0.0;
    for v in 0..p.node_count() as NodeId {
        for a in p.profile(v).iter().flatten() {
            *freq.entry(*a).or_default() += 1.0;
            total += 1.0;
        }
    }
    let members: Vec<HashSet<u32>> = set
        .iter()
        .map(|&v| p.profile(v).iter().flatten().copied().collect())
        .collect();
    let mut patterns: HashMap<Vec<bool>, f64> = HashMap::new();
    for (a, f) in &freq {
        let key: Vec<bool> = members.iter().map(|m| m.contains(a)).collect();
        *patterns.entry(key).or_default() += f / total;
    }
    patterns.values().filter(|&&q| q > 0.0).map(|&q| -q * q.log2()).sum()
}

/// `Σ_l f(Σ_{v ∈ C_l ∩ S} r_v)`.
pub fn class_reference(cm: &ClassMap, set: &[NodeId], f: Concave) -> f64 {
    let mut sums: HashMap<u32, f64> = HashMap::new();
    for &v in set {
        *sums.entry(cm.class_of[v as usize].unwrap()).or_default() += cm.rewards[v as usize];
    }
    sums.values().map(|&s| concave(f, s)).sum()
}

pub fn concave(f: Concave, x: f64) -> f64 {
    match f {
        Concave::Log2OnePlus => (1.0 + x).log2(),
        Concave::Sqrt => x.sqrt(),
    }
}

/// `Σ_m f(Σ_{u∈S} ω_um · g(u))`.
pub fn numeric_reference(g: &DiffusionGraph, prefs: &[Vec<f64>], set: &[NodeId], w: NumericWeighting) -> f64 {
    let width = prefs.first().map_or(0, Vec::len);
    (0..width)
        .map(|m| {
            let s: f64 = set
                .iter()
                .map(|&u| {
                    let gu = match w {
                        NumericWeighting::Unit => 1.0,
                        NumericWeighting::OutDegree => g.out_degree(u) as f64,
                    };
                    prefs[u as usize][m] * gu
                })
                .sum();
            (1.0 + s).log2()
        })
        .sum()
}

// ----- instances covering every diversity function -----

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    AttributeWise(f64),
    Hamming(usize),
    Entropy,
    Class,
    Numeric(NumericWeighting),
}

impl Kind {
    pub const SUITE: [Kind; 8] = [
        Kind::AttributeWise(1.0),
        Kind::Hamming(1),
        Kind::Hamming(3),
        Kind::Hamming(5),
        Kind::Entropy,
        Kind::Class,
        Kind::Numeric(NumericWeighting::Unit),
        Kind::Numeric(NumericWeighting::OutDegree),
    ];

    pub fn label(&self) -> String {
        match self {
            Kind::AttributeWise(l) => format!("aw(λ={l})"),
            Kind::Hamming(x) => format!("hamming(ξ={x})"),
            Kind::Entropy => "entropy".into(),
            Kind::Class => "class".into(),
            Kind::Numeric(NumericWeighting::Unit) => "numeric-u".into(),
            Kind::Numeric(NumericWeighting::OutDegree) => "numeric-w".into(),
        }
    }
}

/// Everything any diversity function needs, on one random graph.
pub struct Instance {
    pub graph: DiffusionGraph,
    pub profiles: ProfileSet,
    pub classes: ClassMap,
    pub prefs: Vec<Vec<f64>>,
}

impl Instance {
    pub fn random(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> Self {
        let graph = micro_graph(rng, n, max_edges);
        let m = rng.random_range(1..=6);
        let sizes: Vec<usize> = (0..m).map(|_| rng.random_range(1..=4)).collect();
        let profiles = random_profiles(rng, n, &sizes, 0.2);
        let h = rng.random_range(1..=n);
        let unit = rng.random::<bool>();
        let classes = random_classes(rng, n, h, unit);
        let width = rng.random_range(1..=3);
        let prefs = random_preferences(rng, n, width);
        Instance {
            graph,
            profiles,
            classes,
            prefs,
        }
    }

    pub fn function(&self, kind: Kind) -> Box<dyn DiversityFunction + '_> {
        match kind {
            Kind::AttributeWise(l) => Box::new(AttributeWise::new(&self.profiles, l).unwrap()),
            Kind::Hamming(x) => Box::new(HammingDiversity::new(HammingBalls::new(&self.graph, &self.profiles, x).unwrap())),
            Kind::Entropy => Box::new(EntropyDiversity::new(&self.profiles)),
            Kind::Class => Box::new(ClassDiversity::new(&self.classes, Concave::Log2OnePlus).unwrap()),
            Kind::Numeric(w) => Box::new(NumericDiversity::new(&self.graph, &self.prefs, w, Concave::Log2OnePlus).unwrap()),
        }
    }

    pub fn reference(&self, kind: Kind, set: &[NodeId]) -> f64 {
        match kind {
            Kind::AttributeWise(l) => aw_reference(&self.profiles, set, l),
            Kind::Hamming(x) => hamming_reference(&self.graph, &self.profiles, set, x),
            Kind::Entropy => entropy_reference(&self.profiles, set),
            Kind::Class => class_reference(&self.classes, set, Concave::Log2OnePlus),
            Kind::Numeric(w) => numeric_reference(&self.graph, &self.prefs, set, w),
        }
    }
}

/// Members of a bitmask, ascending.
pub fn members(mask: u32) -> Vec<NodeId> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// All size-`k` subsets of `0..n`.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<NodeId>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(members)
        .collect()
}
