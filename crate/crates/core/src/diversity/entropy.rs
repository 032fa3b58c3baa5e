use std::collections::HashMap;

use super::{clip, Committed, DiversityFunction};
use crate::error::Result;
use crate::graph::NodeId;
use crate::profiles::{ProfileSet, ValueId};

/// `−x log₂ x` with `0 log 0 = 0`.
#[inline]
fn plogp(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Entropy of splitting mass `total` into `part` and `total − part`, in bits.
#[inline]
fn split_entropy(part: f64, total: f64) -> f64 {
    if total <= 0.0 || part <= 0.0 || part >= total {
        return 0.0;
    }
    let p = part / total;
    total * (plogp(p) + plogp(1.0 - p))
}

/// Joint entropy of the binary membership variables of the committed profiles.
///
/// The sample space is the value set `dom` with `p(a)` the relative frequency of `a`
/// over all profiles. Committed nodes induce a partition of `dom` by membership
/// pattern; `div(S)` is the Shannon entropy of that partition. Adding `v` splits
/// each group into the part inside `𝒜[v]` and the rest, so the gain (the
/// conditional entropy of the new variable) is a mass-weighted sum of binary
/// entropies over the groups `v` touches.
#[derive(Debug, Clone)]
pub struct EntropyDiversity<'a> {
    profiles: &'a ProfileSet,
    prior: Vec<f64>,
    group_of: Vec<u32>,
    group_mass: Vec<f64>,
    group_size: Vec<u32>,
    value: f64,
    committed: Committed,
}

impl<'a> EntropyDiversity<'a> {
    pub fn new(profiles: &'a ProfileSet) -> Self {
        let counts = profiles.global_counts();
        let total: f64 = counts.iter().map(|&c| f64::from(c)).sum();
        let prior: Vec<f64> = counts
            .iter()
            .map(|&c| if total > 0.0 { f64::from(c) / total } else { 0.0 })
            .collect();
        let mut state = EntropyDiversity {
            profiles,
            group_of: Vec::new(),
            group_mass: Vec::new(),
            group_size: Vec::new(),
            prior,
            value: 0.0,
            committed: Committed::new(profiles.node_count()),
        };
        state.reset();
        state
    }

    /// `p(a)`.
    pub fn prior(&self, a: ValueId) -> f64 {
        self.prior[a as usize]
    }

    /// Masses of the current membership-pattern groups.
    pub fn group_masses(&self) -> &[f64] {
        &self.group_mass
    }

    /// In-mass of `v`'s values per touched group, in first-touch order.
    fn touched(&self, v: NodeId) -> Vec<(u32, f64, u32)> {
        let mut out: Vec<(u32, f64, u32)> = Vec::new();
        let mut slot: HashMap<u32, usize> = HashMap::new();
        for a in self.profiles.values(v) {
            let g = self.group_of[a as usize];
            let i = *slot.entry(g).or_insert_with(|| {
                out.push((g, 0.0, 0));
                out.len() - 1
            });
            out[i].1 += self.prior[a as usize];
            out[i].2 += 1;
        }
        out
    }
}

impl DiversityFunction for EntropyDiversity<'_> {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, v: NodeId) -> f64 {
        clip(
            self.touched(v)
                .into_iter()
                .map(|(g, inside, _)| split_entropy(inside, self.group_mass[g as usize]))
                .sum(),
        )
    }

    fn commit(&mut self, v: NodeId) -> Result<()> {
        self.committed.insert(v)?;
        let mut fresh: HashMap<u32, u32> = HashMap::new();
        for (g, inside, size) in self.touched(v) {
            if size == self.group_size[g as usize] {
                continue;
            }
            let ng = self.group_mass.len() as u32;
            self.group_mass.push(inside);
            self.group_size.push(size);
            self.group_mass[g as usize] -= inside;
            self.group_size[g as usize] -= size;
            fresh.insert(g, ng);
        }
        let values: Vec<ValueId> = self.profiles.values(v).collect();
        for a in values {
            if let Some(&ng) = fresh.get(&self.group_of[a as usize]) {
                self.group_of[a as usize] = ng;
            }
        }
        // masses left by subtraction can carry rounding error; rebuild them exactly
        self.group_mass.iter_mut().for_each(|m| *m = 0.0);
        for (a, &g) in self.group_of.iter().enumerate() {
            self.group_mass[g as usize] += self.prior[a];
        }
        self.value = self.group_mass.iter().map(|&m| plogp(m)).sum();
        Ok(())
    }

    fn reset(&mut self) {
        let n = self.prior.len();
        self.group_of = vec![0; n];
        self.group_mass = vec![self.prior.iter().sum()];
        self.group_size = vec![n as u32];
        self.value = 0.0;
        self.committed.clear();
    }

    fn committed(&self) -> &[NodeId] {
        self.committed.order()
    }

    fn name(&self) -> &'static str {
        "entropy"
    }

    fn max_value(&self, _k: usize) -> Option<f64> {
        let support = self.prior.iter().filter(|&&p| p > 0.0).count();
        Some((support.max(1) as f64).log2())
    }
}
