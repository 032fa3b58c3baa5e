use super::{clip, Committed, DiversityFunction};
use crate::error::{AditumError, Result};
use crate::graph::NodeId;
use crate::profiles::ClassMap;

/// Non-decreasing concave transforms for accumulated rewards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Concave {
    /// `log₂(1 + x)`
    Log2OnePlus,
    /// `√x`
    Sqrt,
}

impl Concave {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Concave::Log2OnePlus => x.ln_1p() / std::f64::consts::LN_2,
            Concave::Sqrt => x.sqrt(),
        }
    }

    /// `f(base + delta) − f(base)`, in a cancellation-free form where one exists.
    pub fn increment(self, base: f64, delta: f64) -> f64 {
        match self {
            Concave::Log2OnePlus => (delta / (1.0 + base)).ln_1p() / std::f64::consts::LN_2,
            Concave::Sqrt => delta / ((base + delta).sqrt() + base.sqrt()),
        }
    }
}

/// Class-based diversity `Σ_l f(Σ_{v ∈ C_l ∩ S} r_v)`.
#[derive(Debug, Clone)]
pub struct ClassDiversity {
    class_of: Vec<u32>,
    rewards: Vec<f64>,
    sums: Vec<f64>,
    f: Concave,
    value: f64,
    committed: Committed,
}

impl ClassDiversity {
    /// Every node must carry a class; rewards must be positive.
    pub fn new(classes: &ClassMap, f: Concave) -> Result<Self> {
        let class_of = classes
            .class_of
            .iter()
            .enumerate()
            .map(|(v, c)| c.ok_or_else(|| AditumError::config(format!("node {v} has no class assignment"))))
            .collect::<Result<Vec<u32>>>()?;
        if let Some(r) = classes.rewards.iter().find(|r| !(**r > 0.0)) {
            return Err(AditumError::config(format!("selection reward {r} must be positive")));
        }
        let h = class_of.iter().copied().max().map_or(0, |c| c as usize + 1);
        Ok(ClassDiversity {
            committed: Committed::new(class_of.len()),
            class_of,
            rewards: classes.rewards.clone(),
            sums: vec![0.0; h],
            f,
            value: 0.0,
        })
    }

    /// Accumulated reward `Σ r` of committed nodes in class `c`.
    pub fn class_reward(&self, c: u32) -> f64 {
        self.sums[c as usize]
    }

    pub fn class_of(&self, v: NodeId) -> u32 {
        self.class_of[v as usize]
    }
}

impl DiversityFunction for ClassDiversity {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, v: NodeId) -> f64 {
        let c = self.class_of[v as usize] as usize;
        clip(self.f.increment(self.sums[c], self.rewards[v as usize]))
    }

    fn commit(&mut self, v: NodeId) -> Result<()> {
        self.committed.insert(v)?;
        let c = self.class_of[v as usize] as usize;
        self.sums[c] += self.rewards[v as usize];
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
        "class"
    }

    /// `k` holds for unit rewards under `log₂(1+x)`, reached when all seeds sit in
    /// distinct classes.
    fn max_value(&self, k: usize) -> Option<f64> {
        match self.f {
            Concave::Log2OnePlus => Some(k as f64),
            Concave::Sqrt => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_class_vs_distinct_classes() {
        let same = ClassMap::from_assignment(vec![0, 0, 0]);
        let mut d = ClassDiversity::new(&same, Concave::Log2OnePlus).unwrap();
        for v in 0..3 {
            d.commit(v).unwrap();
        }
        assert!((d.value() - 2.0).abs() < 1e-12);

        let distinct = ClassMap::from_assignment(vec![0, 1, 2]);
        let mut d = ClassDiversity::new(&distinct, Concave::Log2OnePlus).unwrap();
        for v in 0..3 {
            d.commit(v).unwrap();
        }
        assert!((d.value() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn gain_is_log_of_one_plus_ratio() {
        let mut cm = ClassMap::from_assignment(vec![0, 0, 1]);
        cm.rewards = vec![1.0, 2.0, 1.0];
        let mut d = ClassDiversity::new(&cm, Concave::Log2OnePlus).unwrap();
        assert!((d.gain(2) - 1.0).abs() < 1e-12);
        d.commit(0).unwrap();
        // R = 1 + 1, r = 2
        assert!((d.gain(1) - (1.0f64 + 2.0 / 2.0).log2()).abs() < 1e-12);
    }

    #[test]
    fn unassigned_node_is_config_error() {
        let cm = ClassMap {
            class_of: vec![Some(0), None],
            rewards: vec![1.0, 1.0],
            class_names: vec!["x".into()],
        };
        assert!(matches!(ClassDiversity::new(&cm, Concave::Log2OnePlus), Err(AditumError::Config(_))));
    }

    #[test]
    fn sqrt_increment_matches_difference() {
        for (b, d) in [(0.0, 1.0), (3.0, 2.0), (10.0, 0.5)] {
            let direct = Concave::Sqrt.apply(b + d) - Concave::Sqrt.apply(b);
            assert!((Concave::Sqrt.increment(b, d) - direct).abs() < 1e-12);
        }
    }
}
