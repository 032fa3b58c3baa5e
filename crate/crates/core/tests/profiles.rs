mod common;

use aditum::graph::NodeId;
use aditum::profiles::{quantile_discretize, synth_profiles, ProfileSet, SynthDistribution};
use proptest::prelude::*;

fn labels(p: &ProfileSet) -> Vec<Vec<Option<String>>> {
    (0..p.node_count() as NodeId)
        .map(|v| p.profile(v).iter().map(|c| c.map(|a| p.schema().value_label(a).to_string())).collect())
        .collect()
}

proptest! {
    #[test]
    fn quantile_bins_are_monotone(
        column in prop::collection::vec(prop::option::weighted(0.9, -100.0f64..100.0), 1..80),
        bins in 2usize..12,
    ) {
        prop_assume!(column.iter().any(Option::is_some));
        let matrix: Vec<Vec<Option<f64>>> = column.iter().map(|&x| vec![x]).collect();
        let p = quantile_discretize(&["x".to_string()], &matrix, bins).unwrap();
        let bin = |v: usize| p.value(v as NodeId, 0).map(|a| p.schema().value_label(a).parse::<usize>().unwrap());
        for i in 0..column.len() {
            prop_assert_eq!(column[i].is_some(), bin(i).is_some());
            for j in 0..column.len() {
                if let (Some(x), Some(y)) = (column[i], column[j]) {
                    let (bi, bj) = (bin(i).unwrap(), bin(j).unwrap());
                    prop_assert!((1..=bins).contains(&bi));
                    if x < y {
                        prop_assert!(bi <= bj);
                    }
                    if x == y {
                        prop_assert_eq!(bi, bj);
                    }
                }
            }
        }
    }

    #[test]
    fn profile_csv_reload_is_idempotent(seed in any::<u64>(), n in 1usize..40) {
        let mut r = common::rng(seed);
        let p = common::random_profiles(&mut r, n, &[3, 1, 4], 0.25);
        let mut text = Vec::new();
        p.write_csv(&mut text, None).unwrap();
        let back = ProfileSet::load_csv(text.as_slice(), p.schema().clone(), None).unwrap();
        prop_assert_eq!(&back, &p);
        let inferred = ProfileSet::load_csv_inferred(std::str::from_utf8(&text).unwrap(), None).unwrap();
        prop_assert_eq!(labels(&inferred), labels(&p));
        let mut again = Vec::new();
        back.write_csv(&mut again, None).unwrap();
        prop_assert_eq!(again, text);
    }

    #[test]
    fn synth_is_a_function_of_the_seed(seed in any::<u64>(), exp in any::<bool>()) {
        let dist = if exp { SynthDistribution::Exponential } else { SynthDistribution::Uniform };
        let a = synth_profiles(60, &[4, 6], dist, seed).unwrap();
        let b = synth_profiles(60, &[4, 6], dist, seed).unwrap();
        prop_assert_eq!(&a, &b);
        for v in 0..60 {
            prop_assert_eq!(a.profile_len(v), 2);
        }
    }
}

#[test]
fn exponential_synth_favours_low_values() {
    let p = synth_profiles(4000, &[10], SynthDistribution::Exponential, 1).unwrap();
    let first = (0..4000).filter(|&v| p.value(v, 0) == Some(0)).count() as f64 / 4000.0;
    // P(⌈Exp(1)⌉ = 1 | ≤ 10) = (1 − e⁻¹) / (1 − e⁻¹⁰)
    let want = (1.0 - (-1.0f64).exp()) / (1.0 - (-10.0f64).exp());
    assert!((first - want).abs() < 0.03, "{first} vs {want}");
}
