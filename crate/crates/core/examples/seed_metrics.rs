// Seed entropy, overlap and the diversity curve for selections at several α.

use aditum::diversity::AttributeWise;
use aditum::graph::{random_graph, TargetMode, TargetSet};
use aditum::metrics::{diversity_curve, seed_entropy, seed_overlap, write_metrics_csv, MetricsRow};
use aditum::profiles::{synth_profiles, SynthDistribution};
use aditum::sampler::{generate_corpus, DiffusionModel};
use aditum::selector::{build_seed_set, SelectConfig};

fn run_example() -> aditum::Result<()> {
    let graph = random_graph(300, 4.0, 4)?.with_indegree_target_scores();
    let targets = TargetSet::select(&graph, TargetMode::Threshold(0.2))?;
    let profiles = synth_profiles(graph.node_count(), &[5; 4], SynthDistribution::Uniform, 4)?;
    let corpus = generate_corpus(&graph, &targets, &DiffusionModel::IndependentCascade, 20_000, 4)?;

    let mut results = Vec::new();
    for alpha in [0.0, 0.5, 1.0] {
        let mut div = AttributeWise::new(&profiles, 1.0)?;
        let mut config = SelectConfig::new(6, alpha, targets.total_score());
        config.normalize = true;
        results.push(build_seed_set(&corpus, &mut div, &config)?);
    }
    for r in &results {
        println!("α = {:.1}: seed entropy {:.3}", r.alpha, seed_entropy(&r.seeds, &profiles));
    }
    println!("overlap α=0 vs α=1: {:.2}", seed_overlap(&results[0].seeds, &results[2].seeds, 6)?);
    for row in diversity_curve(&results, &profiles, 1.0) {
        println!("k = {}, α = {:.1}: {:.3} of {:.3}", row.k, row.alpha, row.diversity, row.maximum);
    }
    let rows: Vec<MetricsRow> = results
        .iter()
        .map(|r| MetricsRow::from_result("random", "threshold:0.2", 4, r, Some(&profiles)))
        .collect();
    write_metrics_csv(std::io::stdout().lock(), &rows)
}

fn main() -> aditum::Result<()> {
    run_example()
}
