// Selects seeds on a random graph with synthetic profiles, trading capital
// against attribute-wise diversity.

use aditum::diversity::AttributeWise;
use aditum::estimator::{estimate_theta, EstimationParams};
use aditum::graph::{random_graph, TargetMode, TargetSet};
use aditum::profiles::{synth_profiles, SynthDistribution};
use aditum::sampler::{generate_corpus, DiffusionModel};
use aditum::selector::{build_seed_set, SelectConfig};

fn run_example() -> aditum::Result<()> {
    let graph = random_graph(400, 4.0, 1)?.with_indegree_target_scores();
    let targets = TargetSet::select(&graph, TargetMode::TopPercent(25.0))?;
    let profiles = synth_profiles(graph.node_count(), &[6; 5], SynthDistribution::Exponential, 1)?;
    let model = DiffusionModel::IndependentCascade;

    let k = 8;
    let params = EstimationParams {
        epsilon: 0.3,
        ..EstimationParams::default()
    };
    let estimate = estimate_theta(&graph, &targets, &model, k, &params, 1)?;
    let corpus = generate_corpus(&graph, &targets, &model, estimate.theta, 1)?;
    println!("θ = {} RR-sets over {} targets", corpus.len(), targets.len());

    for alpha in [0.0, 0.5, 1.0] {
        let mut diversity = AttributeWise::new(&profiles, 1.0)?;
        let mut config = SelectConfig::new(k, alpha, targets.total_score());
        config.normalize = true;
        let result = build_seed_set(&corpus, &mut diversity, &config)?;
        println!(
            "α = {alpha:.1}: seeds {:?}, E[C] = {:.2}, diversity = {:.3} of {:.3}",
            result.seeds,
            result.expected_capital,
            result.diversity_value,
            result.diversity_max.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}

fn main() -> aditum::Result<()> {
    run_example()
}
