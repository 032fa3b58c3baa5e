// Compares the RR-set capital estimate with Monte Carlo diffusion under both
// models.

use aditum::diversity::NoDiversity;
use aditum::estimator::corpus_capital;
use aditum::graph::{random_graph, TargetMode, TargetSet};
use aditum::sampler::{generate_corpus, DiffusionModel};
use aditum::selector::{build_seed_set, SelectConfig};
use aditum::simulator::simulate;

fn run_example() -> aditum::Result<()> {
    let graph = random_graph(500, 5.0, 2)?.with_indegree_target_scores();
    let targets = TargetSet::select(&graph, TargetMode::TopPercent(10.0))?;
    for model in [DiffusionModel::IndependentCascade, DiffusionModel::LinearThreshold] {
        let corpus = generate_corpus(&graph, &targets, &model, 50_000, 2)?;
        let mut none = NoDiversity::new(graph.node_count());
        let result = build_seed_set(&corpus, &mut none, &SelectConfig::new(10, 1.0, targets.total_score()))?;
        let ris = corpus_capital(&corpus, &result.seeds, targets.total_score())?;
        let mc = simulate(&graph, &targets, &model, &result.seeds, 5_000, 2)?;
        println!(
            "{model}: RIS {ris:.3}, Monte Carlo {:.3} ± {:.3}, spread {:.1}",
            mc.mean_capital, mc.capital_stderr, mc.mean_spread
        );
    }
    Ok(())
}

fn main() -> aditum::Result<()> {
    run_example()
}
