// Runs the degree-plus-diversity greedy baseline for several γ and compares the
// seed sets.

use aditum::baselines::{deg_d_greedy, gamma_for_alpha};
use aditum::diversity::NumericWeighting;
use aditum::graph::random_graph;
use aditum::metrics::seed_overlap;

fn run_example() -> aditum::Result<()> {
    let graph = random_graph(300, 4.0, 3)?;
    // three topics; node v leans towards topic v mod 3
    let preferences: Vec<Vec<f64>> = (0..graph.node_count())
        .map(|v| (0..3).map(|m| if v % 3 == m { 1.0 } else { 0.1 }).collect())
        .collect();
    let k = 10;
    let pure_degree = deg_d_greedy(&graph, &preferences, NumericWeighting::OutDegree, 0.0, k)?;
    for alpha in [1.0, 0.5, 0.0] {
        let gamma = gamma_for_alpha(alpha);
        let seeds = deg_d_greedy(&graph, &preferences, NumericWeighting::OutDegree, gamma, k)?;
        println!(
            "γ = {gamma:.1}: {seeds:?}, overlap with pure degree {:.1}",
            seed_overlap(&seeds, &pure_degree, k)?
        );
    }
    Ok(())
}

fn main() -> aditum::Result<()> {
    run_example()
}
