// Evaluates every diversity function on the same small seed set.

use aditum::diversity::{
    AttributeWise, ClassDiversity, Concave, DiversityFunction, EntropyDiversity, HammingBalls, HammingDiversity,
    NumericDiversity, NumericWeighting,
};
use aditum::graph::DiffusionGraph;
use aditum::profiles::{ClassMap, ProfileSet, Schema};

fn run_example() -> aditum::Result<()> {
    // a -> b -> c -> d, a -> d
    let graph = DiffusionGraph::from_edges(&[("a", "b", 0.5), ("b", "c", 0.5), ("c", "d", 0.5), ("a", "d", 0.5)])?;
    let schema = Schema::new(vec![
        ("colour".into(), vec!["red".into(), "blue".into()]),
        ("size".into(), vec!["s".into(), "m".into(), "l".into()]),
    ])?;
    let profiles = ProfileSet::from_labels(
        schema,
        &[
            vec![Some("red"), Some("s")],
            vec![Some("blue"), Some("m")],
            vec![Some("red"), None],
            vec![Some("blue"), Some("l")],
        ],
    )?;
    let classes = ClassMap::from_assignment(vec![0, 1, 0, 1]);
    let preferences = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5], vec![0.0, 0.2]];

    let balls = HammingBalls::new(&graph, &profiles, 1)?;
    let mut functions: Vec<Box<dyn DiversityFunction + '_>> = vec![
        Box::new(AttributeWise::new(&profiles, 1.0)?),
        Box::new(HammingDiversity::new(balls)),
        Box::new(EntropyDiversity::new(&profiles)),
        Box::new(ClassDiversity::new(&classes, Concave::Log2OnePlus)?),
        Box::new(NumericDiversity::new(&graph, &preferences, NumericWeighting::OutDegree, Concave::Log2OnePlus)?),
    ];
    for f in &mut functions {
        let gain_b = f.gain(1);
        f.commit(0)?;
        let gain_b_after = f.gain(1);
        f.commit(1)?;
        println!(
            "{:>10}: div({{a,b}}) = {:.4}, gain of b {:.4} -> {:.4}",
            f.name(),
            f.value(),
            gain_b,
            gain_b_after
        );
    }
    Ok(())
}

fn main() -> aditum::Result<()> {
    run_example()
}
