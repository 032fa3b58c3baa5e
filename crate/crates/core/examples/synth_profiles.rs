// Synthetic profiles and quantile binning of numeric attributes.

use aditum::profiles::{quantile_discretize, synth_profiles, SynthDistribution};

fn run_example() -> aditum::Result<()> {
    for dist in [SynthDistribution::Uniform, SynthDistribution::Exponential] {
        let p = synth_profiles(2000, &[5], dist, 5)?;
        let mut counts = [0usize; 5];
        for v in 0..2000 {
            counts[p.value(v, 0).unwrap() as usize] += 1;
        }
        println!("{dist:>11}: value counts {counts:?}");
    }

    let ages = [23.0, 35.0, 35.0, 41.0, 58.0, 62.0, 19.0, 30.0];
    let matrix: Vec<Vec<Option<f64>>> = ages.iter().map(|&a| vec![Some(a)]).collect();
    let binned = quantile_discretize(&["age".to_string()], &matrix, 4)?;
    for (v, age) in ages.iter().enumerate() {
        let bin = binned.value(v as u32, 0).map(|a| binned.schema().value_label(a));
        println!("age {age} -> bin {}", bin.unwrap_or("-"));
    }
    let mut csv = Vec::new();
    binned.write_csv(&mut csv, None)?;
    print!("{}", String::from_utf8_lossy(&csv));
    Ok(())
}

fn main() -> aditum::Result<()> {
    run_example()
}
