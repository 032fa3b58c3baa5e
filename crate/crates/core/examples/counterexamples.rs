// Pairwise-distance set functions that fail monotonicity or submodularity,
// evaluated exactly.

use aditum::diversity::negative::{f1, f2_hat_hat, f4};

fn run_example() -> aditum::Result<()> {
    // One attribute; adding a2 gains more on the larger set.
    let s = [Some("a1"), Some("a1"), Some("a2")];
    let t = [Some("a1"), Some("a1"), Some("a2"), Some("a1")];
    let sz = [s.as_slice(), &[Some("a2")]].concat();
    let tz = [t.as_slice(), &[Some("a2")]].concat();
    println!("f1: gain on S {}, gain on T {}", f1(&sz) - f1(&s), f1(&tz) - f1(&t));

    let u: &[Option<&str>] = &[Some("a1"), None, None];
    let v: &[Option<&str>] = &[Some("a2"), None, None];
    let x: &[Option<&str>] = &[Some("a3"), Some("b1"), Some("c1")];
    let z: &[Option<&str>] = &[Some("a4"), None, None];
    println!(
        "averaged Hamming: value drops from {} to {} when z joins T",
        f2_hat_hat(&[u, v, x]),
        f2_hat_hat(&[u, v, x, z])
    );

    let u: &[Option<&str>] = &[Some("a"), Some("b"), Some("c"), None, None];
    let v: &[Option<&str>] = &[Some("a"), Some("b"), None, Some("d"), None];
    let z: &[Option<&str>] = &[Some("a"), None, None, Some("d"), Some("e")];
    println!("set Jaccard: S {} -> {}, T {} -> {}", f4(&[u, v]), f4(&[u, v, z]), f4(&[u, v, v]), f4(&[u, v, v, z]));
    Ok(())
}

fn main() -> aditum::Result<()> {
    run_example()
}
