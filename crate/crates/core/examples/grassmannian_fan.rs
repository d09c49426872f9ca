//! GIT-fan of the affine cone over G(2,n) with its torus action.
//!
//! Usage: `cargo run --release --example grassmannian_fan -- [n] [jobs]`.

use std::time::Instant;

use gitfan::cone::Cone;
use gitfan::gitfan::{traverse, verify_fan, TraverseOptions};
use gitfan::poly::{grassmannian_grading, pluecker_ideal, pluecker_symmetries};

fn main() -> gitfan::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let jobs: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let ideal = pluecker_ideal(n)?;
    let grading = grassmannian_grading(n)?;
    let options = TraverseOptions {
        jobs,
        symmetries: pluecker_symmetries(n)?,
        ..Default::default()
    };
    let start = Instant::now();
    let result = traverse(&ideal, &grading, &options)?;
    println!(
        "G(2,{n}): {} maximal chambers in {:.2?}",
        result.fan.len(),
        start.elapsed()
    );
    println!("{:?}", result.stats);

    let support = Cone::from_generators(grading.k(), &grading.columns())?;
    println!("fan verified: {}", verify_fan(&result.fan, &support));
    Ok(())
}
