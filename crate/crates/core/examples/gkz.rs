//! GKZ decomposition: the GIT-fan of the zero ideal.
//!
//! Usage: `cargo run --release --example gkz -- [n]` with n in 4..=6 (default 4).

use gitfan::gitfan::gkz;
use gitfan::poly::grassmannian_grading;

fn main() -> gitfan::error::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let grading = grassmannian_grading(n)?;
    let result = gkz(&grading, 0, 1)?;
    println!(
        "GKZ decomposition for G(2,{n}): {} maximal cones",
        result.fan.len()
    );
    for cone in result.fan.cones().iter().take(12) {
        println!("  {cone}");
    }
    Ok(())
}
