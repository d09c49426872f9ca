//! The a-faces of the Plücker ideal of G(2,n), reduced by the S_n symmetry.
//!
//! Usage: `cargo run --example afaces -- [n]` with n in 4..=6 (default 5).

use gitfan::afaces::enumerate_afaces;
use gitfan::poly::{pluecker_ideal, pluecker_symmetries};

fn main() -> gitfan::error::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let ideal = pluecker_ideal(n)?;
    let symmetries = pluecker_symmetries(n)?;
    let run = enumerate_afaces(&ideal, &symmetries)?;
    println!(
        "G(2,{n}): {} a-faces among {} faces, {} orbits, tests {:?}",
        run.faces.len(),
        1u64 << ideal.nvars(),
        run.orbits,
        run.tests
    );
    for face in run.faces.iter().filter(|f| f.len() <= 3) {
        println!("  {face}");
    }
    Ok(())
}
