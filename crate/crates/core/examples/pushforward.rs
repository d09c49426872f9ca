//! Push-forward of a Plücker relation to a smaller torus.

use gitfan::afaces::{projection_matrix, pushforward};
use gitfan::poly::pluecker_ideal;

fn main() -> gitfan::error::Result<()> {
    let ideal = pluecker_ideal(5)?;
    for g in ideal.generators() {
        let p = projection_matrix(std::slice::from_ref(g))?;
        let h = pushforward(&p, g)?;
        println!("{g}  ->  {h}   (P is {}x{})", p.rows(), p.cols());
    }
    Ok(())
}
