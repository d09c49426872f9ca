//! Gröbner bases and radical membership for the Plücker ideal of G(2,4).

use gitfan::groebner::{buchberger, radical_membership, MonomialOrder};
use gitfan::poly::{parse_polynomial, pluecker_ideal, Ideal};

fn main() -> gitfan::error::Result<()> {
    let ideal = pluecker_ideal(4)?;
    let gb = buchberger(ideal.generators(), MonomialOrder::DegRevLex);
    println!("reduced Gröbner basis:");
    for g in gb.polynomials() {
        println!("  {g}");
    }

    // the square of the relation generates a non-radical ideal
    let f = parse_polynomial("T3*T4 - T2*T5 + T1*T6", 6)?;
    let square = Ideal::new(6, vec![f.mul(&f)])?;
    let gb2 = buchberger(square.generators(), MonomialOrder::DegRevLex);
    for text in [
        "T1*T6",
        "T3*T4 - T2*T5 + T1*T6",
        "T1*T3*T4 - T1*T2*T5 + T1*T1*T6",
    ] {
        let g = parse_polynomial(text, 6)?;
        println!(
            "{text}: in <f> {}, in <f^2> {}, in rad <f^2> {}",
            gb.contains(&g),
            gb2.contains(&g),
            radical_membership(&g, square.generators())
        );
    }
    Ok(())
}
