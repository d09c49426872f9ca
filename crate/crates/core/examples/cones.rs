//! Canonical cone descriptions, intersections and faces.

use gitfan::cone::Cone;

fn main() -> gitfan::error::Result<()> {
    let ints = |rows: &[[i64; 3]]| -> Vec<Vec<gitfan::arith::Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| x.into()).collect())
            .collect()
    };
    let a = Cone::from_generators(3, &ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]]))?;
    let b = Cone::from_inequalities(3, &ints(&[[1, -1, 0], [0, 0, 1]]), &[])?;
    println!("a = {a}");
    println!("b = {b}");

    let c = a.intersect(&b)?;
    println!("a ∩ b = {c}");
    println!("a ∩ b is a face of a: {}", a.has_face(&c));
    for facet in c.facets() {
        println!("  facet {facet}");
    }
    let p: Vec<String> = c
        .relative_interior_point()?
        .iter()
        .map(|x| x.to_string())
        .collect();
    println!("interior point of a ∩ b: ({})", p.join(", "));
    Ok(())
}
