//! GIT-chamber of a single weight, computed by both chamber algorithms.

use gitfan::arith::Rat;
use gitfan::gitfan::GitProblem;
use gitfan::poly::{grassmannian_grading, pluecker_ideal};

fn main() -> gitfan::error::Result<()> {
    let problem = GitProblem::new(pluecker_ideal(5)?, grassmannian_grading(5)?, Vec::new(), 1)?;
    let q = problem.grading();
    // sum of all degree columns, shifted towards the first one
    let w: Vec<Rat> = (0..q.k())
        .map(|i| {
            let s: gitfan::arith::Int = q.columns().iter().map(|c| c[i].clone()).sum();
            Rat::from_integer(s + &q.column(0)[i])
        })
        .collect();

    let lambda = problem.chamber(&w)?;
    println!("chamber of {}:\n{lambda}", show(&w));
    assert_eq!(lambda, problem.chamber_v2(&w)?);
    println!(
        "{} a-face tests, {} cones intersected",
        problem.aface_tests(),
        problem.cones_intersected()
    );

    let mut outside = vec![Rat::from_integer(0.into()); q.k()];
    outside[0] = Rat::from_integer((-1).into());
    println!(
        "weight outside the support: {}",
        problem.chamber(&outside).unwrap_err()
    );
    Ok(())
}

fn show(w: &[Rat]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}
