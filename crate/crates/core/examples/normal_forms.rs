//! Hermite and Smith normal forms of a small integer matrix.

use gitfan::arith::{hnf, snf, IntMatrix};

fn main() -> gitfan::error::Result<()> {
    let m = IntMatrix::from_i64_rows(
        4,
        &[vec![2, 4, 4, -6], vec![-6, 6, 12, 10], vec![10, -4, -16, 0]],
    )?;

    let (h, u) = hnf(&m);
    println!("HNF:\n{h}\nU (U*M = H):\n{u}");

    let (d, u, v) = snf(&m);
    println!("SNF:\n{d}\nU:\n{u}\nV:\n{v}");
    assert_eq!(u.mul(&m)?.mul(&v)?, d);
    Ok(())
}
