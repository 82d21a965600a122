//! Rank, reduced echelon form with its transform, inverses and linear solves.

use quaternity::matrix::Matrix;
use quaternity::scalar::Ring;

fn main() -> quaternity::error::Result<()> {
    let q = Ring::Rationals;
    let m = Matrix::from_i64(q, &[&[2, 4, 1], &[1, 2, 0], &[3, 6, 1]]);
    println!("M =\n{m}rank {}", m.rank());

    let red = m.row_reduce_tracked();
    println!("reduced =\n{}pivots {:?}", red.reduced, red.pivot_columns);
    assert_eq!(red.transform.matmul(&m)?, red.reduced);

    let a = Matrix::from_i64(Ring::PrimeField(5), &[&[1, 2], &[3, 4]]);
    let inv = a.invert()?;
    println!("over GF(5), A^-1 =\n{inv}");
    assert!(a.matmul(&inv)?.is_identity());

    let rhs = Matrix::from_i64(q, &[&[3], &[1], &[4]]);
    match m.solve_right(&rhs)? {
        Some(x) => println!("M x = b solved by x =\n{x}"),
        None => println!("M x = b has no solution"),
    }
    println!("null space basis =\n{}", m.right_null_space());
    println!("{}", serde_json::to_string(&m.to_json()).unwrap());
    Ok(())
}
