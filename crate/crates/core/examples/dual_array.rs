//! The dual array (E, F, G, H): invariants, canonical form, decomposition.

use quaternity::canon::{build_canonical_dual, decompose_dual, dual_invariants, DualArray};
use quaternity::matrix::Matrix;
use quaternity::scalar::Ring;

fn main() -> quaternity::error::Result<()> {
    let r = Ring::Rationals;
    let d = DualArray::new(
        Matrix::from_i64(r, &[&[1, 2], &[2, 4], &[0, 1]]),
        Matrix::from_i64(r, &[&[1], &[2], &[0]]),
        Matrix::from_i64(r, &[&[0, 1], &[0, 0], &[1, 0]]),
        Matrix::from_i64(r, &[&[3, 6]]),
    )?;
    let inv = dual_invariants(&d.e, &d.f, &d.g, &d.h)?;
    println!("{}", serde_json::to_string(&inv).unwrap());

    let canon = build_canonical_dual(r, &inv)?;
    println!("S_e =\n{}S_g =\n{}", canon.s_e, canon.s_g);

    let cert = decompose_dual(&d.e, &d.f, &d.g, &d.h)?;
    cert.verify(&d.e, &d.f, &d.g, &d.h)?;
    println!("P1 E M1 =\n{}", Matrix::product(&[&cert.p1, &d.e, &cert.m1])?);
    Ok(())
}
