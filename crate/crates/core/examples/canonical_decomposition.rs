//! Nonsingular M, P, Q, S, T taking a quaternity to its canonical 0/1 form.

use quaternity::canon::{build_canonical_quaternity, decompose_quaternity, quaternity_invariants};
use quaternity::harness::{gen_quaternity, instance_rng, DimBounds};
use quaternity::matrix::Matrix;
use quaternity::scalar::Ring;

fn main() -> quaternity::error::Result<()> {
    let ring: Ring = std::env::args().nth(1).unwrap_or_else(|| "Q".into()).parse()?;
    let q = gen_quaternity(ring, DimBounds::up_to(3), &mut instance_rng(1, ring, "example", 0));
    println!("A =\n{}B =\n{}C =\n{}D =\n{}", q.a, q.b, q.c, q.d);

    let cert = decompose_quaternity(&q.a, &q.b, &q.c, &q.d)?;
    cert.verify(&q.a, &q.b, &q.c, &q.d)?;
    println!("M A P =\n{}", Matrix::product(&[&cert.m, &q.a, &cert.p])?);
    println!(
        "S_a =\n{}S_b =\n{}S_c =\n{}S_d =\n{}",
        cert.targets.s_a, cert.targets.s_b, cert.targets.s_c, cert.targets.s_d
    );

    // the targets depend only on the invariants
    let inv = quaternity_invariants(&q.a, &q.b, &q.c, &q.d)?;
    assert_eq!(build_canonical_quaternity(ring, &inv)?, cert.targets);
    println!("certificate verified over {ring}");
    Ok(())
}
