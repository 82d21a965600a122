//! The block-size invariants of a quaternity (A, B, C, D) and the identities
//! tying them to block ranks.

use quaternity::canon::{duality_transport, quaternity_invariants, verify_consistency, Quaternity};
use quaternity::matrix::Matrix;
use quaternity::scalar::Ring;

fn main() -> quaternity::error::Result<()> {
    let r = Ring::PrimeField(3);
    let q = Quaternity::new(
        Matrix::from_i64(r, &[&[1, 0, 2], &[0, 1, 1], &[1, 1, 0]]),
        Matrix::from_i64(r, &[&[1], &[0], &[1]]),
        Matrix::from_i64(r, &[&[0, 1, 1], &[1, 1, 0]]),
        Matrix::from_i64(r, &[&[1, 2, 0]]),
    )?;
    let inv = quaternity_invariants(&q.a, &q.b, &q.c, &q.d)?;
    println!("dims (m p q s t) = {:?}", inv.dims);
    for (i, v) in inv.values().iter().enumerate().take(14) {
        print!("r{}={v} ", i + 1);
    }
    println!("r_theta={} r_pi={}", inv.r_theta, inv.r_pi);
    for (name, width) in inv.widths() {
        print!("{name}={width} ");
    }
    println!();

    let report = verify_consistency(&q.a, &q.b, &q.c, &q.d, &inv)?;
    for id in &report.identities {
        println!("{:<70} {} = {}", id.name, id.lhs, id.rhs);
    }
    assert!(report.passed);

    let dual = duality_transport(&q.a, &q.b, &q.c, &q.d)?;
    println!("transported dual: {}", serde_json::to_string(&dual).unwrap());
    Ok(())
}
