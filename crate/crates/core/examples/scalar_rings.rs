//! Arithmetic in the three supported rings.

use quaternity::scalar::{Element, Ring};

fn quaternion(w: i64, x: i64, y: i64, z: i64) -> Element {
    let q = Ring::Rationals;
    Ring::RationalQuaternions
        .from_coords(&[q.from_i64(w), q.from_i64(x), q.from_i64(y), q.from_i64(z)])
        .unwrap()
}

fn main() -> quaternity::error::Result<()> {
    let gf7 = Ring::prime_field(7)?;
    let three = gf7.from_i64(3);
    println!("in {gf7}: 3^-1 = {}", three.invert()?);

    let q = Ring::Rationals;
    let x = q.from_ratio(-2, 6)?;
    println!("in {q}: {x} + 1/2 = {}", &x + &q.from_ratio(1, 2)?);

    let (i, j) = (quaternion(0, 1, 0, 0), quaternion(0, 0, 1, 0));
    println!("i*j = {}, j*i = {}", &i * &j, &j * &i);
    let u = quaternion(1, 1, 1, 1);
    println!("(1+i+j+k)^-1 = {}", u.invert()?);
    println!("conj(1+i+j+k) = {}", u.conjugate());

    let parsed = Ring::RationalQuaternions.parse_element("[1/2, 0, -3, 2]")?;
    println!("parsed {parsed}, json {}", parsed.to_json());
    println!("\"H(Q)\" parses as {}", "H(Q)".parse::<Ring>()?);
    Ok(())
}
