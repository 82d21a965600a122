//! Rank conditions for a two-unknown system and the exact solver behind them.
//!
//! A X E + B Y H = Phi, C X F = Psi, D X G = Omega.

use std::collections::BTreeMap;

use quaternity::matrix::Matrix;
use quaternity::scalar::Ring;
use quaternity::sylvester::{check, cross_check, solve_linearized, SystemInstance, SystemKind};

fn main() -> quaternity::error::Result<()> {
    let r = Ring::PrimeField(3);
    let mut m: BTreeMap<String, Matrix> = [
        ("A", Matrix::from_i64(r, &[&[1, 2], &[0, 1]])),
        ("B", Matrix::from_i64(r, &[&[1], &[1]])),
        ("C", Matrix::from_i64(r, &[&[1, 0]])),
        ("D", Matrix::from_i64(r, &[&[0, 1]])),
        ("E", Matrix::from_i64(r, &[&[1, 1], &[0, 2]])),
        ("F", Matrix::from_i64(r, &[&[1], &[0]])),
        ("G", Matrix::from_i64(r, &[&[0], &[1]])),
        ("H", Matrix::from_i64(r, &[&[1, 0]])),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();

    // right-hand sides produced by a known pair (X0, Y0)
    let x0 = Matrix::from_i64(r, &[&[1, 0], &[2, 1]]);
    let y0 = Matrix::from_i64(r, &[&[2]]);
    let phi = Matrix::product(&[&m["A"], &x0, &m["E"]])?.add(&Matrix::product(&[&m["B"], &y0, &m["H"]])?)?;
    let psi = Matrix::product(&[&m["C"], &x0, &m["F"]])?;
    let omega = Matrix::product(&[&m["D"], &x0, &m["G"]])?;
    m.insert("Phi".into(), phi);
    m.insert("Psi".into(), psi);
    m.insert("Omega".into(), omega);

    let inst = SystemInstance::new(SystemKind::TwoUnknown, r, m.clone())?;
    let report = check(&inst)?;
    println!("verdict {} from {} conditions", report.verdict, report.conditions.len());
    for c in report.failed() {
        println!(
            "  fails {}: r{} = {} vs {}",
            c.label, c.lhs_matrix_recipe, c.lhs_rank, c.rhs_rank
        );
    }
    let sol = solve_linearized(&inst)?;
    println!("X =\n{}Y =\n{}", sol.unknowns["X"], sol.unknowns["Y"]);

    // with C = 0 the second equation cannot produce a nonzero Psi
    m.insert("C".into(), Matrix::zeros(r, 1, 2));
    m.insert("Psi".into(), Matrix::from_i64(r, &[&[1]]));
    let broken = SystemInstance::new(SystemKind::TwoUnknown, r, m)?;
    let rec = cross_check(&broken)?;
    println!(
        "C = 0: checker {}, solver {}, failing {:?}",
        rec.checker_verdict,
        rec.oracle_verdict,
        rec.report.failed().map(|c| c.label.as_str()).collect::<Vec<_>>()
    );
    Ok(())
}
