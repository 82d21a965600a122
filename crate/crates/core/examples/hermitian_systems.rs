//! Hermitian systems over the rational quaternions: instances built from
//! Hermitian unknowns pass every condition and get Hermitian witnesses back.

use quaternity::harness::{gen_solvable_instance, instance_rng, DimBounds};
use quaternity::scalar::Ring;
use quaternity::sylvester::{check, solve_linearized, SystemKind};

fn main() -> quaternity::error::Result<()> {
    let ring = Ring::RationalQuaternions;
    for kind in SystemKind::ALL.into_iter().filter(|k| k.is_hermitian()) {
        let mut rng = instance_rng(3, ring, "example", 0);
        let inst = gen_solvable_instance(kind, ring, DimBounds::up_to(2), &mut rng)?;
        let report = check(&inst)?;
        let sol = solve_linearized(&inst)?;
        println!(
            "{:<32} {} conditions, verdict {}, Hermitian witnesses {:?}",
            kind.name(),
            report.conditions.len(),
            report.verdict,
            sol.hermitian_flags
        );
    }
    Ok(())
}
