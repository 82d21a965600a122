use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Element, Ring};
use crate::sylvester::SystemInstance;

/// Largest number of free unknown entries enumerated.
pub const EXHAUSTIVE_MAX_PARAMETERS: usize = 16;

fn residue(e: &Element) -> u8 {
    match e {
        Element::Residue { value, .. } => *value as u8,
        other => unreachable!("prime-field element expected, got {other}"),
    }
}

/// Unit matrices spanning each unknown; symmetric pairs for Hermitian ones.
fn parameter_basis(inst: &SystemInstance) -> Result<Vec<(String, Matrix)>> {
    let ring = inst.ring;
    let shapes = inst.unknown_shapes(inst.kind.equations())?;
    let mut basis = Vec::new();
    for (name, (r, c)) in shapes {
        let hermitian = inst.kind.hermitian_unknowns().contains(&name);
        for i in 0..r {
            for j in 0..c {
                if hermitian && j < i {
                    continue;
                }
                let mut u = Matrix::zeros(ring, r, c);
                u.set(i, j, ring.one());
                if hermitian {
                    u.set(j, i, ring.one());
                }
                basis.push((name.to_string(), u));
            }
        }
    }
    Ok(basis)
}

/// Number of free coordinates [`exhaustive_solvability`] would enumerate.
pub fn exhaustive_parameter_count(inst: &SystemInstance) -> Result<usize> {
    Ok(parameter_basis(inst)?.len())
}

/// Tries every assignment of the unknowns over GF(2) or GF(3).
pub fn exhaustive_solvability(inst: &SystemInstance) -> Result<bool> {
    inst.validate()?;
    let p = match inst.ring {
        Ring::PrimeField(p) if p <= 3 => p as u8,
        other => {
            return Err(Error::TooLarge(format!(
                "enumeration needs GF(2) or GF(3), not {other}"
            )))
        }
    };
    let basis = parameter_basis(inst)?;
    if basis.len() > EXHAUSTIVE_MAX_PARAMETERS {
        return Err(Error::TooLarge(format!(
            "{} free entries exceed the limit of {EXHAUSTIVE_MAX_PARAMETERS}",
            basis.len()
        )));
    }
    let shapes = inst.unknown_shapes(inst.kind.equations())?;
    let zeros: BTreeMap<String, Matrix> = shapes
        .iter()
        .map(|(k, &(r, c))| (k.to_string(), Matrix::zeros(inst.ring, r, c)))
        .collect();

    // images of basis vectors under the (linear) left-hand side
    let mut columns: Vec<Vec<u8>> = Vec::with_capacity(basis.len());
    for (name, u) in &basis {
        let mut assignment = zeros.clone();
        assignment.insert(name.clone(), u.clone());
        let mut col = Vec::new();
        for eq in inst.kind.equations() {
            col.extend(inst.evaluate(eq, &assignment)?.entries().iter().map(residue));
        }
        columns.push(col);
    }
    let mut target = Vec::new();
    for eq in inst.kind.equations() {
        target.extend(inst.operand(eq.rhs)?.entries().iter().map(residue));
    }

    let mut current = vec![0u8; target.len()];
    let mut digits = vec![0u8; basis.len()];
    loop {
        if current == target {
            return Ok(true);
        }
        // odometer step; a full wrap of one digit adds p times its column, i.e. nothing
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(false);
            }
            for (c, v) in current.iter_mut().zip(&columns[k]) {
                *c = (*c + v) % p;
            }
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}
