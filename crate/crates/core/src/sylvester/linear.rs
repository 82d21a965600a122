use std::collections::BTreeMap;

use serde::Serialize;

use super::check::{check, SolvabilityReport};
use super::instance::SystemInstance;
use super::kinds::SystemKind;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Element;

/// Values for the unknowns of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub unknowns: BTreeMap<String, Matrix>,
    /// Which unknowns satisfy `U = U*`.
    pub hermitian_flags: BTreeMap<String, bool>,
}

/// Outcome of running both deciders on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementRecord {
    pub kind: SystemKind,
    pub checker_verdict: bool,
    pub oracle_verdict: bool,
    pub agree: bool,
    pub report: SolvabilityReport,
    pub witness: Option<Solution>,
}

type Rep = Vec<Vec<Element>>;

fn rep_product(l: Option<&Rep>, r: Option<&Rep>, d: usize, zero: &Element) -> Rep {
    match (l, r) {
        (Some(l), Some(r)) => (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).fold(zero.clone(), |acc, k| &acc + &(&l[i][k] * &r[k][j])))
                    .collect()
            })
            .collect(),
        (Some(m), None) | (None, Some(m)) => m.clone(),
        (None, None) => unreachable!("every term has a coefficient"),
    }
}

/// Solves the system over the base field, one coordinate per entry and
/// base-field dimension. Hermitian kinds are solved without the symmetry
/// constraint and the witness is then symmetrized; every witness is checked
/// by substitution before it is returned.
pub fn solve_linearized(inst: &SystemInstance) -> Result<Solution> {
    inst.validate()?;
    let ring = inst.ring;
    let base = ring.base_field();
    let d = ring.degree();
    let bzero = base.zero();
    let bone = base.one();
    let eqs = inst.kind.oracle_equations();
    let shapes = inst.unknown_shapes(eqs)?;

    let mut offsets = BTreeMap::new();
    let mut n_vars = 0;
    for (name, &(r, c)) in &shapes {
        offsets.insert(*name, n_vars);
        n_vars += r * c * d;
    }
    let rhs: Vec<Matrix> = eqs.iter().map(|e| inst.operand(e.rhs)).collect::<Result<_>>()?;
    let n_rows: usize = rhs.iter().map(|m| m.rows() * m.cols() * d).sum();

    let mut coeff = vec![bzero.clone(); n_rows * n_vars];
    let mut target = Vec::with_capacity(n_rows);
    let identity: Rep = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { bone.clone() } else { bzero.clone() })
                .collect()
        })
        .collect();
    let mut row0 = 0;
    for (eq, phi) in eqs.iter().zip(&rhs) {
        let (rows, cols) = phi.shape();
        for term in eq.terms {
            let left = term.left.map(|l| inst.operand(l)).transpose()?;
            let right = term.right.map(|r| inst.operand(r)).transpose()?;
            let (u_rows, u_cols) = shapes[term.unknown];
            let left_reps: Option<Vec<Rep>> = left
                .as_ref()
                .map(|l| l.entries().iter().map(|e| e.regular_representation()).collect());
            let right_reps: Option<Vec<Rep>> = right
                .as_ref()
                .map(|r| r.entries().iter().map(|e| e.right_representation()).collect());
            let off = offsets[term.unknown];
            for i in 0..rows {
                for j in 0..cols {
                    let eq_row = row0 + (i * cols + j) * d;
                    let ks: Vec<usize> = if left.is_some() { (0..u_rows).collect() } else { vec![i] };
                    let ls: Vec<usize> = if right.is_some() {
                        (0..u_cols).collect()
                    } else {
                        vec![j]
                    };
                    for &k in &ks {
                        let lrep = match (&left, &left_reps) {
                            (Some(l), Some(reps)) => {
                                if l.get(i, k).is_zero() {
                                    continue;
                                }
                                Some(&reps[i * l.cols() + k])
                            }
                            _ => None,
                        };
                        for &l in &ls {
                            let rrep = match (&right, &right_reps) {
                                (Some(r), Some(reps)) => {
                                    if r.get(l, j).is_zero() {
                                        continue;
                                    }
                                    Some(&reps[l * r.cols() + j])
                                }
                                _ => None,
                            };
                            let block = if lrep.is_none() && rrep.is_none() {
                                identity.clone()
                            } else {
                                rep_product(lrep, rrep, d, &bzero)
                            };
                            let var = off + (k * u_cols + l) * d;
                            for (a, brow) in block.iter().enumerate() {
                                for (b, v) in brow.iter().enumerate() {
                                    let idx = (eq_row + a) * n_vars + var + b;
                                    coeff[idx] = &coeff[idx] + v;
                                }
                            }
                        }
                    }
                }
            }
        }
        for e in phi.entries() {
            target.extend(e.coords());
        }
        row0 += rows * cols * d;
    }

    let system = Matrix::new(base, n_rows, n_vars, coeff)?;
    let target = Matrix::new(base, n_rows, 1, target)?;
    let x = system.solve_right(&target)?.ok_or(Error::Infeasible)?;

    let mut unknowns = BTreeMap::new();
    for (name, &(r, c)) in &shapes {
        let off = offsets[name];
        let mut data = Vec::with_capacity(r * c);
        for idx in 0..r * c {
            let coords: Vec<Element> = (0..d).map(|t| x.get(off + idx * d + t, 0).clone()).collect();
            data.push(ring.from_coords(&coords)?);
        }
        unknowns.insert(name.to_string(), Matrix::new(ring, r, c, data)?);
    }
    symmetrize(inst.kind, &mut unknowns)?;

    if !inst.satisfied_by(&unknowns)? {
        return Err(Error::internal(format!(
            "linearized witness for a {} system fails substitution",
            inst.kind
        )));
    }
    let hermitian_flags = unknowns.iter().map(|(k, u)| (k.clone(), u.is_hermitian())).collect();
    Ok(Solution {
        unknowns,
        hermitian_flags,
    })
}

fn half_sum(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let half = a.ring().from_ratio(1, 2)?;
    Ok(a.add(b)?.scale_right(&half))
}

/// `X = (X̃ + X̃*)/2`, and likewise for `Y` from `(Ỹ, Ỹ*)` or `(Ỹ, Z̃*)`.
fn symmetrize(kind: SystemKind, unknowns: &mut BTreeMap<String, Matrix>) -> Result<()> {
    if !kind.is_hermitian() {
        return Ok(());
    }
    let x = &unknowns["X"];
    let x = half_sum(x, &x.conjugate_transpose())?;
    unknowns.insert("X".into(), x);
    let z = unknowns.remove("Z");
    let y = &unknowns["Y"];
    let y = match z {
        Some(z) => half_sum(y, &z.conjugate_transpose())?,
        None => half_sum(y, &y.conjugate_transpose())?,
    };
    unknowns.insert("Y".into(), y);
    Ok(())
}

/// Runs the rank checker and the linearized solver on `inst`.
pub fn cross_check(inst: &SystemInstance) -> Result<AgreementRecord> {
    let report = check(inst)?;
    let witness = match solve_linearized(inst) {
        Ok(s) => Some(s),
        Err(Error::Infeasible) => None,
        Err(e) => return Err(e),
    };
    let oracle_verdict = witness.is_some();
    Ok(AgreementRecord {
        kind: inst.kind,
        checker_verdict: report.verdict,
        oracle_verdict,
        agree: report.verdict == oracle_verdict,
        report,
        witness,
    })
}
