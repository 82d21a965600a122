use serde::Serialize;

use super::instance::SystemInstance;
use super::kinds::SystemKind;
use crate::error::{Error, Result};
use crate::recipe::{Condition, ConditionRecord, RankTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvabilityReport {
    pub kind: SystemKind,
    pub verdict: bool,
    pub conditions: Vec<ConditionRecord>,
}

impl SolvabilityReport {
    pub fn failed(&self) -> impl Iterator<Item = &ConditionRecord> {
        self.conditions.iter().filter(|c| !c.holds)
    }
}

/// Evaluates the rank conditions of `inst.kind`.
pub fn check(inst: &SystemInstance) -> Result<SolvabilityReport> {
    inst.validate()?;
    let conditions: Vec<Condition> = inst
        .kind
        .conditions()
        .iter()
        .map(|c| Condition::parse(c))
        .collect::<Result<_>>()?;
    let bindings = inst.bindings()?;
    let ranks = RankTable::compute(&bindings, conditions.iter().flat_map(|c| c.recipes()))?;
    let records: Vec<ConditionRecord> = conditions
        .iter()
        .enumerate()
        .map(|(i, c)| c.evaluate(&format!("{}#{}", inst.kind, i + 1), &ranks))
        .collect();
    Ok(SolvabilityReport {
        kind: inst.kind,
        verdict: records.iter().all(|r| r.holds),
        conditions: records,
    })
}

fn expect(inst: &SystemInstance, kinds: &[SystemKind]) -> Result<()> {
    if kinds.contains(&inst.kind) {
        Ok(())
    } else {
        let expected: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
        Err(Error::WrongKind {
            expected: expected.join(" or "),
            found: inst.kind.to_string(),
        })
    }
}

pub fn check_two_unknown(inst: &SystemInstance) -> Result<SolvabilityReport> {
    expect(inst, &[SystemKind::TwoUnknown])?;
    check(inst)
}

pub fn check_three_unknown(inst: &SystemInstance) -> Result<SolvabilityReport> {
    expect(inst, &[SystemKind::ThreeUnknown])?;
    check(inst)
}

pub fn check_classical_triple(inst: &SystemInstance) -> Result<SolvabilityReport> {
    expect(inst, &[SystemKind::ClassicalTriple])?;
    check(inst)
}

pub fn check_hermitian(inst: &SystemInstance) -> Result<SolvabilityReport> {
    expect(
        inst,
        &[
            SystemKind::HermitianCongruence,
            SystemKind::HermitianCongruenceMixed,
            SystemKind::HermitianSymmetricSum,
            SystemKind::HermitianSymmetricSumMixed,
        ],
    )?;
    check(inst)
}
