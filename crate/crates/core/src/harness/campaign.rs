use std::fmt;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::exhaustive::{exhaustive_parameter_count, exhaustive_solvability};
use super::gen::{
    gen_dual_array, gen_invertible, gen_quaternity, gen_random_instance, gen_solvable_instance, DimBounds,
};
use crate::canon::{
    decompose_dual, decompose_quaternity, duality_transport, quaternity_invariants, verify_consistency, DualArray,
    Quaternity,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Ring;
use crate::sylvester::{self, cross_check, solve_linearized, SystemInstance, SystemKind};

/// Largest search space (`p^parameters`) a campaign enumerates.
const CAMPAIGN_ENUMERATION_LIMIT: u64 = 1 << 16;

/// One property checked per generated instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Relation and auxiliary identities against freshly computed ranks.
    Consistency,
    /// Every invariant and derived block width, including the dual ones, is `>= 0`.
    Nonnegativity,
    /// Invariants are unchanged under random nonsingular transforms.
    Invariance,
    /// The quaternity certificate verifies.
    Decomposition,
    /// The dual-array certificate verifies.
    DualDecomposition,
    /// Rank checker, linearized solver and (when small) enumeration agree.
    Solvability(SystemKind),
    /// Constructed-solvable instances are accepted and yield valid witnesses.
    Necessity(SystemKind),
}

impl Check {
    /// The default campaign: every check on every kind.
    pub fn all() -> Vec<Check> {
        let mut v = vec![
            Check::Consistency,
            Check::Nonnegativity,
            Check::Invariance,
            Check::Decomposition,
            Check::DualDecomposition,
        ];
        v.extend(SystemKind::ALL.map(Check::Solvability));
        v.extend(SystemKind::ALL.map(Check::Necessity));
        v
    }

    /// Checks in one family see the same instance at each index.
    fn family(&self) -> String {
        match self {
            Check::Consistency | Check::Nonnegativity | Check::Decomposition | Check::Invariance => "quaternity".into(),
            Check::DualDecomposition => "dual".into(),
            Check::Solvability(k) => format!("random:{k}"),
            Check::Necessity(k) => format!("solvable:{k}"),
        }
    }

    fn slug(&self) -> String {
        self.to_string().replace(':', "-")
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Consistency => f.write_str("consistency"),
            Check::Nonnegativity => f.write_str("nonnegativity"),
            Check::Invariance => f.write_str("invariance"),
            Check::Decomposition => f.write_str("decomposition"),
            Check::DualDecomposition => f.write_str("dual_decomposition"),
            Check::Solvability(k) => write!(f, "solvability:{k}"),
            Check::Necessity(k) => write!(f, "necessity:{k}"),
        }
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Check> {
        Ok(match s {
            "consistency" => Check::Consistency,
            "nonnegativity" => Check::Nonnegativity,
            "invariance" => Check::Invariance,
            "decomposition" => Check::Decomposition,
            "dual_decomposition" => Check::DualDecomposition,
            _ => match s.split_once(':') {
                Some(("solvability", k)) => Check::Solvability(k.parse()?),
                Some(("necessity", k)) => Check::Necessity(k.parse()?),
                _ => return Err(Error::Parse(format!("unknown check `{s}`"))),
            },
        })
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Check {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Check, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub rings: Vec<Ring>,
    pub dim_bounds: DimBounds,
    pub instance_count: NonZeroUsize,
    pub checks: Vec<Check>,
    /// Compare against enumeration whenever the search space is small.
    #[serde(default = "yes")]
    pub exhaustive: bool,
    /// Where failing instances are written, one JSON file each.
    #[serde(default)]
    pub counterexample_dir: Option<PathBuf>,
}

fn yes() -> bool {
    true
}

/// Pass/fail counts for one check on one ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub check: Check,
    pub ring: Ring,
    pub passed: usize,
    pub failed: usize,
    /// Instances the check does not apply to (Hermitian kinds in characteristic 2).
    pub skipped: usize,
    /// Passing instances that were also confirmed by enumeration.
    pub exhaustive_confirmed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub seed: u64,
    pub tallies: Vec<Tally>,
    pub failures: Vec<FailureSummary>,
    pub counterexample_files: Vec<String>,
    #[serde(skip)]
    pub duration: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureSummary {
    pub check: Check,
    pub ring: Ring,
    pub index: usize,
    pub reason: String,
}

impl CampaignReport {
    pub fn total_failed(&self) -> usize {
        self.tallies.iter().map(|t| t.failed).sum()
    }

    pub fn tally(&self, check: Check, ring: Ring) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.check == check && t.ring == ring)
    }
}

/// The data one check runs on.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckInput {
    Quaternity(Quaternity),
    Transformed {
        quaternity: Quaternity,
        transforms: [Matrix; 5],
    },
    Dual(DualArray),
    System(SystemInstance),
}

impl CheckInput {
    pub fn to_json(&self) -> Value {
        match self {
            CheckInput::Quaternity(q) => json!({ "quaternity": q.to_json() }),
            CheckInput::Transformed { quaternity, transforms } => json!({
                "quaternity": quaternity.to_json(),
                "transforms": transforms.iter().map(Matrix::to_json).collect::<Vec<_>>(),
            }),
            CheckInput::Dual(d) => json!({ "dual": d.to_json() }),
            CheckInput::System(s) => json!({ "system": s.to_json() }),
        }
    }

    pub fn from_json(v: &Value) -> Result<CheckInput> {
        if let Some(s) = v.get("system") {
            return Ok(CheckInput::System(SystemInstance::from_json(s)?));
        }
        if let Some(d) = v.get("dual") {
            return Ok(CheckInput::Dual(DualArray::from_json(d)?));
        }
        let q = Quaternity::from_json(
            v.get("quaternity")
                .ok_or_else(|| Error::Parse("input has no `quaternity`, `dual` or `system`".into()))?,
        )?;
        match v.get("transforms") {
            None => Ok(CheckInput::Quaternity(q)),
            Some(t) => {
                let list = t
                    .as_array()
                    .filter(|l| l.len() == 5)
                    .ok_or_else(|| Error::Parse("`transforms` must list five matrices".into()))?;
                let mats: Vec<Matrix> = list.iter().map(Matrix::from_json).collect::<Result<_>>()?;
                let transforms: [Matrix; 5] = mats.try_into().expect("length checked");
                Ok(CheckInput::Transformed {
                    quaternity: q,
                    transforms,
                })
            }
        }
    }
}

/// Result of evaluating one check on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub passed: bool,
    pub exhaustive_confirmed: bool,
    pub reason: String,
    pub detail: Value,
}

impl Evaluation {
    fn pass(detail: Value) -> Evaluation {
        Evaluation {
            passed: true,
            exhaustive_confirmed: false,
            reason: String::new(),
            detail,
        }
    }

    fn fail(reason: impl Into<String>, detail: Value) -> Evaluation {
        Evaluation {
            passed: false,
            exhaustive_confirmed: false,
            reason: reason.into(),
            detail,
        }
    }
}

/// A persisted failure: enough to rerun the check without the generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub seed: u64,
    pub check: Check,
    pub ring: Ring,
    pub index: usize,
    pub reason: String,
    pub input: Value,
    pub detail: Value,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// The generator for instance `index` of `family` on `ring`.
pub fn instance_rng(seed: u64, ring: Ring, family: &str, index: usize) -> ChaCha8Rng {
    let mut h = splitmix(seed);
    for part in [fnv(&ring.to_string()), fnv(family), index as u64] {
        h = splitmix(h ^ part);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// Builds the input for instance `index`; `None` if the check does not apply.
pub fn generate_input(
    check: Check,
    ring: Ring,
    bounds: DimBounds,
    seed: u64,
    index: usize,
) -> Result<Option<CheckInput>> {
    let mut rng = instance_rng(seed, ring, &check.family(), index);
    Ok(Some(match check {
        Check::Consistency | Check::Nonnegativity | Check::Decomposition => {
            CheckInput::Quaternity(gen_quaternity(ring, bounds, &mut rng))
        }
        Check::Invariance => {
            let quaternity = gen_quaternity(ring, bounds, &mut rng);
            let mut trng = instance_rng(seed, ring, "transforms", index);
            let transforms = quaternity.dims().map(|n| gen_invertible(ring, n, &mut trng));
            CheckInput::Transformed { quaternity, transforms }
        }
        Check::DualDecomposition => CheckInput::Dual(gen_dual_array(ring, bounds, &mut rng)),
        Check::Solvability(kind) | Check::Necessity(kind) => {
            if kind.is_hermitian() && ring.characteristic() == 2 {
                return Ok(None);
            }
            let inst = match check {
                Check::Solvability(_) => gen_random_instance(kind, ring, bounds, &mut rng)?,
                _ => gen_solvable_instance(kind, ring, bounds, &mut rng)?,
            };
            CheckInput::System(inst)
        }
    }))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn wrong_input(check: Check) -> Error {
    Error::Parse(format!("input does not fit the `{check}` check"))
}

/// Runs `check` on `input`. Errors mean the input itself is unusable;
/// every property violation is reported as a failed evaluation.
pub fn evaluate(check: Check, input: &CheckInput, exhaustive: bool) -> Result<Evaluation> {
    let outcome = match (check, input) {
        (Check::Consistency, CheckInput::Quaternity(q)) => {
            quaternity_invariants(&q.a, &q.b, &q.c, &q.d).and_then(|inv| {
                let report = verify_consistency(&q.a, &q.b, &q.c, &q.d, &inv)?;
                Ok(if report.passed {
                    Evaluation::pass(Value::Null)
                } else {
                    Evaluation::fail("identity mismatch", to_value(&report))
                })
            })
        }
        (Check::Nonnegativity, CheckInput::Quaternity(q)) => {
            quaternity_invariants(&q.a, &q.b, &q.c, &q.d).and_then(|inv| {
                let dual = duality_transport(&q.a, &q.b, &q.c, &q.d)?;
                let negative: Vec<String> = inv
                    .widths()
                    .into_iter()
                    .chain(dual.widths())
                    .filter(|(_, w)| *w < 0)
                    .map(|(n, w)| format!("{n} = {w}"))
                    .collect();
                Ok(if negative.is_empty() {
                    Evaluation::pass(Value::Null)
                } else {
                    Evaluation::fail(negative.join(", "), json!({ "invariants": inv, "dual": dual }))
                })
            })
        }
        (
            Check::Invariance,
            CheckInput::Transformed {
                quaternity: q,
                transforms,
            },
        ) => {
            let [u, v, w, x, y] = transforms;
            let moved = (|| -> Result<Quaternity> {
                Quaternity::new(
                    Matrix::product(&[u, &q.a, v])?,
                    Matrix::product(&[u, &q.b, w])?,
                    Matrix::product(&[x, &q.c, v])?,
                    Matrix::product(&[y, &q.d, v])?,
                )
            })()?;
            quaternity_invariants(&q.a, &q.b, &q.c, &q.d).and_then(|before| {
                let after = quaternity_invariants(&moved.a, &moved.b, &moved.c, &moved.d)?;
                Ok(if before == after {
                    Evaluation::pass(Value::Null)
                } else {
                    Evaluation::fail("invariants changed", json!({ "before": before, "after": after }))
                })
            })
        }
        (Check::Decomposition, CheckInput::Quaternity(q)) => decompose_quaternity(&q.a, &q.b, &q.c, &q.d)
            .and_then(|cert| cert.verify(&q.a, &q.b, &q.c, &q.d))
            .map(|()| Evaluation::pass(Value::Null)),
        (Check::DualDecomposition, CheckInput::Dual(d)) => decompose_dual(&d.e, &d.f, &d.g, &d.h)
            .and_then(|cert| cert.verify(&d.e, &d.f, &d.g, &d.h))
            .map(|()| Evaluation::pass(Value::Null)),
        (Check::Solvability(kind), CheckInput::System(inst)) if inst.kind == kind => {
            cross_check(inst).and_then(|rec| {
                if !rec.agree {
                    return Ok(Evaluation::fail(
                        "rank checker and linearized solver disagree",
                        to_value(&rec),
                    ));
                }
                let small = match inst.ring {
                    Ring::PrimeField(p) if p <= 3 => {
                        let n = exhaustive_parameter_count(inst)? as u32;
                        p.checked_pow(n)
                            .is_some_and(|states| states <= CAMPAIGN_ENUMERATION_LIMIT)
                    }
                    _ => false,
                };
                if exhaustive && small {
                    let truth = exhaustive_solvability(inst)?;
                    if truth != rec.checker_verdict {
                        return Ok(Evaluation::fail(
                            format!("enumeration says {truth}, deciders say {}", rec.checker_verdict),
                            to_value(&rec),
                        ));
                    }
                    let mut e = Evaluation::pass(Value::Null);
                    e.exhaustive_confirmed = true;
                    return Ok(e);
                }
                Ok(Evaluation::pass(Value::Null))
            })
        }
        (Check::Necessity(kind), CheckInput::System(inst)) if inst.kind == kind => {
            sylvester::check(inst).and_then(|report| {
                if !report.verdict {
                    return Ok(Evaluation::fail("solvable instance rejected", to_value(&report)));
                }
                let sol = solve_linearized(inst)?;
                let bad: Vec<&str> = kind
                    .hermitian_unknowns()
                    .iter()
                    .copied()
                    .filter(|u| !sol.hermitian_flags.get(*u).copied().unwrap_or(false))
                    .collect();
                Ok(if bad.is_empty() {
                    Evaluation::pass(Value::Null)
                } else {
                    Evaluation::fail(format!("witness not Hermitian in {}", bad.join(", ")), to_value(&sol))
                })
            })
        }
        _ => return Err(wrong_input(check)),
    };
    Ok(outcome.unwrap_or_else(|e| Evaluation::fail(e.to_string(), Value::Null)))
}

fn ring_slug(ring: Ring) -> String {
    match ring {
        Ring::Rationals => "q".into(),
        Ring::PrimeField(p) => format!("gf{p}"),
        Ring::RationalQuaternions => "hq".into(),
    }
}

/// File name of a persisted counterexample.
pub fn counterexample_file_name(seed: u64, check: Check, ring: Ring, index: usize) -> String {
    format!("{seed}-{}-{}-{index}.json", check.slug(), ring_slug(ring))
}

pub fn write_counterexample(dir: &Path, cx: &Counterexample) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(counterexample_file_name(cx.seed, cx.check, cx.ring, cx.index));
    std::fs::write(&path, serde_json::to_string_pretty(cx)? + "\n")?;
    Ok(path)
}

/// Reruns a persisted counterexample; `true` when it still fails.
pub fn replay_counterexample(path: &Path) -> Result<bool> {
    let text = std::fs::read_to_string(path)?;
    let cx: Counterexample = serde_json::from_str(&text)?;
    let input = CheckInput::from_json(&cx.input)?;
    Ok(!evaluate(cx.check, &input, true)?.passed)
}

enum Outcome {
    Skipped,
    Done(Box<(Option<CheckInput>, Evaluation)>),
}

fn run_instance(config: &CampaignConfig, check: Check, ring: Ring, index: usize) -> Outcome {
    let input = match generate_input(check, ring, config.dim_bounds, config.seed, index) {
        Ok(Some(i)) => i,
        Ok(None) => return Outcome::Skipped,
        Err(e) => {
            return Outcome::Done(Box::new((
                None,
                Evaluation::fail(format!("generation: {e}"), Value::Null),
            )))
        }
    };
    let eval =
        evaluate(check, &input, config.exhaustive).unwrap_or_else(|e| Evaluation::fail(e.to_string(), Value::Null));
    Outcome::Done(Box::new((Some(input), eval)))
}

/// Runs every configured check on `instance_count` instances per ring.
/// Instances are evaluated in parallel; results are gathered in index order.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    let start = Instant::now();
    let mut tallies = Vec::new();
    let mut failures = Vec::new();
    let mut files = Vec::new();
    for &check in &config.checks {
        for &ring in &config.rings {
            let outcomes: Vec<Outcome> = (0..config.instance_count.get())
                .into_par_iter()
                .map(|i| run_instance(config, check, ring, i))
                .collect();
            let mut tally = Tally {
                check,
                ring,
                passed: 0,
                failed: 0,
                skipped: 0,
                exhaustive_confirmed: 0,
            };
            for (index, outcome) in outcomes.into_iter().enumerate() {
                let (input, eval) = match outcome {
                    Outcome::Skipped => {
                        tally.skipped += 1;
                        continue;
                    }
                    Outcome::Done(b) => *b,
                };
                if eval.passed {
                    tally.passed += 1;
                    tally.exhaustive_confirmed += eval.exhaustive_confirmed as usize;
                    continue;
                }
                tally.failed += 1;
                failures.push(FailureSummary {
                    check,
                    ring,
                    index,
                    reason: eval.reason.clone(),
                });
                if let Some(dir) = &config.counterexample_dir {
                    let cx = Counterexample {
                        seed: config.seed,
                        check,
                        ring,
                        index,
                        reason: eval.reason,
                        input: input.as_ref().map(CheckInput::to_json).unwrap_or(Value::Null),
                        detail: eval.detail,
                    };
                    files.push(write_counterexample(dir, &cx)?.display().to_string());
                }
            }
            tallies.push(tally);
        }
    }
    Ok(CampaignReport {
        seed: config.seed,
        tallies,
        failures,
        counterexample_files: files,
        duration: start.elapsed(),
    })
}
