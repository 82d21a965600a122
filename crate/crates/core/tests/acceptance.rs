//! Acceptance campaigns. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::num::NonZeroUsize;
use std::time::Instant;

use quaternity::harness::{
    exhaustive_parameter_count, generate_input, run_campaign, CampaignConfig, CampaignReport, Check, CheckInput,
    DimBounds,
};
use quaternity::scalar::Ring;
use quaternity::sylvester::SystemKind;

const GF2: Ring = Ring::PrimeField(2);
const GF3: Ring = Ring::PrimeField(3);
const GF7: Ring = Ring::PrimeField(7);
const Q: Ring = Ring::Rationals;
const HQ: Ring = Ring::RationalQuaternions;
const SEED: u64 = 20240917;

fn cfg(rings: &[Ring], max_dim: usize, count: usize, checks: Vec<Check>) -> CampaignConfig {
    CampaignConfig {
        seed: SEED,
        rings: rings.to_vec(),
        dim_bounds: DimBounds::up_to(max_dim),
        instance_count: NonZeroUsize::new(count).unwrap(),
        checks,
        exhaustive: true,
        counterexample_dir: None,
    }
}

/// Every campaign the criteria draw on, in a fixed order.
fn plan() -> Vec<(&'static str, CampaignConfig)> {
    let identities = vec![Check::Consistency, Check::Nonnegativity];
    let decomposition = vec![Check::Decomposition, Check::DualDecomposition];
    let solvability: Vec<Check> = SystemKind::ALL.map(Check::Solvability).to_vec();
    let necessity: Vec<Check> = SystemKind::ALL.map(Check::Necessity).to_vec();
    vec![
        ("identities", cfg(&[GF2, GF3, GF7, Q], 6, 500, identities.clone())),
        ("identities", cfg(&[HQ], 4, 500, identities)),
        ("invariance", cfg(&[GF2, GF3, GF7, Q], 6, 100, vec![Check::Invariance])),
        ("invariance", cfg(&[HQ], 4, 100, vec![Check::Invariance])),
        ("decomposition", cfg(&[GF2, GF3, GF7, Q, HQ], 5, 100, decomposition)),
        ("solvability", cfg(&[GF2, GF3], 3, 500, solvability.clone())),
        ("solvability", cfg(&[HQ], 2, 100, solvability)),
        ("necessity", cfg(&[GF3], 3, 200, necessity.clone())),
        ("necessity", cfg(&[HQ], 2, 200, necessity)),
    ]
}

struct Line {
    ok: bool,
    text: String,
}

fn report(n: usize, title: &str, ok: bool, detail: String) -> Line {
    Line {
        ok,
        text: format!(
            "criterion {n} {title:<34} {} {detail}",
            if ok { "PASS" } else { "FAIL" }
        ),
    }
}

fn seconds(runs: &[(&str, CampaignConfig, CampaignReport)], group: &str) -> String {
    let total: f64 = runs
        .iter()
        .filter(|(g, _, _)| *g == group)
        .map(|(_, _, r)| r.duration.as_secs_f64())
        .sum();
    format!(" in {total:.1}s")
}

fn sum_over<'a>(
    runs: &'a [(&str, CampaignConfig, CampaignReport)],
    group: &'a str,
    keep: impl Fn(Check) -> bool + 'a,
) -> impl Iterator<Item = &'a quaternity::harness::Tally> + 'a {
    runs.iter()
        .filter(move |(g, _, _)| *g == group)
        .flat_map(|(_, _, r)| r.tallies.iter())
        .filter(move |t| keep(t.check))
}

fn counts<'a>(tallies: impl Iterator<Item = &'a quaternity::harness::Tally>) -> (usize, usize, usize) {
    tallies.fold((0, 0, 0), |(p, f, s), t| (p + t.passed, f + t.failed, s + t.skipped))
}

fn failures(runs: &[(&str, CampaignConfig, CampaignReport)], group: &str, keep: impl Fn(Check) -> bool) -> String {
    runs.iter()
        .filter(|(g, _, _)| *g == group)
        .flat_map(|(_, _, r)| r.failures.iter())
        .filter(|f| keep(f.check))
        .take(3)
        .map(|f| format!(" [{} {} #{}: {}]", f.check, f.ring, f.index, f.reason))
        .collect()
}

/// GF(2) non-Hermitian instances with at most 16 free entries, and how many
/// of them the campaign confirmed by enumeration.
fn enumeration_coverage(config: &CampaignConfig, report: &CampaignReport) -> (usize, usize) {
    let mut eligible = 0;
    let mut confirmed = 0;
    for kind in SystemKind::ALL.into_iter().filter(|k| !k.is_hermitian()) {
        let check = Check::Solvability(kind);
        for i in 0..config.instance_count.get() {
            let input = generate_input(check, GF2, config.dim_bounds, config.seed, i).unwrap();
            if let Some(CheckInput::System(inst)) = input {
                if exhaustive_parameter_count(&inst).unwrap() <= 16 {
                    eligible += 1;
                }
            }
        }
        confirmed += report.tally(check, GF2).map_or(0, |t| t.exhaustive_confirmed);
    }
    (eligible, confirmed)
}

fn run_all() -> Vec<(&'static str, CampaignConfig, CampaignReport)> {
    plan()
        .into_iter()
        .map(|(g, c)| {
            let r = run_campaign(&c).expect("campaign config is valid");
            (g, c, r)
        })
        .collect()
}

fn main() {
    let start = Instant::now();
    let runs = run_all();
    let first_pass = start.elapsed();
    let mut lines = Vec::new();

    let is = |c: Check| move |x: Check| x == c;
    let (p, f, _) = counts(sum_over(&runs, "identities", is(Check::Consistency)));
    lines.push(report(
        1,
        "relation identities",
        f == 0 && p == 2500,
        format!(
            "{p} passed, {f} failed{}{}",
            failures(&runs, "identities", is(Check::Consistency)),
            seconds(&runs, "identities")
        ),
    ));
    let (p, f, _) = counts(sum_over(&runs, "identities", is(Check::Nonnegativity)));
    lines.push(report(
        2,
        "nonnegativity",
        f == 0 && p == 2500,
        format!(
            "{p} passed, {f} failed{}",
            failures(&runs, "identities", is(Check::Nonnegativity))
        ),
    ));
    let (p, f, _) = counts(sum_over(&runs, "invariance", |_| true));
    lines.push(report(
        3,
        "equivalence invariance",
        f == 0 && p == 500,
        format!("{p} passed, {f} failed{}", failures(&runs, "invariance", |_| true)),
    ));
    let (p, f, _) = counts(sum_over(&runs, "decomposition", |_| true));
    lines.push(report(
        4,
        "decomposition certificates",
        f == 0 && p == 1000,
        format!(
            "{p} passed, {f} failed{}{}",
            failures(&runs, "decomposition", |_| true),
            seconds(&runs, "decomposition")
        ),
    ));

    let (p, f, s) = counts(sum_over(&runs, "solvability", |_| true));
    let (_, gf_cfg, gf_report) = runs
        .iter()
        .find(|(g, c, _)| *g == "solvability" && c.rings.contains(&GF2))
        .unwrap();
    let (eligible, confirmed) = enumeration_coverage(gf_cfg, gf_report);
    let enumerated: usize = sum_over(&runs, "solvability", |_| true)
        .map(|t| t.exhaustive_confirmed)
        .sum();
    lines.push(report(
        5,
        "checker/oracle/enumeration",
        f == 0 && eligible == confirmed && p + s == 500 * 14 + 700,
        format!(
            "{p} agreed, {f} disagreed, {s} skipped (Hermitian kinds in GF(2)), {enumerated} enumerated, \
             GF(2) enumeration {confirmed}/{eligible}{}{}",
            failures(&runs, "solvability", |_| true),
            seconds(&runs, "solvability")
        ),
    ));
    let (p, f, _) = counts(sum_over(&runs, "necessity", |_| true));
    lines.push(report(
        6,
        "necessity and Hermitian witnesses",
        f == 0 && p == 200 * 14,
        format!("{p} accepted, {f} rejected{}", failures(&runs, "necessity", |_| true)),
    ));

    let json = |runs: &[(&str, CampaignConfig, CampaignReport)]| -> String {
        let reports: Vec<&CampaignReport> = runs.iter().map(|(_, _, r)| r).collect();
        serde_json::to_string_pretty(&reports).unwrap()
    };
    let first = json(&runs);
    let second = json(&run_all());
    lines.push(report(
        7,
        "determinism",
        first == second,
        format!("{} bytes, identical = {}", first.len(), first == second),
    ));

    for l in &lines {
        println!("{}", l.text);
    }
    println!(
        "acceptance: first pass {:.1}s, total {:.1}s",
        first_pass.as_secs_f64(),
        start.elapsed().as_secs_f64()
    );
    if lines.iter().any(|l| !l.ok) {
        std::process::exit(1);
    }
}
