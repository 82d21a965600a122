//! A small seeded campaign over every check.
//!
//! cargo run --release --example campaign -- [seed]

use std::num::NonZeroUsize;

use quaternity::harness::{run_campaign, CampaignConfig, Check, DimBounds};
use quaternity::scalar::Ring;

fn main() -> quaternity::error::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let config = CampaignConfig {
        seed,
        rings: vec![Ring::PrimeField(2), Ring::PrimeField(3), Ring::Rationals],
        dim_bounds: DimBounds::up_to(3),
        instance_count: NonZeroUsize::new(20).unwrap(),
        checks: Check::all(),
        exhaustive: true,
        counterexample_dir: Some(std::env::temp_dir().join("quaternity-counterexamples")),
    };
    let report = run_campaign(&config)?;
    for t in &report.tallies {
        println!(
            "{:<42} {:<6} passed {:>3} failed {} skipped {:>2} enumerated {:>2}",
            t.check.to_string(),
            t.ring.to_string(),
            t.passed,
            t.failed,
            t.skipped,
            t.exhaustive_confirmed
        );
    }
    println!("{} failures in {:.1?}", report.total_failed(), report.duration);
    Ok(())
}
