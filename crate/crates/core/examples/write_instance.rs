//! Writes a generated system instance as JSON, ready for
//! `quaternity check --in FILE` or `quaternity cross-check --in FILE`.
//!
//! cargo run --example write_instance -- KIND RING SEED FILE [solvable]

use quaternity::harness::{gen_random_instance, gen_solvable_instance, instance_rng, DimBounds};
use quaternity::scalar::Ring;
use quaternity::sylvester::SystemKind;

fn main() -> quaternity::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() < 4 {
        eprintln!("usage: write_instance KIND RING SEED FILE [solvable]");
        std::process::exit(2);
    }
    let kind: SystemKind = args[0].parse()?;
    let ring: Ring = args[1].parse()?;
    let seed: u64 = args[2]
        .parse()
        .map_err(|_| quaternity::error::Error::Parse(format!("bad seed `{}`", args[2])))?;
    let mut rng = instance_rng(seed, ring, "example", 0);
    let bounds = DimBounds::up_to(3);
    let inst = if args.get(4).map(String::as_str) == Some("solvable") {
        gen_solvable_instance(kind, ring, bounds, &mut rng)?
    } else {
        gen_random_instance(kind, ring, bounds, &mut rng)?
    };
    std::fs::write(&args[3], serde_json::to_string_pretty(&inst.to_json()).unwrap())?;
    println!("wrote {kind} instance over {ring} to {}", args[3]);
    Ok(())
}
