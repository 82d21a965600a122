//! The `quaternity` command line. Exit status 0 means success or a true
//! verdict, 1 a false verdict, an infeasible system or a disagreement, and 2
//! an input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::canon::{
    build_canonical_dual, build_canonical_quaternity, decompose_dual, decompose_quaternity, dual_invariants,
    quaternity_invariants, verify_consistency, DualArray, DualInvariants, Quaternity, QuaternityInvariants,
};
use crate::error::{Error, Result};
use crate::harness::{run_campaign, CampaignConfig, Check, DimBounds};
use crate::matrix::Matrix;
use crate::scalar::Ring;
use crate::sylvester::{check, cross_check, solve_linearized, SystemInstance, SystemKind};

#[derive(Parser, Debug)]
#[command(
    name = "quaternity",
    version,
    about = "Canonical forms of matrix quaternities and Sylvester-system solvability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Input JSON file.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of one matrix.
    Rank(Common),
    /// Block-size invariants of a quaternity {"A","B","C","D"}.
    Invariants(Common),
    /// Invariants of a dual array {"E","F","G","H"}.
    DualInvariants(Common),
    /// Canonical 0/1 matrices from an invariants file.
    CanonBuild {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "rationals")]
        ring: String,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Transforms reaching the canonical form, for a quaternity or dual array.
    Decompose(Common),
    /// Rank conditions of a system instance.
    Check {
        #[command(flatten)]
        common: Common,
        /// Reject instances of any other kind.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Solve a system instance exactly.
    Solve(Common),
    /// Compare the rank verdict with the exact solver.
    CrossCheck(Common),
    /// Randomized campaign over every check.
    Campaign(CampaignArgs),
}

#[derive(Args, Debug)]
struct CampaignArgs {
    /// Campaign config JSON; flags below override its fields.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    seed: Option<u64>,
    /// Repeatable: Q, H(Q), GF(p), or prime_field together with --p.
    #[arg(long)]
    ring: Vec<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    min_dim: Option<usize>,
    #[arg(long)]
    max_dim: Option<usize>,
    /// Repeatable, e.g. `consistency` or `solvability:two_unknown`.
    #[arg(long = "check")]
    checks: Vec<String>,
    #[arg(long)]
    no_exhaustive: bool,
    /// Directory for failing instances.
    #[arg(long, value_name = "DIR")]
    counterexamples: Option<PathBuf>,
}

/// Report text plus the exit status it implies.
struct Outcome {
    json: Value,
    text: String,
    status: i32,
}

impl Outcome {
    fn ok<T: Serialize>(value: &T, text: String) -> Result<Outcome> {
        Ok(Outcome {
            json: serde_json::to_value(value)?,
            text,
            status: 0,
        })
    }

    fn with_status(mut self, ok: bool) -> Outcome {
        self.status = if ok { 0 } else { 1 };
        self
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn ring_arg(ring: &str, p: Option<u64>) -> Result<Ring> {
    match (ring, p) {
        ("prime_field" | "GF" | "gf", Some(p)) => Ring::prime_field(p),
        ("prime_field" | "GF" | "gf", None) => Err(Error::Parse("prime_field needs --p".into())),
        (other, _) => other.parse(),
    }
}

fn invariants_text(inv: &QuaternityInvariants) -> String {
    let mut s = String::new();
    for (i, v) in inv.values()[..14].iter().enumerate() {
        let _ = writeln!(s, "r{} = {v}", i + 1);
    }
    let _ = writeln!(
        s,
        "r_theta = {}\nr_pi = {}\nrank_b = {}",
        inv.r_theta, inv.r_pi, inv.rank_b
    );
    let [m, p, q, s_, t] = inv.dims;
    let _ = writeln!(s, "dims (m p q s t) = {m} {p} {q} {s_} {t}");
    s
}

fn dual_text(inv: &DualInvariants) -> String {
    let mut s = String::new();
    for (i, v) in inv.values()[..17].iter().enumerate() {
        let _ = writeln!(s, "v{} = {v}", i + 1);
    }
    let [p1, m1, q1, s1, t1] = inv.dims;
    let _ = writeln!(
        s,
        "rank_h = {}\ndims (p1 m1 q1 s1 t1) = {p1} {m1} {q1} {s1} {t1}",
        inv.rank_h
    );
    s
}

fn matrices_text(pairs: &[(&str, &Matrix)]) -> String {
    let mut s = String::new();
    for (name, m) in pairs {
        let _ = write!(s, "{name} =\n{m}");
        if m.rows() == 0 || m.cols() == 0 {
            s.push('\n');
        }
    }
    s
}

fn load_instance(path: &Path) -> Result<SystemInstance> {
    SystemInstance::from_json(&read_json(path)?)
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Rank(c) => {
            let m = Matrix::from_json(&read_json(&c.input)?)?;
            let r = m.rank();
            Outcome::ok(&r, format!("{r}\n"))
        }
        Command::Invariants(c) => {
            let q = Quaternity::from_json(&read_json(&c.input)?)?;
            let inv = quaternity_invariants(&q.a, &q.b, &q.c, &q.d)?;
            let report = verify_consistency(&q.a, &q.b, &q.c, &q.d, &inv)?;
            let mut text = invariants_text(&inv);
            let _ = writeln!(text, "identities hold: {}", report.passed);
            let out = Outcome::ok(&inv, text)?;
            Ok(out.with_status(report.passed))
        }
        Command::DualInvariants(c) => {
            let d = DualArray::from_json(&read_json(&c.input)?)?;
            let inv = dual_invariants(&d.e, &d.f, &d.g, &d.h)?;
            Outcome::ok(&inv, dual_text(&inv))
        }
        Command::CanonBuild { common, ring, p } => {
            let ring = ring_arg(ring, *p)?;
            let v = read_json(&common.input)?;
            if v.get("v1").is_some() {
                let inv: DualInvariants =
                    serde_json::from_value(v).map_err(|e| Error::Parse(format!("dual invariants: {e}")))?;
                let c = build_canonical_dual(ring, &inv)?;
                let text = matrices_text(&[("S_e", &c.s_e), ("S_f", &c.s_f), ("S_g", &c.s_g), ("S_h", &c.s_h)]);
                Outcome::ok(&c, text)
            } else {
                let inv: QuaternityInvariants =
                    serde_json::from_value(v).map_err(|e| Error::Parse(format!("invariants: {e}")))?;
                let c = build_canonical_quaternity(ring, &inv)?;
                let text = matrices_text(&[("S_a", &c.s_a), ("S_b", &c.s_b), ("S_c", &c.s_c), ("S_d", &c.s_d)]);
                Outcome::ok(&c, text)
            }
        }
        Command::Decompose(c) => {
            let v = read_json(&c.input)?;
            if v.get("E").is_some() {
                let d = DualArray::from_json(&v)?;
                let cert = decompose_dual(&d.e, &d.f, &d.g, &d.h)?;
                cert.verify(&d.e, &d.f, &d.g, &d.h)?;
                let text = matrices_text(&[
                    ("P1", &cert.p1),
                    ("M1", &cert.m1),
                    ("Q1", &cert.q1),
                    ("S1", &cert.s1),
                    ("T1", &cert.t1),
                ]);
                Outcome::ok(&cert, text + "verified: true\n")
            } else {
                let q = Quaternity::from_json(&v)?;
                let cert = decompose_quaternity(&q.a, &q.b, &q.c, &q.d)?;
                cert.verify(&q.a, &q.b, &q.c, &q.d)?;
                let text = matrices_text(&[
                    ("M", &cert.m),
                    ("P", &cert.p),
                    ("Q", &cert.q),
                    ("S", &cert.s),
                    ("T", &cert.t),
                ]);
                Outcome::ok(&cert, text + "verified: true\n")
            }
        }
        Command::Check { common, kind } => {
            let inst = load_instance(&common.input)?;
            if let Some(k) = kind {
                let k: SystemKind = k.parse()?;
                if k != inst.kind {
                    return Err(Error::WrongKind {
                        expected: k.to_string(),
                        found: inst.kind.to_string(),
                    });
                }
            }
            let report = check(&inst)?;
            let mut text = format!("kind: {}\nverdict: {}\n", report.kind, report.verdict);
            for c in &report.conditions {
                let _ = writeln!(
                    text,
                    "{} {}: r{} = {}, {} = {}",
                    if c.holds { "ok  " } else { "FAIL" },
                    c.label,
                    c.lhs_matrix_recipe,
                    c.lhs_rank,
                    c.rhs_rank_expression,
                    c.rhs_rank
                );
            }
            Ok(Outcome::ok(&report, text)?.with_status(report.verdict))
        }
        Command::Solve(c) => {
            let inst = load_instance(&c.input)?;
            match solve_linearized(&inst) {
                Ok(sol) => {
                    let pairs: Vec<(&str, &Matrix)> = sol.unknowns.iter().map(|(k, m)| (k.as_str(), m)).collect();
                    let mut text = matrices_text(&pairs);
                    for (k, h) in &sol.hermitian_flags {
                        let _ = writeln!(text, "{k} hermitian: {h}");
                    }
                    Outcome::ok(&sol, text)
                }
                Err(Error::Infeasible) => Ok(Outcome {
                    json: serde_json::json!({ "feasible": false }),
                    text: "infeasible\n".into(),
                    status: 1,
                }),
                Err(e) => Err(e),
            }
        }
        Command::CrossCheck(c) => {
            let inst = load_instance(&c.input)?;
            let rec = cross_check(&inst)?;
            let text = format!(
                "kind: {}\nchecker: {}\noracle: {}\nagree: {}\n",
                rec.kind, rec.checker_verdict, rec.oracle_verdict, rec.agree
            );
            Ok(Outcome::ok(&rec, text)?.with_status(rec.agree))
        }
        Command::Campaign(a) => {
            let config = campaign_config(a)?;
            let report = run_campaign(&config)?;
            let mut text = format!("seed: {}\n", report.seed);
            for t in &report.tallies {
                let _ = writeln!(
                    text,
                    "{:<40} {:<8} passed {:>5}  failed {:>3}  skipped {:>4}  enumerated {:>4}",
                    t.check.to_string(),
                    t.ring.to_string(),
                    t.passed,
                    t.failed,
                    t.skipped,
                    t.exhaustive_confirmed
                );
            }
            for f in &report.failures {
                let _ = writeln!(text, "failure: {} {} #{}: {}", f.check, f.ring, f.index, f.reason);
            }
            let ok = report.total_failed() == 0;
            Ok(Outcome::ok(&report, text)?.with_status(ok))
        }
    }
}

fn campaign_config(a: &CampaignArgs) -> Result<CampaignConfig> {
    let base: Option<CampaignConfig> = match &a.input {
        Some(path) => {
            Some(serde_json::from_value(read_json(path)?).map_err(|e| Error::Parse(format!("campaign config: {e}")))?)
        }
        None => None,
    };
    let seed = a
        .seed
        .or(base.as_ref().map(|b| b.seed))
        .ok_or_else(|| Error::Parse("campaign needs --seed (or a config file with a seed)".into()))?;
    let rings = if a.ring.is_empty() {
        match &base {
            Some(b) => b.rings.clone(),
            None => vec![Ring::PrimeField(2), Ring::PrimeField(3), Ring::Rationals],
        }
    } else {
        a.ring.iter().map(|r| ring_arg(r, a.p)).collect::<Result<_>>()?
    };
    let default_bounds = base.as_ref().map(|b| b.dim_bounds).unwrap_or(DimBounds::up_to(3));
    let dim_bounds = DimBounds::new(
        a.min_dim.unwrap_or(default_bounds.min),
        a.max_dim.unwrap_or(default_bounds.max),
    )?;
    let instance_count = match a.count {
        Some(n) => NonZeroUsize::new(n).ok_or_else(|| Error::Parse("--count must be at least 1".into()))?,
        None => base
            .as_ref()
            .map(|b| b.instance_count)
            .unwrap_or(NonZeroUsize::new(20).expect("nonzero")),
    };
    let checks = if a.checks.is_empty() {
        base.as_ref().map(|b| b.checks.clone()).unwrap_or_else(Check::all)
    } else {
        a.checks.iter().map(|c| c.parse()).collect::<Result<_>>()?
    };
    Ok(CampaignConfig {
        seed,
        rings,
        dim_bounds,
        instance_count,
        checks,
        exhaustive: !a.no_exhaustive && base.as_ref().is_none_or(|b| b.exhaustive),
        counterexample_dir: a.counterexamples.clone().or(base.and_then(|b| b.counterexample_dir)),
    })
}

fn destination(command: &Command) -> (Option<&Path>, Format) {
    match command {
        Command::Rank(c)
        | Command::Invariants(c)
        | Command::DualInvariants(c)
        | Command::Decompose(c)
        | Command::Solve(c)
        | Command::CrossCheck(c)
        | Command::CanonBuild { common: c, .. }
        | Command::Check { common: c, .. } => (c.out.as_deref(), c.format),
        Command::Campaign(a) => (a.out.as_deref(), a.format),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status. Reports go to `stdout` or `--out`; diagnostics
/// go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let (out, format) = destination(&cli.command);
    let body = match format {
        Format::Text => outcome.text,
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("values serialize") + "\n",
    };
    let written = match out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    outcome.status
}
