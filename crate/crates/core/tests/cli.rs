use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use quaternity::canon::{quaternity_invariants, Quaternity};
use quaternity::cli;
use quaternity::harness::{gen_quaternity, gen_solvable_instance, instance_rng, DimBounds};
use quaternity::matrix::Matrix;
use quaternity::scalar::Ring;
use quaternity::sylvester::{SystemInstance, SystemKind};
use serde_json::Value;

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quaternity").chain(args.iter().copied());
    let status = cli::run(argv, &mut out, &mut err);
    Run {
        status,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut v = args.to_vec();
    v.extend(["--format", "json"]);
    let r = run(&v);
    (r.status, serde_json::from_str(&r.stdout).unwrap_or(Value::Null))
}

fn failing_two_unknown() -> SystemInstance {
    let r = Ring::PrimeField(3);
    let m: BTreeMap<String, Matrix> = [
        ("A", Matrix::from_i64(r, &[&[1, 2], &[0, 1]])),
        ("B", Matrix::from_i64(r, &[&[1], &[1]])),
        ("C", Matrix::zeros(r, 1, 2)),
        ("D", Matrix::from_i64(r, &[&[0, 1]])),
        ("E", Matrix::from_i64(r, &[&[1, 1], &[0, 2]])),
        ("F", Matrix::from_i64(r, &[&[1], &[0]])),
        ("G", Matrix::from_i64(r, &[&[0], &[1]])),
        ("H", Matrix::from_i64(r, &[&[1, 0]])),
        ("Phi", Matrix::zeros(r, 2, 2)),
        ("Psi", Matrix::from_i64(r, &[&[1]])),
        ("Omega", Matrix::zeros(r, 1, 1)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    SystemInstance::new(SystemKind::TwoUnknown, r, m).unwrap()
}

#[test]
fn rank_of_zero_matrix_prints_zero() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write(dir.path(), "zero.json", &Matrix::zeros(Ring::Rationals, 3, 2).to_json());
    let r = run(&["rank", "--in", zero.to_str().unwrap()]);
    assert_eq!((r.status, r.stdout.as_str()), (0, "0\n"));
}

#[test]
fn failing_condition_exits_one_and_is_listed() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "inst.json", &failing_two_unknown().to_json());
    let path = inst.to_str().unwrap();
    let r = run(&["check", "--kind", "two_unknown", "--in", path]);
    assert_eq!(r.status, 1, "{}", r.stderr);
    assert!(r.stdout.contains("verdict: false"));
    assert!(r.stdout.contains("FAIL two_unknown#5"), "{}", r.stdout);

    let (status, report) = json(&["check", "--kind", "two_unknown", "--in", path]);
    assert_eq!(status, 1);
    assert_eq!(report["verdict"], false);
    let failed: Vec<&str> = report["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["holds"] == false)
        .map(|c| c["label"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"two_unknown#5"));

    let wrong = run(&["check", "--kind", "classical_triple", "--in", path]);
    assert_eq!(wrong.status, 2);
    assert!(wrong.stderr.contains("classical_triple"));

    let solve = run(&["solve", "--in", path]);
    assert_eq!((solve.status, solve.stdout.as_str()), (1, "infeasible\n"));
    let cross = run(&["cross-check", "--in", path]);
    assert_eq!(cross.status, 0);
    assert!(cross.stdout.contains("agree: true"));
}

#[test]
fn generated_solvable_instances_cross_check() {
    let dir = tempfile::tempdir().unwrap();
    for (i, kind) in SystemKind::ALL.into_iter().enumerate() {
        let mut rng = instance_rng(5, Ring::PrimeField(3), "cli", i);
        let inst = gen_solvable_instance(kind, Ring::PrimeField(3), DimBounds::up_to(2), &mut rng).unwrap();
        let path = write(dir.path(), &format!("{kind}.json"), &inst.to_json());
        let path = path.to_str().unwrap();
        let (status, rec) = json(&["cross-check", "--in", path]);
        assert_eq!(status, 0, "{kind}");
        assert_eq!(rec["agree"], true);
        assert_eq!(rec["checker_verdict"], true);
        let solved = run(&["solve", "--in", path]);
        assert_eq!(solved.status, 0, "{kind}: {}", solved.stderr);
        for u in kind.hermitian_unknowns() {
            assert!(
                solved.stdout.contains(&format!("{u} hermitian: true")),
                "{}",
                solved.stdout
            );
        }
    }
}

#[test]
fn text_and_json_agree_on_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = instance_rng(11, Ring::Rationals, "cli", 0);
    let q = gen_quaternity(Ring::Rationals, DimBounds::up_to(4), &mut rng);
    let path = write(dir.path(), "q.json", &q.to_json());
    let path = path.to_str().unwrap();
    let text = run(&["invariants", "--in", path]);
    let (status, v) = json(&["invariants", "--in", path]);
    assert_eq!((text.status, status), (0, 0));
    let expected = quaternity_invariants(&q.a, &q.b, &q.c, &q.d).unwrap();
    for i in 1..=14 {
        let key = format!("r{i}");
        assert_eq!(v[&key].as_u64().unwrap() as usize, expected.values()[i - 1]);
        assert!(text.stdout.contains(&format!("{key} = {}\n", v[&key])), "{key}");
    }
    for key in ["r_theta", "r_pi", "rank_b"] {
        assert!(text.stdout.contains(&format!("{key} = {}\n", v[key])), "{key}");
    }
}

#[test]
fn text_and_json_agree_on_check_reports() {
    let dir = tempfile::tempdir().unwrap();
    let ring = Ring::PrimeField(2);
    for i in 0..10 {
        let mut rng = instance_rng(3, ring, "cli-check", i);
        let inst =
            quaternity::harness::gen_random_instance(SystemKind::ThreeUnknown, ring, DimBounds::up_to(3), &mut rng)
                .unwrap();
        let path = write(dir.path(), "inst.json", &inst.to_json());
        let path = path.to_str().unwrap();
        let text = run(&["check", "--in", path]);
        let (status, v) = json(&["check", "--in", path]);
        assert_eq!(text.status, status);
        assert!(text.stdout.contains(&format!("verdict: {}\n", v["verdict"])));
        for c in v["conditions"].as_array().unwrap() {
            let line = format!(
                "{} {}: r{} = {}, {} = {}",
                if c["holds"] == true { "ok  " } else { "FAIL" },
                c["label"].as_str().unwrap(),
                c["lhs_matrix_recipe"].as_str().unwrap(),
                c["lhs_rank"],
                c["rhs_rank_expression"].as_str().unwrap(),
                c["rhs_rank"]
            );
            assert!(text.stdout.contains(&line), "{line}");
        }
    }
}

#[test]
fn canon_build_and_decompose_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = instance_rng(2, Ring::PrimeField(7), "cli", 0);
    let q = gen_quaternity(Ring::PrimeField(7), DimBounds::up_to(3), &mut rng);
    let qp = write(dir.path(), "q.json", &q.to_json());
    let (status, inv) = json(&["invariants", "--in", qp.to_str().unwrap()]);
    assert_eq!(status, 0);
    let ip = write(dir.path(), "inv.json", &inv);
    let (status, canon) = json(&[
        "canon-build",
        "--in",
        ip.to_str().unwrap(),
        "--ring",
        "prime_field",
        "--p",
        "7",
    ]);
    assert_eq!(status, 0);
    let target = Quaternity::new(
        Matrix::from_json(&canon["s_a"]).unwrap(),
        Matrix::from_json(&canon["s_b"]).unwrap(),
        Matrix::from_json(&canon["s_c"]).unwrap(),
        Matrix::from_json(&canon["s_d"]).unwrap(),
    )
    .unwrap();
    let again = quaternity_invariants(&target.a, &target.b, &target.c, &target.d).unwrap();
    assert_eq!(
        again.values(),
        quaternity_invariants(&q.a, &q.b, &q.c, &q.d).unwrap().values()
    );

    let d = run(&["decompose", "--in", qp.to_str().unwrap()]);
    assert_eq!(d.status, 0, "{}", d.stderr);
    assert!(d.stdout.ends_with("verified: true\n"));

    let dual = write(dir.path(), "dual.json", &q.transport().to_json());
    let r = run(&["dual-invariants", "--in", dual.to_str().unwrap()]);
    assert_eq!(r.status, 0);
    let (status, dinv) = json(&["dual-invariants", "--in", dual.to_str().unwrap()]);
    assert_eq!(status, 0);
    let dp = write(dir.path(), "dinv.json", &dinv);
    assert_eq!(
        run(&["canon-build", "--in", dp.to_str().unwrap(), "--ring", "GF(7)"]).status,
        0
    );
    assert_eq!(run(&["decompose", "--in", dual.to_str().unwrap()]).status, 0);
}

#[test]
fn malformed_inputs_exit_two_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let garbage = d.join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    let missing_cols = write(
        d,
        "m.json",
        &serde_json::json!({"ring": "rationals", "rows": 1, "data": [["1"]]}),
    );
    let mut q = Quaternity::new(
        Matrix::identity(Ring::Rationals, 2),
        Matrix::zeros(Ring::Rationals, 2, 1),
        Matrix::zeros(Ring::Rationals, 1, 2),
        Matrix::zeros(Ring::Rationals, 1, 2),
    )
    .unwrap()
    .to_json();
    q.as_object_mut().unwrap().remove("C");
    let no_c = write(d, "q.json", &q);
    let mut inst = failing_two_unknown().to_json();
    inst["matrices"]["Psi"] = Matrix::zeros(Ring::PrimeField(3), 2, 1).to_json();
    let bad_psi = write(d, "inst.json", &inst);

    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["rank", "--in", garbage.to_str().unwrap()], "garbage.json"),
        (vec!["rank", "--in", missing_cols.to_str().unwrap()], "cols"),
        (vec!["rank", "--in", "/nonexistent/x.json"], "x.json"),
        (vec!["invariants", "--in", no_c.to_str().unwrap()], "C"),
        (vec!["check", "--in", bad_psi.to_str().unwrap()], "Psi"),
        (vec!["solve", "--in", no_c.to_str().unwrap()], ""),
        (vec!["frobnicate"], "frobnicate"),
        (vec!["rank"], "--in"),
        (
            vec!["canon-build", "--in", no_c.to_str().unwrap(), "--ring", "prime_field"],
            "--p",
        ),
        (vec!["campaign", "--count", "1"], "--seed"),
        (vec!["campaign", "--seed", "1", "--check", "bogus"], "bogus"),
        (vec!["campaign", "--seed", "1", "--min-dim", "3", "--max-dim", "1"], "3"),
    ];
    for (args, needle) in cases {
        let r = run(&args);
        assert_eq!(r.status, 2, "{args:?}: {}", r.stdout);
        assert!(r.stderr.contains(needle), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn help_exits_zero() {
    let r = run(&["--help"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("campaign"));
}

#[test]
fn output_file_and_binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "inst.json", &failing_two_unknown().to_json());
    let out = dir.path().join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_quaternity"))
        .args([
            "check",
            "--in",
            inst.to_str().unwrap(),
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["kind"], "two_unknown");
}

#[test]
fn campaign_flags_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "campaign",
        "--seed",
        "9",
        "--ring",
        "GF(2)",
        "--ring",
        "prime_field",
        "--p",
        "5",
        "--count",
        "3",
        "--max-dim",
        "2",
        "--check",
        "consistency",
        "--check",
        "solvability:classical_triple",
    ];
    let (status, report) = json(&args);
    assert_eq!(status, 0);
    let tallies = report["tallies"].as_array().unwrap();
    assert_eq!(tallies.len(), 4);
    assert!(tallies.iter().all(|t| t["passed"] == 3));
    assert_eq!(tallies[1]["ring"], "GF(5)");

    let config = serde_json::json!({
        "seed": 9,
        "rings": ["GF(2)", "GF(5)"],
        "dim_bounds": {"min": 1, "max": 2},
        "instance_count": 3,
        "checks": ["consistency", "solvability:classical_triple"],
    });
    let cfg = write(dir.path(), "cfg.json", &config);
    let (status, from_file) = json(&["campaign", "--in", cfg.to_str().unwrap()]);
    assert_eq!(status, 0);
    assert_eq!(from_file, report);
}
