//! End-to-end exercises of the binary: exit codes, report lines, and the
//! file formats the subcommands exchange.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use defect_tqft::examples::bundled_systems;
use defect_tqft::frobenius_data::CoeffTag;
use defect_tqft::io;
use defect_tqft::{seed_complex, Scalar, SeedName};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_defect-tqft"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn z2_table_json() -> String {
    serde_json::to_string(&io::GroupTableFile {
        elements: vec!["e".into(), "g".into()],
        table: vec![vec!["e".into(), "g".into()], vec!["g".into(), "e".into()]],
    })
    .unwrap()
}

#[test]
fn check_passes_on_generated_systems() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m22.json");
    let gen = run(&["gen", "matrix", "--n", "2", "--m", "2", "-o", out.to_str().unwrap()]);
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));

    let check = run(&["check", out.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    let text = stdout(&check);
    assert!(text.contains("35/35 equations hold"), "{text}");
    assert!(text.contains("loop constant ρ = 2"), "{text}");
    assert!(text.contains("loop constant λ = 2"), "{text}");
}

#[test]
fn check_fails_on_perturbed_system_naming_an_equation() {
    let dir = tempfile::tempdir().unwrap();
    let sys = bundled_systems().remove(0).1;
    let bad = sys.perturbed(CoeffTag::Mult, (0, 1, 1), Scalar::one());
    let path = write(dir.path(), "bad.json", &io::system_to_json(&bad));
    let check = run(&["check", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(1));
    let text = stdout(&check);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("eq ") && l.contains("FAIL")), "{text}");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "broken.json", "{ not json");
    assert_eq!(run(&["check", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["seed", "--name", "klein_bottle", "-o", "x.json"]).status.code(), Some(2));
    assert_eq!(
        run(&["gen", "matrix", "--n", "9", "--m", "1", "-o", "x.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn invariant_reports_exact_values_and_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let table = write(dir.path(), "z2.tbl", &z2_table_json());
    let sys_path = dir.path().join("z2.json");
    let gen = run(&[
        "gen",
        "group-algebra",
        "--table",
        table.to_str().unwrap(),
        "-o",
        sys_path.to_str().unwrap(),
    ]);
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));
    let check = run(&["check", sys_path.to_str().unwrap()]);
    assert!(stdout(&check).contains("loop constant ρ = 2"));

    let torus = write(
        dir.path(),
        "torus.json",
        &io::complex_to_json(&seed_complex(SeedName::PlainTorus)),
    );

    let value_lines = |method: &str| -> Vec<String> {
        let out = run(&[
            "invariant",
            sys_path.to_str().unwrap(),
            torus.to_str().unwrap(),
            "--method",
            method,
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        stdout(&out)
            .lines()
            .filter(|l| l.starts_with("unnormalized") || l.starts_with("normalized"))
            .map(str::to_owned)
            .collect()
    };
    let brute = value_lines("brute");
    let contract = value_lines("contract");
    assert_eq!(brute, contract, "the two routes must print identical value lines");
    assert!(brute.iter().any(|l| l == "normalized = 2"), "{brute:?}");
}

#[test]
fn invariant_writes_json_record() {
    let dir = tempfile::tempdir().unwrap();
    let sys = bundled_systems().remove(0).1;
    let sys_path = write(dir.path(), "sys.json", &io::system_to_json(&sys));
    let cx = write(
        dir.path(),
        "sphere.json",
        &io::complex_to_json(&seed_complex(SeedName::SphereEquator)),
    );
    let record = dir.path().join("result.json");
    let out = run(&[
        "invariant",
        sys_path.to_str().unwrap(),
        cx.to_str().unwrap(),
        "--json",
        record.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: io::InvariantRecord =
        serde_json::from_str(&std::fs::read_to_string(&record).unwrap()).unwrap();
    assert_eq!(parsed.n_on_vertices, 6);
    assert_eq!(parsed.n_off_vertices, 8);
}

#[test]
fn oversized_brute_force_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let sys = bundled_systems()
        .into_iter()
        .find(|(n, _)| *n == "gset-s3")
        .unwrap()
        .1;
    let sys_path = write(dir.path(), "s3.json", &io::system_to_json(&sys));
    let cx = write(
        dir.path(),
        "big.json",
        &io::complex_to_json(&seed_complex(SeedName::TorusMeridian)),
    );
    let out = run(&[
        "invariant",
        sys_path.to_str().unwrap(),
        cx.to_str().unwrap(),
        "--method",
        "brute",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn fuzz_zero_steps_passes_and_reports_generator() {
    let dir = tempfile::tempdir().unwrap();
    let sys = bundled_systems().remove(0).1;
    let sys_path = write(dir.path(), "sys.json", &io::system_to_json(&sys));
    let cx = write(
        dir.path(),
        "eq.json",
        &io::complex_to_json(&seed_complex(SeedName::SphereEquator)),
    );
    let out = run(&[
        "fuzz",
        sys_path.to_str().unwrap(),
        cx.to_str().unwrap(),
        "--seed",
        "1",
        "--steps",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("6364136223846793005"), "generator constants printed: {text}");
    assert!(text.contains("PASS"));
}

#[test]
fn fuzz_short_walk_holds_and_seed_ranges_work() {
    let dir = tempfile::tempdir().unwrap();
    let sys = bundled_systems().remove(0).1;
    let sys_path = write(dir.path(), "sys.json", &io::system_to_json(&sys));
    let cx = write(
        dir.path(),
        "eq.json",
        &io::complex_to_json(&seed_complex(SeedName::SphereEquator)),
    );
    let out = run(&[
        "fuzz",
        sys_path.to_str().unwrap(),
        cx.to_str().unwrap(),
        "--seed",
        "1-2",
        "--steps",
        "20",
        "--checkpoint-every",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("seed 1: PASS"), "{text}");
    assert!(text.contains("seed 2: PASS"), "{text}");
    assert!(text.contains("move histogram:"), "{text}");
}

#[test]
fn wrong_barred_order_flag_is_detected_by_fuzz() {
    let dir = tempfile::tempdir().unwrap();
    let sys = bundled_systems()
        .into_iter()
        .find(|(n, _)| *n == "gset-s3")
        .unwrap()
        .1;
    let sys_path = write(dir.path(), "s3.json", &io::system_to_json(&sys));
    let cx = write(
        dir.path(),
        "eq.json",
        &io::complex_to_json(&seed_complex(SeedName::SphereEquator)),
    );
    let out = run(&[
        "fuzz",
        sys_path.to_str().unwrap(),
        cx.to_str().unwrap(),
        "--seed",
        "1",
        "--steps",
        "200",
        "--checkpoint-every",
        "5",
        "--max-edges",
        "0",
        "--wrong-barred-order",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL at step"), "{}", stdout(&out));
}

#[test]
fn subdivide_and_seed_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sphere = dir.path().join("sphere.json");
    let out = run(&["seed", "--name", "plain_sphere", "-o", sphere.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let sub = dir.path().join("sub.json");
    let out = run(&["subdivide", sphere.to_str().unwrap(), "-o", sub.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("14 vertices, 36 edges, 24 triangles"), "{text}");
    let cx = io::complex_from_json(&std::fs::read_to_string(&sub).unwrap()).unwrap();
    assert!(cx.is_flaglike());
}

#[test]
fn gset_generation_from_table_files() {
    let dir = tempfile::tempdir().unwrap();
    let table = write(dir.path(), "z2.tbl", &z2_table_json());
    // X = ℤ/2 with both regular actions.
    let action = write(
        dir.path(),
        "x.json",
        &serde_json::to_string(&io::ActionTableFile {
            points: vec!["e".into(), "g".into()],
            right: vec![vec!["e".into(), "g".into()], vec!["g".into(), "e".into()]],
            left: vec![vec!["e".into(), "g".into()], vec!["g".into(), "e".into()]],
        })
        .unwrap(),
    );
    let out_path = dir.path().join("gset.json");
    let out = run(&[
        "gen",
        "gset",
        "--g",
        table.to_str().unwrap(),
        "--h",
        table.to_str().unwrap(),
        "--action",
        action.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let check = run(&["check", out_path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    // The generated file must match the bundled construction exactly.
    let loaded = io::system_from_json(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let bundled = bundled_systems().remove(0).1;
    for tag in CoeffTag::ALL {
        assert_eq!(loaded.tensor(tag), bundled.tensor(tag));
    }
}
