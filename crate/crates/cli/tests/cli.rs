use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

use polytorsion::{BasedChainComplex, PolytopeClass, TorsionClass};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn polytorsion() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_polytorsion"));
    cmd.current_dir(root()).env_remove("POLYTORSION_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    polytorsion().args(args).output().expect("spawn polytorsion")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn fox_of_commutator() {
    let out = run(&["fox", "--gens", "x y", "--rel", "x y X Y", "--wrt", "x"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["derivative"], json!([["1", 1], ["x y X", -1]]));
    assert_eq!(v["derivative_text"], "1 - x y X");
    assert_eq!(v["abelianized_text"], "-y + 1");
}

#[test]
fn trefoil_norm() {
    let out = run(&["norm", "corpus/trefoil.pres", "--phi", "1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"x\":1}\n");
    let out = run(&["norm", "corpus/torus_2_5.pres", "--phi", "-2"]);
    assert_eq!(json_of(&out), json!({"x": 6}));
}

#[test]
fn missing_file_is_an_io_error() {
    let out = run(&["knot", "corpus/no_such_knot.pres"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["kind"], "io");
}

#[test]
fn parse_errors_carry_a_position() {
    let out = run(&["knot", "--gens", "x y", "--rel", "x q"]);
    assert_eq!(out.status.code(), Some(1));
    let err = &json_of(&out)["error"];
    assert_eq!(err["kind"], "parse_error");
    assert_eq!(err["line"], 2);
    assert!(err["column"].as_u64().is_some());
}

#[test]
fn domain_errors_exit_one() {
    let out = run(&["torsion", "--gens", "x y", "--rel", "x^2", "--rel", "y^3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["error"]["kind"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["knot"]).status.code(), Some(2));
    assert_eq!(run(&["norm", "corpus/trefoil.pres"]).status.code(), Some(2));
    assert_eq!(
        run(&["fox", "corpus/trefoil.pres", "--wrt", "q"]).status.code(),
        Some(2)
    );
}

#[test]
fn emitted_complex_round_trips() {
    let out = run(&["torsion", "corpus/figure_eight.pres", "--emit-complex"]);
    assert!(out.status.success());
    let v = json_of(&out);
    let complex = BasedChainComplex::from_json(&v["complex"]).unwrap();
    assert_eq!(complex.to_json(), v["complex"]);

    let path = std::env::temp_dir().join(format!("polytorsion-complex-{}.json", std::process::id()));
    std::fs::write(&path, v["complex"].to_string()).unwrap();
    let again = run(&["torsion", "--complex", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(again.status.success());
    let w = json_of(&again);
    assert_eq!(w["torsion"], v["torsion"]);
    assert_eq!(
        TorsionClass::from_json(&w["torsion"]).unwrap(),
        TorsionClass::from_json(&v["torsion"]).unwrap()
    );
}

#[test]
fn polytope_json_round_trips() {
    let v = json_of(&run(&["polytope", "corpus/torus_2_5.pres"]));
    let class = |v: &Value| PolytopeClass::from_json(v).unwrap();
    let p = class(&v["torsion_polytope"]);
    assert_eq!(p.to_json(), v["torsion_polytope"]);
    assert_eq!(class(&v["one_relator"]["x_first"]), p);
    assert_eq!(class(&v["one_relator"]["y_first"]), p);
}

#[test]
fn pretty_and_compact_agree() {
    let a = json_of(&run(&["knot", "corpus/trefoil.pres"]));
    let b = json_of(&run(&["--pretty", "knot", "corpus/trefoil.pres"]));
    assert_eq!(a, b);
}

#[test]
fn selftest_table_passes() {
    let out = run(&["selftest"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("polytorsion selftest, seed 0\n"));
    let last = text.lines().last().unwrap();
    let (passed, total) = last.split_once(" of ").unwrap();
    assert!(total.starts_with(passed), "{last}");
}

#[test]
fn seed_from_environment_wins() {
    let out = polytorsion()
        .args(["selftest", "--json", "--seed", "5"])
        .env("POLYTORSION_SEED", "9")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["passed"], true);

    let bad = polytorsion()
        .args(["selftest"])
        .env("POLYTORSION_SEED", "nine")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn different_seeds_still_pass() {
    for seed in ["1", "12345"] {
        let v = json_of(&run(&["selftest", "--json", "--seed", seed]));
        assert_eq!(v["passed"], true, "seed {seed}");
    }
}
