use std::process::{Command, Output};

use ritt_lab::io::parse_poly;
use ritt_lab::semigroup::multiplicatively_dependent;
use ritt_lab::Poly;
use serde_json::Value;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ritt-lab"));
    cmd.args(args).env_remove("RITT_LAB_BOUNDS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn schema() -> jsonschema::Validator {
    let raw: Value = serde_json::from_str(include_str!("report.schema.json")).unwrap();
    jsonschema::validator_for(&raw).expect("schema compiles")
}

fn poly(v: &Value) -> Poly {
    parse_poly(v.as_str().expect("polynomial string")).unwrap()
}

fn leading_of_iterate(p: &Poly, k: usize) -> ritt_lab::Rat {
    p.iterate(k).leading().unwrap().clone()
}

/// Re-checks one certificate against the generators it names.
fn recheck(a: &Poly, b: &Poly, cert: &Value) {
    let int = |key: &str| cert[key].as_u64().unwrap() as usize;
    match cert["kind"].as_str().unwrap() {
        "CommonIterate" => assert_eq!(a.iterate(int("k")), b.iterate(int("l"))),
        "TwistedPair" => {
            let (ak, bl) = (a.iterate(int("k")), b.iterate(int("l")));
            assert_eq!(ak.compose(&ak), ak.compose(&bl));
            assert_eq!(bl.compose(&bl), bl.compose(&ak));
        }
        "DegreeObstruction" => {
            assert_eq!(a.degree(), Some(int("n")));
            assert_eq!(b.degree(), Some(int("m")));
            assert!(multiplicatively_dependent(int("n") as u64, int("m") as u64).is_none());
        }
        "LeadingCoeffObstruction" => {
            let (n, m) = (int("n"), int("m"));
            assert_eq!(a.leading().unwrap().to_string(), cert["lc_a"]);
            assert_eq!(b.leading().unwrap().to_string(), cert["lc_b"]);
            for k in 1..=3usize {
                for l in 1..=3usize {
                    if (n as u64).pow(k as u32) == (m as u64).pow(l as u32) {
                        assert_ne!(leading_of_iterate(a, k), leading_of_iterate(b, l));
                    }
                }
            }
        }
        "CommutesWithIterate" => {
            let bl = b.iterate(int("l"));
            assert_eq!(a.compose(&bl), bl.compose(a));
        }
        "BoundExhausted" => {}
        other => panic!("unknown certificate kind {other}"),
    }
}

fn recheck_verdict(doc: &Value) {
    let gens: Vec<Poly> = doc["input"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(poly)
        .collect();
    for side in ["left_amenable", "right_amenable"] {
        for c in doc["result"][side]["certificates"].as_array().unwrap() {
            let (g, pv) = (
                c["generator"].as_u64().unwrap(),
                c["pivot"].as_u64().unwrap(),
            );
            recheck(&gens[g as usize], &gens[pv as usize], &c["certificate"]);
        }
    }
}

#[test]
fn classify_worked_pair() {
    let doc = report(&["classify", "-(z^4+z^2)", "z^4+z^2"]);
    let r = &doc["result"];
    assert_eq!(r["left_amenable"]["status"], "No");
    assert_eq!(r["right_amenable"]["status"], "Yes");
    assert_eq!(r["amenable"], "No");
    let right = r["right_amenable"]["certificates"].as_array().unwrap();
    assert!(right
        .iter()
        .all(|c| c["certificate"]["kind"] == "TwistedPair" && c["certificate"]["k"] == 1));
    let left = r["left_amenable"]["certificates"].as_array().unwrap();
    assert!(left
        .iter()
        .any(|c| c["certificate"]["kind"] == "LeadingCoeffObstruction"));
    recheck_verdict(&doc);
}

#[test]
fn classify_free_pair_cites_freeness() {
    let doc = report(&["classify", "z^2+1", "z^3+1"]);
    assert_eq!(doc["result"]["amenable"], "No");
    let cites = doc["citations"].as_array().unwrap();
    assert!(cites.iter().any(|c| c
        .as_str()
        .unwrap()
        .contains("free subsemigroup of rank two")));
    recheck_verdict(&doc);
}

#[test]
fn classify_sign_pair() {
    let doc = report(&["classify", "-z^3", "z^3"]);
    assert_eq!(doc["result"]["amenable"], "Yes");
    assert_eq!(doc["result"]["all_special"], true);
    recheck_verdict(&doc);
}

#[test]
fn simple_payloads() {
    assert_eq!(report(&["chebyshev", "3"])["result"], "4*z^3 - 3*z");
    assert_eq!(report(&["compose", "z^2", "z^3"])["result"], "z^6");
    assert_eq!(
        report(&["iterate", "z^2+1", "2"])["result"],
        "z^4 + 2*z^2 + 2"
    );
    let d = report(&["decompose", "z^4+z^2", "2"]);
    assert_eq!(d["result"]["right"], "z^2");
    assert_eq!(d["result"]["left"], "z^2 + z");
    let f = report(&["folner", "z^3+z", "--d", "2", "--x", "0,1", "--n", "99"]);
    assert_eq!(f["result"]["ratio"], "1/100");
}

#[test]
fn classify_flags_after_generators() {
    let doc = report(&[
        "classify",
        "-(z^4+z^2)",
        "z^4+z^2",
        "--tmax",
        "3",
        "--lmax=2",
    ]);
    assert_eq!(doc["bounds"]["tmax"], 3);
    assert_eq!(doc["bounds"]["lmax"], 2);
    assert_eq!(doc["input"]["generators"].as_array().unwrap().len(), 2);
    assert!(!run(&["classify", "z^2", "z^3", "--tmax"]).status.success());
}

#[test]
fn every_command_matches_schema() {
    let v = schema();
    let cases: &[&[&str]] = &[
        &["compose", "z^2", "z^3"],
        &["iterate", "z^2-2", "3"],
        &["decompose", "z^6+z^2"],
        &["decompose", "z^6+z^2", "3"],
        &["special", "-(2/3)*z^3 + 1/2"],
        &["special", "4*z^3-3*z"],
        &["equiv", "z^3+z", "z^3+z^2"],
        &["aut", "z^5+z", "--iterates", "2"],
        &["gsym", "z^4+1"],
        &["chebyshev", "5"],
        &["common-iterate", "-z^3", "z^3"],
        &["twisted", "z^2", "z^3"],
        &["classify", "z^2+1", "z^4+2*z^2+2", "--tmax", "3"],
        &["classify", "-z^3", "z^3"],
        &["free-collision", "z^2", "z^2+1", "--wordmax", "3"],
        &[
            "semidirect",
            "z^4+z^2",
            "--d",
            "2",
            "--op",
            "mul",
            "--x",
            "1,1",
            "--y",
            "1,0",
        ],
        &[
            "semidirect",
            "z^4+z^2",
            "--d",
            "2",
            "--op",
            "realize",
            "--x",
            "1,2",
        ],
        &["semidirect", "z^3+z", "--d", "2", "--op", "left-amenable"],
        &["folner", "z^3+z", "--d", "2", "--x", "0,2", "--n", "9"],
        &["ritt1", "z^2", "z^3", "z^3", "z^2"],
        &[
            "ritt2-verify",
            "power",
            "--r",
            "z+1",
            "--n",
            "3",
            "--s",
            "2",
        ],
        &["ritt2-verify", "chebyshev", "--m", "3", "--n", "4"],
    ];
    for args in cases {
        let doc = report(args);
        if let Err(e) = v.validate(&doc) {
            panic!("{args:?}: {e}\n{doc:#}");
        }
    }
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["classify", "-(z^4+z^2)", "z^4+z^2", "z^4+z^2+0"];
    let first = run(&args).stdout;
    for threads in ["1", "4"] {
        let again = run_env(&args, &[("RAYON_NUM_THREADS", threads)]).stdout;
        assert_eq!(first, again);
    }
}

#[test]
fn unknown_is_a_result() {
    let out = run(&["common-iterate", "-z^3", "z^3", "--tmax", "1"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["verdict"], "Unknown");
    assert_eq!(doc["result"]["certificate"]["kind"], "BoundExhausted");
}

#[test]
fn bounds_from_environment() {
    let out = run_env(&["twisted", "z^2", "z^4"], &[("RITT_LAB_BOUNDS", "2,3,4")]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["bounds"]["tmax"], 2);
    assert_eq!(doc["bounds"]["wordmax"], 4);
    // flags win over the environment
    let out = run_env(
        &["twisted", "z^2", "z^4", "--tmax", "5"],
        &[("RITT_LAB_BOUNDS", "2,3,4")],
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["bounds"]["tmax"], 5);
    let out = run_env(&["twisted", "z^2", "z^4"], &[("RITT_LAB_BOUNDS", "2,3")]);
    assert!(!out.status.success());
}

#[test]
fn input_errors_go_to_stderr() {
    let out = run(&["special", "z^"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("offset 2"), "{err}");

    let out = run(&["compose", "x+1", "z"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("'x'"));

    let out = run(&["compose", "z^-1", "z"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative exponent"));

    assert!(!run(&["classify", "z"]).status.success());
    assert!(!run(&["decompose", "z^4", "3"]).status.success());
    assert!(!run(&["ritt1", "z^2", "z^3", "z^2", "z^2"]).status.success());
    assert!(!run(&[
        "semidirect",
        "z^4+z^2",
        "--d",
        "2",
        "--op",
        "mul",
        "--x",
        "1,1"
    ])
    .status
    .success());
    assert!(!run(&["chebyshev"]).status.success());
}
