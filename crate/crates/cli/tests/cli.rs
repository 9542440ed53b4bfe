use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn motivium(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motivium"))
        .args(args)
        .env("MOTIVIUM_FIXTURES", fixtures())
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = motivium(args);
    let code = out.status.code().expect("exit code");
    let stderr = String::from_utf8_lossy(&out.stderr);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {stderr}"));
    (v, code)
}

fn characters(v: &Value) -> Vec<u64> {
    let mut c: Vec<u64> = v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["character"][0].as_u64().unwrap())
        .collect();
    c.sort_unstable();
    c
}

#[test]
fn decompose_f7_c3() {
    let (v, code) = report(&["decompose", "f7_c3.json"]);
    assert_eq!(code, 0);
    assert_eq!(characters(&v), [1, 2, 4]);
    assert!(v["summands"].as_array().unwrap().iter().all(|s| s["dim"] == 1));
}

#[test]
fn decompose_f2_c3() {
    let (v, code) = report(&["decompose", "f2_c3.json"]);
    assert_eq!(code, 0);
    let dims: Vec<(u64, u64)> = v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["dim"].as_u64().unwrap(), s["residue_degree"].as_u64().unwrap()))
        .collect();
    assert_eq!(dims, [(1, 1), (2, 2)]);
}

#[test]
fn decompose_zero_module() {
    let (v, code) = report(&["decompose", "modules/zero_c3.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["summands"], Value::Array(vec![]));
}

#[test]
fn tensor_of_inverse_characters() {
    let (v, code) = report(&["tensor", "modules/a1_f7.json", "modules/a2_f7.json", "--decompose"]);
    assert_eq!(code, 0);
    let s = v["decomposition"]["summands"].as_array().unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s[0]["character"][0], 1);
    assert_eq!(s[0]["multiplicity"], 1);
}

#[test]
fn induce_from_trivial_subgroup() {
    let (v, code) = report(&["induce", "modules/trivial_over_1.json", "--group", "groups/C3.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["module"]["dim"], 3);
    let (named, _) = report(&["induce", "modules/trivial_over_1.json", "--group", "C3"]);
    assert_eq!(named["module"]["dim"], 3);
}

#[test]
fn restrict_to_trivial_subgroup() {
    let (v, code) = report(&["restrict", "modules/a_f2.json", "--subgroup", "[]", "--decompose"]);
    assert_eq!(code, 0);
    let s = v["decomposition"]["summands"].as_array().unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!((s[0]["dim"].as_u64(), s[0]["multiplicity"].as_u64()), (Some(1), Some(2)));
}

#[test]
fn picard_order_of_cubic_characters() {
    for f in ["modules/a1_f7.json", "modules/a2_f7.json"] {
        let (v, code) = report(&["picard-order", f]);
        assert_eq!(code, 0);
        assert_eq!(v["picard_order"], 3);
    }
    let (v, _) = report(&["picard-order", "f7_c3.json"]);
    assert_eq!(v["picard_order"], Value::Null);
}

#[test]
fn tits_verdicts_and_exit_codes() {
    let (v, code) = report(&["tits-equiv", "tits/identical.json"]);
    assert_eq!((v["verdict"].as_str(), code), (Some("PASS"), 0));
    let (v, code) = report(&["tits-equiv", "tits/perturbed_special.json"]);
    assert_eq!((v["verdict"].as_str(), code), (Some("FAIL"), 1));
    assert_eq!(v["witness"]["label"], "L1");
    assert_eq!(v["witness"]["vertices"], serde_json::json!(["3"]));
    let (v, code) = report(&["tits-equiv", "tits/perturbed_nonspecial.json"]);
    assert_eq!((v["verdict"].as_str(), code), (Some("PASS"), 0));
    let (v, code) = report(&["tits-equiv", "tits/condition_i.json"]);
    assert_eq!((v["verdict"].as_str(), code), (Some("FAIL"), 1));
    assert_eq!(v["witness"]["label"], "K4");
}

#[test]
fn non_equivariant_map_is_an_input_error() {
    let out = motivium(&["tits-equiv", "tits/nonequivariant.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("equivariant"));
    assert_eq!(motivium(&["tits-equiv", "tits/bad_star.json"]).status.code(), Some(2));
}

#[test]
fn trace_compare_fixtures() {
    let (v, code) = report(&["trace-compare", "trace/counterexample.json"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "FAIL");
    assert_eq!(v["witness"]["label"], "F");
    assert_eq!(v["isomorphic"], false);
    assert_eq!(v["tate_traces_equal"], true);
    for f in ["trace/identical.json", "trace/tensor_round_trip.json"] {
        let (v, code) = report(&["trace-compare", f]);
        assert_eq!((v["verdict"].as_str(), code), (Some("PASS"), 0), "{f}");
        assert_eq!(v["isomorphic"], true);
    }
    let (v, code) = report(&["trace-compare", "trace/anisotropic.json"]);
    assert_eq!((v["verdict"].as_str(), code), (Some("PASS"), 0));
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn input_errors_exit_2() {
    for f in ["modules/malformed.json", "modules/wrong_type.json", "missing.json"] {
        let out = motivium(&["decompose", f]);
        assert_eq!(out.status.code(), Some(2), "{f}");
        assert!(out.stdout.is_empty());
    }
    let out = motivium(&["decompose", "modules/wrong_type.json"]);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("`dim`") && msg.contains("line"), "{msg}");
    assert_eq!(motivium(&["decompose", "f7_c3.json", "--prime", "5"]).status.code(), Some(2));
}

#[test]
fn non_representation_exits_3() {
    assert_eq!(motivium(&["decompose", "modules/bad_relation.json"]).status.code(), Some(3));
    assert_eq!(motivium(&["validate", "modules/bad_relation.json"]).status.code(), Some(3));
}

#[test]
fn validate_recognizes_documents() {
    let cases = [
        ("groups/S4.json", "group"),
        ("f7_c3.json", "module"),
        ("tits/a3_outer_context.json", "context"),
        ("tits/identical.json", "tits-bundle"),
        ("trace/counterexample.json", "trace-bundle"),
    ];
    for (f, kind) in cases {
        let (v, code) = report(&["validate", f]);
        assert_eq!((v["kind"].as_str(), code), (Some(kind), 0), "{f}");
    }
}

#[test]
fn reports_are_reproducible() {
    for args in [
        ["decompose", "modules/s3_natural_f3.json"],
        ["trace-compare", "trace/identical.json"],
        ["tits-equiv", "tits/perturbed_special.json"],
    ] {
        let a = motivium(&args);
        let b = motivium(&args);
        assert_eq!(a.stdout, b.stdout);
    }
    let (v, _) = report(&["decompose", "f7_c3.json", "--seed", "17"]);
    assert_eq!(v["seed"], 17);
    assert_eq!(v["input_sha256"].as_str().map(str::len), Some(64));
}

#[test]
fn out_flag_and_quiet() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let out = motivium(&["decompose", "f2_c3.json", "--quiet", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let loud = motivium(&["decompose", "f2_c3.json"]);
    assert_eq!(std::fs::read(&path).unwrap(), loud.stdout);
}

#[test]
fn seeds_do_not_change_classes() {
    let (a, _) = report(&["decompose", "modules/s3_natural_f3.json", "--seed", "1"]);
    let (b, _) = report(&["decompose", "modules/s3_natural_f3.json", "--seed", "99"]);
    let shape = |v: &Value| -> Vec<(u64, u64)> {
        v["summands"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| (s["dim"].as_u64().unwrap(), s["multiplicity"].as_u64().unwrap()))
            .collect()
    };
    assert_eq!(shape(&a), shape(&b));
}

const CORPUS: [&str; 6] = [
    "f7_c3.json",
    "modules/s3_natural_f3.json",
    "tits/identical.json",
    "tits/perturbed_special.json",
    "trace/counterexample.json",
    "trace/identical.json",
];

fn command_for(f: &str) -> &'static str {
    if f.starts_with("tits/") {
        "tits-equiv"
    } else if f.starts_with("trace/") {
        "trace-compare"
    } else {
        "decompose"
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn corrupted_inputs_respect_exit_codes(which in 0..CORPUS.len(), cut in 0.0f64..1.0, byte in any::<u8>(), mode in 0..3u8) {
        let name = CORPUS[which];
        let dir = fixtures().join(name).parent().unwrap().to_path_buf();
        let mut text = std::fs::read(fixtures().join(name)).unwrap();
        let at = ((text.len() as f64) * cut) as usize % text.len();
        match mode {
            0 => text.truncate(at),
            1 => text[at] = byte,
            _ => { text.insert(at, b'}'); }
        }
        // keep relative references resolvable
        let tmp = tempfile::Builder::new().suffix(".json").tempfile_in(&dir).unwrap();
        std::fs::write(tmp.path(), &text).unwrap();
        let out = motivium(&[command_for(name), tmp.path().to_str().unwrap()]);
        let code = out.status.code().unwrap();
        prop_assert!([0, 1, 2, 3].contains(&code), "exit {code}: {}", String::from_utf8_lossy(&out.stderr));
        if code >= 2 {
            prop_assert!(out.stdout.is_empty());
            prop_assert!(!out.stderr.is_empty());
        } else {
            prop_assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
        }
        if mode != 1 && serde_json::from_slice::<Value>(&text).is_err() {
            prop_assert_eq!(code, 2);
        }
    }
}
