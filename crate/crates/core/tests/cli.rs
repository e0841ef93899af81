use std::path::PathBuf;
use std::process::{Command, Output};

use fpfunctor::cli::{HilbertOutput, ModuleSummary, Report};
use fpfunctor::ClosedSet;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn fpfunctor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpfunctor")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = fpfunctor(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    fpfunctor(args).status.code().unwrap()
}

fn scratch_file(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("fpfunctor-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

/// Parses `text` and prints it again the way the binary does.
fn reemit<T: Serialize + DeserializeOwned>(text: &str) -> String {
    let value: T = serde_json::from_str(text).unwrap();
    serde_json::to_string_pretty(&value).unwrap() + "\n"
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["hilbert", &data("s21.json"), "--prime", "2", "--n-max", "3"]), "1, 0, 0\n");
    assert_eq!(stdout(&["eval", &data("forgetful.json"), "--at", "Z/8"]), "Z/8\n");
    assert_eq!(stdout(&["member", &data("s21.json"), "--set", &data("apq_all.json")]), "true\n");
}

#[test]
fn subcommands() {
    assert_eq!(stdout(&["hilbert", &data("hom_z2.json"), "--prime", "2"]), "1, 1, 1, 1, 1\n");
    assert_eq!(stdout(&["hilbert", &data("forgetful.json"), "--prime", "3", "--polynomial"]), "1n + 0 for n >= 1\n");
    assert_eq!(stdout(&["eval", &data("tensor_z2.json"), "--at-module", &data("z8_plus_z2.json")]), "Z/2+Z/2\n");
    assert_eq!(stdout(&["eval", &data("s21.json"), "--at", "Z/2+Z/4+Z"]), "Z/2\n");
    assert_eq!(stdout(&["eval", &data("s21.json"), "--at", "0"]), "0\n");
    assert_eq!(stdout(&["member", &data("forgetful.json"), "--set", &data("q_only.json")]), "false\n");
    assert_eq!(stdout(&["is-closed", "--set", &data("q_only.json")]), "true\n");
    assert_eq!(stdout(&["is-closed", "--set", &data("a2_only.json")]), "false\n");
    let locus = stdout(&["vlocus", &data("hom_z2.json")]);
    assert!(locus.contains("P: all p except {2}"), "{locus}");
    let report = stdout(&["invariants", &data("s21.json")]);
    assert!(report.contains("rank: 0"), "{report}");
    assert!(report.contains("hilbert at 2: 1, 0, 0, 0, 0"), "{report}");
}

#[test]
fn exit_codes() {
    let garbage = scratch_file("garbage.json", "{\"ring\": \"ZZ\", \"A\": 3");
    assert_eq!(code(&["invariants", &garbage]), 2);
    assert_eq!(code(&["invariants", "/nonexistent/functor.json"]), 2);
    let ill_defined = scratch_file(
        "ill.json",
        r#"{"ring":"ZZ","A":{"generators":1,"relations":[["2"]]},"B":{"generators":1,"relations":[["3"]]},"alpha":[["1"]]}"#,
    );
    assert_eq!(code(&["vlocus", &ill_defined]), 2);
    assert_eq!(code(&["eval", &data("s21.json"), "--at", "Z/0"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["hilbert", &data("s21.json"), "--prime", "2", "--n-max", "3", "--polynomial"]), 2);
    assert_eq!(code(&["vlocus", &data("qq_ring.json")]), 3);
    assert_eq!(code(&["member", &data("s21.json"), "--set", &data("a2_only.json")]), 4);
    assert_eq!(code(&["hilbert", &data("s21.json"), "--prime", "4"]), 4);
    assert_eq!(code(&["--help"]), 0);

    let out = fpfunctor(&["member", &data("s21.json"), "--set", &data("a2_only.json")]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not closed"));
}

#[test]
fn json_output_round_trips_byte_for_byte() {
    for f in ["s21.json", "forgetful.json", "hom_z2.json", "tensor_z2.json"] {
        let text = stdout(&["--format", "json", "invariants", &data(f)]);
        assert_eq!(reemit::<Report>(&text), text, "{f}");
        let text = stdout(&["--format", "json", "vlocus", &data(f)]);
        assert_eq!(reemit::<ClosedSet>(&text), text, "{f}");
        let text = stdout(&["--format", "json", "hilbert", &data(f), "--prime", "2"]);
        assert_eq!(reemit::<HilbertOutput>(&text), text, "{f}");
        let text = stdout(&["--format", "json", "eval", &data(f), "--at", "Z/4+Z/9"]);
        assert_eq!(reemit::<ModuleSummary>(&text), text, "{f}");
    }
}

#[test]
fn text_and_json_agree() {
    for f in ["s21.json", "forgetful.json", "hom_z2.json", "tensor_z2.json"] {
        for p in ["2", "3"] {
            let text = stdout(&["hilbert", &data(f), "--prime", p, "--n-max", "6"]);
            let json: HilbertOutput =
                serde_json::from_str(&stdout(&["hilbert", &data(f), "--prime", p, "--n-max", "6", "--format", "json"])).unwrap();
            let values: Vec<i64> = text.trim().split(", ").map(|x| x.parse().unwrap()).collect();
            assert_eq!(Some(values), json.values, "{f} at {p}");
        }
        let text = stdout(&["invariants", &data(f)]);
        let report: Report = serde_json::from_str(&stdout(&["invariants", &data(f), "--format", "json"])).unwrap();
        assert_eq!(text.trim(), report.to_text(), "{f}");
        assert!(text.contains(&format!("rank: {}\n", report.rank)));

        let text = stdout(&["eval", &data(f), "--at", "Z/8+Z/3"]);
        let json: ModuleSummary = serde_json::from_str(&stdout(&["eval", &data(f), "--at", "Z/8+Z/3", "--format", "json"])).unwrap();
        assert_eq!(text.trim(), json.structure);
    }
}
