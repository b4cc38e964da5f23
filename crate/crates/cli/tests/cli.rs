use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nakajima"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(input) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(input.as_bytes())
            .unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn validate_verdicts() {
    let ok = run(&["validate", &fixture("fig2.json")], None);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).ends_with("admissible\n"));

    let bad = run(&["validate", &fixture("inadmissible.json")], None);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("inadmissible at level 3"));

    assert_eq!(
        code(&run(&["validate", &fixture("malformed.json")], None)),
        2
    );
    assert_eq!(
        code(&run(&["validate", &fixture("corrupted.json")], None)),
        1
    );
    assert_eq!(code(&run(&["validate", "no-such-file.json"], None)), 2);
    assert_eq!(code(&run(&["frobnicate"], None)), 2);
}

#[test]
fn equations_text() {
    let o = run(&["equations", &fixture("fig2.json")], None);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "z1^2 - z2*z4\nz1^2*z2 - z3*z5\n");

    let o = run(&["equations", "--minimal", &fixture("fig3.json")], None);
    assert_eq!(
        stdout(&o),
        "eliminated z1 = z2*z5\nz2*z5 - z3*z6\nz5*z6 - z4*z7\n"
    );

    let o = run(&["equations", "--minimal", &fixture("smooth.json")], None);
    assert_eq!(stdout(&o), "smooth: 0 relations, ambient = C^3\n");

    let o = run(&["equations", &fixture("inadmissible.json")], None);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
}

#[test]
fn equations_json_is_one_document() {
    let o = run(
        &[
            "equations",
            "--minimal",
            "--format",
            "json",
            &fixture("fig3.json"),
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 3);
    assert_eq!(v["minimal"]["generators"].as_array().unwrap().len(), 2);
    assert_eq!(
        v["minimal"]["eliminated"]["z1"],
        serde_json::json!(["z2", "z5"])
    );

    let o = run(
        &["equations", "--format", "json", &fixture("fig2.json")],
        None,
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["minimal"].is_null());
}

#[test]
fn hilbert_counts() {
    for (file, count) in [("fig2.json", 5), ("triangle-k2.json", 4), ("fig3.json", 6)] {
        let o = run(&["hilbert", &fixture(file)], None);
        assert_eq!(code(&o), 0);
        assert!(
            stdout(&o).contains(&format!("embedding dimension: {count}")),
            "{file}"
        );
    }
    let o = run(&["hilbert", &fixture("fig3.json")], None);
    assert!(stdout(&o).contains("Q: e1 = m1\n"));

    let o = run(
        &["hilbert", "--format", "json", &fixture("fig3.json")],
        None,
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["embedding_dimension"], 6);
    assert_eq!(v["q"]["1"], 1);
}

#[test]
fn vertices_of_box() {
    let doc = stdout(&run(&["example", "box", "2", "3", "4"], None));
    let o = run(&["vertices", "--format", "json", "-"], Some(&doc));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_reports() {
    let o = run(
        &[
            "verify",
            "--level",
            "exhaustive",
            "--seed",
            "3",
            &fixture("fig3.json"),
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 3);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));

    let o = run(&["verify", &fixture("corrupted.json")], None);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"][0]["pass"], false);

    let o = run(&["verify", &fixture("inadmissible.json")], None);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"][1]["witness"]["level"], 3);

    let doc = stdout(&run(&["example", "simplex(8,2)"], None));
    let o = run(&["verify", "--level", "quick", "-"], Some(&doc));
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let skipped: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c.get("skipped").is_some())
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(skipped.contains(&"hilbert") && skipped.contains(&"semigroup"));

    assert_eq!(code(&run(&["verify", &fixture("malformed.json")], None)), 2);
}

#[test]
fn examples() {
    let o = run(&["example", "fig3"], None);
    assert_eq!(stdout(&o), "{\"d\":4,\"rows\":[[1],[1,0],[2,-1,-1]]}\n");
    let o = run(&["example", "simplex(4,2)"], None);
    assert_eq!(stdout(&o), "{\"d\":4,\"rows\":[[2],[0,1],[0,0,1]]}\n");
    let o = run(&["example", "box(2,3)"], None);
    assert_eq!(stdout(&o), "{\"d\":3,\"rows\":[[2],[3,0]]}\n");

    let o = run(&["example", "cube"], None);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("smooth3"));
}

#[test]
fn corpus_round_trip() {
    let cases = [
        ("fig2", "z1^2 - z2*z4\nz1^2*z2 - z3*z5\n"),
        ("triangle(3)", "z1^3 - z2*z4\nz4 - z3*z5\n"),
        ("fig3", "z1 - z2*z5\nz1 - z3*z6\nz5*z6 - z4*z7\n"),
        ("simplex(4,2)", "z1^2 - z2*z5\nz2 - z3*z6\nz3 - z4*z7\n"),
        ("box(2,3)", "z1^2 - z2*z4\nz1^3 - z3*z5\n"),
    ];
    for (name, want) in cases {
        let doc = stdout(&run(&["example", name], None));
        let o = run(&["equations", "-"], Some(&doc));
        assert_eq!(code(&o), 0, "{name}");
        assert_eq!(stdout(&o), want, "{name}");
    }
}
