use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn clusterlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterlab"))
        .args(args)
        .output()
        .expect("spawn clusterlab")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("clusterlab-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn count_values() {
    let out = clusterlab(&["count", "--q", "2", "--n", "4", "--k", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("35"));

    let out = clusterlab(&[
        "count", "--q", "2", "--n", "4", "--k", "0", "--output", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["count"], "1");
    assert_eq!(v["polynomial"], "1");

    let v = json(&clusterlab(&[
        "--output", "json", "count", "--q", "3", "--n", "5", "--k", "2",
    ]));
    assert_eq!(v["count"], "1210");
}

#[test]
fn count_rejects_bad_fields() {
    let out = clusterlab(&["count", "--q", "6", "--n", "4", "--k", "2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("prime power"));
    assert_eq!(code(&clusterlab(&["count", "--q", "2", "--n", "4"])), 2);
    assert_eq!(
        code(&clusterlab(&["count", "--q", "2", "--n", "2", "--k", "3"])),
        2
    );
}

#[test]
fn generated_star_checks_as_a_star() {
    for (n, k, center, size) in [
        ("4", "2", "1,0,0,0", 7),
        ("5", "2", "1,0,0,0,0", 15),
        ("4", "1", "0,1,1,0", 1),
    ] {
        let out = clusterlab(&[
            "generate-star",
            "--q",
            "2",
            "--n",
            n,
            "--k",
            k,
            "--center",
            center,
        ]);
        assert_eq!(code(&out), 0);
        let text = stdout(&out);
        let file: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(file["subspaces"].as_array().unwrap().len(), size);

        let path = scratch(&format!("star-{n}-{k}.json"), &text);
        let out = clusterlab(&[
            "check",
            path.to_str().unwrap(),
            "--output",
            "json",
            "--require",
            "star,intersecting",
        ]);
        assert_eq!(code(&out), 0);
        let v = json(&out);
        let props = &v["properties"];
        assert_eq!(props["star"], true);
        assert_eq!(props["covering-triple-free"], true);
        assert_eq!(props["3-cluster-free"], true);
        let expected: Vec<u64> = center.split(',').map(|x| x.parse().unwrap()).collect();
        let centers = props["star_centers"].as_array().unwrap();
        assert!(centers.iter().any(|c| c[0]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .eq(expected.iter().copied())));
    }
}

#[test]
fn generate_star_rejects_zero_center() {
    assert_eq!(
        code(&clusterlab(&[
            "generate-star",
            "--q",
            "2",
            "--n",
            "4",
            "--k",
            "2",
            "--center",
            "0,0,0,0"
        ])),
        2
    );
    assert_eq!(
        code(&clusterlab(&[
            "generate-star",
            "--q",
            "2",
            "--n",
            "4",
            "--k",
            "2",
            "--center",
            "1,0,0"
        ])),
        2
    );
    assert_eq!(
        code(&clusterlab(&[
            "generate-star",
            "--q",
            "2",
            "--n",
            "4",
            "--k",
            "2",
            "--center",
            "2,0,0,0"
        ])),
        2
    );
}

#[test]
fn check_reports_covering_triple() {
    let path = scratch(
        "witness.json",
        r#"{"q":2,"n":4,"k":2,"subspaces":[[[1,0,0,0],[0,1,0,0]],[[0,0,1,0],[0,0,0,1]],[[1,0,0,0],[0,0,1,0]]]}"#,
    );
    let out = clusterlab(&["check", path.to_str().unwrap(), "--output", "json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["properties"]["covering-triple-free"], false);
    let w = &v["properties"]["covering_triple_witness"];
    assert_eq!(w["members"].as_array().unwrap().len(), 3);
    // <e1,e3> is the only member split by the other two
    assert_eq!(w["pivot"], serde_json::json!([[1, 0, 0, 0], [0, 0, 1, 0]]));

    let out = clusterlab(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("pivot <1,0,0,0; 0,0,1,0>"));
}

#[test]
fn check_empty_family_passes() {
    let path = scratch("empty.json", r#"{"q":2,"n":4,"k":2,"subspaces":[]}"#);
    let out = clusterlab(&["check", path.to_str().unwrap(), "--d", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn check_rejects_bad_files() {
    let dup = scratch(
        "dup.json",
        r#"{"q":2,"n":4,"k":2,"subspaces":[[[1,1,0,0],[0,1,0,0]],[[1,0,0,0],[0,1,0,0]]]}"#,
    );
    assert_eq!(code(&clusterlab(&["check", dup.to_str().unwrap()])), 2);
    let junk = scratch("junk.json", "{\"q\":2");
    assert_eq!(code(&clusterlab(&["check", junk.to_str().unwrap()])), 2);
    assert_eq!(code(&clusterlab(&["check", "/nonexistent/family.json"])), 2);
}

#[test]
fn search_examples() {
    let out = clusterlab(&[
        "search",
        "--q",
        "2",
        "--n",
        "4",
        "--k",
        "2",
        "--predicate",
        "covering-triple",
        "--output",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["optimum"], 7);
    assert_eq!(v["optimality_proved"], true);
    assert_eq!(v["star_bound"], "7");

    let out = clusterlab(&[
        "search",
        "--q",
        "2",
        "--n",
        "3",
        "--k",
        "2",
        "--predicate",
        "d-cluster",
        "--d",
        "3",
        "--output",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["optimum"], 3);

    let out = clusterlab(&[
        "search",
        "--q",
        "2",
        "--n",
        "4",
        "--k",
        "2",
        "--predicate",
        "3-cluster",
        "--all-maxima",
        "--output",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["all_maxima_count"], 15);
    assert_eq!(v["star_maxima_count"], 15);
}

#[test]
fn search_json_is_deterministic() {
    let args = [
        "search",
        "--q",
        "2",
        "--n",
        "4",
        "--k",
        "2",
        "--predicate",
        "covering-triple",
        "--output",
        "json",
    ];
    assert_eq!(clusterlab(&args).stdout, clusterlab(&args).stdout);
}

#[test]
fn search_timeout() {
    let out = clusterlab(&[
        "search",
        "--q",
        "2",
        "--n",
        "4",
        "--k",
        "2",
        "--predicate",
        "covering-triple",
        "--time-limit",
        "0",
        "--output",
        "json",
    ]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["optimality_proved"], false);
    assert_eq!(v["optimum"], 7);
    // the incumbent is the star through e1
    assert!(v["witness"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s[0] == serde_json::json!([1, 0, 0, 0])));
}

#[test]
fn search_usage_errors() {
    for args in [
        &[
            "search",
            "--q",
            "2",
            "--n",
            "4",
            "--k",
            "2",
            "--predicate",
            "d-cluster",
        ][..],
        &[
            "search",
            "--q",
            "2",
            "--n",
            "4",
            "--k",
            "2",
            "--predicate",
            "d-cluster",
            "--d",
            "1",
        ],
        &[
            "search",
            "--q",
            "2",
            "--n",
            "4",
            "--k",
            "2",
            "--predicate",
            "pentagon",
        ],
        &[
            "search",
            "--q",
            "2",
            "--n",
            "4",
            "--k",
            "5",
            "--predicate",
            "3-cluster",
        ],
        &[
            "search",
            "--q",
            "4",
            "--n",
            "4",
            "--k",
            "2",
            "--predicate",
            "3-cluster",
            "--time-limit",
            "-1",
        ],
    ] {
        assert_eq!(code(&clusterlab(args)), 2, "{args:?}");
    }
}

#[test]
fn verify_suites() {
    let out = clusterlab(&[
        "verify", "counts", "--q", "2,3", "--n-max", "5", "--output", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["suite"], "counts");
    assert_eq!(v["pass"], true);
    assert!(!v["records"].as_array().unwrap().is_empty());

    let out = clusterlab(&["verify", "identities", "--n-max", "20"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("suite identities: PASS"));

    assert_eq!(code(&clusterlab(&["verify", "nonsense"])), 2);
}

#[test]
fn explore_grid() {
    let out = clusterlab(&["explore", "--n", "3", "--d", "3", "--output", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["report"]["optimum"], 3);
    assert_eq!(rows[0]["in_range"], true);
    assert_eq!(rows[0]["exceeds_star_bound"], false);
}
