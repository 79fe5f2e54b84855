use std::path::PathBuf;
use std::process::Command as Process;

use normsum_cli::{invoke, Outcome, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> Outcome {
    let mut argv = vec!["normsum"];
    argv.extend_from_slice(args);
    invoke(argv)
}

fn doc(out: &Outcome) -> Value {
    serde_json::from_str(out.document.as_deref().expect("document")).expect("valid JSON")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn coords_lists_x1() {
    let out = call(&[
        "coords", "--d", "13", "--m", "4", "--coord", "1", "--bound", "2000000",
    ]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.stderr);
    assert!(
        out.stdout
            .contains("[11, 119, 1298, 14159, 154451, 1684802]"),
        "{}",
        out.stdout
    );
    assert_eq!(
        out.document.as_deref(),
        Some(golden("coords-13-4-x1.json").as_str())
    );
}

#[test]
fn coords_all_view_includes_trivial_solution() {
    let out = call(&[
        "coords", "--d", "13", "--m", "4", "--coord", "1", "--bound", "20", "--all",
    ]);
    let v = doc(&out);
    assert_eq!(v["result"]["values"], serde_json::json!(["2", "11"]));
    assert_eq!(v["result"]["view"], "all");
}

#[test]
fn bound_prints_exact_value() {
    let out = call(&["bound", "--s", "1", "--degrees", "0", "--field-degree", "2"]);
    assert_eq!(out.exit_code, EXIT_OK);
    assert!(out.stdout.contains("2199023255552"), "{}", out.stdout);
    assert_eq!(
        out.document.as_deref(),
        Some(golden("bound-1-0-2.json").as_str())
    );
    let v = doc(&call(&[
        "bound",
        "--s",
        "2",
        "--degrees",
        "0,0",
        "--field-degree",
        "4",
    ]));
    assert_eq!(v["result"]["bound"]["digits"], 99);
}

#[test]
fn verify_remark_reports_period_and_degeneracy() {
    let out = call(&["verify-remark", "--id", "2.4", "--n", "100"]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.stderr);
    assert!(out
        .stdout
        .contains("period confirmed; degenerate: cube root of unity"));
    assert_eq!(doc(&out)["result"]["consistent"], true);
    for id in ["2.3", "2.5"] {
        let out = call(&["verify-remark", "--id", id, "--n", "40"]);
        assert_eq!(out.exit_code, EXIT_OK, "{id}: {}", out.stderr);
    }
}

#[test]
fn every_subcommand_produces_a_tagged_document() {
    let runs: &[&[&str]] = &[
        &["pell", "--d", "13"],
        &[
            "solve-norm",
            "--d",
            "2",
            "--m",
            "-1",
            "--bound",
            "100",
            "--certify",
        ],
        &[
            "coords", "--d", "5", "--m", "4", "--coord", "2", "--bound", "100",
        ],
        &["recur", "--rec", "1,1;0,1", "--n", "10"],
        &["binet", "--rec", "6,-1;0,1"],
        &["hypotheses", "--rec", "2,2;0,1"],
        &[
            "pairs-search",
            "--rec",
            "2,2;0,1",
            "--d",
            "13",
            "--m",
            "4",
            "--n",
            "50",
            "--bound",
            "1000",
        ],
        &[
            "sunit-search",
            "--primes",
            "2,3",
            "--t",
            "2",
            "--e",
            "2",
            "--d",
            "13",
            "--m",
            "4",
            "--bound",
            "500",
        ],
        &["vanishing", "--rec", "1,-1;0,3", "--n", "12"],
        &[
            "bound",
            "--s",
            "2",
            "--degrees",
            "1,2",
            "--field-degree",
            "3",
        ],
        &["partitions", "--bases", "3+2sqrt2,3-2sqrt2", "--e", "5"],
        &["verify-remark", "--id", "2.5", "--n", "30"],
    ];
    for args in runs {
        let mut full = args.to_vec();
        full.extend(["--format", "structured"]);
        let out = call(&full);
        assert_eq!(out.exit_code, EXIT_OK, "{args:?}: {}", out.stderr);
        assert_eq!(Some(&out.stdout), out.document.as_ref());
        let v = doc(&out);
        assert_eq!(v["config"]["command"], args[0]);
        assert!(v["version"].as_str().unwrap().starts_with("normsum "));
        assert!(out.stdout.ends_with("}\n"));
    }
}

#[test]
fn partitions_accept_negative_bases() {
    let out = call(&["partitions", "--bases", "-1+sqrt2,2,3", "--e", "4"]);
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.stderr);
    assert_eq!(doc(&out)["result"]["partition_count"], 5);
}

#[test]
fn out_file_matches_structured_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    let text = call(&[
        "--out",
        p,
        "pairs-search",
        "--rec",
        "2,-1;0,2",
        "--d",
        "13",
        "--m",
        "4",
        "--n",
        "100",
        "--bound",
        "2000000",
    ]);
    assert_eq!(text.exit_code, EXIT_OK);
    assert!(text.stdout.contains("report written to"));
    let written = std::fs::read_to_string(&path).unwrap();
    let structured = call(&[
        "pairs-search",
        "--rec",
        "2,-1;0,2",
        "--d",
        "13",
        "--m",
        "4",
        "--n",
        "100",
        "--bound",
        "2000000",
        "--format",
        "structured",
    ]);
    assert_eq!(written, structured.stdout);
}

#[test]
fn usage_errors_exit_one() {
    let out = call(&["frobnicate"]);
    assert_eq!(out.exit_code, EXIT_USAGE);

    let out = call(&[
        "coords", "--d", "x", "--m", "4", "--coord", "1", "--bound", "10",
    ]);
    assert_eq!(out.exit_code, EXIT_USAGE);
    assert!(out.stderr.contains("--d"), "{}", out.stderr);

    let out = call(&[
        "coords", "--d", "13", "--m", "4", "--coord", "3", "--bound", "10",
    ]);
    assert_eq!(out.exit_code, EXIT_USAGE);
    assert!(out.stderr.contains("--coord"), "{}", out.stderr);

    let out = call(&[
        "coords", "--d", "12", "--m", "4", "--coord", "1", "--bound", "10",
    ]);
    assert_eq!(out.exit_code, EXIT_USAGE);
    assert!(out.stderr.contains("squarefree"), "{}", out.stderr);

    let out = call(&["recur", "--rec", "1,1"]);
    assert_eq!(out.exit_code, EXIT_USAGE);
    assert!(out.stderr.contains("--rec"), "{}", out.stderr);

    let out = call(&["verify-remark", "--id", "9.9", "--n", "20"]);
    assert_eq!(out.exit_code, EXIT_USAGE);
    assert!(out.stderr.contains("9.9"));

    assert_eq!(call(&["--help"]).exit_code, EXIT_OK);
    assert!(call(&["--help"]).stdout.contains("a1,...,ad;U0"));
}

#[test]
fn binary_reads_shard_variable() {
    let bin = env!("CARGO_BIN_EXE_normsum");
    let args = [
        "pairs-search",
        "--rec",
        "2,-1;0,2",
        "--d",
        "13",
        "--m",
        "4",
        "--n",
        "60",
        "--bound",
        "5000",
    ];
    let ok = Process::new(bin)
        .args(args)
        .env("NORMSUM_SHARDS", "3")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("shards: 3"));

    let bad = Process::new(bin)
        .args(args)
        .env("NORMSUM_SHARDS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("NORMSUM_SHARDS"));

    let flag = Process::new(bin)
        .args(["--shards", "2"])
        .args(args)
        .env("NORMSUM_SHARDS", "zero")
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(EXIT_OK));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "sunit-search",
        "--primes",
        "2,3,5",
        "--t",
        "2",
        "--e",
        "2",
        "--d",
        "13",
        "--m",
        "4",
        "--bound",
        "1000",
        "--format",
        "structured",
    ];
    let a = call(&[&["--shards", "1"], &args[..]].concat());
    let b = call(&[&["--shards", "6"], &args[..]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        a.stdout,
        call(&[&["--shards", "1"], &args[..]].concat()).stdout
    );
}
