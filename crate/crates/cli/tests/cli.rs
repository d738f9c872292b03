use std::process::{Command, Output};

fn pbounds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbounds"))
        .args(args)
        .output()
        .expect("run pbounds")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_rows() {
    let o = pbounds(&["table", "7", "--bounds", "all:3", "--stat", "alt-sum"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("1: (2^2,1^3) (2^3,1) (3,2,1^2) (3^2,1) (4,3)")
    );
    assert_eq!(text.lines().last(), Some("counts: 1:5 3:4 5:2 7:1"));

    let o = pbounds(&["table", "7", "--bounds", "even:1", "--stat", "l_o"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(
        rows[..4],
        [
            "1: (4,2,1) (4,3) (5,2) (6,1) (7)",
            "3: (3,2,1^2) (3^2,1) (4,1^3) (5,1^2)",
            "5: (2,1^5) (3,1^4)",
            "7: (1^7)"
        ]
    );

    let o = pbounds(&["table", "0"]);
    assert_eq!(stdout(&o).lines().next(), Some("0: ∅"));
}

#[test]
fn map_traces() {
    let o = pbounds(&["map", "psi", "7,7,7,4,4,4,4,2,2,2,2,2,1", "--m", "2"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "α: 7,7,7,4,4,4,4,2,2,2,2,2,1\nλ: 7,2,1\nμ: 7,7,4,4,4,4,2,2,2,2\nτ: 3,3,1,1,1,1\nν: 14,8,8,4,4\nβ: 14,8,8,4,4,3,3,1,1,1,1\n"
    );
    let o = pbounds(&[
        "map",
        "psi",
        "--inverse",
        "14,8,8,4,4,3,3,1,1,1,1",
        "--m",
        "2",
    ]);
    assert!(stdout(&o).ends_with("α: 7,7,7,4,4,4,4,2,2,2,2,2,1\n"));

    let o = pbounds(&["map", "sylvester", "inv", "7,2,1"]);
    assert_eq!(stdout(&o), "λ: 7,2,1\nτ: 3,3,1,1,1,1\n");
    let o = pbounds(&["map", "sylvester", "--inverse", "7,2,1"]);
    assert_eq!(stdout(&o), "λ: 7,2,1\nτ: 3,3,1,1,1,1\n");
    let o = pbounds(&["map", "sylvester", "fwd", "3,3,1,1,1,1"]);
    assert_eq!(stdout(&o), "τ: 3,3,1,1,1,1\nλ: 7,2,1\n");
    assert_eq!(
        pbounds(&["map", "psi", "sideways", "1"]).status.code(),
        Some(2)
    );

    let o = pbounds(&["map", "psi", "fwd", "", "--m", "0"]);
    assert!(stdout(&o).ends_with("β: ∅\n"));

    let o = pbounds(&["map", "t32", "3,3,2,1,1", "--m", "0"]);
    assert!(stdout(&o).ends_with("β: 6,2,1,1\n"));
}

#[test]
fn precondition_errors_exit_2() {
    let o = pbounds(&["map", "psi", "4,4,4,4", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("part 4") && err.contains("bound 3"), "{err}");

    assert_eq!(
        pbounds(&["enumerate", "5", "--bounds", "all:x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pbounds(&["enumerate", "5", "--no-such-flag"]).status.code(),
        Some(2)
    );
    assert_eq!(pbounds(&["verify", "t9.9"]).status.code(), Some(2));
    assert_eq!(
        pbounds(&["verify", "t1.2", "--a", "all:3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pbounds(&["series", "closed", "t2.3", "--bounds", "2:2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_examples() {
    assert_eq!(
        pbounds(&["verify", "t3.1", "--max-n", "22", "--m", "0,1,2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        pbounds(&["verify", "t3.3", "--m", "1", "--trunc", "20"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        pbounds(&[
            "verify",
            "t1.2",
            "--a",
            "all:4s",
            "--b",
            "odd:inf,even:2s",
            "--max-n",
            "30"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        pbounds(&["verify", "t4.1", "--max-n", "10", "--phi", "all:1", "--phi", "phi:i"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn failing_report_reproduces() {
    let o = pbounds(&[
        "verify",
        "t1.2",
        "--a",
        "all:2s",
        "--b",
        "all:3s",
        "--max-n",
        "5",
        "--format",
        "json",
        "--no-timing",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    let c = &v["counterexample"];
    assert_eq!(
        (c["n"].as_u64(), c["left"].as_u64(), c["right"].as_u64()),
        (Some(2), Some(1), Some(2))
    );
    // Each half of the reproduce string is a CLI call printing one side's count.
    let counts: Vec<String> = c["reproduce"]
        .as_str()
        .unwrap()
        .split(" && ")
        .map(|cmd| {
            let args: Vec<&str> = cmd.split_whitespace().skip(1).collect();
            stdout(&pbounds(&args)).trim().to_string()
        })
        .collect();
    assert_eq!(counts, ["1", "2"]);
}

#[test]
fn congruence_formula_mismatch_exits_1() {
    let o = pbounds(&[
        "verify",
        "t2.2",
        "--modulus",
        "2",
        "--residue",
        "1",
        "--bounds",
        "all:inf",
        "--trunc",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counterexample"]["kind"], "coefficient");
    assert_eq!(
        v["points"].as_array().unwrap().len(),
        2,
        "both readings of ∅ reported"
    );

    let o = pbounds(&["verify", "t2.2", "--bounds", "2:1,3:3", "--trunc", "12"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_is_deterministic() {
    let args = [
        "verify",
        "t3.2",
        "--max-n",
        "12",
        "--m",
        "0,1",
        "--format",
        "json",
        "--no-timing",
        "--jobs",
        "2",
    ];
    let first = pbounds(&args);
    let second = pbounds(&args);
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    for key in ["theorem", "params", "status", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["elapsed_ms"], 0);

    let o = pbounds(&["stats", "7", "--bounds", "all:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["counts"],
        serde_json::json!({ "1": 5, "3": 4, "5": 2, "7": 1 })
    );
}

#[test]
fn series_csv() {
    let o = pbounds(&["series", "closed", "t3.3", "--m", "1", "--trunc", "7"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("x,q,coeff"));
    for row in ["1,7,5", "3,7,4", "5,7,2", "7,7,1"] {
        assert!(text.lines().any(|l| l == row), "{row}");
    }
    let enumerated = pbounds(&[
        "series",
        "enumerated",
        "t3.3",
        "--m",
        "1",
        "--trunc",
        "7",
        "--side",
        "odd",
    ]);
    assert_eq!(stdout(&enumerated), text);

    let o = pbounds(&["series", "enumerated", "t2.1", "--trunc", "2"]);
    assert_eq!(
        stdout(&o),
        "a,b,c,d,coeff\n0,0,0,0,1\n1,0,0,0,1\n1,0,1,0,1\n1,1,0,0,1\n"
    );
}

#[test]
fn enumerate_and_count() {
    let o = pbounds(&["enumerate", "5", "--filter", "mod:2,res:1"]);
    assert_eq!(stdout(&o), "5\n3,1,1\n1,1,1,1,1\n");
    let o = pbounds(&["enumerate", "30", "--count"]);
    assert_eq!(stdout(&o), "5604\n");
}
