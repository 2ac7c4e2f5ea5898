use std::process::{Command, Output};

use serde_json::Value;

fn cbdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbdiv"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = cbdiv(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn rank_example() {
    let out = cbdiv(&[
        "rank",
        "--algebra",
        "sl4",
        "--level",
        "2",
        "--weights",
        "[1,1,0,0]^6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"rank":11}"#
    );
    let all = json(&[
        "rank",
        "--algebra",
        "sl4",
        "--level",
        "2",
        "--weights",
        "w2^6",
        "--backend",
        "all",
    ]);
    assert_eq!(all["rank"], 11);
}

#[test]
fn inadmissible_weight_exits_2() {
    let out = cbdiv(&[
        "rank",
        "--algebra",
        "sl4",
        "--level",
        "2",
        "--weights",
        "[9,0,0,0]",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not in P_2(sl_4)"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        &[
            "rank",
            "--algebra",
            "slx",
            "--level",
            "2",
            "--weights",
            "w1",
        ][..],
        &[
            "rank",
            "--algebra",
            "sl3",
            "--level",
            "2",
            "--weights",
            "[1,2,0]",
        ],
        &[
            "fcurve",
            "--algebra",
            "sl2",
            "--level",
            "1",
            "--weights",
            "w1^4",
            "--blocks",
            "1|2|3",
        ],
        &[
            "hassett-compare",
            "--algebra",
            "sl2",
            "--level",
            "1",
            "--weights",
            "w1^4",
            "--hassett",
            "1/2^4",
        ],
        &["rank", "--algebra", "sl3"],
    ] {
        assert_eq!(cbdiv(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn class_of_the_sl3_level_5_example() {
    let v = json(&[
        "class",
        "--algebra",
        "sl3",
        "--level",
        "5",
        "--weights",
        "[3,0,0]^6",
    ]);
    assert_eq!(v["intersections"]["1,1,1,3"], 0);
    assert_eq!(v["intersections"]["1,1,2,2"], 16);
    // proportional to 2B2 + 3B3
    assert_eq!(v["symmetric_B"]["2"], "16/5");
    assert_eq!(v["symmetric_B"]["3"], "24/5");
}

#[test]
fn deterministic_across_threads() {
    let args = [
        "class",
        "--algebra",
        "sl3",
        "--level",
        "2",
        "--weights",
        "w1^9",
    ];
    let one = cbdiv(&[&["--threads", "1"][..], &args].concat());
    let four = cbdiv(&[&["--threads", "4"][..], &args].concat());
    let default = cbdiv(&args);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, default.stdout);
}

#[test]
fn certificates_report_verification() {
    let v = json(&[
        "nonvanishing",
        "--algebra",
        "sl6",
        "--level",
        "2",
        "--weights",
        "w3^6",
    ]);
    assert_eq!(v["verdict"], "NonZero");
    assert_eq!(v["verified"], true);
    let v = json(&[
        "nonvanishing",
        "--search-aux",
        "--algebra",
        "sl3",
        "--level",
        "2",
        "--weights",
        "w1^9",
    ]);
    assert_eq!(v["verified"], true);
    let v = json(&[
        "decompose",
        "--algebra",
        "sl4",
        "--mu",
        "w1^4",
        "--mu-level",
        "1",
        "--nu",
        "0;w1+w3^3",
        "--nu-level",
        "2",
    ]);
    assert_eq!(v["verdict"], "Zero");
    assert_eq!(v["payload"]["rank_sum"], 1);
    let v = json(&[
        "scale",
        "--algebra",
        "sl2",
        "--level",
        "1",
        "--weights",
        "w1^4",
        "--factor",
        "3",
    ]);
    assert_eq!(v["payload"]["scaled_rank"], 1);
}

#[test]
fn small_commands() {
    let w = [
        "--algebra",
        "sl4",
        "--level",
        "3",
        "--weights",
        "w1;2w1+w3^3",
    ];
    assert_eq!(json(&[&["coinv"][..], &w].concat())["coinvariants"], 2);
    assert_eq!(json(&[&["degree"][..], &w].concat())["degree"], 0);
    let v = json(&[
        "levels",
        "--algebra",
        "sl5",
        "--level",
        "1",
        "--weights",
        "w1^5",
    ]);
    assert_eq!(v["critical"], 0);
    assert_eq!(v["verdict"], "Zero");
    let v = json(&[
        "fcurve",
        "--algebra",
        "sl3",
        "--level",
        "5",
        "--weights",
        "3w1^6",
        "--blocks",
        "4,5,6|1|2|3",
    ]);
    assert_eq!(v["fcurve"], "1|2|3|4,5,6");
    assert_eq!(v["intersection"], 0);
    let v = json(&[
        "hassett-compare",
        "--algebra",
        "sl3",
        "--level",
        "2",
        "--weights",
        "w1^9",
        "--hassett",
        "1/4^9",
    ]);
    assert_eq!(v["identical"], true);
}

#[test]
fn text_output_and_reproduce() {
    let out = cbdiv(&[
        "--format",
        "text",
        "rank",
        "--algebra",
        "sl2",
        "--level",
        "1",
        "--weights",
        "w1^4",
    ]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "rank: 1\n");
    let out = cbdiv(&["--format", "text", "reproduce", "--only", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        table.lines().filter(|l| l.contains("PASS")).count(),
        2,
        "{table}"
    );
}
