use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partavoid"))
        .args(args)
        .env_remove("PARTAVOID_SHARDS")
        .output()
        .expect("run partavoid")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_all_methods_agree() {
    let o = run(&[
        "count",
        "--pattern",
        "1/2 4/3",
        "--n",
        "5",
        "--method",
        "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "39 39 AGREE");
}

#[test]
fn count_single_method() {
    let o = run(&["count", "--pattern", "1 3/2 4", "--n", "7"]);
    assert_eq!(stdout(&o).trim(), "429");
    let o = run(&[
        "count",
        "--pattern",
        "1 2 3 4",
        "--n",
        "4",
        "--method",
        "formula",
    ]);
    assert_eq!(stdout(&o).trim(), "14");
}

#[test]
fn count_json() {
    let o = run(&[
        "count",
        "--pattern",
        "13/24",
        "--n",
        "6",
        "--method",
        "all",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "AGREE");
    assert_eq!(v["counts"]["oracle"], "132");
    assert_eq!(v["counts"]["gf"], "132");
}

#[test]
fn exit_codes() {
    let o = run(&["count", "--pattern", "1 3/x", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert!(o.stdout.is_empty());
    let o = run(&["count", "--pattern", "13/2", "--n", "5", "--method", "gf"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["table", "--k", "4", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--map", "nope", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn avoid_verdicts() {
    let o = run(&["avoid", "--sigma", "1 4 5/2 3", "--tau", "1 2/3 4"]);
    assert!(stdout(&o).starts_with("CONTAINS"));
    let o = run(&["avoid", "--sigma", "1 3 5/2 4", "--tau", "1 4/2 3"]);
    assert!(stdout(&o).starts_with("CONTAINS"));
    let o = run(&["avoid", "--sigma", "1 3/2 4", "--tau", "1 3/2 4"]);
    assert_eq!(stdout(&o).trim(), "CONTAINS {1,2,3,4}");
    let o = run(&["avoid", "--sigma", "1 2/3 4", "--tau", "1 3/2 4"]);
    assert_eq!(stdout(&o).trim(), "AVOIDS");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_maps() {
    for args in [
        &["verify", "--map", "phi_a", "--k", "5", "--n", "8"][..],
        &["verify", "--map", "core_14_23", "--n", "8"],
        &["verify", "--map", "phi_134_2", "--n", "7"],
        &["verify", "--map", "words_1_24_3", "--n", "8"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).starts_with("PASS"), "{args:?}");
    }
}

#[test]
fn table_csv_shape() {
    let o = run(&["table", "--k", "4", "--n-max", "8"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("pattern,n,count"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 15 * 4);
    assert!(rows.contains(&"1 3/2 4,7,429"));
}

#[test]
fn classes_report() {
    let o = run(&["classes", "--k", "3", "--n-max", "9"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let classes = v["classes"].as_array().unwrap();
    assert!(classes.iter().any(|c| {
        let ps: Vec<&str> = c["patterns"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p.as_str().unwrap())
            .collect();
        ps.contains(&"1/2/3") && ps.contains(&"1 3/2")
    }));
    let o = run(&["classes", "--k", "5", "--n-max", "9", "--format", "text"]);
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "1 2 3 5/4 ~ 1 2 4 5/3 ~ 1 3 4 5/2"));
}

#[test]
fn shards_do_not_change_output() {
    let base = stdout(&run(&[
        "table", "--k", "3", "--n-max", "9", "--shards", "1",
    ]));
    for s in ["2", "8"] {
        assert_eq!(
            stdout(&run(&["table", "--k", "3", "--n-max", "9", "--shards", s])),
            base
        );
    }
    let env = Command::new(env!("CARGO_BIN_EXE_partavoid"))
        .args(["table", "--k", "3", "--n-max", "9"])
        .env("PARTAVOID_SHARDS", "3")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), base);
}

#[test]
fn threshold_and_decomposition() {
    let o = run(&["threshold", "--k", "5", "--n-max", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["last_link_equal_at"], serde_json::json!([6, 7]));
    let o = run(&["decomposition", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn method_all_agrees_on_table_patterns() {
    for tau in [
        "1234", "1/2/3/4", "12/3/4", "12/34", "1/234", "134/2", "14/23", "13/24", "14/2/3",
        "1/24/3",
    ] {
        let o = run(&["count", "--pattern", tau, "--n", "9", "--method", "all"]);
        assert_eq!(o.status.code(), Some(0), "{tau}");
        assert!(
            stdout(&o).trim_end().ends_with(" AGREE"),
            "{tau}: {}",
            stdout(&o)
        );
    }
}
