use std::process::{Command, Output};

fn rcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn member_all_methods() {
    let o = rcat(&["member", "5", "8", "1|2,7|3,4,5|6", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("true").count(), 3, "{text}");
    let o = rcat(&["member", "5", "8", "1|2,6,7|3|4,5", "--method", "all", "--format", "csv"]);
    assert_eq!(stdout(&o), "method,member\nreconstruction,false\nkreweras,false\nrank-orbit,false\n");
}

#[test]
fn csp_json_rows() {
    let o = rcat(&["csp", "2", "3", "--family", "catalan", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for (d, row) in rows.iter().enumerate() {
        assert_eq!(row["d"], d as u64);
        assert_eq!(row["eval"], row["fixed"]);
    }
    assert_eq!(v["pass"], true);
}

#[test]
fn nc_block_filter_csv() {
    let o = rcat(&["nc", "3", "5", "--blocks", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("partition,rank_sequence"));
    assert_eq!(lines.count(), 4);
    let o = rcat(&["nc", "5", "8", "--ranks", "1,2", "--format", "csv"]);
    // 7! / (1! 2! 5!)
    assert_eq!(stdout(&o).lines().count() - 1, 21);
}

#[test]
fn listing_sizes() {
    assert_eq!(stdout(&rcat(&["paths", "5", "8", "--format", "csv"])).lines().count(), 100);
    assert_eq!(stdout(&rcat(&["hnc", "3", "5", "--format", "csv"])).lines().count(), 8);
    assert_eq!(stdout(&rcat(&["park", "3", "5", "--format", "csv"])).lines().count(), 26);
}

#[test]
fn parking_word_both_ways() {
    let o = rcat(&["park", "5", "8", "--word", "4,2,1,4,1", "--format", "csv"]);
    assert_eq!(stdout(&o), "parking_function,word\n\"1,3,7:3,5|2:2|4,5,6:1,4\",\"4,2,1,4,1\"\n");
    let o = rcat(&["park", "5", "8", "--word", "1,3,7:3,5|2:2|4,5,6:1,4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["word"], "4,2,1,4,1");
    assert_eq!(v["parking_function"]["blocks"][0]["labels"], serde_json::json!([3, 5]));
    let o = rcat(&["park", "3", "5", "--word", "3,3,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verification_commands_pass() {
    let o = rcat(&["park", "3", "5", "--char", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("cycle_type,d,brute,predicted,ok\n"));
    assert!(text.contains("2 1,2,5,5,true"));
    for fam in ["narayana:2", "kreweras:1,1,0", "homogeneous"] {
        assert_eq!(rcat(&["csp", "3", "5", "--family", fam]).status.code(), Some(0), "{fam}");
    }
    let o = rcat(&["symmetric", "3", "5", "2", "--count", "catalan", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["brute"], 3);
    assert_eq!(v[0]["formula"], "3");
}

#[test]
fn small_commands() {
    let o = rcat(&["rank", "5", "8", "1,3,7|2|4,5,6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank_sequence"], serde_json::json!([2, 1, 0, 2, 0, 0, 0]));
    assert_eq!(v["total"], 5);
    let o = rcat(&["krew", "4", "1,3|2|4", "--format", "csv"]);
    assert_eq!(stdout(&o), "partition,kreweras,kreweras_inverse\n\"1,3|2|4\",\"1,2|3,4\",\"1,4|2,3\"\n");
    let o = rcat(&["symmetric", "4", "9", "4", "--format", "csv"]);
    assert!(stdout(&o).contains("\"1,8|2,3,6,7|4,5\",\"0,0,0,1\",false"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["paths", "3", "6"][..],
        &["paths", "5", "3"],
        &["member", "3", "5", "1,3|2,4"],
        &["krew", "5", "1,3|2|4"],
        &["csp", "3", "5", "--family", "lucas"],
        &["symmetric", "3", "5", "3"],
        &["nc", "3", "5", "--format", "xml"],
        &["paths", "1", "18"],
    ] {
        let o = rcat(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
        assert!(o.stdout.is_empty());
    }
    assert_eq!(rcat(&["--help"]).status.code(), Some(0));
}

#[test]
fn force_lifts_size_guard() {
    let o = rcat(&["paths", "1", "18", "--force", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn deterministic_across_thread_counts() {
    let args = ["csp", "5", "8", "--family", "catalan", "--format", "json"];
    let base = rcat(&args).stdout;
    assert_eq!(rcat(&args).stdout, base);
    for n in ["1", "3"] {
        let o = Command::new(env!("CARGO_BIN_EXE_rcat")).args(args).env("RCAT_THREADS", n).output().unwrap();
        assert_eq!(o.stdout, base);
    }
    let o = Command::new(env!("CARGO_BIN_EXE_rcat")).args(args).env("RCAT_THREADS", "0").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
