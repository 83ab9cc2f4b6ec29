use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn d4plus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_d4plus")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = d4plus(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("d4plus-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn eval(json: &str, args: &[&str]) -> serde_json::Value {
    let dir = scratch("eval");
    let file = dir.join(format!("{:x}.json", json.len() * 31 + args.len()));
    fs::write(&file, json).unwrap();
    let mut all = vec!["eval", "--input", file.to_str().unwrap()];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn count_tables() {
    assert_eq!(stdout(&["count", "--k0", "0"]), "k,l,count\n0,0,1\n");
    assert!(stdout(&["count", "--k0", "2"]).contains("\n0,2,1\n"));
    let eight = stdout(&["count", "--k0", "8"]);
    assert!(eight.contains("\n0,8,196\n"));
    assert_eq!(eight, stdout(&["count", "--k0", "8"]));
    assert!(!d4plus(&["count", "--k0", "11"]).status.success());
}

#[test]
fn enumerate_writes_the_pool_and_dot_files() {
    let dir = scratch("enumerate");
    let out = dir.to_str().unwrap();
    let table = stdout(&["enumerate", "--k0", "4", "--out", out, "--format", "dot"]);
    assert!(table.contains("\n0,4,4\n"));
    let pool = fs::read_to_string(dir.join("pool.json")).unwrap();
    assert!(pool.contains("\"k0\": 4"));
    assert!(dir.join("dot").join("c_0_4_0.dot").exists());

    let again = dir.join("again");
    let msg = stdout(&["export-dot", "--pool", dir.join("pool.json").to_str().unwrap(), "--out", again.to_str().unwrap()]);
    assert!(msg.starts_with(&fs::read_dir(dir.join("dot")).unwrap().count().to_string()));
    let a = fs::read_to_string(dir.join("dot").join("c_0_4_3.dot")).unwrap();
    assert_eq!(a, fs::read_to_string(again.join("c_0_4_3.dot")).unwrap());
}

#[test]
fn eval_examples() {
    let edge = eval(r#"{"vertices":2,"edges":[[0,1]],"inputs":[0],"outputs":[1]}"#, &["--N", "4", "--A", "tau"]);
    let entries = edge["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 16);
    for e in entries {
        let expected = if e[1] == e[2] { "1/2" } else { "-1/2" };
        assert_eq!(e[0], expected);
    }

    let pair = eval(r#"{"upper":0,"lower":2,"blocks":[[0,1]]}"#, &["--N", "3"]);
    assert_eq!(pair["entries"].as_array().unwrap().len(), 3);

    let singletons = r#"{"upper":0,"lower":4,"blocks":[[0],[1],[2],[3]]}"#;
    let hat = eval(singletons, &["--N", "4", "--hat"]);
    assert_eq!(hat["entries"].as_array().unwrap().len(), 24);
    assert!(hat["entries"].as_array().unwrap().iter().all(|e| e[0] == "1"));

    let vector = r#"{"terms":[{"coeff":"2","partition":{"upper":1,"lower":1,"blocks":[[0,1]]}},
        {"coeff":"-1/3","partition":{"upper":1,"lower":1,"blocks":[[0],[1]]}}]}"#;
    let v = eval(vector, &["--N", "2"]);
    assert_eq!(v["entries"][0], serde_json::json!(["5/3", 0, 0]));
    assert_eq!(v["entries"][1], serde_json::json!(["-1/3", 0, 1]));
}

#[test]
fn eval_with_a_weight_file() {
    let dir = scratch("weights");
    let a = dir.join("a.json");
    fs::write(&a, r#"[["0","1"],["1","0"]]"#).unwrap();
    let edge = eval(r#"{"vertices":2,"edges":[[0,1]],"inputs":[0],"outputs":[1]}"#, &["--N", "2", "--A", a.to_str().unwrap()]);
    assert_eq!(edge["entries"], serde_json::json!([["1", 0, 1], ["1", 1, 0]]));
}

#[test]
fn eval_rejects_bad_input() {
    let dir = scratch("bad");
    let bad = dir.join("bad.json");
    let stderr = |text: &str| {
        fs::write(&bad, text).unwrap();
        let out = d4plus(&["eval", "--input", bad.to_str().unwrap()]);
        assert!(!out.status.success());
        String::from_utf8(out.stderr).unwrap()
    };
    let err = stderr("{\"vertices\": 2,\n \"edges\": [[0, 5]] \"inputs\": []}");
    assert!(err.contains("line 2"), "{err}");
    let err = stderr(r#"{"vertices": 2, "edges": [[0, 5]], "inputs": [], "outputs": []}"#);
    assert!(err.contains("edge (0,5)"), "{err}");

    fs::write(&bad, r#"{"something": 1}"#).unwrap();
    assert!(!d4plus(&["eval", "--input", bad.to_str().unwrap()]).status.success());
}

#[test]
fn dims_at_four() {
    let dir = scratch("dims");
    let report = dir.join("dims.json");
    let text = stdout(&["dims", "--N", "4", "--max-points", "4", "--report", report.to_str().unwrap()]);
    let rows: Vec<Vec<&str>> = text.lines().skip(2).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows, vec![vec!["2", "1", "1", "true", "1"], vec!["4", "4", "4", "true", "5"]]);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json[1]["rank"], 4);
}

#[test]
fn verify_words_suite() {
    let out = stdout(&["verify", "--suite", "words"]);
    assert!(out.contains("PASS W1"));
    assert!(out.ends_with("2 checks, 0 failed\n"));
    assert!(!d4plus(&["verify", "--suite", "nonsense"]).status.success());
}
