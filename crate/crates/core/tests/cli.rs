use std::process::{Command, Output};

fn gw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gw-g24")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn invariant_values() {
    let o = gw(&["invariant", "13", "0", "0", "0", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "504\n");
    assert!(stderr(&o).contains("dimension-valid"));

    let o = gw(&["invariant", "1", "1", "0", "1", "1"]);
    assert_eq!(stdout(&o), "1\n");

    // mirrored insertions give the same number
    let a = gw(&["invariant", "10", "1", "1", "0", "3"]);
    let b = gw(&["invariant", "1", "10", "1", "0", "3"]);
    assert_eq!(stdout(&a), stdout(&b));

    let o = gw(&["invariant", "1", "0", "0", "0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
    assert!(stderr(&o).contains("dimension-invalid"));
}

#[test]
fn invariant_json() {
    let o = gw(&["invariant", "9", "0", "0", "0", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "2");
    assert_eq!(v["dimension_valid"], true);
    assert_eq!(v["key"]["degree"], 2);
}

#[test]
fn table_output() {
    let o = gw(&["table", "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("| 1* | 0 | 5 |"));

    let o = gw(&["table", "--max-degree", "6", "--format", "csv", "--with-nd"]);
    let out = stdout(&o);
    assert!(out.contains("\n3,504,13,13608,\n"));
    assert!(out.contains("\n6,67992124121040,25,14686298810144640,\n"));
    assert_eq!(out.lines().count(), 7);
}

#[test]
fn table_json_is_stable() {
    let args = ["table", "--max-degree", "4", "--format", "json", "--with-nd"];
    let a = gw(&args);
    let b = gw(&args);
    assert_eq!(a.stdout, b.stdout);
    let rows = gw_g24::report::parse_json_table(&stdout(&a)).unwrap();
    let q: Vec<String> = rows.iter().map(|r| r.1.to_string()).collect();
    assert_eq!(q, ["0", "2", "504", "1044120"]);
    assert_eq!(rows[3].2.as_ref().unwrap().to_string(), "66823680");
}

#[test]
fn verify_small_degrees() {
    let o = gw(&["verify", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("classical oracle vs tensor: 216/216 triples agree"));
    assert!(out.contains("seed cross-checks: ok"));
    assert!(out.contains("wdvv degree 3: 1580 equations, 0 violations"));
    assert!(out.contains("golden rows matched: 3"));
    assert!(out.ends_with("result: ok\n"));

    let o = gw(&["verify", "--max-degree", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result: ok"));
}

#[test]
fn usage_errors() {
    assert_eq!(gw(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gw(&["invariant", "1", "2"]).status.code(), Some(1));
    assert_eq!(gw(&["table", "--max-degree", "10"]).status.code(), Some(1));
    assert_eq!(gw(&["table", "--max-degree", "31", "--allow-beyond-table"]).status.code(), Some(1));
    assert_eq!(gw(&["cache", "export"]).status.code(), Some(1));
}

#[test]
fn cache_export_import_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g24.cache");
    let p = path.to_str().unwrap();

    let o = gw(&["--cache-path", p, "cache", "export", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = gw(&["--cache-path", p, "cache", "import", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("degrees 1..=3"));

    let o = gw(&["--cache-path", p, "invariant", "13", "0", "0", "0", "3"]);
    assert_eq!(stdout(&o), "504\n");

    let text = std::fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("13 0 0 0 3 504", "13 0 0 0 3 505", 1);
    assert_ne!(text, tampered);
    std::fs::write(&path, tampered).unwrap();
    let o = gw(&["--cache-path", p, "invariant", "13", "0", "0", "0", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("\"kind\":\"cache\""));
    assert!(o.stdout.is_empty());
}
