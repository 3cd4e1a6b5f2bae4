use std::process::{Command, Output};

use idemcodes::codes::parse_export;
use idemcodes::field::FieldCtx;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_idemcodes"));
    c.current_dir(env!("CARGO_MANIFEST_DIR"));
    for var in ["GROUP", "FIELD", "BUDGET", "OUTPUT", "EXPORT", "THREADS", "NORMAL_ELEMENTS", "METHOD"] {
        c.env_remove(format!("IDEMCODES_{var}"));
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn triples(report: &Value) -> Vec<(u64, u64, u64)> {
    let mut v: Vec<_> = report["components"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["codes"].as_array().unwrap().iter())
        .map(|c| (c["n"].as_u64().unwrap(), c["k"].as_u64().unwrap(), c["d"].as_u64().unwrap()))
        .collect();
    v.sort();
    v
}

#[test]
fn codes_for_f20_over_gf3() {
    let o = run(&["--group", "metacyclic(5,4,2)", "--field", "gf(3)", "codes"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# group metacyclic(5,4,2) order 20 field gf(3)"));
    assert!(text.contains("[20,4,12]"));
    assert!(text.contains("[20,4,8]"));
}

#[test]
fn text_and_json_agree() {
    let args = ["--group", "metacyclic(7,3,2)", "--field", "gf(2)", "codes"];
    let report = json(&args);
    assert_eq!(report["order"], 21);
    let text = stdout(&run(&args));
    let mut from_text: Vec<(u64, u64, u64)> = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix('['))
        .map(|l| {
            let nums: Vec<u64> = l.split(']').next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
            (nums[0], nums[1], nums[2])
        })
        .collect();
    from_text.sort();
    assert_eq!(from_text, triples(&report));
}

#[test]
fn search_reports_best_per_dimension() {
    let o = run(&["--group", "metacyclic(7,3,2)", "search"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.ends_with("n=21 k=3 d=12")), "{text}");
    assert!(text.lines().any(|l| l.starts_with("time_ms=")));
}

#[test]
fn env_overrides_flags() {
    let o = bin()
        .env("IDEMCODES_GROUP", "cyclic(7)")
        .env("IDEMCODES_FIELD", "gf(2)")
        .env("IDEMCODES_OUTPUT", "json")
        .arg("wedderburn")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["group"], "cyclic(7)");
    assert_eq!(v["total_dim"], 7);
}

#[test]
fn parse_errors_are_structured() {
    let o = run(&["--group", "metacyclic(5,4", "--output", "json", "ssp"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["code"], "parse_error");
    let o = run(&["--group", "cyclic(6)", "--field", "gf(3)", "--output", "json", "wedderburn"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["code"], "not_semisimple");
    let o = run(&["--group", "cyclic(6)", "--field", "gf(6)", "ssp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "--group",
        "metacyclic(5,4,2)",
        "--field",
        "gf(3)",
        "--export",
        dir.path().to_str().unwrap(),
        "codes",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let f = FieldCtx::with_order(3).unwrap();
    let mut files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty());
    for path in files {
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        assert!(name.starts_with('c') && name.ends_with(".gen"), "{name}");
        let text = std::fs::read_to_string(&path).unwrap();
        let header: Vec<usize> = text.lines().next().unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
        assert_eq!((header[0], header[2]), (20, 3));
        let m = parse_export(&f, &text).unwrap();
        assert_eq!(m.rows(), header[1]);
    }
}

#[test]
fn cayley_tables_are_accepted() {
    let v = json(&["--group", "cayley(fixtures/q8.cayley)", "--field", "gf(3)", "search"]);
    assert_eq!(v["order"], 8);
    assert!(triples(&v).contains(&(8, 2, 6)));
}
