use std::process::{Command, Output};

use serde_json::Value;

fn ptosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptosc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    (header, lines.map(|l| l.split(',').map(str::to_owned).collect()).collect())
}

const HERMITIAN: [&str; 10] = ["spectrum", "--family", "momentum", "--W", "1", "--L", "0", "--strategy", "manual", "--w"];

#[test]
fn hermitian_manual_spectrum() {
    let mut args = HERMITIAN.to_vec();
    args.extend(["1", "--N", "20", "--count", "5"]);
    let out = ptosc(&args);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: all-real-positive"));
    for v in ["1.0", "3.0", "5.0", "7.0", "9.0"] {
        assert!(text.lines().any(|l| l.split_whitespace().nth(1) == Some(v)), "missing {v} in\n{text}");
    }
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 5] = [
        &["spectrum", "--family", "momentum", "--W", "1", "--L", "0", "--strategy", "manual"],
        &["spectrum", "--family", "momentum", "--W", "1", "--L", "0", "--strategy", "sum", "--N", "10", "--count", "20"],
        &["spectrum", "--family", "momentum", "--W", "1", "--L", "0", "--strategy", "sum", "--frobnicate"],
        &["spectrum", "--family", "momentum", "--W", "1", "--strategy", "sum"],
        &["sweep", "--family", "coordinate", "--L", "1", "--vary", "R", "--strategy", "diff"],
    ];
    for args in cases {
        let out = ptosc(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn rejected_frequency_exits_1() {
    let out = ptosc(&["spectrum", "--family", "coordinate", "--L", "10", "--R", "8", "--strategy", "negdiff"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negdiff"));
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let base = ["spectrum", "--family", "coordinate", "--L", "10", "--R", "8", "--strategy", "variational", "--N", "60", "--count", "30"];
    let csv = ptosc(&[&base[..], &["--format", "csv"]].concat());
    let json = ptosc(&[&base[..], &["--format", "json"]].concat());
    assert!(csv.status.success() && json.status.success());
    let (header, rows) = csv_rows(&stdout(&csv));
    assert_eq!(header.join(","), "family,W,L,R,strategy,w,N,index,re,im,class,verdict");
    let doc: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(doc["meta"]["command"], "spectrum");
    let data = doc["data"].as_array().unwrap();
    assert_eq!(data.len(), rows.len());
    assert_eq!(rows.len(), 30);
    for (row, obj) in rows.iter().zip(data) {
        for (col, cell) in header.iter().zip(row) {
            let v = &obj[col.as_str()];
            match v {
                Value::Number(n) => {
                    let a = n.as_f64().unwrap();
                    let b: f64 = cell.parse().unwrap();
                    assert!((a - b).abs() <= 1e-12 * a.abs().max(b.abs()), "{col}: {a} vs {b}");
                }
                Value::String(s) => assert_eq!(s, cell),
                Value::Null => assert!(cell.is_empty()),
                other => assert_eq!(other.to_string(), *cell),
            }
        }
    }
    assert!(rows.iter().any(|r| r[10].starts_with("pair:")));
    assert!(rows.iter().all(|r| r[11] == "broken"));
}

#[test]
fn pair_members_share_an_id() {
    let out = ptosc(&["spectrum", "--family", "coordinate", "--L", "10", "--R", "8", "--strategy", "variational", "--format", "csv"]);
    let (_, rows) = csv_rows(&stdout(&out));
    let ids: Vec<&str> = rows.iter().map(|r| r[10].as_str()).filter(|c| c.starts_with("pair:")).collect();
    for id in &ids {
        assert_eq!(ids.iter().filter(|x| *x == id).count() % 2, 0, "{id} unmatched within listing");
    }
}

#[test]
fn table2_passes() {
    let out = ptosc(&["table2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("4/4 blocks match"));
}

#[test]
fn table1_root_blocks_pass() {
    let out = ptosc(&["table1", "--format", "csv"]);
    let (header, rows) = csv_rows(&stdout(&out));
    let block = header.iter().position(|h| h == "block").unwrap();
    let pass = header.iter().position(|h| h == "pass").unwrap();
    for b in ["2a", "2b", "3"] {
        let mine: Vec<_> = rows.iter().filter(|r| r[block] == b).collect();
        assert!(!mine.is_empty());
        assert!(mine.iter().all(|r| r[pass] == "true"), "block {b}");
    }
}

#[test]
fn dump_matrix_writes_nonzeros() {
    let path = std::env::temp_dir().join(format!("ptosc-dump-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = ptosc(&["spectrum", "--family", "momentum", "--W", "10", "--L", "5.4", "--strategy", "sum", "--N", "6", "--count", "3", "--dump-matrix", p]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let (header, rows) = csv_rows(&text);
    assert_eq!(header.join(","), "row,col,re,im");
    // sum root: diagonal plus the second subdiagonal only
    assert!(!rows.is_empty());
    for r in &rows {
        let (i, j): (usize, usize) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        assert!(i == j || i == j + 2, "unexpected entry ({i}, {j})");
    }
    let first: f64 = rows[0][2].parse().unwrap();
    assert!((first - 10.0).abs() < 1e-12);
}

#[test]
fn sweep_emits_one_row_per_point() {
    let out = ptosc(&["sweep", "--family", "momentum", "--W", "10", "--vary", "L", "--range", "0:2.5:10", "--strategy", "variational", "--N", "40", "--count", "10", "--format", "csv"]);
    assert!(out.status.success());
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 5);
    let verdict = header.iter().position(|h| h == "verdict").unwrap();
    assert_eq!(rows[0][verdict], "all-real-positive");
    assert_eq!(rows[4][verdict], "rejected");
}

#[test]
fn converge_reports_stable_run() {
    let out = ptosc(&["converge", "--family", "momentum", "--W", "1", "--L", "0", "--strategy", "sum", "--n1", "20", "--n2", "40", "--format", "json"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["data"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert_eq!(rows[0]["stable_count"], 20);
}

#[test]
fn check_passes() {
    let out = ptosc(&["check"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("7/7 checks passed"));
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--family", "coordinate", "--L", "10", "--vary", "R", "--values", "0,4,8,9.5", "--strategy", "variational", "--N", "50", "--count", "20", "--format", "json"];
    assert_eq!(ptosc(&args).stdout, ptosc(&args).stdout);
}
