use std::process::{Command, Output};

use tminors::asymptotics::convergence_table;
use tminors::partitions::Partition;
use tminors::scalar::{parse_rational, Scalar};
use tminors::symbols::SymbolSpec;

const FH11: &str = r#"{"builtin":"pure_fh","gamma":1,"delta":1}"#;

fn tm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tm")).args(args).output().expect("run tm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn ok(args: &[&str]) -> String {
    let o = tm(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn determinant_examples() {
    assert_eq!(ok(&["det", "--symbol", FH11, "--N", "2"]), "3\n");
    assert_eq!(ok(&["det", "--symbol", FH11, "--N", "0"]), "1\n");
    assert_eq!(ok(&["minor", "--symbol", FH11, "--lambda", "[]", "--mu", "[1]", "--N", "2"]), "2\n");
    assert_eq!(ok(&["det", "--symbol", FH11, "--N", "2", "--format", "json"]), "{\"value\":\"3\"}\n");
}

#[test]
fn inverse_prints_an_aligned_grid() {
    let out = ok(&["inverse", "--symbol", FH11, "--N", "2"]);
    assert_eq!(out, "[  2/3  -1/3 ]\n[ -1/3   2/3 ]\n");
    assert_eq!(ok(&["inverse", "--symbol", FH11, "--N", "2", "--format", "csv"]), "2/3,-1/3\n-1/3,2/3\n");
}

#[test]
fn exit_codes_name_the_field() {
    let o = tm(&["det", "--symbol", FH11]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`N`"));
    let o = tm(&["det", "--symbol", "{not json", "--N", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`symbol`"));
    let o = tm(&["det", "--symbol", r#"{"builtin":"pure_fh","gamma":1}"#, "--N", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("symbol.delta"));
    let o = tm(&["minor", "--symbol", FH11, "--N", "1", "--mu", "[1,1]"]);
    assert_eq!(o.status.code(), Some(3));
    let o = tm(&["table1", "--profile", r#"{"1":"1"}"#]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("c_2"));
}

fn full_profile(c1: &str) -> String {
    let mut parts = vec![format!("\"1\":\"{c1}\"")];
    for k in 2..=4 {
        parts.push(format!("\"{k}\":\"0\""));
    }
    for k in 1..=4 {
        parts.push(format!("\"-{k}\":\"0\""));
    }
    format!("{{{}}}", parts.join(","))
}

#[test]
fn table1_examples() {
    let out = ok(&["table1", "--profile", &full_profile("1"), "--format", "csv"]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "lambda,mu,bd_sum,skew_sum,equal");
    assert_eq!(rows[1], "[],[1],1,1,true");
    assert_eq!(rows[3], "[],\"[1, 1]\",1/2,1/2,true");
    let out = ok(&["table1", "--profile", &full_profile("0"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for (i, r) in rows.iter().enumerate() {
        let want = if i == 6 { "1" } else { "0" };
        assert_eq!(r["bd_sum"], want);
        assert_eq!(r["equal"], true);
    }
    let pairs = ok(&["table1", "--profile", r#"[[1,"1"],[2,"0"],[3,"0"],[4,"0"],[-1,"0"],[-2,"0"],[-3,"0"],[-4,"0"]]"#]);
    assert!(pairs.starts_with("| lambda | mu |"));
}

#[test]
fn converge_examples() {
    let out = ok(&["converge", "--symbol", FH11, "--mu", "[1]", "--N-max", "6"]);
    let ratios: Vec<String> = out.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().to_string()).collect();
    assert_eq!(ratios, ["1/2", "2/3", "3/4", "4/5", "5/6", "6/7"]);
    let out = ok(&["converge", "--symbol", FH11, "--N-max", "4"]);
    assert!(out.lines().skip(1).all(|l| l.split(',').nth(3) == Some("1")));
    let theta = r#"{"builtin":"theta_gd","gamma":1,"delta":1,"q":"1/2"}"#;
    let out = ok(&["converge", "--symbol", theta, "--mu", "[1]", "--N-max", "5"]);
    let errs: Vec<_> = out.lines().skip(1).map(|l| parse_rational(l.split(',').nth(5).unwrap()).unwrap()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn csv_cells_round_trip() {
    let theta = r#"{"builtin":"theta_gd","gamma":2,"delta":1,"q":"2/3"}"#;
    let out = ok(&["converge", "--symbol", theta, "--lambda", "[1]", "--mu", "[2,1]", "--N-max", "6"]);
    let f = SymbolSpec::ThetaGD { gamma: 2, delta: 1, q: Scalar::frac(2, 3) };
    let lib = convergence_table(&f, &Partition::new(vec![1]).unwrap(), &Partition::new(vec![2, 1]).unwrap(), 2..=6).unwrap();
    assert_eq!(out.lines().count(), 6);
    for (line, row) in out.lines().skip(1).zip(&lib) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(Scalar::Rational(parse_rational(cells[1]).unwrap()), row.minor);
        assert_eq!(Scalar::Rational(parse_rational(cells[2]).unwrap()), row.determinant);
        assert_eq!(Some(Scalar::Rational(parse_rational(cells[3]).unwrap())), row.ratio);
        assert_eq!(Some(parse_rational(cells[5]).unwrap()), row.abs_error);
    }
}

#[test]
fn verify_reports() {
    assert_eq!(ok(&["verify", "dr"]), "duduchava_roch: 9/9 grids OK\n");
    let out = ok(&["verify", "oracle", "--N", "2"]);
    assert!(out.lines().all(|l| l.ends_with("grids OK")), "{out}");
    assert!(out.starts_with("heine:"));
    let out = ok(&["verify", "all", "--quick"]);
    assert!(out.lines().count() >= 10);
    assert_eq!(tm(&["verify", "bogus"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_tm")).args(["verify", "oracle", "--N", "3"]).env("TM_MAX_ORACLE_N", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "biorth", "--quick", "--format", "json", "--jobs", "3"];
    assert_eq!(ok(&args), ok(&args));
    let args = ["converge", "--symbol", FH11, "--mu", "[2]", "--N-max", "7", "--format", "markdown"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn closedform_and_biorth() {
    let out = ok(&["closedform", "fh_determinant", "--params", r#"{"gamma":1,"delta":1,"N":5}"#, "--verify"]);
    assert_eq!(out, "formula_id: fh_determinant\nvalue: 6\ncross_check: OK\n");
    assert_eq!(ok(&["closedform", "two_row_skew", "--params", r#"{"N":2,"j":1,"k":1,"x":"1","y":"1"}"#]), "4\n");
    let out = ok(&["biorth", "pair", "--symbol", FH11, "--j", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["p"], serde_json::json!(["-1/2", "1"]));
    let theta = r#"{"builtin":"theta_gd","gamma":1,"delta":1,"q":"1/2"}"#;
    assert_eq!(ok(&["biorth", "kernel", "--symbol", theta, "--N", "1"]), "[ 2/3 ]\n");
    let out = ok(&["biorth", "kernel", "--symbol", theta, "--N", "3", "--verify-inverse", "--closed"]);
    assert!(out.ends_with("equals_inverse: true\n"));
    assert_eq!(tm(&["biorth", "pair", "--symbol", FH11, "--j", "1", "--closed"]).status.code(), Some(3));
}

#[test]
fn oracle_commands() {
    assert_eq!(ok(&["oracle", "heine", "--symbol", FH11, "--N", "2", "--lambda", "[]", "--mu", "[1]"]), "2\n");
    let out = ok(&["oracle", "heine", "--symbol", FH11, "--N", "2", "--mu", "[1]", "--compare"]);
    assert!(out.ends_with("equal: true\n"));
    assert_eq!(ok(&["oracle", "morris", "--gamma", "2", "--delta", "1", "--N", "2"]), "6\n");
}

#[test]
fn request_files() {
    let dir = std::env::temp_dir().join(format!("tm-req-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("req.json");
    std::fs::write(&path, r#"{"op":"minor_det","symbol":{"builtin":"pure_fh","gamma":1,"delta":1},"N":4,"lambda":[1],"mu":[2],"format":"json"}"#).unwrap();
    let out = ok(&["--request", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["value"].is_string());
    std::fs::write(&path, r#"{"subcommand":"det","symbol":{"builtin":"pure_fh","gamma":1,"delta":1},"N":3}"#).unwrap();
    assert_eq!(ok(&["--request", path.to_str().unwrap()]), "4\n");
    std::fs::write(&path, "[1,2]").unwrap();
    assert_eq!(tm(&["--request", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
