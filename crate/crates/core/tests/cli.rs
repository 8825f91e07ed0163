use std::process::Command;

fn submono(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_submono")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn passing_suite_exits_zero() {
    let (code, text) = submono(&["--suite", "algebra", "--n", "1"]);
    assert_eq!(code, 0);
    assert!(text.contains("PASS") && text.contains("passed, 0 failed"));
}

#[test]
fn failing_checks_exit_one() {
    let (code, text) = submono(&["--suite", "lemmas", "--tol-scale", "1e-30"]);
    assert_eq!(code, 1);
    assert!(text.contains("FAIL"));
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(submono(&["--suite", "stokes", "--n", "2"]).0, 2);
    assert_eq!(submono(&["--n", "0"]).0, 2);
    assert_eq!(submono(&["--tol-scale", "-1"]).0, 2);
    assert_eq!(submono(&["--suite", "nope"]).0, 2);
    assert_eq!(submono(&["--format", "xml"]).0, 2);
}

#[test]
fn json_lines_schema() {
    let (code, text) = submono(&["--suite", "algebra", "--n", "2", "--format", "json-lines"]);
    assert_eq!(code, 0);
    let mut prev = String::new();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let obj = v.as_object().unwrap();
        let fields = ["check", "params", "residual", "tolerance", "pass", "runtime_ms", "error_estimate"];
        assert_eq!(obj.len(), fields.len());
        // raw field order follows the schema
        let pos: Vec<usize> = fields.iter().map(|f| line.find(&format!("\"{f}\":")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{line}");
        assert!(obj["runtime_ms"].is_null());
        let check = obj["check"].as_str().unwrap().to_string();
        assert!(check > prev);
        prev = check;
    }
}

#[test]
fn timings_and_out_file() {
    let dir = std::env::temp_dir().join(format!("submono-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let (code, text) =
        submono(&["--suite", "algebra", "--n", "1", "--format", "csv", "--timings", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "check,params,residual,tolerance,pass,runtime_ms,error_estimate");
    let row = lines.next().unwrap();
    assert!(row.starts_with("algebra/") && !row.ends_with(",,"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sequential_flag_gives_identical_output() {
    let a = submono(&["--suite", "cauchy-ball", "--format", "json-lines"]);
    let b = submono(&["--suite", "cauchy-ball", "--format", "json-lines", "--sequential"]);
    assert_eq!(a, b);
}
