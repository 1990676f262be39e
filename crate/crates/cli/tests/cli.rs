use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use asyminv::catalog::{presets, Model, NSClass};
use asyminv::scalar::{parse_rat, pow, Rat};
use num_traits::{Signed, Zero};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asyminv")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("asyminv-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes()).records().map(Result::unwrap).collect()
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&["eval", "--model", "blowup3", "--class", "2,-1", "--what", "vol"]), "7 (closed_form)\n");
    assert_eq!(
        stdout(&["eval", "--model", "cutkosky_golden", "--class", "0,0,0", "--what", "vol"]),
        "-7/2 + 5/2*sqrt(5) (closed_form)\n"
    );
    assert_eq!(stdout(&["eval", "--class", "0,0"]), "0 (closed_form)\n");
    assert_eq!(stdout(&["eval", "--model", "blowup3", "--class", "2,-1", "--what", "hhat"]), "[7, 0, 0, 0] (closed_form)\n");
    assert_eq!(stdout(&["eval", "--class", "3,1", "--what", "ord", "--ray", "3"]), "1 (closed_form)\n");
    assert_eq!(stdout(&["eval", "--model", "blowup3", "--class", "3,-2", "--what", "rvol", "--ray", "4"]), "4 (closed_form)\n");
}

#[test]
fn json_carries_exact_and_decimal_forms() {
    let out = stdout(&["eval", "--model", "cutkosky_golden", "--class", "0,0,0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let cell = &v["table"]["rows"][0][3];
    assert_eq!(cell["exact"], "-7/2 + 5/2*sqrt(5)");
    assert!((cell["decimal"].as_f64().unwrap() - 2.0901699437494745).abs() < 1e-12);
}

#[test]
fn configuration_errors_exit_with_two() {
    assert_eq!(code(&["eval", "--class", "1,2,3"]), 2);
    assert_eq!(code(&["eval", "--class", "1,x"]), 2);
    assert_eq!(code(&["eval", "--model", "no_such_model", "--class", "1"]), 2);
    assert_eq!(code(&["eval", "--class", "1,0", "--what", "ord", "--ray", "9"]), 2);
    assert_eq!(code(&["grid", "--slice", "0,0;0,0;0,1;-1;2;24"]), 2);
    assert_eq!(code(&["grid", "--slice", "0,0;1,0;2,0;-1;2;24"]), 2);
    assert_eq!(code(&["family", "--rule", "threshold m1+"]), 2);
    assert_eq!(code(&["check", "--property", "nonsense"]), 2);
    assert_eq!(code(&["eval"]), 2);
}

#[test]
fn computational_errors_exit_with_one() {
    let out = run(&["zariski", "--class", "1,-2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not pseudoeffective"));
    assert_eq!(code(&["eval", "--model", "abelian_golden", "--class", "1,0,0", "--what", "rvol"]), 1);
}

#[test]
fn model_file_errors_name_the_line() {
    let path = temp_file("bad.model", "model cutkosky\ngram 0 1 1\ngram 0 x 1\n");
    let out = run(&["eval", "--model", path.to_str().unwrap(), "--class", "0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn model_file_matches_the_golden_preset() {
    let path = temp_file("golden.model", "model cutkosky\ngram 0 1 1\ngram 0 2 1\ngram 1 2 1\na 1 1 0\nb 1 2 -1\n");
    assert_eq!(
        stdout(&["eval", "--model", path.to_str().unwrap(), "--class", "0,0,0"]),
        "-7/2 + 5/2*sqrt(5) (closed_form)\n"
    );
}

#[test]
fn blowup_grid_matches_the_three_chambers() {
    for d in [2u32, 3] {
        let model = format!("blowup_pd:{d}");
        let out = stdout(&["grid", "--model", &model, "--slice", "0,0;1,0;0,1;-1;2;24", "--format", "csv"]);
        let rows = csv_rows(&out);
        assert_eq!(rows.len(), 25 * 25);
        for r in rows {
            let (x, y) = (parse_rat(&r[2]).unwrap(), -parse_rat(&r[3]).unwrap());
            let expected = if x.is_negative() || y > x {
                Rat::zero()
            } else if y.is_negative() {
                pow(&x, d)
            } else {
                pow(&x, d) - pow(&y, d)
            };
            assert_eq!(parse_rat(&r[5]).unwrap(), expected, "{r:?}");
        }
    }
}

#[test]
fn abelian_grid_regions_follow_q() {
    let Model::Abelian(a) = presets::abelian_golden().unwrap() else { panic!() };
    let out = stdout(&["grid", "--model", "abelian_golden", "--slice", "0,0,0;1,0,0;0,0,1;-2;2;8", "--what", "hhat", "--format", "csv"]);
    for r in csv_rows(&out) {
        let c: NSClass = r[4].parse().unwrap();
        let q = a.q(&c);
        let h: Vec<Rat> = (6..9).map(|k| parse_rat(&r[k]).unwrap()).collect();
        let nonzero: Vec<usize> = (0..3).filter(|&i| !h[i].is_zero()).collect();
        if q.is_positive() {
            assert!(nonzero == [0] || nonzero == [2], "{r:?}");
        } else if q.is_negative() {
            assert_eq!(nonzero, [1], "{r:?}");
        } else {
            assert!(nonzero.is_empty(), "{r:?}");
        }
        assert_eq!(&h[0] - &h[1] + &h[2], q);
    }
}

#[test]
fn json_round_trip_reproduces_table_and_csv() {
    let args = ["grid", "--slice", "0,0;1,0;0,1;-1;2;6", "--what", "ord"];
    let json = stdout(&[&args[..], &["--format", "json"]].concat());
    for format in ["table", "csv", "json"] {
        let mut child = Command::new(env!("CARGO_BIN_EXE_asyminv"))
            .args(["render", "-", "--format", format])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(json.as_bytes()).unwrap();
        let out = child.wait_with_output().unwrap();
        assert!(out.status.success());
        let direct = stdout(&[&args[..], &["--format", format]].concat());
        assert_eq!(String::from_utf8(out.stdout).unwrap(), direct, "{format}");
    }
}

#[test]
fn cutkosky_sweep_converges() {
    let out = stdout(&["sweep", "--model", "cutkosky_golden", "--to", "1000"]);
    assert!(out.contains("final relative error") && out.ends_with("PASS\n"), "{out}");
    let toric = stdout(&["sweep", "--model", "blowup3", "--class", "2,-1", "--to", "8"]);
    assert!(toric.contains("vol_m = vol exactly at every level: PASS"), "{toric}");
}

#[test]
fn log_concavity_check_passes() {
    let out = stdout(&["check", "--property", "log_concavity", "--n", "1000", "--seed", "7"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("log_concavity")).count(), 8);
    assert!(!out.contains("FAIL"), "{out}");
}

#[test]
fn chamber_rows_find_three_blowup_chambers() {
    let out = stdout(&["check", "--property", "chamber_fit", "--model", "blowup3"]);
    assert!(out.contains("3 chambers, piecewise polynomial"), "{out}");
    let c = stdout(&["check", "--property", "chamber_fit", "--model", "cutkosky_golden"]);
    assert!(c.contains("no polynomial fit on sigma < 1"), "{c}");
}

#[test]
fn threshold_scan_is_linear() {
    let out = stdout(&["family", "--rule", "threshold m1+2m2", "--scan", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let diffs = v["second_differences"].as_array().unwrap();
    assert!(!diffs.is_empty());
    assert!(diffs.iter().all(|d| d[2] == "0" && d[3] == "0"));
    assert!(v["creases"].as_array().unwrap().is_empty());
}

#[test]
fn square_table_fails_multiplicativity() {
    let mut text = String::from("family rank 1 vars 2\nrule table\n");
    for m in 0..=6 {
        text.push_str(&format!("entry {m} : {},0\n", m * m));
    }
    let path = temp_file("square.family", &text);
    let out = run(&["family", "--model", path.to_str().unwrap(), "--verify", "--box", "0,3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    assert_eq!(code(&["family", "--rule", "principal 1 1", "--rank", "1", "--verify", "--box", "0,3"]), 0);
    assert_eq!(code(&["family", "--model", "blowup2", "--rule", "toric self 0,3", "--verify", "--box", "-2,2"]), 0);
}

#[test]
fn toric_family_order_matches_ord_e() {
    for (dir, expected) in [("2,-1", "0"), ("1,1", "1"), ("3,2", "2")] {
        let json = stdout(&[
            "family", "--model", "blowup2", "--rule", "toric self 0,3", "--weights", "0,1", "--ord", dir, "--depth", "3",
            "--format", "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["ord0"]["exact"], expected, "{dir}");
        assert_eq!(stdout(&["eval", "--class", dir, "--what", "ord", "--ray", "3"]), format!("{expected} (closed_form)\n"));
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["check", "--property", "homogeneity", "--n", "40", "--seed", "3", "--records", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let grid = ["grid", "--model", "cutkosky_golden", "--slice", "1,0,0,0;0,1,0,0;0,0,0,1;-1/4;1/4;4"];
    assert_eq!(stdout(&grid), stdout(&grid));
}
