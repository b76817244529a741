use std::path::Path;
use std::process::{Command, Output};

fn lab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lab"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .env_remove("LAB_STEP_BUDGET")
        .env_remove("LAB_CODE_BUDGET")
        .output()
        .expect("lab runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn codec_commands() {
    let d = tempfile::tempdir().unwrap();
    let o = lab(d.path(), &["codec", "pair", "1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "10");

    let o = lab(d.path(), &["codec", "unpair", "7"]);
    assert_eq!(o.status.code(), Some(1));

    let o = lab(d.path(), &["codec", "from-bits", "0110"]);
    assert_eq!(stdout(&o).trim(), "21");
    let o = lab(d.path(), &["codec", "bits", "29"]);
    assert_eq!(stdout(&o).trim(), "\"1110\"");

    let o = lab(d.path(), &["codec", "decode", "29"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a multiple of 8"));
}

#[test]
fn usage_and_config_errors() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(lab(d.path(), &["codec", "pair", "1"]).status.code(), Some(2));
    assert_eq!(lab(d.path(), &["--step-budget", "0", "codec", "pair", "1", "2"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_lab"))
        .args(["codec", "pair", "1", "2"])
        .env("LAB_STEP_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tpl_run_and_tau() {
    let d = tempfile::tempdir().unwrap();
    let prog = d.path().join("double.tpl");
    std::fs::write(&prog, "out = in * 2;\n").unwrap();
    let p = prog.to_str().unwrap();
    let o = lab(d.path(), &["tpl", "run", p, "--input", "21"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("42"), "{}", stdout(&o));
}

#[test]
fn proof_check_and_search() {
    let d = tempfile::tempdir().unwrap();
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/scripts/13_zero_below_one.proof");
    let o = lab(d.path(), &["proof", "check", script.to_str().unwrap(), "--theory", "S", "--target", "0 < #1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("valid: true"));

    let o = lab(d.path(), &["proof", "check", script.to_str().unwrap(), "--theory", "S", "--target", "#1 < 0"]);
    assert_eq!(o.status.code(), Some(1));

    let o = lab(d.path(), &["proof", "search", "--theory", "S", "--target", "A x. A y. (x < y -> ~(y < x))", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("10"));
}

#[test]
fn construct_rosser_writes_artifacts() {
    let d = tempfile::tempdir().unwrap();
    let o = lab(d.path(), &["--code-budget", "1000", "--step-budget", "10000", "construct", "rosser", "S"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["searcher_pos.tpl", "searcher_neg.tpl", "sentence.fol", "rosser.report"] {
        assert!(d.path().join(f).exists(), "{f} missing");
    }
    let report = std::fs::read_to_string(d.path().join("rosser.report")).unwrap();
    assert_eq!(report, stdout(&o));
    assert!(report.contains("proof_found: false"));
    assert!(report.contains("refutation_found: false"));
}

#[test]
fn construct_diagonal_refutes_constant_zero() {
    let d = tempfile::tempdir().unwrap();
    let decider = d.path().join("zero.tpl");
    std::fs::write(&decider, "out = 0;\n").unwrap();
    let o = lab(d.path(), &["construct", "diagonal", decider.to_str().unwrap(), "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("outcome: refuted"));
    assert!(d.path().join("diagonal.tpl").exists());
}

#[test]
fn construct_henkin_and_craig() {
    let d = tempfile::tempdir().unwrap();
    let o = lab(d.path(), &["construct", "henkin", "--count", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(d.path().join("henkin.fol").exists());
    let o = lab(d.path(), &["construct", "craig", "S"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(d.path().join("craig_decider.tpl").exists());
}
