use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn spanv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spanv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("spanv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn group_algebra_is_hopf() {
    let o = spanv(&["check", &fixture("z2_group_algebra.json"), "--hopf"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("hopf"));
}

#[test]
fn idempotent_monoid_fails_with_witness() {
    let o = spanv(&["--format", "json", "check", &fixture("idempotent_monoid.json"), "--hopf"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"][0]["status"], "fail");
    assert!(v["checks"][0]["witness"].as_str().unwrap().contains("(z, 1)"));
}

#[test]
fn zero_denominator_is_an_input_error() {
    let text = std::fs::read_to_string(fixture("z2_group_algebra.json")).unwrap();
    let bad = scratch("zero.json", &text.replacen("\"1/1\"", "\"1/0\"", 1));
    let o = spanv(&["check", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema error"));
}

#[test]
fn missing_file_is_an_input_error() {
    assert_eq!(spanv(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn downstream_checks_are_skipped() {
    let o = spanv(&["--format", "json", "check", &fixture("z2_group_algebra_q2_graded.json")]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let status = |name: &str| {
        v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["check"] == name)
            .map(|c| c["status"].as_str().unwrap().to_string())
    };
    assert_eq!(status("monad").as_deref(), Some("pass"));
    assert_eq!(status("opmonoidal").as_deref(), Some("fail"));
    assert_eq!(status("hopf").as_deref(), Some("skipped"));
    assert_eq!(status("antipode").as_deref(), Some("skipped"));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["--format", "json", "--seed", "5", "check", &fixture("z2_hom_groupoid.json")];
    let (a, b) = (spanv(&args), spanv(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("elapsed"));
}

#[test]
fn antipode_output_checks_back() {
    let o = spanv(&["antipode", &fixture("indiscrete_groupoid.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"antipode\""));
    let solved = scratch("solved.json", &stdout(&o));
    assert_eq!(spanv(&["check", &solved, "--antipode"]).status.code(), Some(0));
    let none = spanv(&["antipode", &fixture("idempotent_monoid.json")]);
    assert_eq!(none.status.code(), Some(1));
}

#[test]
fn exported_polyad_checks() {
    let o = spanv(&["export-polyad", &fixture("z2_group_algebra.json"), "--probes", &fixture("probes.json")]);
    assert_eq!(o.status.code(), Some(0));
    let file = scratch("image.json", &stdout(&o));
    let c = spanv(&["check", &file, "--monad", "--hopf"]);
    assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));
}

#[test]
fn bundled_files_round_trip() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        if path.ends_with("probes.json") {
            continue;
        }
        let file = spanv::io::parse_file(&text).unwrap();
        assert_eq!(spanv::io::to_json(&file), text, "{}", path.display());
        let loaded = spanv::io::load(&file).unwrap();
        let back = spanv::io::to_file(&loaded);
        assert_eq!(spanv::io::to_json(&back), text, "{}", path.display());
    }
}
