use std::process::{Command, Output};

fn fjump(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fjump"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn jn_reports_worked_example() {
    let out = fjump(&["jn", "--char", "5", "--vars", "x,y", "x^4+y^3+x^2*y^2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["jumpingNumbers"], serde_json::json!(["0", "7/12", "4/5", "11/12"]));
    assert_eq!(v["fpt"], "7/12");
    assert_eq!(v["testIdeals"][2], serde_json::json!(["x^2", "y"]));
}

#[test]
fn fpt_and_candidates() {
    let out = fjump(&["fpt", "--char", "7", "--vars", "x,y", "x^2+y^3"]);
    assert_eq!(stdout(&out).trim(), "5/6");
    let out = fjump(&["candidates", "--char", "2", "--bound", "2"]);
    assert_eq!(stdout(&out).trim(), "0, 1/3, 1/2, 2/3");
}

#[test]
fn tau_nu_ft_profile() {
    let f = "x^4+y^3+x^2*y^2";
    let out = fjump(&["tau", "--char", "5", f, "--lambda", "4/5", "--bound", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ideal"], serde_json::json!(["x^2", "y"]));
    assert_eq!(v["stabilizationExponent"], 7);
    assert_eq!(stdout(&fjump(&["nu", "--char", "5", f, "--e", "1"])).trim(), "2");
    assert_eq!(stdout(&fjump(&["ft", "--char", "5", f, "--ideal", "x^2; y"])).trim(), "4/5");
    let out = fjump(&["profile", "--char", "5", f, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ell"], 6);
    assert_eq!(v["boundN"], "488281250");
}

#[test]
fn verify_and_constancy_succeed() {
    let out = fjump(&["verify", "--char", "7", "x^2+y^3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("nu-sandwich"));
    let out = fjump(&["constancy", "--char", "7", "x^2+y^3", "--exponents", "4802,5", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("seed = 9\n"));
}

#[test]
fn exit_codes() {
    // parse
    assert_eq!(fjump(&["fpt", "--char", "5", "x^"]).status.code(), Some(2));
    assert_eq!(fjump(&["fpt", "--char", "5", "x + z"]).status.code(), Some(2));
    // domain
    assert_eq!(fjump(&["fpt", "--char", "6", "x"]).status.code(), Some(3));
    assert_eq!(fjump(&["profile", "--char", "5", "1 + x"]).status.code(), Some(3));
    assert_eq!(fjump(&["constancy", "--char", "7", "x^2+y^3", "--exponents", "4"]).status.code(), Some(3));
    // cap
    assert_eq!(
        fjump(&["ft", "--char", "5", "x^4+y^3+x^2*y^2", "--ideal", "x^5; y^2", "--cap", "1/2"]).status.code(),
        Some(4)
    );
    let out = fjump(&["fpt", "--char", "5", "x^"]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("offset 2"));
}

#[test]
fn json_is_deterministic() {
    let args = ["jn", "--char", "5", "x^4+y^3+x^2*y^2", "--json", "--method", "bisect"];
    let a = fjump(&args);
    let b = fjump(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["constancy", "--char", "5", "x^4+y^3+x^2*y^2", "--exponents", "9", "--seed", "4", "--json"];
    assert_eq!(fjump(&args).stdout, fjump(&args).stdout);
}

#[test]
fn input_file_matches_inline() {
    let dir = std::env::temp_dir().join(format!("fjump-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.txt");
    std::fs::write(&path, "x^2 + y^3 + x^4802\n").unwrap();
    let from_file = fjump(&["fpt", "--char", "7", "--bound", "2", "--input-file", path.to_str().unwrap()]);
    assert_eq!(stdout(&from_file).trim(), "5/6");
    std::fs::remove_dir_all(&dir).unwrap();
}
