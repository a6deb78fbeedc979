use std::process::{Command, Output};

fn vogelkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vogelkit")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = vogelkit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&full)).unwrap()
}

#[test]
fn params_of_registry_rows() {
    for (name, abc) in [("e8", ["-2", "12", "20"]), ("g2", ["-2", "10/3", "8/3"]), ("sl(5)", ["-2", "2", "5"])] {
        let v = json(&["params", "--algebra", name]);
        assert_eq!([&v["alpha"], &v["beta"], &v["gamma"]], abc.map(serde_json::Value::from).each_ref(), "{name}");
    }
    let v = json(&["params", "--abc", "-2,12,20"]);
    assert_eq!(v["t"], "30");
}

#[test]
fn dimension_under_both_semantics() {
    assert_eq!(json(&["dim", "--algebra", "e8"])["dim"], "248");
    assert_eq!(json(&["dim", "--algebra", "so(7)", "--semantics", "ws"])["dim"], "21");
    assert_eq!(json(&["dim", "--abc", "-2,1,5"])["dim"], "21");
}

#[test]
fn casimir_eigenvalues_at_sl3() {
    let v = json(&["casimir", "--algebra", "sl(3)", "--order", "3"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["series"], "8");
    assert_eq!(rows[2]["casimir"], "36");
    assert_eq!(rows[3]["casimir"], "-54");
}

#[test]
fn wheel_table_as_csv() {
    let out = stdout(&["wheels", "--max", "8", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "wheel_product,polynomial");
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[1], r#"w2,"{""t^2"":""4""}""#);
    assert!(lines[11].starts_with("w2^4,"));
}

#[test]
fn decomposition_record() {
    let v = json(&["decomp", "--algebra", "sl(3)"]);
    for (k, want) in [("X0", "1"), ("X1", "8"), ("X2", "20"), ("Y", "35")] {
        assert_eq!(v[k], want);
    }
    assert_eq!(v["cubic_check"], true);
    let e8 = json(&["decomp", "--algebra", "e8"]);
    assert_eq!(e8["X2"], "30380");
    assert!(e8["cubic_check"].is_null());
}

#[test]
fn torus_output_is_deterministic() {
    let a = stdout(&["torus", "--semantics", "ws", "--format", "json"]);
    let b = stdout(&["torus", "--semantics", "ws", "--format", "json"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["series"].as_array().unwrap().len(), 7);
}

#[test]
fn unknown_algebra_is_an_error() {
    let out = vogelkit(&["dim", "--algebra", "h7"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("h7"));
}

#[test]
fn target_flags_are_exclusive() {
    assert!(!vogelkit(&["dim", "--algebra", "e8", "--abc", "1,2,3"]).status.success());
    assert!(!vogelkit(&["dim"]).status.success());
}

#[test]
fn verify_all_passes() {
    let out = vogelkit(&["verify", "--suite", "all", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["pass"] == true));
}
