use std::process::{Command, Output};

fn weakmodel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakmodel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("JSON output")
}

#[test]
fn density_last_row_near_inverse_zeta() {
    let o = weakmodel(&["density", "--n", "1", "--k", "2", "--N-max", "1000000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema: weakmodel.density/1"));
    assert_eq!(lines.next(), Some("N,count,volume,frequency,target_lower,target_upper"));
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(last[0], "1000000");
    let f: f64 = last[3].parse().unwrap();
    assert!((f - 0.607_927_101_854_026_6).abs() < 2e-3);
}

#[test]
fn hole_scan_and_certificate() {
    let o = weakmodel(&["holes", "--n", "1", "--k", "2", "--m", "3", "--scan", "--limit", "10000"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["t"][0], 48);
    assert_eq!(v["schema"], "weakmodel.hole_scan/1");

    let o = weakmodel(&["holes", "--m", "3"]);
    let v = json(&o);
    assert_eq!(v["schema"], "weakmodel.hole_certificate/1");
    let t: u64 = v["t"][0].as_str().unwrap().parse().unwrap();
    assert_eq!(t % 900, 548);
}

#[test]
fn oracle_count() {
    let o = weakmodel(&["oracle", "--n", "1", "--k", "2", "--L", "4", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["count"], 15);
    assert_eq!(v["patterns"].as_array().unwrap().len(), 15);
}

#[test]
fn exit_codes() {
    assert_eq!(weakmodel(&["oracle", "--L", "30"]).status.code(), Some(3));
    assert_eq!(weakmodel(&["density", "--n", "0"]).status.code(), Some(2));
    assert_eq!(weakmodel(&["nonsense"]).status.code(), Some(2));
    assert_eq!(weakmodel(&["oracle", "--L", "4", "--radius", "1"]).status.code(), Some(2));
    assert_eq!(weakmodel(&["--help"]).status.code(), Some(0));
    assert_eq!(weakmodel(&["euclid", "--d", "9"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("weakmodel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("config.json");
    std::fs::write(&cfg, r#"{"n": 1, "k": 2, "oracle": {"L": 8}}"#).unwrap();
    let cfg = cfg.to_str().unwrap();

    let v = json(&weakmodel(&["--config", cfg, "oracle"]));
    assert_eq!(v["count"], 175);
    let v = json(&weakmodel(&["--config", cfg, "oracle", "--L", "4"]));
    assert_eq!(v["count"], 15);

    let out = dir.join("entropy.csv");
    let o = weakmodel(&["entropy", "--schedule", "4,8", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# schema: weakmodel.entropy/1\nL,count,per_site_log2,lower_bits,upper_bits\n4,15,"));

    std::fs::write(dir.join("bad.json"), r#"{"bogus": 1}"#).unwrap();
    let bad = dir.join("bad.json");
    assert_eq!(weakmodel(&["--config", bad.to_str().unwrap(), "oracle", "--L", "4"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    for args in [
        &["patterns", "--n", "2", "--k", "1", "--radius", "1", "--N-max", "150", "--list"][..],
        &["sieve", "--n", "2", "--k", "1", "--N-max", "60"][..],
        &["oracle", "--L", "14"][..],
    ] {
        let one = weakmodel(&[&["--threads", "1"], args].concat());
        let many = weakmodel(&[&["--threads", "6"], args].concat());
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, many.stdout, "{args:?}");
    }
}

#[test]
fn every_output_declares_a_schema() {
    let cases: [&[&str]; 8] = [
        &["sieve", "--N-max", "20"],
        &["density", "--N-max", "1000"],
        &["holes", "--m", "2"],
        &["patterns", "--L", "3", "--N-max", "1000"],
        &["oracle", "--L", "3"],
        &["entropy", "--schedule", "2,3"],
        &["euclid", "--report", "points", "--T", "20"],
        &["verify", "--quick"],
    ];
    for args in cases {
        let o = weakmodel(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let ok = text.starts_with("# schema: weakmodel.")
            || serde_json::from_str::<serde_json::Value>(&text)
                .map(|v| v["schema"].as_str().is_some_and(|s| s.starts_with("weakmodel.")))
                .unwrap_or(false);
        assert!(ok, "{args:?}: {text}");
    }
}

#[test]
fn complement_report() {
    let o = weakmodel(&["patterns", "--n", "2", "--k", "1", "--radius", "1", "--N-max", "100", "--complement"]);
    let v = json(&o);
    assert_eq!(v["counts_equal"], true);
    assert_eq!(v["flip_is_bijection"], true);
    assert_eq!(v["primary"]["count"], v["complement"]["count"]);
}

#[test]
fn euclid_reports() {
    let o = weakmodel(&["euclid", "--report", "density", "--schedule", "10000"]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    let f: f64 = row[2].parse().unwrap();
    assert!((f - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-2);
    let o = weakmodel(&["euclid", "--lo", "0", "--hi", "0:2:1", "--report", "points", "--T", "100"]);
    let n = stdout(&o).lines().count() - 2;
    assert!((n as f64 - 100.0).abs() <= 3.0);
}
