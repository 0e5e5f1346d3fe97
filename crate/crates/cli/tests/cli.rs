use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_polarcodes")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polarcodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_then_verify_round_trips() {
    let cases: [(&str, &str, &[&str], u64, u64); 5] = [
        ("sym2-basic", "2", &[], 22, 2),
        ("sym2-ext", "3", &[], 107, 2),
        ("herm2", "2", &["--provider", "additive"], 64, 2),
        ("herm2", "2", &[], 85, 2),
        ("herm-ncode", "2", &["--m", "2"], 92, 6),
    ];
    for (family, q, extra, size, d) in cases {
        let path = scratch(&format!("{family}.txt"));
        let p = path.to_str().unwrap();
        let mut args = vec!["construct", "--family", family, "--q", q, "--out", p];
        args.extend_from_slice(extra);
        let (code, report) = run(&args);
        assert_eq!(code, 0, "{family}");
        assert_eq!(report["results"]["size"], size);
        assert_eq!(report["results"]["min_distance"], d);
        assert_eq!(report["artifact_paths"][0], p);
        let (code, report) = run(&["verify", "--in", p]);
        assert_eq!(code, 0, "{family}");
        assert_eq!(report["command"], "verify");
        assert_eq!(report["results"]["size"], size);
        assert_eq!(report["results"]["min_distance"], d);
    }
}

#[test]
fn maximality_and_expected_distance() {
    let path = scratch("basic2.txt");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["construct", "--family", "sym2-basic", "--q", "2", "--out", p]).0, 0);
    let (code, report) = run(&["verify", "--in", p, "--maximality", "--expect-distance", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["maximal"], true);
    assert_eq!(run(&["verify", "--in", p, "--expect-distance", "3"]).0, 2);
    let (code, report) = run(&["verify", "--in", p, "--trust"]);
    assert_eq!(code, 0);
    assert!(report["results"]["min_distance"].is_null());

    let path = scratch("ext4.txt");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["construct", "--family", "sym2-ext", "--q", "4", "--out", p]).0, 0);
    let (code, report) = run(&["verify", "--in", p, "--maximality"]);
    assert_eq!(code, 2);
    assert_eq!(report["results"]["maximal"], false);
}

#[test]
fn bounds_report() {
    let (code, report) = run(&["bounds", "--family", "sym", "--n", "3", "--q", "2"]);
    assert_eq!(code, 0);
    let r = &report["results"];
    assert_eq!(r["family"], "sym");
    assert_eq!(r["bounds"]["additive"], 16);
    assert_eq!(r["bounds"]["cvetkovic"], 36);
    assert_eq!(r["bounds"]["upper_sym3"], 22);
    assert_eq!(r["eigenvalues"].as_array().unwrap().len(), 4);
    let (code, report) = run(&["bounds", "--family", "herm", "--n", "3", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["bounds"]["hoffman_forms_graph"], 176);
    assert!(report["results"]["bounds"]["upper_sym3"].is_null());
}

#[test]
fn numbers_are_integers_or_exact_strings() {
    fn walk(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "{n}"),
            Value::Array(a) => a.iter().for_each(walk),
            Value::Object(o) => o.values().for_each(walk),
            _ => {}
        }
    }
    for args in [
        &["bounds", "--family", "sym", "--n", "4", "--q", "3"][..],
        &["bounds", "--family", "herm", "--n", "2", "--q", "3"],
        &["spectrum", "--kind", "sym", "--n", "3", "--q", "2"],
    ] {
        let (code, report) = run(args);
        assert_eq!(code, 0);
        walk(&report);
    }
}

#[test]
fn spectrum_and_orbits() {
    let (code, report) = run(&["spectrum", "--kind", "herm", "--n", "3", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["vertices"], 512);
    assert_eq!(report["results"]["passed"], true);
    let (code, report) = run(&["orbits", "--q", "2"]);
    assert_eq!(code, 0);
    let sizes: Vec<u64> =
        report["results"]["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, [1, 7, 7, 21, 28]);
    assert_eq!(report["results"]["equitable"], true);
    assert_eq!(run(&["spectrum", "--kind", "sym", "--n", "2", "--q", "2"]).0, 1);
}

#[test]
fn spread_feeds_the_file_provider() {
    let spread = scratch("h3.txt");
    let s = spread.to_str().unwrap();
    let (code, report) = run(&["spread", "--m", "1", "--q", "3", "--out", s]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["size"], 13);
    let out = scratch("from-file.txt");
    let (code, report) =
        run(&["construct", "--family", "herm2", "--q", "3", "--provider", s, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["size"], 1002);
}

#[test]
fn usage_and_parse_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["construct", "--family", "sym2-basic"]).0, 1);
    assert_eq!(run(&["construct", "--family", "sym2-ext", "--q", "6", "--out", "/dev/null"]).0, 1);
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "not a code\n").unwrap();
    assert_eq!(run(&["verify", "--in", bad.to_str().unwrap()]).0, 1);
    let missing = scratch("missing.txt");
    assert_eq!(run(&["verify", "--in", missing.to_str().unwrap()]).0, 1);
}

#[test]
fn tampered_file_fails_verification() {
    let path = scratch("tamper.txt");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["construct", "--family", "sym2-basic", "--q", "2", "--out", p]).0, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let last = text.lines().last().unwrap().to_string();
    std::fs::write(&path, format!("{text}{last}\n")).unwrap();
    let (code, report) = run(&["verify", "--in", p]);
    assert_eq!(code, 2);
    assert!(report["results"]["error"].as_str().unwrap().contains("invariant"));
}
