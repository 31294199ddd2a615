use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use zccs::boolfn::parse_gbf;
use zccs::cli::{read_code_set, write_code_set, CodeSetFile};
use zccs::construct::{build_ccc, build_zccs};

fn zccs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zccs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generate_example(dir: &Path) -> std::path::PathBuf {
    let out = dir.join("example.json");
    let o = zccs(&[
        "generate",
        "--kind",
        "zccs",
        "--q",
        "2",
        "--p",
        "3",
        "--m",
        "3",
        "--f",
        "x1*x2",
        "--delete",
        "x0",
        "--gamma",
        "x2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "K=12 M=4 N=24 Z=8 delta=6");
    out
}

#[test]
fn generate_example_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = generate_example(dir.path());
    let loaded = read_code_set(&path).unwrap();
    let f = parse_gbf("x1*x2", 3, 2).unwrap();
    assert_eq!(loaded, build_zccs(&f, &[0], Some(2), 3, 2).unwrap());
}

#[test]
fn generate_ccc() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ccc.json");
    let o = zccs(&[
        "generate",
        "--kind",
        "ccc",
        "--q",
        "2",
        "--m",
        "2",
        "--f",
        "x0*x1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "K=2 M=2 N=4 Z=4 delta=2");
    let f = parse_gbf("x0*x1", 2, 2).unwrap();
    assert_eq!(
        read_code_set(&out).unwrap(),
        build_ccc(&f, &[], None).unwrap()
    );

    let v = zccs(&["verify", "--in", out.to_str().unwrap(), "--max-zcz"]);
    assert!(v.status.success());
    let text = stdout(&v);
    assert!(text.contains("is_ccc: true"));
    assert!(text.contains("max_zcz: 4"));
}

#[test]
fn generate_usage_errors() {
    let o = zccs(&[
        "generate",
        "--kind",
        "zccs",
        "--q",
        "2",
        "--m",
        "3",
        "--f",
        "x1*x2",
        "--delete",
        "x0",
        "--out",
        "/nonexistent/never.json",
    ]);
    assert!(!o.status.success());

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    let o = zccs(&[
        "generate",
        "--kind",
        "zccs",
        "--q",
        "3",
        "--p",
        "3",
        "--m",
        "3",
        "--f",
        "x1*x2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("modulus"));
    assert!(!out.exists());

    let o = zccs(&[
        "generate",
        "--kind",
        "ccc",
        "--q",
        "2",
        "--m",
        "3",
        "--f",
        "x1*x2",
        "--delete",
        "x0",
        "--gamma",
        "x0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_pass_and_corrupted() {
    let dir = TempDir::new().unwrap();
    let path = generate_example(dir.path());

    let o = zccs(&[
        "verify",
        "--in",
        path.to_str().unwrap(),
        "--zcz",
        "8",
        "--max-zcz",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in [
        "is_zccs: true",
        "optimal: true",
        "peak: 96",
        "max_zcz: 8",
        "result: PASS",
    ] {
        assert!(text.contains(line), "missing {line:?} in\n{text}");
    }

    // Default width is the file's claimed Z.
    let o = zccs(&["verify", "--in", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("zcz: 8"));

    let o = zccs(&["verify", "--in", path.to_str().unwrap(), "--zcz", "0"]);
    assert_eq!(o.status.code(), Some(2));

    let mut file: CodeSetFile =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    file.codes[0].sequences[0][0] = (file.codes[0].sequences[0][0] + 1) % 6;
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&file).unwrap()).unwrap();
    let o = zccs(&["verify", "--in", bad.to_str().unwrap(), "--zcz", "8"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("result: FAIL"));
    // Entry 0 of the first member now breaks code 0's own sidelobe at τ = -1,
    // which precedes every cross pair in scan order.
    assert!(text.contains("witness: mu1=0 mu2=0 tau=-1"), "{text}");
    let set = read_code_set(&bad).unwrap();
    let brute = zccs::correlate::code_accf(&set.codes()[0], &set.codes()[0], -1).unwrap();
    assert!(brute.to_complex().norm() > 1e-6);

    std::fs::write(&bad, "{ not json").unwrap();
    let o = zccs(&["verify", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed"));
}

#[test]
fn corr_csv_rows() {
    let dir = TempDir::new().unwrap();
    let path = generate_example(dir.path());

    let o = zccs(&["corr", "--in", path.to_str().unwrap(), "--pair", "0,0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "tau,re,im,abs,exact_zero");
    assert_eq!(rows.len(), 1 + 47);
    assert!(rows.contains(&"0,96,0,96,false"));
    assert!(rows.iter().any(|r| r.starts_with("23,")));
    assert!(rows.iter().any(|r| r.starts_with("-23,")));
    assert!(!rows
        .iter()
        .any(|r| r.starts_with("24,") || r.starts_with("-24,")));

    let csv = dir.path().join("cross.csv");
    let o = zccs(&[
        "corr",
        "--in",
        path.to_str().unwrap(),
        "--pair",
        "0,1",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    for row in text.lines().skip(1) {
        let cols: Vec<&str> = row.split(',').collect();
        let tau: i64 = cols[0].parse().unwrap();
        let re: f64 = cols[1].parse().unwrap();
        let im: f64 = cols[2].parse().unwrap();
        let zero = cols[4] == "true";
        if tau.abs() < 8 {
            assert!(zero, "row {row}");
        }
        if !zero {
            assert!(re.hypot(im) > 1e-6, "row {row}");
        }
    }

    let o = zccs(&["corr", "--in", path.to_str().unwrap(), "--pair", "0,12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
}

#[test]
fn library_write_read() {
    let dir = TempDir::new().unwrap();
    let f = parse_gbf("2*x0*x1 + 2*x1*x2 + x0", 3, 4).unwrap();
    let set = build_zccs(&f, &[], None, 5, 3).unwrap();
    let path = dir.path().join("s.json");
    write_code_set(&path, &set).unwrap();
    assert_eq!(read_code_set(&path).unwrap(), set);
}
