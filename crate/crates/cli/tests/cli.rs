use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn uso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uso"))
        .args(args)
        .output()
        .expect("spawn uso")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
}

fn write_map(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_psi_to_stdout() {
    let o = uso(&["gen", "--family", "psi", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "uso-map v1\nn=2\n3 2 0 1\n");
}

#[test]
fn random_gen_is_byte_identical() {
    let a = uso(&["gen", "--family", "random", "--n", "7", "--seed", "42"]);
    let b = uso(&["gen", "--family", "random", "--n", "7", "--seed", "42"]);
    let c = uso(&["gen", "--family", "random", "--n", "7", "--seed", "43"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn product_of_files() {
    let dir = tempfile::tempdir().unwrap();
    let lo = write_map(dir.path(), "lo.map", "uso-map v1\nn=1\n1\n0\n");
    let hi = write_map(dir.path(), "hi.map", "uso-map v1\nn=1\n0\n1\n");
    let o = uso(&[
        "gen", "--family", "product", "--lower", &lo, "--upper", &hi, "--dir", "up",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "uso-map v1\nn=2\n3 2 0 1\n");
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_map(dir.path(), "good.map", "uso-map v1\nn=2\n3 2 0 1\n");
    let o = uso(&["verify", &good]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "uso"), "true");
    assert_eq!(field(&out, "sink"), "2");
    assert_eq!(field(&out, "sink_set"), "{2}");

    // A directed 4-cycle: an orientation without a sink.
    let cyclic = write_map(dir.path(), "cyc.map", "uso-map v1\nn=2\n1\n2\n2\n1\n");
    let o = uso(&["verify", &cyclic]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert_eq!(field(&out, "orientation"), "true");
    assert_eq!(field(&out, "uso"), "false");
    assert_eq!(field(&out, "sink"), "none");

    let truncated = write_map(dir.path(), "bad.map", "uso-map v1\nn=2\n3\n2\n0\n");
    assert_eq!(uso(&["verify", &truncated]).status.code(), Some(1));
    assert_eq!(uso(&["verify", "/nonexistent/x.map"]).status.code(), Some(1));
}

#[test]
fn solve_rejects_non_uso() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = write_map(dir.path(), "cyc.map", "uso-map v1\nn=2\n1\n2\n2\n1\n");
    assert_eq!(uso(&["solve", &cyclic, "--method", "scan"]).status.code(), Some(2));
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(uso(&["gen", "--family", "nope"]).status.code(), Some(1));
    assert_eq!(uso(&["gen", "--family", "psi"]).status.code(), Some(1));
    assert_eq!(uso(&["enum", "--n", "4"]).status.code(), Some(1));
}

#[test]
fn period_of_psi() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi5.map");
    let p = path.to_str().unwrap();
    assert!(uso(&["gen", "--family", "psi", "--n", "5", "--out", p])
        .status
        .success());
    let out = stdout(&uso(&["period", p, "--orbit"]));
    assert_eq!(field(&out, "period"), "32");
    assert_eq!(field(&out, "orbit").split(',').count(), 32);
    assert_eq!(field(&out, "orbit").split(',').next(), Some("0"));
}

#[test]
fn all_methods_agree_on_the_sink() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..5u64 {
        let path = dir.path().join(format!("r{seed}.map"));
        let p = path.to_str().unwrap();
        let seed_s = seed.to_string();
        assert!(
            uso(&["gen", "--family", "random", "--n", "6", "--seed", &seed_s, "--out", p])
                .status
                .success()
        );
        let scan = stdout(&uso(&["solve", p, "--method", "scan"]));
        let sink = field(&scan, "sink").to_string();
        assert!(field(&scan, "queries").parse::<u64>().unwrap() <= 64);
        for method in [
            vec!["--method", "period"],
            vec!["--method", "qpf", "--seed", &seed_s],
            vec!["--method", "qpf", "--mode", "statevector", "--t", "8"],
            vec!["--method", "facet"],
            vec!["--method", "facet", "--decision", "period"],
            vec!["--method", "random-edge", "--seed", &seed_s],
        ] {
            let mut args = vec!["solve", p];
            args.extend(method.iter().copied());
            let o = uso(&args);
            assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
            assert_eq!(field(&stdout(&o), "sink"), sink, "{args:?}");
        }
    }
}

#[test]
fn json_output_is_one_object() {
    let o = uso(&["--json", "enum", "--n", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["count"], 744);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi4.map");
    let p = path.to_str().unwrap();
    assert!(uso(&["gen", "--family", "psi", "--n", "4", "--out", p])
        .status
        .success());
    let o = uso(&["solve", p, "--method", "qpf", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["period"], 16);
    assert!(v["samples"].is_array());
    assert!(v["oracle_queries"].as_u64().unwrap() <= 21);
}

#[test]
fn enum_counts() {
    for (n, count) in [(1, "2"), (2, "12"), (3, "744")] {
        let out = stdout(&uso(&["enum", "--n", &n.to_string()]));
        assert_eq!(field(&out, "count"), count);
    }
}

#[test]
fn qpf_exhaustion_exits_three() {
    // With t = n the spectrum of a period-4 orbit is exact, but a single
    // sample that lands on 0 recovers nothing.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi2.map");
    let p = path.to_str().unwrap();
    assert!(uso(&["gen", "--family", "psi", "--n", "2", "--out", p])
        .status
        .success());
    let mut saw_exhaustion = false;
    for seed in 0..50 {
        let o = uso(&[
            "solve",
            p,
            "--method",
            "qpf",
            "--t",
            "2",
            "--samples",
            "1",
            "--retries",
            "1",
            "--seed",
            &seed.to_string(),
        ]);
        match o.status.code() {
            Some(0) => assert_eq!(field(&stdout(&o), "sink"), "2"),
            Some(3) => saw_exhaustion = true,
            other => panic!("unexpected exit {other:?}"),
        }
    }
    assert!(saw_exhaustion);
}

#[test]
fn bench_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let o = uso(&[
        "bench",
        "--family",
        "random",
        "--n-range",
        "2..4",
        "--seeds",
        "0-1",
        "--methods",
        "naive-walk,scan,qpf,facet,random-edge",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family,n,seed,method,sink,sink_set,scan_sink,queries,period,oracle_queries,validation_queries")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3 * 2 * 5);
    for row in rows {
        let (head, _) = row.split_once(",\"").unwrap();
        let (_, tail) = row.rsplit_once("\",").unwrap();
        let sink = head.rsplit(',').next().unwrap();
        let scan_sink = tail.split(',').next().unwrap();
        assert_eq!(sink, scan_sink, "{row}");
    }
}
