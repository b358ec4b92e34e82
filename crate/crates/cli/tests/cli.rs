use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn netlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netlab")).args(args).env_remove("NETLAB_SEED").output().expect("run netlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_writes_a_simple_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    let o = netlab(&["generate", "--model", "model=er p=0.5 n=3", "--seed", "7", "--out", path_str(&out)]);
    assert!(o.status.success(), "{o:?}");
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("simple n=3\n"));
    let net = netlab_core::Network::parse(&text).unwrap();
    assert_eq!(net.vertex_count(), 3);
    assert!(stdout(&o).contains("# config:"));
}

#[test]
fn predict_edge_exact() {
    let o = netlab(&["predict", "--mechanism", "edge", "--p", "0.5", "--exact"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(value(&s, "value"), Some("0.307692"));
    assert_eq!(value(&s, "method"), Some("exact"));
}

#[test]
fn predict_rational_and_mc() {
    let o = netlab(&["predict", "--mechanism", "thin", "--p", "1/2", "--rational", "--porcelain"]);
    let s = stdout(&o);
    assert_eq!(value(&s, "value"), Some("0.400000"));
    assert_eq!(value(&s, "value_exact"), Some("2/5"));
    let o = netlab(&["predict", "--mechanism", "snowball-chain", "--p", "0.5", "--mc", "--reps", "20000", "--porcelain"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let v: f64 = value(&s, "value").unwrap().parse().unwrap();
    let se: f64 = value(&s, "se").unwrap().parse().unwrap();
    assert!((v - 1.0 / 3.0).abs() <= 3.0 * se + 1e-6);
}

#[test]
fn verify_exact_suite_exits_zero() {
    let o = netlab(&["verify", "--suite", "section-6-2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(value(&stdout(&o), "failed"), Some("0"));
}

#[test]
fn exit_codes() {
    assert_eq!(netlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(netlab(&["predict", "--mechanism", "edge"]).status.code(), Some(2));
    assert_eq!(netlab(&["generate", "--model", "model=er p=2 n=3"]).status.code(), Some(1));
    assert_eq!(netlab(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(netlab(&["stats", "--in", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(netlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn same_seed_same_bytes_and_env_override() {
    let args = ["generate", "--model", "model=er p=0.4 n=30", "--seed", "11"];
    let a = netlab(&args);
    let b = netlab(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = netlab(&["generate", "--model", "model=er p=0.4 n=30", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_netlab"))
        .args(["generate", "--model", "model=er p=0.4 n=30", "--seed", "99"])
        .env("NETLAB_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_netlab"))
        .args(["generate", "--model", "model=er p=0.4 n=3"])
        .env("NETLAB_SEED", "minus one")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn generate_read_stats_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    netlab(&["generate", "--model", "model=er p=0.2 n=40", "--seed", "3", "--out", path_str(&out)]);
    let in_memory = netlab_core::generators::gen_er(0.2, 40, 3).unwrap();
    let s = stdout(&netlab(&["stats", "--in", path_str(&out), "--porcelain"]));
    assert_eq!(value(&s, "vertices"), Some("40"));
    assert_eq!(value(&s, "edges").unwrap(), in_memory.edge_count().to_string());
    let multi = dir.path().join("m.txt");
    netlab(&["generate", "--model", "model=edge-exch alpha=0.6 theta=1 K=20000 m=20000", "--out", path_str(&multi)]);
    let s = stdout(&netlab(&["stats", "--in", path_str(&multi), "--power-law", "--trace", "--sizes", "100,1000,20000", "--porcelain"]));
    assert_eq!(value(&s, "kind"), Some("multi"));
    assert_eq!(value(&s, "edges"), Some("20000"));
    assert!(value(&s, "gamma_hat").is_some());
    assert!(value(&s, "trace.20000").is_some());
}

#[test]
fn sample_mechanisms_write_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let pop = dir.path().join("pop.txt");
    netlab(&["generate", "--model", "model=er p=0.3 n=50", "--out", path_str(&pop)]);
    for (mech, extra) in [
        ("canonical", vec!["--size", "10"]),
        ("vertex", vec!["--size", "10"]),
        ("edge", vec!["--size", "5"]),
        ("snowball-full", vec!["--size", "10"]),
        ("snowball-chain", vec!["--size", "10"]),
        ("thin", vec!["--rho", "2"]),
        ("path", vec!["--size", "4"]),
    ] {
        let out = dir.path().join(format!("{mech}.txt"));
        let mut args = vec!["sample", "--mechanism", mech, "--in", path_str(&pop), "--out", path_str(&out), "--seed", "5"];
        args.extend(extra);
        let o = netlab(&args);
        assert!(o.status.success(), "{mech}: {}", String::from_utf8_lossy(&o.stderr));
        let text = fs::read_to_string(&out).unwrap();
        assert!(netlab_core::graph::io::read_provenance(&text).is_some(), "{mech}");
        netlab_core::Network::parse(&text).unwrap();
    }
    let mu = dir.path().join("mu.txt");
    fs::write(&mu, "# n=2\n0.7 0.3\n").unwrap();
    let o = netlab(&["sample", "--mechanism", "universal", "--mu", path_str(&mu)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# sampled: 1 "));
    assert_eq!(netlab(&["sample", "--mechanism", "vertex", "--in", path_str(&pop)]).status.code(), Some(1));
}

#[test]
fn estimators() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    fs::write(&g, "simple n=10\n1 2\n1 3\n1 4\n1 5\n2 3\n4 5\n6 7\n8 9\n9 10\n").unwrap();
    let s = stdout(&netlab(&["estimate", "--estimator", "thinned-er", "--in", path_str(&g), "--porcelain"]));
    assert_eq!(value(&s, "p_hat"), Some("0.200000"));
    assert_eq!(value(&s, "theta_hat"), Some("1.000000"));
    assert_eq!(value(&s, "clipped"), Some("true"));
    let s = stdout(&netlab(&[
        "estimate", "--estimator", "reparam", "--f", "theta-over-2-minus-theta", "--rho", "1", "--in", path_str(&g), "--porcelain",
    ]));
    assert_eq!(value(&s, "theta_tilde"), Some("0.333333"));
    let s = stdout(&netlab(&["estimate", "--estimator", "sbm-rates", "--blocks", "1,1,1,1,1,2,2,2,2,2", "--in", path_str(&g), "--porcelain"]));
    assert_eq!(value(&s, "p_hat"), Some("0.450000"));
    let o = netlab(&["estimate", "--estimator", "sbm-rates", "--blocks", "1,2,3,4,5,6,7,8,9,10", "--in", path_str(&g)]);
    assert_eq!(o.status.code(), Some(1));
}
