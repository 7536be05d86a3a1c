use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn aqft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqft"))
        .args(args)
        .env_remove("AQFT_SEED")
        .output()
        .unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn header(path: &Path) -> String {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string()
}

fn manifest(path: &Path) -> serde_json::Value {
    let mut name = path.as_os_str().to_owned();
    name.push(".manifest.json");
    serde_json::from_str(&std::fs::read_to_string(name).unwrap()).unwrap()
}

fn ok(out: &Output) {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn transform_outputs() {
    let out = tmp("transform.csv");
    let spec = tmp("transform_spectrum.csv");
    let trace = tmp("transform_trace.jsonl");
    let net = tmp("transform_network.json");
    ok(&aqft(&[
        "transform",
        "--L",
        "6",
        "--m",
        "3",
        "--delta",
        "0.2",
        "--out",
        out.to_str().unwrap(),
        "--spectrum-out",
        spec.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
        "--network-json",
        net.to_str().unwrap(),
    ]));
    assert_eq!(header(&out), "c,abs_amplitude,phase,is_peak");
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 65);
    assert_eq!(header(&spec), "c,probability,is_peak_target");
    // 6 + (12 - 3) * 2 / 2 gates, 9 of them B, two kicks each
    assert_eq!(std::fs::read_to_string(&trace).unwrap().lines().count(), 18);
    let network: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&net).unwrap()).unwrap();
    assert_eq!(network["gates"].as_array().unwrap().len(), 15);
    let m = manifest(&out);
    assert_eq!(m["format_version"], 1);
    assert_eq!(m["subcommand"], "transform");
    assert_eq!(m["outputs"].as_array().unwrap().len(), 4);
    // 64 / 10 < 50 sites per period
    assert!(!m["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn quality_and_sweep_headers() {
    let q = tmp("quality.csv");
    ok(&aqft(&[
        "quality",
        "--L",
        "7",
        "--delta",
        "0.1",
        "--runs",
        "20",
        "--out",
        q.to_str().unwrap(),
    ]));
    assert_eq!(header(&q), "L,m,r,l,delta,n_runs,mean_Q,stderr_Q");

    let s = tmp("sweep.csv");
    let j = tmp("sweep.json");
    ok(&aqft(&[
        "sweep",
        "--L",
        "6",
        "--m-values",
        "2,6",
        "--deltas",
        "0,0.2",
        "--runs",
        "10",
        "--out",
        s.to_str().unwrap(),
        "--json",
        j.to_str().unwrap(),
    ]));
    assert_eq!(header(&s), "L,m,r,l,delta,n_runs,mean_Q,stderr_Q");
    assert_eq!(std::fs::read_to_string(&s).unwrap().lines().count(), 5);
    let rows: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&j).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 4);

    let sc = tmp("scaling.csv");
    ok(&aqft(&[
        "scaling",
        "--L-values",
        "5-7",
        "--deltas",
        "0.3",
        "--runs",
        "10",
        "--out",
        sc.to_str().unwrap(),
    ]));
    assert_eq!(std::fs::read_to_string(&sc).unwrap().lines().count(), 4);
}

#[test]
fn bounds_flags_invalid_rows() {
    let out = tmp("bounds.csv");
    ok(&aqft(&[
        "bounds",
        "--L-range",
        "16",
        "--m-range",
        "3,7",
        "--out",
        out.to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "L,m,delta_max,prob_aqft_bound,run_ratio,prob_aqft_bound_asymptotic,min_order_exact,min_order_asymptotic,valid"
    );
    assert!(lines[1].starts_with("16,3,") && lines[1].ends_with(",false"));
    assert!(lines[2].starts_with("16,7,") && lines[2].ends_with(",true"));
    assert!(manifest(&out)["extra"]["empirical_C"].is_number());
}

#[test]
fn same_seed_same_bytes() {
    let run = |name: &str, seed: &str| {
        let out = tmp(name);
        ok(&aqft(&[
            "quality",
            "--L",
            "7",
            "--m",
            "4",
            "--delta",
            "0.3",
            "--runs",
            "50",
            "--seed",
            seed,
            "--out",
            out.to_str().unwrap(),
        ]));
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("seed_a.csv", "5"), run("seed_b.csv", "5"));
    assert_ne!(run("seed_a.csv", "5"), run("seed_c.csv", "6"));
}

#[test]
fn seed_from_environment() {
    let out = tmp("env_seed.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_aqft"))
        .args([
            "quality",
            "--L",
            "5",
            "--runs",
            "3",
            "--out",
            out.to_str().unwrap(),
        ])
        .env("AQFT_SEED", "1234")
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(manifest(&out)["master_seed"], 1234);
}

#[test]
fn exit_codes() {
    let out = tmp("exit.csv");
    let out = out.to_str().unwrap();
    assert_eq!(aqft(&["transform", "--out", out]).status.code(), Some(2));
    assert_eq!(
        aqft(&["transform", "--L", "30", "--out", out])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        aqft(&["transform", "--L", "6", "--m", "9", "--out", out])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        aqft(&["quality", "--L", "6", "--delta", "-1", "--out", out])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        aqft(&["transform", "--L", "4", "--out", "/nonexistent/dir/x.csv"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn help_lists_flags() {
    let help = |sub: &str| String::from_utf8(aqft(&[sub, "--help"]).stdout).unwrap();
    for flag in [
        "--L",
        "--r",
        "--l",
        "--m",
        "--delta",
        "--realization",
        "--spectrum-out",
        "--trace",
        "--network-json",
        "--seed",
        "--out",
    ] {
        assert!(help("transform").contains(flag), "transform {flag}");
    }
    for flag in ["--m-values", "--deltas", "--runs", "--workers", "--json"] {
        assert!(help("sweep").contains(flag), "sweep {flag}");
    }
    for flag in ["--L-values", "--ratio"] {
        assert!(help("scaling").contains(flag), "scaling {flag}");
    }
    for flag in ["--L-range", "--m-range", "--c-max-l"] {
        assert!(help("bounds").contains(flag), "bounds {flag}");
    }
}
