use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moebius-ortho"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn result<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == name)
        .unwrap_or_else(|| panic!("no result `{name}`"))
}

fn real_parts(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|c| c[0].as_f64().unwrap()).collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn inversion_chebyshev_table() {
    let out = run(&["table", "--family", "chebyshev", "--map", "0,1,1,0", "--n", "8"]);
    assert!(out.status.success());
    let rep = json(&out);
    assert_eq!(rep["pass"], true);
    // Q_n(x) = xⁿ T_n(1/x)
    let expected: [&[f64]; 9] = [
        &[1.0],
        &[1.0],
        &[2.0, 0.0, -1.0],
        &[4.0, 0.0, -3.0],
        &[8.0, 0.0, -8.0, 0.0, 1.0],
        &[16.0, 0.0, -20.0, 0.0, 5.0],
        &[32.0, 0.0, -48.0, 0.0, 18.0, 0.0, -1.0],
        &[64.0, 0.0, -112.0, 0.0, 56.0, 0.0, -7.0],
        &[128.0, 0.0, -256.0, 0.0, 160.0, 0.0, -32.0, 0.0, 1.0],
    ];
    for (n, e) in expected.iter().enumerate() {
        assert_eq!(real_parts(&result(&rep, &format!("Q_{n}"))["value"]), e.to_vec(), "Q_{n}");
    }
}

#[test]
fn hermite_gram_norms() {
    let out = run(&["gram", "--family", "hermite", "--map", "identity", "--n", "4"]);
    assert!(out.status.success());
    let rep = json(&out);
    let diag = real_parts(&result(&rep, "diagonal")["value"]);
    let mut k = std::f64::consts::PI.sqrt();
    for (n, g) in diag.iter().enumerate() {
        if n > 0 {
            k *= 2.0 * n as f64;
        }
        assert!((g - k).abs() < 1e-10 * k, "n = {n}: {g} vs {k}");
    }
}

#[test]
fn identity_transform_is_classical() {
    let out = run(&["transform", "--family", "laguerre", "--param", "0.5", "--n", "6"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn every_check_command_passes_on_defaults() {
    for cmd in [
        "ode-check",
        "cd-check",
        "pearson-check",
        "rodrigues-check",
        "genfun-check",
        "zeros",
        "interlace",
        "cayley",
    ] {
        let out = run(&[cmd, "--family", "hermite", "--map", "cayley", "--n", "6"]);
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn bad_input_exits_with_usage_code() {
    for args in [
        &["table", "--map", "1,2,2,4"][..],
        &["table", "--map", "1,2,3"],
        &["table", "--family", "nope"],
        &["table", "--n", "minus"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn output_is_byte_reproducible() {
    let args = ["ode-check", "--family", "jacobi", "--param", "0.5", "--param", "-0.3", "--map", "1,2;0,1;1,0;3,0", "--n", "5", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_replay_reproduces_run() {
    let out_path = scratch("first.json");
    let first = run(&[
        "gram", "--family", "jacobi", "--param", "0.5", "--param", "-0.3", "--map", "cayley", "--n", "5",
        "--output", out_path.to_str().unwrap(),
    ]);
    assert!(first.status.success());
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let mut cfg = rep["config"].clone();
    cfg["output"] = Value::Null;
    let cfg_path = scratch("replay-config.json");
    std::fs::write(&cfg_path, cfg.to_string()).unwrap();
    let replay = run(&["gram", "--config", cfg_path.to_str().unwrap()]);
    assert!(replay.status.success());
    assert_eq!(json(&replay)["results"], rep["results"]);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let cfg_path = scratch("bad-config.json");
    std::fs::write(&cfg_path, r#"{"family":"hermite","map":[[1,0],[0,0],[0,0],[1,0]],"n":3,"colour":"red"}"#).unwrap();
    assert_eq!(run(&["table", "--config", cfg_path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn csv_report_and_plot_file() {
    let plot = scratch("zeros-plot.csv");
    let out = run(&[
        "zeros", "--family", "jacobi", "--param", "0.5", "--param", "-0.3", "--map", "cayley", "--n", "5",
        "--format", "csv", "--plot", plot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command,name,value,expected,tolerance,pass"));
    let plot_text = std::fs::read_to_string(&plot).unwrap();
    let mut lines = plot_text.lines();
    assert_eq!(lines.next(), Some("series,re,im"));
    // Roots of Q_1..Q_5 plus samples of the contour, all on the unit circle.
    let rows: Vec<(f64, f64)> = lines
        .filter(|l| l.starts_with("Q_"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 15);
    let contour: Vec<(f64, f64)> = plot_text
        .lines()
        .filter(|l| l.starts_with("contour"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert!(!contour.is_empty());
    for (re, im) in rows.into_iter().chain(contour) {
        assert!((f64::hypot(re, im) - 1.0).abs() < 1e-9);
    }
}
