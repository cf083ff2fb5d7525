use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn curvediff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvediff")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn generate(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let o = curvediff(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn generate_lemniscate_file() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "lem.csv", &["--kind", "lemniscate", "--nodes", "512"]);
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# closed=true"));
    assert_eq!(lines.next(), Some("x,y"));
    assert_eq!(lines.count(), 512);
}

#[test]
fn generate_clothoid_is_open_and_stationary() {
    let dir = TempDir::new().unwrap();
    let args = ["--kind", "fresnel", "--c1", "0", "--c2", "1.5707963", "--smin", "-2", "--smax", "2", "--nodes", "512"];
    let path = generate(&dir, "clothoid.csv", &args);
    assert!(fs::read_to_string(&path).unwrap().starts_with("# closed=false\n"));
    let o = curvediff(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["verdict"], "stationary");
    assert!((r["stationary"]["k2"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-2);
    assert!(r["stationary"]["k1"].as_f64().unwrap().abs() < 1e-2);
}

#[test]
fn generate_rejects_bad_spec() {
    let o = curvediff(&["generate", "--kind", "circle", "--radius", "-1", "--nodes", "64"]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
    let o = curvediff(&["generate", "--spec", "{\"kind\": \"spiral\"}"]);
    assert_eq!(code(&o), 2);
    let o = curvediff(&["generate", "--kind", "circle", "--nodes", "2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn generate_write_failure_is_io_error() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("missing/dir/c.csv");
    let o = curvediff(&["generate", "--kind", "circle", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}

#[test]
fn generate_from_spec_matches_flags() {
    let dir = TempDir::new().unwrap();
    let a =
        generate(&dir, "a.csv", &["--spec", r#"{"kind": "circle", "radius": 2.0, "center": {"x": 1.0, "y": -1.0}}"#]);
    let b = generate(&dir, "b.csv", &["--kind", "circle", "--radius", "2", "--point", "1", "-1"]);
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn round_trip_classification() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, &[&str], &str); 4] = [
        ("circle.csv", &["--kind", "circle", "--radius", "3"], "stationary"),
        ("lem.csv", &["--kind", "lemniscate"], "shrinker"),
        ("lem_rev.csv", &["--kind", "lemniscate", "--scale", "2", "--reverse"], "shrinker"),
        ("line.csv", &["--kind", "line", "--direction", "1", "2"], "stationary"),
    ];
    for (name, args, verdict) in cases {
        let mut all = args.to_vec();
        all.extend_from_slice(&["--nodes", "512"]);
        let path = generate(&dir, name, &all);
        let o = curvediff(&["check", path.to_str().unwrap(), "--tol", "1e-2"]);
        assert_eq!(code(&o), 0, "{name}");
        assert_eq!(stdout_json(&o)["verdict"], verdict, "{name}");
    }
    let o = curvediff(&["check", dir.path().join("lem.csv").to_str().unwrap()]);
    let k = stdout_json(&o)["shrinker"]["K"].as_f64().unwrap();
    assert!((k + 6.0).abs() < 0.01, "K = {k}");
}

#[test]
fn check_fixtures() {
    let o = curvediff(&["check", fixture("perturbed_ellipse.csv").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["verdict"], "none");
    let o = curvediff(&["check", fixture("circle.csv").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["verdict"], "stationary");
}

#[test]
fn check_malformed_input() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "# closed=true\nx,y\n1.0,oops\n").unwrap();
    assert_eq!(code(&curvediff(&["check", path.to_str().unwrap()])), 2);
    assert_eq!(code(&curvediff(&["check", dir.path().join("absent.csv").to_str().unwrap()])), 3);
}

#[test]
fn bounds_output() {
    let one = stdout_json(&curvediff(&["bounds", "1.0"]));
    assert!((one["ratio_star"].as_f64().unwrap() - 2.9115257845).abs() < 1e-8);
    let two = stdout_json(&curvediff(&["bounds", "2.0"]));
    let r = two["T_star"].as_f64().unwrap() / one["T_star"].as_f64().unwrap();
    assert!((r - 16.0).abs() < 1e-12);
    let o = curvediff(&["bounds", "-1"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert_eq!(code(&curvediff(&["bounds", "0"])), 2);
}

fn write_config(dir: &Path, name: &str, config: Value) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(&config).unwrap()).unwrap();
    path
}

fn evolve(configs: &[&Path], extra: &[&str]) -> Output {
    let mut args = vec!["evolve".to_string()];
    for c in configs {
        args.push("--config".into());
        args.push(c.to_str().unwrap().into());
    }
    args.extend(extra.iter().map(|s| s.to_string()));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    curvediff(&refs)
}

fn lemniscate_config(out: &str) -> Value {
    serde_json::json!({
        "curve": { "spec": { "kind": "lemniscate", "scale": 1.0 }, "nodes": 256 },
        "flow": { "t_end": 1.0 / 48.0, "snapshot_every": 20 },
        "out": out,
        "emit_svg": true,
        "fit_scale": true
    })
}

#[test]
fn evolve_lemniscate_run_directory() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "lem.json", lemniscate_config("run"));
    let o = evolve(&[&cfg], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let run = dir.path().join("run");
    let result: Value = serde_json::from_str(&fs::read_to_string(run.join("result.json")).unwrap()).unwrap();
    assert_eq!(result["termination"], "time_reached");
    let k = result["scale_fit"]["K"].as_f64().unwrap();
    assert!((-6.1..=-5.9).contains(&k), "K = {k}");
    let config: Value = serde_json::from_str(&fs::read_to_string(run.join("config.json")).unwrap()).unwrap();
    assert_eq!(config["scheme"], "semi_implicit");
    let monitors = fs::read_to_string(run.join("monitors.csv")).unwrap();
    assert_eq!(monitors.lines().next(), Some("t,L,A,I,Q,diss"));
    let snaps = run.join("snapshots");
    let n = result["snapshots"].as_u64().unwrap() as usize;
    for i in 0..n {
        assert!(snaps.join(format!("t_{i:05}.csv")).is_file());
        let svg = fs::read_to_string(snaps.join(format!("t_{i:05}.svg"))).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
    }
}

#[test]
fn evolve_circle_keeps_length() {
    let dir = TempDir::new().unwrap();
    let curve = generate(&dir, "circle.csv", &["--kind", "circle", "--nodes", "64"]);
    let cfg = write_config(
        dir.path(),
        "circle.json",
        serde_json::json!({
            "curve": { "file": curve.file_name().unwrap().to_str().unwrap() },
            "flow": { "t_end": 1.0, "snapshot_every": 100 },
            "out": "run",
        }),
    );
    assert_eq!(code(&evolve(&[&cfg], &[])), 0);
    let monitors = fs::read_to_string(dir.path().join("run/monitors.csv")).unwrap();
    let lengths: Vec<f64> = monitors.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(lengths.len() > 2);
    for l in &lengths {
        assert!((l - lengths[0]).abs() < 1e-6);
    }
    assert!(!dir.path().join("run/snapshots/t_00000.svg").exists());
}

#[test]
fn evolve_rejects_unstable_explicit_step() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.json",
        serde_json::json!({
            "curve": { "spec": { "kind": "circle", "radius": 1.0 }, "nodes": 128 },
            "flow": { "t_end": 0.01, "scheme": "explicit", "dt": 1e-3 },
            "out": "run",
        }),
    );
    let o = evolve(&[&cfg], &[]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("stability"));
}

#[test]
fn evolve_rejects_malformed_config() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, "{ \"curve\": ").unwrap();
    assert_eq!(code(&evolve(&[&path], &[])), 2);
    let both = write_config(
        dir.path(),
        "both.json",
        serde_json::json!({
            "curve": { "file": "c.csv", "spec": { "kind": "circle", "radius": 1.0 }, "nodes": 64 },
            "flow": { "t_end": 0.01 },
            "out": "run",
        }),
    );
    assert_eq!(code(&evolve(&[&both], &[])), 2);
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = write_config(dir.path(), "a.json", lemniscate_config("a"));
    let b = write_config(dir.path(), "b.json", lemniscate_config("b"));
    assert_eq!(code(&evolve(&[&a, &b], &["--jobs", "2"])), 0);
    let files = |run: &str| {
        let root = dir.path().join(run);
        let mut out = Vec::new();
        for sub in [root.clone(), root.join("snapshots")] {
            let mut entries: Vec<PathBuf> =
                fs::read_dir(&sub).unwrap().map(|e| e.unwrap().path()).filter(|p| p.is_file()).collect();
            entries.sort();
            for p in entries {
                out.push((p.strip_prefix(&root).unwrap().to_path_buf(), fs::read(&p).unwrap()));
            }
        }
        out
    };
    let (fa, fb) = (files("a"), files("b"));
    assert!(fa.len() > 4);
    assert_eq!(fa, fb);

    let x = curvediff(&["generate", "--kind", "fresnel", "--c1", "1", "--c2", "2", "--nodes", "100"]);
    let y = curvediff(&["generate", "--kind", "fresnel", "--c1", "1", "--c2", "2", "--nodes", "100"]);
    assert_eq!(x.stdout, y.stdout);
    let c = fixture("lemniscate.csv");
    assert_eq!(curvediff(&["check", c.to_str().unwrap()]).stdout, curvediff(&["check", c.to_str().unwrap()]).stdout);
}
