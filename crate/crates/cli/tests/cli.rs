//! End-to-end runs of the binary: spec examples, reproducibility contracts,
//! and the exit-code mapping.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gibbstate"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    if dir.exists() {
        fs::remove_dir_all(&dir).unwrap();
    }
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(subcommand: &str, config: &Path, out: &Path, extra: &[&str]) -> Output {
    bin()
        .arg(subcommand)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn manifest(out: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap()
}

const BETA_SHIFT: &str = r#"
    "system": { "kind": "shift", "alphabet": 2 },
    "potential": { "kind": "table", "range": 1,
                   "entries": [["0", 0.0], ["1", 1.0986122886681098]] }
"#;

#[test]
fn fixpoint_counts_match_the_determinant_formula() {
    let dir = workdir("fixpoints");
    let cfg = write_config(
        &dir,
        "cfg.json",
        r#"{ "system": { "kind": "torus", "matrix": [[0, -2], [1, 4]] }, "n_list": [1, 2, 3, 4] }"#,
    );
    let out = dir.join("out");
    let res = run("fixpoints", &cfg, &out, &[]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let csv = fs::read_to_string(out.join("fixpoints.csv")).unwrap();
    assert_eq!(csv, "n,count\n1,1\n2,7\n3,31\n4,119\n");
}

#[test]
fn full_shift_pressure_is_log_two() {
    let dir = workdir("pressure");
    let cfg = write_config(
        &dir,
        "cfg.json",
        r#"{ "system": { "kind": "shift", "alphabet": 2 }, "n": 5 }"#,
    );
    let out = dir.join("out");
    let res = run("pressure", &cfg, &out, &[]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let csv = fs::read_to_string(out.join("pressure.csv")).unwrap();
    let row = csv.lines().nth(1).unwrap();
    let estimate: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((estimate - 2.0f64.ln()).abs() < 1e-12);
    let oracle = manifest(&out)["results"]["oracle_pressure"]
        .as_f64()
        .unwrap();
    assert!((oracle - 2.0f64.ln()).abs() < 1e-10);
}

#[test]
fn mu_n_distance_to_the_oracle_is_small_at_depth_fourteen() {
    let dir = workdir("mun");
    let cfg = write_config(
        &dir,
        "cfg.json",
        &format!(
            r#"{{ {BETA_SHIFT},
                 "point": {{ "shift": {{ "tail": "0" }} }},
                 "n": 14,
                 "dictionary": {{ "kind": "cylinders", "max_len": 4 }} }}"#
        ),
    );
    let out = dir.join("out");
    let res = run("mu-n", &cfg, &out, &[]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let distance = manifest(&out)["results"]["weak_star_distance"]
        .as_f64()
        .unwrap();
    assert!(distance < 0.02, "distance {distance}");
    let pairings = fs::read_to_string(out.join("pairings.csv")).unwrap();
    assert!(pairings.starts_with("g_id,weight,integral,oracle,difference\n"));
    assert_eq!(pairings.lines().count(), 1 + 2 + 4 + 8 + 16);
}

#[test]
fn identical_config_and_seed_reproduce_csv_bytes() {
    let dir = workdir("repro");
    let cfg = write_config(
        &dir,
        "cfg.json",
        &format!(
            r#"{{ {BETA_SHIFT},
                 "n_list": [3, 5],
                 "dictionary": {{ "kind": "cylinders", "max_len": 2 }},
                 "sampler": {{ "kind": "periodic_gibbs", "depth": 8 }},
                 "samples": 6,
                 "seed": 41 }}"#
        ),
    );
    let (a, b) = (dir.join("a"), dir.join("b"));
    assert!(run("l1-stat", &cfg, &a, &[]).status.success());
    assert!(run("l1-stat", &cfg, &b, &["--threads", "2"])
        .status
        .success());
    let left = fs::read(a.join("stat.csv")).unwrap();
    assert_eq!(left, fs::read(b.join("stat.csv")).unwrap());
    assert!(!left.is_empty());
}

#[test]
fn rerunning_from_the_manifest_reproduces_results() {
    let dir = workdir("manifest_rerun");
    let cfg = write_config(
        &dir,
        "cfg.json",
        r#"{ "system": { "kind": "torus", "matrix": [[0, -2], [1, 4]] },
             "n_list": [4, 6],
             "dictionary": { "kind": "characters", "max_freq": 1 },
             "sampler": { "kind": "uniform_rational_torus", "denom_bits": 24 },
             "samples": 4 }"#,
    );
    let (a, b) = (dir.join("a"), dir.join("b"));
    assert!(run("l1-stat", &cfg, &a, &["--seed", "9"]).status.success());
    let reran = run("l1-stat", &a.join("manifest.json"), &b, &[]);
    assert!(
        reran.status.success(),
        "{}",
        String::from_utf8_lossy(&reran.stderr)
    );
    assert_eq!(
        fs::read(a.join("stat.csv")).unwrap(),
        fs::read(b.join("stat.csv")).unwrap()
    );
}

#[test]
fn schema_violations_exit_two() {
    let dir = workdir("schema");
    let cfg = write_config(
        &dir,
        "unknown_field.json",
        r#"{ "system": { "kind": "torus", "matrix": [[2, 1], [1, 1]] }, "n": 2, "bogus": 1 }"#,
    );
    let res = run("fixpoints", &cfg, &dir.join("o1"), &[]);
    assert_eq!(
        res.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );

    let cfg = write_config(
        &dir,
        "not_hyperbolic.json",
        r#"{ "system": { "kind": "torus", "matrix": [[1, 1], [0, 1]] }, "n": 2 }"#,
    );
    let res = run("fixpoints", &cfg, &dir.join("o2"), &[]);
    assert_eq!(
        res.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );

    let cfg = write_config(
        &dir,
        "missing_seed.json",
        &format!(
            r#"{{ {BETA_SHIFT},
                 "n_list": [3],
                 "dictionary": {{ "kind": "cylinders", "max_len": 2 }},
                 "sampler": {{ "kind": "periodic_gibbs", "depth": 8 }} }}"#
        ),
    );
    let res = run("l1-stat", &cfg, &dir.join("o3"), &[]);
    assert_eq!(
        res.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
}

#[test]
fn resource_caps_exit_three_and_force_overrides() {
    let dir = workdir("cap");
    let cfg = write_config(
        &dir,
        "cfg.json",
        r#"{ "system": { "kind": "torus", "matrix": [[0, -2], [1, 4]] },
             "point": { "torus": ["0", "0"] },
             "n": 4,
             "leaf_cap": 4 }"#,
    );
    let res = run("mu-n", &cfg, &dir.join("o1"), &[]);
    assert_eq!(
        res.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let res = run("mu-n", &cfg, &dir.join("o2"), &["--force"]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
}

#[test]
fn certification_failures_exit_four() {
    let dir = workdir("epsilon");
    let cfg = write_config(
        &dir,
        "cfg.json",
        r#"{ "system": { "kind": "torus", "matrix": [[0, -2], [1, 4]],
                         "perturbation": { "epsilon": 1000.0,
                                           "terms": [{ "freq": [301, 0],
                                                       "cos": [1.0, 0.0],
                                                       "sin": [0.0, 0.0] }] } },
             "point": { "torus": ["1/3", "1/5"] },
             "n": 1 }"#,
    );
    let res = run("mu-n", &cfg, &dir.join("out"), &[]);
    assert_eq!(
        res.status.code(),
        Some(4),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
}

#[test]
fn lifted_cylinder_routes_stabilize() {
    let dir = workdir("lemma1");
    let cfg = write_config(
        &dir,
        "cfg.json",
        r#"{ "system": { "kind": "shift", "adjacency": [[1, 1], [1, 0]] },
             "potential": { "kind": "table", "range": 2,
                            "entries": [["00", 0.2], ["01", -0.4], ["10", 0.7]] },
             "anchor": { "past": "10", "future": "01" } }"#,
    );
    let out = dir.join("out");
    let res = run("lemma1-check", &cfg, &out, &[]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let results = &manifest(&out)["results"];
    assert!(results["stabilized"].as_bool().unwrap());
    assert!(results["max_difference"].as_f64().unwrap() < 1e-12);
    let direct: f64 = fs::read_to_string(out.join("lemma1.csv"))
        .unwrap()
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!(direct > 0.0);
}

#[test]
fn gibbs_ratios_are_flat_for_range_one_potentials() {
    let dir = workdir("gibbs_ratio");
    let cfg = write_config(
        &dir,
        "cfg.json",
        &format!(r#"{{ {BETA_SHIFT}, "n_list": [2, 5, 8] }}"#),
    );
    let out = dir.join("out");
    let res = run("gibbs-ratio", &cfg, &out, &[]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let results = &manifest(&out)["results"];
    assert!((results["min_ratio"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((results["max_ratio"].as_f64().unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn preimage_rows_cover_every_level() {
    let dir = workdir("preimages");
    let cfg = write_config(
        &dir,
        "cfg.json",
        r#"{ "system": { "kind": "torus", "matrix": [[2, 0], [0, 3]] },
             "point": { "torus": ["0", "0"] },
             "n": 2 }"#,
    );
    let out = dir.join("out");
    let res = run("preimages", &cfg, &out, &[]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let csv = fs::read_to_string(out.join("preimages.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 6 + 36);
    assert_eq!(csv.lines().nth(1).unwrap(), "1,0,0");
}
