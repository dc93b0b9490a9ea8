use hoti_lab::{parse, run, Overrides};
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const SMALL: &str = r#"{
  "name": "small",
  "model": {"model": "ham1", "gamma": 0.5},
  "solver": {"grid": 9},
  "tasks": [
    {"kind": "bands", "name": "slab", "geometry": {"shape": "slab", "axis": 0, "size": 8}, "states": 4},
    {"kind": "spectrum", "name": "quarter", "model": {"model": "chiral-quarter-uC"},
     "geometry": {"shape": "quarter", "size": 10}, "states": 6, "regions": "corner", "eigenvectors": true},
    {"kind": "invariants", "name": "inv", "chern": [[0, 1]], "trim": "inversion"},
    {"kind": "kss", "preset": "square-C4T"},
    {"kind": "transversal", "preset": "square"},
    {"kind": "symmetry-check", "name": "sym"}
  ]
}"#;

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("hoti-lab-test-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hoti-lab")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("config.json");
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn run_succeeds_and_writes_a_manifest() {
    let d = scratch("ok");
    let cfg = write_config(&d, SMALL);
    let out = d.join("out");
    let o = bin(&["run", &cfg, "--out", out.to_str().unwrap(), "--workers", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let m: Value = serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["seed"], 7);
    assert_eq!(m["tasks"].as_array().unwrap().len(), 6);
    assert!(m["config_hash"].as_str().unwrap().len() == 64);
    for f in m["artifacts"].as_object().unwrap().keys() {
        assert!(out.join(f).exists(), "{f}");
    }
    let csv = std::fs::read_to_string(out.join("slab.csv")).unwrap();
    assert!(csv.starts_with("k1,k2,band,energy\n") && !csv.contains('\r'));
    let sp = std::fs::read_to_string(out.join("quarter.csv")).unwrap();
    assert!(sp.starts_with("index,energy,corner_weight,rest_weight\n"));
    let inv: Value = serde_json::from_str(&std::fs::read_to_string(out.join("inv.json")).unwrap()).unwrap();
    assert_eq!(inv["trim"]["cs_parity"], 1);
    let bin_len = std::fs::metadata(out.join("quarter.eigenvectors.bin")).unwrap().len();
    assert_eq!(bin_len, 10 * 10 * 4 * 6 * 16);
}

#[test]
fn validation_errors_exit_2_with_field_paths() {
    let d = scratch("bad");
    let cfg = write_config(&d, r#"{"tasks": [{"kind": "bands", "geometry": {"shape": "slab"}, "stats": 3}]}"#);
    let o = bin(&["run", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("tasks[0]"));
    let cfg = write_config(
        &d,
        r#"{"model": {"model": "ham1"}, "tasks": [{"kind": "spectrum", "geometry": {"shape": "cube", "size": 0}},
            {"kind": "invariants", "trim": "nope"}]}"#,
    );
    let o = bin(&["run", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("tasks[0].geometry.size") && err.contains("tasks[1].trim"), "{err}");
    assert_eq!(bin(&["reproduce", "model9"]).status.code(), Some(2));
    assert_eq!(bin(&["kss", "square-unknown"]).status.code(), Some(2));
}

#[test]
fn solver_failures_exit_3_with_a_payload() {
    let d = scratch("solver");
    let cfg = write_config(
        &d,
        r#"{"model": {"model": "ham1", "gamma": 0.0},
            "tasks": [{"kind": "invariants", "hinges": {"size": 8, "kpoints": 4, "states": 4}}]}"#,
    );
    let o = bin(&["run", &cfg, "--out", d.join("out").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let payload: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(payload["error"], "FacesNotGapped");
}

#[test]
fn runs_are_bit_identical() {
    let d = scratch("det");
    let cfg = parse(SMALL).unwrap();
    let a = run(&cfg, Some(&d.join("a"))).unwrap();
    let b = run(&cfg, Some(&d.join("b"))).unwrap();
    assert_eq!(a.manifest.artifacts, b.manifest.artifacts);
    for f in a.manifest.artifacts.keys() {
        assert_eq!(std::fs::read(d.join("a").join(f)).unwrap(), std::fs::read(d.join("b").join(f)).unwrap(), "{f}");
    }
    assert_eq!(a.manifest.config_hash, b.manifest.config_hash);
}

#[test]
fn hash_tracks_semantic_fields_only() {
    let base = parse(SMALL).unwrap();
    let h = base.hash();
    let mut cosmetic = base.clone();
    cosmetic.apply(&Overrides { workers: Some(3), out: Some("elsewhere".into()), ..Default::default() });
    cosmetic.name = "renamed".into();
    assert_eq!(cosmetic.hash(), h);
    // spelling out a default is not a change
    let explicit = parse(&SMALL.replace(r#""solver": {"grid": 9}"#, r#""seed": 7, "solver": {"grid": 9, "tol": 1e-10}"#)).unwrap();
    assert_eq!(explicit.hash(), h);
    for o in [
        Overrides { seed: Some(8), ..Default::default() },
        Overrides { grid: Some(10), ..Default::default() },
        Overrides { size: Some(12), ..Default::default() },
    ] {
        let mut c = base.clone();
        c.apply(&o);
        assert_ne!(c.hash(), h);
    }
    let gamma = parse(&SMALL.replace("0.5", "0.6")).unwrap();
    assert_ne!(gamma.hash(), h);
}

#[test]
fn size_override_reaches_shaped_geometries() {
    let mut c = parse(SMALL).unwrap();
    c.apply(&Overrides { size: Some(12), ..Default::default() });
    let v = serde_json::to_value(&c).unwrap();
    assert_eq!(v["tasks"][0]["geometry"]["size"], 12);
    assert_eq!(v["tasks"][1]["geometry"]["size"], 12);
}

#[test]
fn canned_configs_validate() {
    for id in hoti_lab::figures::FIGURES {
        let c = parse(hoti_lab::figures::canned(id).unwrap()).unwrap();
        assert!(c.validate().is_empty(), "{id}: {:?}", c.validate());
    }
}

#[test]
fn transversal_and_kss_subcommands() {
    let cube = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/cube.json");
    let o = bin(&["transversal", cube]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 27);
    assert_eq!(v["filtration_sizes"], serde_json::json!([1, 7, 19, 27]));
    let d = scratch("kss");
    let o = bin(&["kss", "square-inversion", "--hinge", "1,0,-1,0", "--out", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(d.join("kss.json")).unwrap()).unwrap();
    assert_eq!(v["hinge_charges"], serde_json::json!([1, 0, -1, 0]));
    let o = bin(&["check-symmetry", "ham3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["check-symmetry", "ham1", "--actions", "time-reversal"]);
    assert_eq!(o.status.code(), Some(1));
}
