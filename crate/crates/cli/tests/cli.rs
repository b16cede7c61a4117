use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn refl3d(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_refl3d")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn manifest(dir: &Path) -> BTreeMap<String, String> {
    fs::read_to_string(dir.join("manifest.txt"))
        .unwrap()
        .lines()
        .filter_map(|l| l.split_once('='))
        .filter(|(k, _)| *k != "wall_time_ms")
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn artifacts(dir: &Path) -> BTreeMap<String, String> {
    manifest(dir)
        .into_iter()
        .filter_map(|(k, v)| Some((k.strip_prefix("artifact.")?.to_string(), v)))
        .collect()
}

#[test]
fn eval_s_prints_closed_form() {
    let o = refl3d(&["eval-s", "0", "1", "1", "0", "1", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-1*q^4\n");
    let o = refl3d(&["eval-s", "0", "0", "0", "0", "0", "0"]);
    assert_eq!(stdout(&o), "1\n");
    let o = refl3d(&["eval-s", "1", "0", "0", "0", "0", "0"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn show_j_example_passes() {
    let o = refl3d(&["show-j-example"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("J^{1,1,0,2}_{0,1,1,1} = 1 - 1*q^4 + 1*q^10  [PASS]"), "{text}");
    assert!(text.ends_with("CHECK j-example vectors=6 window=- mode=symbolic result=PASS\n"), "{text}");
}

#[test]
fn manifest_hashes_match_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = refl3d(&["compute-s", "--max-block", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let m = manifest(dir.path());
    assert_eq!(m["format"], "1");
    assert_eq!(m["command"], "compute-s");
    assert_eq!(m["params"], "canonical");
    assert_eq!(m["result"], "PASS");
    let arts = artifacts(dir.path());
    assert_eq!(arts.len(), 16 + 1);
    for (rel, hash) in arts {
        let digest = format!("sha256:{:x}", Sha256::digest(fs::read(dir.path().join(&rel)).unwrap()));
        assert_eq!(hash, digest, "{rel}");
    }
    let report = fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert_eq!(report, stdout(&o));
}

#[test]
fn runs_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let o = refl3d(&["compute-j", "--max-block", "2", "--jobs", "2", "--out", d.path().to_str().unwrap()]);
        assert!(o.status.code().is_some());
    }
    assert_eq!(manifest(a.path()), manifest(b.path()));
    for rel in artifacts(a.path()).keys() {
        assert_eq!(fs::read(a.path().join(rel)).unwrap(), fs::read(b.path().join(rel)).unwrap(), "{rel}");
    }
}

#[test]
fn warm_cache_gives_identical_artifacts() {
    let cache = tempfile::tempdir().unwrap();
    let (cold, warm) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&cold, &warm] {
        let o = refl3d(&[
            "compute-s",
            "--max-block",
            "4",
            "--cache",
            cache.path().to_str().unwrap(),
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert!(cache.path().join("S/4_4.blk").exists());
    assert!(cache.path().join("manifest.txt").exists());
    assert_eq!(manifest(cold.path()), manifest(warm.path()));
    let o = refl3d(&["show-j-example", "--cache", cache.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(cache.path().join("J/3_3.blk").exists());
}

#[test]
fn tetrahedron_and_reflection_pass() {
    let o = refl3d(&["verify-tetrahedron", "--window", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "CHECK tetrahedron vectors=64 window=1 mode=symbolic result=PASS\n");
    let o = refl3d(&["verify-3d-reflection", "--window", "1", "--mode", "symbolic"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(
        stdout(&o),
        "CHECK 3d-reflection vectors=512 window=1 mode=symbolic result=PASS\n\
         CHECK 3d-reflection-moved vectors=512 window=1 mode=symbolic result=PASS\n"
    );
}

#[test]
fn evaluated_mode_reports_points() {
    let o = refl3d(&["verify-tetrahedron", "--window", "1", "--mode", "eval:q=2/3,5/7"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "CHECK tetrahedron vectors=64 window=1 mode=eval:q=2/3 result=PASS\n\
         CHECK tetrahedron vectors=64 window=1 mode=eval:q=5/7 result=PASS\n"
    );
}

#[test]
fn rtt_and_symmetries_pass() {
    let o = refl3d(&["verify-rtt", "--window", "8"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 9);
    let o = refl3d(&["verify-symmetries", "--max-block", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("CHECK s-involution"));
}

#[test]
fn parameter_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("params.txt");
    fs::write(&file, "# sigma = -1\nsigma1=-1\nsigma2=-1\nkappa1=-1\nkappa2=-1\nalpha1=2\nbeta1=(-1*q^2)/(2)\n").unwrap();
    let arg = format!("file={}", file.display());
    let o = refl3d(&["compute-s", "--max-block", "2", "--params", &arg]);
    assert!(o.status.success(), "{} {}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    fs::write(&file, "alpha1=2\n").unwrap();
    let o = refl3d(&["compute-s", "--params", &arg]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_flags_are_errors() {
    assert_eq!(refl3d(&["verify-tetrahedron", "--mode", "fast"]).status.code(), Some(2));
    assert_eq!(refl3d(&["compute-s", "--mode", "eval"]).status.code(), Some(2));
    assert_eq!(refl3d(&["verify-3d-reflection", "--form", "sideways"]).status.code(), Some(2));
}
