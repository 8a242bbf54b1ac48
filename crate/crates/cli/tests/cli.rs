//! Runs the `hecke` binary: exit codes, refusals, cache behavior and
//! byte-stable reports.

use std::process::{Command, Output};

use hecke_core::fixtures;
use hecke_core::formats::parse_gram;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).env_remove("HECKE_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_wgraph_accepts_fixtures() {
    for name in ["g2_trivial", "g2_r", "g2_rp", "e6_10s"] {
        let o = hecke(&["verify-wgraph", &format!("builtin:{name}")]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        assert!(stdout(&o).starts_with("ok:"));
    }
}

#[test]
fn corrupted_weight_names_the_failing_braid_relation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    let text = fixtures::E6_10S_WGRAPH.replacen("mu = 1", "mu = 2", 1);
    std::fs::write(&path, text).unwrap();
    let o = hecke(&["verify-wgraph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("braid relation for (s"), "{}", stdout(&o));
}

#[test]
fn version_mismatch_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("old.toml");
    std::fs::write(&path, fixtures::E6_10S_WGRAPH.replace("hecke-wgraph/1", "hecke-wgraph/0")).unwrap();
    let o = hecke(&["verify-wgraph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("version"));
}

#[test]
fn gram_methods_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for method in ["direct", "standard-base", "modular"] {
        let out = dir.path().join(format!("{method}.toml"));
        let o = hecke(&["gram", "builtin:g2_rp", "--method", method, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        texts.push(std::fs::read_to_string(out).unwrap());
    }
    assert!(texts.windows(2).all(|w| w[0] == w[1]));
    parse_gram(&texts[0]).unwrap();
}

#[test]
fn tiny_modular_plan_exhausts_the_budget() {
    let o = hecke(&["gram", "builtin:e6_10s", "--method", "modular", "--initial-points", "2", "--max-points", "2", "--max-primes", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("--max-points"));
}

#[test]
fn cache_is_used_and_revalidated() {
    let dir = tempfile::tempdir().unwrap();
    let run =
        || Command::new(env!("CARGO_BIN_EXE_hecke")).args(["gram", "builtin:g2_r"]).env("HECKE_CACHE_DIR", dir.path()).output().unwrap();
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    assert_eq!(stdout(&run()), stdout(&first));
    // A tampered entry fails the invariance check and is recomputed.
    let cached = std::fs::read_to_string(&entries[0]).unwrap();
    let tampered = cached.replacen("\"0:1 2:1\"", "\"0:2 2:1\"", 1);
    assert_ne!(tampered, cached);
    std::fs::write(&entries[0], tampered).unwrap();
    assert_eq!(stdout(&run()), stdout(&first));
}

#[test]
fn james_refuses_bad_primes_and_short_circuits_semisimple_cases() {
    let o = hecke(&["james", "--type", "G2", "--e", "3", "--ell", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad prime"), "{}", stderr(&o));

    let o = hecke(&["james", "--type", "G2", "--e", "5", "--ell", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("semisimple: yes") && s.contains("adjustment matrix: identity") && s.contains("verdict: true"));
}

#[test]
fn james_report_is_byte_stable_across_thread_counts() {
    let a = hecke(&["james", "--type", "G2", "--e", "3", "--ell", "7", "--seed", "5", "--jobs", "1"]);
    let b = hecke(&["james", "--type", "G2", "--e", "3", "--ell", "7", "--seed", "5", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("verdict: true"));
}

#[test]
fn rank_badprimes_chop_blocks_schur() {
    let o = hecke(&["rank", "builtin:e6_10s", "--e", "4", "--ell", "5"]);
    assert!(stdout(&o).contains("rank at v = zeta_8: 1 (corank 9)"), "{}", stdout(&o));
    let o = hecke(&["badprimes", "builtin:e6_10s", "--e", "4"]);
    let s = stdout(&o);
    assert!(s.contains("candidates: {2}") && s.contains("verified: {}"), "{s}");
    let o = hecke(&["chop", "builtin:g2_r", "--e", "6", "--ell", "7"]);
    assert_eq!(stdout(&o).matches("dimension 1, multiplicity 1").count(), 2);
    let o = hecke(&["blocks", "--type", "G2", "--e", "2", "--ell", "7"]);
    assert!(stdout(&o).contains("block 1 (defect 2)"));
    let o = hecke(&["schur", "--type", "G2"]);
    assert!(stdout(&o).contains("r'  dim 2  a = 1  f = 2"));
    let o = hecke(&["james", "--type", "E6", "--e", "4", "--ell", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn data_directory_drives_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let labels = ["1", "eps1", "eps2", "r", "rp", "eps"];
    for l in labels {
        std::fs::write(dir.path().join(format!("g2_{l}.toml")), fixtures::wgraph_text(&format!("g2_{l}")).unwrap()).unwrap();
    }
    let d = hecke_core::pipeline::Dataset::g2().unwrap();
    let t = hecke_core::formats::write_invariants(&d.weyl, &d.labels);
    std::fs::write(dir.path().join("invariants.toml"), t).unwrap();
    let o = hecke(&["james", "--type", "G2", "--e", "6", "--ell", "7", "--data", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict: true"));
}
