use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn agcy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agcy")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn build_to(dir: &Path, family: u32, seed: u64) -> std::path::PathBuf {
    let path = dir.join(format!("f{family}_s{seed}.json"));
    let o = agcy(&["build", "--family", &family.to_string(), "--seed", &seed.to_string(), "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn generator_degrees(file: &Value) -> Vec<u32> {
    file["gens"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g[0][1].as_array().unwrap().iter().map(|e| e.as_u64().unwrap() as u32).sum())
        .collect()
}

#[test]
fn catalog_lists_eleven_rows() {
    let o = agcy(&["catalog"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.trim_start().chars().next().is_some_and(|c| c.is_ascii_digit())).collect();
    assert_eq!(rows.len(), 11);
    assert!(rows[1].contains("15, 1, 76, G(2,5)∩cubic∩P^7"), "{}", rows[1]);
    assert!(rows[5].contains("17, 2, 54, rolling factors"), "{}", rows[5]);
}

#[test]
fn build_four_quadrics_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = build_to(dir.path(), 3, 1);
    let f = json_file(&a);
    assert_eq!(generator_degrees(&f), vec![2, 2, 2, 2]);
    assert_eq!(f["meta"]["family"], 3);
    assert_eq!(f["char"], 32003);
    let again = agcy(&["build", "--family", "3", "--seed", "1"]);
    assert_eq!(stdout(&again).as_bytes(), std::fs::read(&a).unwrap().as_slice());
}

#[test]
fn build_degree_nineteen_generators() {
    let dir = tempfile::tempdir().unwrap();
    let f = json_file(&build_to(dir.path(), 9, 7));
    let mut d = generator_degrees(&f);
    d.sort_unstable();
    let mut want = vec![2];
    want.extend([3; 12]);
    assert_eq!(d, want);
}

#[test]
fn verify_family_four_full_suite() {
    let dir = tempfile::tempdir().unwrap();
    let file = build_to(dir.path(), 4, 1);
    let report = dir.path().join("report.json");
    let o = agcy(&["verify", file.to_str().unwrap(), "--workers", "2", "--out", report.to_str().unwrap()]);
    let r = json_file(&report);
    assert_eq!(code(&o), 0, "{r:#}");
    assert_eq!(r["verdict"], "pass");
    for k in ["dimension", "degree", "hilbert_rr", "betti", "aG_symmetry", "cy_twist", "smoothness"] {
        assert_eq!(r["checks"][k]["status"], "pass", "{k}");
    }
    assert_eq!(r["checks"]["hodge"]["status"], "skipped");
    let entries = &r["checks"]["betti"]["details"]["table"]["entries"];
    let want: Value = serde_json::from_str(
        "[[0,0,1],[1,2,3],[1,3,4],[2,4,12],[3,5,4],[3,6,3],[4,8,1]]",
    )
    .unwrap();
    assert_eq!(entries, &want);
    assert_eq!(r["seed"], 1);
    assert!(r["tool_version"].is_string());
}

#[test]
fn tampered_file_fails_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let file = build_to(dir.path(), 3, 1);
    let mut f = json_file(&file);
    let first = f["gens"][0].clone();
    f["gens"][1] = first;
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, serde_json::to_string(&f).unwrap()).unwrap();
    let report = dir.path().join("r.json");
    let o = agcy(&["verify", tampered.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let r = json_file(&report);
    assert_eq!(r["checks"]["dimension"]["status"], "fail");
    assert_eq!(r["verdict"], "fail");
}

#[test]
fn tight_budget_leaves_smoothness_unverified() {
    let dir = tempfile::tempdir().unwrap();
    let file = build_to(dir.path(), 10, 1);
    let report = dir.path().join("r.json");
    let o = agcy(&["verify", file.to_str().unwrap(), "--budget", "2", "--out", report.to_str().unwrap()]);
    let r = json_file(&report);
    assert_eq!(code(&o), 3, "{r:#}");
    assert_eq!(r["checks"]["smoothness"]["status"], "unverified");
    assert_eq!(r["verdict"], "unverified");
    for k in ["dimension", "degree", "hilbert_rr", "betti", "aG_symmetry", "cy_twist"] {
        assert_ne!(r["checks"][k]["status"], "skipped", "{k}");
        assert_ne!(r["checks"][k]["status"], "fail", "{k}");
    }
}

#[test]
fn selected_checks_only() {
    let dir = tempfile::tempdir().unwrap();
    let file = build_to(dir.path(), 3, 2);
    let o = agcy(&["verify", file.to_str().unwrap(), "--checks", "degree,hilbert_rr"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["checks"]["degree"]["status"], "pass");
    assert_eq!(r["checks"]["smoothness"]["status"], "skipped");
    assert_eq!(r["checks"]["betti"]["status"], "skipped");
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&agcy(&["build", "--family", "12"])), 2);
    assert_eq!(code(&agcy(&["build", "--family", "3", "--char", "32004"])), 2);
    assert_eq!(code(&agcy(&["build"])), 2);
    assert_eq!(code(&agcy(&["frobnicate"])), 2);
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(code(&agcy(&["verify", junk.to_str().unwrap()])), 2);
    assert_eq!(code(&agcy(&["verify", dir.path().join("missing.json").to_str().unwrap()])), 2);
    let file = build_to(dir.path(), 3, 1);
    assert_eq!(code(&agcy(&["verify", file.to_str().unwrap(), "--checks", "degree,colour"])), 2);
    assert_eq!(code(&agcy(&["verify", file.to_str().unwrap(), "--char", "101"])), 2);
    assert_eq!(code(&agcy(&["hodge", "--family", "2"])), 2);
}

#[test]
fn build_budget_exits_three() {
    assert_eq!(code(&agcy(&["build", "--family", "9", "--budget", "0.001"])), 3);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("agcy.toml");
    std::fs::write(&cfg, "family = 3\nseed = 5\n").unwrap();
    let from_cfg = agcy(&["build", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&from_cfg), 0);
    let direct = agcy(&["build", "--family", "3", "--seed", "5"]);
    assert_eq!(stdout(&from_cfg), stdout(&direct));
    let flag_wins = agcy(&["build", "--config", cfg.to_str().unwrap(), "--seed", "6"]);
    let f: Value = serde_json::from_str(&stdout(&flag_wins)).unwrap();
    assert_eq!(f["meta"]["seed"], 6);
    std::fs::write(&cfg, "familly = 3\n").unwrap();
    assert_eq!(code(&agcy(&["build", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn hodge_json() {
    let o = agcy(&["hodge", "--family", "1"]);
    assert_eq!(code(&o), 0);
    let h: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(h["euler"], -168);
    assert_eq!(h["h11"], 2);
    assert_eq!(h["h12"], 86);
    assert_eq!(h["degree"], 14);
    assert_eq!(h["c2A"], 68);
    assert_eq!(h["consistency"], true);
}

#[test]
fn betti_of_family_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = build_to(dir.path(), 1, 1);
    let o = agcy(&["betti", file.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let b: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(b["length"], 4);
    assert_eq!(b["minimal"], true);
    let want: Value = serde_json::from_str(
        "[[0,0,1],[1,2,6],[1,4,3],[2,3,8],[2,5,8],[3,4,3],[3,6,6],[4,8,1]]",
    )
    .unwrap();
    assert_eq!(b["entries"], want);
}

#[test]
fn link_files_and_family_chain() {
    let dir = tempfile::tempdir().unwrap();
    let vars = r#"["a","b","c","d"]"#;
    let sub = dir.path().join("line.json");
    let amb = dir.path().join("ci.json");
    std::fs::write(&sub, format!(r#"{{"version":"1","char":32003,"vars":{vars},"gens":[[[1,[1,0,0,0]]],[[1,[0,1,0,0]]]]}}"#)).unwrap();
    std::fs::write(
        &amb,
        format!(
            r#"{{"version":"1","char":32003,"vars":{vars},"gens":[[[1,[1,0,1,0]],[-1,[0,1,0,1]]],[[1,[1,0,0,1]],[1,[0,1,1,0]]]]}}"#
        ),
    )
    .unwrap();
    let o = agcy(&["link", sub.to_str().unwrap(), amb.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("4 = 1 + 3"));
    let residual: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!residual["gens"].as_array().unwrap().is_empty());

    let o = agcy(&["link", "--family", "4"]);
    assert_eq!(code(&o), 0);
    let chain: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(chain["steps"][0]["degrees"], serde_json::json!({ "ambient": 8, "input": 1, "residual": 7 }));
    assert_eq!(chain["steps"][1]["degrees"], serde_json::json!({ "ambient": 24, "input": 7, "residual": 17 }));
    assert_eq!(code(&agcy(&["link", "--family", "3"])), 2);
}

#[test]
fn cremona_identities() {
    for check in ["adjugate", "minor-pfaffian"] {
        let o = agcy(&["cremona", "--check", check]);
        assert_eq!(code(&o), 0, "{check}");
        let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(r["status"], "pass");
    }
    assert_eq!(code(&agcy(&["cremona", "--check", "nonsense"])), 2);
}
