use std::process::{Command, Output};

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_skewmc"));
    c.args(args).env_remove("SKEWMC_BUDGET").env_remove("SKEWMC_IDEAL_CAP").env_remove("SKEWMC_ENDO_CAP");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn profile_json() {
    let o = run(&["--json", "profile", "uppertri 2 zmod2"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 8);
    assert_eq!(v["abelian"]["witness"], serde_json::json!(["(1,0,0)", "(0,1,0)"]));
}

#[test]
fn mccoy_both_sides() {
    let o = run(&["mccoy", "gf 4", "Z", "frobenius", "--degree", "1", "--side", "both"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Right McCoy") && s.contains("Left McCoy"), "{s}");
}

#[test]
fn random_mode_is_seeded() {
    let args = ["--json", "mccoy", "zmod 8", "N", "trivial", "--mode", "random", "--seed", "3", "--trials", "500"];
    assert_eq!(stdout(&run(&args, &[])), stdout(&run(&args, &[])));
}

#[test]
fn counterexample_outside_hypotheses_is_not_an_error() {
    let o = run(&["mccoy", "uppertri 2 zmod2", "N", "trivial", "--degree", "1"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("outside the theorem's hypotheses"));
}

#[test]
fn theorem_needs_hypotheses_unless_exploring() {
    let o = run(&["theorem", "uppertri 2 zmod2", "N", "trivial", "--degree", "1"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["theorem", "uppertri 2 zmod2", "N", "trivial", "--degree", "1", "--explore"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exploration"));
    let o = run(&["theorem", "zmod 4", "N", "compatible", "--degree", "2"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no counterexample"));
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(run(&["profile", "quaternion 8"], &[]).status.code(), Some(2));
    assert_eq!(run(&["mccoy", "zmod 4", "Q", "trivial"], &[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], &[]).status.code(), Some(2));
}

#[test]
fn env_caps_exit_3() {
    let o = run(&["profile", "zmod 8"], &[("SKEWMC_IDEAL_CAP", "4")]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["mccoy", "zmod 8", "N", "trivial", "--degree", "3"], &[("SKEWMC_BUDGET", "100")]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["--budget", "100", "mccoy", "zmod 8", "N", "trivial", "--degree", "3"], &[]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn lemmas_with_action() {
    let o = run(&["lemmas", "zmod 8", "--action", "all"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("CompatibleMembership") && !s.contains("FAIL"), "{s}");
}

#[test]
fn catalog_lists_rings() {
    let o = run(&["--json", "catalog", "--max-order", "8"], &[]);
    let v: Vec<String> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.len(), 13);
    assert!(v.contains(&"uppertri 2 zmod2".to_string()));
}

#[test]
fn campaign_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    let out = dir.path().join("r.json");
    std::fs::write(&cfg, "rings = [\"zmod 4\", \"uppertri 2 zmod2\"]\ndegree = 1\n").unwrap();
    let o = run(
        &["campaign", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--workers", "2"],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v["summary"]["exploration"].as_u64().unwrap() > 0);

    std::fs::write(&cfg, "colour = 1\n").unwrap();
    let o = run(&["campaign", "--config", cfg.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
}
