use skewmc::harness::{run_campaign, CampaignConfig, Status};

#[test]
fn report_file_matches_returned_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let cfg = CampaignConfig::from_toml(&format!(
        "rings = [\"zmod 6\", \"gf 4\"]\ndegree = 1\nout = {:?}\n",
        out.to_str().unwrap()
    ))
    .unwrap();
    let r = run_campaign(&cfg).unwrap();
    assert!(r.is_consistent());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), r.to_json());
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["summary"]["total"].as_u64().unwrap() as usize, r.instances.len());
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn tight_budget_reports_capacity() {
    let cfg = CampaignConfig::from_toml("rings = [\"zmod 8\"]\ndegree = 3\ncheckers = [\"theorem\"]\n[limits]\nbudget = 10\n")
        .unwrap();
    let r = run_campaign(&cfg).unwrap();
    assert!(r.instances.iter().any(|i| i.status == Status::Capacity));
    assert_eq!(r.exit_code(), 3);
}
