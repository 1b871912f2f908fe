use serde_json::Value;
use skewmc_web::{mccoy_search, multiply_series, ring_profile};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn profile() {
    let v = parse(ring_profile("zmod 8"));
    assert_eq!(v["order"], 8);
    assert!(parse(ring_profile("nope")).get("error").is_some());
}

#[test]
fn twisted_product() {
    // over gf 4 with Frobenius, x·a = a^2·x
    let v = parse(multiply_series("gf 4", "N", "frobenius", "1*x^1", "a*x^0"));
    assert_eq!(v["fg"], "(a+1)*x^1");
    assert_eq!(v["gf"], "a*x^1");
}

#[test]
fn search() {
    let v = parse(mccoy_search("uppertri 2 zmod2", "N", "trivial", 1));
    assert_eq!(v[0]["right"]["outcome"], "counterexample");
    let v = parse(mccoy_search("zmod 8", "N", "trivial", 9));
    assert!(v["error"].as_str().unwrap().contains("budget"));
}
