//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach stdout.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewmc::actions::resolve_actions;
use skewmc::checkers::{
    fields_witness_check, hypothesis_profile, mccoy_search_both, replay_verdict, two_primal_exploration,
    verify_annihilator_nonzero, verify_coefficients_in_radical, verify_compatible_membership, verify_lemma_generation,
    verify_main_theorem, verify_maximal_prime, verify_quasi_duo, verify_sn_transfer, LemmaReport, LemmaStatus,
    SearchOptions, Window,
};
use skewmc::harness::{analyse, catalog_generate, run_campaign, CampaignConfig};
use skewmc::ideal::Nilpotency;
use skewmc::ideal::intersection;
use skewmc::ring::validate_ring_axioms;
use skewmc::{
    build_ring, Elem, FiniteRing, Limits, MonoidAction, MonoidElem, MonoidKind, OrderedMonoid, RingSpec, Side,
    SkewSeries,
};

type Outcome = Result<String, String>;

fn spec(s: &str) -> RingSpec {
    s.parse().unwrap()
}

fn ring(s: &str) -> Arc<FiniteRing> {
    Arc::new(build_ring(&spec(s)).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() <= limit, || format!("took {:?}, limit {:?}", start.elapsed(), limit))
}

fn catalog8() -> Vec<RingSpec> {
    catalog_generate(8).unwrap()
}

// --- brute-force oracles --------------------------------------------------

fn oracle_axioms(r: &FiniteRing) -> Result<(), String> {
    let els: Vec<Elem> = r.elements().collect();
    let (z, o) = (r.zero(), r.one());
    ensure(z != o, || "0 = 1".into())?;
    for &a in &els {
        ensure(r.add(a, z) == a && r.mul(a, o) == a && r.mul(o, a) == a, || format!("identity fails at {a}"))?;
        ensure(els.iter().any(|&b| r.add(a, b) == z), || format!("{a} has no negative"))?;
        for &b in &els {
            ensure(r.add(a, b) == r.add(b, a), || format!("+ not commutative at {a},{b}"))?;
            for &c in &els {
                ensure(r.add(r.add(a, b), c) == r.add(a, r.add(b, c)), || "+ not associative".into())?;
                ensure(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)), || "* not associative".into())?;
                ensure(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)), || "left distributivity".into())?;
                ensure(r.mul(r.add(a, b), c) == r.add(r.mul(a, c), r.mul(b, c)), || "right distributivity".into())?;
            }
        }
    }
    Ok(())
}

fn oracle_is_unit(r: &FiniteRing, x: Elem) -> bool {
    r.elements().any(|y| r.mul(x, y) == r.one() && r.mul(y, x) == r.one())
}

/// `a` is in J(R) iff `1 - ra` is a unit for every `r`.
fn oracle_radical(r: &FiniteRing) -> BTreeSet<Elem> {
    r.elements()
        .filter(|&a| r.elements().all(|x| oracle_is_unit(r, r.sub(r.one(), r.mul(x, a)))))
        .collect()
}

/// Least `k` with every product of `k` radical elements zero.
fn oracle_index(r: &FiniteRing, j: &BTreeSet<Elem>) -> Option<usize> {
    let mut products: BTreeSet<Elem> = j.clone();
    for k in 1..=r.order() {
        if products.iter().all(|&p| r.is_zero(p)) {
            return Some(k);
        }
        products = products
            .iter()
            .flat_map(|&p| j.iter().map(move |&q| (p, q)))
            .map(|(p, q)| r.mul(p, q))
            .collect();
    }
    None
}

/// Dense product of two coefficient vectors over N: `(fg)_k = Σ f_i σ^i(g_j)`.
fn oracle_poly_mul(a: &MonoidAction, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    let r = a.ring();
    let mut out = vec![r.zero(); f.len() + g.len()];
    for (i, &fi) in f.iter().enumerate() {
        for (j, &gj) in g.iter().enumerate() {
            let mut t = gj;
            for _ in 0..i {
                t = a.generators()[0].apply(t);
            }
            out[i + j] = r.add(out[i + j], r.mul(fi, t));
        }
    }
    out
}

fn vectors(r: &FiniteRing, len: usize) -> Vec<Vec<Elem>> {
    let mut all = vec![vec![]];
    for _ in 0..len {
        all = all
            .into_iter()
            .flat_map(|v| {
                r.elements().map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    all
}

/// Zero-divisor pairs and right/left McCoy failures over N, degree d.
fn oracle_mccoy(a: &MonoidAction, d: usize) -> (u64, bool, bool) {
    let r = a.ring();
    let vs: Vec<Vec<Elem>> = vectors(r, d + 1).into_iter().filter(|v| v.iter().any(|&e| !r.is_zero(e))).collect();
    let pow = |mut x: Elem, i: usize| {
        for _ in 0..i {
            x = a.generators()[0].apply(x);
        }
        x
    };
    let (mut zp, mut rf, mut lf) = (0, false, false);
    for f in &vs {
        for g in &vs {
            if oracle_poly_mul(a, f, g).iter().all(|&e| r.is_zero(e)) {
                zp += 1;
                let right = r
                    .nonzero_elements()
                    .any(|c| f.iter().enumerate().all(|(i, &fi)| r.is_zero(r.mul(fi, pow(c, i)))));
                let left = r.nonzero_elements().any(|c| g.iter().all(|&gj| r.is_zero(r.mul(c, gj))));
                rf |= !right;
                lf |= !left;
            }
        }
    }
    (zp, rf, lf)
}

// --- criteria -----------------------------------------------------------------

fn axioms() -> Outcome {
    let t = Instant::now();
    let specs = catalog8();
    for s in &specs {
        let r = build_ring(s).map_err(|e| format!("{s}: {e}"))?;
        let rep = validate_ring_axioms(&r.tables());
        ensure(rep.all_passed(), || format!("{s}: {:?}", rep.first_failure()))?;
        oracle_axioms(&r).map_err(|e| format!("{s}: {e}"))?;
    }
    within(t, Duration::from_secs(10))?;
    Ok(format!("{} catalog rings in {:?}", specs.len(), t.elapsed()))
}

fn radical() -> Outcome {
    let limits = Limits::default();
    for s in catalog8() {
        let (r, a) = analyse(&s, &limits).map_err(|e| e.to_string())?;
        let mine: BTreeSet<Elem> = a.jacobson.members().into_iter().collect();
        let oracle = oracle_radical(&r);
        ensure(mine == oracle, || format!("{s}: J = {mine:?}, oracle {oracle:?}"))?;
        for side in [Side::Left, Side::Right] {
            let meet: BTreeSet<Elem> = intersection(r.order(), a.maximal(side)).iter().collect();
            ensure(meet == oracle, || format!("{s}: {side:?} maximal ideals meet in {meet:?}"))?;
        }
        let idx = match a.jacobson_index {
            Nilpotency::Index(k) => Some(k),
            Nilpotency::NotNilpotent => None,
        };
        ensure(idx == oracle_index(&r, &oracle), || format!("{s}: index {idx:?}"))?;
    }
    for (s, k) in [("zmod 4", 2), ("zmod 8", 3), ("gf 4", 1)] {
        let (_, a) = analyse(&spec(s), &limits).unwrap();
        ensure(a.jacobson_index == Nilpotency::Index(k), || format!("{s}: {:?}", a.jacobson_index))?;
    }
    Ok("quasi-regular and maximal-ideal radicals agree with the oracle on the catalog".into())
}

fn lemmas() -> Outcome {
    let t = Instant::now();
    let limits = Limits::default();
    let n = OrderedMonoid::new(MonoidKind::Naturals);
    let mut reports: Vec<LemmaReport> = Vec::new();
    for s in catalog8() {
        let (r, a) = analyse(&s, &limits).map_err(|e| e.to_string())?;
        reports.extend([
            verify_lemma_generation(&a, 2),
            verify_quasi_duo(&a),
            verify_maximal_prime(&a),
            verify_annihilator_nonzero(&a),
        ]);
        for act in resolve_actions(&r, &n, "all", &limits).map_err(|e| e.to_string())? {
            reports.push(verify_compatible_membership(&a, &act));
            reports.push(
                verify_coefficients_in_radical(&a, &act, &Window::degree(&n, 1), &limits).map_err(|e| e.to_string())?,
            );
        }
    }
    let failed: Vec<String> = reports.iter().filter(|r| r.failed()).map(|r| format!("{:?} on {}", r.lemma, r.ring)).collect();
    ensure(failed.is_empty(), || format!("failures: {failed:?}"))?;
    within(t, Duration::from_secs(60))?;
    let vacuous = reports.iter().filter(|r| r.status == LemmaStatus::Vacuous).count();
    let flagged: u64 = reports.iter().map(|r| r.vacuous_instances).sum();
    Ok(format!(
        "{} reports, 0 failures, {vacuous} vacuous reports, {flagged} vacuous instances flagged, {:?}",
        reports.len(),
        t.elapsed()
    ))
}

fn theorem() -> Outcome {
    let t = Instant::now();
    let limits = Limits::default();
    let mut runs = 0;
    let mut shrunk = 0;
    // the dense engine against an independent polynomial oracle
    for s in ["zmod 4", "gf 4", "product zmod2 zmod2", "uppertri 2 zmod2"] {
        let r = ring(s);
        let n = OrderedMonoid::new(MonoidKind::Naturals);
        for act in resolve_actions(&r, &n, "all", &limits).unwrap() {
            let (rv, lv) = mccoy_search_both(&act, &Window::degree(&n, 1), &SearchOptions::default(), &limits)
                .map_err(|e| e.to_string())?;
            let (zp, rf, lf) = oracle_mccoy(&act, 1);
            ensure(rv.zero_divisor_pairs == zp && rv.is_counterexample() == rf && lv.is_counterexample() == lf, || {
                format!("{s} [{}]: engine disagrees with oracle", act.label())
            })?;
        }
    }
    for s in catalog8() {
        let (r, a) = analyse(&s, &limits).map_err(|e| e.to_string())?;
        for kind in [MonoidKind::Naturals, MonoidKind::Integers] {
            let m = OrderedMonoid::new(kind);
            for act in resolve_actions(&r, &m, "compatible", &limits).map_err(|e| e.to_string())? {
                if !hypothesis_profile(&a, &act).theorem_hypotheses_hold {
                    continue;
                }
                let d = Window::largest_degree_within(&m, r.order(), 3, limits.pair_budget())
                    .ok_or_else(|| format!("{s}: no window fits"))?;
                shrunk += usize::from(d < 3);
                let run = verify_main_theorem(&a, &act, &Window::degree(&m, d), &SearchOptions::default(), &limits)
                    .map_err(|e| e.to_string())?;
                ensure(run.passes, || format!("{s} {kind} [{}]: counterexample", act.label()))?;
                runs += 1;
            }
        }
    }
    ensure(runs > 0, || "no instance satisfied the hypotheses".into())?;
    within(t, Duration::from_secs(300))?;
    Ok(format!("{runs} instances, both sides, no counterexample ({shrunk} windows shrunk by budget)"))
}

fn replay() -> Outcome {
    let limits = Limits::default();
    let monoids = [OrderedMonoid::new(MonoidKind::Naturals), OrderedMonoid::new(MonoidKind::Integers)];
    let report = two_primal_exploration(&catalog8(), &monoids, 2, &limits).map_err(|e| e.to_string())?;
    let mut n = 0;
    for e in &report.entries {
        for v in e.right.iter().chain(e.left.iter()) {
            replay_verdict(v).map_err(|m| format!("{} [{}]: {m}", e.ring, e.action))?;
            n += usize::from(v.counterexample.is_some()) + usize::from(v.witness_example.is_some());
        }
    }
    for s in ["zmod 4", "zmod 8", "gf 4", "product zmod2 zmod2"] {
        let (r, a) = analyse(&spec(s), &limits).unwrap();
        for act in resolve_actions(&r, &monoids[0], "compatible", &limits).unwrap() {
            let run = verify_main_theorem(&a, &act, &Window::degree(&monoids[0], 2), &SearchOptions::default(), &limits)
                .map_err(|e| e.to_string())?;
            for v in [&run.right, &run.left] {
                replay_verdict(v).map_err(|m| format!("{s}: {m}"))?;
                n += usize::from(v.counterexample.is_some()) + usize::from(v.witness_example.is_some());
            }
        }
    }
    ensure(n > 0, || "nothing to replay".into())?;
    Ok(format!("{n} witnesses and counterexamples replayed through series arithmetic"))
}

fn random_series(a: &Arc<MonoidAction>, rng: &mut ChaCha8Rng) -> SkewSeries {
    let q = a.ring().order();
    let terms: Vec<(MonoidElem, Elem)> = (0..=5).map(|e| (MonoidElem::scalar(e), rng.gen_range(0..q))).collect();
    SkewSeries::from_terms(a, terms).unwrap()
}

fn dense(f: &SkewSeries, len: usize) -> Vec<Elem> {
    let z = f.action().ring().zero();
    (0..len).map(|e| f.terms().get(&MonoidElem::scalar(e as i64)).copied().unwrap_or(z)).collect()
}

fn series_algebra() -> Outcome {
    let limits = Limits::default();
    let n = OrderedMonoid::new(MonoidKind::Naturals);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (s, act) in [("gf 4", "frobenius"), ("zmod 4", "trivial")] {
        let r = ring(s);
        let a = resolve_actions(&r, &n, act, &limits).unwrap().remove(0);
        let one = SkewSeries::one(&a);
        for _ in 0..1000 {
            let (f, g, h) = (random_series(&a, &mut rng), random_series(&a, &mut rng), random_series(&a, &mut rng));
            let fg = f.mul(&g).unwrap();
            ensure(dense(&fg, 11) == oracle_poly_mul(&a, &dense(&f, 6), &dense(&g, 6))[..11], || {
                format!("{s}: product disagrees with oracle")
            })?;
            ensure(fg.mul(&h).unwrap() == f.mul(&g.mul(&h).unwrap()).unwrap(), || format!("{s}: associativity"))?;
            ensure(
                f.mul(&g.add(&h).unwrap()).unwrap() == fg.add(&f.mul(&h).unwrap()).unwrap(),
                || format!("{s}: distributivity"),
            )?;
            ensure(f.mul(&one).unwrap() == f && one.mul(&f).unwrap() == f, || format!("{s}: identity"))?;
        }
        for e in 0..=5 {
            let es = SkewSeries::embed_monoid(&a, MonoidElem::scalar(e)).unwrap();
            for x in r.elements() {
                let lhs = es.mul(&SkewSeries::embed_const(&a, x)).unwrap();
                let rhs = SkewSeries::embed_const(&a, a.apply(&MonoidElem::scalar(e), x)).mul(&es).unwrap();
                ensure(lhs == rhs, || format!("{s}: e_{e} c_{x} twist"))?;
            }
        }
    }
    Ok("1000 random triples each on gf 4 [frobenius] and zmod 4 [trivial]; twist law for exponents 0..5".into())
}

fn sn_transfer() -> Outcome {
    let limits = Limits::default();
    for (s, n) in [("zmod 2", 2), ("zmod 2", 3), ("zmod 4", 2)] {
        let rep = verify_sn_transfer(&spec(s), n, &limits).map_err(|e| format!("{s}, n = {n}: {e}"))?;
        ensure(rep.status == LemmaStatus::Holds, || format!("{s}, n = {n}: {:?}", rep.status))?;
    }
    Ok("S_2(zmod 2), S_3(zmod 2), S_2(zmod 4)".into())
}

fn fields() -> Outcome {
    let limits = Limits::default();
    let mut total = 0;
    for s in ["zmod 4", "zmod 6", "zmod 8", "product zmod2 zmod2"] {
        let rep = fields_witness_check(&ring(s), 3, &limits).map_err(|e| format!("{s}: {e}"))?;
        ensure(rep.status == LemmaStatus::Holds, || format!("{s}: {:?}", rep.status))?;
        total += rep.instances_checked;
    }
    Ok(format!("{total} polynomials of degree <= 3, criterion holds"))
}

fn uppertri() -> Outcome {
    let limits = Limits::default();
    let (r, a) = analyse(&spec("uppertri 2 zmod2"), &limits).map_err(|e| e.to_string())?;
    let hp = hypothesis_profile(&a, &MonoidAction::trivial(r.clone(), OrderedMonoid::new(MonoidKind::Naturals)));
    let w = hp.profile.abelian.witness.clone().ok_or("reported abelian")?;
    ensure(w == ["(1,0,0)", "(0,1,0)"], || format!("witness {w:?}"))?;
    let (e, x) = (r.elem_by_name(&w[0]).unwrap(), r.elem_by_name(&w[1]).unwrap());
    ensure(r.mul(e, e) == e && r.mul(e, x) != r.mul(x, e), || "witness is not a non-central idempotent".into())?;
    let rep = two_primal_exploration(
        &[spec("uppertri 2 zmod2")],
        &[OrderedMonoid::new(MonoidKind::Naturals)],
        2,
        &limits,
    )
    .map_err(|e| e.to_string())?;
    let recorded = rep.entries.iter().filter(|e| e.right.is_some() || e.note.is_some()).count();
    ensure(recorded > 0, || "exploration recorded nothing".into())?;
    let cex = rep.entries.iter().filter(|e| e.right.as_ref().is_some_and(|v| v.is_counterexample())).count();
    Ok(format!("witness (1,0,0),(0,1,0); {recorded} exploration entries, {cex} with a right counterexample"))
}

fn determinism() -> Outcome {
    let text = "rings = [\"zmod 4\", \"gf 4\", \"uppertri 2 zmod2\"]\nmonoids = [\"N\", \"Z\"]\ndegree = 1\nmode = \"random\"\nseed = 11\ntrials = 2000\n";
    let mut a = CampaignConfig::from_toml(text).unwrap();
    let mut b = a.clone();
    a.workers = 1;
    b.workers = 4;
    let ja = run_campaign(&a).map_err(|e| e.to_string())?.to_json();
    // worker count is part of the echoed config; compare with it aligned
    let jb = run_campaign(&b).map_err(|e| e.to_string())?.to_json().replace("\"workers\": 4", "\"workers\": 1");
    let jc = run_campaign(&a).map_err(|e| e.to_string())?.to_json();
    ensure(ja == jc, || "two runs differ".into())?;
    ensure(ja == jb, || "1 and 4 workers differ".into())?;
    Ok(format!("{} bytes, identical across runs and worker counts", ja.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("ring axioms over the catalog", axioms),
        ("radical and nilpotency index", radical),
        ("lemma suite", lemmas),
        ("McCoy under hypotheses", theorem),
        ("counterexample and witness replay", replay),
        ("series algebra", series_algebra),
        ("S_n transfer", sn_transfer),
        ("zero-divisor criterion", fields),
        ("upper triangular exploration", uppertri),
        ("reproducible campaign reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.2?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
