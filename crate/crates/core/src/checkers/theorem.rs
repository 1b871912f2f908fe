//! Theorem-level runs: both-sided McCoy search under the hypotheses, the
//! commutative zero-divisor criterion, the S_n(R) transfer, and the
//! 2-primal exploration.

use std::sync::Arc;

use serde::Serialize;

use super::lemmas::{hypothesis_profile, HypothesisProfile};
use super::search::{mccoy_search_both, DenseWindow, McCoyVerdict, Outcome, SearchOptions, Window};
use super::{LemmaId, LemmaReport};
use crate::actions::all_actions;
use crate::build::{build_ring, RingSpec};
use crate::error::{CheckError, RingError};
use crate::ideal::Side;
use crate::omonoid::{MonoidKind, OrderedMonoid};
use crate::props::RingAnalysis;
use crate::ring::{Elem, FiniteRing};
use crate::series::MonoidAction;
use crate::Limits;

/// Carried by every run outside the theorem's hypotheses.
pub const EXPLORATION_LABEL: &str =
    "exploration of the open 2-primal question; outcomes are recorded, no claim either way";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremRun {
    pub hypotheses: HypothesisProfile,
    /// True when the run was made without the theorem's hypotheses.
    pub exploration: bool,
    pub right: McCoyVerdict,
    pub left: McCoyVerdict,
    pub report: LemmaReport,
    /// Neither side produced a counterexample.
    pub passes: bool,
}

fn run(
    analysis: &RingAnalysis,
    action: &Arc<MonoidAction>,
    window: &Window,
    opts: &SearchOptions,
    limits: &Limits,
    exploration: bool,
) -> Result<TheoremRun, CheckError> {
    let hypotheses = hypothesis_profile(analysis, action);
    let (right, left) = mccoy_search_both(action, window, opts, limits)?;
    let mut report = LemmaReport::new(
        LemmaId::MainTheorem,
        analysis.ring.name(),
        Some(action.label()),
        hypotheses.theorem_hypotheses_hold,
    );
    for v in [&right, &left] {
        let side = match v.side {
            Side::Right => "right",
            Side::Left => "left",
        };
        let name = format!("{side} McCoy, {} pairs, window {}", v.pairs_examined, window_name(window));
        match (&v.outcome, &v.counterexample) {
            (Outcome::Vacuous, _) => report.vacuous(name),
            (Outcome::Counterexample, Some(c)) => {
                report.fail(name, vec![format!("f = {}", c.f), format!("g = {}", c.g)])
            }
            _ => report.pass(
                name,
                v.witness_example
                    .as_ref()
                    .map(|w| vec![format!("f = {}", w.f), format!("g = {}", w.g), format!("c = {}", w.c_name)]),
            ),
        }
    }
    let mut report = report.finish();
    if exploration {
        report = report.with_note(EXPLORATION_LABEL);
    }
    let passes = !right.is_counterexample() && !left.is_counterexample();
    Ok(TheoremRun {
        hypotheses,
        exploration,
        right,
        left,
        report,
        passes,
    })
}

fn window_name(w: &Window) -> String {
    let v: Vec<String> = w.elems().iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Runs the McCoy search on both sides for an instance meeting the
/// theorem's hypotheses; rejects any other instance.
pub fn verify_main_theorem(
    analysis: &RingAnalysis,
    action: &Arc<MonoidAction>,
    window: &Window,
    opts: &SearchOptions,
    limits: &Limits,
) -> Result<TheoremRun, CheckError> {
    let h = hypothesis_profile(analysis, action);
    if !h.theorem_hypotheses_hold {
        let mut why = Vec::new();
        for (ok, what) in [
            (h.profile.abelian.holds, "abelian"),
            (h.profile.semiregular.holds, "semi-regular"),
            (h.radical_nilpotent, "J(R) nilpotent"),
            (h.compatible.holds, "compatible"),
        ] {
            if !ok {
                why.push(what);
            }
        }
        return Err(CheckError::Precondition(format!(
            "{} with action {} is not {}; use exploration mode",
            analysis.ring.name(),
            action.label(),
            why.join(", not ")
        )));
    }
    run(analysis, action, window, opts, limits, false)
}

/// The same search without the precondition, labelled as exploration when
/// the hypotheses fail.
pub fn explore_mccoy(
    analysis: &RingAnalysis,
    action: &Arc<MonoidAction>,
    window: &Window,
    opts: &SearchOptions,
    limits: &Limits,
) -> Result<TheoremRun, CheckError> {
    let holds = hypothesis_profile(analysis, action).theorem_hypotheses_hold;
    run(analysis, action, window, opts, limits, !holds)
}

/// `{x : p x = 0}` for the additive group.
fn p_torsion(ring: &FiniteRing, p: usize) -> Vec<Elem> {
    ring.elements()
        .filter(|&x| ring.is_zero((1..p).fold(x, |acc, _| ring.add(acc, x))))
        .collect()
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Every vector in `set^m` except the zero vector.
fn nonzero_vectors(ring: &FiniteRing, set: &[Elem], m: usize) -> Vec<Vec<Elem>> {
    let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                set.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&c| !ring.is_zero(c)));
    out
}

/// Commutative R, polynomials over the window `{0..d}`: `f` has a nonzero
/// partner `g` in the window with `fg = 0` exactly when some nonzero
/// constant `r` has `rf = 0`.
///
/// Partners are searched in `R[p]^m` for the primes `p` dividing `|R|`,
/// which loses nothing: a partner `g` of additive order `N` yields the
/// partner `(N/p) g` of order `p`.
pub fn fields_witness_check(ring: &Arc<FiniteRing>, degree: u32, limits: &Limits) -> Result<LemmaReport, CheckError> {
    if !ring.is_commutative() {
        return Err(CheckError::Precondition(format!(
            "{} is not commutative; the zero-divisor criterion needs a commutative ring",
            ring.name()
        )));
    }
    let monoid = OrderedMonoid::new(MonoidKind::Naturals);
    let action = Arc::new(MonoidAction::trivial(ring.clone(), monoid));
    let window = Window::degree(&monoid, degree);
    let dense = DenseWindow::new(&action, &window)?;
    let m = dense.m;
    let partners: Vec<Vec<Elem>> = prime_divisors(ring.order())
        .into_iter()
        .flat_map(|p| nonzero_vectors(ring, &p_torsion(ring, p), m))
        .collect();
    let needed = window.vector_count(ring.order()) * partners.len() as u128;
    if needed > limits.pair_budget() {
        return Err(CheckError::Budget {
            needed,
            budget: limits.pair_budget(),
        });
    }
    let mut rep = LemmaReport::new(LemmaId::FieldsShadow, ring.name(), Some("trivial"), true);
    let mut scratch = dense.scratch();
    let mut f = vec![0; m];
    let zero = dense.zero_index();
    for k in (0..dense.count).filter(|&k| k != zero) {
        dense.decode(k, &mut f);
        let table = dense.left_table(&f);
        let partner = partners.iter().find(|g| dense.product_is_zero(&table, g, &mut scratch));
        let witness = dense.right_witness(&f);
        let fs = dense.to_series(&action, &window, &f);
        let name = format!("f = {fs}");
        match (partner, witness) {
            (Some(g), Some(r)) => rep.pass(
                name,
                Some(vec![
                    format!("g = {}", dense.to_series(&action, &window, g)),
                    format!("r = {}", ring.elem_name(r)),
                ]),
            ),
            (None, None) => rep.pass(name, Some(vec!["not a zero divisor in the window".into()])),
            (Some(g), None) => rep.fail(
                name,
                vec![format!("g = {}", dense.to_series(&action, &window, g)), "no constant r".into()],
            ),
            (None, Some(r)) => rep.fail(name, vec![format!("r = {} but no partner", ring.elem_name(r))]),
        }
    }
    Ok(rep
        .finish()
        .with_note("polynomial shadow of the power-series criterion: finitely supported f only"))
}

/// Abelian, semi-regular, J(R) nilpotent.
fn transfer_property(a: &RingAnalysis) -> bool {
    a.ring_hypotheses_hold()
}

/// Compares the hypothesis bundle of R and of S_n(R), and the orders of
/// their semisimple quotients.
pub fn verify_sn_transfer(base: &RingSpec, n: usize, limits: &Limits) -> Result<LemmaReport, CheckError> {
    if n < 2 {
        return Err(CheckError::Precondition(format!("S_n(R) needs n >= 2, got {n}")));
    }
    let big_spec = RingSpec::SMatrix(n, Box::new(base.clone()));
    let base_ring = build_ring(base)?;
    let order = base_ring
        .order()
        .checked_pow((1 + n * (n - 1) / 2) as u32)
        .unwrap_or(usize::MAX);
    if order > limits.ideal_cap {
        return Err(RingError::Capacity {
            what: "S_n(R) analysis",
            cap: limits.ideal_cap,
            order,
        }
        .into());
    }
    let small = RingAnalysis::new(base_ring, limits.ideal_cap)?;
    let big = RingAnalysis::new(build_ring(&big_spec)?, limits.ideal_cap)?;
    let mut rep = LemmaReport::new(LemmaId::SnTransfer, small.ring.name(), None, true);
    let (p, q) = (transfer_property(&small), transfer_property(&big));
    let flags = vec![format!("R: {p}"), format!("S_{n}(R): {q}")];
    let name = format!("abelian semi-regular with J nilpotent, R = {}, n = {n}", small.ring.name());
    if p == q {
        rep.pass(name, Some(flags));
    } else {
        rep.fail(name, flags);
    }
    let qa = small.ring.order() / small.jacobson.len();
    let qb = big.ring.order() / big.jacobson.len();
    let sizes = vec![format!("|R/J(R)| = {qa}"), format!("|S_{n}(R)/J(S_{n}(R))| = {qb}")];
    if qa == qb {
        rep.pass("quotient orders", Some(sizes));
    } else {
        rep.fail("quotient orders", sizes);
    }
    Ok(rep.finish())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorationEntry {
    pub ring: String,
    pub monoid: String,
    pub action: String,
    pub window_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<McCoyVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<McCoyVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub ring: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorationReport {
    pub label: &'static str,
    pub entries: Vec<ExplorationEntry>,
    pub excluded: Vec<Exclusion>,
    pub empty_stratum: bool,
}

/// Why a ring is outside the stratum: 2-primal, semi-regular, J(R)
/// nilpotent and not abelian.
fn stratum_exclusion(a: &RingAnalysis) -> Option<String> {
    if a.is_abelian() {
        return Some("abelian (covered by the theorem)".into());
    }
    let mut missing = Vec::new();
    if !a.nil.two_primal {
        missing.push("2-primal");
    }
    if !a.is_semiregular() {
        missing.push("semi-regular");
    }
    if !a.jacobson_nilpotent() {
        missing.push("J(R) nilpotent");
    }
    (!missing.is_empty()).then(|| format!("not {}", missing.join(", not ")))
}

/// Runs the McCoy search on every compatible action over non-abelian
/// 2-primal semi-regular rings with nilpotent radical. Windows shrink to
/// the largest degree within budget.
pub fn two_primal_exploration(
    rings: &[RingSpec],
    monoids: &[OrderedMonoid],
    degree: u32,
    limits: &Limits,
) -> Result<ExplorationReport, CheckError> {
    let mut entries = Vec::new();
    let mut excluded = Vec::new();
    for spec in rings {
        let analysis = match build_ring(spec).and_then(|r| RingAnalysis::new(r, limits.ideal_cap)) {
            Ok(a) => a,
            Err(e @ RingError::Capacity { .. }) => {
                excluded.push(Exclusion {
                    ring: spec.to_string(),
                    reason: e.to_string(),
                });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        if let Some(reason) = stratum_exclusion(&analysis) {
            excluded.push(Exclusion {
                ring: spec.to_string(),
                reason,
            });
            continue;
        }
        let ring = Arc::new(analysis.ring.clone());
        for monoid in monoids {
            let actions = match all_actions(&ring, monoid, limits) {
                Ok(v) => v,
                Err(e) if e.is_capacity() => {
                    entries.push(ExplorationEntry {
                        ring: ring.name().into(),
                        monoid: monoid.kind().to_string(),
                        action: "all".into(),
                        window_degree: None,
                        right: None,
                        left: None,
                        note: Some(e.to_string()),
                    });
                    continue;
                }
                Err(e) => return Err(e),
            };
            for action in actions.into_iter().filter(|a| a.is_compatible()) {
                let d = Window::largest_degree_within(monoid, ring.order(), degree, limits.pair_budget());
                let mut entry = ExplorationEntry {
                    ring: ring.name().into(),
                    monoid: monoid.kind().to_string(),
                    action: action.label().into(),
                    window_degree: d,
                    right: None,
                    left: None,
                    note: None,
                };
                match d {
                    None => entry.note = Some("no window fits the budget".into()),
                    Some(d) => {
                        if d < degree {
                            entry.note = Some(format!("window shrunk from degree {degree} to {d} by the budget"));
                        }
                        let w = Window::degree(monoid, d);
                        let (r, l) = mccoy_search_both(&action, &w, &SearchOptions::default(), limits)?;
                        entry.right = Some(r);
                        entry.left = Some(l);
                    }
                }
                entries.push(entry);
            }
        }
    }
    Ok(ExplorationReport {
        label: EXPLORATION_LABEL,
        empty_stratum: entries.is_empty(),
        entries,
        excluded,
    })
}
