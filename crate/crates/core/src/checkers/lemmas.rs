//! Instance checks for the structural lemmas behind the McCoy theorem.

use std::sync::Arc;

use serde::Serialize;

use super::search::{DenseWindow, Window};
use super::{set_name, LemmaId, LemmaReport};
use crate::error::CheckError;
use crate::ideal::{annihilator, closure, prime_failure, two_sided_failure, Side, Sidedness};
use crate::props::{Flag, PropertyProfile, RingAnalysis};
use crate::ring::{Elem, ElemSet, FiniteRing};
use crate::series::MonoidAction;
use crate::Limits;

/// Ring properties plus the action's compatibility, reduced to one flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisProfile {
    pub profile: PropertyProfile,
    pub monoid: String,
    pub action: String,
    pub compatible: Flag,
    pub radical_nilpotent: bool,
    /// Abelian, semi-regular, J(R) nilpotent and compatible.
    pub theorem_hypotheses_hold: bool,
}

pub fn hypothesis_profile(analysis: &RingAnalysis, action: &MonoidAction) -> HypothesisProfile {
    let ring = &analysis.ring;
    let compatible = Flag::from_witness(action.compatibility_failure().map(|(a, b, i)| {
        vec![
            ring.elem_name(a).to_string(),
            ring.elem_name(b).to_string(),
            format!("generator {i}"),
        ]
    }));
    HypothesisProfile {
        theorem_hypotheses_hold: analysis.ring_hypotheses_hold() && compatible.holds,
        profile: analysis.profile(),
        monoid: action.monoid().kind().to_string(),
        action: action.label().to_string(),
        compatible,
        radical_nilpotent: analysis.jacobson_nilpotent(),
    }
}

fn unmet(analysis: &RingAnalysis, need_nilpotent: bool) -> Option<String> {
    let mut missing = Vec::new();
    if !analysis.is_abelian() {
        missing.push("abelian");
    }
    if !analysis.is_semiregular() {
        missing.push("semi-regular");
    }
    if need_nilpotent && !analysis.jacobson_nilpotent() {
        missing.push("J(R) nilpotent");
    }
    (!missing.is_empty()).then(|| format!("hypotheses fail: not {}", missing.join(", not ")))
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

/// Every nondecreasing tuple over `0..n` of length `1..=max_len`.
fn tuples(n: usize, max_len: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Elem>> = (0..n).map(|a| vec![a]).collect();
    for _ in 0..max_len {
        out.extend(layer.iter().cloned());
        layer = layer
            .iter()
            .flat_map(|t| {
                let last = *t.last().unwrap();
                (last..n).map(move |a| {
                    let mut u = t.clone();
                    u.push(a);
                    u
                })
            })
            .collect();
    }
    out
}

/// `A + B` for additive subgroups.
fn subgroup_sum(ring: &FiniteRing, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut out = ElemSet::empty(ring.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(ring.add(x, y));
        }
    }
    out
}

/// For every tuple `(a_0, ..., a_k)` with `k <= max_index`: if the two-sided
/// ideal they generate is R, the left ideal `Σ R a_i` (all indices from 0)
/// must be R too.
pub fn verify_lemma_generation(analysis: &RingAnalysis, max_index: usize) -> LemmaReport {
    let ring = &analysis.ring;
    if let Some(why) = unmet(analysis, true) {
        return LemmaReport::skipped(LemmaId::Generation, ring.name(), None, why);
    }
    let mut rep = LemmaReport::new(LemmaId::Generation, ring.name(), None, true);
    let two: Vec<ElemSet> = ring.elements().map(|a| closure(ring, [a], Sidedness::TwoSided)).collect();
    let left: Vec<ElemSet> = ring.elements().map(|a| closure(ring, [a], Sidedness::Left)).collect();
    let n = ring.order();
    for t in tuples(n, max_index + 1) {
        let name = format!("({})", t.iter().map(|&a| ring.elem_name(a)).collect::<Vec<_>>().join(", "));
        let two_sum = t[1..].iter().fold(two[t[0]].clone(), |acc, &a| subgroup_sum(ring, &acc, &two[a]));
        if two_sum.len() < n {
            rep.vacuous(name);
            continue;
        }
        let left_sum = t[1..].iter().fold(left[t[0]].clone(), |acc, &a| subgroup_sum(ring, &acc, &left[a]));
        if left_sum.len() == n {
            rep.pass(name, None);
        } else {
            rep.fail(name, vec![format!("Σ R a_i = {}", set_name(ring, left_sum.iter()))]);
        }
    }
    rep.finish()
}

/// Abelian semi-regular rings: every maximal one-sided ideal is two-sided.
pub fn verify_quasi_duo(analysis: &RingAnalysis) -> LemmaReport {
    let ring = &analysis.ring;
    if let Some(why) = unmet(analysis, false) {
        return LemmaReport::skipped(LemmaId::QuasiDuo, ring.name(), None, why);
    }
    let mut rep = LemmaReport::new(LemmaId::QuasiDuo, ring.name(), None, true);
    for side in [Side::Left, Side::Right] {
        for m in analysis.maximal(side) {
            let name = format!("maximal {} ideal {}", side_name(side), set_name(ring, m.elements.iter()));
            match two_sided_failure(ring, &m.elements) {
                None => rep.pass(name, None),
                Some((x, y)) => rep.fail(
                    name,
                    vec![ring.elem_name(x).to_string(), ring.elem_name(y).to_string()],
                ),
            }
        }
    }
    rep.finish()
}

/// Abelian semi-regular rings: every maximal one-sided ideal is a prime
/// two-sided ideal.
pub fn verify_maximal_prime(analysis: &RingAnalysis) -> LemmaReport {
    let ring = &analysis.ring;
    if let Some(why) = unmet(analysis, false) {
        return LemmaReport::skipped(LemmaId::MaximalPrime, ring.name(), None, why);
    }
    let mut rep = LemmaReport::new(LemmaId::MaximalPrime, ring.name(), None, true);
    for side in [Side::Left, Side::Right] {
        for m in analysis.maximal(side) {
            let name = format!("maximal {} ideal {}", side_name(side), set_name(ring, m.elements.iter()));
            match prime_failure(ring, &m.elements) {
                Ok(None) => rep.pass(name, None),
                Ok(Some((a, b))) => rep.fail(
                    name,
                    vec![
                        "aRb inside M".into(),
                        ring.elem_name(a).to_string(),
                        ring.elem_name(b).to_string(),
                    ],
                ),
                Err(e) => rep.fail(name, vec![e.to_string()]),
            }
        }
    }
    rep.finish()
}

/// Abelian semi-regular rings with J(R) nilpotent: both annihilators of
/// every maximal one-sided ideal are nonzero.
pub fn verify_annihilator_nonzero(analysis: &RingAnalysis) -> LemmaReport {
    let ring = &analysis.ring;
    if let Some(why) = unmet(analysis, true) {
        return LemmaReport::skipped(LemmaId::AnnihilatorNonzero, ring.name(), None, why);
    }
    let mut rep = LemmaReport::new(LemmaId::AnnihilatorNonzero, ring.name(), None, true);
    for side in [Side::Left, Side::Right] {
        for m in analysis.maximal(side) {
            let members = m.members();
            for ann_side in [Side::Right, Side::Left] {
                let ann = annihilator(ring, &members, ann_side);
                let label = if ann_side == Side::Right { "r_R" } else { "l_R" };
                let name = format!(
                    "{label}(M), M = maximal {} ideal {}",
                    side_name(side),
                    set_name(ring, members.iter().copied())
                );
                if ann.len() > 1 {
                    rep.pass(name, Some(vec![set_name(ring, ann.iter())]));
                } else {
                    rep.fail(name, vec![format!("{label}(M) = {{0}}")]);
                }
            }
        }
    }
    rep.finish()
}

/// For compatible actions on rings meeting the ring hypotheses:
/// `ab ∈ M ⇔ a ω_s(b) ∈ M` for every maximal one-sided `M`, every pair and
/// every distinct `ω_s`.
pub fn verify_compatible_membership(analysis: &RingAnalysis, action: &MonoidAction) -> LemmaReport {
    let ring = &analysis.ring;
    let label = action.label();
    if let Some(why) = unmet(analysis, true) {
        return LemmaReport::skipped(LemmaId::CompatibleMembership, ring.name(), Some(label), why);
    }
    if let Some((a, b, i)) = action.compatibility_failure() {
        return LemmaReport::skipped(
            LemmaId::CompatibleMembership,
            ring.name(),
            Some(label),
            format!(
                "hypotheses fail: action not compatible (generator {i}, a = {}, b = {})",
                ring.elem_name(a),
                ring.elem_name(b)
            ),
        );
    }
    let mut rep = LemmaReport::new(LemmaId::CompatibleMembership, ring.name(), Some(label), true);
    let images = action.distinct_images();
    for side in [Side::Right, Side::Left] {
        for m in analysis.maximal(side) {
            for sigma in &images {
                let name = format!(
                    "M = maximal {} ideal {}, ω_s = {}",
                    side_name(side),
                    set_name(ring, m.elements.iter()),
                    sigma.describe(ring)
                );
                let bad = ring.elements().find_map(|a| {
                    ring.elements()
                        .find(|&b| m.contains(ring.mul(a, b)) != m.contains(ring.mul(a, sigma.apply(b))))
                        .map(|b| (a, b))
                });
                match bad {
                    None => rep.pass(name, None),
                    Some((a, b)) => rep.fail(name, vec![ring.elem_name(a).into(), ring.elem_name(b).into()]),
                }
            }
        }
    }
    rep.finish()
}

/// For every pair `f, g ≠ 0` supported in `window` with `fg = 0`: if the
/// coefficients of `f` escape every maximal right ideal, the coefficients of
/// `g` lie in J(R). Pairs where some maximal right ideal contains `C_f` are
/// vacuous instances.
pub fn verify_coefficients_in_radical(
    analysis: &RingAnalysis,
    action: &Arc<MonoidAction>,
    window: &Window,
    limits: &Limits,
) -> Result<LemmaReport, CheckError> {
    let ring = &analysis.ring;
    if ring != action.ring() {
        return Err(CheckError::Precondition("analysis and action use different rings".into()));
    }
    let label = action.label();
    if let Some(why) = unmet(analysis, true) {
        return Ok(LemmaReport::skipped(LemmaId::CoefficientsInRadical, ring.name(), Some(label), why));
    }
    if !action.is_compatible() {
        return Ok(LemmaReport::skipped(
            LemmaId::CoefficientsInRadical,
            ring.name(),
            Some(label),
            "hypotheses fail: action not compatible",
        ));
    }
    let needed = window.pair_count(ring.order());
    if needed > limits.pair_budget() {
        return Err(CheckError::Budget {
            needed,
            budget: limits.pair_budget(),
        });
    }
    let dense = DenseWindow::new(action, window)?;
    let vecs = dense.decode_all();
    let m = dense.m;
    let vec_at = |k: u64| &vecs[k as usize * m..(k as usize + 1) * m];
    let zero = dense.zero_index();
    let max_right = analysis.maximal(Side::Right);
    let mut rep = LemmaReport::new(LemmaId::CoefficientsInRadical, ring.name(), Some(label), true);
    let mut scratch = dense.scratch();
    for fi in (0..dense.count).filter(|&k| k != zero) {
        let f = vec_at(fi);
        let escapes = max_right.iter().all(|mi| f.iter().any(|&c| !mi.contains(c)));
        let table = dense.left_table(f);
        let (mut passed, mut vacuous) = (0u64, 0u64);
        for gi in (0..dense.count).filter(|&k| k != zero) {
            let g = vec_at(gi);
            if !dense.product_is_zero(&table, g, &mut scratch) {
                continue;
            }
            if !escapes {
                vacuous += 1;
                continue;
            }
            let name = || {
                let fs = dense.to_series(action, window, f);
                let gs = dense.to_series(action, window, g);
                format!("f = {fs}, g = {gs}")
            };
            match g.iter().find(|&&c| !analysis.jacobson.contains(c)) {
                None => {
                    if rep.samples.len() < super::SAMPLE_LIMIT {
                        rep.pass(name(), None);
                    } else {
                        passed += 1;
                    }
                }
                Some(&c) => rep.fail(name(), vec![format!("coefficient {} outside J(R)", ring.elem_name(c))]),
            }
        }
        rep.pass_many(passed);
        rep.vacuous_many(vacuous);
    }
    Ok(rep.finish())
}
