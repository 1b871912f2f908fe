//! Enumerating and naming monoid actions on a finite ring.
//!
//! Action specs: `trivial` (or `id`), `frobenius`, `endo:k` (the k-th
//! enumerated endomorphism, 0 being the identity), a comma list with one
//! entry per generator for `N^k lex`, or `all` / `compatible` for every
//! valid action.

use std::sync::Arc;

use crate::endo::{enumerate_endomorphisms, frobenius, Endomorphism};
use crate::error::{CheckError, SeriesError};
use crate::omonoid::OrderedMonoid;
use crate::ring::FiniteRing;
use crate::series::MonoidAction;
use crate::Limits;

/// Endomorphisms in enumeration order with their display names.
pub fn named_endomorphisms(ring: &FiniteRing, limits: &Limits) -> Result<Vec<(String, Endomorphism)>, CheckError> {
    let frob = frobenius(ring).ok();
    Ok(enumerate_endomorphisms(ring, limits.endo_cap)?
        .into_iter()
        .enumerate()
        .map(|(k, e)| {
            let name = if e.is_identity() {
                "trivial".to_string()
            } else if frob.as_ref() == Some(&e) {
                "frobenius".to_string()
            } else {
                format!("endo:{k}")
            };
            (name, e)
        })
        .collect())
}

fn one_generator(
    ring: &FiniteRing,
    token: &str,
    named: &mut Option<Vec<(String, Endomorphism)>>,
    limits: &Limits,
) -> Result<(String, Endomorphism), CheckError> {
    let bad = |msg: String| CheckError::Precondition(msg);
    match token {
        "trivial" | "id" => return Ok(("trivial".into(), Endomorphism::identity(ring))),
        "frobenius" => {
            let f = frobenius(ring).map_err(|e| bad(format!("frobenius is not an endomorphism here: {e}")))?;
            let name = if f.is_identity() { "trivial" } else { "frobenius" };
            return Ok((name.into(), f));
        }
        _ => {}
    }
    let k: usize = token
        .strip_prefix("endo:")
        .and_then(|k| k.trim().parse().ok())
        .ok_or_else(|| bad(format!("unknown action `{token}` (expected trivial, frobenius, endo:k, all or compatible)")))?;
    if named.is_none() {
        *named = Some(named_endomorphisms(ring, limits)?);
    }
    let list = named.as_ref().unwrap();
    list.get(k)
        .cloned()
        .ok_or_else(|| bad(format!("endo:{k} does not exist; the ring has {} endomorphisms", list.len())))
}

/// Every valid action of `monoid` on `ring`: one endomorphism per generator,
/// bijective for Z, pairwise commuting for N^k. Sorted by generator indices.
pub fn all_actions(
    ring: &Arc<FiniteRing>,
    monoid: &OrderedMonoid,
    limits: &Limits,
) -> Result<Vec<Arc<MonoidAction>>, CheckError> {
    let named = named_endomorphisms(ring, limits)?;
    let k = monoid.generator_count();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let gens: Vec<Endomorphism> = idx.iter().map(|&i| named[i].1.clone()).collect();
        let label = idx.iter().map(|&i| named[i].0.as_str()).collect::<Vec<_>>().join(",");
        match MonoidAction::new(ring.clone(), *monoid, gens, label) {
            Ok(a) => out.push(Arc::new(a)),
            Err(SeriesError::NonCommuting { .. } | SeriesError::NotBijective { .. }) => {}
            Err(e) => return Err(e.into()),
        }
        // odometer over generator indices, last coordinate fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < named.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Resolves an action spec to one or more actions.
pub fn resolve_actions(
    ring: &Arc<FiniteRing>,
    monoid: &OrderedMonoid,
    spec: &str,
    limits: &Limits,
) -> Result<Vec<Arc<MonoidAction>>, CheckError> {
    let spec = spec.trim();
    match spec {
        "all" => return all_actions(ring, monoid, limits),
        "compatible" => {
            let mut v = all_actions(ring, monoid, limits)?;
            v.retain(|a| a.is_compatible());
            return Ok(v);
        }
        _ => {}
    }
    let tokens: Vec<&str> = spec.split(',').map(str::trim).collect();
    let k = monoid.generator_count();
    let tokens = match tokens.len() {
        1 => vec![tokens[0]; k],
        l if l == k => tokens,
        l => {
            return Err(CheckError::Precondition(format!(
                "action `{spec}` names {l} generators but {} needs {k}",
                monoid.kind()
            )))
        }
    };
    let mut named = None;
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for t in tokens {
        let (name, e) = one_generator(ring, t, &mut named, limits)?;
        labels.push(name);
        gens.push(e);
    }
    labels.dedup();
    let label = if labels.len() == 1 { labels.remove(0) } else { labels.join(",") };
    Ok(vec![Arc::new(MonoidAction::new(ring.clone(), *monoid, gens, label)?)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_ring, RingSpec};
    use crate::omonoid::MonoidKind;

    fn ring(s: &str) -> Arc<FiniteRing> {
        Arc::new(build_ring(&s.parse::<RingSpec>().unwrap()).unwrap())
    }

    #[test]
    fn names_and_resolution() {
        let r = ring("gf 4");
        let n = OrderedMonoid::new(MonoidKind::Naturals);
        let names: Vec<String> = named_endomorphisms(&r, &Limits::default()).unwrap().into_iter().map(|x| x.0).collect();
        assert_eq!(names, vec!["trivial", "frobenius"]);
        assert_eq!(resolve_actions(&r, &n, "endo:1", &Limits::default()).unwrap()[0].label(), "frobenius");
        assert!(resolve_actions(&r, &n, "endo:2", &Limits::default()).is_err());
        assert!(resolve_actions(&r, &n, "bogus", &Limits::default()).is_err());
    }

    #[test]
    fn all_actions_by_monoid() {
        let v = ring("product zmod2 zmod2");
        let l = Limits::default();
        assert_eq!(all_actions(&v, &OrderedMonoid::new(MonoidKind::Naturals), &l).unwrap().len(), 4);
        // only the identity and the swap are bijective
        assert_eq!(all_actions(&v, &OrderedMonoid::new(MonoidKind::Integers), &l).unwrap().len(), 2);
        let c = resolve_actions(&v, &OrderedMonoid::new(MonoidKind::Naturals), "compatible", &l).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_trivial());
        let n2 = OrderedMonoid::new(MonoidKind::NaturalsLex(2));
        let pair = resolve_actions(&ring("gf 4"), &n2, "frobenius,trivial", &l).unwrap();
        assert_eq!(pair[0].label(), "frobenius,trivial");
    }
}
