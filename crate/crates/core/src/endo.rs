//! Unital ring endomorphisms of finite rings.

use serde::Serialize;

use crate::error::RingError;
use crate::ring::{Elem, ElemSet, FiniteRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Endomorphism {
    map: Vec<Elem>,
}

impl Endomorphism {
    pub fn identity(ring: &FiniteRing) -> Self {
        Endomorphism {
            map: ring.elements().collect(),
        }
    }

    /// Validates that `map` preserves `+`, `*` and `1`.
    pub fn new(ring: &FiniteRing, map: Vec<Elem>) -> Result<Self, RingError> {
        if map.len() != ring.order() || map.iter().any(|&y| y >= ring.order()) {
            return Err(RingError::NotEndomorphism("map is not total on the ring".into()));
        }
        if map[ring.one()] != ring.one() {
            return Err(RingError::NotEndomorphism("1 is not fixed".into()));
        }
        for a in ring.elements() {
            for b in ring.elements() {
                if map[ring.add(a, b)] != ring.add(map[a], map[b]) {
                    return Err(RingError::NotEndomorphism(format!(
                        "additivity fails at ({}, {})",
                        ring.elem_name(a),
                        ring.elem_name(b)
                    )));
                }
                if map[ring.mul(a, b)] != ring.mul(map[a], map[b]) {
                    return Err(RingError::NotEndomorphism(format!(
                        "multiplicativity fails at ({}, {})",
                        ring.elem_name(a),
                        ring.elem_name(b)
                    )));
                }
            }
        }
        Ok(Endomorphism { map })
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            map: other.map.iter().map(|&y| self.map[y]).collect(),
        }
    }

    /// First pair of distinct elements with equal images.
    pub fn collision(&self) -> Option<Elem> {
        let mut seen = vec![false; self.map.len()];
        for (i, &y) in self.map.iter().enumerate() {
            if std::mem::replace(&mut seen[y], true) {
                return Some(i);
            }
        }
        None
    }

    pub fn is_bijective(&self) -> bool {
        self.collision().is_none()
    }

    pub fn inverse(&self) -> Option<Endomorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (i, &y) in self.map.iter().enumerate() {
            inv[y] = i;
        }
        Some(Endomorphism { map: inv })
    }

    /// Image list as element names, e.g. for reports.
    pub fn describe(&self, ring: &FiniteRing) -> String {
        if self.is_identity() {
            return "id".into();
        }
        let parts: Vec<String> = ring
            .elements()
            .filter(|&a| self.map[a] != a)
            .map(|a| format!("{}->{}", ring.elem_name(a), ring.elem_name(self.map[a])))
            .collect();
        parts.join(" ")
    }
}

/// Smallest subring containing `seed` and 1.
fn subring_closure(ring: &FiniteRing, seed: &[Elem]) -> ElemSet {
    let mut set = ElemSet::empty(ring.order());
    let mut members = Vec::new();
    let mut queue: Vec<Elem> = vec![ring.zero(), ring.one()];
    queue.extend_from_slice(seed);
    while let Some(x) = queue.pop() {
        if !set.insert(x) {
            continue;
        }
        members.push(x);
        for &m in &members {
            for y in [ring.add(m, x), ring.mul(m, x), ring.mul(x, m)] {
                if !set.contains(y) {
                    queue.push(y);
                }
            }
        }
    }
    set
}

/// Greedy generating set of the ring as a unital ring.
pub fn ring_generators(ring: &FiniteRing) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut sub = subring_closure(ring, &gens);
    while sub.len() < ring.order() {
        let next = ring.elements().find(|&a| !sub.contains(a)).unwrap();
        gens.push(next);
        sub = subring_closure(ring, &gens);
    }
    gens
}

/// Extends a partial homomorphism by closing known pairs under + and *.
/// Returns false on a conflict.
fn close_partial(ring: &FiniteRing, map: &mut [Option<Elem>], known: &mut Vec<Elem>, x: Elem, y: Elem) -> bool {
    let mut queue = vec![(x, y)];
    while let Some((a, fa)) = queue.pop() {
        match map[a] {
            Some(prev) if prev == fa => continue,
            Some(_) => return false,
            None => {}
        }
        map[a] = Some(fa);
        known.push(a);
        for i in 0..known.len() {
            let b = known[i];
            let fb = map[b].unwrap();
            queue.push((ring.add(a, b), ring.add(fa, fb)));
            queue.push((ring.mul(a, b), ring.mul(fa, fb)));
            queue.push((ring.mul(b, a), ring.mul(fb, fa)));
        }
    }
    true
}

fn search(
    ring: &FiniteRing,
    gens: &[Elem],
    map: Vec<Option<Elem>>,
    known: Vec<Elem>,
    out: &mut Vec<Endomorphism>,
) {
    let Some((&g, rest)) = gens.split_first() else {
        let total: Vec<Elem> = map.iter().map(|m| m.expect("generators span the ring")).collect();
        if let Ok(e) = Endomorphism::new(ring, total) {
            out.push(e);
        }
        return;
    };
    if map[g].is_some() {
        search(ring, rest, map, known, out);
        return;
    }
    for y in ring.elements() {
        let mut m = map.clone();
        let mut k = known.clone();
        if close_partial(ring, &mut m, &mut k, g, y) {
            search(ring, rest, m, k, out);
        }
    }
}

/// All unital ring endomorphisms: identity first, then by image vector.
pub fn enumerate_endomorphisms(ring: &FiniteRing, cap: usize) -> Result<Vec<Endomorphism>, RingError> {
    if ring.order() > cap {
        return Err(RingError::Capacity {
            what: "endomorphism enumeration",
            cap,
            order: ring.order(),
        });
    }
    let gens = ring_generators(ring);
    let mut map = vec![None; ring.order()];
    let mut known = Vec::new();
    let ok = close_partial(ring, &mut map, &mut known, ring.zero(), ring.zero())
        && close_partial(ring, &mut map, &mut known, ring.one(), ring.one());
    assert!(ok, "0 -> 0 and 1 -> 1 never conflict");
    let mut out = Vec::new();
    search(ring, &gens, map, known, &mut out);
    out.sort_by(|a, b| {
        b.is_identity()
            .cmp(&a.is_identity())
            .then_with(|| a.map.cmp(&b.map))
    });
    out.dedup();
    Ok(out)
}

/// `r ↦ r^p` for the characteristic prime `p`, when it is an endomorphism.
pub fn frobenius(ring: &FiniteRing) -> Result<Endomorphism, RingError> {
    let p = ring.characteristic();
    let map = ring.elements().map(|a| ring.pow(a, p as u32)).collect();
    Endomorphism::new(ring, map)
}

/// First `(a, b)` with `ab = 0` not equivalent to `aσ(b) = 0`.
pub fn compatibility_failure(ring: &FiniteRing, sigma: &Endomorphism) -> Option<(Elem, Elem)> {
    for a in ring.elements() {
        for b in ring.elements() {
            let plain = ring.is_zero(ring.mul(a, b));
            let twisted = ring.is_zero(ring.mul(a, sigma.apply(b)));
            if plain != twisted {
                return Some((a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_ring, RingSpec};

    fn ring(s: &str) -> FiniteRing {
        build_ring(&s.parse::<RingSpec>().unwrap()).unwrap()
    }

    /// Independent oracle: every map R -> R checked directly.
    fn brute_force_endos(r: &FiniteRing) -> usize {
        let n = r.order();
        let total = n.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let map: Vec<Elem> = (0..n)
                    .map(|_| {
                        let d = c % n;
                        c /= n;
                        d
                    })
                    .collect();
                Endomorphism::new(r, map).is_ok()
            })
            .count()
    }

    #[test]
    fn zmod4_only_identity() {
        let r = ring("zmod 4");
        let e = enumerate_endomorphisms(&r, 16).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].is_identity());
    }

    #[test]
    fn gf4_identity_and_frobenius() {
        let r = ring("gf 4");
        let e = enumerate_endomorphisms(&r, 16).unwrap();
        assert_eq!(e.len(), 2);
        assert!(e[0].is_identity());
        assert_eq!(e[1], frobenius(&r).unwrap());
        let a = r.elem_by_name("a").unwrap();
        assert_eq!(e[1].apply(a), r.mul(a, a));
    }

    #[test]
    fn boolean_square_has_four() {
        let r = ring("product zmod2 zmod2");
        assert_eq!(enumerate_endomorphisms(&r, 16).unwrap().len(), 4);
    }

    #[test]
    fn matches_brute_force_on_small_rings() {
        for s in ["zmod 2", "zmod 4", "zmod 6", "gf 4", "product zmod2 zmod2", "smatrix 2 zmod2", "zmod 5"] {
            let r = ring(s);
            assert_eq!(
                enumerate_endomorphisms(&r, 16).unwrap().len(),
                brute_force_endos(&r),
                "{s}"
            );
        }
    }

    #[test]
    fn capacity() {
        let r = ring("smatrix 3 zmod2");
        assert!(enumerate_endomorphisms(&r, 8).is_err());
        assert!(enumerate_endomorphisms(&r, 16).is_ok());
    }

    #[test]
    fn compatibility_examples() {
        let f = ring("gf 4");
        assert!(compatibility_failure(&f, &frobenius(&f).unwrap()).is_none());
        let v = ring("product zmod2 zmod2");
        let swap = enumerate_endomorphisms(&v, 16)
            .unwrap()
            .into_iter()
            .find(|e| e.is_bijective() && !e.is_identity())
            .unwrap();
        let (a, b) = compatibility_failure(&v, &swap).unwrap();
        // ab != 0 but a swap(b) = 0
        assert_ne!(v.mul(a, b), v.zero());
        assert_eq!(v.mul(a, swap.apply(b)), v.zero());
    }

    #[test]
    fn rejects_non_homomorphism() {
        let r = ring("zmod 4");
        assert!(Endomorphism::new(&r, vec![0, 1, 0, 1]).is_err());
    }
}
