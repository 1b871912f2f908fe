//! One- and two-sided ideals: closures, enumeration, radicals, quotients.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::RingError;
use crate::ring::{Elem, ElemSet, FiniteRing, RingTables};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn mirror(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    Left,
    Right,
    TwoSided,
}

impl From<Side> for Sidedness {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => Sidedness::Left,
            Side::Right => Sidedness::Right,
        }
    }
}

/// An ideal of a specific ring; the ring itself is not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ideal {
    pub elements: ElemSet,
    pub sidedness: Sidedness,
}

impl Ideal {
    pub fn zero(ring: &FiniteRing) -> Ideal {
        Ideal {
            elements: ElemSet::from_iter_with(ring.order(), [ring.zero()]),
            sidedness: Sidedness::TwoSided,
        }
    }

    pub fn whole(ring: &FiniteRing) -> Ideal {
        Ideal {
            elements: ElemSet::full(ring.order()),
            sidedness: Sidedness::TwoSided,
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.elements.contains(a)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn members(&self) -> Vec<Elem> {
        self.elements.to_vec()
    }

    pub fn names(&self, ring: &FiniteRing) -> Vec<String> {
        self.elements.iter().map(|a| ring.elem_name(a).to_string()).collect()
    }
}

/// Left annihilation failure: returns `(r, x)` with `r x` outside the set.
fn absorption_failure(ring: &FiniteRing, set: &ElemSet, side: Side) -> Option<(Elem, Elem)> {
    for x in set.iter() {
        for r in ring.elements() {
            let p = match side {
                Side::Left => ring.mul(r, x),
                Side::Right => ring.mul(x, r),
            };
            if !set.contains(p) {
                return Some(match side {
                    Side::Left => (r, x),
                    Side::Right => (x, r),
                });
            }
        }
    }
    None
}

/// Checks whether a set is an additive subgroup absorbing on `side`.
pub fn is_one_sided_ideal(ring: &FiniteRing, set: &ElemSet, side: Side) -> bool {
    set.contains(ring.zero())
        && set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(ring.add(a, b))))
        && absorption_failure(ring, set, side).is_none()
}

/// Returns the first product pair that escapes the ideal on either side.
pub fn two_sided_failure(ring: &FiniteRing, set: &ElemSet) -> Option<(Elem, Elem)> {
    absorption_failure(ring, set, Side::Left).or_else(|| absorption_failure(ring, set, Side::Right))
}

pub fn is_two_sided(ring: &FiniteRing, set: &ElemSet) -> bool {
    two_sided_failure(ring, set).is_none()
}

/// Smallest ideal of the given sidedness containing `seed`.
///
/// Closes under addition and the required one-sided multiplications with
/// a worklist; every element enters the queue once.
pub fn closure(ring: &FiniteRing, seed: impl IntoIterator<Item = Elem>, sided: Sidedness) -> ElemSet {
    let mut set = ElemSet::from_iter_with(ring.order(), [ring.zero()]);
    let mut members = vec![ring.zero()];
    let mut queue: VecDeque<Elem> = VecDeque::new();
    for a in seed {
        if set.insert(a) {
            members.push(a);
            queue.push_back(a);
        }
    }
    while let Some(x) = queue.pop_front() {
        let mut fresh = Vec::new();
        for r in ring.elements() {
            if matches!(sided, Sidedness::Left | Sidedness::TwoSided) {
                fresh.push(ring.mul(r, x));
            }
            if matches!(sided, Sidedness::Right | Sidedness::TwoSided) {
                fresh.push(ring.mul(x, r));
            }
        }
        for i in 0..members.len() {
            fresh.push(ring.add(members[i], x));
        }
        for y in fresh {
            if set.insert(y) {
                members.push(y);
                queue.push_back(y);
            }
        }
    }
    set
}

/// Additive subgroup generated by `seed` (no absorption).
pub fn additive_closure(ring: &FiniteRing, seed: impl IntoIterator<Item = Elem>) -> ElemSet {
    let mut set = ElemSet::from_iter_with(ring.order(), [ring.zero()]);
    let mut members = vec![ring.zero()];
    let mut queue: VecDeque<Elem> = seed.into_iter().collect();
    while let Some(x) = queue.pop_front() {
        if !set.insert(x) {
            continue;
        }
        members.push(x);
        for i in 0..members.len() {
            let s = ring.add(members[i], x);
            if !set.contains(s) {
                queue.push_back(s);
            }
        }
    }
    set
}

fn check_cap(ring: &FiniteRing, cap: usize, what: &'static str) -> Result<(), RingError> {
    if ring.order() > cap {
        Err(RingError::Capacity {
            what,
            cap,
            order: ring.order(),
        })
    } else {
        Ok(())
    }
}

fn sort_ideals(mut v: Vec<ElemSet>, sided: Sidedness) -> Vec<Ideal> {
    v.sort_by_key(|s| s.to_vec());
    v.into_iter()
        .map(|elements| Ideal {
            elements,
            sidedness: sided,
        })
        .collect()
}

/// Every ideal of the given sidedness, found by breadth-first closure of
/// `I ∪ {a}` starting from the zero ideal. Sorted by member list.
pub fn all_ideals(ring: &FiniteRing, sided: Sidedness, cap: usize) -> Result<Vec<Ideal>, RingError> {
    check_cap(ring, cap, "ideal enumeration")?;
    let start = closure(ring, [], sided);
    let mut seen: HashSet<ElemSet> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(ideal) = queue.pop_front() {
        for a in ring.elements() {
            if ideal.contains(a) {
                continue;
            }
            let next = closure(ring, ideal.iter().chain([a]), sided);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(sort_ideals(seen.into_iter().collect(), sided))
}

fn maximal_among(ring: &FiniteRing, ideals: Vec<Ideal>) -> Vec<Ideal> {
    let proper: Vec<Ideal> = ideals
        .into_iter()
        .filter(|i| i.len() < ring.order())
        .collect();
    proper
        .iter()
        .filter(|i| {
            !proper
                .iter()
                .any(|j| j.len() > i.len() && i.elements.is_subset(&j.elements))
        })
        .cloned()
        .collect()
}

/// Maximal proper left or right ideals, in deterministic order.
pub fn one_sided_maximal_ideals(ring: &FiniteRing, side: Side, cap: usize) -> Result<Vec<Ideal>, RingError> {
    Ok(maximal_among(ring, all_ideals(ring, side.into(), cap)?))
}

pub fn maximal_two_sided_ideals(ring: &FiniteRing, cap: usize) -> Result<Vec<Ideal>, RingError> {
    Ok(maximal_among(ring, all_ideals(ring, Sidedness::TwoSided, cap)?))
}

/// J(R) as the set of `a` such that `1 - ra` has a left inverse for every `r`.
pub fn jacobson_by_quasi_regularity(ring: &FiniteRing) -> ElemSet {
    let left_invertible: Vec<bool> = ring.elements().map(|x| ring.has_left_inverse(x)).collect();
    ElemSet::from_iter_with(
        ring.order(),
        ring.elements().filter(|&a| {
            ring.elements()
                .all(|r| left_invertible[ring.sub(ring.one(), ring.mul(r, a))])
        }),
    )
}

pub fn intersection(order: usize, sets: &[Ideal]) -> ElemSet {
    sets.iter()
        .fold(ElemSet::full(order), |acc, i| acc.intersect(&i.elements))
}

/// The Jacobson radical, cross-checked against the intersection of the
/// maximal left ideals and of the maximal right ideals.
pub fn jacobson_radical(ring: &FiniteRing, cap: usize) -> Result<Ideal, RingError> {
    let quasi = jacobson_by_quasi_regularity(ring);
    for side in [Side::Left, Side::Right] {
        let maxes = one_sided_maximal_ideals(ring, side, cap)?;
        let meet = intersection(ring.order(), &maxes);
        if meet != quasi {
            return Err(RingError::Inconsistent(format!(
                "J(R) by quasi-regularity {:?} differs from the intersection of maximal {side:?} ideals {:?}",
                quasi, meet
            )));
        }
    }
    if !is_two_sided(ring, &quasi) {
        return Err(RingError::Inconsistent("J(R) is not two-sided".into()));
    }
    Ok(Ideal {
        elements: quasi,
        sidedness: Sidedness::TwoSided,
    })
}

/// Additive span of all products `xy` with `x ∈ a`, `y ∈ b`.
pub fn product_set(ring: &FiniteRing, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let prods: Vec<Elem> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| ring.mul(x, y)))
        .collect();
    additive_closure(ring, prods)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Nilpotency {
    Index(usize),
    NotNilpotent,
}

impl Nilpotency {
    pub fn is_nilpotent(self) -> bool {
        matches!(self, Nilpotency::Index(_))
    }
}

/// Least `k` with `I^k = 0`.
pub fn nilpotency_index(ring: &FiniteRing, ideal: &Ideal) -> Nilpotency {
    let mut power = ideal.elements.clone();
    for k in 1..=ring.order() {
        if power.len() == 1 {
            return Nilpotency::Index(k);
        }
        let next = product_set(ring, &power, &ideal.elements);
        if next == power {
            return Nilpotency::NotNilpotent;
        }
        power = next;
    }
    Nilpotency::NotNilpotent
}

/// The ring R/I with its projection. Cosets are numbered by their least
/// representative and named `[rep]`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ring: FiniteRing,
    pub projection: Vec<Elem>,
}

pub fn quotient_ring(ring: &FiniteRing, ideal: &Ideal) -> Result<Quotient, RingError> {
    if let Some((a, b)) = two_sided_failure(ring, &ideal.elements) {
        return Err(RingError::NotTwoSided(a, b));
    }
    let n = ring.order();
    let mut projection = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in ring.elements() {
        if projection[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for i in ideal.elements.iter() {
            projection[ring.add(a, i)] = id;
        }
    }
    let m = reps.len();
    let t = RingTables::from_fns(
        m,
        projection[ring.zero()],
        projection[ring.one()],
        |x, y| projection[ring.add(reps[x], reps[y])],
        |x, y| projection[ring.mul(reps[x], reps[y])],
    );
    let names = reps.iter().map(|&r| format!("[{}]", ring.elem_name(r))).collect();
    let q = FiniteRing::from_tables(
        format!("{} / I", ring.name()),
        format!("quotient of {} by an ideal of order {}", ring.name(), ideal.len()),
        names,
        t,
    )
    .map_err(|e| RingError::Inconsistent(format!("quotient tables invalid: {e}")))?;
    // projection must be a unital homomorphism
    for a in ring.elements() {
        for b in ring.elements() {
            if projection[ring.add(a, b)] != q.add(projection[a], projection[b])
                || projection[ring.mul(a, b)] != q.mul(projection[a], projection[b])
            {
                return Err(RingError::Inconsistent("projection is not a homomorphism".into()));
            }
        }
    }
    Ok(Quotient { ring: q, projection })
}

/// Right (`Side::Right`) annihilator `{c : xc = 0 ∀x ∈ X}` or its left mirror.
pub fn annihilator(ring: &FiniteRing, xs: &[Elem], side: Side) -> ElemSet {
    ElemSet::from_iter_with(
        ring.order(),
        ring.elements().filter(|&c| {
            xs.iter().all(|&x| {
                let p = match side {
                    Side::Right => ring.mul(x, c),
                    Side::Left => ring.mul(c, x),
                };
                ring.is_zero(p)
            })
        }),
    )
}

/// Prime test for a proper two-sided ideal: `aRb ⊆ P` forces `a ∈ P` or `b ∈ P`.
/// Returns the first failing pair, if any.
pub fn prime_failure(ring: &FiniteRing, p: &ElemSet) -> Result<Option<(Elem, Elem)>, RingError> {
    if let Some((a, b)) = two_sided_failure(ring, p) {
        return Err(RingError::NotTwoSided(a, b));
    }
    if p.len() == ring.order() {
        return Err(RingError::InvalidIdeal("the whole ring is not a prime ideal".into()));
    }
    for a in ring.elements().filter(|&a| !p.contains(a)) {
        for b in ring.elements().filter(|&b| !p.contains(b)) {
            if ring.elements().all(|r| p.contains(ring.mul(ring.mul(a, r), b))) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

pub fn is_prime_ideal(ring: &FiniteRing, p: &Ideal) -> Result<bool, RingError> {
    Ok(prime_failure(ring, &p.elements)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_ring, RingSpec};

    fn ring(s: &str) -> FiniteRing {
        build_ring(&s.parse::<RingSpec>().unwrap()).unwrap()
    }

    fn members(ideals: &[Ideal]) -> Vec<Vec<Elem>> {
        ideals.iter().map(Ideal::members).collect()
    }

    #[test]
    fn zmod6_maximal_left_ideals() {
        let r = ring("zmod 6");
        let m = one_sided_maximal_ideals(&r, Side::Left, 64).unwrap();
        assert_eq!(members(&m), vec![vec![0, 2, 4], vec![0, 3]]);
    }

    #[test]
    fn gf4_only_zero_is_maximal() {
        let r = ring("gf 4");
        let m = one_sided_maximal_ideals(&r, Side::Left, 64).unwrap();
        assert_eq!(members(&m), vec![vec![0]]);
    }

    #[test]
    fn uppertri_maximal_right_ideals_have_order_four() {
        let r = ring("uppertri 2 zmod2");
        let m = one_sided_maximal_ideals(&r, Side::Right, 64).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.iter().all(|i| i.len() == 4));
    }

    #[test]
    fn capacity_error_above_cap() {
        let r = ring("zmod 8");
        assert!(matches!(
            all_ideals(&r, Sidedness::Left, 4),
            Err(RingError::Capacity { .. })
        ));
    }

    #[test]
    fn radicals() {
        assert_eq!(jacobson_radical(&ring("zmod 4"), 64).unwrap().members(), vec![0, 2]);
        assert_eq!(jacobson_radical(&ring("gf 4"), 64).unwrap().members(), vec![0]);
        // strictly upper part: E12 has id 2
        assert_eq!(
            jacobson_radical(&ring("uppertri 2 zmod2"), 64).unwrap().members(),
            vec![0, 2]
        );
    }

    #[test]
    fn nilpotency_indices() {
        let z4 = ring("zmod 4");
        let z8 = ring("zmod 8");
        assert_eq!(
            nilpotency_index(&z4, &jacobson_radical(&z4, 64).unwrap()),
            Nilpotency::Index(2)
        );
        assert_eq!(
            nilpotency_index(&z8, &jacobson_radical(&z8, 64).unwrap()),
            Nilpotency::Index(3)
        );
        assert_eq!(nilpotency_index(&z8, &Ideal::zero(&z8)), Nilpotency::Index(1));
        assert_eq!(nilpotency_index(&z8, &Ideal::whole(&z8)), Nilpotency::NotNilpotent);
    }

    #[test]
    fn quotients() {
        let z4 = ring("zmod 4");
        let q = quotient_ring(&z4, &jacobson_radical(&z4, 64).unwrap()).unwrap();
        assert_eq!(q.ring.order(), 2);
        assert_eq!(q.ring.tables().mul, ring("zmod 2").tables().mul);

        let q0 = quotient_ring(&z4, &Ideal::zero(&z4)).unwrap();
        assert_eq!(q0.projection, vec![0, 1, 2, 3]);

        let s2 = ring("smatrix 2 zmod2");
        let q = quotient_ring(&s2, &jacobson_radical(&s2, 64).unwrap()).unwrap();
        assert_eq!(q.ring.order(), 2);
    }

    #[test]
    fn quotient_rejects_one_sided() {
        let r = ring("uppertri 2 zmod2");
        let left = one_sided_maximal_ideals(&r, Side::Right, 64).unwrap();
        let non_two_sided = all_ideals(&r, Sidedness::Left, 64)
            .unwrap()
            .into_iter()
            .chain(left)
            .find(|i| !is_two_sided(&r, &i.elements))
            .expect("a one-sided ideal");
        assert!(matches!(
            quotient_ring(&r, &non_two_sided),
            Err(RingError::NotTwoSided(..))
        ));
    }

    #[test]
    fn annihilators() {
        let z4 = ring("zmod 4");
        assert_eq!(annihilator(&z4, &[0, 2], Side::Right).to_vec(), vec![0, 2]);
        assert_eq!(annihilator(&z4, &[1], Side::Right).to_vec(), vec![0]);
        assert_eq!(annihilator(&z4, &[], Side::Right).len(), 4);
    }

    #[test]
    fn prime_ideals() {
        let z4 = ring("zmod 4");
        let p = Ideal {
            elements: ElemSet::from_iter_with(4, [0, 2]),
            sidedness: Sidedness::TwoSided,
        };
        assert!(is_prime_ideal(&z4, &p).unwrap());

        let v = ring("product zmod2 zmod2");
        let w = prime_failure(&v, &Ideal::zero(&v).elements).unwrap();
        assert_eq!(
            w.map(|(a, b)| (v.elem_name(a).to_string(), v.elem_name(b).to_string())),
            Some(("(1,0)".into(), "(0,1)".into()))
        );

        let f = ring("gf 4");
        assert!(is_prime_ideal(&f, &Ideal::zero(&f)).unwrap());
        assert!(matches!(
            is_prime_ideal(&f, &Ideal::whole(&f)),
            Err(RingError::InvalidIdeal(_))
        ));
    }
}
