//! Ring-theoretic predicates: idempotents, abelian, regular, semi-regular,
//! quasi-duo, nil and prime radicals, and the aggregated property profile.

use serde::Serialize;

use crate::error::RingError;
use crate::ideal::{
    self, all_ideals, is_two_sided, jacobson_radical, nilpotency_index, one_sided_maximal_ideals,
    quotient_ring, two_sided_failure, Ideal, Nilpotency, Side, Sidedness,
};
use crate::ring::{Elem, ElemSet, FiniteRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Idempotent {
    pub elem: Elem,
    pub central: bool,
}

pub fn is_central(ring: &FiniteRing, a: Elem) -> bool {
    ring.elements().all(|r| ring.mul(a, r) == ring.mul(r, a))
}

pub fn idempotents(ring: &FiniteRing) -> Vec<Idempotent> {
    ring.elements()
        .filter(|&e| ring.mul(e, e) == e)
        .map(|e| Idempotent {
            elem: e,
            central: is_central(ring, e),
        })
        .collect()
}

/// First non-central idempotent `e` with a witness `r`, `er != re`.
pub fn abelian_failure(ring: &FiniteRing) -> Option<(Elem, Elem)> {
    idempotents(ring).into_iter().find(|i| !i.central).map(|i| {
        let r = ring
            .elements()
            .find(|&r| ring.mul(i.elem, r) != ring.mul(r, i.elem))
            .expect("non-central");
        (i.elem, r)
    })
}

pub fn is_abelian(ring: &FiniteRing) -> bool {
    abelian_failure(ring).is_none()
}

/// First `a` with no `x` such that `axa = a`.
pub fn regularity_failure(ring: &FiniteRing) -> Option<Elem> {
    ring.elements()
        .find(|&a| !ring.elements().any(|x| ring.mul(ring.mul(a, x), a) == a))
}

pub fn is_regular(ring: &FiniteRing) -> bool {
    regularity_failure(ring).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum SemiregularFailure {
    /// The named coset of R/J(R) is not von Neumann regular.
    QuotientNotRegular { coset: String },
    /// The named idempotent coset has no idempotent preimage.
    IdempotentDoesNotLift { coset: String },
}

/// Semi-regularity from scratch: R/J(R) regular and idempotents lift.
pub fn semiregular_failure(ring: &FiniteRing, j: &Ideal) -> Result<Option<SemiregularFailure>, RingError> {
    let q = quotient_ring(ring, j)?;
    if let Some(a) = regularity_failure(&q.ring) {
        return Ok(Some(SemiregularFailure::QuotientNotRegular {
            coset: q.ring.elem_name(a).to_string(),
        }));
    }
    let lifted: ElemSet = ElemSet::from_iter_with(
        q.ring.order(),
        idempotents(ring).iter().map(|i| q.projection[i.elem]),
    );
    for e in idempotents(&q.ring) {
        if !lifted.contains(e.elem) {
            return Ok(Some(SemiregularFailure::IdempotentDoesNotLift {
                coset: q.ring.elem_name(e.elem).to_string(),
            }));
        }
    }
    Ok(None)
}

pub fn is_semiregular(ring: &FiniteRing, cap: usize) -> Result<bool, RingError> {
    let j = jacobson_radical(ring, cap)?;
    Ok(semiregular_failure(ring, &j)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiDuoFailure {
    pub side: Side,
    pub ideal: Vec<Elem>,
    /// A product `(x, y)` with `xy` outside the ideal.
    pub pair: (Elem, Elem),
}

pub fn quasi_duo_failure(
    ring: &FiniteRing,
    max_left: &[Ideal],
    max_right: &[Ideal],
) -> Option<QuasiDuoFailure> {
    for (side, list) in [(Side::Left, max_left), (Side::Right, max_right)] {
        for m in list {
            if let Some(pair) = two_sided_failure(ring, &m.elements) {
                return Some(QuasiDuoFailure {
                    side,
                    ideal: m.members(),
                    pair,
                });
            }
        }
    }
    None
}

pub fn is_quasi_duo(ring: &FiniteRing, cap: usize) -> Result<bool, RingError> {
    let l = one_sided_maximal_ideals(ring, Side::Left, cap)?;
    let r = one_sided_maximal_ideals(ring, Side::Right, cap)?;
    Ok(quasi_duo_failure(ring, &l, &r).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilStructure {
    /// Nilpotent elements.
    pub nil: ElemSet,
    /// Intersection of all prime two-sided ideals.
    pub prime_radical: ElemSet,
    pub two_primal: bool,
}

pub fn is_nilpotent_elem(ring: &FiniteRing, a: Elem) -> bool {
    let mut x = a;
    for _ in 0..ring.order() {
        if ring.is_zero(x) {
            return true;
        }
        x = ring.mul(x, a);
    }
    ring.is_zero(x)
}

pub fn nil_structure(ring: &FiniteRing, cap: usize) -> Result<NilStructure, RingError> {
    let nil = ElemSet::from_iter_with(
        ring.order(),
        ring.elements().filter(|&a| is_nilpotent_elem(ring, a)),
    );
    let mut primes = Vec::new();
    for i in all_ideals(ring, Sidedness::TwoSided, cap)? {
        if i.len() < ring.order() && ideal::prime_failure(ring, &i.elements)?.is_none() {
            primes.push(i);
        }
    }
    let prime_radical = ideal::intersection(ring.order(), &primes);
    Ok(NilStructure {
        two_primal: nil == prime_radical,
        nil,
        prime_radical,
    })
}

/// Everything about one ring that the checkers consult, computed once.
#[derive(Clone, Debug)]
pub struct RingAnalysis {
    pub ring: FiniteRing,
    pub idempotents: Vec<Idempotent>,
    pub abelian_failure: Option<(Elem, Elem)>,
    pub regular_failure: Option<Elem>,
    pub jacobson: Ideal,
    pub jacobson_index: Nilpotency,
    pub semiregular_failure: Option<SemiregularFailure>,
    pub max_left: Vec<Ideal>,
    pub max_right: Vec<Ideal>,
    pub quasi_duo_failure: Option<QuasiDuoFailure>,
    pub nil: NilStructure,
    pub commutative: bool,
}

impl RingAnalysis {
    pub fn new(ring: FiniteRing, cap: usize) -> Result<Self, RingError> {
        let jacobson = jacobson_radical(&ring, cap)?;
        let jacobson_index = nilpotency_index(&ring, &jacobson);
        let semiregular_failure = semiregular_failure(&ring, &jacobson)?;
        let max_left = one_sided_maximal_ideals(&ring, Side::Left, cap)?;
        let max_right = one_sided_maximal_ideals(&ring, Side::Right, cap)?;
        let quasi_duo_failure = quasi_duo_failure(&ring, &max_left, &max_right);
        let nil = nil_structure(&ring, cap)?;
        Ok(RingAnalysis {
            idempotents: idempotents(&ring),
            abelian_failure: abelian_failure(&ring),
            regular_failure: regularity_failure(&ring),
            commutative: ring.is_commutative(),
            jacobson,
            jacobson_index,
            semiregular_failure,
            max_left,
            max_right,
            quasi_duo_failure,
            nil,
            ring,
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_failure.is_none()
    }

    pub fn is_semiregular(&self) -> bool {
        self.semiregular_failure.is_none()
    }

    pub fn jacobson_nilpotent(&self) -> bool {
        self.jacobson_index.is_nilpotent()
    }

    pub fn is_quasi_duo(&self) -> bool {
        self.quasi_duo_failure.is_none()
    }

    /// Abelian, semi-regular, and J(R) nilpotent.
    pub fn ring_hypotheses_hold(&self) -> bool {
        self.is_abelian() && self.is_semiregular() && self.jacobson_nilpotent()
    }

    pub fn maximal(&self, side: Side) -> &[Ideal] {
        match side {
            Side::Left => &self.max_left,
            Side::Right => &self.max_right,
        }
    }

    pub fn profile(&self) -> PropertyProfile {
        let r = &self.ring;
        let name = |a: Elem| r.elem_name(a).to_string();
        let names = |s: &ElemSet| s.iter().map(name).collect::<Vec<_>>();
        PropertyProfile {
            ring: r.name().to_string(),
            order: r.order(),
            commutative: self.commutative,
            abelian: Flag::from_witness(self.abelian_failure.map(|(e, x)| vec![name(e), name(x)])),
            regular: Flag::from_witness(self.regular_failure.map(|a| vec![name(a)])),
            semiregular: Flag::from_witness(self.semiregular_failure.as_ref().map(|f| match f {
                SemiregularFailure::QuotientNotRegular { coset } => {
                    vec!["quotient_not_regular".into(), coset.clone()]
                }
                SemiregularFailure::IdempotentDoesNotLift { coset } => {
                    vec!["idempotent_does_not_lift".into(), coset.clone()]
                }
            })),
            quasi_duo: Flag::from_witness(self.quasi_duo_failure.as_ref().map(|f| {
                let side = match f.side {
                    Side::Left => "left",
                    Side::Right => "right",
                };
                let ideal: Vec<String> = f.ideal.iter().map(|&a| name(a)).collect();
                vec![
                    side.into(),
                    format!("{{{}}}", ideal.join(", ")),
                    name(f.pair.0),
                    name(f.pair.1),
                ]
            })),
            two_primal: Flag {
                holds: self.nil.two_primal,
                witness: (!self.nil.two_primal).then(|| {
                    self.nil
                        .nil
                        .iter()
                        .filter(|&a| !self.nil.prime_radical.contains(a))
                        .map(name)
                        .collect()
                }),
            },
            radical: names(&self.jacobson.elements),
            radical_nilpotency_index: match self.jacobson_index {
                Nilpotency::Index(k) => Some(k),
                Nilpotency::NotNilpotent => None,
            },
            idempotents: self
                .idempotents
                .iter()
                .map(|i| IdempotentEntry {
                    elem: name(i.elem),
                    central: i.central,
                })
                .collect(),
            maximal_left_ideals: self.max_left.iter().map(|i| names(&i.elements)).collect(),
            maximal_right_ideals: self.max_right.iter().map(|i| names(&i.elements)).collect(),
            nil: names(&self.nil.nil),
            prime_radical: names(&self.nil.prime_radical),
        }
    }
}

/// A decided predicate. A false flag always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

impl Flag {
    pub fn from_witness(w: Option<Vec<String>>) -> Flag {
        Flag {
            holds: w.is_none(),
            witness: w,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentEntry {
    pub elem: String,
    pub central: bool,
}

/// Serializable summary of one ring's properties, with element names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyProfile {
    pub ring: String,
    pub order: usize,
    pub commutative: bool,
    pub abelian: Flag,
    pub regular: Flag,
    pub semiregular: Flag,
    pub quasi_duo: Flag,
    pub two_primal: Flag,
    pub radical: Vec<String>,
    pub radical_nilpotency_index: Option<usize>,
    pub idempotents: Vec<IdempotentEntry>,
    pub maximal_left_ideals: Vec<Vec<String>>,
    pub maximal_right_ideals: Vec<Vec<String>>,
    pub nil: Vec<String>,
    pub prime_radical: Vec<String>,
}

/// Checks that a set is a maximal two-sided ideal (helper for tests/reports).
pub fn is_two_sided_ideal(ring: &FiniteRing, set: &ElemSet) -> bool {
    ideal::is_one_sided_ideal(ring, set, Side::Left) && is_two_sided(ring, set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_ring, RingSpec};

    fn ring(s: &str) -> FiniteRing {
        build_ring(&s.parse::<RingSpec>().unwrap()).unwrap()
    }

    fn analysis(s: &str) -> RingAnalysis {
        RingAnalysis::new(ring(s), 64).unwrap()
    }

    #[test]
    fn idempotents_zmod4_and_boolean_square() {
        let z4 = idempotents(&ring("zmod 4"));
        assert_eq!(z4.iter().map(|i| i.elem).collect::<Vec<_>>(), vec![0, 1]);
        assert!(z4.iter().all(|i| i.central));
        let v = idempotents(&ring("product zmod2 zmod2"));
        assert_eq!(v.len(), 4);
        assert!(v.iter().all(|i| i.central));
    }

    #[test]
    fn uppertri_is_not_abelian_with_e11_e12() {
        let r = ring("uppertri 2 zmod2");
        let e11 = r.elem_by_name("(1,0,0)").unwrap();
        let e12 = r.elem_by_name("(0,1,0)").unwrap();
        assert!(idempotents(&r).contains(&Idempotent {
            elem: e11,
            central: false
        }));
        assert_eq!(abelian_failure(&r), Some((e11, e12)));
    }

    #[test]
    fn abelian_rings() {
        assert!(is_abelian(&ring("zmod 8")));
        assert!(is_abelian(&ring("smatrix 3 zmod2")));
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&ring("gf 4")));
        assert_eq!(regularity_failure(&ring("zmod 4")), Some(2));
        assert!(is_regular(&ring("zmod 6")));
    }

    #[test]
    fn semiregular_small_rings() {
        for s in ["zmod 4", "gf 4", "zmod 12", "uppertri 2 zmod2", "smatrix 2 zmod4"] {
            assert!(is_semiregular(&ring(s), 64).unwrap(), "{s}");
        }
    }

    #[test]
    fn quasi_duo() {
        assert!(is_quasi_duo(&ring("zmod 12"), 64).unwrap());
        assert!(is_quasi_duo(&ring("smatrix 2 zmod2"), 64).unwrap());
        // T_2(F_2): its maximal one-sided ideals are all two-sided
        let a = analysis("uppertri 2 zmod2");
        assert!(a.is_quasi_duo());
    }

    #[test]
    fn nil_structures() {
        let z4 = nil_structure(&ring("zmod 4"), 64).unwrap();
        assert_eq!(z4.nil.to_vec(), vec![0, 2]);
        assert_eq!(z4.prime_radical.to_vec(), vec![0, 2]);
        assert!(z4.two_primal);

        let f = nil_structure(&ring("gf 4"), 64).unwrap();
        assert_eq!((f.nil.to_vec(), f.prime_radical.to_vec(), f.two_primal), (vec![0], vec![0], true));

        let t = nil_structure(&ring("uppertri 2 zmod2"), 64).unwrap();
        assert_eq!(t.nil.to_vec(), vec![0, 2]);
        assert!(t.two_primal);
    }

    #[test]
    fn profile_witnesses_are_present_on_false() {
        let p = analysis("uppertri 2 zmod2").profile();
        assert!(!p.abelian.holds);
        assert_eq!(p.abelian.witness, Some(vec!["(1,0,0)".into(), "(0,1,0)".into()]));
        for f in [&p.abelian, &p.regular, &p.semiregular, &p.quasi_duo, &p.two_primal] {
            assert_eq!(f.holds, f.witness.is_none());
        }
    }
}
