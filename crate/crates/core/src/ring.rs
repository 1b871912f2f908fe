//! Finite unital rings given by Cayley tables.
//!
//! Elements are identified by ids `0..order`. Every constructor in
//! [`crate::build`] assigns ids deterministically from the natural
//! coordinates of the construction, so witnesses printed in reports are
//! stable across runs.

use std::fmt;

use serde::Serialize;

use crate::error::RingError;

/// Element id inside a [`FiniteRing`].
pub type Elem = usize;

/// A finite unital ring with explicit addition and multiplication tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    name: String,
    provenance: String,
    names: Vec<String>,
}

/// Raw tables for a ring candidate, before validation.
#[derive(Clone, Debug)]
pub struct RingTables {
    pub order: usize,
    pub add: Vec<Elem>,
    pub mul: Vec<Elem>,
    pub zero: Elem,
    pub one: Elem,
}

impl RingTables {
    /// Builds tables by evaluating `add` and `mul` on every pair of ids.
    pub fn from_fns(
        order: usize,
        zero: Elem,
        one: Elem,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Self {
        let mut at = Vec::with_capacity(order * order);
        let mut mt = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                at.push(add(a, b));
                mt.push(mul(a, b));
            }
        }
        RingTables {
            order,
            add: at,
            mul: mt,
            zero,
            one,
        }
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }
}

/// The individual laws checked by [`validate_ring_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    TablesTotal,
    AdditiveAssociativity,
    AdditiveCommutativity,
    AdditiveIdentity,
    AdditiveInverses,
    MultiplicativeAssociativity,
    MultiplicativeIdentity,
    LeftDistributivity,
    RightDistributivity,
    OneNotZero,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::TablesTotal => "tables total",
            Axiom::AdditiveAssociativity => "associativity of +",
            Axiom::AdditiveCommutativity => "commutativity of +",
            Axiom::AdditiveIdentity => "additive identity",
            Axiom::AdditiveInverses => "additive inverses",
            Axiom::MultiplicativeAssociativity => "associativity of *",
            Axiom::MultiplicativeIdentity => "multiplicative identity",
            Axiom::LeftDistributivity => "left distributivity",
            Axiom::RightDistributivity => "right distributivity",
            Axiom::OneNotZero => "one != zero",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// First violating tuple of element ids, in lexicographic order.
    pub witness: Option<Vec<Elem>>,
}

/// Outcome of [`validate_ring_axioms`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    /// Informational only; not a ring axiom.
    pub commutative_mul: bool,
    pub commutativity_witness: Option<(Elem, Elem)>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn first_pair(n: usize, mut bad: impl FnMut(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for a in 0..n {
        for b in 0..n {
            if bad(a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn first_triple(n: usize, mut bad: impl FnMut(Elem, Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// Exhaustively checks every ring law on the given tables (O(n³)).
pub fn validate_ring_axioms(t: &RingTables) -> AxiomReport {
    let n = t.order;
    let mut checks = Vec::new();
    let mut push = |axiom, witness: Option<Vec<Elem>>| {
        checks.push(AxiomCheck {
            axiom,
            passed: witness.is_none(),
            witness,
        })
    };

    let total = n > 0
        && t.add.len() == n * n
        && t.mul.len() == n * n
        && t.zero < n
        && t.one < n
        && t.add.iter().chain(t.mul.iter()).all(|&x| x < n);
    if !total {
        push(Axiom::TablesTotal, Some(Vec::new()));
        return AxiomReport {
            checks,
            commutative_mul: false,
            commutativity_witness: None,
        };
    }
    push(Axiom::TablesTotal, None);

    push(
        Axiom::AdditiveAssociativity,
        first_triple(n, |a, b, c| t.add(t.add(a, b), c) != t.add(a, t.add(b, c))),
    );
    push(
        Axiom::AdditiveCommutativity,
        first_pair(n, |a, b| t.add(a, b) != t.add(b, a)),
    );
    push(
        Axiom::AdditiveIdentity,
        (0..n)
            .find(|&a| t.add(a, t.zero) != a || t.add(t.zero, a) != a)
            .map(|a| vec![a]),
    );
    push(
        Axiom::AdditiveInverses,
        (0..n)
            .find(|&a| !(0..n).any(|b| t.add(a, b) == t.zero))
            .map(|a| vec![a]),
    );
    push(
        Axiom::MultiplicativeAssociativity,
        first_triple(n, |a, b, c| t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c))),
    );
    push(
        Axiom::MultiplicativeIdentity,
        (0..n)
            .find(|&a| t.mul(a, t.one) != a || t.mul(t.one, a) != a)
            .map(|a| vec![a]),
    );
    push(
        Axiom::LeftDistributivity,
        first_triple(n, |a, b, c| {
            t.mul(a, t.add(b, c)) != t.add(t.mul(a, b), t.mul(a, c))
        }),
    );
    push(
        Axiom::RightDistributivity,
        first_triple(n, |a, b, c| {
            t.mul(t.add(a, b), c) != t.add(t.mul(a, c), t.mul(b, c))
        }),
    );
    push(
        Axiom::OneNotZero,
        (t.one == t.zero).then(|| vec![t.one]),
    );

    let comm = first_pair(n, |a, b| t.mul(a, b) != t.mul(b, a));
    AxiomReport {
        checks,
        commutative_mul: comm.is_none(),
        commutativity_witness: comm.map(|w| (w[0], w[1])),
    }
}

impl FiniteRing {
    /// Validates `tables` and wraps them as a ring.
    pub fn from_tables(
        name: impl Into<String>,
        provenance: impl Into<String>,
        names: Vec<String>,
        tables: RingTables,
    ) -> Result<Self, RingError> {
        let report = validate_ring_axioms(&tables);
        if let Some(fail) = report.first_failure() {
            return Err(RingError::AxiomViolation {
                axiom: fail.axiom,
                witness: fail.witness.clone().unwrap_or_default(),
            });
        }
        let n = tables.order;
        if names.len() != n {
            return Err(RingError::InvalidSpec(format!(
                "expected {n} element names, got {}",
                names.len()
            )));
        }
        let neg = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| tables.add(a, b) == tables.zero)
                    .expect("inverses validated")
            })
            .collect();
        Ok(FiniteRing {
            order: n,
            add: tables.add,
            mul: tables.mul,
            neg,
            zero: tables.zero,
            one: tables.one,
            name: name.into(),
            provenance: provenance.into(),
            names,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Canonical display name of an element.
    pub fn elem_name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn elem_names(&self) -> &[String] {
        &self.names
    }

    /// Looks an element up by its canonical name.
    pub fn elem_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&a| a != self.zero)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b])
    }

    #[inline]
    pub fn is_zero(&self, a: Elem) -> bool {
        a == self.zero
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn tables(&self) -> RingTables {
        RingTables {
            order: self.order,
            add: self.add.clone(),
            mul: self.mul.clone(),
            zero: self.zero,
            one: self.one,
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Additive order of `1`.
    pub fn characteristic(&self) -> usize {
        let mut acc = self.one;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            k += 1;
        }
        k
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.elements()
            .any(|x| self.mul(a, x) == self.one && self.mul(x, a) == self.one)
    }

    pub fn has_left_inverse(&self, a: Elem) -> bool {
        self.elements().any(|x| self.mul(x, a) == self.one)
    }

    /// Renames the ring (used by constructors composing other rings).
    pub(crate) fn with_label(mut self, name: String, provenance: String) -> Self {
        self.name = name;
        self.provenance = provenance;
        self
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

/// A set of element ids of one ring, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    bits: Vec<u64>,
}

impl ElemSet {
    pub fn empty(order: usize) -> Self {
        ElemSet {
            bits: vec![0; order.div_ceil(64).max(1)],
        }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for a in 0..order {
            s.insert(a);
        }
        s
    }

    pub fn from_iter_with(order: usize, it: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(order);
        for a in it {
            s.insert(a);
        }
        s
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        self.bits
            .get(a / 64)
            .is_some_and(|w| w & (1u64 << (a % 64)) != 0)
    }

    /// Returns true if `a` was newly inserted.
    #[inline]
    pub fn insert(&mut self, a: Elem) -> bool {
        let w = &mut self.bits[a / 64];
        let m = 1u64 << (a % 64);
        let fresh = *w & m == 0;
        *w |= m;
        fresh
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w & (1u64 << b) != 0).map(move |b| i * 64 + b)
        })
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
        }
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
