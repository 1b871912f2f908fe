//! Finitely supported elements of `R[[S, ω, ≤]]` and the twisted
//! convolution `fg(s) = Σ_{(u,v) ∈ X_s(f,g)} f(u) ω_u(g(v))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::endo::{compatibility_failure, Endomorphism};
use crate::error::SeriesError;
use crate::omonoid::{MonoidElem, OrderedMonoid};
use crate::ring::{Elem, FiniteRing};

/// Powers of one endomorphism: `σ^k = powers[k]` for `k < tail + period`,
/// then periodic.
#[derive(Clone, Debug)]
struct PowerCycle {
    powers: Vec<Endomorphism>,
    tail: usize,
    period: usize,
}

impl PowerCycle {
    fn new(ring: &FiniteRing, sigma: &Endomorphism) -> Self {
        let mut powers = vec![Endomorphism::identity(ring)];
        loop {
            let next = sigma.compose(powers.last().unwrap());
            if let Some(i) = powers.iter().position(|p| *p == next) {
                let period = powers.len() - i;
                return PowerCycle {
                    powers,
                    tail: i,
                    period,
                };
            }
            powers.push(next);
        }
    }

    fn get(&self, k: u64) -> &Endomorphism {
        let k = k as usize;
        if k < self.powers.len() {
            &self.powers[k]
        } else {
            &self.powers[self.tail + (k - self.tail) % self.period]
        }
    }

    /// `σ^k` for any integer `k`; negative powers need `σ` bijective, in
    /// which case the cycle is purely periodic.
    fn get_signed(&self, k: i64) -> &Endomorphism {
        if k >= 0 {
            self.get(k as u64)
        } else {
            debug_assert_eq!(self.tail, 0);
            let p = self.period as i64;
            self.get(k.rem_euclid(p) as u64)
        }
    }
}

/// A monoid homomorphism `ω: S → End(R)` given by one endomorphism per
/// coordinate generator of `S`.
#[derive(Clone, Debug)]
pub struct MonoidAction {
    ring: Arc<FiniteRing>,
    monoid: OrderedMonoid,
    generators: Vec<Endomorphism>,
    cycles: Vec<PowerCycle>,
    label: String,
}

impl MonoidAction {
    /// Validates the generator images: commuting for N^k, bijective for Z.
    pub fn new(
        ring: Arc<FiniteRing>,
        monoid: OrderedMonoid,
        generators: Vec<Endomorphism>,
        label: impl Into<String>,
    ) -> Result<Self, SeriesError> {
        if generators.len() != monoid.generator_count() {
            return Err(SeriesError::GeneratorCount {
                expected: monoid.generator_count(),
                got: generators.len(),
            });
        }
        for (i, g) in generators.iter().enumerate() {
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                if let Some(w) = ring.elements().find(|&a| g.apply(h.apply(a)) != h.apply(g.apply(a))) {
                    return Err(SeriesError::NonCommuting {
                        index: i,
                        other: j,
                        witness: w,
                    });
                }
            }
            if monoid.is_group() {
                if let Some(w) = g.collision() {
                    return Err(SeriesError::NotBijective { index: i, witness: w });
                }
            }
        }
        let cycles = generators.iter().map(|g| PowerCycle::new(&ring, g)).collect();
        Ok(MonoidAction {
            ring,
            monoid,
            generators,
            cycles,
            label: label.into(),
        })
    }

    /// The trivial action `s ↦ id`.
    pub fn trivial(ring: Arc<FiniteRing>, monoid: OrderedMonoid) -> Self {
        let id = Endomorphism::identity(&ring);
        let gens = vec![id; monoid.generator_count()];
        MonoidAction::new(ring, monoid, gens, "trivial").expect("identity is always valid")
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn monoid(&self) -> &OrderedMonoid {
        &self.monoid
    }

    pub fn generators(&self) -> &[Endomorphism] {
        &self.generators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Endomorphism::is_identity)
    }

    /// `ω_s(r)`.
    #[inline]
    pub fn apply(&self, s: &MonoidElem, r: Elem) -> Elem {
        s.0.iter()
            .zip(&self.cycles)
            .fold(r, |acc, (&e, c)| c.get_signed(e).apply(acc))
    }

    /// `ω_s` as a table.
    pub fn omega(&self, s: &MonoidElem) -> Endomorphism {
        s.0.iter()
            .zip(&self.cycles)
            .fold(Endomorphism::identity(&self.ring), |acc, (&e, c)| {
                c.get_signed(e).compose(&acc)
            })
    }

    /// Every distinct `ω_s`, `s ∈ S`: the submonoid of End(R) generated by
    /// the generator images (and their inverses for Z).
    pub fn distinct_images(&self) -> Vec<Endomorphism> {
        let mut gens = self.generators.clone();
        if self.monoid.is_group() {
            gens.extend(self.generators.iter().filter_map(Endomorphism::inverse));
        }
        let mut seen = vec![Endomorphism::identity(&self.ring)];
        let mut i = 0;
        while i < seen.len() {
            for g in &gens {
                let next = g.compose(&seen[i]);
                if !seen.contains(&next) {
                    seen.push(next);
                }
            }
            i += 1;
        }
        seen
    }

    /// Compatibility at generator level: for each generator σ and all
    /// `a, b`: `ab = 0 ⇔ aσ(b) = 0`. Returns `(a, b, generator index)`.
    pub fn compatibility_failure(&self) -> Option<(Elem, Elem, usize)> {
        self.generators
            .iter()
            .enumerate()
            .find_map(|(i, g)| compatibility_failure(&self.ring, g).map(|(a, b)| (a, b, i)))
    }

    pub fn is_compatible(&self) -> bool {
        self.compatibility_failure().is_none()
    }

    pub fn same_as(&self, other: &MonoidAction) -> bool {
        std::ptr::eq(self, other)
            || (self.ring == other.ring
                && self.monoid == other.monoid
                && self.generators == other.generators)
    }
}

/// A finitely supported series; no stored coefficient is zero.
#[derive(Clone)]
pub struct SkewSeries {
    action: Arc<MonoidAction>,
    terms: BTreeMap<MonoidElem, Elem>,
}

impl PartialEq for SkewSeries {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.action.same_as(&other.action)
    }
}

impl Eq for SkewSeries {}

impl fmt::Debug for SkewSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewSeries({self})")
    }
}

impl SkewSeries {
    pub fn zero(action: &Arc<MonoidAction>) -> Self {
        SkewSeries {
            action: action.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed, zero coefficients dropped.
    pub fn from_terms(
        action: &Arc<MonoidAction>,
        terms: impl IntoIterator<Item = (MonoidElem, Elem)>,
    ) -> Result<Self, SeriesError> {
        let ring = action.ring();
        let mut map: BTreeMap<MonoidElem, Elem> = BTreeMap::new();
        for (s, c) in terms {
            action.monoid().check(&s)?;
            if c >= ring.order() {
                return Err(SeriesError::Parse {
                    input: format!("{c}"),
                    msg: "coefficient id out of range".into(),
                });
            }
            let e = map.entry(s).or_insert(ring.zero());
            *e = ring.add(*e, c);
        }
        map.retain(|_, c| !ring.is_zero(*c));
        Ok(SkewSeries {
            action: action.clone(),
            terms: map,
        })
    }

    /// `c_r`: the constant series with value `r` at the identity.
    pub fn embed_const(action: &Arc<MonoidAction>, r: Elem) -> Self {
        let id = action.monoid().identity();
        SkewSeries::from_terms(action, [(id, r)]).expect("identity is in every monoid")
    }

    /// `e_s`: coefficient 1 at `s`.
    pub fn embed_monoid(action: &Arc<MonoidAction>, s: MonoidElem) -> Result<Self, SeriesError> {
        SkewSeries::from_terms(action, [(s, action.ring().one())])
    }

    pub fn one(action: &Arc<MonoidAction>) -> Self {
        Self::embed_const(action, action.ring().one())
    }

    pub fn action(&self) -> &Arc<MonoidAction> {
        &self.action
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<MonoidElem, Elem> {
        &self.terms
    }

    /// `f(s)`.
    pub fn coeff(&self, s: &MonoidElem) -> Elem {
        self.terms.get(s).copied().unwrap_or(self.action.ring().zero())
    }

    /// `Supp(f)` in increasing order.
    pub fn support(&self) -> Vec<MonoidElem> {
        self.terms.keys().cloned().collect()
    }

    fn same_action(&self, other: &SkewSeries) -> Result<(), SeriesError> {
        if self.action.same_as(&other.action) {
            Ok(())
        } else {
            Err(SeriesError::ActionMismatch)
        }
    }

    pub fn add(&self, other: &SkewSeries) -> Result<SkewSeries, SeriesError> {
        self.same_action(other)?;
        let ring = self.action.ring();
        let mut terms = self.terms.clone();
        for (s, &c) in &other.terms {
            let e = terms.entry(s.clone()).or_insert(ring.zero());
            *e = ring.add(*e, c);
        }
        terms.retain(|_, c| !ring.is_zero(*c));
        Ok(SkewSeries {
            action: self.action.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> SkewSeries {
        let ring = self.action.ring();
        SkewSeries {
            action: self.action.clone(),
            terms: self.terms.iter().map(|(s, &c)| (s.clone(), ring.neg(c))).collect(),
        }
    }

    /// `X_s(f, g)`: pairs `(u, v) ∈ Supp(f) × Supp(g)` with `uv = s`, found by
    /// solving `v = u⁻¹s` for each `u ∈ Supp(f)`.
    pub fn factorizations(&self, other: &SkewSeries, s: &MonoidElem) -> Vec<(MonoidElem, MonoidElem)> {
        let m = self.action.monoid();
        self.terms
            .keys()
            .filter_map(|u| {
                m.solve_right(u, s)
                    .filter(|v| other.terms.contains_key(v))
                    .map(|v| (u.clone(), v))
            })
            .collect()
    }

    pub fn mul(&self, other: &SkewSeries) -> Result<SkewSeries, SeriesError> {
        self.same_action(other)?;
        let ring = self.action.ring();
        let m = self.action.monoid();
        let mut products: BTreeSet<MonoidElem> = BTreeSet::new();
        for u in self.terms.keys() {
            for v in other.terms.keys() {
                products.insert(m.op(u, v)?);
            }
        }
        let mut terms = BTreeMap::new();
        for s in products {
            let c = self
                .factorizations(other, &s)
                .iter()
                .fold(ring.zero(), |acc, (u, v)| {
                    let t = ring.mul(self.terms[u], self.action.apply(u, other.terms[v]));
                    ring.add(acc, t)
                });
            if !ring.is_zero(c) {
                terms.insert(s, c);
            }
        }
        Ok(SkewSeries {
            action: self.action.clone(),
            terms,
        })
    }

    /// `f · c_c`, i.e. the coefficient at `s` is `f(s) ω_s(c)`.
    pub fn scale_right_const(&self, c: Elem) -> SkewSeries {
        let ring = self.action.ring();
        let mut terms = BTreeMap::new();
        for (s, &a) in &self.terms {
            let t = ring.mul(a, self.action.apply(s, c));
            if !ring.is_zero(t) {
                terms.insert(s.clone(), t);
            }
        }
        SkewSeries {
            action: self.action.clone(),
            terms,
        }
    }

    /// `c_c · f`, i.e. the coefficient at `s` is `c f(s)`.
    pub fn scale_left_const(&self, c: Elem) -> SkewSeries {
        let ring = self.action.ring();
        let mut terms = BTreeMap::new();
        for (s, &a) in &self.terms {
            let t = ring.mul(c, a);
            if !ring.is_zero(t) {
                terms.insert(s.clone(), t);
            }
        }
        SkewSeries {
            action: self.action.clone(),
            terms,
        }
    }

    /// Truncated product keeping only exponents whose coordinate sum is at
    /// most `degree`. Diagnostic only: a zero truncated product does not
    /// certify `fg = 0`, so no verdict is ever derived from it.
    pub fn mul_truncated(&self, other: &SkewSeries, degree: i64) -> Result<SkewSeries, SeriesError> {
        let mut p = self.mul(other)?;
        p.terms.retain(|s, _| s.0.iter().sum::<i64>() <= degree);
        Ok(p)
    }

    /// Parses the textual form `coef*x^e + ...` (`x^(e1,e2)` for N^k).
    pub fn parse(action: &Arc<MonoidAction>, input: &str) -> Result<SkewSeries, SeriesError> {
        let err = |msg: &str| SeriesError::Parse {
            input: input.to_string(),
            msg: msg.to_string(),
        };
        let ring = action.ring();
        let text = input.trim();
        if text == "0" || text.is_empty() {
            return Ok(SkewSeries::zero(action));
        }
        let mut terms = Vec::new();
        for term in split_top_level(text, '+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coef, exp) = match find_top_level(term, "x") {
                None => (term, None),
                Some(i) => {
                    let coef = term[..i].trim_end();
                    let coef = coef.strip_suffix('*').map(str::trim_end).unwrap_or(coef);
                    (coef, Some(term[i + 1..].trim()))
                }
            };
            let c = if coef.is_empty() {
                ring.one()
            } else {
                lookup_coef(ring, coef).ok_or_else(|| err(&format!("unknown coefficient `{coef}`")))?
            };
            let s = match exp {
                None => action.monoid().identity(),
                Some("") => exponent_one(action.monoid()).ok_or_else(|| err("bare x needs a rank-1 monoid"))?,
                Some(e) => {
                    let e = e.strip_prefix('^').ok_or_else(|| err("expected ^ after x"))?;
                    parse_exponent(e).ok_or_else(|| err(&format!("bad exponent `{e}`")))?
                }
            };
            terms.push((s, c));
        }
        SkewSeries::from_terms(action, terms)
    }
}

fn exponent_one(m: &OrderedMonoid) -> Option<MonoidElem> {
    (m.rank() == 1).then(|| MonoidElem::scalar(1))
}

fn lookup_coef(ring: &FiniteRing, s: &str) -> Option<Elem> {
    ring.elem_by_name(s).or_else(|| {
        s.strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .and_then(|t| ring.elem_by_name(t))
    })
}

fn parse_exponent(e: &str) -> Option<MonoidElem> {
    let e = e.trim();
    if let Some(inner) = e.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        inner
            .split(',')
            .map(|p| p.trim().parse().ok())
            .collect::<Option<Vec<i64>>>()
            .map(MonoidElem)
    } else {
        e.parse().ok().map(MonoidElem::scalar)
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn find_top_level(s: &str, pat: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ if depth == 0 && s[i..].starts_with(pat) => return Some(i),
            _ => {}
        }
    }
    None
}

impl serde::Serialize for SkewSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for SkewSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let ring = self.action.ring();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, &c)| {
                let name = ring.elem_name(c);
                let coef = if name.contains('+') && !name.starts_with('(') {
                    format!("({name})")
                } else {
                    name.to_string()
                };
                format!("{coef}*x^{s}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_ring, RingSpec};
    use crate::endo::frobenius;
    use crate::omonoid::MonoidKind;

    fn ring(s: &str) -> Arc<FiniteRing> {
        Arc::new(build_ring(&s.parse::<RingSpec>().unwrap()).unwrap())
    }

    fn n() -> OrderedMonoid {
        OrderedMonoid::new(MonoidKind::Naturals)
    }

    fn gf4_frob() -> Arc<MonoidAction> {
        let r = ring("gf 4");
        let fr = frobenius(&r).unwrap();
        Arc::new(MonoidAction::new(r, n(), vec![fr], "frobenius").unwrap())
    }

    fn z4_trivial() -> Arc<MonoidAction> {
        Arc::new(MonoidAction::trivial(ring("zmod 4"), n()))
    }

    fn s(e: i64) -> MonoidElem {
        MonoidElem::scalar(e)
    }

    #[test]
    fn frobenius_action_has_period_two() {
        let act = gf4_frob();
        assert!(act.omega(&s(2)).is_identity());
        assert!(!act.omega(&s(1)).is_identity());
        assert!(act.omega(&s(7)) == act.omega(&s(1)));
    }

    #[test]
    fn z_action_requires_bijection() {
        let r = ring("product zmod2 zmod2");
        let z = OrderedMonoid::new(MonoidKind::Integers);
        let endos = crate::endo::enumerate_endomorphisms(&r, 16).unwrap();
        let swap = endos.iter().find(|e| e.is_bijective() && !e.is_identity()).unwrap();
        let act = MonoidAction::new(r.clone(), z, vec![swap.clone()], "swap").unwrap();
        assert!(act.omega(&s(-1)) == *swap);
        let proj = endos.iter().find(|e| !e.is_bijective()).unwrap();
        assert!(matches!(
            MonoidAction::new(r, z, vec![proj.clone()], "p"),
            Err(SeriesError::NotBijective { .. })
        ));
    }

    #[test]
    fn lex_action_requires_commuting() {
        let r = ring("product zmod2 zmod2");
        let l = OrderedMonoid::new(MonoidKind::NaturalsLex(2));
        let endos = crate::endo::enumerate_endomorphisms(&r, 16).unwrap();
        let swap = endos.iter().find(|e| e.is_bijective() && !e.is_identity()).unwrap();
        let proj = endos.iter().find(|e| !e.is_bijective()).unwrap();
        assert!(matches!(
            MonoidAction::new(r, l, vec![swap.clone(), proj.clone()], "bad"),
            Err(SeriesError::NonCommuting { .. })
        ));
    }

    #[test]
    fn add_examples() {
        let a = z4_trivial();
        let f = SkewSeries::parse(&a, "2 + 2*x^1").unwrap();
        assert!(f.add(&f).unwrap().is_zero());
        assert_eq!(f.add(&SkewSeries::zero(&a)).unwrap(), f);
        let g = SkewSeries::parse(&a, "x + x^2").unwrap();
        assert_eq!(g.support(), vec![s(1), s(2)]);
    }

    #[test]
    fn mul_examples() {
        let a = gf4_frob();
        let r = a.ring();
        let g = r.elem_by_name("a").unwrap();
        let gx = SkewSeries::from_terms(&a, [(s(1), g)]).unwrap();
        let sq = gx.mul(&gx).unwrap();
        // g * frob(g) = g^3 = 1
        assert_eq!(sq, SkewSeries::from_terms(&a, [(s(2), r.one())]).unwrap());

        let z = z4_trivial();
        let f = SkewSeries::parse(&z, "2 + 2*x").unwrap();
        assert!(f.mul(&f).unwrap().is_zero());
        let one = SkewSeries::one(&z);
        assert_eq!(f.mul(&one).unwrap(), f);
        assert_eq!(one.mul(&f).unwrap(), f);
    }

    #[test]
    fn embeddings() {
        let z = z4_trivial();
        assert!(SkewSeries::embed_const(&z, 0).is_zero());
        let r = z.ring();
        for x in r.elements() {
            for y in r.elements() {
                let lhs = SkewSeries::embed_const(&z, x).mul(&SkewSeries::embed_const(&z, y)).unwrap();
                assert_eq!(lhs, SkewSeries::embed_const(&z, r.mul(x, y)));
            }
        }
        let a = gf4_frob();
        let g = a.ring().elem_by_name("a").unwrap();
        let g2 = a.ring().mul(g, g);
        let e1 = SkewSeries::embed_monoid(&a, s(1)).unwrap();
        let lhs = e1.mul(&SkewSeries::embed_const(&a, g)).unwrap();
        let rhs = SkewSeries::embed_const(&a, g2).mul(&e1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coefficient_sets_and_scaling() {
        let z = z4_trivial();
        let f = SkewSeries::parse(&z, "2 + 2*x").unwrap();
        assert!(f.scale_right_const(2).is_zero());
        assert_eq!(f.scale_right_const(1), f);

        let a = gf4_frob();
        let g = a.ring().elem_by_name("a").unwrap();
        let gx = SkewSeries::from_terms(&a, [(s(1), g)]).unwrap();
        assert_eq!(
            gx.scale_right_const(g),
            SkewSeries::from_terms(&a, [(s(1), a.ring().one())]).unwrap()
        );
    }

    #[test]
    fn text_round_trip() {
        let a = gf4_frob();
        let f = SkewSeries::parse(&a, "(a+1)*x^0 + a*x^3").unwrap();
        assert_eq!(f.to_string(), "(a+1)*x^0 + a*x^3");
        assert_eq!(SkewSeries::parse(&a, &f.to_string()).unwrap(), f);

        let r = ring("product zmod2 zmod2");
        let l = Arc::new(MonoidAction::trivial(r, OrderedMonoid::new(MonoidKind::NaturalsLex(2))));
        let f = SkewSeries::parse(&l, "(1,0)*x^(0,1) + (1,1)*x^(2,0)").unwrap();
        assert_eq!(f.to_string(), "(1,0)*x^(0,1) + (1,1)*x^(2,0)");
        assert!(SkewSeries::parse(&l, "x").is_err());
        assert!(SkewSeries::parse(&l, "q*x^(1,1)").is_err());
    }

    #[test]
    fn negative_exponents_rejected_in_n() {
        let z = z4_trivial();
        assert!(SkewSeries::parse(&z, "1*x^-1").is_err());
    }

    #[test]
    fn action_mismatch() {
        let f = SkewSeries::one(&z4_trivial());
        let g = SkewSeries::one(&gf4_frob());
        assert_eq!(f.mul(&g), Err(SeriesError::ActionMismatch));
    }

    #[test]
    fn truncation_is_diagnostic() {
        let z = z4_trivial();
        let f = SkewSeries::parse(&z, "1 + 1*x^3").unwrap();
        let t = f.mul_truncated(&f, 2).unwrap();
        assert_eq!(t.support(), vec![s(0)]);
    }
}
