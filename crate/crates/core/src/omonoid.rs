//! Strictly totally ordered exponent monoids: N, Z and N^k with the
//! lexicographic order. All are commutative and written additively.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::MonoidError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum MonoidKind {
    Naturals,
    Integers,
    /// N^k, k >= 2, lexicographic order.
    NaturalsLex(usize),
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidKind::Naturals => f.write_str("N"),
            MonoidKind::Integers => f.write_str("Z"),
            MonoidKind::NaturalsLex(k) => write!(f, "N^{k} lex"),
        }
    }
}

impl FromStr for MonoidKind {
    type Err = MonoidError;

    fn from_str(s: &str) -> Result<Self, MonoidError> {
        let t: String = s.split_whitespace().collect::<Vec<_>>().join(" ");
        match t.as_str() {
            "N" => Ok(MonoidKind::Naturals),
            "Z" => Ok(MonoidKind::Integers),
            _ => {
                let k = t
                    .strip_prefix("N^")
                    .and_then(|r| r.strip_suffix("lex"))
                    .map(str::trim)
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 2)
                    .ok_or_else(|| MonoidError::UnknownKind(s.to_string()))?;
                Ok(MonoidKind::NaturalsLex(k))
            }
        }
    }
}

impl From<MonoidKind> for String {
    fn from(k: MonoidKind) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for MonoidKind {
    type Error = MonoidError;
    fn try_from(s: String) -> Result<Self, MonoidError> {
        s.parse()
    }
}

/// An exponent: one integer for N and Z, a k-vector for N^k.
/// The derived order is lexicographic, which is the monoid order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElem(pub Vec<i64>);

impl MonoidElem {
    pub fn scalar(e: i64) -> Self {
        MonoidElem(vec![e])
    }
}

impl fmt::Display for MonoidElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [e] => write!(f, "{e}"),
            v => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl Serialize for MonoidElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrderedMonoid {
    kind: MonoidKind,
}

impl OrderedMonoid {
    pub fn new(kind: MonoidKind) -> Self {
        OrderedMonoid { kind }
    }

    pub fn kind(&self) -> MonoidKind {
        self.kind
    }

    /// Number of coordinates in the encoding.
    pub fn rank(&self) -> usize {
        match self.kind {
            MonoidKind::NaturalsLex(k) => k,
            _ => 1,
        }
    }

    pub fn is_group(&self) -> bool {
        self.kind == MonoidKind::Integers
    }

    /// Number of generators of the action: one per coordinate.
    pub fn generator_count(&self) -> usize {
        self.rank()
    }

    pub fn identity(&self) -> MonoidElem {
        MonoidElem(vec![0; self.rank()])
    }

    pub fn contains(&self, s: &MonoidElem) -> bool {
        s.0.len() == self.rank() && (self.is_group() || s.0.iter().all(|&c| c >= 0))
    }

    pub fn check(&self, s: &MonoidElem) -> Result<(), MonoidError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(MonoidError::NotInMonoid(s.to_string()))
        }
    }

    pub fn op(&self, a: &MonoidElem, b: &MonoidElem) -> Result<MonoidElem, MonoidError> {
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| x.checked_add(*y).ok_or(MonoidError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(MonoidElem)
    }

    /// The unique `v` with `u · v = s`, if it lies in the monoid.
    pub fn solve_right(&self, u: &MonoidElem, s: &MonoidElem) -> Option<MonoidElem> {
        let v: Option<Vec<i64>> = s.0.iter().zip(&u.0).map(|(x, y)| x.checked_sub(*y)).collect();
        let v = MonoidElem(v?);
        self.contains(&v).then_some(v)
    }

    pub fn compare(&self, a: &MonoidElem, b: &MonoidElem) -> Ordering {
        a.cmp(b)
    }

    /// All elements whose coordinates lie in `lo..=hi` (clamped at 0 for
    /// non-group kinds), in increasing order.
    pub fn box_elements(&self, lo: i64, hi: i64) -> Vec<MonoidElem> {
        let lo = if self.is_group() { lo } else { lo.max(0) };
        let mut out = vec![Vec::new()];
        for _ in 0..self.rank() {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (lo..=hi).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(MonoidElem).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictOrderReport {
    pub monoid: String,
    pub sample_bound: i64,
    pub triples_checked: usize,
    pub passed: bool,
    /// First failing law and triple.
    pub witness: Option<(String, MonoidElem, MonoidElem, MonoidElem)>,
}

/// Exhaustively checks the monoid and strict-order laws on all elements
/// with coordinates in `[-bound, bound]` (or `[0, bound]`).
pub fn validate_strict_order(m: &OrderedMonoid, sample_bound: i64) -> StrictOrderReport {
    let elems = m.box_elements(-sample_bound, sample_bound);
    let id = m.identity();
    let mut checked = 0;
    let mut witness = None;
    'outer: for a in &elems {
        for b in &elems {
            for c in &elems {
                checked += 1;
                let op = |x: &MonoidElem, y: &MonoidElem| m.op(x, y).expect("bounded");
                let fail = if op(&op(a, b), c) != op(a, &op(b, c)) {
                    Some("associativity")
                } else if op(a, &id) != *a || op(&id, a) != *a {
                    Some("identity")
                } else if m.compare(a, b) == Ordering::Less
                    && !(m.compare(&op(a, c), &op(b, c)) == Ordering::Less
                        && m.compare(&op(c, a), &op(c, b)) == Ordering::Less)
                {
                    Some("strict compatibility")
                } else if m.compare(a, b) == Ordering::Less
                    && m.compare(b, c) == Ordering::Less
                    && m.compare(a, c) != Ordering::Less
                {
                    Some("transitivity")
                } else {
                    None
                };
                if let Some(law) = fail {
                    witness = Some((law.to_string(), a.clone(), b.clone(), c.clone()));
                    break 'outer;
                }
            }
        }
    }
    StrictOrderReport {
        monoid: m.kind.to_string(),
        sample_bound,
        triples_checked: checked,
        passed: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    pub size: usize,
    pub artinian: bool,
    pub narrow: bool,
    pub min: Option<MonoidElem>,
    pub max: Option<MonoidElem>,
}

/// Support discipline for finite subsets of a total order: always artinian
/// and narrow; records the extremes.
pub fn validate_support<'a>(m: &OrderedMonoid, d: impl IntoIterator<Item = &'a MonoidElem>) -> SupportReport {
    let mut v: Vec<&MonoidElem> = d.into_iter().collect();
    v.sort_by(|a, b| m.compare(a, b));
    v.dedup();
    SupportReport {
        size: v.len(),
        // finite chains descend finitely and a total order has no antichain of size 2
        artinian: true,
        narrow: true,
        min: v.first().map(|&e| e.clone()),
        max: v.last().map(|&e| e.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[i64]) -> MonoidElem {
        MonoidElem(v.to_vec())
    }

    #[test]
    fn parse_kinds() {
        assert_eq!("N".parse::<MonoidKind>().unwrap(), MonoidKind::Naturals);
        assert_eq!("Z".parse::<MonoidKind>().unwrap(), MonoidKind::Integers);
        assert_eq!("N^2 lex".parse::<MonoidKind>().unwrap(), MonoidKind::NaturalsLex(2));
        assert_eq!("N^3lex".parse::<MonoidKind>().unwrap(), MonoidKind::NaturalsLex(3));
        assert!("Q".parse::<MonoidKind>().is_err());
        assert!("N^1 lex".parse::<MonoidKind>().is_err());
    }

    #[test]
    fn basic_structure() {
        let n = OrderedMonoid::new(MonoidKind::Naturals);
        assert_eq!(n.identity(), e(&[0]));
        assert!(!n.is_group());
        assert!(!n.contains(&e(&[-1])));
        let z = OrderedMonoid::new(MonoidKind::Integers);
        assert!(z.is_group());
        assert_eq!(z.solve_right(&e(&[3]), &e(&[1])), Some(e(&[-2])));
        assert_eq!(n.solve_right(&e(&[3]), &e(&[1])), None);
        let l = OrderedMonoid::new(MonoidKind::NaturalsLex(2));
        assert_eq!(l.compare(&e(&[1, 0]), &e(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn strict_order_holds() {
        assert!(validate_strict_order(&OrderedMonoid::new(MonoidKind::Naturals), 10).passed);
        assert!(validate_strict_order(&OrderedMonoid::new(MonoidKind::Integers), 5).passed);
        let r = validate_strict_order(&OrderedMonoid::new(MonoidKind::NaturalsLex(2)), 4);
        assert!(r.passed);
        assert_eq!(r.triples_checked, 25 * 25 * 25);
    }

    #[test]
    fn identity_minimal_except_in_z() {
        let n = OrderedMonoid::new(MonoidKind::NaturalsLex(2));
        assert!(n.box_elements(0, 3).iter().all(|s| n.identity() <= *s));
        let z = OrderedMonoid::new(MonoidKind::Integers);
        assert!(z.box_elements(-2, 2).iter().any(|s| *s < z.identity()));
    }

    #[test]
    fn supports() {
        let n = OrderedMonoid::new(MonoidKind::Naturals);
        let d = [e(&[3]), e(&[0]), e(&[1])];
        let r = validate_support(&n, &d);
        assert!(r.artinian && r.narrow);
        assert_eq!(r.min, Some(e(&[0])));
        let r = validate_support(&n, &[]);
        assert_eq!((r.size, r.min), (0, None));
        let l = OrderedMonoid::new(MonoidKind::NaturalsLex(2));
        let r = validate_support(&l, &[e(&[0, 1]), e(&[1, 0])]);
        assert_eq!(r.min, Some(e(&[0, 1])));
    }

    #[test]
    fn overflow_is_reported() {
        let z = OrderedMonoid::new(MonoidKind::Integers);
        assert_eq!(z.op(&e(&[i64::MAX]), &e(&[1])), Err(MonoidError::Overflow));
    }
}
