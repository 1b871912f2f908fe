//! Exhaustive and sampled search for McCoy counterexamples over a finite
//! support window.
//!
//! Series with support in the window `D = {d_0 < ... < d_{m-1}}` are
//! encoded as coefficient vectors; vector `k` has coefficient
//! `(k / n^(m-1-i)) mod n` at `d_i`, so increasing `k` is lexicographic
//! order on coefficient tuples.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CheckError;
use crate::ideal::Side;
use crate::omonoid::{MonoidElem, MonoidKind, OrderedMonoid};
use crate::ring::{Elem, FiniteRing};
use crate::series::{MonoidAction, SkewSeries};
use crate::Limits;

/// Attached to every verdict.
pub const WINDOW_CAVEAT: &str = "no counterexample with support in the window D; this does not prove that R is (S,ω)-McCoy outright";

/// A finite set of exponents that supports are drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    elems: Vec<MonoidElem>,
}

impl Window {
    pub fn new(monoid: &OrderedMonoid, mut elems: Vec<MonoidElem>) -> Result<Window, CheckError> {
        for e in &elems {
            monoid.check(e)?;
        }
        elems.sort();
        elems.dedup();
        Ok(Window { elems })
    }

    /// The standard window of degree `d`: `{0..d}` for N, `d + 1`
    /// consecutive exponents around 0 for Z (`-⌊d/2⌋..=d-⌊d/2⌋`), and the
    /// box `{0..d}^k` for N^k.
    pub fn degree(monoid: &OrderedMonoid, d: u32) -> Window {
        let d = d as i64;
        let elems = match monoid.kind() {
            MonoidKind::Integers => monoid.box_elements(-(d / 2), d - d / 2),
            _ => monoid.box_elements(0, d),
        };
        Window { elems }
    }

    pub fn elems(&self) -> &[MonoidElem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Number of coefficient vectors, `n^|D|`.
    pub fn vector_count(&self, ring_order: usize) -> u128 {
        (ring_order as u128).saturating_pow(self.elems.len() as u32)
    }

    /// Ordered pairs `(f, g)` an exhaustive scan visits, `n^(2|D|)`.
    pub fn pair_count(&self, ring_order: usize) -> u128 {
        self.vector_count(ring_order).saturating_mul(self.vector_count(ring_order))
    }

    /// Largest `d' <= d` whose standard window fits the budget.
    pub fn largest_degree_within(monoid: &OrderedMonoid, ring_order: usize, d: u32, budget: u128) -> Option<u32> {
        (0..=d)
            .rev()
            .find(|&k| Window::degree(monoid, k).pair_count(ring_order) <= budget)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Random { seed: u64, trials: u64 },
}

/// Direction of the exhaustive scan; only which counterexample is reported
/// may depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumerationOrder {
    #[default]
    Forward,
    Reverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    VerifiedUpToBound,
    Counterexample,
    Vacuous,
}

/// A nonzero `c` together with an exponent where the witness equation fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    #[serde(skip)]
    pub c: Elem,
    #[serde(rename = "c")]
    pub c_name: String,
    pub at: MonoidElem,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub f: SkewSeries,
    pub g: SkewSeries,
    pub refutations: Vec<Refutation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessExample {
    pub f: SkewSeries,
    pub g: SkewSeries,
    #[serde(skip)]
    pub c: Elem,
    #[serde(rename = "c")]
    pub c_name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McCoyVerdict {
    pub side: Side,
    pub ring: String,
    pub monoid: String,
    pub action: String,
    pub window: Vec<MonoidElem>,
    pub mode: SearchMode,
    pub outcome: Outcome,
    pub pairs_examined: u64,
    pub zero_divisor_pairs: u64,
    pub counterexample: Option<Counterexample>,
    /// First zero-divisor pair found together with its witness `c`.
    pub witness_example: Option<WitnessExample>,
    pub caveat: &'static str,
}

impl McCoyVerdict {
    pub fn is_counterexample(&self) -> bool {
        self.outcome == Outcome::Counterexample
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub order: EnumerationOrder,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::Exhaustive,
            order: EnumerationOrder::Forward,
        }
    }
}

/// Coefficient-vector view of series supported in a window.
pub(crate) struct DenseWindow<'a> {
    pub ring: &'a FiniteRing,
    pub m: usize,
    pub count: u64,
    /// `omega[i][r] = ω_{d_i}(r)`
    omega: Vec<Vec<Elem>>,
    /// `slot[i * m + j]` indexes `d_i + d_j` among the distinct sums.
    slot: Vec<usize>,
    slots: usize,
    place: Vec<u64>,
}

impl<'a> DenseWindow<'a> {
    pub fn new(action: &'a MonoidAction, window: &Window) -> Result<Self, CheckError> {
        let ring = action.ring();
        let m = window.len();
        let n = ring.order();
        let count = u64::try_from(window.vector_count(n))
            .map_err(|_| CheckError::Budget { needed: u128::MAX, budget: 0 })?;
        let omega = window
            .elems()
            .iter()
            .map(|s| action.omega(s).map().to_vec())
            .collect();
        let mut sums = Vec::with_capacity(m * m);
        for u in window.elems() {
            for v in window.elems() {
                sums.push(action.monoid().op(u, v)?);
            }
        }
        let mut distinct = sums.clone();
        distinct.sort();
        distinct.dedup();
        let slot = sums
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let place = (0..m).map(|i| (n as u64).pow((m - 1 - i) as u32)).collect();
        Ok(DenseWindow {
            ring,
            m,
            count,
            omega,
            slot,
            slots: distinct.len(),
            place,
        })
    }

    pub fn decode(&self, k: u64, out: &mut [Elem]) {
        let n = self.ring.order() as u64;
        for (i, o) in out.iter_mut().enumerate() {
            *o = ((k / self.place[i]) % n) as Elem;
        }
    }

    pub fn decode_all(&self) -> Vec<Elem> {
        let mut v = vec![0; self.count as usize * self.m];
        for k in 0..self.count {
            let s = k as usize * self.m;
            self.decode(k, &mut v[s..s + self.m]);
        }
        v
    }

    /// Index of the all-zero vector.
    pub fn zero_index(&self) -> u64 {
        self.ring.zero() as u64 * self.place.iter().sum::<u64>()
    }

    pub fn is_zero_vec(&self, v: &[Elem]) -> bool {
        v.iter().all(|&c| self.ring.is_zero(c))
    }

    /// `twisted[i * n + b] = f_i · ω_{d_i}(b)` for a fixed left factor.
    pub fn left_table(&self, f: &[Elem]) -> Vec<Elem> {
        let n = self.ring.order();
        let mut t = vec![0; self.m * n];
        for i in 0..self.m {
            for b in 0..n {
                t[i * n + b] = self.ring.mul(f[i], self.omega[i][b]);
            }
        }
        t
    }

    /// Whether `fg = 0`, with `table = left_table(f)`.
    #[inline]
    pub fn product_is_zero(&self, table: &[Elem], g: &[Elem], scratch: &mut [Elem]) -> bool {
        let n = self.ring.order();
        let zero = self.ring.zero();
        scratch[..self.slots].fill(zero);
        for i in 0..self.m {
            let row = &table[i * n..(i + 1) * n];
            let slots = &self.slot[i * self.m..(i + 1) * self.m];
            for (j, &gj) in g.iter().enumerate() {
                let s = slots[j];
                scratch[s] = self.ring.add(scratch[s], row[gj]);
            }
        }
        scratch[..self.slots].iter().all(|&c| c == zero)
    }

    pub fn scratch(&self) -> Vec<Elem> {
        vec![0; self.slots]
    }

    /// Smallest nonzero `c` with `f_i ω_{d_i}(c) = 0` for all `i`.
    pub fn right_witness(&self, f: &[Elem]) -> Option<Elem> {
        self.ring.nonzero_elements().find(|&c| {
            (0..self.m).all(|i| self.ring.is_zero(self.ring.mul(f[i], self.omega[i][c])))
        })
    }

    /// Smallest nonzero `c` with `c g_j = 0` for all `j`.
    pub fn left_witness(&self, g: &[Elem]) -> Option<Elem> {
        self.ring
            .nonzero_elements()
            .find(|&c| g.iter().all(|&b| self.ring.is_zero(self.ring.mul(c, b))))
    }

    pub fn to_series(&self, action: &Arc<MonoidAction>, window: &Window, v: &[Elem]) -> SkewSeries {
        SkewSeries::from_terms(action, window.elems().iter().cloned().zip(v.iter().copied()))
            .expect("window elements are in the monoid")
    }
}

/// Per-side first hits, keyed by enumeration position.
#[derive(Clone, Debug, Default)]
struct SideHits {
    counterexample: Option<(u64, u64, u64)>,
    witnessed: Option<(u64, u64, u64, Elem)>,
}

impl SideHits {
    fn merge(self, other: SideHits) -> SideHits {
        let pick = |a: Option<(u64, u64, u64)>, b: Option<(u64, u64, u64)>| match (a, b) {
            (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
            (x, y) => x.or(y),
        };
        let pick_w = |a: Option<(u64, u64, u64, Elem)>, b: Option<(u64, u64, u64, Elem)>| match (a, b) {
            (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
            (x, y) => x.or(y),
        };
        SideHits {
            counterexample: pick(self.counterexample, other.counterexample),
            witnessed: pick_w(self.witnessed, other.witnessed),
        }
    }
}

#[derive(Clone, Debug, Default)]
struct ScanStats {
    examined: u64,
    zero_pairs: u64,
    right: SideHits,
    left: SideHits,
}

impl ScanStats {
    fn merge(self, o: ScanStats) -> ScanStats {
        ScanStats {
            examined: self.examined + o.examined,
            zero_pairs: self.zero_pairs + o.zero_pairs,
            right: self.right.merge(o.right),
            left: self.left.merge(o.left),
        }
    }

    /// Records a zero-divisor pair at enumeration position `pos`.
    fn record(&mut self, pos: u64, f: u64, g: u64, rw: Option<Elem>, lw: Option<Elem>) {
        self.zero_pairs += 1;
        let hit = |h: &mut SideHits, w: Option<Elem>| match w {
            None => {
                if h.counterexample.map_or(true, |c| pos < c.0) {
                    h.counterexample = Some((pos, f, g));
                }
            }
            Some(c) => {
                if h.witnessed.map_or(true, |x| pos < x.0) {
                    h.witnessed = Some((pos, f, g, c));
                }
            }
        };
        hit(&mut self.right, rw);
        hit(&mut self.left, lw);
    }
}

struct ScanInput<'a> {
    dense: DenseWindow<'a>,
    vecs: Vec<Elem>,
    left_w: Vec<Option<Elem>>,
}

impl<'a> ScanInput<'a> {
    fn vec(&self, k: u64) -> &[Elem] {
        let s = k as usize * self.dense.m;
        &self.vecs[s..s + self.dense.m]
    }
}

fn scan_exhaustive(input: &ScanInput<'_>, order: EnumerationOrder) -> ScanStats {
    let count = input.dense.count;
    let zero = input.dense.zero_index();
    let visit_f = |fi: u64| -> ScanStats {
        let d = &input.dense;
        let mut st = ScanStats::default();
        let f = input.vec(fi);
        if d.is_zero_vec(f) {
            return st;
        }
        let table = d.left_table(f);
        let rw = d.right_witness(f);
        let mut scratch = d.scratch();
        let fpos = match order {
            EnumerationOrder::Forward => fi,
            EnumerationOrder::Reverse => count - 1 - fi,
        };
        for gi in (0..count).filter(|&gi| gi != zero) {
            let g = input.vec(gi);
            st.examined += 1;
            if d.product_is_zero(&table, g, &mut scratch) {
                let gpos = match order {
                    EnumerationOrder::Forward => gi,
                    EnumerationOrder::Reverse => count - 1 - gi,
                };
                st.record(fpos * count + gpos, fi, gi, rw, input.left_w[gi as usize]);
            }
        }
        st
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count)
            .into_par_iter()
            .map(visit_f)
            .reduce(ScanStats::default, ScanStats::merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(visit_f).fold(ScanStats::default(), ScanStats::merge)
    }
}

fn scan_random(input: &ScanInput<'_>, seed: u64, trials: u64) -> ScanStats {
    let d = &input.dense;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = ScanStats::default();
    let mut scratch = d.scratch();
    let zero = d.zero_index();
    // uniform over nonzero vectors
    let draw = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(0..d.count - 1);
        if k >= zero {
            k + 1
        } else {
            k
        }
    };
    for t in 0..trials {
        let fi = draw(&mut rng);
        let gi = draw(&mut rng);
        let f = input.vec(fi);
        let g = input.vec(gi);
        st.examined += 1;
        if d.product_is_zero(&d.left_table(f), g, &mut scratch) {
            st.record(t, fi, gi, d.right_witness(f), input.left_w[gi as usize]);
        }
    }
    st
}

fn refutations(action: &MonoidAction, f: &SkewSeries, g: &SkewSeries, side: Side) -> Vec<Refutation> {
    let ring = action.ring();
    ring.nonzero_elements()
        .map(|c| {
            let prod = match side {
                Side::Right => f.scale_right_const(c),
                Side::Left => g.scale_left_const(c),
            };
            let (at, value) = prod
                .terms()
                .iter()
                .next()
                .map(|(s, &v)| (s.clone(), ring.elem_name(v).to_string()))
                .expect("counterexample: every nonzero c fails");
            Refutation {
                c,
                c_name: ring.elem_name(c).to_string(),
                at,
                value,
            }
        })
        .collect()
}

fn verdict_for(
    action: &Arc<MonoidAction>,
    window: &Window,
    input: &ScanInput<'_>,
    mode: SearchMode,
    stats: &ScanStats,
    side: Side,
) -> McCoyVerdict {
    let hits = match side {
        Side::Right => &stats.right,
        Side::Left => &stats.left,
    };
    let series = |k: u64| input.dense.to_series(action, window, input.vec(k));
    let counterexample = hits.counterexample.map(|(_, fi, gi)| {
        let (f, g) = (series(fi), series(gi));
        Counterexample {
            refutations: refutations(action, &f, &g, side),
            f,
            g,
        }
    });
    let witness_example = hits.witnessed.map(|(_, fi, gi, c)| WitnessExample {
        f: series(fi),
        g: series(gi),
        c,
        c_name: action.ring().elem_name(c).to_string(),
    });
    let outcome = if counterexample.is_some() {
        Outcome::Counterexample
    } else if stats.zero_pairs == 0 {
        Outcome::Vacuous
    } else {
        Outcome::VerifiedUpToBound
    };
    McCoyVerdict {
        side,
        ring: action.ring().name().to_string(),
        monoid: action.monoid().kind().to_string(),
        action: action.label().to_string(),
        window: window.elems().to_vec(),
        mode,
        outcome,
        pairs_examined: stats.examined,
        zero_divisor_pairs: stats.zero_pairs,
        counterexample,
        witness_example,
        caveat: WINDOW_CAVEAT,
    }
}

/// Right and left McCoy verdicts from a single pass over the window.
pub fn mccoy_search_both(
    action: &Arc<MonoidAction>,
    window: &Window,
    opts: &SearchOptions,
    limits: &Limits,
) -> Result<(McCoyVerdict, McCoyVerdict), CheckError> {
    let n = action.ring().order();
    let needed = match opts.mode {
        SearchMode::Exhaustive => window.pair_count(n),
        SearchMode::Random { trials, .. } => trials as u128,
    };
    if needed > limits.pair_budget() {
        return Err(CheckError::Budget {
            needed,
            budget: limits.pair_budget(),
        });
    }
    // random mode still materialises all vectors
    if window.vector_count(n) > limits.pair_budget() {
        return Err(CheckError::Budget {
            needed: window.vector_count(n),
            budget: limits.pair_budget(),
        });
    }
    let dense = DenseWindow::new(action, window)?;
    let vecs = dense.decode_all();
    let left_w = (0..dense.count)
        .map(|k| {
            let s = k as usize * dense.m;
            dense.left_witness(&vecs[s..s + dense.m])
        })
        .collect();
    let input = ScanInput { dense, vecs, left_w };
    let stats = match opts.mode {
        SearchMode::Exhaustive => scan_exhaustive(&input, opts.order),
        SearchMode::Random { seed, trials } => scan_random(&input, seed, trials),
    };
    Ok((
        verdict_for(action, window, &input, opts.mode, &stats, Side::Right),
        verdict_for(action, window, &input, opts.mode, &stats, Side::Left),
    ))
}

/// Decides the McCoy condition on one side for all nonzero `f, g` with
/// support in `window`.
///
/// Right: every `fg = 0` needs a nonzero `c` with `f(s) ω_s(c) = 0` for all
/// `s`. Left: a nonzero `c` with `c g(t) = 0` for all `t`, i.e. `c_c g = 0`.
pub fn mccoy_search(
    action: &Arc<MonoidAction>,
    window: &Window,
    side: Side,
    opts: &SearchOptions,
    limits: &Limits,
) -> Result<McCoyVerdict, CheckError> {
    let (right, left) = mccoy_search_both(action, window, opts, limits)?;
    Ok(match side {
        Side::Right => right,
        Side::Left => left,
    })
}

/// Re-derives a counterexample through the sparse series arithmetic:
/// `fg = 0`, both nonzero, and every nonzero `c` fails.
pub fn replay_counterexample(cex: &Counterexample, side: Side) -> Result<(), String> {
    let ring = cex.f.action().ring();
    if cex.f.is_zero() || cex.g.is_zero() {
        return Err("a factor is zero".into());
    }
    let prod = cex.f.mul(&cex.g).map_err(|e| e.to_string())?;
    if !prod.is_zero() {
        return Err(format!("fg = {prod} is not zero"));
    }
    for c in ring.nonzero_elements() {
        let w = match side {
            Side::Right => cex.f.scale_right_const(c),
            Side::Left => cex.g.scale_left_const(c),
        };
        if w.is_zero() {
            return Err(format!("c = {} is a witness", ring.elem_name(c)));
        }
    }
    for r in &cex.refutations {
        let w = match side {
            Side::Right => cex.f.scale_right_const(r.c),
            Side::Left => cex.g.scale_left_const(r.c),
        };
        if ring.elem_by_name(&r.value) != Some(w.coeff(&r.at)) || ring.is_zero(w.coeff(&r.at)) {
            return Err(format!("refutation for c = {} does not replay", r.c_name));
        }
    }
    Ok(())
}

/// Re-derives a witnessed zero-divisor pair.
pub fn replay_witness(w: &WitnessExample, side: Side) -> Result<(), String> {
    let ring = w.f.action().ring();
    if ring.is_zero(w.c) {
        return Err("witness is zero".into());
    }
    if !w.f.mul(&w.g).map_err(|e| e.to_string())?.is_zero() {
        return Err("fg is not zero".into());
    }
    let ok = match side {
        Side::Right => w.f.scale_right_const(w.c).is_zero(),
        Side::Left => w.g.scale_left_const(w.c).is_zero(),
    };
    if ok {
        Ok(())
    } else {
        Err(format!("c = {} does not annihilate", w.c_name))
    }
}

/// Replays every counterexample and witness carried by a verdict.
pub fn replay_verdict(v: &McCoyVerdict) -> Result<(), String> {
    if let Some(c) = &v.counterexample {
        replay_counterexample(c, v.side)?;
    }
    if let Some(w) = &v.witness_example {
        replay_witness(w, v.side)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_ring, RingSpec};
    use crate::endo::frobenius;

    fn ring(s: &str) -> Arc<FiniteRing> {
        Arc::new(build_ring(&s.parse::<RingSpec>().unwrap()).unwrap())
    }

    fn n() -> OrderedMonoid {
        OrderedMonoid::new(MonoidKind::Naturals)
    }

    fn trivial(s: &str) -> Arc<MonoidAction> {
        Arc::new(MonoidAction::trivial(ring(s), n()))
    }

    /// Oracle: plain nested loops over the sparse arithmetic.
    fn brute_force(action: &Arc<MonoidAction>, window: &Window, side: Side) -> (u64, bool) {
        let r = action.ring();
        let m = window.len();
        let nn = r.order();
        let all: Vec<SkewSeries> = (0..nn.pow(m as u32))
            .map(|mut k| {
                let mut coeffs = vec![0; m];
                for i in (0..m).rev() {
                    coeffs[i] = k % nn;
                    k /= nn;
                }
                SkewSeries::from_terms(action, window.elems().iter().cloned().zip(coeffs)).unwrap()
            })
            .filter(|s| !s.is_zero())
            .collect();
        let mut zero_pairs = 0;
        let mut cex = false;
        for f in &all {
            for g in &all {
                if f.mul(g).unwrap().is_zero() {
                    zero_pairs += 1;
                    let witnessed = r.nonzero_elements().any(|c| match side {
                        Side::Right => f.scale_right_const(c).is_zero(),
                        Side::Left => g.scale_left_const(c).is_zero(),
                    });
                    cex |= !witnessed;
                }
            }
        }
        (zero_pairs, cex)
    }

    #[test]
    fn zmod2_polynomials_are_vacuous() {
        let a = trivial("zmod 2");
        let w = Window::degree(&n(), 2);
        let v = mccoy_search(&a, &w, Side::Right, &SearchOptions::default(), &Limits::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Vacuous);
        assert_eq!(v.zero_divisor_pairs, 0);
    }

    #[test]
    fn zmod4_degree_one_verified_with_witness_two() {
        let a = trivial("zmod 4");
        let w = Window::degree(&n(), 1);
        let v = mccoy_search(&a, &w, Side::Right, &SearchOptions::default(), &Limits::default()).unwrap();
        assert_eq!(v.outcome, Outcome::VerifiedUpToBound);
        assert_eq!(v.pairs_examined, 15 * 15);
        let (zp, cex) = brute_force(&a, &w, Side::Right);
        assert_eq!(v.zero_divisor_pairs, zp);
        assert!(!cex);
        // the pair (2 + 2x, 2 + 2x) is witnessed by c = 2
        let f = SkewSeries::parse(&a, "2 + 2*x").unwrap();
        assert!(f.mul(&f).unwrap().is_zero());
        assert_eq!(a.ring().nonzero_elements().find(|&c| f.scale_right_const(c).is_zero()), Some(2));
        replay_verdict(&v).unwrap();
    }

    #[test]
    fn gf4_frobenius_is_vacuous() {
        let r = ring("gf 4");
        let fr = frobenius(&r).unwrap();
        let a = Arc::new(MonoidAction::new(r, n(), vec![fr], "frobenius").unwrap());
        let w = Window::degree(&n(), 1);
        let (rv, lv) = mccoy_search_both(&a, &w, &SearchOptions::default(), &Limits::default()).unwrap();
        assert_eq!(rv.outcome, Outcome::Vacuous);
        assert_eq!(lv.outcome, Outcome::Vacuous);
    }

    #[test]
    fn dense_engine_matches_sparse_oracle() {
        let z = OrderedMonoid::new(MonoidKind::Integers);
        let v4 = ring("product zmod2 zmod2");
        let endos = crate::endo::enumerate_endomorphisms(&v4, 16).unwrap();
        let swap = endos.iter().find(|e| e.is_bijective() && !e.is_identity()).unwrap().clone();
        let cases = vec![
            (trivial("zmod 4"), Window::degree(&n(), 1)),
            (trivial("zmod 6"), Window::degree(&n(), 1)),
            (trivial("uppertri 2 zmod2"), Window::degree(&n(), 1)),
            (Arc::new(MonoidAction::new(v4.clone(), n(), vec![swap.clone()], "swap").unwrap()), Window::degree(&n(), 2)),
            (Arc::new(MonoidAction::new(v4, z, vec![swap], "swap").unwrap()), Window::degree(&z, 2)),
        ];
        for (a, w) in cases {
            let (rv, lv) = mccoy_search_both(&a, &w, &SearchOptions::default(), &Limits::default()).unwrap();
            for v in [&rv, &lv] {
                let (zp, cex) = brute_force(&a, &w, v.side);
                assert_eq!(v.zero_divisor_pairs, zp, "{} {:?}", a.ring().name(), v.side);
                assert_eq!(v.is_counterexample(), cex, "{} {:?}", a.ring().name(), v.side);
                replay_verdict(v).unwrap();
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let a = trivial("zmod 8");
        let w = Window::degree(&n(), 3);
        let err = mccoy_search(&a, &w, Side::Right, &SearchOptions::default(), &Limits::default()).unwrap_err();
        assert!(err.is_capacity());
        assert_eq!(Window::largest_degree_within(&n(), 8, 3, 10_000_000), Some(2));
    }

    #[test]
    fn windows() {
        let z = OrderedMonoid::new(MonoidKind::Integers);
        let w = Window::degree(&z, 3);
        let e: Vec<i64> = w.elems().iter().map(|s| s.0[0]).collect();
        assert_eq!(e, vec![-1, 0, 1, 2]);
        let l = OrderedMonoid::new(MonoidKind::NaturalsLex(2));
        assert_eq!(Window::degree(&l, 1).len(), 4);
    }

    #[test]
    fn random_mode_is_seeded() {
        let a = trivial("zmod 4");
        let w = Window::degree(&n(), 2);
        let opts = SearchOptions {
            mode: SearchMode::Random { seed: 7, trials: 2000 },
            order: EnumerationOrder::Forward,
        };
        let v1 = mccoy_search(&a, &w, Side::Right, &opts, &Limits::default()).unwrap();
        let v2 = mccoy_search(&a, &w, Side::Right, &opts, &Limits::default()).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(v1.pairs_examined, 2000);
    }
}
