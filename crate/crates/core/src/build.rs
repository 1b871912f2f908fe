//! Ring constructors and the textual ring-spec grammar.
//!
//! Spec strings: `zmod 4`, `gf 4`, `gf 4 poly=x^2+x+1`, `product zmod2 zmod2`,
//! `smatrix 2 zmod2`, `uppertri 2 zmod2`, `table file=path`. Ring arguments
//! are either a compact base token (`zmodN`, `gfQ`) or a parenthesised spec,
//! e.g. `product (smatrix 2 zmod2) zmod3`.
//!
//! Element ids are assigned from coordinate vectors with the first coordinate
//! varying fastest: `id = c0 + |R| c1 + |R|² c2 + ...`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::RingError;
use crate::ring::{Elem, FiniteRing, RingTables};

/// Rings larger than this are rejected; the axiom check alone is cubic.
pub const MAX_BUILD_ORDER: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RingSpec {
    ZMod(usize),
    /// `poly` holds coefficients from degree 0 upwards, monic of degree k.
    Gf { q: usize, poly: Option<Vec<usize>> },
    Product(Box<RingSpec>, Box<RingSpec>),
    SMatrix(usize, Box<RingSpec>),
    UpperTri(usize, Box<RingSpec>),
    Table { path: String },
}

impl From<RingSpec> for String {
    fn from(s: RingSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for RingSpec {
    type Error = RingError;
    fn try_from(s: String) -> Result<Self, RingError> {
        s.parse()
    }
}

fn poly_string(coeffs: &[usize]) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match e {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{e}"),
        };
        terms.push(match (c, e) {
            (_, 0) => c.to_string(),
            (1, _) => var,
            _ => format!("{c}{var}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl RingSpec {
    fn fmt_arg(&self) -> String {
        match self {
            RingSpec::ZMod(n) => format!("zmod{n}"),
            RingSpec::Gf { q, poly: None } => format!("gf{q}"),
            other => format!("({other})"),
        }
    }

    /// Order of the ring this spec describes, when known without building.
    pub fn order_hint(&self) -> Option<usize> {
        match self {
            RingSpec::ZMod(n) => Some(*n),
            RingSpec::Gf { q, .. } => Some(*q),
            RingSpec::Product(a, b) => a.order_hint()?.checked_mul(b.order_hint()?),
            RingSpec::SMatrix(n, r) => r.order_hint()?.checked_pow((1 + n * (n - 1) / 2) as u32),
            RingSpec::UpperTri(n, r) => r.order_hint()?.checked_pow((n * (n + 1) / 2) as u32),
            RingSpec::Table { .. } => None,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ZMod(n) => write!(f, "zmod {n}"),
            RingSpec::Gf { q, poly: None } => write!(f, "gf {q}"),
            RingSpec::Gf { q, poly: Some(p) } => write!(f, "gf {q} poly={}", poly_string(p)),
            RingSpec::Product(a, b) => write!(f, "product {} {}", a.fmt_arg(), b.fmt_arg()),
            RingSpec::SMatrix(n, r) => write!(f, "smatrix {n} {}", r.fmt_arg()),
            RingSpec::UpperTri(n, r) => write!(f, "uppertri {n} {}", r.fmt_arg()),
            RingSpec::Table { path } => write!(f, "table file={path}"),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<String>, RingError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in s.chars() {
        match ch {
            '(' => {
                if depth > 0 {
                    cur.push(ch);
                }
                depth += 1;
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| RingError::InvalidSpec(format!("unbalanced `)` in `{s}`")))?;
                if depth > 0 {
                    cur.push(ch);
                } else {
                    out.push(format!("({cur})"));
                    cur.clear();
                }
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(RingError::InvalidSpec(format!("unbalanced `(` in `{s}`")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_usize(tok: &str, what: &str) -> Result<usize, RingError> {
    tok.parse()
        .map_err(|_| RingError::InvalidSpec(format!("expected {what}, got `{tok}`")))
}

fn parse_arg(tok: &str) -> Result<RingSpec, RingError> {
    if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        return inner.parse();
    }
    if let Some(n) = tok.strip_prefix("zmod") {
        return Ok(RingSpec::ZMod(parse_usize(n, "modulus")?));
    }
    if let Some(q) = tok.strip_prefix("gf") {
        return Ok(RingSpec::Gf {
            q: parse_usize(q, "field order")?,
            poly: None,
        });
    }
    Err(RingError::InvalidSpec(format!(
        "unknown ring argument `{tok}` (use zmodN, gfQ or a parenthesised spec)"
    )))
}

/// Parses `x^2+x+1` style polynomials with integer coefficients.
fn parse_poly(s: &str, p: usize) -> Result<Vec<usize>, RingError> {
    let bad = || RingError::InvalidSpec(format!("cannot parse polynomial `{s}`"));
    let mut coeffs: Vec<usize> = Vec::new();
    for term in s.split('+').map(str::trim) {
        if term.is_empty() {
            return Err(bad());
        }
        let (c, e) = match term.find('x') {
            None => (term.parse::<usize>().map_err(|_| bad())?, 0),
            Some(i) => {
                let c = term[..i].trim_end_matches('*');
                let c = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
                let rest = &term[i + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(bad)?
                        .parse()
                        .map_err(|_| bad())?
                };
                (c, e)
            }
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] = (coeffs[e] + c) % p;
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, RingError> {
        let toks = tokenize(s.trim())?;
        let Some(kind) = toks.first() else {
            return Err(RingError::InvalidSpec("empty ring spec".into()));
        };
        let args = &toks[1..];
        let want = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(RingError::InvalidSpec(format!(
                    "`{kind}` takes {n} argument(s), got {} in `{s}`",
                    args.len()
                )))
            }
        };
        match kind.as_str() {
            "zmod" => {
                want(1)?;
                Ok(RingSpec::ZMod(parse_usize(&args[0], "modulus")?))
            }
            "gf" => {
                if args.is_empty() || args.len() > 2 {
                    return Err(RingError::InvalidSpec(format!(
                        "`gf` takes an order and an optional poly=..., got `{s}`"
                    )));
                }
                let q = parse_usize(&args[0], "field order")?;
                let poly = match args.get(1) {
                    None => None,
                    Some(a) => {
                        let body = a.strip_prefix("poly=").ok_or_else(|| {
                            RingError::InvalidSpec(format!("expected poly=..., got `{a}`"))
                        })?;
                        let (p, _) = prime_power(q)?;
                        Some(parse_poly(body, p)?)
                    }
                };
                Ok(RingSpec::Gf { q, poly })
            }
            "product" => {
                want(2)?;
                Ok(RingSpec::Product(
                    Box::new(parse_arg(&args[0])?),
                    Box::new(parse_arg(&args[1])?),
                ))
            }
            "smatrix" | "uppertri" => {
                want(2)?;
                let n = parse_usize(&args[0], "matrix size")?;
                let base = Box::new(parse_arg(&args[1])?);
                Ok(if kind == "smatrix" {
                    RingSpec::SMatrix(n, base)
                } else {
                    RingSpec::UpperTri(n, base)
                })
            }
            "table" => {
                want(1)?;
                let path = args[0].strip_prefix("file=").ok_or_else(|| {
                    RingError::InvalidSpec(format!("expected file=..., got `{}`", args[0]))
                })?;
                Ok(RingSpec::Table { path: path.into() })
            }
            // compact single-token forms
            t if t.starts_with("zmod") || t.starts_with("gf") || t.starts_with('(') => {
                want(0)?;
                parse_arg(t)
            }
            other => Err(RingError::InvalidSpec(format!("unknown ring kind `{other}`"))),
        }
    }
}

fn prime_power(q: usize) -> Result<(usize, u32), RingError> {
    if q < 2 {
        return Err(RingError::InvalidSpec(format!("field order {q} < 2")));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut k = 0;
    let mut m = q;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m != 1 {
        return Err(RingError::InvalidSpec(format!("{q} is not a prime power")));
    }
    Ok((p, k))
}

/// Builds the ring described by `spec`.
pub fn build_ring(spec: &RingSpec) -> Result<FiniteRing, RingError> {
    if let Some(n) = spec.order_hint() {
        if n > MAX_BUILD_ORDER {
            return Err(RingError::Capacity {
                what: "ring construction",
                cap: MAX_BUILD_ORDER,
                order: n,
            });
        }
    }
    let ring = match spec {
        RingSpec::ZMod(n) => zmod(*n)?,
        RingSpec::Gf { q, poly } => gf(*q, poly.as_deref())?,
        RingSpec::Product(a, b) => product(&build_ring(a)?, &build_ring(b)?)?,
        RingSpec::SMatrix(n, r) => s_matrix(*n, &build_ring(r)?)?,
        RingSpec::UpperTri(n, r) => upper_triangular(*n, &build_ring(r)?)?,
        RingSpec::Table { path } => table_from_file(path)?,
    };
    let name = spec.to_string();
    let prov = ring.provenance().to_string();
    Ok(ring.with_label(name, prov))
}

pub fn zmod(n: usize) -> Result<FiniteRing, RingError> {
    if n < 2 {
        return Err(RingError::InvalidSpec(format!("zmod needs n >= 2, got {n}")));
    }
    let t = RingTables::from_fns(n, 0, 1, |a, b| (a + b) % n, |a, b| (a * b) % n);
    FiniteRing::from_tables(
        format!("zmod {n}"),
        format!("integers modulo {n}"),
        (0..n).map(|a| a.to_string()).collect(),
        t,
    )
}

fn digits(mut id: usize, base: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = id % base;
            id /= base;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * base + d)
}

fn gf_name(coeffs: &[usize]) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match e {
            0 => String::new(),
            1 => "a".into(),
            _ => format!("a^{e}"),
        };
        terms.push(match (c, e) {
            (_, 0) => c.to_string(),
            (1, _) => var,
            _ => format!("{c}{var}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn gf_tables(p: usize, k: usize, modulus: &[usize]) -> RingTables {
    let q = p.pow(k as u32);
    let mul = |a: usize, b: usize| {
        let (x, y) = (digits(a, p, k), digits(b, p, k));
        let mut prod = vec![0usize; 2 * k];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        // reduce by the monic modulus, highest degree first
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for i in 0..=k {
                let sub = c * modulus[i] % p;
                prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
            }
        }
        undigits(&prod[..k], p)
    };
    let add = |a: usize, b: usize| {
        let (x, y) = (digits(a, p, k), digits(b, p, k));
        let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
        undigits(&s, p)
    };
    RingTables::from_fns(q, 0, 1, add, mul)
}

fn tables_form_field(t: &RingTables) -> bool {
    (0..t.order)
        .filter(|&a| a != t.zero)
        .all(|a| (0..t.order).any(|b| t.mul[a * t.order + b] == t.one))
}

/// GF(p^k) as F_p[a]/(modulus). Without an explicit modulus the first
/// irreducible monic polynomial in coefficient order is used.
pub fn gf(q: usize, poly: Option<&[usize]>) -> Result<FiniteRing, RingError> {
    let (p, k) = prime_power(q)?;
    let k = k as usize;
    let modulus = match poly {
        Some(m) => {
            if m.len() != k + 1 || m[k] != 1 {
                return Err(RingError::InvalidSpec(format!(
                    "modulus {} must be monic of degree {k}",
                    poly_string(m)
                )));
            }
            let t = gf_tables(p, k, m);
            if !tables_form_field(&t) {
                return Err(RingError::InvalidSpec(format!(
                    "modulus {} is reducible over F_{p}",
                    poly_string(m)
                )));
            }
            m.to_vec()
        }
        None => (0..q)
            .map(|id| {
                let mut m = digits(id, p, k);
                m.push(1);
                m
            })
            .find(|m| tables_form_field(&gf_tables(p, k, m)))
            .expect("an irreducible polynomial of every degree exists"),
    };
    let t = gf_tables(p, k, &modulus);
    let names = (0..q).map(|id| gf_name(&digits(id, p, k))).collect();
    FiniteRing::from_tables(
        format!("gf {q}"),
        format!("F_{p}[a]/({})", poly_string(&modulus)),
        names,
        t,
    )
}

pub fn product(a: &FiniteRing, b: &FiniteRing) -> Result<FiniteRing, RingError> {
    let (na, nb) = (a.order(), b.order());
    let split = |id: Elem| (id % na, id / na);
    let join = |x: Elem, y: Elem| x + na * y;
    let t = RingTables::from_fns(
        na * nb,
        join(a.zero(), b.zero()),
        join(a.one(), b.one()),
        |u, v| {
            let ((x1, y1), (x2, y2)) = (split(u), split(v));
            join(a.add(x1, x2), b.add(y1, y2))
        },
        |u, v| {
            let ((x1, y1), (x2, y2)) = (split(u), split(v));
            join(a.mul(x1, x2), b.mul(y1, y2))
        },
    );
    let names = (0..na * nb)
        .map(|id| {
            let (x, y) = split(id);
            format!("({},{})", a.elem_name(x), b.elem_name(y))
        })
        .collect();
    FiniteRing::from_tables(
        format!("product {} {}", a.name(), b.name()),
        format!("direct product of {} and {}", a.name(), b.name()),
        names,
        t,
    )
}

/// A subring of n×n matrices over `base` described by coordinates; each
/// coordinate fills one or more matrix positions, all others are zero.
fn matrix_ring(
    base: &FiniteRing,
    n: usize,
    coords: &[Vec<(usize, usize)>],
    name: String,
    provenance: String,
) -> Result<FiniteRing, RingError> {
    let r = base.order();
    let k = coords.len();
    let order = r
        .checked_pow(k as u32)
        .filter(|&o| o <= MAX_BUILD_ORDER)
        .ok_or(RingError::Capacity {
            what: "matrix ring construction",
            cap: MAX_BUILD_ORDER,
            order: usize::MAX,
        })?;
    let to_matrix = |id: Elem| {
        let mut m = vec![base.zero(); n * n];
        for (c, positions) in digits(id, r, k).into_iter().zip(coords) {
            for &(i, j) in positions {
                m[i * n + j] = c;
            }
        }
        m
    };
    let from_matrix = |m: &[Elem]| {
        let ds: Vec<usize> = coords.iter().map(|pos| m[pos[0].0 * n + pos[0].1]).collect();
        undigits(&ds, r)
    };
    let mats: Vec<Vec<Elem>> = (0..order).map(to_matrix).collect();
    let identity = {
        let mut m = vec![base.zero(); n * n];
        for i in 0..n {
            m[i * n + i] = base.one();
        }
        from_matrix(&m)
    };
    let zero = from_matrix(&vec![base.zero(); n * n]);
    let t = RingTables::from_fns(
        order,
        zero,
        identity,
        |u, v| {
            let s: Vec<Elem> = mats[u]
                .iter()
                .zip(&mats[v])
                .map(|(&x, &y)| base.add(x, y))
                .collect();
            from_matrix(&s)
        },
        |u, v| {
            let (a, b) = (&mats[u], &mats[v]);
            let mut p = vec![base.zero(); n * n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = base.zero();
                    for l in 0..n {
                        acc = base.add(acc, base.mul(a[i * n + l], b[l * n + j]));
                    }
                    p[i * n + j] = acc;
                }
            }
            from_matrix(&p)
        },
    );
    let names = (0..order)
        .map(|id| {
            let parts: Vec<&str> = digits(id, r, k).into_iter().map(|d| base.elem_name(d)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    FiniteRing::from_tables(name, provenance, names, t)
}

/// S_n(R): upper triangular n×n matrices with constant diagonal.
/// Coordinates: the diagonal value, then strictly upper entries row-major.
pub fn s_matrix(n: usize, base: &FiniteRing) -> Result<FiniteRing, RingError> {
    if n < 1 {
        return Err(RingError::InvalidSpec("smatrix needs n >= 1".into()));
    }
    let mut coords = vec![(0..n).map(|i| (i, i)).collect::<Vec<_>>()];
    for i in 0..n {
        for j in i + 1..n {
            coords.push(vec![(i, j)]);
        }
    }
    matrix_ring(
        base,
        n,
        &coords,
        format!("smatrix {n} {}", base.name()),
        format!("constant-diagonal upper triangular {n}x{n} matrices over {}", base.name()),
    )
}

/// Upper triangular n×n matrices; coordinates are the entries (i <= j) row-major.
pub fn upper_triangular(n: usize, base: &FiniteRing) -> Result<FiniteRing, RingError> {
    if n < 1 {
        return Err(RingError::InvalidSpec("uppertri needs n >= 1".into()));
    }
    let coords: Vec<Vec<(usize, usize)>> = (0..n)
        .flat_map(|i| (i..n).map(move |j| vec![(i, j)]))
        .collect();
    matrix_ring(
        base,
        n,
        &coords,
        format!("uppertri {n} {}", base.name()),
        format!("upper triangular {n}x{n} matrices over {}", base.name()),
    )
}

/// Parses the table-file format: a header line `n one=<id>`, then the
/// n×n addition matrix and the n×n multiplication matrix as
/// whitespace-separated integers.
pub fn table_from_str(text: &str, origin: &str) -> Result<FiniteRing, RingError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| RingError::InvalidSpec(format!("{origin}: empty table file")))?;
    let mut h = header.split_whitespace();
    let n = parse_usize(h.next().unwrap_or(""), "table order")?;
    let one = h
        .next()
        .and_then(|t| t.strip_prefix("one="))
        .ok_or_else(|| RingError::InvalidSpec(format!("{origin}: header must be `n one=<id>`")))
        .and_then(|t| parse_usize(t, "id of one"))?;
    if n == 0 || n > MAX_BUILD_ORDER {
        return Err(RingError::InvalidSpec(format!("{origin}: table order {n} out of range")));
    }
    let nums: Vec<usize> = lines
        .flat_map(|l| l.split_whitespace())
        .map(|t| parse_usize(t, "table entry"))
        .collect::<Result<_, _>>()?;
    if nums.len() != 2 * n * n {
        return Err(RingError::InvalidSpec(format!(
            "{origin}: expected {} table entries, found {}",
            2 * n * n,
            nums.len()
        )));
    }
    let (add, mul) = nums.split_at(n * n);
    let zero = (0..n)
        .find(|&z| (0..n).all(|a| add[z * n + a] == a && add[a * n + z] == a))
        .ok_or(RingError::AxiomViolation {
            axiom: crate::ring::Axiom::AdditiveIdentity,
            witness: Vec::new(),
        })?;
    let t = RingTables {
        order: n,
        add: add.to_vec(),
        mul: mul.to_vec(),
        zero,
        one,
    };
    FiniteRing::from_tables(
        format!("table file={origin}"),
        format!("explicit tables from {origin}"),
        (0..n).map(|a| a.to_string()).collect(),
        t,
    )
}

pub fn table_from_file(path: &str) -> Result<FiniteRing, RingError> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| RingError::Io {
        path: path.into(),
        msg: e.to_string(),
    })?;
    table_from_str(&text, path)
}
