//! Truncated Chow rings `Z[h_1..h_k]/(h_i^{n_i+1})` of products of projective
//! spaces, classes in them, and the rational functions `P/Q` built from them.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactalg::{parse_poly, Multidegree, PolyRing, Rationals, VarBlocks};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(AmbientSpec, AmbientSpec),
    #[error("denominator constant term {0} is not a unit")]
    NonUnitDenominator(BigInt),
    #[error("factor {factor} out of range for an ambient with {factors} factors")]
    FactorOutOfRange { factor: usize, factors: usize },
    #[error("power {power} exceeds dimension {dim} of factor {factor}")]
    PowerOutOfRange { factor: usize, power: u32, dim: u32 },
    #[error("a bundle needs at least one summand")]
    EmptyBundle,
    #[error("degree vector of length {got} for an ambient with {expected} factors")]
    DegreeLength { expected: usize, got: usize },
    #[error("malformed JSON: {0}")]
    Json(String),
}

/// A product of projective spaces `P^{n_1} x ... x P^{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmbientSpec {
    dims: Vec<u32>,
}

impl AmbientSpec {
    pub fn new(dims: Vec<u32>) -> Self {
        assert!(!dims.is_empty(), "an ambient has at least one factor");
        Self { dims }
    }

    pub fn projective(n: u32) -> Self {
        Self::new(vec![n])
    }

    pub fn product(n: u32, m: u32) -> Self {
        Self::new(vec![n, m])
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> u32 {
        self.dims.iter().sum()
    }

    /// Hyperplane class names used for printing: `H`; `s, t`; `h0, h1, ...`.
    pub fn class_vars(&self) -> Vec<String> {
        match self.dims.len() {
            1 => vec!["H".into()],
            2 => vec!["s".into(), "t".into()],
            k => (0..k).map(|i| format!("h{i}")).collect(),
        }
    }

    pub fn with_factor(&self, dim: u32) -> Self {
        let mut dims = self.dims.clone();
        dims.push(dim);
        Self { dims }
    }

    pub fn without_factor(&self, factor: usize) -> Self {
        let mut dims = self.dims.clone();
        dims.remove(factor);
        Self { dims }
    }

    /// Whether every factor of `self` is at least as large as in `other`.
    pub fn dominates(&self, other: &AmbientSpec) -> bool {
        self.dims.len() == other.dims.len() && self.dims.iter().zip(&other.dims).all(|(a, b)| a >= b)
    }

    fn contains_exps(&self, e: &[u32]) -> bool {
        e.iter().zip(&self.dims).all(|(a, n)| a <= n)
    }

    pub fn to_json(&self) -> Value {
        json!(self.dims)
    }
}

impl fmt::Display for AmbientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|n| format!("P^{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// Integer polynomial with dense exponent vectors, not truncated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c.into())])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, BigInt::one())])
    }

    /// `1 + sum_i d_i h_i`.
    pub fn linear(nvars: usize, constant: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::constant(nvars, constant);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(unit_exps(nvars, i), BigInt::from(c));
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// The terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (e.clone(), c.clone()));
        Self { nvars: self.nvars, terms: terms.collect() }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c * k)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_bounded(other, None)
    }

    /// Product dropping every term outside the box `e_i <= bounds_i`.
    fn mul_bounded(&self, other: &Self, bounds: Option<&[u32]>) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if bounds.is_some_and(|b| e.iter().zip(b).any(|(x, n)| x > n)) {
                    continue;
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Drops every term with some exponent above its bound.
    pub fn truncate(&self, bounds: &[u32]) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e.iter().zip(bounds).all(|(a, n)| a <= n));
        Self { nvars: self.nvars, terms: terms.map(|(e, c)| (e.clone(), c.clone())).collect() }
    }

    /// Reorders variables: variable `i` of the result is variable `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (perm.iter().map(|&j| e[j]).collect(), c.clone()));
        Self::from_terms(self.nvars, terms)
    }

    /// Ascending total degree; within a degree, earlier variables first.
    fn display_order(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    /// Compact notation: `t + 4t^2`, `s - 3st^2`.
    pub fn render(&self, names: &[String]) -> String {
        self.render_with(names, "", " ")
    }

    /// The polynomial grammar: `t + 4*t^2`, `s - 3*s*t^2`.
    pub fn render_grammar(&self, names: &[String]) -> String {
        self.render_with(names, "*", " ")
    }

    fn render_with(&self, names: &[String], joiner: &str, pad: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.display_order().into_iter().enumerate() {
            let body = render_exps(names, e, joiner);
            let mag = c.abs();
            let term = if body.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                body
            } else {
                format!("{mag}{joiner}{body}")
            };
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!("{pad}{}{pad}", if c.is_negative() { '-' } else { '+' }));
            }
            out.push_str(&term);
        }
        out
    }

    /// Parses the polynomial grammar over the named variables; every
    /// coefficient must be an integer.
    pub fn parse(src: &str, names: &[String]) -> Result<Self, String> {
        let vars = VarBlocks::projective(&[names.to_vec()]).map_err(|e| e.to_string())?;
        let ring = PolyRing::new(Rationals, vars);
        let p = parse_poly(src, &ring).map_err(|e| e.to_string())?;
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return Err(format!("non-integer coefficient {c}"));
            }
            terms.push((m.0.iter().map(|&x| x as u32).collect(), c.to_integer()));
        }
        Ok(Self::from_terms(names.len(), terms))
    }
}

fn unit_exps(nvars: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; nvars];
    e[i] = 1;
    e
}

fn render_exps(names: &[String], e: &[u32], joiner: &str) -> String {
    let mut parts = Vec::new();
    for (name, &x) in names.iter().zip(e) {
        match x {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{x}")),
        }
    }
    parts.join(joiner)
}

/// An element of the truncated Chow ring of an ambient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass {
    ambient: AmbientSpec,
    poly: IntPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChowOp {
    Add,
    Mul,
}

impl ChowClass {
    /// Reduces `poly` modulo the truncation relations.
    pub fn new(ambient: &AmbientSpec, poly: &IntPoly) -> Self {
        assert_eq!(poly.nvars(), ambient.num_factors(), "one variable per factor");
        Self { ambient: ambient.clone(), poly: poly.truncate(ambient.dims()) }
    }

    pub fn zero(ambient: &AmbientSpec) -> Self {
        Self::new(ambient, &IntPoly::zero(ambient.num_factors()))
    }

    /// The fundamental class `[Y] = 1`.
    pub fn one(ambient: &AmbientSpec) -> Self {
        Self::new(ambient, &IntPoly::one(ambient.num_factors()))
    }

    /// The hyperplane class of factor `i`.
    pub fn hyperplane(ambient: &AmbientSpec, i: usize) -> Self {
        Self::new(ambient, &IntPoly::var(ambient.num_factors(), i))
    }

    pub fn monomial(ambient: &AmbientSpec, exps: &[u32], c: impl Into<BigInt>) -> Self {
        Self::new(ambient, &IntPoly::from_terms(ambient.num_factors(), [(exps.to_vec(), c.into())]))
    }

    pub fn ambient(&self) -> &AmbientSpec {
        &self.ambient
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.poly.coefficient(exps)
    }

    fn check(&self, other: &Self) -> Result<(), ChowError> {
        if self.ambient != other.ambient {
            return Err(ChowError::AmbientMismatch(self.ambient.clone(), other.ambient.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        chow_arith(self, other, ChowOp::Add).expect("same ambient")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        chow_arith(self, other, ChowOp::Mul).expect("same ambient")
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { ambient: self.ambient.clone(), poly: self.poly.scale(k) }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.ambient), |acc, _| acc.mul(self))
    }

    /// The part of codimension exactly `c`.
    pub fn codim_part(&self, c: u32) -> Self {
        Self { ambient: self.ambient.clone(), poly: self.poly.homogeneous_part(c) }
    }

    /// Smallest codimension carrying a nonzero coefficient.
    pub fn min_codim(&self) -> Option<u32> {
        self.poly.min_degree()
    }

    /// Reinterprets the class in another ambient with the same factor count,
    /// dropping terms beyond the new truncation.
    pub fn truncate_to(&self, ambient: &AmbientSpec) -> Result<Self, ChowError> {
        if ambient.num_factors() != self.ambient.num_factors() {
            return Err(ChowError::AmbientMismatch(self.ambient.clone(), ambient.clone()));
        }
        Ok(Self::new(ambient, &self.poly))
    }

    pub fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (e, c) in self.poly.terms() {
            let key = format!("({})", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            coeffs.insert(key, bigint_json(c));
        }
        json!({ "ambient": self.ambient.to_json(), "coeffs": coeffs })
    }

    pub fn from_json(v: &Value) -> Result<Self, ChowError> {
        let bad = |m: &str| ChowError::Json(m.to_string());
        let dims: Vec<u32> = v
            .get("ambient")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing ambient"))?
            .iter()
            .map(|d| d.as_u64().and_then(|d| u32::try_from(d).ok()).ok_or_else(|| bad("ambient entries must be small nonnegative integers")))
            .collect::<Result<_, _>>()?;
        if dims.is_empty() {
            return Err(bad("empty ambient"));
        }
        let ambient = AmbientSpec::new(dims);
        let coeffs = v.get("coeffs").and_then(Value::as_object).ok_or_else(|| bad("missing coeffs"))?;
        let mut terms = Vec::new();
        for (k, c) in coeffs {
            let inner = k.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(|| bad("coefficient key must look like (i,j)"))?;
            let e: Vec<u32> = inner.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| bad("bad exponent"))).collect::<Result<_, _>>()?;
            if e.len() != ambient.num_factors() || !ambient.contains_exps(&e) {
                return Err(bad("exponent outside the ambient"));
            }
            terms.push((e, json_bigint(c).ok_or_else(|| bad("coefficient must be an integer"))?));
        }
        Ok(Self::new(&ambient, &IntPoly::from_terms(ambient.num_factors(), terms)))
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(&self.ambient.class_vars()))
    }
}

/// Integers that fit in `i64` serialize as numbers, larger ones as strings.
pub fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

pub fn json_bigint(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn chow_arith(a: &ChowClass, b: &ChowClass, op: ChowOp) -> Result<ChowClass, ChowError> {
    a.check(b)?;
    let poly = match op {
        ChowOp::Add => a.poly.add(&b.poly),
        ChowOp::Mul => a.poly.mul_bounded(&b.poly, Some(a.ambient.dims())),
    };
    Ok(ChowClass { ambient: a.ambient.clone(), poly })
}

/// A direct sum of line bundles `O(d_0) + ... + O(d_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleSpec {
    degrees: Vec<Multidegree>,
}

impl BundleSpec {
    pub fn new(degrees: Vec<Multidegree>) -> Result<Self, ChowError> {
        let Some(first) = degrees.first() else {
            return Err(ChowError::EmptyBundle);
        };
        let k = first.len();
        if let Some(bad) = degrees.iter().find(|d| d.len() != k) {
            return Err(ChowError::DegreeLength { expected: k, got: bad.len() });
        }
        Ok(Self { degrees })
    }

    pub fn degrees(&self) -> &[Multidegree] {
        &self.degrees
    }

    /// The rank `g`.
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn num_factors(&self) -> usize {
        self.degrees[0].len()
    }

    /// `D_j = sum_f d_{j,f} h_f`.
    pub fn divisor(&self, j: usize) -> IntPoly {
        let k = self.num_factors();
        let mut p = IntPoly::zero(k);
        for (f, &d) in self.degrees[j].0.iter().enumerate() {
            p.add_term(unit_exps(k, f), BigInt::from(d));
        }
        p
    }

    /// `prod_j (1 + D_j)`, untruncated.
    pub fn chern_polynomial(&self) -> IntPoly {
        let k = self.num_factors();
        (0..self.rank()).fold(IntPoly::one(k), |acc, j| acc.mul(&IntPoly::one(k).add(&self.divisor(j))))
    }

    /// `prod_j D_j`, the top Chern class.
    pub fn top_chern_polynomial(&self) -> IntPoly {
        (0..self.rank()).fold(IntPoly::one(self.num_factors()), |acc, j| acc.mul(&self.divisor(j)))
    }

    fn check_ambient(&self, ambient: &AmbientSpec) -> Result<(), ChowError> {
        if self.num_factors() != ambient.num_factors() {
            return Err(ChowError::DegreeLength { expected: ambient.num_factors(), got: self.num_factors() });
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!(self.degrees.iter().map(|d| d.0.clone()).collect::<Vec<_>>())
    }
}

pub fn total_chern(bundle: &BundleSpec, ambient: &AmbientSpec) -> Result<ChowClass, ChowError> {
    bundle.check_ambient(ambient)?;
    Ok(ChowClass::new(ambient, &bundle.chern_polynomial()))
}

/// The class `X` with `X * Q = P` in the truncated ring of `ambient`.
pub fn expand_rational(p: &IntPoly, q: &IntPoly, ambient: &AmbientSpec) -> Result<ChowClass, ChowError> {
    let c0 = q.constant_term();
    if !c0.abs().is_one() {
        return Err(ChowError::NonUnitDenominator(c0));
    }
    // Q = c0 (1 - R') with R' nilpotent; 1/Q = c0 * sum_k R'^k
    let q = ChowClass::new(ambient, q);
    let one = ChowClass::one(ambient);
    let r = one.sub(&q.scale(&c0));
    let mut inv = one.clone();
    let mut power = one;
    for _ in 0..ambient.dim() {
        power = power.mul(&r);
        if power.is_zero() {
            break;
        }
        inv = inv.add(&power);
    }
    Ok(ChowClass::new(ambient, p).mul(&inv.scale(&c0)))
}

/// The lowest-degree integer polynomial representing `c`. All relations are
/// pure powers, so this is the polynomial with exponents inside the bounds.
pub fn reduced_representative(c: &ChowClass) -> IntPoly {
    c.poly.clone()
}

/// Keeps the terms with `h_factor^power` and removes that factor.
pub fn coefficient_extract(c: &ChowClass, factor: usize, power: u32) -> Result<ChowClass, ChowError> {
    let dims = c.ambient.dims();
    if factor >= dims.len() || dims.len() == 1 {
        return Err(ChowError::FactorOutOfRange { factor, factors: dims.len() });
    }
    if power > dims[factor] {
        return Err(ChowError::PowerOutOfRange { factor, power, dim: dims[factor] });
    }
    let ambient = c.ambient.without_factor(factor);
    let terms = c.poly.terms().iter().filter(|(e, _)| e[factor] == power).map(|(e, v)| {
        let mut e = e.clone();
        e.remove(factor);
        (e, v.clone())
    });
    Ok(ChowClass::new(&ambient, &IntPoly::from_terms(ambient.num_factors(), terms)))
}

/// `P/Q` together with the bundle and base ambient it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFunction {
    pub p: IntPoly,
    pub q: IntPoly,
    pub bundle: BundleSpec,
    pub base: AmbientSpec,
}

impl ZetaFunction {
    /// Variable names for printing: `t` for one factor, `s, t` for two.
    pub fn vars(&self) -> Vec<String> {
        zeta_vars(self.base.num_factors())
    }

    /// `P/Q` evaluated in a (larger) ambient.
    pub fn evaluate(&self, ambient: &AmbientSpec) -> Result<ChowClass, ChowError> {
        expand_rational(&self.p, &self.q, ambient)
    }

    /// `Q` as a product of the distinct factors `1 + D_j` with multiplicities,
    /// in first-appearance order: `(1+2t)^2`, `(1+s)(1+t)`.
    pub fn render_q_factored(&self) -> String {
        let names = self.vars();
        let mut groups: Vec<(IntPoly, u32)> = Vec::new();
        for j in 0..self.bundle.rank() {
            let f = IntPoly::one(self.bundle.num_factors()).add(&self.bundle.divisor(j));
            match groups.iter_mut().find(|(g, _)| *g == f) {
                Some((_, k)) => *k += 1,
                None => groups.push((f, 1)),
            }
        }
        let single = groups.len() == 1 && groups[0].1 == 1;
        groups
            .iter()
            .map(|(f, k)| {
                let body = f.render_with(&names, "", "");
                match (single, *k) {
                    (true, _) => body,
                    (false, 1) => format!("({body})"),
                    (false, k) => format!("({body})^{k}"),
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let names = self.vars();
        json!({
            "P": self.p.render_grammar(&names),
            "Q": self.q.render_grammar(&names),
            "degrees": self.bundle.to_json(),
        })
    }

    /// Reads the schema back; `base` is not part of it and must be supplied.
    pub fn from_json(v: &Value, base: &AmbientSpec) -> Result<Self, ChowError> {
        let bad = |m: &str| ChowError::Json(m.to_string());
        let names = zeta_vars(base.num_factors());
        let p = IntPoly::parse(v.get("P").and_then(Value::as_str).ok_or_else(|| bad("missing P"))?, &names).map_err(|e| bad(&e))?;
        let q = IntPoly::parse(v.get("Q").and_then(Value::as_str).ok_or_else(|| bad("missing Q"))?, &names).map_err(|e| bad(&e))?;
        let degrees = v
            .get("degrees")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing degrees"))?
            .iter()
            .map(|d| {
                d.as_array()
                    .and_then(|a| a.iter().map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok())).collect::<Option<Vec<u32>>>())
                    .map(Multidegree::new)
                    .ok_or_else(|| bad("degree entries must be lists of nonnegative integers"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let bundle = BundleSpec::new(degrees)?;
        bundle.check_ambient(base)?;
        Ok(Self { p, q, bundle, base: base.clone() })
    }
}

impl fmt::Display for ZetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P = {}; Q = {}", self.p.render(&self.vars()), self.render_q_factored())
    }
}

pub fn zeta_vars(factors: usize) -> Vec<String> {
    match factors {
        1 => vec!["t".into()],
        2 => vec!["s".into(), "t".into()],
        k => (0..k).map(|i| format!("t{i}")).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p1(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_terms(1, coeffs.iter().enumerate().map(|(i, &c)| (vec![i as u32], BigInt::from(c))))
    }

    fn p2(terms: &[((u32, u32), i64)]) -> IntPoly {
        IntPoly::from_terms(2, terms.iter().map(|&((a, b), c)| (vec![a, b], BigInt::from(c))))
    }

    fn bundle(degs: &[&[u32]]) -> BundleSpec {
        BundleSpec::new(degs.iter().map(|d| Multidegree::new(d.to_vec())).collect()).unwrap()
    }

    #[test]
    fn truncated_products() {
        let a = AmbientSpec::projective(2);
        let h = ChowClass::hyperplane(&a, 0);
        assert!(h.mul(&h.pow(2)).is_zero());
        let b = AmbientSpec::product(2, 2);
        let st = ChowClass::hyperplane(&b, 0).add(&ChowClass::hyperplane(&b, 1));
        assert_eq!(st.pow(2).to_string(), "s^2 + 2st + t^2");
        assert_eq!(st.add(&ChowClass::zero(&b)), st);
        let c = ChowClass::one(&AmbientSpec::projective(3));
        assert!(chow_arith(&c, &h, ChowOp::Add).is_err());
    }

    #[test]
    fn chern_classes() {
        let a = AmbientSpec::projective(3);
        assert_eq!(total_chern(&bundle(&[&[2], &[2]]), &a).unwrap().poly(), &p1(&[1, 4, 4]));
        let b = AmbientSpec::product(2, 2);
        let c = total_chern(&bundle(&[&[1, 1], &[1, 1]]), &b).unwrap();
        let lin = IntPoly::linear(2, 1, &[1, 1]);
        assert_eq!(c, ChowClass::new(&b, &lin.pow(2)));
        let a = AmbientSpec::projective(4);
        assert_eq!(total_chern(&bundle(&[&[5]]), &a).unwrap().poly(), &p1(&[1, 5]));
    }

    #[test]
    fn rational_expansions() {
        let a = AmbientSpec::projective(3);
        let d = 3;
        let x = expand_rational(&p1(&[0, d]), &p1(&[1, d]), &a).unwrap();
        assert_eq!(x.poly(), &p1(&[0, d, -d * d, d * d * d]));
        assert_eq!(expand_rational(&p1(&[1]), &p1(&[1]), &a).unwrap(), ChowClass::one(&a));
        let a = AmbientSpec::projective(4);
        let x = expand_rational(&p1(&[0, 1, 4]), &p1(&[1, 4, 4]), &a).unwrap();
        assert_eq!(x.poly(), &p1(&[0, 1, 0, -4, 16]));
        assert_eq!(expand_rational(&p1(&[1]), &p1(&[2, 1]), &a).unwrap_err(), ChowError::NonUnitDenominator(2.into()));
        // constant term -1 is a unit too
        let x = expand_rational(&p1(&[1]), &p1(&[-1, 1]), &a).unwrap();
        assert_eq!(x.poly(), &p1(&[-1, -1, -1, -1, -1]));
    }

    #[test]
    fn representatives() {
        let a = AmbientSpec::projective(2);
        assert_eq!(reduced_representative(&ChowClass::hyperplane(&a, 0).pow(2)), p1(&[0, 0, 1]));
        assert!(reduced_representative(&ChowClass::zero(&a)).is_zero());
        let b = AmbientSpec::product(2, 2);
        let f = p2(&[((1, 0), 1), ((2, 0), 1), ((1, 1), 2), ((0, 2), 1)]);
        assert_eq!(reduced_representative(&ChowClass::new(&b, &f)), f);
    }

    #[test]
    fn extraction() {
        let a = AmbientSpec::product(2, 1);
        let c = ChowClass::new(&a, &p2(&[((2, 0), 2), ((1, 1), 1)]));
        let e = coefficient_extract(&c, 1, 1).unwrap();
        assert_eq!(e, ChowClass::hyperplane(&AmbientSpec::projective(2), 0));
        let no_u = ChowClass::new(&a, &p2(&[((2, 0), 2)]));
        assert!(coefficient_extract(&no_u, 1, 1).unwrap().is_zero());
        let g = ChowClass::new(&a, &p2(&[((1, 1), 7)]));
        assert_eq!(coefficient_extract(&g, 1, 1).unwrap().poly(), &p1(&[0, 7]));
        assert!(coefficient_extract(&g, 1, 2).is_err());
    }

    #[test]
    fn printing() {
        let c = ChowClass::new(&AmbientSpec::projective(3), &p1(&[0, 1, 0, -4]));
        assert_eq!(c.to_string(), "H - 4H^3");
        let s = ChowClass::new(&AmbientSpec::product(2, 2), &p2(&[((1, 0), 1), ((2, 0), -1), ((0, 2), 1), ((1, 2), -3), ((2, 2), 6)]));
        assert_eq!(s.to_string(), "s - s^2 + t^2 - 3st^2 + 6s^2t^2");
        assert_eq!(ChowClass::zero(&AmbientSpec::projective(1)).to_string(), "0");
        let z = ZetaFunction { p: p1(&[0, 1, 4]), q: p1(&[1, 4, 4]), bundle: bundle(&[&[2], &[2]]), base: AmbientSpec::projective(3) };
        assert_eq!(z.to_string(), "P = t + 4t^2; Q = (1+2t)^2");
        let z = ZetaFunction {
            p: p2(&[((1, 1), 1)]),
            q: p2(&[((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]),
            bundle: bundle(&[&[1, 0], &[0, 1]]),
            base: AmbientSpec::product(2, 2),
        };
        assert_eq!(z.to_string(), "P = st; Q = (1+s)(1+t)");
        let z = ZetaFunction { p: p1(&[0, 3]), q: p1(&[1, 3]), bundle: bundle(&[&[3]]), base: AmbientSpec::projective(2) };
        assert_eq!(z.to_string(), "P = 3t; Q = 1+3t");
    }

    #[test]
    fn json_round_trips() {
        let s = ChowClass::new(&AmbientSpec::product(2, 2), &p2(&[((1, 0), 1), ((2, 2), 6)]));
        let v = s.to_json();
        assert_eq!(v.to_string(), r#"{"ambient":[2,2],"coeffs":{"(1,0)":1,"(2,2)":6}}"#);
        assert_eq!(ChowClass::from_json(&v).unwrap(), s);
        let huge = ChowClass::new(&AmbientSpec::projective(1), &IntPoly::constant(1, BigInt::from(i64::MAX) * 4));
        assert_eq!(ChowClass::from_json(&huge.to_json()).unwrap(), huge);

        let z = ZetaFunction { p: p1(&[0, 1, 4]), q: p1(&[1, 4, 4]), bundle: bundle(&[&[2], &[2]]), base: AmbientSpec::projective(3) };
        let v = z.to_json();
        assert_eq!(v["P"], "t + 4*t^2");
        assert_eq!(ZetaFunction::from_json(&v, &z.base).unwrap(), z);
    }

    fn arb_poly2() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(((0u32..4, 0u32..4), -5i64..6), 0..6).prop_map(|t| p2(&t))
    }

    fn arb_unit_q() -> impl Strategy<Value = IntPoly> {
        (prop::bool::ANY, arb_poly2()).prop_map(|(neg, r)| {
            let r = r.sub(&IntPoly::constant(2, r.constant_term()));
            r.add(&IntPoly::constant(2, if neg { -1 } else { 1 }))
        })
    }

    proptest! {
        #[test]
        fn expansion_inverts_multiplication(p in arb_poly2(), q in arb_unit_q(), n in 0u32..4, m in 0u32..4) {
            let a = AmbientSpec::product(n, m);
            let x = expand_rational(&p, &q, &a).unwrap();
            prop_assert_eq!(x.mul(&ChowClass::new(&a, &q)), ChowClass::new(&a, &p));
        }

        #[test]
        fn expansion_commutes_with_truncation(p in arb_poly2(), q in arb_unit_q(), n in 0u32..4, m in 0u32..4, dn in 0u32..3, dm in 0u32..3) {
            let small = AmbientSpec::product(n, m);
            let big = AmbientSpec::product(n + dn, m + dm);
            let x = expand_rational(&p, &q, &big).unwrap().truncate_to(&small).unwrap();
            prop_assert_eq!(x, expand_rational(&p, &q, &small).unwrap());
        }

        #[test]
        fn representative_inverts_reduction(p in arb_poly2()) {
            let a = AmbientSpec::product(3, 3);
            prop_assert_eq!(reduced_representative(&ChowClass::new(&a, &p)), p);
        }

        #[test]
        fn chern_degree_bounded_by_rank(degs in prop::collection::vec((0u32..4, 0u32..4), 1..5)) {
            let b = BundleSpec::new(degs.iter().map(|&(a, b)| Multidegree::new(vec![a, b])).collect()).unwrap();
            let c = total_chern(&b, &AmbientSpec::product(5, 5)).unwrap();
            prop_assert!(c.poly().total_degree().unwrap() <= b.rank() as u32);
        }
    }
}
