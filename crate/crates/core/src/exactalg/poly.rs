use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{AlgError, Field, Monomial, VarBlocks};

/// Coefficient field plus variable layout.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: VarBlocks,
}

pub type RingRef<F> = Arc<PolyRing<F>>;

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: VarBlocks) -> RingRef<F> {
        Arc::new(Self { field, vars })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &VarBlocks {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.num_vars()
    }
}

fn same_ring<F: Field>(a: &RingRef<F>, b: &RingRef<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Sparse polynomial; the map never stores a zero coefficient.
#[derive(Clone)]
pub struct MultiPoly<F: Field> {
    ring: RingRef<F>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl<F: Field> Eq for MultiPoly<F> {}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Ring-checked arithmetic.
pub fn poly_arith<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, op: ArithOp) -> Result<MultiPoly<F>, AlgError> {
    if !same_ring(&a.ring, &b.ring) {
        return Err(AlgError::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => a.add_unchecked(b, false),
        ArithOp::Sub => a.add_unchecked(b, true),
        ArithOp::Mul => a.mul_unchecked(b),
    })
}

/// Simultaneous substitution of variables (by name) inside `f`'s ring.
pub fn substitute<F: Field>(f: &MultiPoly<F>, assignments: &HashMap<String, MultiPoly<F>>) -> Result<MultiPoly<F>, AlgError> {
    let vars = f.ring.vars();
    let mut images: Vec<MultiPoly<F>> = (0..f.ring.num_vars()).map(|i| MultiPoly::var_index(&f.ring, i)).collect();
    for (name, image) in assignments {
        let i = vars.var_index(name).ok_or_else(|| AlgError::UnknownVariable(name.clone()))?;
        if !same_ring(&image.ring, &f.ring) {
            return Err(AlgError::RingMismatch);
        }
        images[i] = image.clone();
    }
    f.map_into(&f.ring, &images)
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(ring: &RingRef<F>) -> Self {
        Self { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef<F>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(ring.num_vars()), c)
    }

    pub fn one(ring: &RingRef<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn monomial(ring: &RingRef<F>, mono: Monomial, c: F::Elem) -> Self {
        debug_assert_eq!(mono.len(), ring.num_vars());
        let mut terms = BTreeMap::new();
        if !ring.field().is_zero(&c) {
            terms.insert(mono, c);
        }
        Self { ring: ring.clone(), terms }
    }

    pub fn var_index(ring: &RingRef<F>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.num_vars(), i), ring.field().one())
    }

    pub fn var(ring: &RingRef<F>, name: &str) -> Result<Self, AlgError> {
        let i = ring.vars().var_index(name).ok_or_else(|| AlgError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(ring, i))
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms(ring: &RingRef<F>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let field = ring.field();
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ring.num_vars());
            match map.get_mut(&m) {
                Some(existing) => {
                    *existing = field.add(existing, &c);
                    if field.is_zero(existing) {
                        map.remove(&m);
                    }
                }
                None => {
                    if !field.is_zero(&c) {
                        map.insert(m, c);
                    }
                }
            }
        }
        Self { ring: ring.clone(), terms: map }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F::Elem> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, F::Elem> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Whether the polynomial is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    pub fn coefficient(&self, mono: &Monomial) -> F::Elem {
        self.terms.get(mono).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), field.mul(a, c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        let field = self.field();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if subtract { field.neg(c) } else { c.clone() };
            match terms.get_mut(m) {
                Some(existing) => {
                    *existing = field.add(existing, &c);
                    if field.is_zero(existing) {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c);
                }
            }
        }
        Self { ring: self.ring.clone(), terms }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let field = self.field();
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.push((m1.mul(m2), field.mul(c1, c2)));
            }
        }
        Self::from_terms(&self.ring, out)
    }

    /// Ring homomorphism over the same field sending variable `i` to `images[i]`.
    pub fn map_into(&self, target: &RingRef<F>, images: &[MultiPoly<F>]) -> Result<MultiPoly<F>, AlgError> {
        self.map_with(target, images, |c| Ok(c.clone()))
    }

    /// Ring homomorphism that also converts coefficients (e.g. reduction mod p).
    pub fn map_across<G: Field>(&self, target: &RingRef<G>, images: &[MultiPoly<G>]) -> Result<MultiPoly<G>, AlgError>
    where
        F: CoeffInto<G>,
    {
        self.map_with(target, images, |c| self.field().coeff_into(c, target.field()))
    }

    fn map_with<G: Field>(
        &self,
        target: &RingRef<G>,
        images: &[MultiPoly<G>],
        conv: impl Fn(&F::Elem) -> Result<G::Elem, AlgError>,
    ) -> Result<MultiPoly<G>, AlgError> {
        assert_eq!(images.len(), self.ring.num_vars(), "one image per variable");
        if images.iter().any(|im| !same_ring(&im.ring, target)) {
            return Err(AlgError::RingMismatch);
        }
        let mut power_cache: HashMap<(usize, u16), MultiPoly<G>> = HashMap::new();
        let mut acc = MultiPoly::zero(target);
        for (mono, coeff) in &self.terms {
            let mut term = MultiPoly::constant(target, conv(coeff)?);
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = power_cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u32));
                term = term.mul_unchecked(p);
            }
            acc = acc.add_unchecked(&term, false);
        }
        Ok(acc)
    }

    /// Reinterprets the polynomial in `target`, matching variables by name.
    /// Every variable actually used must exist in `target`.
    pub fn embed<G: Field>(&self, target: &RingRef<G>) -> Result<MultiPoly<G>, AlgError>
    where
        F: CoeffInto<G>,
    {
        self.embed_with(target, |c| self.field().coeff_into(c, target.field()))
    }

    /// [`MultiPoly::embed`] into a ring over the same field.
    pub fn relabel(&self, target: &RingRef<F>) -> Result<MultiPoly<F>, AlgError> {
        if target.field() != self.field() {
            return Err(AlgError::RingMismatch);
        }
        self.embed_with(target, |c| Ok(c.clone()))
    }

    fn embed_with<G: Field>(
        &self,
        target: &RingRef<G>,
        conv: impl Fn(&F::Elem) -> Result<G::Elem, AlgError>,
    ) -> Result<MultiPoly<G>, AlgError> {
        let src = self.ring.vars();
        let dst = target.vars();
        let positions: Vec<Option<usize>> = src.names().map(|n| dst.var_index(n)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (mono, coeff) in &self.terms {
            let mut exps = Monomial::one(target.num_vars());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = positions[i].ok_or_else(|| AlgError::UnknownVariable(src.var_name(i).to_string()))?;
                exps.0[j] = e;
            }
            terms.push((exps, conv(coeff)?));
        }
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// Divides by the leading (largest in lex) coefficient.
    pub fn monic_lex(&self) -> Self {
        match self.terms.values().next_back() {
            Some(c) => self.scale(&self.field().inv(c).expect("nonzero")),
            None => self.clone(),
        }
    }

    pub(crate) fn render_term(&self, mono: &Monomial, coeff: &F::Elem) -> String {
        let body = render_monomial(self.ring.vars(), mono);
        let field = self.field();
        let c = field.render(coeff);
        if body.is_empty() {
            c
        } else if field.is_one(coeff) {
            body
        } else if c == "-1" {
            format!("-{body}")
        } else {
            format!("{c}*{body}")
        }
    }
}

fn render_monomial(vars: &VarBlocks, mono: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in mono.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.var_name(i).to_string()),
            _ => parts.push(format!("{}^{}", vars.var_name(i), e)),
        }
    }
    parts.join("*")
}

/// Coefficient conversion between fields (identity, or reduction mod p).
pub trait CoeffInto<G: Field>: Field {
    fn coeff_into(&self, c: &Self::Elem, target: &G) -> Result<G::Elem, AlgError>;
}

impl<G: Field> CoeffInto<G> for super::Rationals {
    fn coeff_into(&self, c: &Self::Elem, target: &G) -> Result<G::Elem, AlgError> {
        target.from_rational(c)
    }
}

impl CoeffInto<super::PrimeField> for super::PrimeField {
    fn coeff_into(&self, c: &u64, target: &super::PrimeField) -> Result<u64, AlgError> {
        if target == self {
            Ok(*c)
        } else {
            Err(AlgError::RingMismatch)
        }
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    /// Terms by descending total degree, then descending lex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let t = self.render_term(m, c);
            if k == 0 {
                write!(f, "{t}")?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Add for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: Self) -> MultiPoly<F> {
        poly_arith(self, rhs, ArithOp::Add).expect("operands share a ring")
    }
}

impl<F: Field> Sub for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: Self) -> MultiPoly<F> {
        poly_arith(self, rhs, ArithOp::Sub).expect("operands share a ring")
    }
}

impl<F: Field> Mul for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: Self) -> MultiPoly<F> {
        poly_arith(self, rhs, ArithOp::Mul).expect("operands share a ring")
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        self.scale(&self.field().neg(&self.field().one()))
    }
}
