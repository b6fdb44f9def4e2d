//! Gröbner bases and the ideal operations built on them.

mod buchberger;
mod order;

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::exactalg::{AlgError, Block, BlockKind, Field, Monomial, MultiPoly, PolyRing, RingRef};

use buchberger::{buchberger, sorted_terms, terms_to_poly, Reducer};
pub use order::TermOrder;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("cannot saturate by the zero ideal")]
    ZeroSaturator,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("can only eliminate whole variable blocks; `{0}` does not cover its block")]
    PartialBlock(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// descending leading monomial. The zero ideal has the empty basis.
pub fn groebner_basis<F: Field>(gens: &[MultiPoly<F>], order: &TermOrder) -> Vec<MultiPoly<F>> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let input = gens.iter().map(|g| sorted_terms(g, order)).collect();
    buchberger(ring.field(), order, input).into_iter().map(|t| terms_to_poly(&ring, t)).collect()
}

/// Remainder of `f` modulo a Gröbner basis for `order`.
pub fn normal_form<F: Field>(f: &MultiPoly<F>, basis: &[MultiPoly<F>], order: &TermOrder) -> MultiPoly<F> {
    let sorted: Vec<_> = basis.iter().filter(|g| !g.is_zero()).map(|g| sorted_terms(g, order)).collect();
    let refs: Vec<_> = sorted.iter().map(|t| (t, 0u32)).collect();
    let red = Reducer { field: f.field(), order };
    let (rem, _) = red.reduce(sorted_terms(f, order), 0, &refs);
    terms_to_poly(f.ring(), rem)
}

/// An ideal given by generators, with its grevlex basis computed at most once.
#[derive(Clone)]
pub struct IdealHandle<F: Field> {
    ring: RingRef<F>,
    gens: Vec<MultiPoly<F>>,
    basis: Arc<OnceLock<Vec<MultiPoly<F>>>>,
}

impl<F: Field> std::fmt::Debug for IdealHandle<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl<F: Field> IdealHandle<F> {
    pub fn new(ring: &RingRef<F>, gens: Vec<MultiPoly<F>>) -> Result<Self, AlgError> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(AlgError::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self { ring: ring.clone(), gens, basis: Arc::new(OnceLock::new()) })
    }

    pub fn unit(ring: &RingRef<F>) -> Self {
        Self::new(ring, vec![MultiPoly::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly<F>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The reduced grevlex basis, cached.
    pub fn basis(&self) -> &[MultiPoly<F>] {
        self.basis.get_or_init(|| groebner_basis(&self.gens, &TermOrder::GRevLex))
    }

    pub fn basis_for(&self, order: &TermOrder) -> Vec<MultiPoly<F>> {
        match order {
            TermOrder::GRevLex => self.basis().to_vec(),
            _ => groebner_basis(&self.gens, order),
        }
    }

    pub fn contains(&self, f: &MultiPoly<F>) -> bool {
        normal_form(f, self.basis(), &TermOrder::GRevLex).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.basis().first().is_some_and(|g| g.is_unit())
    }

    /// Equality of ideals (comparison of reduced bases).
    pub fn same_ideal(&self, other: &Self) -> bool {
        self.ring == other.ring && self.basis() == other.basis()
    }

    /// The same ideal presented by its reduced grevlex basis.
    pub fn reduced(&self) -> Self {
        Self::new(&self.ring, self.basis().to_vec()).expect("same ring")
    }
}

/// Ring with one extra auxiliary block of `count` fresh variables.
fn with_aux_block<F: Field>(ring: &RingRef<F>, stem: &str, count: usize) -> Result<RingRef<F>, AlgError> {
    let stem = ring.vars().fresh_stem(stem, count);
    let names = (0..count).map(|k| format!("{stem}{k}")).collect();
    let vars = ring.vars().with_block(Block { names, kind: BlockKind::Auxiliary })?;
    Ok(PolyRing::new(ring.field().clone(), vars))
}

/// Generators of `I ∩ k[remaining variables]` living in `target`.
fn eliminate_into<F: Field>(gens: &[MultiPoly<F>], eliminated: &[usize], target: &RingRef<F>) -> Result<IdealHandle<F>, AlgError> {
    let order = TermOrder::elimination(eliminated.iter().copied());
    let basis = groebner_basis(gens, &order);
    let kept: Vec<MultiPoly<F>> = basis
        .iter()
        .filter(|g| g.terms().keys().all(|m| order.is_free_of_eliminated(m)))
        .map(|g| g.relabel(target))
        .collect::<Result<_, _>>()?;
    IdealHandle::new(target, kept)
}

/// `I ∩ k[variables outside drop]`. `drop` must consist of whole blocks;
/// the result lives in the ring with those blocks removed.
pub fn eliminate<F: Field>(ideal: &IdealHandle<F>, drop: &[&str]) -> Result<IdealHandle<F>, IdealError> {
    let vars = ideal.ring().vars();
    let mut blocks = Vec::new();
    let mut indices = Vec::new();
    for name in drop {
        let i = vars.var_index(name).ok_or_else(|| AlgError::UnknownVariable(name.to_string()))?;
        let b = vars.block_of(i);
        if !blocks.contains(&b) {
            blocks.push(b);
        }
        indices.push(i);
    }
    for &b in &blocks {
        for i in vars.block_range(b) {
            if !indices.contains(&i) {
                return Err(IdealError::PartialBlock(vars.var_name(i).to_string()));
            }
        }
    }
    if blocks.is_empty() {
        return Ok(ideal.clone());
    }
    let target = PolyRing::new(ideal.ring().field().clone(), vars.without_blocks(&blocks)?);
    Ok(eliminate_into(ideal.generators(), &indices, &target)?)
}

/// `I : f^∞` via an auxiliary variable `w`: eliminate `w` from `I + (1 - w f)`.
pub fn saturate_by_element<F: Field>(ideal: &IdealHandle<F>, f: &MultiPoly<F>) -> Result<IdealHandle<F>, IdealError> {
    if f.is_zero() {
        return Err(IdealError::ZeroSaturator);
    }
    if f.is_unit() {
        return Ok(ideal.clone());
    }
    let ring = ideal.ring();
    let big = with_aux_block(ring, "w", 1)?;
    let w_index = ring.num_vars();
    let w = MultiPoly::var_index(&big, w_index);
    let mut gens: Vec<MultiPoly<F>> = ideal.generators().iter().map(|g| g.relabel(&big)).collect::<Result<_, _>>()?;
    gens.push(&MultiPoly::one(&big) - &(&w * &f.relabel(&big)?));
    Ok(eliminate_into(&gens, &[w_index], ring)?)
}

/// `I ∩ J` via `t I + (1 - t) J`, eliminating `t`.
pub fn intersect<F: Field>(a: &IdealHandle<F>, b: &IdealHandle<F>) -> Result<IdealHandle<F>, IdealError> {
    let ring = a.ring();
    if b.ring() != ring {
        return Err(AlgError::RingMismatch.into());
    }
    if a.is_unit() {
        return Ok(b.clone());
    }
    if b.is_unit() {
        return Ok(a.clone());
    }
    let big = with_aux_block(ring, "t", 1)?;
    let t_index = ring.num_vars();
    let t = MultiPoly::var_index(&big, t_index);
    let one_minus_t = &MultiPoly::one(&big) - &t;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(&t * &g.relabel(&big)?);
    }
    for g in b.generators() {
        gens.push(&one_minus_t * &g.relabel(&big)?);
    }
    Ok(eliminate_into(&gens, &[t_index], ring)?)
}

/// `I : J^∞`, as the intersection of `I : f^∞` over the generators `f` of `J`.
pub fn saturate<F: Field>(ideal: &IdealHandle<F>, by: &IdealHandle<F>) -> Result<IdealHandle<F>, IdealError> {
    if by.ring() != ideal.ring() {
        return Err(AlgError::RingMismatch.into());
    }
    if by.is_zero() {
        return Err(IdealError::ZeroSaturator);
    }
    if by.is_unit() {
        return Ok(ideal.clone());
    }
    let mut acc: Option<IdealHandle<F>> = None;
    for f in by.basis() {
        let part = saturate_by_element(ideal, f)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect(&prev, &part)?,
        });
    }
    Ok(acc.expect("nonzero saturator has a generator").reduced())
}

fn pure_power_bounds<F: Field>(basis: &[MultiPoly<F>], nvars: usize) -> Option<Vec<u16>> {
    let mut bounds: Vec<Option<u16>> = vec![None; nvars];
    for g in basis {
        let lm = leading_monomial(g);
        let support: Vec<usize> = (0..nvars).filter(|&i| lm.0[i] > 0).collect();
        if let [i] = support[..] {
            let e = lm.0[i];
            bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
        }
    }
    bounds.into_iter().collect()
}

fn leading_monomial<F: Field>(g: &MultiPoly<F>) -> Monomial {
    g.terms()
        .keys()
        .max_by(|a, b| TermOrder::GRevLex.cmp(a, b))
        .expect("basis elements are nonzero")
        .clone()
}

/// Whether the quotient ring is finite dimensional: every variable has a
/// pure power among the grevlex leading monomials.
pub fn is_zero_dimensional<F: Field>(ideal: &IdealHandle<F>) -> bool {
    ideal.is_unit() || pure_power_bounds(ideal.basis(), ideal.ring().num_vars()).is_some()
}

/// Number of standard monomials, i.e. `dim_k k[x]/I`.
pub fn quotient_length<F: Field>(ideal: &IdealHandle<F>) -> Result<u64, IdealError> {
    if ideal.is_unit() {
        return Ok(0);
    }
    let nvars = ideal.ring().num_vars();
    let bounds = pure_power_bounds(ideal.basis(), nvars).ok_or(IdealError::NotZeroDimensional)?;
    let leads: Vec<Monomial> = ideal.basis().iter().map(leading_monomial).collect();
    let mut count = 0u64;
    let mut current = Monomial::one(nvars);
    count_standard(&leads, &bounds, 0, &mut current, &mut count);
    Ok(count)
}

fn count_standard(leads: &[Monomial], bounds: &[u16], var: usize, current: &mut Monomial, count: &mut u64) {
    if var == bounds.len() {
        *count += 1;
        return;
    }
    for e in 0..bounds[var] {
        current.0[var] = e;
        // divisibility is monotone in the exponents still to be chosen being zero
        if leads.iter().any(|l| l.divides(current)) {
            break;
        }
        count_standard(leads, bounds, var + 1, current, count);
    }
    current.0[var] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, PrimeField, Rationals, VarBlocks};

    fn ring_q(blocks: &[&[&str]]) -> RingRef<Rationals> {
        let b: Vec<Vec<&str>> = blocks.iter().map(|b| b.to_vec()).collect();
        PolyRing::new(Rationals, VarBlocks::projective(&b).unwrap())
    }

    fn ring_p(blocks: &[&[&str]]) -> RingRef<PrimeField> {
        let b: Vec<Vec<&str>> = blocks.iter().map(|b| b.to_vec()).collect();
        PolyRing::new(PrimeField::new(PrimeField::DEFAULT_PRIME).unwrap(), VarBlocks::projective(&b).unwrap())
    }

    fn polys<F: Field>(r: &RingRef<F>, srcs: &[&str]) -> Vec<MultiPoly<F>> {
        srcs.iter().map(|s| parse_poly(s, r).unwrap()).collect()
    }

    fn ideal<F: Field>(r: &RingRef<F>, srcs: &[&str]) -> IdealHandle<F> {
        IdealHandle::new(r, polys(r, srcs)).unwrap()
    }

    #[test]
    fn already_reduced_basis() {
        let r = ring_q(&[&["x", "y"]]);
        assert_eq!(groebner_basis(&polys(&r, &["x^2", "x*y"]), &TermOrder::GRevLex), polys(&r, &["x^2", "x*y"]));
    }

    #[test]
    fn linear_system_char_zero() {
        let r = ring_q(&[&["x", "y"]]);
        assert_eq!(groebner_basis(&polys(&r, &["x - y", "x + y"]), &TermOrder::GRevLex), polys(&r, &["x", "y"]));
    }

    #[test]
    fn unit_ideal_basis() {
        let r = ring_q(&[&["x", "y"]]);
        assert_eq!(groebner_basis(&polys(&r, &["3"]), &TermOrder::GRevLex), polys(&r, &["1"]));
        assert!(groebner_basis::<Rationals>(&[], &TermOrder::GRevLex).is_empty());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring_q(&[&["x", "y"]]);
        let b = polys(&r, &["x^2 - y^2"]);
        assert_eq!(normal_form(&parse_poly("x^2", &r).unwrap(), &b, &TermOrder::GRevLex), parse_poly("y^2", &r).unwrap());
        assert!(normal_form(&parse_poly("x^3 - x*y^2", &r).unwrap(), &b, &TermOrder::GRevLex).is_zero());
        let bx = polys(&r, &["x"]);
        assert_eq!(normal_form(&parse_poly("y", &r).unwrap(), &bx, &TermOrder::GRevLex), parse_poly("y", &r).unwrap());
    }

    #[test]
    fn cyclic_three_basis_is_groebner() {
        // every S-polynomial of the output reduces to zero and inputs are members
        let r = ring_p(&[&["a", "b", "c"]]);
        let gens = polys(&r, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]);
        let basis = groebner_basis(&gens, &TermOrder::GRevLex);
        for g in &gens {
            assert!(normal_form(g, &basis, &TermOrder::GRevLex).is_zero());
        }
        let i = IdealHandle::new(&r, gens).unwrap();
        assert_eq!(quotient_length(&i).unwrap(), 6);
    }

    #[test]
    fn saturation_removes_embedded_point() {
        let r = ring_q(&[&["x", "y"]]);
        let i = ideal(&r, &["x^2", "x*y"]);
        let m = ideal(&r, &["x", "y"]);
        let s = saturate(&i, &m).unwrap();
        assert!(s.same_ideal(&ideal(&r, &["x"])));
    }

    #[test]
    fn saturation_by_unit_and_zero() {
        let r = ring_q(&[&["x", "y"]]);
        let i = ideal(&r, &["x^2", "x*y"]);
        assert!(saturate(&i, &IdealHandle::unit(&r)).unwrap().same_ideal(&i));
        let zero = IdealHandle::new(&r, vec![]).unwrap();
        assert_eq!(saturate(&i, &zero).unwrap_err(), IdealError::ZeroSaturator);
    }

    #[test]
    fn prime_graph_ideal_is_saturated() {
        let r = ring_q(&[&["x", "y", "z"], &["u0", "u1"]]);
        let i = ideal(&r, &["x*u1 - y*u0"]);
        let j = ideal(&r, &["x^2", "x*y"]);
        let s = saturate(&i, &j).unwrap();
        assert!(s.same_ideal(&i));
    }

    #[test]
    fn elimination_examples() {
        let r = ring_q(&[&["x", "y"], &["w"]]);
        let i = ideal(&r, &["w*x - 1", "x - y"]);
        let e = eliminate(&i, &["w"]).unwrap();
        let small = ring_q(&[&["x", "y"]]);
        assert!(e.same_ideal(&ideal(&small, &["x - y"])));
        assert!(eliminate(&i, &[]).unwrap().same_ideal(&i));

        let r = ring_q(&[&["x", "y"], &["u"]]);
        let e = eliminate(&ideal(&r, &["x - u", "y - u"]), &["u"]).unwrap();
        assert!(e.same_ideal(&ideal(&small, &["x - y"])));

        let r = ring_q(&[&["x", "y"]]);
        assert!(matches!(eliminate(&ideal(&r, &["x"]), &["x"]), Err(IdealError::PartialBlock(_))));
    }

    #[test]
    fn zero_dimensionality() {
        let r = ring_q(&[&["x", "y"]]);
        assert!(is_zero_dimensional(&ideal(&r, &["x^2", "y"])));
        assert!(!is_zero_dimensional(&ideal(&r, &["x"])));
        assert!(is_zero_dimensional(&ideal(&r, &["1"])));
    }

    #[test]
    fn quotient_lengths() {
        let r = ring_q(&[&["x", "y"]]);
        assert_eq!(quotient_length(&ideal(&r, &["x^2", "y"])).unwrap(), 2);
        assert_eq!(quotient_length(&ideal(&r, &["1"])).unwrap(), 0);
        assert_eq!(quotient_length(&ideal(&r, &["x"])).unwrap_err(), IdealError::NotZeroDimensional);
        let rp = ring_p(&[&["x", "y"]]);
        assert_eq!(quotient_length(&ideal(&rp, &["x^2 - 1", "y - x"])).unwrap(), 2);
    }

    #[test]
    fn shuffled_generators_same_basis() {
        let r = ring_p(&[&["x", "y", "z"]]);
        let a = polys(&r, &["x^2*y - z^3", "x*y*z - y^2", "x^3 + y*z - 2*z^2"]);
        let mut b = a.clone();
        b.reverse();
        b[0] = &b[0] + &b[2];
        assert_eq!(groebner_basis(&a, &TermOrder::GRevLex), groebner_basis(&b, &TermOrder::GRevLex));
    }
}
