//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller installation of critical pairs.

use std::cmp::Ordering;

use crate::exactalg::{Field, Monomial, MultiPoly, RingRef};

use super::TermOrder;

/// Terms sorted strictly descending in the active order.
pub(crate) type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

pub(crate) fn sorted_terms<F: Field>(f: &MultiPoly<F>, order: &TermOrder) -> Terms<F> {
    let mut terms: Terms<F> = f.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    terms
}

/// `p - c * m * g`, merging two descending term lists.
fn sub_scaled<F: Field>(field: &F, order: &TermOrder, p: &[(Monomial, F::Elem)], c: &F::Elem, m: &Monomial, g: &[(Monomial, F::Elem)]) -> Terms<F> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), field.mul(gc, c))).peekable();
    while i < p.len() {
        match gi.peek() {
            None => break,
            Some((gm, gc)) => match order.cmp(&p[i].0, gm) {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gm.clone(), field.neg(gc)));
                    gi.next();
                }
                Ordering::Equal => {
                    let v = field.sub(&p[i].1, gc);
                    if !field.is_zero(&v) {
                        out.push((gm.clone(), v));
                    }
                    i += 1;
                    gi.next();
                }
            },
        }
    }
    out.extend_from_slice(&p[i..]);
    for (gm, gc) in gi {
        out.push((gm, field.neg(&gc)));
    }
    out
}

pub(crate) struct Reducer<'a, F: Field> {
    pub field: &'a F,
    pub order: &'a TermOrder,
}

impl<F: Field> Reducer<'_, F> {
    /// Full reduction of `p` by the listed polynomials. Returns the remainder
    /// and its sugar.
    pub fn reduce(&self, mut p: Terms<F>, mut sugar: u32, basis: &[(&Terms<F>, u32)]) -> (Terms<F>, u32) {
        let mut rem: Terms<F> = Vec::new();
        let mut start = 0;
        while start < p.len() {
            let (lm, lc) = (&p[start].0, &p[start].1);
            let divisor = basis.iter().find(|(g, _)| g[0].0.divides(lm));
            match divisor {
                Some((g, g_sugar)) => {
                    let q = g[0].0.quotient_of(lm);
                    let c = self.field.mul(lc, &self.field.inv(&g[0].1).expect("nonzero leading coefficient"));
                    sugar = sugar.max(g_sugar + q.degree());
                    p = sub_scaled(self.field, self.order, &p[start..], &c, &q, g);
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        (rem, sugar)
    }

    pub fn monic(&self, mut p: Terms<F>) -> Terms<F> {
        if let Some((_, lc)) = p.first() {
            let inv = self.field.inv(lc).expect("nonzero");
            for (_, c) in p.iter_mut() {
                *c = self.field.mul(c, &inv);
            }
        }
        p
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<'a, F: Field> {
    red: Reducer<'a, F>,
    polys: Vec<(Terms<F>, u32)>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<F: Field> State<'_, F> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i].0[0].0
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let d = lcm.degree();
        let si = self.polys[i].1 + d - self.lm(i).degree();
        let sj = self.polys[j].1 + d - self.lm(j).degree();
        si.max(sj)
    }

    fn reduce_against_active(&self, p: Terms<F>, sugar: u32) -> (Terms<F>, u32) {
        let basis: Vec<(&Terms<F>, u32)> = self.active.iter().map(|&k| (&self.polys[k].0, self.polys[k].1)).collect();
        self.red.reduce(p, sugar, &basis)
    }

    /// Gebauer–Möller update with the new basis element `h`.
    fn install(&mut self, h: usize) {
        let h_lm = self.lm(h).clone();

        let mut candidates: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, self.lm(g).lcm(&h_lm))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = candidates.pop() {
            let coprime = self.lm(g1).is_coprime(&h_lm);
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !self.lm(*g).is_coprime(&h_lm))
            .map(|(g, l)| Pair { i: g, j: h, sugar: self.pair_sugar(g, h, &l), lcm: l })
            .collect();

        let old = std::mem::take(&mut self.pairs);
        for pair in old {
            let l1h = self.lm(pair.i).lcm(&h_lm);
            let l2h = self.lm(pair.j).lcm(&h_lm);
            let prunable = h_lm.divides(&pair.lcm) && l1h != pair.lcm && l2h != pair.lcm;
            if !prunable {
                self.pairs.push(pair);
            }
        }
        self.pairs.extend(new_pairs);

        let polys = &self.polys;
        self.active.retain(|&g| !h_lm.divides(&polys[g].0[0].0));
        self.active.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.red.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar
                .cmp(&pb.sugar)
                .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pair: &Pair) -> Terms<F> {
        let field = self.red.field;
        let (f, g) = (&self.polys[pair.i].0, &self.polys[pair.j].0);
        let mf = f[0].0.quotient_of(&pair.lcm);
        let mg = g[0].0.quotient_of(&pair.lcm);
        // f and g are monic: S = mf * f - mg * g, leading terms cancel.
        let scaled_f: Terms<F> = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
        sub_scaled(field, self.red.order, &scaled_f, &field.one(), &mg, &g[1..])
    }
}

/// Reduced Gröbner basis, monic, sorted by descending leading monomial.
pub(crate) fn buchberger<F: Field>(field: &F, order: &TermOrder, gens: Vec<Terms<F>>) -> Vec<Terms<F>> {
    let mut st = State { red: Reducer { field, order }, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in gens {
        if g.is_empty() {
            continue;
        }
        let sugar = g.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let (r, sugar) = st.reduce_against_active(g, sugar);
        if r.is_empty() {
            continue;
        }
        let r = st.red.monic(r);
        if r[0].0.is_one() {
            return vec![r];
        }
        st.polys.push((r, sugar));
        let h = st.polys.len() - 1;
        st.install(h);
    }
    while let Some(pair) = st.next_pair() {
        let s = st.spoly(&pair);
        let (r, sugar) = st.reduce_against_active(s, pair.sugar);
        if r.is_empty() {
            continue;
        }
        let r = st.red.monic(r);
        if r[0].0.is_one() {
            return vec![r];
        }
        st.polys.push((r, sugar));
        let h = st.polys.len() - 1;
        st.install(h);
    }
    interreduce(&st.red, st.active.iter().map(|&k| st.polys[k].clone()).collect())
}

fn interreduce<F: Field>(red: &Reducer<'_, F>, mut basis: Vec<(Terms<F>, u32)>) -> Vec<Terms<F>> {
    basis.sort_by(|a, b| red.order.cmp(&b.0[0].0, &a.0[0].0));
    // minimal: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<(Terms<F>, u32)> = Vec::new();
    for (k, (p, s)) in basis.iter().enumerate() {
        let lm = &p[0].0;
        let redundant = basis.iter().enumerate().any(|(j, (q, _))| j != k && q[0].0.divides(lm) && (q[0].0 != *lm || j > k));
        if !redundant {
            minimal.push((p.clone(), *s));
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<(&Terms<F>, u32)> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, (q, s))| (q, *s)).collect();
        let (head, tail) = minimal[k].0.split_first().expect("nonzero");
        let (rem, _) = red.reduce(tail.to_vec(), 0, &others);
        let mut p = Vec::with_capacity(rem.len() + 1);
        p.push(head.clone());
        p.extend(rem);
        out.push(red.monic(p));
    }
    out
}

pub(crate) fn terms_to_poly<F: Field>(ring: &RingRef<F>, terms: Terms<F>) -> MultiPoly<F> {
    MultiPoly::from_terms(ring, terms)
}
