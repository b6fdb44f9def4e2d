//! Pushforwards of Segre classes `i_* s(Z, Y)` for `Y` a projective space or
//! a product of projective spaces, via the graph of the map given by the
//! equigenerated forms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use rand::Rng;
use thiserror::Error;

use crate::chowring::{coefficient_extract, expand_rational, AmbientSpec, ChowClass, ChowError, IntPoly};
use crate::exactalg::{
    monomials_of_multidegree, multidegree_of, AlgError, Block, BlockKind, Field, MultiPoly, Multidegree, PolyRing, PrimeField,
    Rationals, RingRef, VarBlocks, confirmation_prime,
};
use crate::exec::EngineConfig;
use crate::groebner::{is_zero_dimensional, quotient_length, saturate_by_element, IdealError, IdealHandle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SegreError {
    #[error("no generators given")]
    EmptyGenerators,
    #[error("the ideal is zero, so the subscheme is the whole ambient; s(Y,Y) = [Y] is only returned on request")]
    FullAmbient,
    #[error("all forms are zero; the rational map is undefined")]
    ZeroMap,
    #[error("forms have different multidegrees {0} and {1}")]
    UnequalDegrees(Multidegree, Multidegree),
    #[error("ring blocks {found:?} do not match ambient {ambient}")]
    AmbientShape { ambient: AmbientSpec, found: Vec<usize> },
    #[error("genericity exhausted for {entry} after {} attempts:\n{}", .log.len(), .log.join("\n"))]
    GenericityExhausted { entry: String, log: Vec<String> },
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

/// Checks that the projective blocks of `vars` are exactly `P^{n_i}` coordinates.
pub fn check_ambient(vars: &VarBlocks, ambient: &AmbientSpec) -> Result<(), SegreError> {
    let sizes: Vec<usize> = vars.blocks().iter().filter(|b| b.kind == BlockKind::Projective).map(|b| b.names.len()).collect();
    let expected: Vec<usize> = ambient.dims().iter().map(|&n| n as usize + 1).collect();
    if sizes != expected || vars.blocks().len() != sizes.len() {
        return Err(SegreError::AmbientShape { ambient: ambient.clone(), found: sizes });
    }
    Ok(())
}

/// Replaces the generators by their monomial multiples in the componentwise
/// maximal degree, dropping forms linearly dependent on earlier ones.
pub fn equigenerate<F: Field>(gens: &[MultiPoly<F>]) -> Result<(Vec<MultiPoly<F>>, Multidegree), SegreError> {
    let gens: Vec<&MultiPoly<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = gens.first() else {
        return Err(SegreError::EmptyGenerators);
    };
    let ring = first.ring().clone();
    let degrees: Vec<Multidegree> = gens.iter().map(|g| multidegree_of(g)).collect::<Result<_, _>>()?;
    let d = Multidegree::new((0..degrees[0].len()).map(|b| degrees.iter().map(|e| e.0[b]).max().unwrap()).collect());
    let mut echelon = Echelon::default();
    let mut forms = Vec::new();
    for (g, e) in gens.iter().zip(&degrees) {
        let shift = d.checked_sub(e).expect("d dominates every degree");
        for m in monomials_of_multidegree(ring.vars(), &shift)? {
            let f = g.mul_monomial(&m, &ring.field().one());
            if echelon.insert(&f) {
                forms.push(f);
            }
        }
    }
    Ok((forms, d))
}

/// Incremental reduced row echelon form over the terms of polynomials.
struct Echelon<F: Field> {
    rows: Vec<MultiPoly<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self { rows: Vec::new() }
    }
}

impl<F: Field> Echelon<F> {
    fn pivot(p: &MultiPoly<F>) -> &crate::exactalg::Monomial {
        p.terms().keys().next_back().expect("rows are nonzero")
    }

    /// Adds `f`; returns false when it was already in the span.
    fn insert(&mut self, f: &MultiPoly<F>) -> bool {
        let field = f.field().clone();
        let mut f = f.clone();
        for row in &self.rows {
            let c = f.coefficient(Self::pivot(row));
            if !field.is_zero(&c) {
                f = &f - &row.scale(&c);
            }
        }
        if f.is_zero() {
            return false;
        }
        let f = f.monic_lex();
        let piv = Self::pivot(&f).clone();
        for row in &mut self.rows {
            let c = row.coefficient(&piv);
            if !field.is_zero(&c) {
                *row = &*row - &f.scale(&c);
            }
        }
        self.rows.push(f);
        true
    }
}

/// The forms `F_0..F_r` of a common multidegree, and the closure of the graph
/// of `(F_0 : ... : F_r)` in `Y x P^r`.
pub struct GraphData<F: Field> {
    forms: Vec<MultiPoly<F>>,
    degree: Multidegree,
    saturator: usize,
    ideal: OnceLock<IdealHandle<F>>,
}

impl<F: Field> GraphData<F> {
    /// Validates the forms; the graph ideal is computed on first use.
    pub fn new(forms: Vec<MultiPoly<F>>) -> Result<Self, SegreError> {
        let nonzero: Vec<&MultiPoly<F>> = forms.iter().filter(|f| !f.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(SegreError::ZeroMap);
        }
        let degree = multidegree_of(nonzero[0])?;
        for f in &nonzero[1..] {
            let e = multidegree_of(f)?;
            if e != degree {
                return Err(SegreError::UnequalDegrees(degree, e));
            }
        }
        let saturator = (0..forms.len()).filter(|&k| !forms[k].is_zero()).min_by_key(|&k| forms[k].num_terms()).unwrap();
        Ok(Self { forms, degree, saturator, ideal: OnceLock::new() })
    }

    pub fn forms(&self) -> &[MultiPoly<F>] {
        &self.forms
    }

    pub fn common_degree(&self) -> &Multidegree {
        &self.degree
    }

    /// `r`, one less than the number of forms.
    pub fn r(&self) -> u32 {
        self.forms.len() as u32 - 1
    }

    pub fn ambient_ring(&self) -> &RingRef<F> {
        self.forms[0].ring()
    }

    /// Minors `u_i F_j - u_j F_i` saturated by the form with the fewest terms.
    /// The Rees ideal is prime and does not contain that form, so this is the
    /// saturation by all of `(F_0, ..., F_r)`.
    pub fn graph_ideal(&self) -> &IdealHandle<F> {
        self.ideal.get_or_init(|| {
            let base = self.ambient_ring();
            let stem = base.vars().fresh_stem("u", self.forms.len());
            let names = (0..self.forms.len()).map(|i| format!("{stem}{i}")).collect();
            let vars = base.vars().with_block(Block { names, kind: BlockKind::Projective }).expect("fresh names");
            let ring = PolyRing::new(base.field().clone(), vars);
            let offset = base.num_vars();
            let forms: Vec<MultiPoly<F>> = self.forms.iter().map(|f| f.relabel(&ring).expect("sub-ring")).collect();
            let u = |i: usize| MultiPoly::var_index(&ring, offset + i);
            let mut minors = Vec::new();
            for i in 0..forms.len() {
                for j in i + 1..forms.len() {
                    minors.push(&(&u(i) * &forms[j]) - &(&u(j) * &forms[i]));
                }
            }
            let minors = IdealHandle::new(&ring, minors).expect("same ring");
            saturate_by_element(&minors, &forms[self.saturator]).expect("nonzero saturator").reduced()
        })
    }
}

/// [`GraphData`] with the graph ideal computed eagerly.
pub fn graph_closure<F: Field>(forms: Vec<MultiPoly<F>>) -> Result<GraphData<F>, SegreError> {
    let g = GraphData::new(forms)?;
    g.graph_ideal();
    Ok(g)
}

/// Coefficients `gamma_{p;q}` of `[Gamma] = sum gamma_{p;q} h^p u^q` in the
/// Chow ring of `Y x P^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultidegreeVector {
    pub ambient: AmbientSpec,
    pub r: u32,
    pub entries: BTreeMap<(Vec<u32>, u32), u64>,
}

impl MultidegreeVector {
    /// The class in `Y x P^r`, the `u` factor last.
    pub fn class(&self) -> ChowClass {
        let big = self.ambient.with_factor(self.r);
        let terms = self.entries.iter().map(|((p, q), &c)| {
            let mut e = p.clone();
            e.push(*q);
            (e, BigInt::from(c))
        });
        ChowClass::new(&big, &IntPoly::from_terms(big.num_factors(), terms))
    }

    /// `g_i = gamma_{i; r-i}` for a single factor, `0 <= i <= min(n, r)`.
    pub fn projective_degrees(&self) -> Vec<u64> {
        assert_eq!(self.ambient.num_factors(), 1, "projective degrees need a single factor");
        let top = self.ambient.dims()[0].min(self.r);
        (0..=top).map(|i| self.entries.get(&(vec![i], self.r - i)).copied().unwrap_or(0)).collect()
    }
}

impl fmt::Display for MultidegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut vars = self.ambient.class_vars();
        if vars == ["H"] {
            vars = vec!["h".into()];
        }
        vars.push("u".into());
        f.write_str(&self.class().poly().render(&vars))
    }
}

/// Exponent vectors `p` with `p_i <= dims_i` and `sum p = total`.
fn splits(dims: &[u32], total: u32) -> Vec<Vec<u32>> {
    let Some((&n, rest)) = dims.split_first() else {
        return if total == 0 { vec![vec![]] } else { vec![] };
    };
    let mut out = Vec::new();
    for p in 0..=n.min(total) {
        for mut tail in splits(rest, total - p) {
            tail.insert(0, p);
            out.push(tail);
        }
    }
    out
}

/// Ring of `nz` chart parameters, plus an inverting variable when `localize`.
fn chart_ring(field: PrimeField, nz: usize, localize: bool) -> RingRef<PrimeField> {
    let mut blocks = Vec::new();
    if nz > 0 {
        blocks.push(Block { names: (0..nz).map(|i| format!("z{i}")).collect(), kind: BlockKind::Auxiliary });
    }
    if localize || blocks.is_empty() {
        blocks.push(Block { names: vec!["w".into()], kind: BlockKind::Auxiliary });
    }
    PolyRing::new(field, VarBlocks::new(blocks).expect("distinct names"))
}

/// Images of the coordinates of each factor under a generic affine chart of a
/// generic linear subspace of dimension `split_i`.
fn chart_images<R: Rng>(chart: &RingRef<PrimeField>, dims: &[u32], split: &[u32], rng: &mut R) -> Vec<MultiPoly<PrimeField>> {
    let field = chart.field();
    let mut images = Vec::new();
    let mut z = 0;
    for (&n, &p) in dims.iter().zip(split) {
        let vectors: Vec<Vec<u64>> = (0..=p).map(|_| (0..=n).map(|_| field.sample(rng)).collect()).collect();
        for j in 0..=n as usize {
            let mut img = MultiPoly::constant(chart, vectors[0][j]);
            for k in 1..=p as usize {
                img = &img + &MultiPoly::var_index(chart, z + k - 1).scale(&vectors[k][j]);
            }
            images.push(img);
        }
        z += p as usize;
    }
    images
}

/// Length of the chart scheme, `None` if it is not zero-dimensional.
fn chart_length(chart: &RingRef<PrimeField>, mut eqs: Vec<MultiPoly<PrimeField>>, localize: Option<&MultiPoly<PrimeField>>) -> Option<u64> {
    if let Some(f) = localize {
        let w = MultiPoly::var_index(chart, chart.num_vars() - 1);
        eqs.push(&MultiPoly::one(chart) - &(&w * f));
    }
    let ideal = IdealHandle::new(chart, eqs).expect("same ring");
    if !is_zero_dimensional(&ideal) {
        return None;
    }
    quotient_length(&ideal).ok()
}

fn reduce_mod(forms: &[MultiPoly<Rationals>], field: PrimeField) -> Result<(RingRef<PrimeField>, Vec<MultiPoly<PrimeField>>), String> {
    let ring = PolyRing::new(field, forms[0].ring().vars().clone());
    let reduced: Vec<MultiPoly<PrimeField>> = forms.iter().map(|f| f.embed(&ring)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    if let Some(k) = (0..forms.len()).find(|&k| reduced[k].is_zero() && !forms[k].is_zero()) {
        return Err(format!("{} vanishes mod {}", forms[k], field.modulus()));
    }
    Ok((ring, reduced))
}

/// Runs `count` at the configured prime and its confirmation prime with fresh
/// seeds per attempt, accepting the first pair of agreeing values.
fn confirmed<T, C>(cfg: &EngineConfig, task: &[u64], label: &dyn Fn() -> String, count: C) -> Result<T, SegreError>
where
    T: PartialEq + fmt::Debug,
    C: Fn(PrimeField, &mut rand_chacha::ChaCha8Rng) -> Result<Option<T>, String>,
{
    let primes = [cfg.prime, confirmation_prime(cfg.prime)];
    let mut log = Vec::new();
    for attempt in 0..cfg.attempts() {
        let mut values = Vec::new();
        for (k, &p) in primes.iter().enumerate() {
            let field = PrimeField::new(p).map_err(SegreError::Alg)?;
            let mut path = task.to_vec();
            path.extend([attempt as u64, k as u64]);
            let mut rng = cfg.rng(&path);
            values.push(count(field, &mut rng));
        }
        match (&values[0], &values[1]) {
            (Ok(Some(a)), Ok(Some(b))) if a == b => return Ok(values.swap_remove(0).unwrap().unwrap()),
            (Ok(Some(a)), Ok(Some(b))) => log.push(format!("attempt {attempt}: primes {} and {} disagree ({a:?} vs {b:?})", primes[0], primes[1])),
            (a, b) => {
                let describe = |v: &Result<Option<T>, String>, p: u64| match v {
                    Ok(Some(_)) => None,
                    Ok(None) => Some(format!("slice not zero-dimensional mod {p}")),
                    Err(e) => Some(format!("mod {p}: {e}")),
                };
                let why: Vec<String> = [describe(a, primes[0]), describe(b, primes[1])].into_iter().flatten().collect();
                log.push(format!("attempt {attempt}: {}", why.join("; ")));
            }
        }
    }
    Err(SegreError::GenericityExhausted { entry: label(), log })
}

const TASK_GRAPH: u64 = 1;
const TASK_CODIM: u64 = 2;
const TASK_IDEAL: u64 = 3;

/// The multidegree of the graph, by counting points of generic slices of its
/// dense open part `{(x, F(x)) : F_k(x) != 0}`: `gamma_{p;q}` is the number of
/// `x` on a generic `prod P^{p_i}` with `F(x)` in a generic codimension
/// `r - q` subspace.
pub fn multidegree_class(graph: &GraphData<Rationals>, ambient: &AmbientSpec, cfg: &EngineConfig) -> Result<MultidegreeVector, SegreError> {
    check_ambient(graph.ambient_ring().vars(), ambient)?;
    let r = graph.r();
    let dims = ambient.dims().to_vec();
    let mut jobs = Vec::new();
    for q in 0..=r {
        for p in splits(&dims, r - q) {
            jobs.push((p, q));
        }
    }
    let jobs: Vec<(usize, (Vec<u32>, u32))> = jobs.into_iter().enumerate().collect();
    let results = cfg.execution.map(jobs, |(index, (p, q))| {
        let label = || format!("multidegree entry (p={p:?}; q={q})");
        let value = confirmed(cfg, &[TASK_GRAPH, index as u64], &label, |field, rng| {
            let (_, forms) = reduce_mod(graph.forms(), field).map_err(|e| e.to_string())?;
            let nz = (r - q) as usize;
            let chart = chart_ring(field, nz, true);
            let images = chart_images(&chart, &dims, &p, rng);
            let pulled: Vec<MultiPoly<PrimeField>> = forms.iter().map(|f| f.map_into(&chart, &images)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            let mut eqs = Vec::with_capacity(nz);
            for _ in 0..nz {
                let mut l = MultiPoly::zero(&chart);
                for f in &pulled {
                    l = &l + &f.scale(&field.sample(rng));
                }
                eqs.push(l);
            }
            let length = chart_length(&chart, eqs, Some(&pulled[graph.saturator]));
            // over a generic point of Y the graph has exactly one point
            if q == r && length != Some(1) {
                return Err(format!("graph has degree {length:?} over the ambient, expected 1"));
            }
            Ok(length)
        })?;
        Ok::<_, SegreError>(((p, q), value))
    });
    let mut entries = BTreeMap::new();
    for res in results {
        let (key, value) = res?;
        if value > 0 {
            entries.insert(key, value);
        }
    }
    Ok(MultidegreeVector { ambient: ambient.clone(), r, entries })
}

/// Multidegree of the subscheme cut out by a multihomogeneous ideal in a
/// product of projective spaces (one ring block per factor), read off from
/// generic linear slices of complementary dimension. `codim` is the expected
/// codimension; components of smaller codimension make every attempt fail.
pub fn multidegree_of_ideal(ideal: &IdealHandle<PrimeField>, dims: &[u32], codim: u32, cfg: &EngineConfig) -> Result<BTreeMap<Vec<u32>, u64>, SegreError> {
    let ambient = AmbientSpec::new(dims.to_vec());
    check_ambient(ideal.ring().vars(), &ambient)?;
    let total: u32 = dims.iter().sum();
    if codim > total {
        return Ok(BTreeMap::new());
    }
    // the coefficient of h^a counts points on a generic prod P^{a_i}
    let slice_dim = codim;
    let gens = ideal.generators().to_vec();
    let jobs: Vec<(usize, Vec<u32>)> = splits(dims, slice_dim).into_iter().enumerate().collect();
    let results = cfg.execution.map(jobs, |(index, a)| {
        let label = || format!("ideal slice {a:?}");
        let value = confirmed(cfg, &[TASK_IDEAL, index as u64], &label, |field, rng| {
            let ring = PolyRing::new(field, ideal.ring().vars().clone());
            let gens: Vec<MultiPoly<PrimeField>> = gens.iter().map(|g| reembed_prime(g, &ring)).collect();
            let chart = chart_ring(field, slice_dim as usize, false);
            let images = chart_images(&chart, dims, &a, rng);
            let eqs = gens.iter().map(|g| g.map_into(&chart, &images)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            Ok(chart_length(&chart, eqs, None))
        })?;
        Ok::<_, SegreError>((a, value))
    });
    let mut out = BTreeMap::new();
    for res in results {
        let (e, v) = res?;
        if v > 0 {
            out.insert(e, v);
        }
    }
    Ok(out)
}

/// Moves a polynomial over one prime field to another by its symmetric lift.
fn reembed_prime(g: &MultiPoly<PrimeField>, ring: &RingRef<PrimeField>) -> MultiPoly<PrimeField> {
    let src = g.field();
    let dst = ring.field();
    let lift = |c: &u64| {
        let p = src.modulus();
        let v = if *c > p / 2 { *c as i64 - p as i64 } else { *c as i64 };
        dst.from_i64(v)
    };
    MultiPoly::from_terms(ring, g.terms().iter().map(|(m, c)| (m.clone(), lift(c))))
}

/// Codimension of `V(I)` in the ambient, or `None` if it is empty: the least
/// `sum a_i` for which a generic `prod P^{a_i}` meets `V(I)`.
pub fn codimension(gens: &[MultiPoly<Rationals>], ambient: &AmbientSpec, cfg: &EngineConfig) -> Result<Option<u32>, SegreError> {
    let gens: Vec<MultiPoly<Rationals>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(Some(0));
    }
    check_ambient(gens[0].ring().vars(), ambient)?;
    let dims = ambient.dims();
    let mut index = 0u64;
    for c in 0..=ambient.dim() {
        for a in splits(dims, c) {
            let label = || format!("emptiness of slice {a:?}");
            let nonempty = confirmed(cfg, &[TASK_CODIM, index], &label, |field, rng| {
                let (_, forms) = reduce_mod(&gens, field).map_err(|e| e.to_string())?;
                let chart = chart_ring(field, c as usize, false);
                let images = chart_images(&chart, dims, &a, rng);
                let eqs = forms.iter().map(|f| f.map_into(&chart, &images)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
                Ok(Some(!IdealHandle::new(&chart, eqs).expect("same ring").is_unit()))
            })?;
            index += 1;
            if nonempty {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// `pi_*( sum_{k>=1} (-1)^{k-1} eps^k [Gamma] )` with `eps = sum d_f h_f - u`,
/// pushing forward along the `u` factor.
pub fn segre_from_graph_class(gamma: &MultidegreeVector, d: &Multidegree) -> Result<ChowClass, SegreError> {
    let class = gamma.class();
    let big = class.ambient().clone();
    let k = big.num_factors();
    let mut eps = ChowClass::hyperplane(&big, k - 1).neg();
    for (f, &df) in d.0.iter().enumerate() {
        eps = eps.add(&ChowClass::hyperplane(&big, f).scale(&BigInt::from(df)));
    }
    let mut sum = ChowClass::zero(&big);
    let mut term = class;
    for step in 1..=big.dim() {
        term = term.mul(&eps);
        if term.is_zero() {
            break;
        }
        sum = if step % 2 == 1 { sum.add(&term) } else { sum.sub(&term) };
    }
    Ok(coefficient_extract(&sum, k - 1, gamma.r)?)
}

/// `1 - sum_i g_i H^i (1 + dH)^{-(i+1)}` in `Z[H]/(H^{n+1})`.
pub fn segre_from_projective_degrees(g: &[u64], d: u32, n: u32) -> ChowClass {
    let ambient = AmbientSpec::projective(n);
    let denom = IntPoly::linear(1, 1, &[d as i64]);
    let mut out = ChowClass::one(&ambient);
    for (i, &gi) in g.iter().enumerate().take(n as usize + 1) {
        let num = IntPoly::from_terms(1, [(vec![i as u32], BigInt::from(gi))]);
        let term = expand_rational(&num, &denom.pow(i as u32 + 1), &ambient).expect("unit denominator");
        out = out.sub(&term);
    }
    out
}

/// `i_* s(Z, Y)` for the subscheme `Z` cut out by `gens`.
pub fn segre_class(gens: &[MultiPoly<Rationals>], ambient: &AmbientSpec, cfg: &EngineConfig) -> Result<ChowClass, SegreError> {
    segre_class_with(gens, ambient, cfg, false)
}

/// As [`segre_class`]; with `allow_full`, the zero ideal gives `[Y] = 1`.
pub fn segre_class_with(gens: &[MultiPoly<Rationals>], ambient: &AmbientSpec, cfg: &EngineConfig, allow_full: bool) -> Result<ChowClass, SegreError> {
    Ok(segre_details(gens, ambient, cfg, allow_full)?.segre)
}

/// Everything computed on the way to a Segre class.
#[derive(Clone, Debug)]
pub struct SegreDetails {
    pub segre: ChowClass,
    /// `None` for the zero ideal.
    pub multidegrees: Option<MultidegreeVector>,
    pub common_degree: Option<Multidegree>,
}

pub fn segre_details(gens: &[MultiPoly<Rationals>], ambient: &AmbientSpec, cfg: &EngineConfig, allow_full: bool) -> Result<SegreDetails, SegreError> {
    let Some(first) = gens.first() else {
        return Err(SegreError::EmptyGenerators);
    };
    check_ambient(first.ring().vars(), ambient)?;
    if gens.iter().all(|g| g.is_zero()) {
        if allow_full {
            return Ok(SegreDetails { segre: ChowClass::one(ambient), multidegrees: None, common_degree: None });
        }
        return Err(SegreError::FullAmbient);
    }
    let (forms, d) = equigenerate(gens)?;
    let graph = GraphData::new(forms)?;
    let gamma = multidegree_class(&graph, ambient, cfg)?;
    let segre = segre_from_graph_class(&gamma, &d)?;
    Ok(SegreDetails { segre, multidegrees: Some(gamma), common_degree: Some(d) })
}

/// The regular-embedding closed form `prod D_j / prod (1 + D_j)`.
pub fn complete_intersection_segre(degrees: &[Multidegree], ambient: &AmbientSpec) -> Result<ChowClass, SegreError> {
    let bundle = crate::chowring::BundleSpec::new(degrees.to_vec())?;
    Ok(expand_rational(&bundle.top_chern_polynomial(), &bundle.chern_polynomial(), ambient)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn ring(blocks: &[&[&str]]) -> RingRef<Rationals> {
        let b: Vec<Vec<&str>> = blocks.iter().map(|b| b.to_vec()).collect();
        PolyRing::new(Rationals, VarBlocks::projective(&b).unwrap())
    }

    fn polys(r: &RingRef<Rationals>, srcs: &[&str]) -> Vec<MultiPoly<Rationals>> {
        srcs.iter().map(|s| parse_poly(s, r).unwrap()).collect()
    }

    fn h(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_terms(1, coeffs.iter().enumerate().map(|(i, &c)| (vec![i as u32], BigInt::from(c))))
    }

    fn st(terms: &[((u32, u32), i64)]) -> IntPoly {
        IntPoly::from_terms(2, terms.iter().map(|&((a, b), c)| (vec![a, b], BigInt::from(c))))
    }

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn equigeneration_examples() {
        let r = ring(&[&["x", "y", "z"]]);
        let (f, d) = equigenerate(&polys(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(f, polys(&r, &["x^2", "x*y"]));
        assert_eq!(d, Multidegree::new(vec![2]));
        let (f, d) = equigenerate(&polys(&r, &["x"])).unwrap();
        assert_eq!((f.len(), d), (1, Multidegree::new(vec![1])));
        let (f, _) = equigenerate(&polys(&r, &["x", "y^2"])).unwrap();
        assert_eq!(f.len(), 4);

        let r = ring(&[&["x0", "x1", "x2"], &["y0", "y1", "y2"]]);
        let (f, d) = equigenerate(&polys(&r, &["x0", "y0"])).unwrap();
        assert_eq!(d, Multidegree::new(vec![1, 1]));
        assert_eq!(f.len(), 5, "x0*y0 appears once");
        assert!(equigenerate::<Rationals>(&[]).is_err());
    }

    #[test]
    fn graph_closures() {
        let r = ring(&[&["x", "y", "z"]]);
        let g = graph_closure(polys(&r, &["x^2", "x*y"])).unwrap();
        let ideal = g.graph_ideal();
        let expected = IdealHandle::new(ideal.ring(), polys(ideal.ring(), &["x*u1 - y*u0"])).unwrap();
        assert!(ideal.same_ideal(&expected));
        let g2 = graph_closure(polys(&r, &["x", "y"])).unwrap();
        assert!(g2.graph_ideal().same_ideal(&expected));

        let r = ring(&[&["x0", "x1", "x2"], &["y0", "y1", "y2"]]);
        let g = graph_closure(polys(&r, &["x0*y0", "x0*y1"])).unwrap();
        let ideal = g.graph_ideal();
        assert!(ideal.same_ideal(&IdealHandle::new(ideal.ring(), polys(ideal.ring(), &["y0*u1 - y1*u0"])).unwrap()));

        assert!(matches!(GraphData::new(vec![MultiPoly::zero(&r)]), Err(SegreError::ZeroMap)));
    }

    #[test]
    fn graph_multidegrees() {
        let r = ring(&[&["x", "y", "z"]]);
        let a = AmbientSpec::projective(2);
        let g = GraphData::new(polys(&r, &["x^2", "x*y"])).unwrap();
        let m = multidegree_class(&g, &a, &cfg()).unwrap();
        assert_eq!(m.to_string(), "h + u");
        let g = GraphData::new(polys(&r, &["x", "y"])).unwrap();
        assert_eq!(multidegree_class(&g, &a, &cfg()).unwrap().projective_degrees(), vec![1, 1]);

        let r = ring(&[&["x0", "x1", "x2"], &["y0", "y1", "y2"]]);
        let g = GraphData::new(polys(&r, &["x0*y0", "x0*y1"])).unwrap();
        let m = multidegree_class(&g, &AmbientSpec::product(2, 2), &cfg()).unwrap();
        assert_eq!(m.to_string(), "t + u");
    }

    #[test]
    fn graph_slicing_matches_explicit_graph_ideal() {
        let r = ring(&[&["x", "y", "z", "w"]]);
        let a = AmbientSpec::projective(3);
        for gens in [&["x^2", "x*y"][..], &["x*y", "y*z", "z*x"], &["x^2", "y^2", "x*z"]] {
            let g = GraphData::new(polys(&r, gens)).unwrap();
            let m = multidegree_class(&g, &a, &cfg()).unwrap();
            let field = PrimeField::new(cfg().prime).unwrap();
            let (_, forms) = reduce_mod(g.forms(), field).unwrap();
            let gp = GraphData::new(forms).unwrap();
            let direct = multidegree_of_ideal(gp.graph_ideal(), &[3, g.r()], g.r(), &cfg()).unwrap();
            let direct: BTreeMap<(Vec<u32>, u32), u64> = direct.into_iter().map(|(e, c)| ((vec![e[0]], e[1]), c)).collect();
            assert_eq!(m.entries, direct, "{gens:?}");
        }
    }

    #[test]
    fn worked_segre_classes() {
        let r = ring(&[&["x", "y", "z"]]);
        let a = AmbientSpec::projective(2);
        assert_eq!(segre_class(&polys(&r, &["x"]), &a, &cfg()).unwrap().poly(), &h(&[0, 1, -1]));
        assert_eq!(segre_class(&polys(&r, &["x^2", "x*y"]), &a, &cfg()).unwrap().poly(), &h(&[0, 1]));
        assert_eq!(segre_class(&polys(&r, &["x", "y"]), &a, &cfg()).unwrap().poly(), &h(&[0, 0, 1]));

        let r = ring(&[&["x", "y", "z", "w"]]);
        let s = segre_class(&polys(&r, &["x^2", "x*y"]), &AmbientSpec::projective(3), &cfg()).unwrap();
        assert_eq!(s.to_string(), "H - 4H^3");

        let r = ring(&[&["x0", "x1", "x2"], &["y0", "y1", "y2"]]);
        let s = segre_class(&polys(&r, &["x0*y0", "x0*y1"]), &AmbientSpec::product(2, 2), &cfg()).unwrap();
        assert_eq!(s.poly(), &st(&[((1, 0), 1), ((2, 0), -1), ((0, 2), 1), ((1, 2), -3), ((2, 2), 6)]));
    }

    #[test]
    fn empty_and_full_schemes() {
        let r = ring(&[&["x", "y", "z"]]);
        let a = AmbientSpec::projective(2);
        assert!(segre_class(&polys(&r, &["x", "y", "z"]), &a, &cfg()).unwrap().is_zero());
        assert!(segre_class(&polys(&r, &["x^2", "y^2", "z^2", "x*y"]), &a, &cfg()).unwrap().is_zero());
        assert!(segre_class(&polys(&r, &["5"]), &a, &cfg()).unwrap().is_zero());
        let zero = vec![MultiPoly::zero(&r)];
        assert_eq!(segre_class(&zero, &a, &cfg()).unwrap_err(), SegreError::FullAmbient);
        assert_eq!(segre_class_with(&zero, &a, &cfg(), true).unwrap(), ChowClass::one(&a));
    }

    #[test]
    fn projective_degree_formula() {
        assert_eq!(segre_from_projective_degrees(&[1], 3, 3).poly(), &h(&[0, 3, -9, 27]));
        assert_eq!(segre_from_projective_degrees(&[1, 1], 1, 2).poly(), &h(&[0, 0, 1]));
        assert_eq!(segre_from_projective_degrees(&[1, 1], 2, 3).poly(), &h(&[0, 1, 0, -4]));
    }

    #[test]
    fn codimensions() {
        let r = ring(&[&["x", "y", "z", "w"]]);
        let a = AmbientSpec::projective(3);
        assert_eq!(codimension(&polys(&r, &["x^2", "x*y"]), &a, &cfg()).unwrap(), Some(1));
        assert_eq!(codimension(&polys(&r, &["x", "y"]), &a, &cfg()).unwrap(), Some(2));
        assert_eq!(codimension(&polys(&r, &["x", "y", "z", "w"]), &a, &cfg()).unwrap(), None);
        let r = ring(&[&["x0", "x1", "x2"], &["y0", "y1"]]);
        let a = AmbientSpec::product(2, 1);
        assert_eq!(codimension(&polys(&r, &["x0", "x1"]), &a, &cfg()).unwrap(), Some(2));
    }

    #[test]
    fn exhausted_genericity_is_reported() {
        // a constant multiple vanishing mod both small primes breaks every attempt
        let r = ring(&[&["x", "y", "z"]]);
        let c = EngineConfig { prime: 3, retries: 1, ..cfg() };
        let err = segre_class(&polys(&r, &["6*x^2", "6*x*y"]), &AmbientSpec::projective(2), &c).unwrap_err();
        assert!(matches!(err, SegreError::GenericityExhausted { ref log, .. } if log.len() == 2), "{err}");
    }
}
