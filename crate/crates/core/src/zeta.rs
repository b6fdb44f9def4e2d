//! Segre zeta functions `P/Q` of ideals with declared line-bundle degrees,
//! cones over them in larger ambients, and the checks relating the two.

use std::fmt;

use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chowring::{expand_rational, reduced_representative, total_chern, AmbientSpec, BundleSpec, ChowClass, ChowError, IntPoly, ZetaFunction};
use crate::exactalg::{multidegree_of, AlgError, Block, Field, MultiPoly, Multidegree, PolyRing, Rationals, RingRef, VarBlocks};
use crate::exec::EngineConfig;
use crate::segre::{check_ambient, codimension, segre_class, SegreError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("rank constraint violated: g = {g}, but {rule} requires g < {bound}")]
    RankConstraint { g: usize, bound: u32, rule: String },
    #[error("generator {index} has multidegree {actual}, declared {declared}")]
    DegreeMismatch { index: usize, declared: Multidegree, actual: Multidegree },
    #[error("{0} generators but {1} declared degrees")]
    DegreeCount(usize, usize),
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("target {target} does not dominate {base}")]
    TargetTooSmall { base: AmbientSpec, target: AmbientSpec },
    #[error("factor {0} cannot be restricted: {1}")]
    Restriction(usize, String),
    #[error("numerator has total degree {degree} > g = {g}")]
    DegreeBound { degree: u32, g: usize },
    #[error(transparent)]
    Segre(#[from] SegreError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// An ideal `(F_0, ..., F_r)` in the coordinate ring of the base ambient,
/// with `F_j` a section of `O(d_j)`.
#[derive(Clone, Debug)]
pub struct ZetaProblem {
    generators: Vec<MultiPoly<Rationals>>,
    bundle: BundleSpec,
    base: AmbientSpec,
}

impl ZetaProblem {
    pub fn new(generators: Vec<MultiPoly<Rationals>>, degrees: Vec<Multidegree>, base: AmbientSpec) -> Result<Self, ZetaError> {
        if generators.len() != degrees.len() {
            return Err(ZetaError::DegreeCount(generators.len(), degrees.len()));
        }
        let Some(first) = generators.first() else {
            return Err(ChowError::EmptyBundle.into());
        };
        check_ambient(first.ring().vars(), &base)?;
        for (index, (f, d)) in generators.iter().zip(&degrees).enumerate() {
            if f.is_zero() {
                return Err(ZetaError::ZeroGenerator(index));
            }
            let actual = multidegree_of(f)?;
            if actual != *d {
                return Err(ZetaError::DegreeMismatch { index, declared: d.clone(), actual });
            }
        }
        Ok(Self { generators, bundle: BundleSpec::new(degrees)?, base })
    }

    /// Declared degrees taken from the generators themselves.
    pub fn from_generators(generators: Vec<MultiPoly<Rationals>>, base: AmbientSpec) -> Result<Self, ZetaError> {
        let degrees = generators.iter().map(multidegree_of).collect::<Result<_, _>>()?;
        Self::new(generators, degrees, base)
    }

    pub fn generators(&self) -> &[MultiPoly<Rationals>] {
        &self.generators
    }

    pub fn bundle(&self) -> &BundleSpec {
        &self.bundle
    }

    pub fn base(&self) -> &AmbientSpec {
        &self.base
    }

    pub fn ring(&self) -> &RingRef<Rationals> {
        self.generators[0].ring()
    }

    /// `g = r + 1`.
    pub fn g(&self) -> usize {
        self.bundle.rank()
    }

    /// `g < e`: `e = n + 1` on `P^n`; on `P^n x P^m` the smaller of the two
    /// fiber ranks, `min(n, m) + 1`.
    pub fn check_rank(&self) -> Result<(), ZetaError> {
        let dims = self.base.dims();
        let e = dims.iter().min().unwrap() + 1;
        let rule = if dims.len() == 1 { "g < e = n+1" } else { "g < e = min(n,m)+1" };
        self.gate(e, rule)
    }

    /// The stricter bounds stated for cone verification: `r+1 < n` on `P^n`,
    /// `r < n, m` on `P^n x P^m`.
    pub fn check_rank_strict(&self) -> Result<(), ZetaError> {
        let dims = self.base.dims();
        if dims.len() == 1 {
            self.gate(dims[0], "r+1 < n")
        } else {
            self.gate(dims.iter().min().unwrap() + 1, "r < n and r < m")
        }
    }

    fn gate(&self, bound: u32, rule: &str) -> Result<(), ZetaError> {
        if self.g() as u32 >= bound {
            return Err(ZetaError::RankConstraint { g: self.g(), bound, rule: rule.into() });
        }
        Ok(())
    }

    pub fn describe(&self) -> Value {
        let vars: Vec<Vec<String>> = self.ring().vars().blocks().iter().map(|b| b.names.clone()).collect();
        json!({
            "factors": self.base.to_json(),
            "variables": vars,
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "degrees": self.bundle.to_json(),
        })
    }
}

/// `zeta = P/Q` with `Q = prod_j (1 + D_j)` and `P` the reduced representative
/// of `c(G) * i_* s(Z, Y)`.
pub fn zeta_from_ideal(p: &ZetaProblem, cfg: &EngineConfig) -> Result<ZetaFunction, ZetaError> {
    p.check_rank()?;
    let segre = segre_class(p.generators(), p.base(), cfg)?;
    zeta_from_segre(p, &segre)
}

fn zeta_from_segre(p: &ZetaProblem, segre: &ChowClass) -> Result<ZetaFunction, ZetaError> {
    let c = total_chern(p.bundle(), p.base())?;
    let numerator = reduced_representative(&c.mul(segre));
    if let Some(degree) = numerator.total_degree() {
        if degree as usize > p.g() {
            return Err(ZetaError::DegreeBound { degree, g: p.g() });
        }
    }
    Ok(ZetaFunction { p: numerator, q: p.bundle().chern_polynomial(), bundle: p.bundle().clone(), base: p.base().clone() })
}

/// Names for a block grown from `old` to `size` variables, continuing a
/// `stem0, stem1, ...` numbering when the block uses one.
fn grown_block(vars: &VarBlocks, old: &[String], size: usize) -> Vec<String> {
    let mut names = old.to_vec();
    let stem = old[0].trim_end_matches(|c: char| c.is_ascii_digit()).to_string();
    let numbered = !stem.is_empty() && old.iter().enumerate().all(|(i, n)| *n == format!("{stem}{i}"));
    let taken = |n: &str| vars.var_index(n).is_some() || names.iter().any(|m| m == n);
    if numbered {
        let extra: Vec<String> = (old.len()..size).map(|i| format!("{stem}{i}")).collect();
        if extra.iter().all(|n| !taken(n)) {
            names.extend(extra);
            return names;
        }
    }
    let fresh = vars.fresh_stem(&format!("{}_", old[0]), size - old.len());
    names.extend((0..size - old.len()).map(|i| format!("{fresh}{i}")));
    names
}

/// The same generators, verbatim, in the coordinate ring of a larger ambient.
pub fn cone_ideal(p: &ZetaProblem, target: &AmbientSpec) -> Result<ZetaProblem, ZetaError> {
    if !target.dominates(p.base()) {
        return Err(ZetaError::TargetTooSmall { base: p.base().clone(), target: target.clone() });
    }
    if target == p.base() {
        return Ok(p.clone());
    }
    let vars = p.ring().vars();
    let blocks: Vec<Block> = vars
        .blocks()
        .iter()
        .zip(target.dims())
        .map(|(b, &n)| Block { names: grown_block(vars, &b.names, n as usize + 1), kind: b.kind })
        .collect();
    let ring = PolyRing::new(Rationals, VarBlocks::new(blocks)?);
    let gens = p.generators().iter().map(|g| g.relabel(&ring)).collect::<Result<_, _>>()?;
    ZetaProblem::new(gens, p.bundle().degrees().to_vec(), target.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub instance: Value,
    pub target: AmbientSpec,
    pub predicted: ChowClass,
    pub computed: ChowClass,
    pub verdict: Verdict,
    pub seeds: Vec<u64>,
    pub prime: u64,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "instance": self.instance,
            "target": self.target.to_json(),
            "predicted": self.predicted.to_json(),
            "computed": self.computed.to_json(),
            "verdict": self.verdict.as_str(),
            "seeds": self.seeds,
            "prime": self.prime,
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target {}", self.target)?;
        writeln!(f, "predicted {}", self.predicted)?;
        writeln!(f, "computed  {}", self.computed)?;
        write!(f, "verdict {}", self.verdict.as_str())
    }
}

/// Compares `zeta` evaluated on the target with the Segre class of the cone.
pub fn verify_cone(p: &ZetaProblem, target: &AmbientSpec, cfg: &EngineConfig) -> Result<VerificationReport, ZetaError> {
    p.check_rank_strict()?;
    let zeta = zeta_from_ideal(p, cfg)?;
    verify_cone_with(p, &zeta, target, cfg)
}

/// As [`verify_cone`], reusing an already computed zeta function of `p`.
pub fn verify_cone_with(p: &ZetaProblem, zeta: &ZetaFunction, target: &AmbientSpec, cfg: &EngineConfig) -> Result<VerificationReport, ZetaError> {
    p.check_rank_strict()?;
    let cone = cone_ideal(p, target)?;
    let predicted = expand_rational(&zeta.p, &zeta.q, target)?;
    let computed = segre_class(cone.generators(), target, cfg)?;
    let verdict = if predicted == computed { Verdict::Match } else { Verdict::Mismatch };
    Ok(VerificationReport { instance: p.describe(), target: target.clone(), predicted, computed, verdict, seeds: vec![cfg.seed], prime: cfg.prime })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.checks.iter().map(|c| json!({"check": c.name, "passed": c.passed, "detail": c.detail})).collect())
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.checks.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Structural checks on a computed zeta function.
pub fn check_properties(z: &ZetaFunction, p: &ZetaProblem, cfg: &EngineConfig) -> Result<PropertyReport, ZetaError> {
    let names = z.vars();
    let show = |q: &IntPoly| q.render(&names);
    let g = p.g() as u32;
    let mut checks = Vec::new();

    // [Z] in top dimension is the lowest-codimension part of the Segre class
    let segre = z.evaluate(p.base())?;
    let codim = codimension(p.generators(), p.base(), cfg)?;
    let (passed, detail) = match codim {
        None => (z.p.is_zero(), "empty subscheme, P must vanish".to_string()),
        Some(c) => {
            let low = z.p.min_degree();
            let part = z.p.homogeneous_part(c);
            let cycle = segre.codim_part(c);
            (low == Some(c) && part == *cycle.poly(), format!("lowest part {} in degree {c} = codim Z; top cycle {}", show(&part), show(cycle.poly())))
        }
    };
    checks.push(PropertyCheck { name: "lowest term is [Z]", passed, detail });

    let dq = z.q.total_degree().unwrap_or(0);
    let top_q = z.q.homogeneous_part(dq);
    let top_p = z.p.homogeneous_part(dq);
    let expected_top = p.bundle().top_chern_polynomial();
    checks.push(PropertyCheck {
        name: "highest term is the top Chern class",
        passed: z.p.total_degree() == Some(dq) && top_p == top_q && top_q == expected_top,
        detail: format!("P top {}; Q top {}; prod D_j = {}", show(&top_p), show(&top_q), show(&expected_top)),
    });

    let deg = z.p.total_degree().unwrap_or(0);
    checks.push(PropertyCheck { name: "deg P <= g", passed: deg <= g, detail: format!("deg P = {deg}, g = {g}") });

    checks.push(PropertyCheck {
        name: "nonnegative numerator",
        passed: z.p.is_nonnegative(),
        detail: "all declared degrees are nonnegative".into(),
    });

    let mut product = IntPoly::one(names.len());
    for d in p.bundle().degrees() {
        let coeffs: Vec<i64> = d.0.iter().map(|&x| x as i64).collect();
        product = product.mul(&IntPoly::linear(names.len(), 1, &coeffs));
    }
    checks.push(PropertyCheck { name: "Q is the product formula", passed: product == z.q, detail: format!("Q = {}", show(&z.q)) });

    Ok(PropertyReport { checks })
}

/// Restricts to a generic hyperplane of one factor by substituting a random
/// integer linear form in the other coordinates of that factor for its last
/// coordinate. Declared degrees are kept.
pub fn restrict_hyperplane<R: Rng + ?Sized>(p: &ZetaProblem, factor: usize, rng: &mut R) -> Result<ZetaProblem, ZetaError> {
    let dims = p.base().dims();
    if factor >= dims.len() {
        return Err(ZetaError::Restriction(factor, format!("the ambient has {} factors", dims.len())));
    }
    if dims[factor] == 0 {
        return Err(ZetaError::Restriction(factor, "factor has dimension 0".into()));
    }
    let mut new_dims = dims.to_vec();
    new_dims[factor] -= 1;
    let smaller = AmbientSpec::new(new_dims);
    let e_prime = smaller.dims().iter().min().unwrap() + 1;
    if p.g() as u32 >= e_prime {
        return Err(ZetaError::RankConstraint { g: p.g(), bound: e_prime, rule: "g < e' = e-1".into() });
    }
    let vars = p.ring().vars();
    let range = vars.block_range(factor);
    let last = range.end - 1;
    let mut blocks = vars.blocks().to_vec();
    blocks[factor].names.pop();
    let ring = PolyRing::new(Rationals, VarBlocks::new(blocks)?);
    let field = ring.field();
    let mut images = Vec::with_capacity(vars.num_vars());
    for i in 0..vars.num_vars() {
        if i == last {
            let mut form = MultiPoly::zero(&ring);
            for j in range.start..last {
                let c = field.from_i64(rng.gen_range(-(1 << 20)..=(1 << 20)));
                form = &form + &MultiPoly::var(&ring, vars.var_name(j))?.scale(&c);
            }
            images.push(form);
        } else {
            images.push(MultiPoly::var(&ring, vars.var_name(i))?);
        }
    }
    let mut gens = Vec::new();
    for (k, g) in p.generators().iter().enumerate() {
        let h = g.map_into(&ring, &images)?;
        if h.is_zero() {
            return Err(ZetaError::Restriction(factor, format!("generator {k} vanishes on the hyperplane")));
        }
        gens.push(h);
    }
    ZetaProblem::new(gens, p.bundle().degrees().to_vec(), smaller)
}

/// `zeta` of a two-factor base read as a series in one parameter with
/// coefficients in the truncated Chow ring of the other factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeView {
    /// Index of the factor whose class is treated as a coefficient.
    pub coefficient_factor: usize,
    pub p: IntPoly,
    pub q: IntPoly,
    pub base: AmbientSpec,
}

impl RelativeView {
    pub fn expand(&self) -> Result<ChowClass, ChowError> {
        expand_rational(&self.p, &self.q, &self.base)
    }

    fn render_side(&self, f: &IntPoly) -> String {
        let names = crate::chowring::zeta_vars(2);
        let coeff = self.coefficient_factor;
        let param = 1 - coeff;
        let top = f.terms().keys().map(|e| e[param]).max();
        let Some(top) = top else {
            return "0".into();
        };
        let mut parts = Vec::new();
        for k in 0..=top {
            let c = IntPoly::from_terms(2, f.terms().iter().filter(|(e, _)| e[param] == k).map(|(e, v)| {
                let mut e = e.clone();
                e[param] = 0;
                (e, v.clone())
            }));
            if c.is_zero() {
                continue;
            }
            let body = c.render(&names);
            let pw = match k {
                0 => String::new(),
                1 => names[param].clone(),
                _ => format!("{}^{k}", names[param]),
            };
            parts.push(if pw.is_empty() { format!("({body})") } else { format!("({body}){pw}") });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for RelativeView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::chowring::zeta_vars(2);
        let c = self.coefficient_factor;
        write!(
            f,
            "P = {}; Q = {} over Z[{}]/({}^{})",
            self.render_side(&self.p),
            self.render_side(&self.q),
            names[c],
            names[c],
            self.base.dims()[c] + 1
        )
    }
}

/// The presentations `zeta(H_n, t)` and `zeta(s, H'_m)`.
pub fn relative_views(z: &ZetaFunction) -> Result<(RelativeView, RelativeView), ZetaError> {
    let dims = z.base.dims();
    if dims.len() != 2 {
        return Err(ChowError::FactorOutOfRange { factor: 1, factors: dims.len() }.into());
    }
    let view = |c: usize| {
        let mut bounds = vec![u32::MAX; 2];
        bounds[c] = dims[c];
        RelativeView { coefficient_factor: c, p: z.p.truncate(&bounds), q: z.q.truncate(&bounds), base: z.base.clone() }
    };
    Ok((view(0), view(1)))
}

/// The outcome of restricting to several random hyperplanes.
#[derive(Clone, Debug)]
pub struct RestrictionReport {
    pub factor: usize,
    pub before: ZetaFunction,
    pub after: Vec<ZetaFunction>,
}

impl RestrictionReport {
    pub fn invariant(&self) -> bool {
        self.after.iter().all(|z| z.p == self.before.p && z.q == self.before.q)
    }
}

/// `zeta` before and after `trials` independent generic hyperplane restrictions.
pub fn restriction_invariance(p: &ZetaProblem, factor: usize, trials: u32, cfg: &EngineConfig) -> Result<RestrictionReport, ZetaError> {
    let before = zeta_from_ideal(p, cfg)?;
    let mut after = Vec::new();
    for trial in 0..trials {
        let mut rng = cfg.rng(&[0x7265_7374, factor as u64, trial as u64]);
        let q = restrict_hyperplane(p, factor, &mut rng)?;
        after.push(zeta_from_ideal(&q, cfg)?);
    }
    Ok(RestrictionReport { factor, before, after })
}
