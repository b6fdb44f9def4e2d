//! Exact scalars and block-graded multivariate polynomials.
//!
//! Every polynomial lives in a [`PolyRing`]: a coefficient field together with
//! an ordered list of variable blocks, one block per projective factor plus
//! optional auxiliary blocks. Exponent vectors are dense over the ring's
//! global variable sequence (block after block, in declaration order).

mod field;
mod parse;
mod poly;
mod random;

use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

pub use field::{confirmation_prime, is_prime, rational_to_integer, Field, PrimeField, Rationals, ScalarKind};
pub use parse::{parse_poly, ParseError};
pub use poly::{poly_arith, substitute, ArithOp, CoeffInto, MultiPoly, PolyRing, RingRef};
pub use random::{monomials_of_multidegree, random_form};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("denominator of {value} vanishes modulo {prime}")]
    DenominatorDivisibleByPrime { value: String, prime: u64 },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("polynomial is not homogeneous per block: terms `{first}` and `{second}` have different multidegrees")]
    Inhomogeneous { first: String, second: String },
    #[error("the zero polynomial has no multidegree")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("variable blocks must be nonempty")]
    EmptyBlock,
    #[error("multidegree has {got} entries but the ring has {expected} blocks")]
    MultidegreeLength { expected: usize, got: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Homogeneous coordinates of a projective factor.
    Projective,
    /// Elimination / chart variables.
    Auxiliary,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub names: Vec<String>,
    pub kind: BlockKind,
}

/// Ordered variable blocks with globally unique names.
#[derive(Clone, Debug)]
pub struct VarBlocks {
    blocks: Vec<Block>,
    offsets: Vec<usize>,
    index: HashMap<String, usize>,
}

impl PartialEq for VarBlocks {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}
impl Eq for VarBlocks {}

impl VarBlocks {
    pub fn new(blocks: Vec<Block>) -> Result<Self, AlgError> {
        let mut index = HashMap::new();
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut next = 0;
        for block in &blocks {
            if block.names.is_empty() {
                return Err(AlgError::EmptyBlock);
            }
            offsets.push(next);
            for name in &block.names {
                if index.insert(name.clone(), next).is_some() {
                    return Err(AlgError::DuplicateVariable(name.clone()));
                }
                next += 1;
            }
        }
        Ok(Self { blocks, offsets, index })
    }

    /// Projective blocks only.
    pub fn projective<S: AsRef<str>>(names: &[Vec<S>]) -> Result<Self, AlgError> {
        Self::new(
            names
                .iter()
                .map(|b| Block {
                    names: b.iter().map(|s| s.as_ref().to_string()).collect(),
                    kind: BlockKind::Projective,
                })
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_vars(&self) -> usize {
        self.index.len()
    }

    pub fn block_range(&self, b: usize) -> std::ops::Range<usize> {
        let start = self.offsets[b];
        start..start + self.blocks[b].names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn var_name(&self, i: usize) -> &str {
        let b = self.block_of(i);
        &self.blocks[b].names[i - self.offsets[b]]
    }

    pub fn block_of(&self, i: usize) -> usize {
        match self.offsets.binary_search(&i) {
            Ok(b) => b,
            Err(b) => b - 1,
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.blocks.iter().flat_map(|b| b.names.iter().map(String::as_str))
    }

    /// Appends a block, returning the enlarged layout.
    pub fn with_block(&self, block: Block) -> Result<Self, AlgError> {
        let mut blocks = self.blocks.clone();
        blocks.push(block);
        Self::new(blocks)
    }

    /// Removes the listed blocks.
    pub fn without_blocks(&self, drop: &[usize]) -> Result<Self, AlgError> {
        Self::new(
            self.blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, b)| b.clone())
                .collect(),
        )
    }

    /// A name of the form `{stem}{k}` (or `{stem}` with underscores prepended)
    /// unused by this layout for all `k < count`.
    pub fn fresh_stem(&self, stem: &str, count: usize) -> String {
        let mut candidate = stem.to_string();
        loop {
            if (0..count).all(|k| !self.index.contains_key(&format!("{candidate}{k}")))
                && !self.index.contains_key(&candidate)
            {
                return candidate;
            }
            candidate.insert(0, '_');
        }
    }
}

/// Dense exponent vector over the ring's variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub SmallVec<[u16; 16]>);

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn block_degrees(&self, vars: &VarBlocks) -> Multidegree {
        Multidegree(
            (0..vars.num_blocks())
                .map(|b| vars.block_range(b).map(|i| self.0[i] as u32).sum())
                .collect(),
        )
    }
}

/// One degree per variable block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(pub Vec<u32>);

impl Multidegree {
    pub fn new(degrees: Vec<u32>) -> Self {
        Multidegree(degrees)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `self - other` when `other <= self` componentwise.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Multidegree)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Block degrees of a homogeneous polynomial.
pub fn multidegree_of<F: Field>(f: &MultiPoly<F>) -> Result<Multidegree, AlgError> {
    let vars = f.ring().vars();
    let mut iter = f.terms().iter();
    let (first_mono, first_coeff) = iter.next().ok_or(AlgError::ZeroPolynomial)?;
    let deg = first_mono.block_degrees(vars);
    for (mono, coeff) in iter {
        if mono.block_degrees(vars) != deg {
            return Err(AlgError::Inhomogeneous {
                first: f.render_term(first_mono, first_coeff),
                second: f.render_term(mono, coeff),
            });
        }
    }
    Ok(deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_blocks() -> RingRef<Rationals> {
        PolyRing::new(Rationals, VarBlocks::projective(&[vec!["x0", "x1", "x2"], vec!["y0", "y1", "y2"]]).unwrap())
    }

    #[test]
    fn multidegree_of_monomial() {
        let r = two_blocks();
        let f = parse_poly("x0*y0", &r).unwrap();
        assert_eq!(multidegree_of(&f).unwrap(), Multidegree(vec![1, 1]));
    }

    #[test]
    fn multidegree_single_block() {
        let r = PolyRing::new(Rationals, VarBlocks::projective(&[vec!["x0", "x1"]]).unwrap());
        let f = parse_poly("x0^2 + x0*x1", &r).unwrap();
        assert_eq!(multidegree_of(&f).unwrap(), Multidegree(vec![2]));
    }

    #[test]
    fn multidegree_rejects_mixed_blocks() {
        let r = two_blocks();
        let f = parse_poly("x0 + y0", &r).unwrap();
        match multidegree_of(&f) {
            Err(AlgError::Inhomogeneous { first, second }) => {
                let mut names = [first, second];
                names.sort();
                assert_eq!(names, ["x0".to_string(), "y0".to_string()]);
            }
            other => panic!("expected inhomogeneous error, got {other:?}"),
        }
        assert_eq!(multidegree_of(&MultiPoly::zero(&r)), Err(AlgError::ZeroPolynomial));
    }

    #[test]
    fn duplicate_names_rejected() {
        assert_eq!(
            VarBlocks::projective(&[vec!["x", "y"], vec!["y"]]).unwrap_err(),
            AlgError::DuplicateVariable("y".into())
        );
        assert_eq!(VarBlocks::projective::<&str>(&[vec![]]).unwrap_err(), AlgError::EmptyBlock);
    }

    #[test]
    fn block_lookup() {
        let v = VarBlocks::projective(&[vec!["x0", "x1", "x2"], vec!["y0", "y1"]]).unwrap();
        assert_eq!(v.block_of(0), 0);
        assert_eq!(v.block_of(2), 0);
        assert_eq!(v.block_of(3), 1);
        assert_eq!(v.block_of(4), 1);
        assert_eq!(v.var_name(3), "y0");
        assert_eq!(v.fresh_stem("y", 2), "_y");
        assert_eq!(v.fresh_stem("u", 3), "u");
    }
}
