use rand::Rng;

use super::{AlgError, Field, Monomial, MultiPoly, Multidegree, RingRef, VarBlocks};

/// All monomials whose block degrees equal `d`, in lex order.
pub fn monomials_of_multidegree(vars: &VarBlocks, d: &Multidegree) -> Result<Vec<Monomial>, AlgError> {
    if d.len() != vars.num_blocks() {
        return Err(AlgError::MultidegreeLength { expected: vars.num_blocks(), got: d.len() });
    }
    let mut out = vec![Monomial::one(vars.num_vars())];
    for b in 0..vars.num_blocks() {
        let range = vars.block_range(b);
        let parts = compositions(d.0[b], range.len());
        let mut next = Vec::with_capacity(out.len() * parts.len());
        for m in &out {
            for part in &parts {
                let mut m = m.clone();
                for (k, &e) in part.iter().enumerate() {
                    m.0[range.start + k] = e;
                }
                next.push(m);
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// Exponent vectors of length `len` summing to `total`.
fn compositions(total: u32, len: usize) -> Vec<Vec<u16>> {
    if len == 1 {
        return vec![vec![total as u16]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, len - 1) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

/// Dense form of multidegree `d` with independently sampled coefficients.
/// Degree-zero forms are nonzero constants.
pub fn random_form<F: Field, R: Rng + ?Sized>(ring: &RingRef<F>, d: &Multidegree, rng: &mut R) -> Result<MultiPoly<F>, AlgError> {
    let field = ring.field();
    if d.total() == 0 {
        if d.len() != ring.vars().num_blocks() {
            return Err(AlgError::MultidegreeLength { expected: ring.vars().num_blocks(), got: d.len() });
        }
        return Ok(MultiPoly::constant(ring, field.sample_nonzero(rng)));
    }
    let monos = monomials_of_multidegree(ring.vars(), d)?;
    Ok(MultiPoly::from_terms(ring, monos.into_iter().map(|m| {
        let c = field.sample(rng);
        (m, c)
    })))
}
