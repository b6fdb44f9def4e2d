use std::cmp::Ordering;

use crate::exactalg::Monomial;

/// Monomial orders over the ring's declared variable sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Graded reverse lexicographic with `x_0 > x_1 > ...` in declaration order.
    GRevLex,
    /// Block order: the listed variables are compared first (grevlex among
    /// themselves); ties are broken by grevlex on the remaining variables.
    /// Any polynomial whose leading term avoids the listed variables avoids
    /// them entirely.
    Elimination { eliminated: Vec<usize> },
}

fn grevlex_on(a: &Monomial, b: &Monomial, idx: impl DoubleEndedIterator<Item = usize> + Clone) -> Ordering {
    let da: u32 = idx.clone().map(|i| a.0[i] as u32).sum();
    let db: u32 = idx.clone().map(|i| b.0[i] as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in idx.rev() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl TermOrder {
    /// Panics for variable indices of 64 or more.
    pub fn elimination(eliminated: impl IntoIterator<Item = usize>) -> Self {
        let mut eliminated: Vec<usize> = eliminated.into_iter().collect();
        assert!(eliminated.iter().all(|&i| i < 64), "at most 64 variables");
        eliminated.sort_unstable();
        eliminated.dedup();
        TermOrder::Elimination { eliminated }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::GRevLex => grevlex_on(a, b, 0..a.len()),
            TermOrder::Elimination { eliminated } => {
                match grevlex_on(a, b, eliminated.iter().copied()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                let mask = eliminated.iter().fold(0u64, |m, &i| m | (1 << i));
                grevlex_on(a, b, (0..a.len()).filter(move |i| mask & (1 << i) == 0))
            }
        }
    }

    /// Whether `m` involves none of the eliminated variables.
    pub fn is_free_of_eliminated(&self, m: &Monomial) -> bool {
        match self {
            TermOrder::GRevLex => true,
            TermOrder::Elimination { eliminated } => eliminated.iter().all(|&i| m.0[i] == 0),
        }
    }
}
