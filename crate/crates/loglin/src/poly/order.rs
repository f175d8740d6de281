//! Monomial orders: lex, graded reverse lex, and the block elimination
//! order (lex on the dropped block over grevlex on the kept block).

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::Monomial;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Elimination order: monomials compared lex on `first`, ties broken
    /// grevlex on the remaining variables. Any monomial involving a `first`
    /// variable dominates every monomial that involves none.
    Block(BTreeSet<usize>),
}

fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn cmp_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    // larger = the one whose LAST differing exponent is smaller
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn eliminating(first: impl IntoIterator<Item = usize>) -> Self {
        MonomialOrder::Block(first.into_iter().collect())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => cmp_lex(&a.0, &b.0),
            MonomialOrder::GrevLex => cmp_grevlex(&a.0, &b.0),
            MonomialOrder::Block(first) => {
                let pa: Vec<u32> = first.iter().map(|&i| a.0[i]).collect();
                let pb: Vec<u32> = first.iter().map(|&i| b.0[i]).collect();
                match cmp_lex(&pa, &pb) {
                    Ordering::Equal => {
                        let ra: Vec<u32> = (0..a.0.len())
                            .filter(|i| !first.contains(i))
                            .map(|i| a.0[i])
                            .collect();
                        let rb: Vec<u32> = (0..b.0.len())
                            .filter(|i| !first.contains(i))
                            .map(|i| b.0[i])
                            .collect();
                        cmp_grevlex(&ra, &rb)
                    }
                    o => o,
                }
            }
        }
    }
}
