//! Buchberger's algorithm with the product and chain criteria, full
//! normal forms, and reduced-basis postprocessing.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Polynomial};
use crate::rat::Rat;

/// Terms sorted descending under the active order.
#[derive(Clone)]
struct OrdPoly {
    terms: Vec<(Monomial, Rat)>,
}

impl OrdPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> &(Monomial, Rat) {
        &self.terms[0]
    }
}

fn to_ord(p: &Polynomial, ord: &MonomialOrder) -> OrdPoly {
    let mut terms: Vec<(Monomial, Rat)> =
        p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    terms.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
    OrdPoly { terms }
}

fn from_ord(p: &OrdPoly, vars: Arc<Vec<String>>) -> Polynomial {
    Polynomial::from_terms(vars, p.terms.iter().cloned())
}

/// a - c * x^shift * b, both inputs sorted descending.
fn sub_scaled(
    a: &OrdPoly,
    shift: &Monomial,
    c: &Rat,
    b: &OrdPoly,
    ord: &MonomialOrder,
) -> OrdPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.terms.len() && j < b.terms.len() {
        let (am, ac) = &a.terms[i];
        let bm = b.terms[j].0.mul(shift);
        match ord.cmp(am, &bm) {
            Ordering::Greater => {
                out.push((am.clone(), ac.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, -(c * &b.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = ac - c * &b.terms[j].1;
                if !v.is_zero() {
                    out.push((am.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    for (bm, bc) in &b.terms[j..] {
        out.push((bm.mul(shift), -(c * bc)));
    }
    OrdPoly { terms: out }
}

/// Rescale to integer coefficients with content 1; sign fixed so the
/// leading coefficient under the active order is positive.
fn normalize_ord(p: &mut OrdPoly) {
    if p.is_zero() {
        return;
    }
    let mut den = BigInt::one();
    for (_, c) in &p.terms {
        den = den.lcm(c.denom());
    }
    let mut num = BigInt::zero();
    for (_, c) in &p.terms {
        num = num.gcd(&(c.numer() * &den / c.denom()));
    }
    let mut scale = Rat::new(den, num);
    if (&p.terms[0].1 * &scale).is_negative() {
        scale = -scale;
    }
    for (_, c) in p.terms.iter_mut() {
        *c *= &scale;
    }
}

/// Full normal form: no term of the result is divisible by any leading
/// monomial of `basis`.
fn nf(f: OrdPoly, basis: &[&OrdPoly], ord: &MonomialOrder) -> OrdPoly {
    let mut rem: Vec<(Monomial, Rat)> = Vec::new();
    let mut p = f;
    'outer: while !p.is_zero() {
        let (m, c) = p.leading().clone();
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let (gm, gc) = g.leading();
            if gm.divides(&m) {
                let shift = gm.div_into(&m);
                let coef = &c / gc;
                p = sub_scaled(&p, &shift, &coef, g, ord);
                continue 'outer;
            }
        }
        rem.push((m, c));
        p.terms.remove(0);
    }
    OrdPoly { terms: rem }
}

/// Normal form of `f` modulo `basis` under `ord`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let vars = f.vars().clone();
    let ord_basis: Vec<OrdPoly> = basis.iter().map(|g| to_ord(g, ord)).collect();
    let refs: Vec<&OrdPoly> = ord_basis.iter().collect();
    let r = nf(to_ord(f, ord), &refs, ord);
    from_ord(&r, vars)
}

fn s_poly(f: &OrdPoly, g: &OrdPoly, ord: &MonomialOrder) -> OrdPoly {
    let (fm, fc) = f.leading();
    let (gm, gc) = g.leading();
    let l = fm.lcm(gm);
    let f_scaled = OrdPoly {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&fm.div_into(&l)), c / fc))
            .collect(),
    };
    sub_scaled(&f_scaled, &gm.div_into(&l), &(Rat::one() / gc), g, ord)
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `ord`.
///
/// Output elements have integer content-1 coefficients with the
/// lexicographically-leading coefficient positive, sorted ascending by
/// leading monomial. Recomputation from shuffled generators yields the
/// identical basis.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Vec<Polynomial> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let vars = first.vars().clone();

    let mut basis: Vec<OrdPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let mut og = to_ord(g, ord);
            normalize_ord(&mut og);
            basis.push(og);
        }
    }

    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pending.push((i, j));
            pending_set.insert((i, j));
        }
    }

    while !pending.is_empty() {
        // normal selection: minimal lcm degree, then order on lcm, then indices
        let mut best = 0;
        let mut best_lcm = pair_lcm(&basis, pending[0]);
        for idx in 1..pending.len() {
            let cand = pair_lcm(&basis, pending[idx]);
            if pair_less(&cand, pending[idx], &best_lcm, pending[best], ord) {
                best = idx;
                best_lcm = cand;
            }
        }
        let (i, j) = pending.swap_remove(best);
        pending_set.remove(&(i, j));

        let (mi, _) = basis[i].leading();
        let (mj, _) = basis[j].leading();
        if mi.coprime(mj) {
            continue;
        }
        let lcm = mi.lcm(mj);
        let mut skip = false;
        for (k, gk) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            if gk.leading().0.divides(&lcm)
                && !pending_set.contains(&key(i, k))
                && !pending_set.contains(&key(j, k))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }

        let s = s_poly(&basis[i], &basis[j], ord);
        let refs: Vec<&OrdPoly> = basis.iter().collect();
        let mut h = nf(s, &refs, ord);
        if h.is_zero() {
            continue;
        }
        normalize_ord(&mut h);
        let t = basis.len();
        basis.push(h);
        for k in 0..t {
            pending.push((k, t));
            pending_set.insert((k, t));
        }
    }

    reduce_basis(basis, ord, vars)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn pair_lcm(basis: &[OrdPoly], (i, j): (usize, usize)) -> Monomial {
    basis[i].leading().0.lcm(&basis[j].leading().0)
}

fn pair_less(
    a: &Monomial,
    (ai, aj): (usize, usize),
    b: &Monomial,
    (bi, bj): (usize, usize),
    ord: &MonomialOrder,
) -> bool {
    match a.degree().cmp(&b.degree()) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => match ord.cmp(a, b) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => (aj, ai) < (bj, bi),
        },
    }
}

/// Minimalize, inter-reduce, normalize, and sort the basis.
fn reduce_basis(
    basis: Vec<OrdPoly>,
    ord: &MonomialOrder,
    vars: Arc<Vec<String>>,
) -> Vec<Polynomial> {
    let mut minimal: Vec<OrdPoly> = Vec::new();
    'cand: for (i, g) in basis.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mi = &g.leading().0;
        for (j, h) in basis.iter().enumerate() {
            if i == j || h.is_zero() {
                continue;
            }
            let mj = &h.leading().0;
            if mj.divides(mi) && (mj != mi || j < i) {
                continue 'cand;
            }
        }
        minimal.push(g.clone());
    }

    loop {
        let mut changed = false;
        let mut i = 0;
        while i < minimal.len() {
            let g = minimal.remove(i);
            let orig = g.terms.clone();
            let others: Vec<&OrdPoly> = minimal.iter().collect();
            let mut r = nf(g, &others, ord);
            normalize_ord(&mut r);
            if r.is_zero() {
                changed = true;
            } else {
                if r.terms != orig {
                    changed = true;
                }
                minimal.insert(i, r);
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }

    let mut out: Vec<Polynomial> = minimal
        .iter()
        .map(|g| from_ord(g, vars.clone()).normalize_integer())
        .collect();
    out.sort_by(|a, b| {
        let la = a.leading(ord).expect("nonzero").0;
        let lb = b.leading(ord).expect("nonzero").0;
        ord.cmp(la, lb)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, varset};

    fn polys(vs: &Arc<Vec<String>>, ss: &[&str]) -> Vec<Polynomial> {
        ss.iter().map(|s| parse_poly(vs, s).unwrap()).collect()
    }

    /// Definitive certificate: every S-polynomial reduces to zero and
    /// every original generator reduces to zero.
    fn assert_is_groebner_basis_of(
        gens: &[Polynomial],
        gb: &[Polynomial],
        ord: &MonomialOrder,
    ) {
        for g in gens {
            assert!(
                normal_form(g, gb, ord).is_zero(),
                "generator {g} does not reduce to zero"
            );
        }
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                let a = to_ord(&gb[i], ord);
                let b = to_ord(&gb[j], ord);
                let s = s_poly(&a, &b, ord);
                let refs: Vec<OrdPoly> = gb.iter().map(|p| to_ord(p, ord)).collect();
                let refs: Vec<&OrdPoly> = refs.iter().collect();
                assert!(
                    nf(s, &refs, ord).is_zero(),
                    "S-poly of {} and {} does not reduce to zero",
                    gb[i],
                    gb[j]
                );
            }
        }
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let vs = varset(&["x"]);
        let gens = polys(&vs, &["x - 1"]);
        let gb = buchberger(&gens, &MonomialOrder::Lex);
        assert_eq!(gb, gens);
    }

    #[test]
    fn zero_ideal_gives_empty_basis() {
        let vs = varset(&["x"]);
        let z = Polynomial::zero(vs);
        assert!(buchberger(&[z], &MonomialOrder::Lex).is_empty());
        assert!(buchberger(&[], &MonomialOrder::Lex).is_empty());
    }

    #[test]
    fn textbook_lex_example() {
        // CLO-style: x^2 + y^2 - 1, x - y
        let vs = varset(&["x", "y"]);
        let gens = polys(&vs, &["x^2 + y^2 - 1", "x - y"]);
        let ord = MonomialOrder::Lex;
        let gb = buchberger(&gens, &ord);
        assert_is_groebner_basis_of(&gens, &gb, &ord);
        let expect = polys(&vs, &["2*y^2 - 1", "x - y"]);
        let mut got = gb.clone();
        got.sort_by_key(|p| p.to_string());
        let mut want = expect.clone();
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
    }

    #[test]
    fn blob_ideal_grevlex_self_consistency() {
        let vs = varset(&["x", "y", "z", "u", "v"]);
        let gens = polys(&vs, &["u^2 - y*v", "v^3 - x*z*u", "u*v^2 - x*y*z"]);
        let ord = MonomialOrder::GrevLex;
        let gb = buchberger(&gens, &ord);
        assert_is_groebner_basis_of(&gens, &gb, &ord);
    }

    #[test]
    fn deterministic_under_generator_shuffle() {
        let vs = varset(&["x", "y", "z"]);
        let gens = polys(&vs, &["x*y - z", "y*z - x", "x*z - y"]);
        let ord = MonomialOrder::GrevLex;
        let gb1 = buchberger(&gens, &ord);
        let shuffled = vec![gens[2].clone(), gens[0].clone(), gens[1].clone()];
        let gb2 = buchberger(&shuffled, &ord);
        assert_eq!(gb1, gb2);
        assert_is_groebner_basis_of(&gens, &gb1, &ord);
    }

    #[test]
    fn block_order_eliminates_square_branch_ideal() {
        // eliminating {y,z} from the square-model branch ideal leaves the
        // parabola (x-w)^2 - 2x - 2w + 1
        let vs = varset(&["x", "y", "z", "w"]);
        let gens = polys(&vs, &["x*w - y*z", "x + y + z + w - 1", "y - z"]);
        let ord = MonomialOrder::eliminating([1usize, 2]);
        let gb = buchberger(&gens, &ord);
        assert_is_groebner_basis_of(&gens, &gb, &ord);
        let kept: Vec<&Polynomial> = gb
            .iter()
            .filter(|p| !p.involves(1) && !p.involves(2))
            .collect();
        assert_eq!(kept.len(), 1);
        let expect = parse_poly(&vs, "x^2 - 2*x*w + w^2 - 2*x - 2*w + 1").unwrap();
        assert_eq!(kept[0], &expect);
    }

    #[test]
    fn normal_form_is_idempotent_and_linear() {
        let vs = varset(&["x", "y"]);
        let gens = polys(&vs, &["x^2 - y", "y^2 - 1"]);
        let ord = MonomialOrder::GrevLex;
        let gb = buchberger(&gens, &ord);
        let f = parse_poly(&vs, "x^4*y + 3*x^2 - y").unwrap();
        let r = normal_form(&f, &gb, &ord);
        let r2 = normal_form(&r, &gb, &ord);
        assert_eq!(r, r2);
        // f - NF(f) is in the ideal
        let diff = f.sub(&r);
        assert!(normal_form(&diff, &gb, &ord).is_zero());
    }
}
