//! Multivariate gcd (primitive PRS) and square-free decomposition.
//!
//! Everything works on integer-normalized polynomials; results are
//! content-1 with the lexicographically-leading coefficient positive.

use std::collections::BTreeMap;

use super::{Monomial, MonomialOrder, Polynomial};

/// Exact quotient f / g, or `None` when g does not divide f.
pub fn exact_div(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    if g.is_zero() {
        return None;
    }
    if f.is_zero() {
        return Some(Polynomial::zero(f.vars().clone()));
    }
    let ord = MonomialOrder::GrevLex;
    // single-divisor division: quotient accumulates leading reductions
    let mut quot = Polynomial::zero(f.vars().clone());
    let mut rem = f.clone();
    let (gm, gc) = {
        let (m, c) = g.leading(&ord)?;
        (m.clone(), c.clone())
    };
    while !rem.is_zero() {
        let (m, c) = {
            let (m, c) = rem.leading(&ord)?;
            (m.clone(), c.clone())
        };
        if !gm.divides(&m) {
            return None;
        }
        let shift = gm.div_into(&m);
        let coef = &c / &gc;
        quot = quot.add(&Polynomial::from_terms(
            f.vars().clone(),
            [(shift.clone(), coef.clone())],
        ));
        rem = rem.sub(&g.mul_term(&shift, &coef));
    }
    Some(quot)
}

/// Divisibility test.
pub fn divides(g: &Polynomial, f: &Polynomial) -> bool {
    exact_div(f, g).is_some()
}

/// Univariate view in `main`: exponent in main -> coefficient polynomial
/// (over the full variable list, with `main` zeroed out).
fn as_univariate(f: &Polynomial, main: usize) -> BTreeMap<u32, Polynomial> {
    let mut coeffs: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        let e = m.0[main];
        let mut m2 = m.clone();
        m2.0[main] = 0;
        coeffs
            .entry(e)
            .or_insert_with(|| Polynomial::zero(f.vars().clone()))
            .add_term(&m2, c);
    }
    coeffs.retain(|_, p| !p.is_zero());
    coeffs
}

/// Content of f with respect to `main`: gcd of the coefficient polynomials.
fn content_wrt(f: &Polynomial, main: usize) -> Polynomial {
    let uni = as_univariate(f, main);
    let mut acc = Polynomial::zero(f.vars().clone());
    for c in uni.values() {
        acc = gcd(&acc, c);
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
    }
    acc
}

/// Pseudo-remainder of f by g in the variable `main`.
fn pseudo_rem(f: &Polynomial, g: &Polynomial, main: usize) -> Polynomial {
    let vars = f.vars().clone();
    let gu = as_univariate(g, main);
    let (&dg, lc_g) = gu.iter().next_back().expect("g nonzero");
    let mut r = f.clone();
    loop {
        let ru = as_univariate(&r, main);
        let Some((&dr, lc_r)) = ru.iter().next_back() else {
            return r; // zero
        };
        if dr < dg {
            return r;
        }
        // r <- lc_g * r - lc_r * x^(dr-dg) * g
        let mut shift = Monomial::one(vars.len());
        shift.0[main] = dr - dg;
        let lc_r = lc_r.clone();
        r = r
            .mul(lc_g)
            .sub(&g.mul(&lc_r).mul_term(&shift, &num_traits::One::one()));
    }
}

/// Gcd over ℚ[x₁..xₙ], returned content-1 with positive lex-leading
/// coefficient (so the result is canonical up to nothing).
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let f = f.normalize_integer();
    let g = g.normalize_integer();
    if f.is_zero() {
        return g;
    }
    if g.is_zero() {
        return f;
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(f.vars().clone());
    }
    // main variable: the highest-index variable occurring in either
    let main = (0..f.nvars())
        .rev()
        .find(|&i| f.involves(i) || g.involves(i))
        .expect("nonconstant");

    let cf = content_wrt(&f, main);
    let cg = content_wrt(&g, main);
    let cont = gcd(&cf, &cg);

    let mut a = exact_div(&f, &cf).expect("content divides").normalize_integer();
    let mut b = exact_div(&g, &cg).expect("content divides").normalize_integer();
    if a.degree_in(main) < b.degree_in(main) {
        std::mem::swap(&mut a, &mut b);
    }
    // primitive PRS
    loop {
        let r = pseudo_rem(&a, &b, main);
        if r.is_zero() {
            break;
        }
        if r.degree_in(main) == 0 {
            return cont.normalize_integer();
        }
        let rc = content_wrt(&r, main);
        let rp = exact_div(&r, &rc).expect("content divides").normalize_integer();
        a = b;
        b = rp;
    }
    cont.mul(&b).normalize_integer()
}

/// Gcd of f with all of its partial derivatives.
fn gcd_with_partials(f: &Polynomial) -> Polynomial {
    let mut d = f.clone();
    for i in 0..f.nvars() {
        let fi = f.derivative(i);
        if fi.is_zero() {
            continue;
        }
        d = gcd(&d, &fi);
        if d.is_constant() {
            break;
        }
    }
    d
}

/// Distinct square-free factors of f: the parts a₁, a₂, … of the
/// square-free decomposition f = const · ∏ aᵢ^i, nonconstant ones only.
/// The product of the returned factors divides f and each factor is
/// square-free; factors are pairwise coprime.
pub fn squarefree_part(f: &Polynomial) -> Vec<Polynomial> {
    assert!(!f.is_zero(), "square-free decomposition of zero");
    let mut chain = vec![f.normalize_integer()];
    // chain[k] = gcd of chain[k-1] with its partials = prod a_i^(i-k)
    while chain.last().expect("nonempty").total_degree() > 0 {
        let d = gcd_with_partials(chain.last().expect("nonempty"));
        chain.push(d);
    }
    // s_k = chain[k-1]/chain[k] = prod_{i>=k} a_i ; a_k = s_k / s_{k+1}
    let mut s = Vec::new();
    for k in 1..chain.len() {
        s.push(
            exact_div(&chain[k - 1], &chain[k])
                .expect("gcd divides")
                .normalize_integer(),
        );
    }
    let mut factors = Vec::new();
    for k in 0..s.len() {
        let a = if k + 1 < s.len() {
            exact_div(&s[k], &s[k + 1]).expect("s_{k+1} divides s_k")
        } else {
            s[k].clone()
        };
        let a = a.normalize_integer();
        if a.total_degree() > 0 {
            factors.push(a);
        }
    }
    factors.sort_by_key(|p| p.to_string());
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, varset};

    #[test]
    fn exact_division() {
        let vs = varset(&["x", "y"]);
        let f = parse_poly(&vs, "x^2 - y^2").unwrap();
        let g = parse_poly(&vs, "x - y").unwrap();
        assert_eq!(exact_div(&f, &g).unwrap(), parse_poly(&vs, "x + y").unwrap());
        assert!(exact_div(&f, &parse_poly(&vs, "x - 1").unwrap()).is_none());
    }

    #[test]
    fn gcd_univariate_matches_euclid() {
        let vs = varset(&["x"]);
        let f = parse_poly(&vs, "(x - 1)^2*(x + 2)").unwrap();
        let g = parse_poly(&vs, "(x - 1)*(x + 3)").unwrap();
        assert_eq!(gcd(&f, &g), parse_poly(&vs, "x - 1").unwrap());
    }

    #[test]
    fn gcd_multivariate() {
        let vs = varset(&["x", "y", "z"]);
        let c = parse_poly(&vs, "x*y - z").unwrap();
        let f = c.mul(&parse_poly(&vs, "x + y").unwrap());
        let g = c.mul(&parse_poly(&vs, "x - z^2").unwrap());
        assert_eq!(gcd(&f, &g), c.normalize_integer());
        // coprime pair
        let a = parse_poly(&vs, "x + 1").unwrap();
        let b = parse_poly(&vs, "y + 1").unwrap();
        assert!(gcd(&a, &b).is_constant());
    }

    #[test]
    fn gcd_handles_integer_contents() {
        let vs = varset(&["x", "y"]);
        let f = parse_poly(&vs, "2*y*x + 3*y^2").unwrap();
        let g = parse_poly(&vs, "y^2*x").unwrap();
        assert_eq!(gcd(&f, &g), parse_poly(&vs, "y").unwrap());
    }

    #[test]
    fn squarefree_splits_multiplicities() {
        let vs = varset(&["x"]);
        let f = parse_poly(&vs, "(x - 1)^2*(x + 2)").unwrap();
        let factors = squarefree_part(&f);
        let mut want = vec![
            parse_poly(&vs, "x - 1").unwrap(),
            parse_poly(&vs, "x + 2").unwrap(),
        ];
        want.sort_by_key(|p| p.to_string());
        assert_eq!(factors, want);
    }

    #[test]
    fn squarefree_monomial_square() {
        let vs = varset(&["x", "w"]);
        let f = parse_poly(&vs, "x^2*w^2").unwrap();
        let factors = squarefree_part(&f);
        assert_eq!(factors, vec![parse_poly(&vs, "x*w").unwrap()]);
    }

    #[test]
    fn squarefree_keeps_squarefree_input_whole() {
        let vs = varset(&["u", "v"]);
        let f = parse_poly(
            &vs,
            "u^5 + 2*u^4*v + 3*u^3*v^2 + 2*u^2*v^3 + u*v^4 - 4*v^5 \
             - 2*u^3*v - 2*u^2*v^2 - 2*u*v^3 + u*v^2",
        )
        .unwrap();
        let factors = squarefree_part(&f);
        assert_eq!(factors, vec![f.normalize_integer()]);
    }
}
