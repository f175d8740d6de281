//! Multivariate polynomials over the rationals.
//!
//! Text format: a sum of terms like `x^2 - 2*x*w - w^2 - 2*x - 2*w + 1`;
//! parsing and printing round-trip exactly. Printing orders terms by
//! descending graded reverse lexicographic order.

mod factor;
mod groebner;
mod ideal;
mod order;
mod parse;

pub use factor::{divides, exact_div, gcd, squarefree_part};
pub use groebner::{buchberger, normal_form};
pub use ideal::PolyIdeal;
pub use order::MonomialOrder;
pub use parse::parse_poly;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Exponent vector over a fixed variable list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Polynomial over ℚ with a shared variable list.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Rat>,
}

pub fn varset(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

impl Polynomial {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<Vec<String>>, c: Rat) -> Self {
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            let n = p.nvars();
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn one(vars: Arc<Vec<String>>) -> Self {
        Polynomial::constant(vars, Rat::one())
    }

    pub fn var(vars: Arc<Vec<String>>, i: usize) -> Self {
        let n = vars.len();
        assert!(i < n);
        let mut p = Polynomial::zero(vars);
        p.terms.insert(Monomial::var(n, i), Rat::one());
        p
    }

    pub fn from_terms<I>(vars: Arc<Vec<String>>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub(crate) fn add_term(&mut self, m: &Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m, c);
        }
        r
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut r = Polynomial::zero(self.vars.clone());
        for (m, c) in &other.terms {
            for (k, v) in &self.terms {
                r.add_term(&k.mul(m), &(v * c));
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one(self.vars.clone());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut r = Polynomial::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[var] = e - 1;
                r.add_term(&m2, &(c * Rat::from_integer(BigInt::from(e))));
            }
        }
        r
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono: f64 = m
                    .0
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| point[i].powi(e as i32))
                    .product();
                crate::rat::to_f64(c) * mono
            })
            .sum()
    }

    /// Leading (monomial, coefficient) under `ord`.
    pub fn leading(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| ord.cmp(a, b))
    }

    /// Sum of absolute values of the coefficients.
    pub fn coeff_norm(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c.abs())
    }

    /// Rescales so that coefficients are integers with content 1 and the
    /// coefficient of the lexicographically greatest monomial is positive.
    pub fn normalize_integer(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            num = num.gcd(&(c.numer() * &den / c.denom()));
        }
        let mut scale = Rat::new(den, num);
        let lex_lead = self.terms.keys().max().expect("nonzero");
        if (&self.terms[lex_lead] * &scale).is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Reinterprets over a sub-list of variables given by `keep` (indices
    /// into the current list); panics if a dropped variable occurs.
    pub fn project_vars(&self, keep: &[usize], new_vars: Arc<Vec<String>>) -> Polynomial {
        assert_eq!(keep.len(), new_vars.len());
        let mut r = Polynomial::zero(new_vars);
        for (m, c) in &self.terms {
            let e: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            let dropped_total: u32 = m.degree() - e.iter().sum::<u32>();
            assert_eq!(dropped_total, 0, "dropped variable occurs in polynomial");
            r.add_term(&Monomial(e), c);
        }
        r
    }

    /// Reinterprets over a super-list of variables; `embed[i]` is the new
    /// index of current variable i.
    pub fn embed_vars(&self, embed: &[usize], new_vars: Arc<Vec<String>>) -> Polynomial {
        assert_eq!(embed.len(), self.nvars());
        let n = new_vars.len();
        let mut r = Polynomial::zero(new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &exp) in m.0.iter().enumerate() {
                e[embed[i]] = exp;
            }
            r.add_term(&Monomial(e), c);
        }
        r
    }
}

// terms printed in descending grevlex, `a/b*x^2*y` style
impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ord = MonomialOrder::GrevLex;
        let mut ms: Vec<&Monomial> = self.terms.keys().collect();
        ms.sort_by(|a, b| ord.cmp(b, a));
        for (idx, m) in ms.iter().enumerate() {
            let c = &self.terms[*m];
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(crate::rat::fmt_rat(&mag));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn arithmetic_basics() {
        let vs = varset(&["x", "y"]);
        let x = Polynomial::var(vs.clone(), 0);
        let y = Polynomial::var(vs.clone(), 1);
        let p = x.add(&y).mul(&x.sub(&y)); // x^2 - y^2
        let q = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, q);
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.eval(&[int(3), int(2)]), int(5));
    }

    #[test]
    fn display_matches_expected_format() {
        let vs = varset(&["x", "w"]);
        let p = parse::parse_poly(&vs, "x^2 - 2*x*w - w^2 - 2*x - 2*w + 1").unwrap();
        assert_eq!(p.to_string(), "x^2 - 2*x*w - w^2 - 2*x - 2*w + 1");
    }

    #[test]
    fn parse_print_round_trip() {
        let vs = varset(&["x", "y", "z"]);
        for s in [
            "x",
            "-x + y",
            "2*x*y^3 - 1/2*z + 7",
            "x^2*y^2*z^2 + x*y*z - 3",
            "1/6",
            "0",
        ] {
            let p = parse::parse_poly(&vs, s).unwrap();
            let printed = p.to_string();
            let q = parse::parse_poly(&vs, &printed).unwrap();
            assert_eq!(p, q, "round trip failed for `{s}` -> `{printed}`");
        }
    }

    #[test]
    fn normalize_integer_clears_denominators() {
        let vs = varset(&["x", "y"]);
        let p = parse::parse_poly(&vs, "1/2*x - 1/3*y").unwrap();
        let n = p.normalize_integer();
        assert_eq!(n.to_string(), "3*x - 2*y");
        let q = parse::parse_poly(&vs, "-2*x + 4*y").unwrap();
        assert_eq!(q.normalize_integer().to_string(), "x - 2*y");
    }

    #[test]
    fn derivative_and_eval() {
        let vs = varset(&["u", "v"]);
        let f = parse::parse_poly(&vs, "u^3*v - 2*u*v^2 + v").unwrap();
        let fu = f.derivative(0);
        assert_eq!(fu.to_string(), "3*u^2*v - 2*v^2");
        assert_eq!(fu.eval(&[int(1), rat(1, 2)]), rat(1, 1));
    }
}
