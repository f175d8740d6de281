//! Polynomial ideals with cached reduced Gröbner bases, elimination,
//! and saturation by the product of the coordinates.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::One;

use super::{buchberger, normal_form, Monomial, MonomialOrder, Polynomial};
use crate::rat::Rat;

pub struct PolyIdeal {
    vars: Arc<Vec<String>>,
    generators: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>,
}

impl Clone for PolyIdeal {
    fn clone(&self) -> Self {
        PolyIdeal {
            vars: self.vars.clone(),
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().expect("poisoned").clone()),
        }
    }
}

impl std::fmt::Debug for PolyIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ideal(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl PolyIdeal {
    pub fn new(vars: Arc<Vec<String>>, generators: Vec<Polynomial>) -> Self {
        let generators: Vec<Polynomial> = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                assert_eq!(g.vars(), &vars, "generator over a different variable list");
                g.normalize_integer()
            })
            .collect();
        PolyIdeal { vars, generators, cache: Mutex::new(HashMap::new()) }
    }

    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        PolyIdeal::new(vars, Vec::new())
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced Gröbner basis under `ord`, cached per order.
    pub fn groebner_basis(&self, ord: &MonomialOrder) -> Arc<Vec<Polynomial>> {
        if let Some(gb) = self.cache.lock().expect("poisoned").get(ord) {
            return gb.clone();
        }
        let gb = Arc::new(buchberger(&self.generators, ord));
        self.cache
            .lock()
            .expect("poisoned")
            .entry(ord.clone())
            .or_insert(gb)
            .clone()
    }

    pub fn normal_form(&self, f: &Polynomial, ord: &MonomialOrder) -> Polynomial {
        let gb = self.groebner_basis(ord);
        normal_form(f, &gb, ord)
    }

    /// Ideal membership via grevlex normal form.
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f, &MonomialOrder::GrevLex).is_zero()
    }

    /// Two-sided membership of generator sets.
    pub fn equals(&self, other: &PolyIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }

    /// Intersection with the subring on the variables NOT in `drop`,
    /// returned over the kept variable list. The generators of the result
    /// are the reduced grevlex Gröbner basis of the elimination ideal.
    pub fn eliminate(&self, drop: &BTreeSet<usize>) -> PolyIdeal {
        if drop.is_empty() {
            return self.clone();
        }
        let keep: Vec<usize> = (0..self.vars.len()).filter(|i| !drop.contains(i)).collect();
        let new_vars: Arc<Vec<String>> =
            Arc::new(keep.iter().map(|&i| self.vars[i].clone()).collect());
        let ord = MonomialOrder::Block(drop.clone());
        let gb = self.groebner_basis(&ord);
        let kept_polys: Vec<Polynomial> = gb
            .iter()
            .filter(|p| drop.iter().all(|&d| !p.involves(d)))
            .map(|p| p.project_vars(&keep, new_vars.clone()))
            .collect();
        PolyIdeal::new(new_vars, kept_polys)
    }

    /// I : (x_1 ... x_n)^∞ via one auxiliary variable t: adjoin
    /// t*x_1*...*x_n - 1 and eliminate t.
    pub fn saturate_coordinates(&self) -> PolyIdeal {
        let n = self.vars.len();
        let mut ext_names = vec!["t#".to_string()];
        ext_names.extend(self.vars.iter().cloned());
        let ext: Arc<Vec<String>> = Arc::new(ext_names);
        let embed: Vec<usize> = (1..=n).collect();

        let mut gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| g.embed_vars(&embed, ext.clone()))
            .collect();
        let t_prod = Polynomial::from_terms(
            ext.clone(),
            [
                (Monomial(vec![1; n + 1]), Rat::one()),
                (Monomial::one(n + 1), -Rat::one()),
            ],
        );
        gens.push(t_prod);

        let staged = PolyIdeal::new(ext, gens);
        let dropped: BTreeSet<usize> = [0usize].into_iter().collect();
        let elim = staged.eliminate(&dropped);
        // variable names are unchanged by construction
        PolyIdeal::new(self.vars.clone(), elim.generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, varset};

    fn ideal(vs: &Arc<Vec<String>>, ss: &[&str]) -> PolyIdeal {
        PolyIdeal::new(vs.clone(), ss.iter().map(|s| parse_poly(vs, s).unwrap()).collect())
    }

    #[test]
    fn eliminate_nothing_returns_same_ideal() {
        let vs = varset(&["x", "y"]);
        let i = ideal(&vs, &["x*y - 1"]);
        let j = i.eliminate(&BTreeSet::new());
        assert!(i.equals(&j));
    }

    #[test]
    fn eliminate_square_branch_ideal() {
        let vs = varset(&["x", "y", "z", "w"]);
        let i = ideal(&vs, &["x*w - y*z", "x + y + z + w - 1", "y - z"]);
        let drop: BTreeSet<usize> = [1usize, 2].into_iter().collect();
        let e = i.eliminate(&drop);
        assert_eq!(e.vars().as_slice(), &["x".to_string(), "w".to_string()]);
        assert_eq!(e.generators().len(), 1);
        let vs2 = e.vars().clone();
        let expect = parse_poly(&vs2, "x^2 - 2*x*w + w^2 - 2*x - 2*w + 1").unwrap();
        assert_eq!(e.generators()[0], expect);
    }

    #[test]
    fn eliminated_generators_avoid_dropped_variables() {
        let vs = varset(&["a", "b", "c"]);
        let i = ideal(&vs, &["a^2 - b", "a^3 - c"]);
        let drop: BTreeSet<usize> = [0usize].into_iter().collect();
        let e = i.eliminate(&drop);
        // the twisted cubic relation b^3 = c^2
        assert!(e.generators().iter().any(|g| {
            let vs2 = e.vars().clone();
            *g == parse_poly(&vs2, "b^3 - c^2").unwrap()
        }));
    }

    #[test]
    fn saturation_keeps_already_saturated_ideal() {
        let vs = varset(&["x", "y", "z", "w"]);
        let i = ideal(&vs, &["x*w - y*z"]);
        let s = i.saturate_coordinates();
        assert!(i.equals(&s));
    }

    #[test]
    fn saturation_removes_coordinate_factor() {
        let vs = varset(&["x"]);
        let i = ideal(&vs, &["x^2 - x"]);
        let s = i.saturate_coordinates();
        let expect = ideal(&vs, &["x - 1"]);
        assert!(s.equals(&expect));
    }

    #[test]
    fn groebner_cache_is_shared() {
        let vs = varset(&["x", "y"]);
        let i = ideal(&vs, &["x^2 - y", "y^2 - x"]);
        let g1 = i.groebner_basis(&MonomialOrder::GrevLex);
        let g2 = i.groebner_basis(&MonomialOrder::GrevLex);
        assert!(Arc::ptr_eq(&g1, &g2));
    }

    #[test]
    fn membership_both_directions() {
        let vs = varset(&["x", "y"]);
        let i = ideal(&vs, &["x^2 - y"]);
        assert!(i.contains(&parse_poly(&vs, "x^4 - y^2").unwrap()));
        assert!(!i.contains(&parse_poly(&vs, "x - y").unwrap()));
        assert!(!i.contains(&parse_poly(&vs, "1").unwrap()));
    }
}
