//! The defining polynomials of the algebraic boundary of the completable
//! region: eliminate the unobserved variables from the branch-locus ideal
//! and from the model-boundary ideal, square-free factor the results, and
//! validate each factor by sampling.
//!
//! Minimal-prime decomposition is replaced by square-free factoring plus a
//! sampling validator: factors that vanish on sampled branch images are
//! the geometric components, factors that do not are reported as spurious
//! rather than silently dropped.

use std::collections::BTreeSet;

use num_traits::One;

use crate::completion::{branch_vector, ObservedSet};
use crate::error::Result;
use crate::poly::{squarefree_part, Monomial, PolyIdeal, Polynomial};
use crate::rat::{self, Rat};
use crate::sampler::{sample_branch_locus, BranchLocusSamples, SampleConfig};
use crate::toric::{toric_ideal, ModelMatrix};

/// An eliminant in the observed variables with its square-free factors.
#[derive(Clone, Debug)]
pub struct EliminantReport {
    pub ideal: PolyIdeal,
    pub factors: Vec<Polynomial>,
    pub principal: bool,
}

fn eliminant_report(ideal: PolyIdeal) -> EliminantReport {
    let mut factors: Vec<Polynomial> = Vec::new();
    for g in ideal.generators() {
        for f in squarefree_part(g) {
            if !factors.contains(&f) {
                factors.push(f);
            }
        }
    }
    factors.sort_by_key(|p| p.to_string());
    let principal = ideal.generators().len() <= 1;
    EliminantReport { ideal, factors, principal }
}

/// Branch-image eliminant, or the reason the branch locus is empty.
#[derive(Clone, Debug)]
pub enum BranchEliminant {
    Empty { reason: String },
    Ideal(EliminantReport),
}

fn sum_to_one(vars: &std::sync::Arc<Vec<String>>) -> Polynomial {
    let n = vars.len();
    let mut p = Polynomial::constant(vars.clone(), -Rat::one());
    for i in 0..n {
        p = p.add(&Polynomial::var(vars.clone(), i));
    }
    p
}

fn coordinate_product(vars: &std::sync::Arc<Vec<String>>) -> Polynomial {
    Polynomial::from_terms(vars.clone(), [(Monomial(vec![1; vars.len()]), Rat::one())])
}

fn unobserved(model: &ModelMatrix, obs: &ObservedSet) -> BTreeSet<usize> {
    let e: BTreeSet<usize> = obs.indices().iter().copied().collect();
    (0..model.cols()).filter(|j| !e.contains(j)).collect()
}

/// Eliminate the unobserved variables from J = I_A + ⟨Σx - 1, νᵀx⟩.
pub fn branch_image_eliminant(model: &ModelMatrix, obs: &ObservedSet) -> Result<BranchEliminant> {
    obs.require_rank_ok()?;
    if obs.in_proper_facial_set(model) {
        return Ok(BranchEliminant::Empty {
            reason: "E is contained in a proper facial set, so the branch locus is empty"
                .into(),
        });
    }
    let bv = branch_vector(model, obs)?;
    let vars = model.vars().clone();
    let mut gens = toric_ideal(model).generators().to_vec();
    gens.push(sum_to_one(&vars));
    let nu_form = Polynomial::from_terms(
        vars.clone(),
        bv.nu.iter().enumerate().map(|(j, c)| {
            (Monomial::var(vars.len(), j), Rat::from_integer(c.clone()))
        }),
    );
    gens.push(nu_form);
    let j = PolyIdeal::new(vars, gens);
    let elim = j.eliminate(&unobserved(model, obs));
    Ok(BranchEliminant::Ideal(eliminant_report(elim)))
}

/// Eliminate the unobserved variables from I_A + ⟨Σx - 1, Πx⟩.
pub fn model_boundary_eliminant(model: &ModelMatrix, obs: &ObservedSet) -> Result<EliminantReport> {
    obs.require_rank_ok()?;
    let vars = model.vars().clone();
    let mut gens = toric_ideal(model).generators().to_vec();
    gens.push(sum_to_one(&vars));
    gens.push(coordinate_product(&vars));
    let j = PolyIdeal::new(vars, gens);
    let elim = j.eliminate(&unobserved(model, obs));
    Ok(eliminant_report(elim))
}

/// Verdict of the sampling validator for one factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Vanishing,
    Spurious,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Vanishing => "vanishing",
            Verdict::Spurious => "spurious",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Does the factor vanish (within 1e-8 of its coefficient norm) on at
/// least 95% of the sampled points?
pub fn validate_component_by_sampling(factor: &Polynomial, samples: &[Vec<f64>]) -> Verdict {
    if factor.is_constant() {
        return Verdict::Spurious;
    }
    if samples.is_empty() {
        return Verdict::Inconclusive;
    }
    let norm = rat::to_f64(&factor.coeff_norm());
    let vanishing = samples
        .iter()
        .filter(|s| factor.eval_f64(s).abs() <= 1e-8 * norm)
        .count();
    if (vanishing as f64) >= 0.95 * (samples.len() as f64) {
        Verdict::Vanishing
    } else {
        Verdict::Spurious
    }
}

/// The assembled boundary description with per-factor verdicts.
#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub branch: BranchEliminant,
    pub model_boundary: EliminantReport,
    /// Square-free factors of the product ideal when both eliminants are
    /// principal; None (with `radical_gap`) otherwise.
    pub combined_factors: Option<Vec<Polynomial>>,
    /// Set when a non-principal eliminant prevented the radical of the
    /// product from being formed.
    pub radical_gap: bool,
    /// (factor, verdict) over the branch-locus samples.
    pub validations: Vec<(Polynomial, Verdict)>,
}

pub fn algebraic_boundary(
    model: &ModelMatrix,
    obs: &ObservedSet,
    config: &SampleConfig,
) -> Result<BoundaryReport> {
    let branch = branch_image_eliminant(model, obs)?;
    let model_boundary = model_boundary_eliminant(model, obs)?;

    let samples: Vec<Vec<f64>> = match sample_branch_locus(model, obs, config)? {
        BranchLocusSamples::Points(ps) => {
            let idx = obs.indices().to_vec();
            ps.into_iter()
                .map(|p| idx.iter().map(|&j| p[j]).collect())
                .collect()
        }
        BranchLocusSamples::Empty { .. } => Vec::new(),
    };

    let mut all_factors: Vec<Polynomial> = Vec::new();
    let mut push = |fs: &[Polynomial], out: &mut Vec<Polynomial>| {
        for f in fs {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
    };
    let mut both_principal = model_boundary.principal;
    if let BranchEliminant::Ideal(rep) = &branch {
        both_principal &= rep.principal;
        push(&rep.factors, &mut all_factors);
    }
    push(&model_boundary.factors, &mut all_factors);
    all_factors.sort_by_key(|p| p.to_string());

    let combined_factors = both_principal.then(|| all_factors.clone());
    let validations: Vec<(Polynomial, Verdict)> = all_factors
        .iter()
        .map(|f| (f.clone(), validate_component_by_sampling(f, &samples)))
        .collect();

    Ok(BoundaryReport {
        branch,
        model_boundary,
        combined_factors,
        radical_gap: !both_principal,
        validations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{divides, parse_poly};
    use crate::testmodels::*;

    fn obs(model: &ModelMatrix, one_based: &[usize]) -> ObservedSet {
        let set: BTreeSet<usize> = one_based.iter().map(|&i| i - 1).collect();
        ObservedSet::new(model, &set).unwrap()
    }

    #[test]
    fn square_branch_eliminant_is_the_parabola() {
        let m = square_model();
        let o = obs(&m, &[1, 4]);
        let rep = match branch_image_eliminant(&m, &o).unwrap() {
            BranchEliminant::Ideal(rep) => rep,
            BranchEliminant::Empty { .. } => panic!("branch locus is not empty"),
        };
        assert!(rep.principal);
        let vs = rep.ideal.vars().clone();
        assert_eq!(vs.as_slice(), &["x".to_string(), "w".to_string()]);
        let expect = parse_poly(&vs, "x^2 - 2*x*w + w^2 - 2*x - 2*w + 1").unwrap();
        assert_eq!(rep.ideal.generators(), &[expect.clone()]);
        assert_eq!(rep.factors, vec![expect]);
    }

    #[test]
    fn blob_branch_eliminant_is_the_quintic() {
        let m = blob_model();
        let o = obs(&m, &[4, 5]);
        let rep = match branch_image_eliminant(&m, &o).unwrap() {
            BranchEliminant::Ideal(rep) => rep,
            BranchEliminant::Empty { .. } => panic!("branch locus is not empty"),
        };
        let vs = rep.ideal.vars().clone();
        let expect = parse_poly(
            &vs,
            "u^5 + 2*u^4*v + 3*u^3*v^2 + 2*u^2*v^3 + u*v^4 - 4*v^5 \
             - 2*u^3*v - 2*u^2*v^2 - 2*u*v^3 + u*v^2",
        )
        .unwrap();
        assert_eq!(rep.ideal.generators(), &[expect.clone()]);
        assert_eq!(rep.factors, vec![expect]);
    }

    #[test]
    fn hierarchical_branch_locus_empty() {
        let m = hierarchical_model();
        let o = obs(&m, &[1, 2, 3, 4, 5]);
        match branch_image_eliminant(&m, &o).unwrap() {
            BranchEliminant::Empty { reason } => assert!(reason.contains("facial")),
            BranchEliminant::Ideal(_) => panic!("branch locus should be empty"),
        }
    }

    #[test]
    fn tri2pts_branch_eliminant_vanishes_on_samples() {
        let m = tri2pts_model();
        let o = obs(&m, &[4, 5]);
        let rep = match branch_image_eliminant(&m, &o).unwrap() {
            BranchEliminant::Ideal(rep) => rep,
            BranchEliminant::Empty { .. } => panic!("branch locus is not empty"),
        };
        assert!(rep.principal);
        let samples = match sample_branch_locus(&m, &o, &SampleConfig::new(5, 60)).unwrap() {
            BranchLocusSamples::Points(ps) => ps,
            BranchLocusSamples::Empty { .. } => unreachable!(),
        };
        let projected: Vec<Vec<f64>> =
            samples.iter().map(|p| vec![p[3], p[4]]).collect();
        for f in &rep.factors {
            assert_eq!(validate_component_by_sampling(f, &projected), Verdict::Vanishing);
        }
    }

    #[test]
    fn square_model_boundary_has_coordinate_axes() {
        let m = square_model();
        let o = obs(&m, &[1, 4]);
        let rep = model_boundary_eliminant(&m, &o).unwrap();
        let vs = rep.ideal.vars().clone();
        let x = parse_poly(&vs, "x").unwrap();
        let w = parse_poly(&vs, "w").unwrap();
        assert!(rep
            .ideal
            .generators()
            .iter()
            .any(|g| divides(&x, g) && divides(&w, g)));
        assert!(rep.factors.contains(&parse_poly(&vs, "x*w").unwrap()));
    }

    #[test]
    fn hierarchical_model_boundary_contains_the_f_polynomial() {
        let m = hierarchical_model();
        let o = obs(&m, &[1, 2, 3, 4, 5]);
        let rep = model_boundary_eliminant(&m, &o).unwrap();
        let vs = rep.ideal.vars().clone();
        let f = parse_poly(
            &vs,
            "p111 - p111^2 - p111*p112 - p111*p121 - p111*p122 \
             - p111*p211 - p112*p211",
        )
        .unwrap()
        .normalize_integer();
        assert!(rep.factors.contains(&f), "factors: {:?}", rep.factors);
        // the eliminant is principal: (p112 p121 p122 p211)^2 f^2
        assert!(rep.principal);
        let gen = &rep.ideal.generators()[0];
        let monomial = parse_poly(&vs, "p112*p121*p122*p211").unwrap();
        let expected = monomial.mul(&f).pow(2).normalize_integer();
        assert_eq!(gen, &expected);
    }

    #[test]
    fn blob_model_boundary_defines_the_origin() {
        let m = blob_model();
        let o = obs(&m, &[4, 5]);
        let rep = model_boundary_eliminant(&m, &o).unwrap();
        // non-principal monomial ideal whose radical is <u, v>
        assert!(!rep.principal);
        let vs = rep.ideal.vars().clone();
        let u = parse_poly(&vs, "u").unwrap();
        let v = parse_poly(&vs, "v").unwrap();
        assert!(rep.factors.iter().all(|f| *f == u || *f == v || {
            // factors of mixed monomials like u*v
            divides(&u, f) || divides(&v, f)
        }));
        // every generator vanishes at the origin
        for g in rep.ideal.generators() {
            assert!(g
                .eval(&[crate::rat::int(0), crate::rat::int(0)])
                .eq(&crate::rat::int(0)));
        }
        // and u^a, v^b for some powers belong to the ideal
        assert!(rep.ideal.generators().iter().any(|g| g.num_terms() == 1));
    }

    #[test]
    fn blob_boundary_report_flags_radical_gap() {
        let m = blob_model();
        let o = obs(&m, &[4, 5]);
        let report = algebraic_boundary(&m, &o, &SampleConfig::new(9, 60)).unwrap();
        assert!(report.radical_gap);
        assert!(report.combined_factors.is_none());
        // the quintic is validated as vanishing; the monomial axes are not
        let vs = match &report.branch {
            BranchEliminant::Ideal(rep) => rep.ideal.vars().clone(),
            BranchEliminant::Empty { .. } => panic!("branch nonempty"),
        };
        let quintic = parse_poly(
            &vs,
            "u^5 + 2*u^4*v + 3*u^3*v^2 + 2*u^2*v^3 + u*v^4 - 4*v^5 \
             - 2*u^3*v - 2*u^2*v^2 - 2*u*v^3 + u*v^2",
        )
        .unwrap();
        let mut saw_quintic = false;
        for (f, verdict) in &report.validations {
            if *f == quintic {
                saw_quintic = true;
                assert_eq!(*verdict, Verdict::Vanishing);
            } else {
                assert_eq!(*verdict, Verdict::Spurious, "factor {f}");
            }
        }
        assert!(saw_quintic);
    }

    #[test]
    fn square_boundary_report_combines_factors() {
        let m = square_model();
        let o = obs(&m, &[1, 4]);
        let report = algebraic_boundary(&m, &o, &SampleConfig::new(13, 60)).unwrap();
        assert!(!report.radical_gap);
        let combined = report.combined_factors.expect("both principal");
        let vs = report.model_boundary.ideal.vars().clone();
        let parabola = parse_poly(&vs, "x^2 - 2*x*w + w^2 - 2*x - 2*w + 1").unwrap();
        let axes = parse_poly(&vs, "x*w").unwrap();
        assert!(combined.contains(&parabola));
        assert!(combined.contains(&axes));
        for (f, verdict) in &report.validations {
            if *f == parabola {
                assert_eq!(*verdict, Verdict::Vanishing);
            } else {
                assert_eq!(*verdict, Verdict::Spurious, "factor {f}");
            }
        }
    }

    #[test]
    fn constant_factor_is_spurious_and_empty_samples_inconclusive() {
        let vs = crate::poly::varset(&["x"]);
        let c = Polynomial::constant(vs.clone(), crate::rat::int(3));
        assert_eq!(validate_component_by_sampling(&c, &[vec![0.0]]), Verdict::Spurious);
        let x = parse_poly(&vs, "x").unwrap();
        assert_eq!(validate_component_by_sampling(&x, &[]), Verdict::Inconclusive);
    }
}
