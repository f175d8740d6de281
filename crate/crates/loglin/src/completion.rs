//! Completion of partial observations to the log-linear model: branch
//! vectors, fiber lifting, convex section solving, and enumeration.
//!
//! For |E| = rank A_E = rank A - 1 the fiber of the projection over a
//! positive observation is one exponential curve t ↦ q ∘ e^{tν}; its
//! intersections with the hyperplane Σx = 1 are the completions. The lift
//! q is computed in floating point; every reported completion is then
//! certified exactly when continued-fraction reconstruction recovers it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::faces::{minimal_facial_set, FacialSet};
use crate::linalg::{integer_kernel_basis, rank, IntMatrix};
use crate::rat::{self, Rat};
use crate::toric::{support, variety_membership, ModelMatrix};

/// Numerical policy for the lift / root-solve / certification pipeline.
#[derive(Clone, Debug)]
pub struct Tolerances {
    /// absolute tolerance on |g(t) - 1| at accepted roots
    pub g_abs: f64,
    /// relative tolerance on t (and on lift projection checks)
    pub t_rel: f64,
    /// denominator bound for rational reconstruction
    pub recon_den: u64,
    /// width of the band around facet mass 1 reported as boundary
    pub facet_band: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { g_abs: 1e-13, t_rel: 1e-12, recon_den: 1_000_000, facet_band: 1e-11 }
    }
}

/// An observed coordinate set E with the cached data of the §4 setting.
#[derive(Clone, Debug)]
pub struct ObservedSet {
    indices: Vec<usize>,
    a_e: IntMatrix,
    submodel: ModelMatrix,
    rank_a: usize,
    rank_a_e: usize,
    minimal_facial: FacialSet,
}

impl ObservedSet {
    pub fn new(model: &ModelMatrix, observed: &BTreeSet<usize>) -> Result<Self> {
        if observed.is_empty() {
            return Err(Error::Precondition("observed set is empty".into()));
        }
        if let Some(&bad) = observed.iter().find(|&&j| j >= model.cols()) {
            return Err(Error::Precondition(format!(
                "observed index {} out of range 1..={}",
                bad + 1,
                model.cols()
            )));
        }
        let indices: Vec<usize> = observed.iter().copied().collect();
        let a_e = model.matrix().select_columns(&indices);
        let rank_a_e = rank(&a_e);
        let submodel = model.submodel(&indices)?;
        let minimal_facial = minimal_facial_set(model, observed);
        Ok(ObservedSet {
            indices,
            a_e,
            submodel,
            rank_a: model.rank(),
            rank_a_e,
            minimal_facial,
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn a_e(&self) -> &IntMatrix {
        &self.a_e
    }

    pub fn submodel(&self) -> &ModelMatrix {
        &self.submodel
    }

    /// |E| = rank A_E = rank A - 1.
    pub fn rank_ok(&self) -> bool {
        self.len() == self.rank_a_e && self.rank_a_e + 1 == self.rank_a
    }

    pub fn require_rank_ok(&self) -> Result<()> {
        if self.len() != self.rank_a_e {
            return Err(Error::Precondition(format!(
                "|E| = {} but rank A_E = {}",
                self.len(),
                self.rank_a_e
            )));
        }
        if self.rank_a_e + 1 != self.rank_a {
            return Err(Error::Precondition(format!(
                "rank A_E = {} but rank A - 1 = {}",
                self.rank_a_e,
                self.rank_a - 1
            )));
        }
        Ok(())
    }

    /// Whether E lies in a proper facial set of A.
    pub fn in_proper_facial_set(&self, model: &ModelMatrix) -> bool {
        self.minimal_facial.indices.len() < model.cols()
    }

    pub fn minimal_facial(&self) -> &FacialSet {
        &self.minimal_facial
    }
}

/// The primitive generator ν of im Aᵀ ∩ ker π_E with its certificate ω.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchVector {
    pub nu: Vec<BigInt>,
    pub omega: Vec<Rat>,
}

impl BranchVector {
    pub fn dot_rat(&self, p: &[Rat]) -> Rat {
        self.nu
            .iter()
            .zip(p)
            .map(|(n, x)| Rat::from_integer(n.clone()) * x)
            .fold(Rat::zero(), |acc, t| acc + t)
    }

    pub fn dot_f64(&self, p: &[f64]) -> f64 {
        self.nu
            .iter()
            .zip(p)
            .map(|(n, x)| bigint_f64(n) * x)
            .sum()
    }
}

fn bigint_f64(n: &BigInt) -> f64 {
    rat::to_f64(&Rat::from_integer(n.clone()))
}

/// Computes ν = Aᵀω for ω spanning the part of ker A_Eᵀ visible through Aᵀ,
/// normalized primitive with the first nonzero entry positive.
pub fn branch_vector(model: &ModelMatrix, obs: &ObservedSet) -> Result<BranchVector> {
    obs.require_rank_ok()?;
    let kernel = integer_kernel_basis(&obs.a_e().transpose());
    for w in &kernel.vectors {
        let nu0 = model.matrix().transpose().mul_vec(w);
        if nu0.iter().all(|x| x.is_zero()) {
            continue;
        }
        let content = nu0.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = match nu0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -BigInt::one(),
            _ => BigInt::one(),
        };
        let scale = &sign * &content;
        let nu: Vec<BigInt> = nu0.iter().map(|x| x / &scale).collect();
        let omega: Vec<Rat> = w
            .iter()
            .map(|x| Rat::new(x.clone(), scale.clone()))
            .collect();
        debug_assert!(obs.indices().iter().all(|&j| nu[j].is_zero()));
        return Ok(BranchVector { nu, omega });
    }
    Err(Error::Precondition(
        "A^T(ker A_E^T) is zero; the rank condition cannot hold".into(),
    ))
}

/// Toric completability of a partial observation (no rank condition):
/// p_E must lie on X_{A_E} and its support must be E-compatible with a
/// facial set of A. Returns the witness facial set on success.
pub fn completable_to_toric(
    model: &ModelMatrix,
    observed: &[usize],
    p_e: &[Rat],
) -> Result<(bool, Option<FacialSet>)> {
    if p_e.len() != observed.len() {
        return Err(Error::Dimension(format!(
            "p_E length {} != |E| = {}",
            p_e.len(),
            observed.len()
        )));
    }
    if p_e.iter().any(|c| c.is_negative()) {
        return Ok((false, None));
    }
    let submodel = model.submodel(observed)?;
    if !variety_membership(&submodel, p_e) {
        return Ok((false, None));
    }
    let supp_full: BTreeSet<usize> = support(p_e).iter().map(|&i| observed[i]).collect();
    let f = minimal_facial_set(model, &supp_full);
    let e_set: BTreeSet<usize> = observed.iter().copied().collect();
    let meet: BTreeSet<usize> = f.indices.intersection(&e_set).copied().collect();
    if meet == supp_full {
        Ok((true, Some(f)))
    } else {
        Ok((false, None))
    }
}

/// Gaussian elimination with partial pivoting; returns None on a
/// numerically singular system.
fn solve_f64(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| {
            a[i][c].abs().partial_cmp(&a[j][c].abs()).expect("finite")
        })?;
        if a[piv][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, piv);
        b.swap(c, piv);
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            if f != 0.0 {
                for j in c..n {
                    a[i][j] -= f * a[c][j];
                }
                b[i] -= f * b[c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in i + 1..n {
            acc -= a[i][j] * x[j];
        }
        x[i] = acc / a[i][i];
    }
    Some(x)
}

/// Lift a positive observation to a positive point of the fiber: the
/// minimum-norm solution v of A_Eᵀ v = log p_E, exponentiated through Aᵀ.
pub fn lift_positive(
    model: &ModelMatrix,
    obs: &ObservedSet,
    p_e: &[Rat],
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    if p_e.len() != obs.len() {
        return Err(Error::Dimension(format!(
            "p_E length {} != |E| = {}",
            p_e.len(),
            obs.len()
        )));
    }
    if !p_e.iter().all(|c| c.is_positive()) {
        return Err(Error::Precondition("lift requires strictly positive p_E".into()));
    }
    if !variety_membership(obs.submodel(), p_e) {
        return Err(Error::Domain("p_E is not on X_{A_E}".into()));
    }
    let a_e = obs.a_e();
    let m = obs.len();
    // gram = A_E^T A_E (integer, exact), then solved in floats
    let gram: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let dot: BigInt = (0..a_e.rows())
                        .map(|r| a_e.at(r, i) * a_e.at(r, j))
                        .sum();
                    bigint_f64(&dot)
                })
                .collect()
        })
        .collect();
    let logs: Vec<f64> = p_e.iter().map(|c| rat::to_f64(c).ln()).collect();
    let y = solve_f64(gram, logs)
        .ok_or_else(|| Error::Domain("singular Gram matrix in lift".into()))?;
    // v = A_E y
    let k = model.rows();
    let v: Vec<f64> = (0..k)
        .map(|r| (0..m).map(|j| bigint_f64(a_e.at(r, j)) * y[j]).sum())
        .collect();
    let a = model.matrix();
    let q: Vec<f64> = (0..a.cols())
        .map(|j| {
            let dot: f64 = (0..k).map(|r| bigint_f64(a.at(r, j)) * v[r]).sum();
            dot.exp()
        })
        .collect();
    for (i, &j) in obs.indices().iter().enumerate() {
        if rat::rel_err(q[j], &p_e[i]) > 100.0 * tol.t_rel {
            return Err(Error::Domain(format!(
                "lift failed to reproduce coordinate {}: {} vs {}",
                j + 1,
                q[j],
                rat::fmt_rat(&p_e[i])
            )));
        }
    }
    Ok(q)
}

/// The function t ↦ Σ qᵢ e^{νᵢ t} swept along the fiber; strictly convex
/// for mixed-sign exponents and positive base points.
#[derive(Clone, Debug)]
pub struct ExponentialSection {
    pub base: Vec<f64>,
    pub exponents: Vec<f64>,
}

impl ExponentialSection {
    pub fn new(base: Vec<f64>, nu: &[BigInt]) -> Self {
        let exponents = nu.iter().map(bigint_f64).collect();
        ExponentialSection { base, exponents }
    }

    pub fn g(&self, t: f64) -> f64 {
        self.base
            .iter()
            .zip(&self.exponents)
            .map(|(q, e)| q * (e * t).exp())
            .sum()
    }

    pub fn dg(&self, t: f64) -> f64 {
        self.base
            .iter()
            .zip(&self.exponents)
            .map(|(q, e)| q * e * (e * t).exp())
            .sum()
    }

    /// The point q ∘ e^{tν}.
    pub fn at(&self, t: f64) -> Vec<f64> {
        self.base
            .iter()
            .zip(&self.exponents)
            .map(|(q, e)| q * (e * t).exp())
            .collect()
    }
}

/// Result of solving g(t) = 1 on a section.
#[derive(Clone, Debug)]
pub struct SectionSolve {
    pub roots: Vec<f64>,
    pub tangency: bool,
    /// (argmin, min) of g when the exponents are mixed-sign
    pub interior_min: Option<(f64, f64)>,
    /// limit of g toward the flat end when the exponents are one-signed
    pub flat_limit: Option<f64>,
}

/// All real solutions of g(t) = 1 (zero, one, or two by convexity).
pub fn solve_section(section: &ExponentialSection, tol: &Tolerances) -> SectionSolve {
    assert!(
        section.base.iter().all(|&q| q > 0.0),
        "section base must be positive"
    );
    let has_pos = section
        .base
        .iter()
        .zip(&section.exponents)
        .any(|(_, &e)| e > 0.0);
    let has_neg = section
        .base
        .iter()
        .zip(&section.exponents)
        .any(|(_, &e)| e < 0.0);

    if has_pos && has_neg {
        let tmin = minimize_convex(section);
        let gmin = section.g(tmin);
        if gmin > 1.0 + tol.g_abs {
            return SectionSolve {
                roots: Vec::new(),
                tangency: false,
                interior_min: Some((tmin, gmin)),
                flat_limit: None,
            };
        }
        if (gmin - 1.0).abs() <= tol.g_abs {
            return SectionSolve {
                roots: vec![tmin],
                tangency: true,
                interior_min: Some((tmin, gmin)),
                flat_limit: None,
            };
        }
        let hi = root_increasing(section, tmin, 1.0, tol);
        let lo = root_decreasing(section, tmin, -1.0, tol);
        SectionSolve {
            roots: vec![lo, hi],
            tangency: false,
            interior_min: Some((tmin, gmin)),
            flat_limit: None,
        }
    } else if has_pos || has_neg {
        // one-signed: g is strictly monotone with a finite flat limit
        let limit: f64 = section
            .base
            .iter()
            .zip(&section.exponents)
            .filter(|(_, &e)| e == 0.0)
            .map(|(q, _)| q)
            .sum();
        let increasing = has_pos;
        if limit >= 1.0 - tol.g_abs {
            return SectionSolve {
                roots: Vec::new(),
                tangency: false,
                interior_min: None,
                flat_limit: Some(limit),
            };
        }
        let dir = if increasing { 1.0 } else { -1.0 };
        // march from the flat side toward growth; g(0) may already exceed 1
        let mut t_hi = 0.0;
        let mut step = 1.0;
        while section.g(t_hi) < 1.0 {
            t_hi += dir * step;
            step *= 2.0;
            if step > 1e18 {
                break;
            }
        }
        let mut t_lo = t_hi - dir;
        step = 1.0;
        while section.g(t_lo) > 1.0 {
            t_lo -= dir * step;
            step *= 2.0;
            if step > 1e18 {
                break;
            }
        }
        let root = if increasing {
            bisect_newton(section, t_lo, t_hi, tol)
        } else {
            bisect_newton(section, t_hi, t_lo, tol)
        };
        SectionSolve {
            roots: vec![root],
            tangency: false,
            interior_min: None,
            flat_limit: Some(limit),
        }
    } else {
        // nu = 0 never reaches this module
        unreachable!("zero exponent vector in section");
    }
}

/// Argmin of the strictly convex g: bisection on the increasing dg.
fn minimize_convex(section: &ExponentialSection) -> f64 {
    let mut lo = 0.0;
    let mut hi = 0.0;
    let mut step = 1.0;
    while section.dg(lo) > 0.0 {
        lo -= step;
        step *= 2.0;
    }
    step = 1.0;
    while section.dg(hi) < 0.0 {
        hi += step;
        step *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if section.dg(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    // Newton polish on dg
    let mut t = t;
    for _ in 0..4 {
        let d1 = section.dg(t);
        let d2: f64 = section
            .base
            .iter()
            .zip(&section.exponents)
            .map(|(q, e)| q * e * e * (e * t).exp())
            .sum();
        if d2 <= 0.0 {
            break;
        }
        let tn = t - d1 / d2;
        if !tn.is_finite() {
            break;
        }
        t = tn;
    }
    t
}

/// Root of g = 1 on the increasing branch right of `start`.
fn root_increasing(section: &ExponentialSection, start: f64, dir: f64, tol: &Tolerances) -> f64 {
    let mut hi = start + dir.abs();
    let mut step = dir.abs();
    while section.g(hi) < 1.0 {
        step *= 2.0;
        hi += step;
    }
    bisect_newton(section, start, hi, tol)
}

/// Root of g = 1 on the decreasing branch left of `start`.
fn root_decreasing(section: &ExponentialSection, start: f64, dir: f64, tol: &Tolerances) -> f64 {
    let mut lo = start + dir.abs() * -1.0;
    let mut step = dir.abs();
    while section.g(lo) < 1.0 {
        step *= 2.0;
        lo -= step;
    }
    // here g(lo) > 1 >= g(start): bracket with g-1 sign change
    bisect_newton(section, lo, start, tol)
}

/// Safeguarded Newton on g - 1 inside a bracket [a, b] with g(a)-1 and
/// g(b)-1 of opposite signs (g(a) <= 1 <= g(b) or the reverse).
fn bisect_newton(section: &ExponentialSection, a: f64, b: f64, tol: &Tolerances) -> f64 {
    let mut lo = a;
    let mut hi = b;
    let mut flo = section.g(lo) - 1.0;
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = section.g(t) - 1.0;
        if f.abs() <= tol.g_abs {
            return t;
        }
        if (f < 0.0) == (flo < 0.0) {
            lo = t;
            flo = f;
        } else {
            hi = t;
        }
        let d = section.dg(t);
        let newton = t - f / d;
        let inside = (newton > lo.min(hi)) && (newton < lo.max(hi));
        let next = if d != 0.0 && newton.is_finite() && inside {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - t).abs() <= tol.t_rel * t.abs().max(1.0) && section.g(next) - 1.0 <= tol.g_abs {
            return next;
        }
        t = next;
    }
    t
}

/// Region classification of a completion run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Outside,
    InteriorTwo,
    InteriorOne,
    BoundaryBranch,
    BoundaryFacet,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Outside => "outside",
            Classification::InteriorTwo => "interior-two",
            Classification::InteriorOne => "interior-one",
            Classification::BoundaryBranch => "boundary-branch",
            Classification::BoundaryFacet => "boundary-facet",
        }
    }
}

/// One completion, float always, exact when certification succeeded.
#[derive(Clone, Debug)]
pub struct Completion {
    pub coords: Vec<f64>,
    pub exact: Option<Vec<Rat>>,
    /// multiplier x = e^t along the fiber; None for the facet limit point
    pub fiber_x: Option<f64>,
    pub residual_sum: f64,
    pub residual_lattice: f64,
}

#[derive(Clone, Debug)]
pub struct CompletionResult {
    pub classification: Classification,
    pub completions: Vec<Completion>,
    pub branch: BranchVector,
    pub reason: Option<String>,
}

impl CompletionResult {
    pub fn count(&self) -> usize {
        self.completions.len()
    }
}

/// Attempt exact recovery of a float completion: reconstruct every
/// coordinate, then verify the sum, the projection, and variety
/// membership exactly.
fn certify(
    model: &ModelMatrix,
    obs: &ObservedSet,
    p_e: &[Rat],
    coords: &[f64],
    tol: &Tolerances,
) -> Option<Vec<Rat>> {
    let mut exact = Vec::with_capacity(coords.len());
    for &x in coords {
        let snapped = if x.abs() < 1e-14 {
            Some(Rat::zero())
        } else {
            rat::reconstruct(x, tol.recon_den, 1e-9 * x.abs().max(1.0))
        };
        exact.push(snapped?);
    }
    if !rat::sum(&exact).is_one() {
        return None;
    }
    for (i, &j) in obs.indices().iter().enumerate() {
        if exact[j] != p_e[i] {
            return None;
        }
    }
    if exact.iter().any(|c| c.is_negative()) {
        return None;
    }
    if !variety_membership(model, &exact) {
        return None;
    }
    Some(exact)
}

fn build_completion(
    model: &ModelMatrix,
    obs: &ObservedSet,
    p_e: &[Rat],
    coords: Vec<f64>,
    fiber_x: Option<f64>,
    tol: &Tolerances,
) -> Completion {
    let exact = certify(model, obs, p_e, &coords, tol);
    let residual_sum = (coords.iter().sum::<f64>() - 1.0).abs();
    let residual_lattice = crate::toric::lattice_residual(model, &coords);
    Completion { coords, exact, fiber_x, residual_sum, residual_lattice }
}

/// Enumerate all completions of a strictly positive observation.
pub fn enumerate_completions(
    model: &ModelMatrix,
    obs: &ObservedSet,
    p_e: &[Rat],
    tol: &Tolerances,
) -> Result<CompletionResult> {
    obs.require_rank_ok()?;
    if p_e.len() != obs.len() {
        return Err(Error::Dimension(format!(
            "p_E length {} != |E| = {}",
            p_e.len(),
            obs.len()
        )));
    }
    if !p_e.iter().all(|c| c.is_positive()) {
        return Err(Error::Precondition(
            "enumeration handles strictly positive observations; \
             use the toric completability test for observations with zeros"
                .into(),
        ));
    }
    let branch = branch_vector(model, obs)?;
    if !variety_membership(obs.submodel(), p_e) {
        return Ok(CompletionResult {
            classification: Classification::Outside,
            completions: Vec::new(),
            branch,
            reason: Some("p_E is not on X_{A_E}".into()),
        });
    }
    let q = lift_positive(model, obs, p_e, tol)?;
    let section = ExponentialSection::new(q.clone(), &branch.nu);

    if obs.in_proper_facial_set(model) {
        let facet = &obs.minimal_facial().indices;
        debug_assert!(branch.nu.iter().enumerate().all(|(j, e)| {
            if facet.contains(&j) { e.is_zero() } else { e.is_positive() }
        }));
        let facet_coords: Vec<f64> = (0..model.cols())
            .map(|j| if facet.contains(&j) { q[j] } else { 0.0 })
            .collect();
        let mass: f64 = facet_coords.iter().sum();
        // the facet extension is the unique candidate boundary completion;
        // certification includes the exact sum-to-one check
        let facet_completion = build_completion(model, obs, p_e, facet_coords, None, tol);
        if facet_completion.exact.is_some() {
            return Ok(CompletionResult {
                classification: Classification::BoundaryFacet,
                completions: vec![facet_completion],
                branch,
                reason: None,
            });
        }
        if (mass - 1.0).abs() <= tol.facet_band {
            return Ok(CompletionResult {
                classification: Classification::BoundaryFacet,
                completions: vec![facet_completion],
                branch,
                reason: Some(format!(
                    "facet mass within {:.1e} of 1 but not certified exactly",
                    (mass - 1.0).abs()
                )),
            });
        }
        if mass > 1.0 {
            return Ok(CompletionResult {
                classification: Classification::Outside,
                completions: Vec::new(),
                branch,
                reason: Some(format!("facet mass {mass} exceeds 1")),
            });
        }
        let solve = solve_section(&section, tol);
        let t = *solve.roots.first().ok_or_else(|| {
            Error::Domain("increasing section lost its root".into())
        })?;
        let completion = build_completion(model, obs, p_e, section.at(t), Some(t.exp()), tol);
        return Ok(CompletionResult {
            classification: Classification::InteriorOne,
            completions: vec![completion],
            branch,
            reason: None,
        });
    }

    let solve = solve_section(&section, tol);
    match solve.roots.len() {
        0 => {
            let (_, gmin) = solve.interior_min.expect("mixed section has a minimum");
            Ok(CompletionResult {
                classification: Classification::Outside,
                completions: Vec::new(),
                branch,
                reason: Some(format!("fiber minimum {gmin} exceeds 1")),
            })
        }
        1 => {
            let t = solve.roots[0];
            let completion = build_completion(model, obs, p_e, section.at(t), Some(t.exp()), tol);
            Ok(CompletionResult {
                classification: Classification::BoundaryBranch,
                completions: vec![completion],
                branch,
                reason: None,
            })
        }
        _ => {
            let mut completions: Vec<Completion> = solve
                .roots
                .iter()
                .map(|&t| build_completion(model, obs, p_e, section.at(t), Some(t.exp()), tol))
                .collect();
            completions.sort_by(|a, b| {
                a.fiber_x
                    .partial_cmp(&b.fiber_x)
                    .expect("finite fiber parameters")
            });
            Ok(CompletionResult {
                classification: Classification::InteriorTwo,
                completions,
                branch,
                reason: None,
            })
        }
    }
}

/// Coarse region label with provenance, derived from the enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryProvenance {
    BranchImage,
    ModelBoundaryImage,
}

#[derive(Clone, Debug)]
pub struct RegionClassification {
    pub region: Region,
    pub provenance: Option<BoundaryProvenance>,
    pub result: CompletionResult,
}

pub fn classify_observation(
    model: &ModelMatrix,
    obs: &ObservedSet,
    p_e: &[Rat],
    tol: &Tolerances,
) -> Result<RegionClassification> {
    let result = enumerate_completions(model, obs, p_e, tol)?;
    let (region, provenance) = match result.classification {
        Classification::InteriorOne | Classification::InteriorTwo => (Region::Interior, None),
        Classification::BoundaryBranch => {
            (Region::Boundary, Some(BoundaryProvenance::BranchImage))
        }
        Classification::BoundaryFacet => {
            (Region::Boundary, Some(BoundaryProvenance::ModelBoundaryImage))
        }
        Classification::Outside => (Region::Outside, None),
    };
    Ok(RegionClassification { region, provenance, result })
}
