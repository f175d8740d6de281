//! Facial sets of the column polytope, witnessed by exact inner normals,
//! plus the algebraic moment map.
//!
//! A set F is facial when some v has v·aᵢ = 0 on F and v·aᵢ > 0 off F.
//! Scale invariance turns the strict inequalities into v·aᵢ ≥ 1, so every
//! test here is plain LP feasibility over the rationals.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::solve_rational;
use crate::lp::RationalLP;
use crate::rat::Rat;
use crate::toric::ModelMatrix;

pub const FACE_ENUM_BOUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacialSet {
    pub indices: BTreeSet<usize>,
    pub inner_normal: Vec<Rat>,
    pub characteristic: Vec<Rat>,
}

impl FacialSet {
    fn new(model: &ModelMatrix, indices: BTreeSet<usize>, inner_normal: Vec<Rat>) -> Self {
        let characteristic = (0..model.cols())
            .map(|j| if indices.contains(&j) { Rat::one() } else { Rat::zero() })
            .collect();
        FacialSet { indices, inner_normal, characteristic }
    }

    pub fn is_proper(&self, model: &ModelMatrix) -> bool {
        self.indices.len() < model.cols()
    }

    /// Sorted 1-based index list, e.g. `{1, 2, 4}`.
    pub fn display_indices(&self) -> String {
        let inner: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

/// Find v with v·aᵢ = 0 on `zero`, v·aᵢ ≥ 1 on `pos`, v·aᵢ ≥ 0 elsewhere.
fn normal_lp(model: &ModelMatrix, zero: &BTreeSet<usize>, pos: &BTreeSet<usize>) -> Option<Vec<Rat>> {
    let k = model.rows();
    let n = model.cols();
    let a = model.matrix();
    let slack_cols: Vec<usize> = (0..n).filter(|j| !zero.contains(j)).collect();
    let nvars = 2 * k + slack_cols.len();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut rhs: Vec<Rat> = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = vec![Rat::zero(); nvars];
        for r in 0..k {
            let c = Rat::from_integer(a.at(r, j).clone());
            row[r] = c.clone();
            row[k + r] = -c;
        }
        if let Some(s) = slack_cols.iter().position(|&jj| jj == j) {
            row[2 * k + s] = -Rat::one();
        }
        rows.push(row);
        rhs.push(if pos.contains(&j) { Rat::one() } else { Rat::zero() });
    }
    let lp = RationalLP::new(rows, rhs, vec![Rat::zero(); nvars]);
    let x = lp.feasible_point()?;
    Some((0..k).map(|r| &x[r] - &x[k + r]).collect())
}

/// Witness inner normal when F is a facial set, None otherwise.
pub fn is_facial_set(model: &ModelMatrix, f: &BTreeSet<usize>) -> Option<Vec<Rat>> {
    let pos: BTreeSet<usize> = (0..model.cols()).filter(|j| !f.contains(j)).collect();
    normal_lp(model, f, &pos)
}

/// The smallest facial set containing `s`: an index i lies outside it
/// exactly when some admissible normal separates i strictly.
pub fn minimal_facial_set(model: &ModelMatrix, s: &BTreeSet<usize>) -> FacialSet {
    let n = model.cols();
    let mut indices: BTreeSet<usize> = s.clone();
    let mut witness_sum = vec![Rat::zero(); model.rows()];
    for i in 0..n {
        if s.contains(&i) {
            continue;
        }
        let probe: BTreeSet<usize> = [i].into_iter().collect();
        match normal_lp(model, s, &probe) {
            Some(v) => {
                for (acc, vi) in witness_sum.iter_mut().zip(&v) {
                    *acc += vi;
                }
            }
            None => {
                indices.insert(i);
            }
        }
    }
    FacialSet::new(model, indices, witness_sum)
}

/// The whole closure system of facial sets, by breadth-first closure from
/// the minimal one. Exponential in the worst case; bounded at desk scale.
pub fn all_facial_sets(model: &ModelMatrix) -> Result<Vec<FacialSet>> {
    all_facial_sets_bounded(model, FACE_ENUM_BOUND)
}

pub fn all_facial_sets_bounded(model: &ModelMatrix, bound: usize) -> Result<Vec<FacialSet>> {
    let n = model.cols();
    if n > bound {
        return Err(Error::Capacity(format!(
            "facial-set enumeration needs n <= {bound}, got {n}"
        )));
    }
    let mut found: Vec<FacialSet> = Vec::new();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let root = minimal_facial_set(model, &BTreeSet::new());
    let mut queue = vec![root];
    while let Some(f) = queue.pop() {
        if !seen.insert(f.indices.clone()) {
            continue;
        }
        for i in 0..n {
            if f.indices.contains(&i) {
                continue;
            }
            let mut s = f.indices.clone();
            s.insert(i);
            let g = minimal_facial_set(model, &s);
            if !seen.contains(&g.indices) {
                queue.push(g);
            }
        }
        found.push(f);
    }
    found.sort_by(|a, b| {
        (a.indices.len(), a.indices.iter().collect::<Vec<_>>())
            .cmp(&(b.indices.len(), b.indices.iter().collect::<Vec<_>>()))
    });
    Ok(found)
}

/// μ(p) = A p, exactly.
pub fn moment_map(model: &ModelMatrix, p: &[Rat]) -> Vec<Rat> {
    assert_eq!(p.len(), model.cols());
    model.matrix().mul_rat_vec(p)
}

/// Membership of q in the polytope P_A: a convex combination of columns.
pub fn in_polytope(model: &ModelMatrix, q: &[Rat]) -> bool {
    assert_eq!(q.len(), model.rows());
    let n = model.cols();
    let a = model.matrix();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for r in 0..model.rows() {
        rows.push((0..n).map(|j| Rat::from_integer(a.at(r, j).clone())).collect());
        rhs.push(q[r].clone());
    }
    rows.push(vec![Rat::one(); n]);
    rhs.push(Rat::one());
    RationalLP::new(rows, rhs, vec![Rat::zero(); n]).feasible_point().is_some()
}

/// Membership of q in im A_E ∩ P_A (the moment image of the branch locus).
pub fn in_span_cap_polytope(model: &ModelMatrix, observed: &[usize], q: &[Rat]) -> Result<bool> {
    if q.len() != model.rows() {
        return Err(Error::Dimension(format!(
            "q length {} != rows {}",
            q.len(),
            model.rows()
        )));
    }
    let a_e = model.matrix().select_columns(observed);
    let in_span = solve_rational(&a_e, q)?.is_some();
    Ok(in_span && in_polytope(model, q))
}
