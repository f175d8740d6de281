//! The model core: monomial maps, toric ideals, A-feasibility, and exact
//! membership tests for the toric variety and the image of the monomial map.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel_basis, rank, solve_rational, IntMatrix, LatticeBasis};
use crate::poly::{Monomial, PolyIdeal, Polynomial};
use crate::rat::Rat;

/// A non-negative integer matrix defining a log-linear model, with the
/// cached data every other module leans on.
///
/// Construction enforces the standing hypothesis (1,…,1) ∈ im Aᵀ, which
/// makes the toric ideal homogeneous and the moment map a homeomorphism.
#[derive(Clone, Debug)]
pub struct ModelMatrix {
    a: IntMatrix,
    rank: usize,
    kernel: LatticeBasis,
    col_supports: Vec<BTreeSet<usize>>,
    col_sums: Vec<BigInt>,
    vars: Arc<Vec<String>>,
}

impl ModelMatrix {
    pub fn new(a: IntMatrix) -> Result<Self> {
        let names: Vec<String> = (1..=a.cols()).map(|j| format!("x{j}")).collect();
        Self::with_names(a, names, false)
    }

    pub fn with_names(a: IntMatrix, names: Vec<String>, allow_zero_columns: bool) -> Result<Self> {
        if names.len() != a.cols() {
            return Err(Error::Dimension(format!(
                "{} variable names for {} columns",
                names.len(),
                a.cols()
            )));
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if a.at(i, j).is_negative() {
                    return Err(Error::Precondition(format!(
                        "negative entry at row {}, column {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let col_supports: Vec<BTreeSet<usize>> = (0..a.cols())
            .map(|j| (0..a.rows()).filter(|&i| !a.at(i, j).is_zero()).collect())
            .collect();
        if !allow_zero_columns {
            if let Some(j) = col_supports.iter().position(|s| s.is_empty()) {
                return Err(Error::Precondition(format!("column {} is zero", j + 1)));
            }
        }
        // (1,...,1) must lie in the row space: solve Aᵀ v = 1
        let ones = vec![Rat::one(); a.cols()];
        if solve_rational(&a.transpose(), &ones)?.is_none() {
            return Err(Error::Precondition(
                "(1,...,1) is not in the row space of A".into(),
            ));
        }
        let rank = rank(&a);
        let kernel = integer_kernel_basis(&a);
        let col_sums = (0..a.cols())
            .map(|j| (0..a.rows()).map(|i| a.at(i, j)).sum())
            .collect();
        Ok(ModelMatrix {
            a,
            rank,
            kernel,
            col_supports,
            col_sums,
            vars: Arc::new(names),
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kernel(&self) -> &LatticeBasis {
        &self.kernel
    }

    pub fn col_support(&self, j: usize) -> &BTreeSet<usize> {
        &self.col_supports[j]
    }

    pub fn col_sums(&self) -> &[BigInt] {
        &self.col_sums
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    /// Column a_j as rationals.
    pub fn column(&self, j: usize) -> Vec<Rat> {
        self.a.column(j).into_iter().map(Rat::from_integer).collect()
    }

    /// Submodel on the columns in `indices` (sorted), inheriting names.
    pub fn submodel(&self, indices: &[usize]) -> Result<ModelMatrix> {
        let names: Vec<String> = indices.iter().map(|&j| self.vars[j].clone()).collect();
        ModelMatrix::with_names(self.a.select_columns(indices), names, false)
    }
}

/// Exact point of ℝⁿ with its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionPoint {
    coords: Vec<Rat>,
}

impl DistributionPoint {
    pub fn new(coords: Vec<Rat>) -> Self {
        DistributionPoint { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn support(&self) -> BTreeSet<usize> {
        support(&self.coords)
    }

    pub fn is_probability(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative()) && crate::rat::sum(&self.coords).is_one()
    }
}

pub fn support(p: &[Rat]) -> BTreeSet<usize> {
    p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
}

/// φ^A(θ) = (θ^{a_1}, …, θ^{a_n}), exact, with the 0^0 = 1 convention.
pub fn monomial_map(model: &ModelMatrix, theta: &[Rat]) -> Result<Vec<Rat>> {
    if theta.len() != model.rows() {
        return Err(Error::Dimension(format!(
            "theta length {} != rows {}",
            theta.len(),
            model.rows()
        )));
    }
    let a = model.matrix();
    Ok((0..a.cols())
        .map(|j| {
            let mut acc = Rat::one();
            for i in 0..a.rows() {
                let e = a.at(i, j);
                if e.is_zero() {
                    continue;
                }
                let e = u32::try_from(e).expect("exponent fits in u32");
                for _ in 0..e {
                    acc *= &theta[i];
                }
            }
            acc
        })
        .collect())
}

/// The toric ideal I_A, computed by saturating the lattice ideal of the
/// integer kernel of A by the product of all coordinates.
pub fn toric_ideal(model: &ModelMatrix) -> PolyIdeal {
    let vars = model.vars().clone();
    let n = model.cols();
    let gens: Vec<Polynomial> = model
        .kernel()
        .vectors
        .iter()
        .map(|u| {
            let mut pos = vec![0u32; n];
            let mut neg = vec![0u32; n];
            for (j, e) in u.iter().enumerate() {
                if e.is_positive() {
                    pos[j] = u32::try_from(e).expect("exponent fits");
                } else if e.is_negative() {
                    neg[j] = u32::try_from(&-e.clone()).expect("exponent fits");
                }
            }
            Polynomial::from_terms(
                vars.clone(),
                [(Monomial(pos), Rat::one()), (Monomial(neg), -Rat::one())],
            )
        })
        .collect();
    if gens.is_empty() {
        return PolyIdeal::zero(vars);
    }
    PolyIdeal::new(vars, gens).saturate_coordinates()
}

/// A-feasibility: for every j outside supp(p), supp(a_j) must escape the
/// union of the supports of the columns indexed by supp(p).
pub fn is_a_feasible(model: &ModelMatrix, p: &[Rat]) -> bool {
    let supp = support(p);
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    for &l in &supp {
        covered.extend(model.col_support(l).iter().copied());
    }
    (0..model.cols())
        .filter(|j| !supp.contains(j))
        .all(|j| !model.col_support(j).is_subset(&covered))
}

/// Membership of a non-negative exact point in the non-negative toric
/// variety X_A.
///
/// Positive points are tested against the kernel lattice binomials; points
/// with zeros must have a facial support, and the positive part is tested
/// recursively on the support submodel.
pub fn variety_membership(model: &ModelMatrix, p: &[Rat]) -> bool {
    assert_eq!(p.len(), model.cols());
    let supp = support(p);
    if supp.is_empty() {
        // the origin is in every affine toric variety here: the ideal is
        // homogeneous since (1,...,1) lies in the row space
        return true;
    }
    if supp.len() == model.cols() {
        return kernel_binomials_hold(model.kernel(), p);
    }
    let indices: Vec<usize> = supp.iter().copied().collect();
    if crate::faces::is_facial_set(model, &supp).is_none() {
        return false;
    }
    let sub = match model.submodel(&indices) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let sub_p: Vec<Rat> = indices.iter().map(|&j| p[j].clone()).collect();
    kernel_binomials_hold(sub.kernel(), &sub_p)
}

fn kernel_binomials_hold(kernel: &LatticeBasis, p: &[Rat]) -> bool {
    for u in &kernel.vectors {
        let mut lhs = Rat::one();
        let mut rhs = Rat::one();
        for (j, e) in u.iter().enumerate() {
            if e.is_positive() {
                let e = u32::try_from(e).expect("exponent fits");
                for _ in 0..e {
                    lhs *= &p[j];
                }
            } else if e.is_negative() {
                let e = u32::try_from(&-e.clone()).expect("exponent fits");
                for _ in 0..e {
                    rhs *= &p[j];
                }
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Largest relative residual of the kernel binomials at a positive float
/// point; the float-side counterpart of `variety_membership`.
pub fn lattice_residual(model: &ModelMatrix, p: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for u in &model.kernel().vectors {
        let mut lhs = 1.0;
        let mut rhs = 1.0;
        for (j, e) in u.iter().enumerate() {
            let e: i64 = e.try_into().expect("small exponent");
            match e.cmp(&0) {
                std::cmp::Ordering::Greater => lhs *= p[j].powi(e as i32),
                std::cmp::Ordering::Less => rhs *= p[j].powi((-e) as i32),
                std::cmp::Ordering::Equal => {}
            }
        }
        let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
        worst = worst.max((lhs - rhs).abs() / scale);
    }
    worst
}

/// Image membership per the support characterization: a point of X_A lies
/// in im φ^A exactly when it is A-feasible.
pub fn in_image(model: &ModelMatrix, p: &[Rat]) -> bool {
    variety_membership(model, p) && is_a_feasible(model, p)
}

/// Coordinate-wise product, the torus action on X_A.
pub fn hadamard(p: &[Rat], q: &[Rat]) -> Vec<Rat> {
    p.iter().zip(q).map(|(a, b)| a * b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, parse_rat, rat};

    use crate::testmodels::{blob_model, square_model};

    fn rv(ss: &[&str]) -> Vec<Rat> {
        ss.iter().map(|s| parse_rat(s).unwrap()).collect()
    }

    #[test]
    fn rejects_matrices_without_ones_in_row_space() {
        // columns (1,0) and (2,0): row space is spanned by (1,2)
        let a = IntMatrix::from_i64(&[&[1, 2], &[0, 0]]);
        assert!(ModelMatrix::new(a).is_err());
    }

    #[test]
    fn rejects_negative_entries_and_zero_columns() {
        let a = IntMatrix::from_i64(&[&[1, -1], &[1, 1]]);
        assert!(ModelMatrix::new(a).is_err());
        let a = IntMatrix::from_i64(&[&[1, 0], &[1, 0]]);
        assert!(ModelMatrix::new(a).is_err());
    }

    #[test]
    fn monomial_map_golden() {
        let m = square_model();
        let p = monomial_map(&m, &[int(1), int(1), int(1)]).unwrap();
        assert_eq!(p, vec![int(1), int(1), int(1), int(1)]);
        let p = monomial_map(&m, &[int(1), int(2), int(3)]).unwrap();
        assert_eq!(p, vec![int(1), int(2), int(3), int(6)]);
        // zero theta coordinate wipes out the columns supported on it
        let p = monomial_map(&m, &[int(0), int(2), int(3)]).unwrap();
        assert_eq!(p, vec![int(0), int(0), int(0), int(6)]);
    }

    #[test]
    fn square_toric_ideal_is_the_quadric() {
        let m = square_model();
        let i = toric_ideal(&m);
        let vs = m.vars().clone();
        let expect = PolyIdeal::new(
            vs.clone(),
            vec![crate::poly::parse_poly(&vs, "x*w - y*z").unwrap()],
        );
        assert!(i.equals(&expect));
    }

    #[test]
    fn trivial_kernel_gives_zero_ideal() {
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        let m = ModelMatrix::new(a).unwrap();
        assert!(toric_ideal(&m).is_zero_ideal());
    }

    #[test]
    fn a_feasibility_golden() {
        let m = square_model();
        assert!(is_a_feasible(&m, &rv(&["1/4", "1/4", "1/4", "1/4"])));
        // p = 0: supp(a_j) never inside the empty union
        assert!(is_a_feasible(&m, &rv(&["0", "0", "0", "0"])));
        // first coordinate zero: supp(a_1) = {1} is covered by the rest
        assert!(!is_a_feasible(&m, &rv(&["0", "1/3", "1/3", "1/3"])));
    }

    #[test]
    fn membership_golden() {
        let m = square_model();
        assert!(variety_membership(&m, &rv(&["1/6", "1/3", "1/6", "1/3"])));
        assert!(!variety_membership(&m, &rv(&["1/4", "1/4", "1/4", "1/8"])));
    }

    #[test]
    fn image_points_pass_membership() {
        let m = blob_model();
        let p = monomial_map(&m, &[rat(1, 2), int(2), rat(1, 3)]).unwrap();
        assert!(variety_membership(&m, &p));
        assert!(in_image(&m, &p));
        // torus action closure
        let t = monomial_map(&m, &[int(3), rat(1, 5), int(1)]).unwrap();
        assert!(variety_membership(&m, &hadamard(&p, &t)));
    }

    #[test]
    fn membership_with_zero_support_routes_through_faces() {
        let m = square_model();
        // support {3,4} = columns with zero first coordinate: facial
        // (inner normal (1,0,0)), and the positive part is free
        assert!(variety_membership(&m, &rv(&["0", "0", "1/2", "1/2"])));
        // support {1} facial; {1,4} is not facial for the square
        assert!(variety_membership(&m, &rv(&["1", "0", "0", "0"])));
        assert!(!variety_membership(&m, &rv(&["1/2", "0", "0", "1/2"])));
    }
}
