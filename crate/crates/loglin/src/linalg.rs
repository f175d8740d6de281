//! Exact integer and rational linear algebra: Hermite normal form,
//! integer kernel lattices, rank, and rational solving.
//!
//! Everything here is arbitrary precision; no floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Dense integer matrix, row-major, arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert!(rows >= 1 && cols >= 1, "dimensions must be >= 1");
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c));
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix::new(r, c, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix::new(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.at(i, j).clone());
            }
        }
        IntMatrix::new(self.cols, self.rows, entries)
    }

    /// Keeps the columns listed in `keep` (0-based), in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> IntMatrix {
        assert!(keep.iter().all(|&j| j < self.cols));
        let mut entries = Vec::with_capacity(self.rows * keep.len());
        for i in 0..self.rows {
            for &j in keep {
                entries.push(self.at(i, j).clone());
            }
        }
        IntMatrix::new(self.rows, keep.len(), entries)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| Rat::from_integer(a.clone()) * b)
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row[dst] += q * row[src]
    fn add_multiple_of_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(dst, j) + q * self.at(src, j);
            self.set(dst, j, v);
        }
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  {}",
                self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            )?;
        }
        write!(f, "]")
    }
}

/// Basis of the integer kernel lattice {u : M u = 0}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Row-style Hermite normal form: returns (H, U) with U unimodular,
/// U·M = H, pivots positive, and entries above each pivot reduced into
/// [0, pivot).
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivot_row = 0;

    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // clear the column below pivot_row with gcd row operations
        loop {
            // find the row (>= pivot_row) with smallest nonzero |entry|
            let mut best: Option<usize> = None;
            for i in pivot_row..h.rows {
                if !h.at(i, col).is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if h.at(i, col).abs() < h.at(b, col).abs() {
                                best = Some(i);
                            }
                        }
                    }
                }
            }
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let pivot = h.at(pivot_row, col).clone();
            let mut done = true;
            for i in pivot_row + 1..h.rows {
                let q = -(h.at(i, col) / &pivot);
                h.add_multiple_of_row(i, pivot_row, &q);
                u.add_multiple_of_row(i, pivot_row, &q);
                if !h.at(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        if h.at(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // reduce entries above the pivot into [0, pivot)
        let pivot = h.at(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = -h.at(i, col).div_floor(&pivot);
            h.add_multiple_of_row(i, pivot_row, &q);
            u.add_multiple_of_row(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

fn normalize_primitive(v: &mut [BigInt]) {
    let c = content(v);
    if c > BigInt::one() {
        for x in v.iter_mut() {
            *x /= &c;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

/// Basis of {u in Z^cols : M u = 0}, each vector primitive with the first
/// nonzero entry positive. The rows of the HNF transform of M^T that land
/// on zero rows of H span exactly this lattice.
pub fn integer_kernel_basis(m: &IntMatrix) -> LatticeBasis {
    let (h, u) = hermite_normal_form(&m.transpose());
    let mut vectors = Vec::new();
    for i in 0..h.rows() {
        if h.row(i).iter().all(|x| x.is_zero()) {
            let mut v = u.row(i).to_vec();
            normalize_primitive(&mut v);
            vectors.push(v);
        }
    }
    vectors.sort();
    LatticeBasis { vectors }
}

/// Rank over the rationals (= number of nonzero HNF rows).
pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hermite_normal_form(m);
    (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
}

/// Exact solve of M x = b. Returns `None` when the system is inconsistent.
/// Underdetermined systems get the canonical minimum-support solution:
/// pivots chosen in column order, free variables set to zero.
pub fn solve_rational(m: &IntMatrix, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "rhs length {} != rows {}",
            b.len(),
            m.rows()
        )));
    }
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| Rat::from_integer(x.clone()))
                .chain(std::iter::once(b[i].clone()))
                .collect()
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for j in c..=cols {
            a[r][j] = &a[r][j] / &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=cols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistency: zero row with nonzero rhs
    for i in r..rows {
        if !a[i][cols].is_zero() {
            return Ok(None);
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[i][cols].clone();
    }
    Ok(Some(x))
}
