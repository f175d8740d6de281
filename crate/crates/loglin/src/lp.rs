//! Exact rational linear programming: two-phase dense simplex with
//! Bland's rule. Small and exact beats fast and approximate here — the
//! facial-set LPs are tiny and often degenerate.

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// minimize c·x subject to A x = b, x ≥ 0.
#[derive(Clone, Debug)]
pub struct RationalLP {
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    c: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

impl RationalLP {
    pub fn new(a: Vec<Vec<Rat>>, b: Vec<Rat>, c: Vec<Rat>) -> Self {
        let n = c.len();
        assert_eq!(a.len(), b.len());
        assert!(a.iter().all(|row| row.len() == n));
        RationalLP { a, b, c }
    }

    /// Feasibility probe: is {x ≥ 0 : Ax = b} nonempty, and a witness.
    pub fn feasible_point(&self) -> Option<Vec<Rat>> {
        match self.solve_phase1() {
            Some((tab, basis)) => Some(extract(&tab, &basis, self.c.len())),
            None => None,
        }
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.c.len();
        let Some((mut tab, mut basis)) = self.solve_phase1() else {
            return LpOutcome::Infeasible;
        };
        let m = tab.len();
        // phase 2: reduced costs over the original variables only
        let mut obj: Vec<Rat> = self.c.clone();
        obj.push(Rat::zero()); // objective value slot (negated)
        // zero out the basic columns
        for i in 0..m {
            let j = basis[i];
            if j < n && !obj[j].is_zero() {
                let f = obj[j].clone();
                for k in 0..=n {
                    let idx = if k == n { tab[i].len() - 1 } else { k };
                    let v = &obj[k] - &f * &tab[i][idx];
                    obj[k] = v;
                }
            }
        }
        loop {
            // Bland: smallest-index original variable with negative reduced cost
            let Some(enter) = (0..n).find(|&j| obj[j].is_negative() && !basis.contains(&j))
            else {
                let x = extract(&tab, &basis, n);
                let value = self
                    .c
                    .iter()
                    .zip(&x)
                    .map(|(ci, xi)| ci * xi)
                    .fold(Rat::zero(), |acc, t| acc + t);
                return LpOutcome::Optimal { x, value };
            };
            let rhs = tab[0].len() - 1;
            let mut leave: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for i in 0..m {
                if tab[i][enter].is_positive() {
                    let ratio = &tab[i][rhs] / &tab[i][enter];
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b || (ratio == *b && basis[i] < basis[leave.expect("set")])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        leave = Some(i);
                    }
                }
            }
            let Some(leave) = leave else {
                return LpOutcome::Unbounded;
            };
            pivot(&mut tab, &mut basis, Some(&mut obj), leave, enter);
        }
    }

    /// Phase 1: artificial variables, minimize their sum; returns the
    /// tableau and basis with artificials driven out, or None.
    fn solve_phase1(&self) -> Option<(Vec<Vec<Rat>>, Vec<usize>)> {
        let m = self.a.len();
        let n = self.c.len();
        // tableau columns: n original, m artificial, 1 rhs
        let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
        for i in 0..m {
            let mut row: Vec<Rat> = Vec::with_capacity(n + m + 1);
            let flip = self.b[i].is_negative();
            for j in 0..n {
                row.push(if flip { -self.a[i][j].clone() } else { self.a[i][j].clone() });
            }
            for k in 0..m {
                row.push(if k == i { Rat::one() } else { Rat::zero() });
            }
            row.push(if flip { -self.b[i].clone() } else { self.b[i].clone() });
            tab.push(row);
        }
        let mut basis: Vec<usize> = (n..n + m).collect();
        // phase-1 objective: sum of artificials, reduced over the basis
        let mut obj: Vec<Rat> = vec![Rat::zero(); n + m + 1];
        for j in n..n + m {
            obj[j] = Rat::one();
        }
        for i in 0..m {
            for k in 0..n + m + 1 {
                let v = &obj[k] - &tab[i][k];
                obj[k] = v;
            }
        }
        loop {
            let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else {
                break;
            };
            let rhs = n + m;
            let mut leave: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for i in 0..m {
                if tab[i][enter].is_positive() {
                    let ratio = &tab[i][rhs] / &tab[i][enter];
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b || (ratio == *b && basis[i] < basis[leave.expect("set")])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        leave = Some(i);
                    }
                }
            }
            let leave = leave?; // phase-1 objective is bounded below by 0
            pivot(&mut tab, &mut basis, Some(&mut obj), leave, enter);
        }
        // infeasible when the artificial sum is positive: obj slack = -sum
        if obj[n + m].is_negative() {
            return None;
        }
        // drive remaining artificials (basic at zero) out or drop their rows
        let mut keep_rows: Vec<bool> = vec![true; m];
        for i in 0..m {
            if basis[i] >= n {
                if let Some(enter) = (0..n).find(|&j| !tab[i][j].is_zero()) {
                    pivot(&mut tab, &mut basis, None, i, enter);
                } else {
                    keep_rows[i] = false; // redundant constraint
                }
            }
        }
        let mut tab2 = Vec::new();
        let mut basis2 = Vec::new();
        for i in 0..m {
            if keep_rows[i] {
                // strip artificial columns
                let mut row: Vec<Rat> = tab[i][..n].to_vec();
                row.push(tab[i][n + m].clone());
                tab2.push(row);
                basis2.push(basis[i]);
            }
        }
        Some((tab2, basis2))
    }
}

fn pivot(
    tab: &mut [Vec<Rat>],
    basis: &mut [usize],
    obj: Option<&mut Vec<Rat>>,
    leave: usize,
    enter: usize,
) {
    let inv = tab[leave][enter].clone();
    for v in tab[leave].iter_mut() {
        *v = &*v / &inv;
    }
    for i in 0..tab.len() {
        if i != leave && !tab[i][enter].is_zero() {
            let f = tab[i][enter].clone();
            for k in 0..tab[i].len() {
                let v = &tab[i][k] - &f * &tab[leave][k];
                tab[i][k] = v;
            }
        }
    }
    if let Some(obj) = obj {
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for k in 0..obj.len().min(tab[leave].len()) {
                let v = &obj[k] - &f * &tab[leave][k];
                obj[k] = v;
            }
        }
    }
    basis[leave] = enter;
}

fn extract(tab: &[Vec<Rat>], basis: &[usize], n: usize) -> Vec<Rat> {
    let mut x = vec![Rat::zero(); n];
    let rhs = tab.first().map(|r| r.len() - 1).unwrap_or(0);
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = tab[i][rhs].clone();
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn r(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|row| row.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn solves_a_small_lp() {
        // min -x1 - 2 x2 st x1 + x2 + s = 4, x1 + 3 x2 + t = 6
        let lp = RationalLP::new(
            r(&[&[1, 1, 1, 0], &[1, 3, 0, 1]]),
            vec![int(4), int(6)],
            vec![int(-1), int(-2), int(0), int(0)],
        );
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x[0], int(3));
                assert_eq!(x[1], int(1));
                assert_eq!(value, int(-5));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        // x = 1 and x = 2
        let lp = RationalLP::new(r(&[&[1], &[1]]), vec![int(1), int(2)], vec![int(0)]);
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        assert!(lp.feasible_point().is_none());
    }

    #[test]
    fn detects_unbounded() {
        // min -x st x - s = 0
        let lp = RationalLP::new(r(&[&[1, -1]]), vec![int(0)], vec![int(-1), int(0)]);
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn handles_redundant_rows() {
        let lp = RationalLP::new(
            r(&[&[1, 1], &[2, 2]]),
            vec![int(2), int(4)],
            vec![int(1), int(0)],
        );
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, int(0));
                assert_eq!(x[1], int(2));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn exact_fractions_survive() {
        // x = 1/3 exactly
        let lp = RationalLP::new(
            vec![vec![int(3)]],
            vec![int(1)],
            vec![int(1)],
        );
        match lp.solve() {
            LpOutcome::Optimal { x, .. } => assert_eq!(x[0], rat(1, 3)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }
}
