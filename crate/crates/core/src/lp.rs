//! Dense tableau simplex for packing LPs of the form
//! `max cᵀx  s.t.  Ax ≤ b, x ≥ 0` with `b ≥ 0`.
//!
//! The slack basis is feasible from the start, so no phase one is needed.
//! Bland's rule guarantees termination.

use crate::scalar::LpScalar;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<T> {
    pub value: T,
    pub primal: Vec<T>,
    /// Optimal dual prices, one per constraint row.
    pub dual: Vec<T>,
    pub pivots: usize,
}

#[derive(Debug, Clone)]
pub struct Simplex<T> {
    rows: usize,
    cols: usize,
    // rows x (cols + rows + 1); last column is the right-hand side
    tableau: Vec<Vec<T>>,
    // reduced costs, length cols + rows; objective value kept separately
    objective: Vec<T>,
    value: T,
    basis: Vec<usize>,
}

impl<T: LpScalar> Simplex<T> {
    /// `a[i][j]` is the coefficient of variable `j` in row `i`.
    pub fn new(a: &[Vec<T>], b: &[T], c: &[T]) -> Simplex<T> {
        let rows = a.len();
        let cols = c.len();
        assert_eq!(b.len(), rows);
        assert!(b.iter().all(|x| !x.is_neg()), "right-hand side must be nonnegative");
        let width = cols + rows + 1;
        let tableau = a
            .iter()
            .zip(b)
            .enumerate()
            .map(|(i, (row, rhs))| {
                assert_eq!(row.len(), cols);
                let mut r = Vec::with_capacity(width);
                r.extend(row.iter().cloned());
                r.extend((0..rows).map(|k| if k == i { T::one() } else { T::zero() }));
                r.push(rhs.clone());
                r
            })
            .collect();
        let mut objective: Vec<T> = c.to_vec();
        objective.extend((0..rows).map(|_| T::zero()));
        Simplex { rows, cols, tableau, objective, value: T::zero(), basis: (cols..cols + rows).collect() }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.cols + self.rows + 1;
        let p = self.tableau[row][col].clone();
        for x in self.tableau[row].iter_mut() {
            *x = x.clone() / p.clone();
        }
        let pivot_row = self.tableau[row].clone();
        for (i, r) in self.tableau.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for j in 0..width {
                if !pivot_row[j].is_zero() {
                    r[j] = r[j].clone() - f.clone() * pivot_row[j].clone();
                }
            }
        }
        let f = self.objective[col].clone();
        if !f.is_zero() {
            for j in 0..width - 1 {
                if !pivot_row[j].is_zero() {
                    self.objective[j] = self.objective[j].clone() - f.clone() * pivot_row[j].clone();
                }
            }
            self.value = self.value.clone() + f * pivot_row[width - 1].clone();
        }
        self.basis[row] = col;
    }

    /// Runs to optimality. The feasible region is bounded whenever every
    /// column has a positive entry; unbounded problems return `None`.
    pub fn solve(mut self) -> Option<LpSolution<T>> {
        let rhs = self.cols + self.rows;
        let mut pivots = 0;
        loop {
            let Some(col) = (0..self.cols + self.rows).find(|&j| self.objective[j].is_pos()) else { break };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows {
                let a = &self.tableau[i][col];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.tableau[i][rhs].clone() / a.clone();
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave?;
            self.pivot(row, col);
            pivots += 1;
        }
        let mut primal = vec![T::zero(); self.cols];
        for (i, &bv) in self.basis.iter().enumerate() {
            if bv < self.cols {
                primal[bv] = self.tableau[i][rhs].clone();
            }
        }
        let dual = (0..self.rows).map(|i| -self.objective[self.cols + i].clone()).collect();
        Some(LpSolution { value: self.value, primal, dual, pivots })
    }
}
