//! Exact two-phase simplex with Bland's rule.
//!
//! Problems are given in equality form `max c.x  s.t.  A x = b, x >= 0` over any
//! [`Scalar`] field, so cone membership works for quadratic-field data as well.

use std::cmp::Ordering;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Infeasible,
    Unbounded,
    Optimal { value: T, x: Vec<T> },
}

struct Tableau<T> {
    // rows: constraints, last column is rhs
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = T::unit().div(&self.rows[r][c]);
        for x in self.rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_nil() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..=self.ncols {
                let t = self.rows[r][j].mul(&f);
                self.rows[i][j] = self.rows[i][j].sub(&t);
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[T], j: usize) -> T {
        let mut z = T::nil();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_nil() && !self.rows[i][j].is_nil() {
                z = z.add(&cost[b].mul(&self.rows[i][j]));
            }
        }
        cost[j].sub(&z)
    }

    /// Maximizes `cost` over the columns in `allowed`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[T], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let entering = (0..self.ncols)
                .filter(|&j| allowed(j) && !self.basis.contains(&j))
                .find(|&j| self.reduced_cost(cost, j).signum_exact() == Ordering::Greater);
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].signum_exact() != Ordering::Greater {
                    continue;
                }
                let ratio = self.rows[i][self.ncols].div(&self.rows[i][c]);
                let better = match &best {
                    None => true,
                    Some((bi, br)) => match ratio.cmp_exact(br) {
                        Ordering::Less => true,
                        Ordering::Equal => self.basis[i] < self.basis[*bi],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

pub fn maximize<T: Scalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> LpOutcome<T> {
    let m = a.len();
    let n = c.len();
    // Columns: n structural, m artificial.
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].signum_exact() == Ordering::Less;
        let mut row: Vec<T> = a[i]
            .iter()
            .map(|x| if flip { x.neg() } else { x.clone() })
            .collect();
        row.extend((0..m).map(|k| if k == i { T::unit() } else { T::nil() }));
        row.push(if flip { b[i].neg() } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        ncols,
    };
    let phase1: Vec<T> = (0..ncols)
        .map(|j| if j >= n { T::unit().neg() } else { T::nil() })
        .collect();
    t.optimize(&phase1, &|_| true);
    let infeasible = t
        .basis
        .iter()
        .enumerate()
        .any(|(i, &bj)| bj >= n && !t.rows[i][ncols].is_nil());
    if infeasible {
        return LpOutcome::Infeasible;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_nil() && !t.basis.contains(&j)) {
                t.pivot(i, j);
            }
        }
    }
    let mut cost: Vec<T> = c.to_vec();
    cost.extend((0..m).map(|_| T::nil()));
    if !t.optimize(&cost, &|j| j < n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![T::nil(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            x[bj] = t.rows[i][ncols].clone();
        }
    }
    let value = x
        .iter()
        .zip(c)
        .fold(T::nil(), |acc, (xi, ci)| acc.add(&xi.mul(ci)));
    LpOutcome::Optimal { value, x }
}

/// Is there `x >= 0` with `A x = b`?
pub fn feasible<T: Scalar>(a: &[Vec<T>], b: &[T]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    !matches!(maximize(a, b, &vec![T::nil(); n]), LpOutcome::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_optimum() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![v(&[1, 2, 1, 0]), v(&[3, 1, 0, 1])];
        let out = maximize(&a, &v(&[4, 6]), &v(&[1, 1, 0, 0]));
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, Rat::new(14.into(), 5.into())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![v(&[1, 1])];
        assert_eq!(maximize(&a, &v(&[-1]), &v(&[0, 0])), LpOutcome::Infeasible);
        let a = vec![v(&[1, -1])];
        assert_eq!(maximize(&a, &v(&[1]), &v(&[1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_rows() {
        let a = vec![v(&[1, 1]), v(&[2, 2])];
        assert!(feasible(&a, &v(&[1, 2])));
        assert!(!feasible(&a, &v(&[1, 3])));
    }
}
