//! Finitely generated convex cones with exact membership.

use std::cmp::Ordering;

use crate::linalg::rank;
use crate::lp::{feasible, maximize, LpOutcome};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConePosition {
    Outside,
    Boundary,
    Interior,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyCone<T> {
    dim: usize,
    generators: Vec<Vec<T>>,
}

impl<T: Scalar> PolyCone<T> {
    /// Zero generators are dropped.
    pub fn new(dim: usize, generators: Vec<Vec<T>>) -> Self {
        let generators = generators
            .into_iter()
            .filter(|g| g.len() == dim && !g.iter().all(Scalar::is_nil))
            .collect();
        PolyCone { dim, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<T>] {
        &self.generators
    }

    /// Same cone with every generator that lies in the cone of the others
    /// removed.
    pub fn irredundant(&self) -> Self {
        let mut kept = self.generators.clone();
        let mut i = 0;
        while i < kept.len() {
            let mut rest = kept.clone();
            let g = rest.remove(i);
            if PolyCone::new(self.dim, rest.clone()).contains(&g) {
                kept = rest;
            } else {
                i += 1;
            }
        }
        PolyCone::new(self.dim, kept)
    }

    fn columns(&self) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|i| self.generators.iter().map(|g| g[i].clone()).collect())
            .collect()
    }

    pub fn contains(&self, v: &[T]) -> bool {
        if self.generators.is_empty() {
            return v.iter().all(Scalar::is_nil);
        }
        feasible(&self.columns(), v)
    }

    /// Strict interior: `v = G(mu + t 1)` with `mu >= 0`, `t > 0`, and `G`
    /// of full rank.
    pub fn interior_contains(&self, v: &[T]) -> bool {
        if self.generators.is_empty() || rank(&self.generators) < self.dim {
            return false;
        }
        let n = self.generators.len();
        let mut a = self.columns();
        for (i, row) in a.iter_mut().enumerate() {
            let s = self
                .generators
                .iter()
                .fold(T::nil(), |acc, g| acc.add(&g[i]));
            row.push(s);
            row.push(T::nil());
        }
        // t + slack = 1
        let mut cap = vec![T::nil(); n];
        cap.push(T::unit());
        cap.push(T::unit());
        a.push(cap);
        let mut b = v.to_vec();
        b.push(T::unit());
        let mut c = vec![T::nil(); n + 2];
        c[n] = T::unit();
        match maximize(&a, &b, &c) {
            LpOutcome::Optimal { value, .. } => value.signum_exact() == Ordering::Greater,
            _ => false,
        }
    }

    pub fn classify(&self, v: &[T]) -> ConePosition {
        if self.interior_contains(v) {
            ConePosition::Interior
        } else if self.contains(v) {
            ConePosition::Boundary
        } else {
            ConePosition::Outside
        }
    }
}
