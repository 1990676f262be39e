//! Small dense exact linear algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{Rat, Scalar};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Scalar>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_nil()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::unit().div(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_nil() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Unique solution of the square system `a x = b`, if `a` is invertible.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Basis of `{x : rows * x = 0}`.
pub fn nullspace(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn det(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    d
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[i64], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| y * Rat::from_integer(BigInt::from(*x)))
        .sum()
}

/// Bilinear form `x^T g y`.
pub fn bilinear(g: &[Vec<Rat>], x: &[Rat], y: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            s += xi * &g[i][j] * yj;
        }
    }
    s
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, computed by
/// congruence diagonalization.
pub fn signature(g: &[Vec<Rat>]) -> (usize, usize, usize) {
    let n = g.len();
    let mut m = g.to_vec();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // Find a nonzero diagonal pivot, creating one if only off-diagonal
        // entries survive.
        let pivot = active.iter().copied().find(|&i| !m[i][i].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !m[i][j].is_zero());
                match pair {
                    None => {
                        zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        // row_i += row_j, col_i += col_j
                        for k in 0..n {
                            let t = m[j][k].clone();
                            m[i][k] += t;
                        }
                        for k in 0..n {
                            let t = m[k][j].clone();
                            m[k][i] += t;
                        }
                        i
                    }
                }
            }
        };
        let pv = m[pivot][pivot].clone();
        if pv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != pivot);
        for &i in &active {
            if m[i][pivot].is_zero() {
                continue;
            }
            let f = &m[i][pivot] / &pv;
            for k in 0..n {
                let t = &m[pivot][k] * &f;
                m[i][k] -= t;
            }
            for k in 0..n {
                let t = &m[k][pivot] * &f;
                m[k][i] -= t;
            }
        }
    }
    (pos, neg, zero)
}

pub fn is_negative_definite(g: &[Vec<Rat>]) -> bool {
    let (p, n, z) = signature(g);
    p == 0 && z == 0 && n == g.len()
}

/// Unimodular `u` (with inverse) such that `n^T u = (g, 0, ..., 0)` where
/// `g = gcd(n) > 0`. Columns `1..` of `u` are a basis of `n^perp` in `Z^d`.
pub fn unimodular_completion(n: &[i64]) -> (i64, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let d = n.len();
    let mut row: Vec<i64> = n.to_vec();
    let mut u: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    loop {
        let nonzero: Vec<usize> = (0..d).filter(|&j| row[j] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&j| row[j].abs()).unwrap();
        for &k in &nonzero {
            if k == p {
                continue;
            }
            let q = Integer::div_floor(&row[k], &row[p]);
            row[k] -= q * row[p];
            for r in u.iter_mut() {
                r[k] -= q * r[p];
            }
        }
    }
    let p = (0..d).find(|&j| row[j] != 0).unwrap_or(0);
    if p != 0 {
        row.swap(0, p);
        for r in u.iter_mut() {
            r.swap(0, p);
        }
    }
    if row[0] < 0 {
        row[0] = -row[0];
        for r in u.iter_mut() {
            r[0] = -r[0];
        }
    }
    let inv = integer_inverse(&u);
    (row[0], u, inv)
}

fn integer_inverse(u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = u.len();
    let a: Vec<Vec<Rat>> = u
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    let mut cols = Vec::with_capacity(d);
    for j in 0..d {
        let e: Vec<Rat> = (0..d).map(|i| Rat::from_integer(i64::from(i == j).into())).collect();
        cols.push(solve(&a, &e).expect("unimodular matrix is invertible"));
    }
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let x = &cols[j][i];
                    debug_assert!(x.is_integer());
                    x.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
