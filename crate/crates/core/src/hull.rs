//! Exact convex hulls of finite point sets in dimension at most four.
//!
//! Full-dimensional sets go through an incremental beneath-beyond
//! construction over a triangulated boundary, with all orientation tests done
//! in `i128` on points scaled to a common denominator. Lower-dimensional sets
//! are projected onto independent coordinates, hulled there, and lifted back
//! together with the equations of their affine span.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{nullspace, primitive_integer, rank};
use crate::polytope::Inequality;
use crate::scalar::{lcm_of_denominators, Rat};

#[derive(Clone, Debug)]
pub struct HullResult {
    pub inequalities: Vec<Inequality>,
    pub vertices: Vec<Vec<Rat>>,
    pub affine_dim: usize,
}

pub fn convex_hull(points: &[Vec<Rat>], dim: usize) -> Result<Option<HullResult>> {
    let mut pts: Vec<Vec<Rat>> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.is_empty() {
        return Ok(None);
    }
    let diffs: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    let k = if diffs.is_empty() { 0 } else { rank(&diffs) };
    if k == dim {
        return full_dimensional(&pts, dim).map(Some);
    }
    // Affine span equations.
    let mut inequalities = Vec::new();
    for w in nullspace(&diffs, dim) {
        let w = to_i64(&primitive_integer(&w))?;
        let c = dot_i64(&w, &pts[0]);
        inequalities.push(Inequality::new(w.clone(), -c.clone()));
        inequalities.push(Inequality::new(w.iter().map(|x| -x).collect(), c));
    }
    // Choose k coordinates on which the span projects isomorphically.
    let mut coords = Vec::new();
    for j in 0..dim {
        let mut trial = coords.clone();
        trial.push(j);
        let cols: Vec<Vec<Rat>> = diffs
            .iter()
            .map(|d| trial.iter().map(|&t| d[t].clone()).collect())
            .collect();
        if !cols.is_empty() && rank(&cols) == trial.len() {
            coords = trial;
        }
        if coords.len() == k {
            break;
        }
    }
    let vertices = if k == 0 {
        vec![pts[0].clone()]
    } else {
        let projected: Vec<Vec<Rat>> = pts
            .iter()
            .map(|p| coords.iter().map(|&j| p[j].clone()).collect())
            .collect();
        let sub = if k == 1 {
            segment_hull(&projected)
        } else {
            full_dimensional(&projected, k)?
        };
        for ineq in sub.inequalities {
            let mut normal = vec![0i64; dim];
            for (slot, &j) in coords.iter().enumerate() {
                normal[j] = ineq.normal[slot];
            }
            inequalities.push(Inequality::new(normal, ineq.offset));
        }
        sub.vertices
            .iter()
            .map(|pv| {
                let idx = projected.iter().position(|q| q == pv).unwrap();
                pts[idx].clone()
            })
            .collect()
    };
    Ok(Some(HullResult {
        inequalities,
        vertices,
        affine_dim: k,
    }))
}

fn segment_hull(points: &[Vec<Rat>]) -> HullResult {
    let lo = points.iter().min().unwrap().clone();
    let hi = points.iter().max().unwrap().clone();
    HullResult {
        inequalities: vec![
            Inequality::new(vec![1], -lo[0].clone()),
            Inequality::new(vec![-1], hi[0].clone()),
        ],
        vertices: vec![lo, hi],
        affine_dim: 1,
    }
}

fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::BudgetExceeded("normal vector exceeds i64".into()))
        })
        .collect()
}

fn dot_i64(a: &[i64], p: &[Rat]) -> Rat {
    a.iter()
        .zip(p)
        .map(|(x, y)| y * Rat::from_integer(BigInt::from(*x)))
        .sum()
}

struct Facet {
    verts: Vec<usize>,
    normal: Vec<i128>,
    level: i128,
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut s = 0i128;
            for c in 0..n {
                if m[0][c] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                    .collect();
                let term = m[0][c] * det_i128(&minor);
                s += if c % 2 == 0 { term } else { -term };
            }
            s
        }
    }
}

/// Normal vector orthogonal to the `d - 1` rows of `m` (generalized cross product).
fn cross(m: &[Vec<i128>], d: usize) -> Vec<i128> {
    (0..d)
        .map(|k| {
            let minor: Vec<Vec<i128>> = m
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect())
                .collect();
            let c = det_i128(&minor);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

fn dot128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn full_dimensional(pts: &[Vec<Rat>], d: usize) -> Result<HullResult> {
    let scale = lcm_of_denominators(pts.iter().flatten());
    let scale_q = Rat::from_integer(scale.clone());
    let ipts: Vec<Vec<i128>> = pts
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| {
                    (x * &scale_q)
                        .to_integer()
                        .to_i128()
                        .filter(|v| v.abs() < (1i128 << 28))
                        .ok_or_else(|| Error::BudgetExceeded("hull coordinates too large".into()))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    // Initial simplex.
    let mut simplex = vec![0usize];
    for (i, p) in ipts.iter().enumerate().skip(1) {
        let mut rows: Vec<Vec<Rat>> = simplex[1..]
            .iter()
            .map(|&s| diff_rat(&ipts[s], &ipts[0]))
            .collect();
        rows.push(diff_rat(p, &ipts[0]));
        if rank(&rows) == rows.len() {
            simplex.push(i);
        }
        if simplex.len() == d + 1 {
            break;
        }
    }
    debug_assert_eq!(simplex.len(), d + 1);
    let centroid: Vec<i128> = (0..d).map(|j| simplex.iter().map(|&s| ipts[s][j]).sum()).collect();
    let weight = (d + 1) as i128;

    let make_facet = |verts: Vec<usize>| -> Facet {
        let base = &ipts[verts[0]];
        let rows: Vec<Vec<i128>> = verts[1..]
            .iter()
            .map(|&v| ipts[v].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let mut normal = cross(&rows, d);
        let mut level = dot128(&normal, base);
        if dot128(&normal, &centroid) < weight * level {
            normal.iter_mut().for_each(|x| *x = -*x);
            level = -level;
        }
        Facet {
            verts,
            normal,
            level,
        }
    };

    let mut facets: Vec<Facet> = (0..=d)
        .map(|skip| {
            simplex
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
        .map(make_facet)
        .collect();

    for (pi, p) in ipts.iter().enumerate() {
        if simplex.contains(&pi) {
            continue;
        }
        let visible: Vec<bool> = facets
            .iter()
            .map(|f| dot128(&f.normal, p) < f.level)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for (f, _) in facets.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..d {
                let mut ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridge.sort_unstable();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        let mut kept: Vec<Facet> = facets
            .into_iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| f)
            .collect();
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        for mut ridge in horizon {
            ridge.push(pi);
            kept.push(make_facet(ridge));
        }
        facets = kept;
    }

    // Deduplicate facet hyperplanes.
    let mut planes: BTreeSet<(Vec<i64>, Rat)> = BTreeSet::new();
    for f in &facets {
        let g = f.normal.iter().fold(0i128, |acc, x| acc.gcd(x));
        let g = if g == 0 { 1 } else { g };
        let normal: Vec<i64> = f
            .normal
            .iter()
            .map(|x| i64::try_from(x / g))
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::BudgetExceeded("facet normal exceeds i64".into()))?;
        // <n, P> >= level  with P = scale * u   =>   <n, u> >= level / (g * scale)
        let level = Rat::new(BigInt::from(f.level / g) * BigInt::one(), scale.clone());
        debug_assert!((f.level % g).is_zero());
        planes.insert((normal, -level));
    }
    let inequalities: Vec<Inequality> = planes
        .into_iter()
        .map(|(n, off)| Inequality::new(n, off))
        .collect();

    // A point is a vertex when its tight facet normals span R^d.
    let vertices = pts
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<Rat>> = inequalities
                .iter()
                .filter(|q| q.slack(p).is_zero())
                .map(|q| q.normal.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect();
            tight.len() >= d && rank(&tight) == d
        })
        .cloned()
        .collect();
    Ok(HullResult {
        inequalities,
        vertices,
        affine_dim: d,
    })
}

fn diff_rat(a: &[i128], b: &[i128]) -> Vec<Rat> {
    a.iter()
        .zip(b)
        .map(|(x, y)| Rat::from_integer(BigInt::from(x - y)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn pts(raw: &[&[i64]]) -> Vec<Vec<Rat>> {
        raw.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn square_with_interior_and_edge_points() {
        let h = convex_hull(
            &pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0], &[2, 1]]),
            2,
        )
        .unwrap()
        .unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.inequalities.len(), 4);
    }

    #[test]
    fn cube_in_three_dimensions() {
        let mut raw = Vec::new();
        for x in 0..=2 {
            for y in 0..=2 {
                for z in 0..=2 {
                    raw.push(vec![int(x), int(y), int(z)]);
                }
            }
        }
        let h = convex_hull(&raw, 3).unwrap().unwrap();
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.inequalities.len(), 6);
    }

    #[test]
    fn collinear_points_in_the_plane() {
        let h = convex_hull(&pts(&[&[0, 0], &[1, 1], &[3, 3], &[2, 2]]), 2)
            .unwrap()
            .unwrap();
        assert_eq!(h.affine_dim, 1);
        assert_eq!(h.vertices, pts(&[&[0, 0], &[3, 3]]));
        for v in pts(&[&[0, 0], &[1, 1], &[3, 3]]) {
            assert!(h.inequalities.iter().all(|q| q.slack(&v) >= Rat::zero()));
        }
        let outside = pts(&[&[1, 2]]).remove(0);
        assert!(h.inequalities.iter().any(|q| q.slack(&outside) < Rat::zero()));
    }
}
