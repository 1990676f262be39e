//! Rational polytopes given by inequality systems `<u, normal> >= -offset`.
//!
//! Vertices are found by brute force over `d`-subsets of the inequalities,
//! which is exact and cheap in the dimensions used here (at most 4). Lattice
//! points are counted by scanning the integer bounding box, resolving the
//! last coordinate as an interval.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hull::convex_hull;
use crate::linalg::{det, rank, solve, unimodular_completion};
use crate::lp::feasible;
use crate::scalar::{ceil_i64, factorial, floor_i64, lcm_of_denominators, Rat};

pub const MAX_DIMENSION: usize = 4;
pub const DEFAULT_POINT_BUDGET: u64 = 1_000_000;

/// Half-space `<u, normal> >= -offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub normal: Vec<i64>,
    pub offset: Rat,
}

impl Inequality {
    pub fn new(normal: Vec<i64>, offset: Rat) -> Self {
        Inequality { normal, offset }
    }

    /// `<u, normal> + offset`; nonnegative exactly on the half-space.
    pub fn slack(&self, u: &[Rat]) -> Rat {
        let mut s = self.offset.clone();
        for (n, x) in self.normal.iter().zip(u) {
            if *n != 0 {
                s += x * Rat::from_integer(BigInt::from(*n));
            }
        }
        s
    }

    fn normal_rat(&self) -> Vec<Rat> {
        self.normal
            .iter()
            .map(|&x| Rat::from_integer(x.into()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Empty,
    Bounded,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LatticePolytope {
    dim: usize,
    inequalities: Vec<Inequality>,
    vertices: Vec<Vec<Rat>>,
    shape: Shape,
    affine_dim: Option<usize>,
}

/// Limit on the number of candidate points a lattice scan may visit.
#[derive(Clone, Copy, Debug)]
pub struct CountBudget {
    pub max_points: u64,
}

impl Default for CountBudget {
    fn default() -> Self {
        CountBudget {
            max_points: DEFAULT_POINT_BUDGET,
        }
    }
}

fn unit(d: usize, j: usize, sign: i64) -> Vec<Rat> {
    (0..d)
        .map(|i| Rat::from_integer(if i == j { sign } else { 0 }.into()))
        .collect()
}

/// Whether `target` is a nonnegative combination of `gens`.
fn in_cone(gens: &[Vec<Rat>], target: &[Rat]) -> bool {
    if gens.is_empty() {
        return target.iter().all(Zero::is_zero);
    }
    let d = target.len();
    let a: Vec<Vec<Rat>> = (0..d)
        .map(|i| gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    feasible(&a, target)
}

pub fn build_polytope(dim: usize, inequalities: Vec<Inequality>) -> Result<LatticePolytope> {
    if dim > MAX_DIMENSION {
        return Err(Error::InvalidOperands(format!(
            "ambient dimension {dim} exceeds {MAX_DIMENSION}"
        )));
    }
    if let Some(bad) = inequalities.iter().find(|q| q.normal.len() != dim) {
        return Err(Error::InvalidOperands(format!(
            "inequality normal {:?} has wrong length for dimension {dim}",
            bad.normal
        )));
    }
    let normals: Vec<Vec<Rat>> = inequalities.iter().map(Inequality::normal_rat).collect();
    let bounded = (0..dim).all(|j| in_cone(&normals, &unit(dim, j, 1)) && in_cone(&normals, &unit(dim, j, -1)));
    let vertices = enumerate_vertices(dim, &inequalities);
    let shape = if vertices.is_empty() {
        if dim == 0 {
            if inequalities.iter().all(|q| !q.offset.is_negative()) {
                Shape::Bounded
            } else {
                Shape::Empty
            }
        } else if bounded || !system_feasible(dim, &inequalities) {
            Shape::Empty
        } else {
            Shape::Unbounded
        }
    } else if bounded {
        Shape::Bounded
    } else {
        Shape::Unbounded
    };
    let vertices = if dim == 0 && shape == Shape::Bounded {
        vec![Vec::new()]
    } else {
        vertices
    };
    let affine_dim = match shape {
        Shape::Empty => None,
        Shape::Bounded => Some(affine_rank(&vertices)),
        Shape::Unbounded => None,
    };
    Ok(LatticePolytope {
        dim,
        inequalities,
        vertices,
        shape,
        affine_dim,
    })
}

fn system_feasible(dim: usize, ineqs: &[Inequality]) -> bool {
    // u = u+ - u-, slack s >= 0:  <n, u+> - <n, u-> - s = -offset
    let a: Vec<Vec<Rat>> = ineqs
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let mut row = q.normal_rat();
            row.extend(q.normal_rat().into_iter().map(|x| -x));
            row.extend((0..ineqs.len()).map(|k| {
                if k == i {
                    -Rat::one()
                } else {
                    Rat::zero()
                }
            }));
            row
        })
        .collect();
    let b: Vec<Rat> = ineqs.iter().map(|q| -q.offset.clone()).collect();
    let _ = dim;
    feasible(&a, &b)
}

fn affine_rank(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn enumerate_vertices(dim: usize, ineqs: &[Inequality]) -> Vec<Vec<Rat>> {
    if dim == 0 {
        return Vec::new();
    }
    let mut found: Vec<Vec<Rat>> = Vec::new();
    for subset in subsets(ineqs.len(), dim) {
        let a: Vec<Vec<Rat>> = subset.iter().map(|&i| ineqs[i].normal_rat()).collect();
        let b: Vec<Rat> = subset.iter().map(|&i| -ineqs[i].offset.clone()).collect();
        let Some(u) = solve(&a, &b) else { continue };
        if ineqs.iter().all(|q| !q.slack(&u).is_negative()) && !found.contains(&u) {
            found.push(u);
        }
    }
    found.sort();
    found
}

impl LatticePolytope {
    pub fn empty(dim: usize) -> Self {
        LatticePolytope {
            dim,
            inequalities: Vec::new(),
            vertices: Vec::new(),
            shape: Shape::Empty,
            affine_dim: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_empty(&self) -> bool {
        self.shape == Shape::Empty
    }

    /// Affine dimension of a bounded nonempty polytope.
    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == Some(self.dim)
    }

    pub fn contains(&self, u: &[Rat]) -> bool {
        !self.is_empty() && self.inequalities.iter().all(|q| !q.slack(u).is_negative())
    }

    fn require_bounded(&self) -> Result<()> {
        if self.shape == Shape::Unbounded {
            Err(Error::UnboundedPolytope)
        } else {
            Ok(())
        }
    }

    /// Translate by `shift`: offsets change by `-<shift, normal>`.
    pub fn translate(&self, shift: &[Rat]) -> Result<LatticePolytope> {
        let ineqs = self
            .inequalities
            .iter()
            .map(|q| {
                let mut off = q.offset.clone();
                for (n, s) in q.normal.iter().zip(shift) {
                    off -= s * Rat::from_integer((*n).into());
                }
                Inequality::new(q.normal.clone(), off)
            })
            .collect();
        build_polytope(self.dim, ineqs)
    }

    pub fn scaled(&self, m: &Rat) -> Result<LatticePolytope> {
        let ineqs = self
            .inequalities
            .iter()
            .map(|q| Inequality::new(q.normal.clone(), &q.offset * m))
            .collect();
        build_polytope(self.dim, ineqs)
    }

    /// Integer inequalities `<u, n> * q + c >= 0` describing `m P`.
    fn integer_system(&self, m: i64) -> Vec<(Vec<i128>, i128)> {
        self.inequalities
            .iter()
            .map(|q| {
                let off = &q.offset * Rat::from_integer(m.into());
                let den = off.denom().clone();
                let c = off.numer().clone();
                let den = den.to_i128().expect("denominator fits i128");
                (
                    q.normal.iter().map(|&x| x as i128 * den).collect(),
                    c.to_i128().expect("offset fits i128"),
                )
            })
            .collect()
    }

    fn scaled_box(&self, m: i64, budget: CountBudget) -> Result<Vec<(i64, i64)>> {
        let mr = Rat::from_integer(m.into());
        let bounds: Vec<(i64, i64)> = (0..self.dim)
            .map(|j| {
                let lo = self.vertices.iter().map(|v| &v[j] * &mr).min().unwrap();
                let hi = self.vertices.iter().map(|v| &v[j] * &mr).max().unwrap();
                (ceil_i64(&lo), floor_i64(&hi))
            })
            .collect();
        let mut total: u128 = 1;
        for (lo, hi) in &bounds {
            let side = if hi >= lo { (hi - lo + 1) as u128 } else { 0 };
            total = total.saturating_mul(side);
        }
        if total > budget.max_points as u128 {
            return Err(Error::BudgetExceeded(format!(
                "bounding box of {total} candidate points exceeds the cap {}",
                budget.max_points
            )));
        }
        Ok(bounds)
    }

    /// Visits every prefix `(u_1..u_{d-1})` of the box together with the
    /// feasible interval of the last coordinate.
    fn scan(
        &self,
        m: i64,
        budget: CountBudget,
        mut visit: impl FnMut(&[i64], i64, i64),
    ) -> Result<()> {
        self.require_bounded()?;
        if self.is_empty() {
            return Ok(());
        }
        if self.dim == 0 {
            visit(&[], 0, 0);
            return Ok(());
        }
        let bounds = self.scaled_box(m, budget)?;
        let system = self.integer_system(m);
        let d = self.dim;
        let mut prefix = vec![0i64; d - 1];
        fn rec(
            depth: usize,
            d: usize,
            bounds: &[(i64, i64)],
            system: &[(Vec<i128>, i128)],
            prefix: &mut Vec<i64>,
            visit: &mut dyn FnMut(&[i64], i64, i64),
        ) {
            if depth == d - 1 {
                let (mut lo, mut hi) = (bounds[d - 1].0 as i128, bounds[d - 1].1 as i128);
                for (n, c) in system {
                    let partial: i128 = prefix.iter().zip(n).map(|(&x, &a)| x as i128 * a).sum::<i128>() + c;
                    let a = n[d - 1];
                    if a == 0 {
                        if partial < 0 {
                            return;
                        }
                    } else if a > 0 {
                        // a t >= -partial
                        lo = lo.max((-partial).div_euclid(a) + i128::from((-partial).rem_euclid(a) != 0));
                    } else {
                        // a t >= -partial  <=>  t <= partial / |a|
                        hi = hi.min(partial.div_euclid(-a));
                    }
                }
                if lo <= hi {
                    visit(prefix, lo as i64, hi as i64);
                }
                return;
            }
            for x in bounds[depth].0..=bounds[depth].1 {
                prefix[depth] = x;
                rec(depth + 1, d, bounds, system, prefix, visit);
            }
        }
        rec(0, d, &bounds, &system, &mut prefix, &mut visit);
        Ok(())
    }

    /// `#(mP ∩ Z^d)`.
    pub fn lattice_point_count(&self, m: i64, budget: CountBudget) -> Result<u64> {
        let mut count = 0u64;
        self.scan(m, budget, |_, lo, hi| count += (hi - lo + 1) as u64)?;
        Ok(count)
    }

    pub fn lattice_points(&self, m: i64, budget: CountBudget) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        self.scan(m, budget, |prefix, lo, hi| {
            for t in lo..=hi {
                let mut p = prefix.to_vec();
                p.push(t);
                out.push(p);
            }
        })?;
        Ok(out)
    }

    /// Exact Euclidean volume; zero for empty or lower-dimensional polytopes.
    pub fn euclidean_volume(&self) -> Result<Rat> {
        self.require_bounded()?;
        if !self.is_full_dimensional() {
            return Ok(Rat::zero());
        }
        if self.dim == 0 {
            return Ok(Rat::one());
        }
        let tight: Vec<Vec<bool>> = self
            .inequalities
            .iter()
            .map(|q| self.vertices.iter().map(|v| q.slack(v).is_zero()).collect())
            .collect();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let simplices = triangulate(&self.vertices, &tight, &all, self.dim);
        let mut total = Rat::zero();
        for s in simplices {
            let base = &self.vertices[s[0]];
            let m: Vec<Vec<Rat>> = s[1..]
                .iter()
                .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            total += det(&m).abs();
        }
        Ok(total / factorial(self.dim as u32))
    }

    /// `d! * euclidean_volume`.
    pub fn normalized_volume(&self) -> Result<Rat> {
        Ok(self.euclidean_volume()? * factorial(self.dim as u32))
    }

    /// Intersection with the hyperplane `<u, normal> = -offset`, expressed in
    /// coordinates of the hyperplane's lattice `normal^perp ∩ Z^d`.
    pub fn face(&self, normal: &[i64], offset: &Rat) -> Result<LatticePolytope> {
        self.require_bounded()?;
        if normal.len() != self.dim || normal.iter().all(|&x| x == 0) || self.dim == 0 {
            return Err(Error::InvalidOperands(format!("bad face normal {normal:?}")));
        }
        let probe = Inequality::new(normal.to_vec(), offset.clone());
        if self.is_empty() {
            return Ok(LatticePolytope::empty(self.dim - 1));
        }
        let slacks: Vec<Rat> = self.vertices.iter().map(|v| probe.slack(v)).collect();
        let min = slacks.iter().min().unwrap();
        let max = slacks.iter().max().unwrap();
        if min.is_negative() && max.is_positive() {
            return Err(Error::NotAFace(format!(
                "hyperplane {normal:?} = {} cuts through the interior",
                -offset
            )));
        }
        if min.is_positive() || max.is_negative() {
            return Ok(LatticePolytope::empty(self.dim - 1));
        }
        let (g, u, _inv) = unimodular_completion(normal);
        let level = -offset / Rat::from_integer(g.into());
        let d = self.dim;
        let mut ineqs = Vec::new();
        for q in &self.inequalities {
            // w = U^T n_i
            let w: Vec<i64> = (0..d)
                .map(|j| (0..d).map(|i| u[i][j] * q.normal[i]).sum())
                .collect();
            let off = &q.offset + &level * Rat::from_integer(w[0].into());
            if w[1..].iter().all(|&x| x == 0) {
                if off.is_negative() {
                    return Ok(LatticePolytope::empty(d - 1));
                }
                continue;
            }
            ineqs.push(Inequality::new(w[1..].to_vec(), off));
        }
        build_polytope(d - 1, ineqs)
    }

    /// Convex hull of `mP ∩ Z^d`.
    pub fn hull_of_lattice_points(&self, m: i64, budget: CountBudget) -> Result<LatticePolytope> {
        let mut candidates: Vec<Vec<Rat>> = Vec::new();
        // Only the two ends of each line in the last coordinate can be extreme.
        self.scan(m, budget, |prefix, lo, hi| {
            for t in [lo, hi] {
                let mut p: Vec<Rat> = prefix.iter().map(|&x| Rat::from_integer(x.into())).collect();
                p.push(Rat::from_integer(t.into()));
                candidates.push(p);
            }
        })?;
        polytope_from_points(self.dim, &candidates)
    }

    /// Whether the recession cone is the nonnegative orthant, as for Newton
    /// polyhedra of monomial ideals.
    pub fn has_orthant_recession(&self) -> bool {
        if self.shape != Shape::Unbounded {
            return false;
        }
        let normals: Vec<Vec<Rat>> = self.inequalities.iter().map(Inequality::normal_rat).collect();
        let d = self.dim;
        (0..d).all(|j| {
            let e = unit(d, j, 1);
            let in_recession = normals.iter().all(|n| !crate::linalg::dot(n, &e).is_negative());
            in_recession && in_cone(&normals, &e)
        })
    }
}

fn triangulate(
    verts: &[Vec<Rat>],
    tight: &[Vec<bool>],
    face: &[usize],
    k: usize,
) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for row in tight {
        if row[apex] {
            continue;
        }
        let sub: Vec<usize> = face.iter().copied().filter(|&v| row[v]).collect();
        if sub.len() < k || seen.contains(&sub) {
            continue;
        }
        let pts: Vec<Vec<Rat>> = sub.iter().map(|&v| verts[v].clone()).collect();
        if affine_rank(&pts) != k - 1 {
            continue;
        }
        seen.insert(sub.clone());
        for mut s in triangulate(verts, tight, &sub, k - 1) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

pub fn polytope_from_points(dim: usize, points: &[Vec<Rat>]) -> Result<LatticePolytope> {
    match convex_hull(points, dim)? {
        None => Ok(LatticePolytope::empty(dim)),
        Some(h) => {
            let mut vertices = h.vertices;
            vertices.sort();
            Ok(LatticePolytope {
                dim,
                inequalities: h.inequalities,
                vertices,
                shape: Shape::Bounded,
                affine_dim: Some(h.affine_dim),
            })
        }
    }
}

/// Newton polyhedron `conv(points) + R^d_{>=0}`.
pub fn newton_polyhedron(dim: usize, points: &[Vec<Rat>]) -> Result<LatticePolytope> {
    if points.is_empty() {
        return Ok(LatticePolytope::empty(dim));
    }
    // Hull of the points pushed to the faces of a large box, then drop the
    // box facets u_j <= cap.
    let cap = points
        .iter()
        .flatten()
        .max()
        .map(|x| x.floor() + Rat::one())
        .unwrap()
        .max(Rat::one());
    let mut extended = Vec::new();
    for p in points {
        for mask in 0..(1u32 << dim) {
            extended.push(
                p.iter()
                    .enumerate()
                    .map(|(j, x)| if mask & (1 << j) != 0 { cap.clone() } else { x.clone() })
                    .collect::<Vec<Rat>>(),
            );
        }
    }
    let hull = convex_hull(&extended, dim)?.expect("nonempty");
    let ineqs: Vec<Inequality> = hull
        .inequalities
        .into_iter()
        .filter(|q| {
            let is_box = q.normal.iter().filter(|&&x| x != 0).count() == 1
                && q.normal.contains(&-1)
                && q.offset == cap;
            !is_box
        })
        .collect();
    build_polytope(dim, ineqs)
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    if p.dim != q.dim {
        return Err(Error::InvalidOperands("ambient dimensions differ".into()));
    }
    if p.is_empty() || q.is_empty() {
        return Ok(LatticePolytope::empty(p.dim));
    }
    let sums: Vec<Vec<Rat>> = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
        .collect();
    match (p.shape, q.shape) {
        (Shape::Bounded, Shape::Bounded) => polytope_from_points(p.dim, &sums),
        (Shape::Unbounded, Shape::Unbounded)
            if p.has_orthant_recession() && q.has_orthant_recession() =>
        {
            newton_polyhedron(p.dim, &sums)
        }
        _ => Err(Error::InvalidOperands(
            "Minkowski sum needs two bounded polytopes or two Newton regions".into(),
        )),
    }
}

/// Convenience: `{u : <u, n_i> >= -a_i}` from integer rows and rational offsets.
pub fn polytope_from_rows(rows: &[(Vec<i64>, Rat)]) -> Result<LatticePolytope> {
    let dim = rows.first().map_or(0, |r| r.0.len());
    build_polytope(
        dim,
        rows.iter()
            .map(|(n, a)| Inequality::new(n.clone(), a.clone()))
            .collect(),
    )
}

pub fn lattice_denominator(p: &LatticePolytope) -> BigInt {
    lcm_of_denominators(p.vertices.iter().flatten())
}
