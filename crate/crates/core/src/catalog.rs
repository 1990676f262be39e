//! The model catalog: toric varieties, the blow-up of projective space at a
//! point, surfaces with a listed curve configuration, the projective bundle
//! over an abelian surface with irrational volume, split ruled surfaces over
//! an elliptic curve, and abelian surfaces themselves.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cone::PolyCone;
use crate::error::{Error, Result};
use crate::linalg::{bilinear, rank, signature, solve};
use crate::polytope::{build_polytope, Inequality, LatticePolytope};
use crate::scalar::{int, parse_rat, Rat};

/// A point of the Néron–Severi space in the model's fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NSClass {
    coords: Vec<Rat>,
}

impl NSClass {
    pub fn new(coords: Vec<Rat>) -> Self {
        NSClass { coords }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        NSClass::new(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn zero(len: usize) -> Self {
        NSClass::new(vec![Rat::zero(); len])
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rat::is_integer)
    }

    pub fn add(&self, other: &NSClass) -> NSClass {
        NSClass::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &NSClass) -> NSClass {
        NSClass::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rat) -> NSClass {
        NSClass::new(self.coords.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> NSClass {
        self.scale(&-Rat::one())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &NSClass, k: &Rat) -> NSClass {
        self.add(&other.scale(k))
    }
}

impl fmt::Display for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for NSClass {
    type Err = Error;

    /// Comma-separated rationals, e.g. `2,-1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidScalar("empty class".into()));
        }
        s.split(',').map(parse_rat).collect::<Result<Vec<_>>>().map(NSClass::new)
    }
}

fn rat_matrix(rows: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn unit_vec(d: usize, j: usize, sign: i64) -> Vec<Rat> {
    (0..d).map(|i| if i == j { int(sign) } else { Rat::zero() }).collect()
}

/// Complete toric variety given by the rays of its fan. Divisors are
/// ray-coefficient vectors `a`, with polytope `{u : <u, v_i> >= -a_i}`.
#[derive(Clone, Debug)]
pub struct ToricModel {
    dim: usize,
    rays: Vec<Vec<i64>>,
    basis: Vec<Vec<Rat>>,
    ample: NSClass,
    // Inverse of [basis | principal]: divisor -> (class, u).
    inverse: Vec<Vec<Rat>>,
}

impl ToricModel {
    pub fn new(
        dim: usize,
        rays: Vec<Vec<i64>>,
        basis: Vec<Vec<Rat>>,
        ample: Option<NSClass>,
    ) -> Result<Self> {
        if dim == 0 || dim > crate::polytope::MAX_DIMENSION {
            return Err(Error::InvalidModel(format!("toric dimension {dim} is outside 1..=4")));
        }
        let n = rays.len();
        for r in &rays {
            if r.len() != dim {
                return Err(Error::InvalidModel(format!("ray {r:?} does not have {dim} entries")));
            }
            let g = r.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g != 1 {
                return Err(Error::InvalidModel(format!("ray {r:?} is not primitive")));
            }
        }
        let ray_rows = rat_matrix(&rays);
        if rank(&ray_rows) < dim {
            return Err(Error::InvalidModel("rays do not span the ambient space".into()));
        }
        let cone = PolyCone::new(dim, ray_rows.clone());
        let complete = (0..dim).all(|j| {
            cone.contains(&unit_vec(dim, j, 1)) && cone.contains(&unit_vec(dim, j, -1))
        });
        if !complete {
            return Err(Error::InvalidModel("fan is not complete: rays do not positively span".into()));
        }
        let rho = n - dim;
        if basis.len() != rho {
            return Err(Error::InvalidModel(format!(
                "expected {rho} basis divisors (rays minus dimension), found {}",
                basis.len()
            )));
        }
        if let Some(b) = basis.iter().find(|b| b.len() != n) {
            return Err(Error::InvalidModel(format!(
                "basis divisor has {} coefficients, expected {n}",
                b.len()
            )));
        }
        // Columns: basis divisors, then the principal divisors of e_1..e_d.
        let m: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
                row.extend(ray_rows[i].iter().cloned());
                row
            })
            .collect();
        let mut inverse = vec![vec![Rat::zero(); n]; n];
        for j in 0..n {
            let e: Vec<Rat> = unit_vec(n, j, 1);
            let col = solve(&m, &e).ok_or_else(|| {
                Error::InvalidModel("basis divisors do not descend to a basis of the class group".into())
            })?;
            for i in 0..n {
                inverse[i][j] = col[i].clone();
            }
        }
        let mut model = ToricModel {
            dim,
            rays,
            basis,
            ample: NSClass::zero(rho),
            inverse,
        };
        model.ample = match ample {
            Some(a) => {
                if a.len() != rho {
                    return Err(Error::InvalidModel(format!("ample class needs {rho} coordinates")));
                }
                if !model.is_ample_witness(&a) {
                    return Err(Error::InvalidModel(format!("class {a} is not in the interior of the nef cone")));
                }
                a
            }
            None => model.find_ample()?,
        };
        Ok(model)
    }

    /// `a` is nef and stays nef after moving `1/8` along each coordinate.
    fn is_ample_witness(&self, a: &NSClass) -> bool {
        let step = Rat::new(1.into(), 8.into());
        let rho = a.len();
        self.is_nef(a)
            && (0..rho).all(|k| {
                [1, -1].iter().all(|&s| {
                    let e = NSClass::new(unit_vec(rho, k, s));
                    self.is_nef(&a.add_scaled(&e, &step))
                })
            })
    }

    fn find_ample(&self) -> Result<NSClass> {
        let rho = self.rho();
        let mut candidates: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..rho {
            candidates = candidates
                .into_iter()
                .flat_map(|c| {
                    (-4..=4).map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        candidates.sort_by_key(|c| (c.iter().map(|x| x.abs()).sum::<i64>(), c.clone()));
        candidates
            .into_iter()
            .map(|c| NSClass::from_ints(&c))
            .find(|c| self.is_ample_witness(c))
            .ok_or_else(|| Error::InvalidModel("no ample class found in a small box; supply one".into()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn rho(&self) -> usize {
        self.rays.len() - self.dim
    }

    pub fn ample(&self) -> &NSClass {
        &self.ample
    }

    pub fn class_of_divisor(&self, divisor: &[Rat]) -> NSClass {
        let rho = self.rho();
        NSClass::new(
            (0..rho)
                .map(|k| self.inverse[k].iter().zip(divisor).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// The lift `sum_k c_k B_k` in the fixed basis divisors.
    pub fn divisor_of_class(&self, class: &NSClass) -> Vec<Rat> {
        (0..self.rays.len())
            .map(|i| {
                self.basis
                    .iter()
                    .zip(class.coords())
                    .map(|(b, c)| &b[i] * c)
                    .sum()
            })
            .collect()
    }

    /// `div(chi^u) = sum_i <u, v_i> D_i`.
    pub fn principal_divisor(&self, u: &[i64]) -> Vec<Rat> {
        self.rays
            .iter()
            .map(|v| int(v.iter().zip(u).map(|(a, b)| a * b).sum()))
            .collect()
    }

    pub fn polytope(&self, divisor: &[Rat]) -> Result<LatticePolytope> {
        let ineqs = self
            .rays
            .iter()
            .zip(divisor)
            .map(|(v, a)| Inequality::new(v.clone(), a.clone()))
            .collect();
        build_polytope(self.dim, ineqs)
    }

    pub fn polytope_of_class(&self, class: &NSClass) -> Result<LatticePolytope> {
        self.polytope(&self.divisor_of_class(class))
    }

    /// Every ray's inequality is attained on `P_D`, i.e. the support function
    /// of `P_D` reproduces `-a_i`.
    pub fn is_nef(&self, class: &NSClass) -> bool {
        let Ok(p) = self.polytope_of_class(class) else {
            return false;
        };
        !p.is_empty()
            && p.inequalities()
                .iter()
                .all(|q| p.vertices().iter().any(|v| q.slack(v).is_zero()))
    }

    pub fn is_psef(&self, class: &NSClass) -> bool {
        self.polytope_of_class(class).is_ok_and(|p| !p.is_empty())
    }

    pub fn is_big(&self, class: &NSClass) -> bool {
        self.polytope_of_class(class)
            .is_ok_and(|p| p.is_full_dimensional())
    }

    /// Whether `cone` (ray indices) is a smooth cone: its rays extend to a
    /// lattice basis.
    pub fn is_smooth_cone(&self, cone: &[usize]) -> bool {
        if cone.len() != self.dim || cone.iter().any(|&i| i >= self.rays.len()) {
            return false;
        }
        let m: Vec<Vec<Rat>> = cone
            .iter()
            .map(|&i| self.rays[i].iter().map(|&x| int(x)).collect())
            .collect();
        crate::linalg::det(&m).abs() == Rat::one()
    }
}

/// `Bl_p(P^d)` in the basis `(h, e)`; the class `x h - y e` has coordinates
/// `(x, -y)`.
#[derive(Clone, Debug)]
pub struct BlowupPdModel {
    d: usize,
    toric: ToricModel,
}

impl BlowupPdModel {
    pub fn new(d: usize) -> Result<Self> {
        if !(2..=4).contains(&d) {
            return Err(Error::InvalidModel(format!("blow-up dimension {d} is outside 2..=4")));
        }
        let mut rays: Vec<Vec<i64>> = (0..d).map(|j| (0..d).map(|i| i64::from(i == j)).collect()).collect();
        rays.push(vec![-1; d]);
        rays.push(vec![1; d]);
        let n = d + 2;
        let h: Vec<Rat> = (0..n).map(|i| int(i64::from(i == d))).collect();
        let e: Vec<Rat> = (0..n).map(|i| int(i64::from(i == d + 1))).collect();
        let toric = ToricModel::new(d, rays, vec![h, e], Some(NSClass::from_ints(&[2, -1])))?;
        Ok(BlowupPdModel { d, toric })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn toric(&self) -> &ToricModel {
        &self.toric
    }

    /// Index of the ray whose divisor is the exceptional divisor.
    pub fn exceptional_ray(&self) -> usize {
        self.d + 1
    }

    /// `(x, y)` with the class equal to `x h - y e`.
    pub fn xy(class: &NSClass) -> (Rat, Rat) {
        (class.coords()[0].clone(), -class.coords()[1].clone())
    }

    pub fn is_nef(&self, class: &NSClass) -> bool {
        let (x, y) = Self::xy(class);
        !y.is_negative() && y <= x
    }

    pub fn is_psef(&self, class: &NSClass) -> bool {
        let (x, y) = Self::xy(class);
        !x.is_negative() && y <= x
    }

    pub fn is_big(&self, class: &NSClass) -> bool {
        let (x, y) = Self::xy(class);
        x.is_positive() && y < x
    }
}

/// Surface with intersection form `gram` and a finite list of negative curves.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    gram: Vec<Vec<Rat>>,
    curves: Vec<NSClass>,
    ample: NSClass,
}

impl SurfaceModel {
    pub fn new(gram: Vec<Vec<Rat>>, curves: Vec<NSClass>, ample: NSClass) -> Result<Self> {
        let rho = gram.len();
        if rho == 0 || gram.iter().any(|r| r.len() != rho) {
            return Err(Error::InvalidModel("gram matrix must be square and nonempty".into()));
        }
        for i in 0..rho {
            for j in 0..rho {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidModel(format!("gram matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        let (p, n, z) = signature(&gram);
        if (p, n, z) != (1, rho - 1, 0) {
            return Err(Error::InvalidModel(format!(
                "gram signature is ({p}, {n}, {z}), expected (1, {}, 0)",
                rho - 1
            )));
        }
        let model = SurfaceModel { gram, curves, ample };
        if model.ample.len() != rho {
            return Err(Error::InvalidModel(format!("ample class needs {rho} coordinates")));
        }
        if !model.q(&model.ample).is_positive() {
            return Err(Error::InvalidModel("ample reference has nonpositive square".into()));
        }
        for (k, c) in model.curves.iter().enumerate() {
            if c.len() != rho {
                return Err(Error::InvalidModel(format!("curve {k} needs {rho} coordinates")));
            }
            if !model.q(c).is_negative() {
                return Err(Error::InvalidModel(format!("curve {k} has nonnegative self-intersection")));
            }
            if !model.pair(&model.ample, c).is_positive() {
                return Err(Error::InvalidModel(format!("ample reference does not meet curve {k} positively")));
            }
        }
        Ok(model)
    }

    pub fn rho(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    pub fn curves(&self) -> &[NSClass] {
        &self.curves
    }

    pub fn ample(&self) -> &NSClass {
        &self.ample
    }

    pub fn pair(&self, x: &NSClass, y: &NSClass) -> Rat {
        bilinear(&self.gram, x.coords(), y.coords())
    }

    pub fn q(&self, x: &NSClass) -> Rat {
        self.pair(x, x)
    }

    /// Nonnegative on listed curves, nonnegative square, and on the ample
    /// side of the light cone.
    pub fn is_nef(&self, x: &NSClass) -> bool {
        self.curves.iter().all(|c| !self.pair(x, c).is_negative())
            && !self.q(x).is_negative()
            && !self.pair(x, &self.ample).is_negative()
    }
}

fn lorentz_check(gram: &[Vec<Rat>]) -> Result<()> {
    if gram.len() != 3 || gram.iter().any(|r| r.len() != 3) {
        return Err(Error::InvalidModel("abelian surface gram must be 3x3".into()));
    }
    for i in 0..3 {
        for j in 0..3 {
            if gram[i][j] != gram[j][i] {
                return Err(Error::InvalidModel("gram matrix is not symmetric".into()));
            }
            if !gram[i][j].is_integer() {
                return Err(Error::InvalidModel("gram matrix must be integral".into()));
            }
        }
    }
    if signature(gram) != (1, 2, 0) {
        return Err(Error::InvalidModel("gram signature must be (1, 2)".into()));
    }
    Ok(())
}

/// Abelian surface: nef = psef = closure of the positive cone component
/// containing `ample`.
#[derive(Clone, Debug)]
pub struct AbelianModel {
    gram: Vec<Vec<Rat>>,
    ample: NSClass,
}

impl AbelianModel {
    pub fn new(gram: Vec<Vec<Rat>>, ample: NSClass) -> Result<Self> {
        lorentz_check(&gram)?;
        let m = AbelianModel { gram, ample };
        if m.ample.len() != 3 || !m.q(&m.ample).is_positive() {
            return Err(Error::InvalidModel("ample class must have positive square".into()));
        }
        Ok(m)
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    pub fn ample(&self) -> &NSClass {
        &self.ample
    }

    pub fn pair(&self, x: &NSClass, y: &NSClass) -> Rat {
        bilinear(&self.gram, x.coords(), y.coords())
    }

    pub fn q(&self, x: &NSClass) -> Rat {
        self.pair(x, x)
    }

    pub fn is_nef(&self, x: &NSClass) -> bool {
        !self.q(x).is_negative() && !self.pair(x, &self.ample).is_negative()
    }

    pub fn is_ample(&self, x: &NSClass) -> bool {
        self.q(x).is_positive() && self.pair(x, &self.ample).is_positive()
    }
}

/// `P(O_V(A) + O_V(B))` over an abelian surface `V`. Classes have
/// coordinates `(t, c)`: `t` times the Serre class plus the pullback of `c`.
#[derive(Clone, Debug)]
pub struct CutkoskyModel {
    surface: AbelianModel,
    a: NSClass,
    b: NSClass,
}

impl CutkoskyModel {
    pub fn new(gram: Vec<Vec<Rat>>, a: NSClass, b: NSClass) -> Result<Self> {
        let surface = AbelianModel::new(gram, a.clone())?;
        if !a.is_integral() || !b.is_integral() || b.len() != 3 {
            return Err(Error::InvalidModel("a and b must be integral classes with 3 coordinates".into()));
        }
        if surface.is_nef(&b) {
            return Err(Error::InvalidModel(format!("b = {b} is nef")));
        }
        Ok(CutkoskyModel { surface, a, b })
    }

    pub fn surface(&self) -> &AbelianModel {
        &self.surface
    }

    pub fn a(&self) -> &NSClass {
        &self.a
    }

    pub fn b(&self) -> &NSClass {
        &self.b
    }

    /// Accepts `(t, c1, c2, c3)` or the shorthand `(c1, c2, c3)` for `t = 1`.
    pub fn split_class(class: &NSClass) -> Result<(Rat, NSClass)> {
        match class.len() {
            3 => Ok((Rat::one(), class.clone())),
            4 => Ok((class.coords()[0].clone(), NSClass::new(class.coords()[1..].to_vec()))),
            n => Err(Error::UnsupportedClass(format!("expected 3 or 4 coordinates, found {n}"))),
        }
    }
}

/// Ruled surface `P(O(d1 p) + O(d2 p))` over an elliptic curve. Classes are
/// `(x, y)` for `x` times the Serre class plus `y` fibres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRuledModel {
    pub d1: i64,
    pub d2: i64,
}

impl SplitRuledModel {
    pub fn new(d1: i64, d2: i64) -> Self {
        SplitRuledModel { d1, d2 }
    }

    /// Degrees of the summands of `Sym^x E (y p)` range over
    /// `L(s) = d2 x + y + (d1 - d2) s` for `s` in `[0, x]`; returns the two ends.
    pub fn end_degrees(&self, class: &NSClass) -> (Rat, Rat) {
        let x = &class.coords()[0];
        let y = &class.coords()[1];
        (x * int(self.d2) + y, x * int(self.d1) + y)
    }

    pub fn is_nef(&self, class: &NSClass) -> bool {
        let (l0, lx) = self.end_degrees(class);
        !class.coords()[0].is_negative() && !l0.is_negative() && !lx.is_negative()
    }

    pub fn is_psef(&self, class: &NSClass) -> bool {
        let (l0, lx) = self.end_degrees(class);
        !class.coords()[0].is_negative() && (!l0.is_negative() || !lx.is_negative())
    }
}

#[derive(Clone, Debug)]
pub enum Model {
    Toric(ToricModel),
    Blowup(BlowupPdModel),
    Surface(SurfaceModel),
    Cutkosky(CutkoskyModel),
    SplitRuled(SplitRuledModel),
    Abelian(AbelianModel),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Toric(_) => "toric",
            Model::Blowup(_) => "blowup",
            Model::Surface(_) => "surface",
            Model::Cutkosky(_) => "cutkosky",
            Model::SplitRuled(_) => "split_ruled",
            Model::Abelian(_) => "abelian",
        }
    }

    /// Dimension of the variety.
    pub fn dimension(&self) -> usize {
        match self {
            Model::Toric(t) => t.dim(),
            Model::Blowup(b) => b.dim(),
            Model::Cutkosky(_) => 3,
            Model::Surface(_) | Model::SplitRuled(_) | Model::Abelian(_) => 2,
        }
    }

    /// Picard number.
    pub fn rho(&self) -> usize {
        match self {
            Model::Toric(t) => t.rho(),
            Model::Blowup(_) | Model::SplitRuled(_) => 2,
            Model::Surface(s) => s.rho(),
            Model::Cutkosky(_) => 4,
            Model::Abelian(_) => 3,
        }
    }

    pub fn check_class(&self, class: &NSClass) -> Result<()> {
        let ok = match self {
            Model::Cutkosky(_) => class.len() == 3 || class.len() == 4,
            _ => class.len() == self.rho(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedClass(format!(
                "class {class} has {} coordinates but the {} model has Picard number {}",
                class.len(),
                self.kind(),
                self.rho()
            )))
        }
    }

    pub fn nef_test(&self, class: &NSClass) -> Result<bool> {
        self.check_class(class)?;
        Ok(match self {
            Model::Toric(t) => t.is_nef(class),
            Model::Blowup(b) => b.is_nef(class),
            Model::Surface(s) => s.is_nef(class),
            Model::Abelian(a) => a.is_nef(class),
            Model::SplitRuled(r) => r.is_nef(class),
            Model::Cutkosky(c) => {
                if class.len() != 3 {
                    return Err(Error::UnsupportedClass(
                        "nef test is available for classes on the abelian surface (3 coordinates)".into(),
                    ));
                }
                c.surface().is_nef(class)
            }
        })
    }

    pub fn psef_test(&self, class: &NSClass) -> Result<bool> {
        self.check_class(class)?;
        Ok(match self {
            Model::Toric(t) => t.is_psef(class),
            Model::Blowup(b) => b.is_psef(class),
            Model::Surface(s) => match crate::engine::zariski(s, class) {
                Ok(_) => true,
                Err(Error::NotPseudoeffective(_)) => false,
                Err(e) => return Err(e),
            },
            Model::Abelian(_) | Model::SplitRuled(_) => return self.nef_or_psef(class),
            Model::Cutkosky(_) => return self.nef_test(class),
        })
    }

    fn nef_or_psef(&self, class: &NSClass) -> Result<bool> {
        Ok(match self {
            Model::Abelian(a) => a.is_nef(class),
            Model::SplitRuled(r) => r.is_psef(class),
            _ => unreachable!(),
        })
    }

    /// A fixed ample class, used for perturbations.
    pub fn ample(&self) -> NSClass {
        match self {
            Model::Toric(t) => t.ample().clone(),
            Model::Blowup(b) => b.toric().ample().clone(),
            Model::Surface(s) => s.ample().clone(),
            Model::Abelian(a) => a.ample().clone(),
            Model::Cutkosky(c) => {
                let mut v = vec![Rat::one()];
                v.extend(c.a().coords().iter().cloned());
                NSClass::new(v)
            }
            Model::SplitRuled(r) => {
                // x = 1, y large enough that both end degrees are positive.
                let y = 1 - r.d1.min(r.d2).min(0);
                NSClass::from_ints(&[1, y])
            }
        }
    }

    pub fn toric(&self) -> Option<&ToricModel> {
        match self {
            Model::Toric(t) => Some(t),
            Model::Blowup(b) => Some(b.toric()),
            _ => None,
        }
    }
}

pub mod presets {
    use super::*;

    pub fn golden_gram() -> Vec<Vec<Rat>> {
        rat_matrix(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]])
    }

    pub fn projective_space(d: usize) -> Result<Model> {
        if d == 0 || d > 4 {
            return Err(Error::InvalidModel(format!("projective dimension {d} is outside 1..=4")));
        }
        let mut rays: Vec<Vec<i64>> = (0..d).map(|j| (0..d).map(|i| i64::from(i == j)).collect()).collect();
        rays.push(vec![-1; d]);
        let h: Vec<Rat> = (0..=d).map(|i| int(i64::from(i == d))).collect();
        Ok(Model::Toric(ToricModel::new(d, rays, vec![h], Some(NSClass::from_ints(&[1])))?))
    }

    pub fn blowup_pd(d: usize) -> Result<Model> {
        Ok(Model::Blowup(BlowupPdModel::new(d)?))
    }

    /// Rays `(1,0), (0,1), (-1,n), (0,-1)`; basis: fibre `D_0` and the
    /// negative section `D_1`.
    pub fn hirzebruch(n: i64) -> Result<Model> {
        if n < 0 {
            return Err(Error::InvalidModel("Hirzebruch index must be nonnegative".into()));
        }
        let rays = vec![vec![1, 0], vec![0, 1], vec![-1, n], vec![0, -1]];
        let fibre = vec![int(1), int(0), int(0), int(0)];
        let section = vec![int(0), int(1), int(0), int(0)];
        Ok(Model::Toric(ToricModel::new(
            2,
            rays,
            vec![fibre, section],
            Some(NSClass::from_ints(&[n + 1, 1])),
        )?))
    }

    pub fn cutkosky(a: [i64; 3], b: [i64; 3]) -> Result<Model> {
        Ok(Model::Cutkosky(CutkoskyModel::new(
            golden_gram(),
            NSClass::from_ints(&a),
            NSClass::from_ints(&b),
        )?))
    }

    pub fn cutkosky_golden() -> Result<Model> {
        cutkosky([1, 1, 0], [1, 2, -1])
    }

    pub fn split_ruled(a: i64) -> Model {
        Model::SplitRuled(SplitRuledModel::new(1 - a, 1))
    }

    /// `Bl_p(P^2)` as a surface: basis `(h, e)`, form `diag(1, -1)`, curve `e`.
    pub fn blowup_surface() -> Result<Model> {
        Ok(Model::Surface(SurfaceModel::new(
            rat_matrix(&[vec![1, 0], vec![0, -1]]),
            vec![NSClass::from_ints(&[0, 1])],
            NSClass::from_ints(&[2, -1]),
        )?))
    }

    pub fn surface(gram: Vec<Vec<Rat>>, curves: Vec<NSClass>, ample: NSClass) -> Result<Model> {
        Ok(Model::Surface(SurfaceModel::new(gram, curves, ample)?))
    }

    pub fn abelian_golden() -> Result<Model> {
        Ok(Model::Abelian(AbelianModel::new(golden_gram(), NSClass::from_ints(&[1, 1, 0]))?))
    }

    fn int_param(name: &str, p: Option<&str>) -> Result<i64> {
        let p = p.ok_or_else(|| Error::Config(format!("preset `{name}` needs a parameter, e.g. `{name}:2`")))?;
        p.trim()
            .parse()
            .map_err(|_| Error::Config(format!("preset `{name}`: bad parameter `{p}`")))
    }

    fn triple(s: &str) -> Result<[i64; 3]> {
        let v: Vec<i64> = s
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Config(format!("bad integer triple `{s}`")))?;
        v.try_into().map_err(|_| Error::Config(format!("expected three integers in `{s}`")))
    }

    /// Looks up a preset by name. Parameters follow a colon, e.g.
    /// `blowup_pd:3`, `hirzebruch:1`, `split_ruled:2`, `cutkosky:1,1,0;1,2,-1`.
    pub fn by_name(spec: &str) -> Result<Model> {
        let spec = spec.trim();
        let (name, param) = match spec.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (spec, None),
        };
        let dim = |p| int_param(name, p).and_then(|d| usize::try_from(d).map_err(|_| Error::Config("negative dimension".into())));
        match name {
            "projective_space" => projective_space(dim(param)?),
            "p1" | "p2" | "p3" | "p4" => projective_space(name[1..].parse().unwrap()),
            "blowup_pd" => blowup_pd(dim(param)?),
            "blowup2" | "blowup3" | "blowup4" => blowup_pd(name[6..].parse().unwrap()),
            "hirzebruch" => hirzebruch(int_param(name, param)?),
            "cutkosky_golden" => cutkosky_golden(),
            "cutkosky" => {
                let p = param.ok_or_else(|| Error::Config("cutkosky needs `a;b`".into()))?;
                let (a, b) = p
                    .split_once(';')
                    .ok_or_else(|| Error::Config("cutkosky parameters are `a1,a2,a3;b1,b2,b3`".into()))?;
                cutkosky(triple(a)?, triple(b)?)
            }
            "split_ruled" => Ok(split_ruled(int_param(name, param)?)),
            "blowup_surface" => blowup_surface(),
            "abelian_golden" => abelian_golden(),
            _ => Err(Error::Config(format!("unknown preset `{name}`"))),
        }
    }

    pub const NAMES: &[&str] = &[
        "projective_space:d",
        "blowup_pd:d",
        "hirzebruch:n",
        "cutkosky_golden",
        "cutkosky:a1,a2,a3;b1,b2,b3",
        "split_ruled:a",
        "blowup_surface",
        "abelian_golden",
    ];
}
