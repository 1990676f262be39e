//! Asymptotic invariants: volume, section counts, Zariski decomposition,
//! asymptotic cohomology, orders of vanishing, restricted volume, augmented
//! base loci, and Fujita sweeps.
//!
//! Closed forms used for the split ruled surface `P(O(d1 p) + O(d2 p))`:
//! `H^0(m(x xi + y f))` splits into the line bundles of degree
//! `d1 i + d2 (mx - i) + my`, `0 <= i <= mx`, on the elliptic curve. With
//! `L(s) = d2 x + y + (d1 - d2) s` the volume is `2 * int_0^x max(0, L(s)) ds`,
//! which is `x (L(0) + L(x))` when both ends are nonnegative and
//! `L_+^2 / |d1 - d2|` when exactly one end `L_+` is positive.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalog::{
    AbelianModel, BlowupPdModel, CutkoskyModel, Model, NSClass, SplitRuledModel, SurfaceModel,
    ToricModel,
};
use crate::error::{Error, Result};
use crate::linalg::{is_negative_definite, solve};
use crate::polytope::CountBudget;
use crate::scalar::{factorial, int, pow, rat, rat_to_f64, QuadExt, RadicalSum, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rat),
    Quad(QuadExt),
    Approx { value: f64, error: f64 },
}

impl Value {
    fn from_quad(q: QuadExt) -> Value {
        match q.as_rat() {
            Some(r) => Value::Exact(r.clone()),
            None => Value::Quad(q),
        }
    }

    pub fn zero() -> Value {
        Value::Exact(Rat::zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rat_to_f64(r),
            Value::Quad(q) => q.to_f64(),
            Value::Approx { value, .. } => *value,
        }
    }

    /// Interval guaranteed to contain the value.
    pub fn f64_bounds(&self) -> (f64, f64) {
        match self {
            Value::Exact(r) => {
                let v = rat_to_f64(r);
                let e = 2.0 * f64::EPSILON * v.abs() + f64::MIN_POSITIVE;
                (v - e, v + e)
            }
            Value::Quad(q) => q.f64_bounds(),
            Value::Approx { value, error } => (value - error, value + error),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Value::Approx { .. })
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Value::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn radical_sum(&self) -> Option<RadicalSum> {
        match self {
            Value::Exact(r) => Some(RadicalSum::from_quad(&QuadExt::from_rat(r.clone()))),
            Value::Quad(q) => Some(RadicalSum::from_quad(q)),
            Value::Approx { .. } => None,
        }
    }

    pub fn scale(&self, k: &Rat) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(r * k),
            Value::Quad(q) => Value::from_quad(q.scale(k)),
            Value::Approx { value, error } => {
                let f = rat_to_f64(k);
                Value::Approx {
                    value: value * f,
                    error: error * f.abs(),
                }
            }
        }
    }

    /// Exact equality of two exact values; `None` when either is approximate.
    pub fn exact_eq(&self, other: &Value) -> Option<bool> {
        Some(self.radical_sum()? == other.radical_sum()?)
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_positive(),
            Value::Quad(q) => q.signum() == Ordering::Greater,
            Value::Approx { value, .. } => *value > 0.0,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Quad(q) => write!(f, "{q}"),
            Value::Approx { value, error } => write!(f, "{value:.6} +/- {error:.2e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    OracleExtrapolated { max_m: i64 },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ClosedForm => write!(f, "closed_form"),
            Provenance::OracleExtrapolated { .. } => write!(f, "oracle_extrapolated"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VolumeResult {
    pub value: Value,
    pub provenance: Provenance,
    pub detail: Option<String>,
    /// `(m, d! h0(mD) / m^d)` for oracle results.
    pub sequence: Vec<(i64, f64)>,
}

impl VolumeResult {
    fn closed(value: Value, detail: impl Into<Option<String>>) -> Self {
        VolumeResult {
            value,
            provenance: Provenance::ClosedForm,
            detail: detail.into(),
            sequence: Vec::new(),
        }
    }
}

/// Counting limits for section counts.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub points: CountBudget,
    pub max_m: i64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            points: CountBudget::default(),
            max_m: 100_000,
        }
    }
}

fn blowup_vol(d: usize, x: &Rat, y: &Rat) -> Rat {
    if x.is_negative() || y > x {
        Rat::zero()
    } else if y.is_negative() {
        pow(x, d as u32)
    } else {
        pow(x, d as u32) - pow(y, d as u32)
    }
}

pub fn toric_vol_divisor(model: &ToricModel, divisor: &[Rat]) -> Result<Rat> {
    let p = model.polytope(divisor)?;
    p.normalized_volume()
}

fn split_ruled_vol(model: &SplitRuledModel, class: &NSClass) -> Rat {
    let x = &class.coords()[0];
    if !x.is_positive() {
        return Rat::zero();
    }
    let (l0, lx) = model.end_degrees(class);
    let slope = int((model.d1 - model.d2).abs());
    match (l0.is_negative(), lx.is_negative()) {
        (false, false) => x * (l0 + lx),
        (true, true) => Rat::zero(),
        (false, true) => &l0 * &l0 / slope,
        (true, false) => &lx * &lx / slope,
    }
}

fn quad(x: &Rat) -> QuadExt {
    QuadExt::from_rat(x.clone())
}

/// Largest `s` in `[0, 1]` with `p0 + s (p1 - p0)` nef, given `p0` nef.
pub fn segment_sigma(surface: &AbelianModel, p0: &NSClass, p1: &NSClass) -> Result<QuadExt> {
    if !surface.is_nef(p0) {
        return Err(Error::UnsupportedClass(format!("segment start {p0} is not nef")));
    }
    if surface.is_nef(p1) {
        return Ok(QuadExt::from_rat(Rat::one()));
    }
    let w = p1.sub(p0);
    let c = surface.q(p0);
    let b = surface.pair(p0, &w) * int(2);
    let a = surface.q(&w);
    let mut roots: Vec<QuadExt> = Vec::new();
    if a.is_zero() {
        if !b.is_zero() {
            roots.push(quad(&(-&c / &b)));
        }
    } else {
        let disc = &b * &b - int(4) * &a * &c;
        if !disc.is_negative() {
            let s = QuadExt::sqrt_of(&disc)?;
            let two_a = int(2) * &a;
            let centre = quad(&(-&b / &two_a));
            let half = s.scale(&(Rat::one() / &two_a));
            roots.push(&centre + &half);
            roots.push(&centre - &half);
        }
    }
    let one = QuadExt::from_rat(Rat::one());
    let mut inside: Vec<QuadExt> = roots
        .into_iter()
        .filter(|r| r.signum() != Ordering::Less && (r - &one).signum() == Ordering::Less)
        .collect();
    inside.sort_by(|x, y| (x - y).signum());
    inside.dedup();
    for r in inside {
        // Q'(r) = b + 2 a r
        let slope = &quad(&b) + &r.scale(&(int(2) * &a));
        let exits = match slope.signum() {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => {
                a.is_negative()
                    || r.as_rat().is_some_and(|s| p0.add_scaled(&w, s).is_zero())
            }
        };
        if exits {
            return Ok(r);
        }
    }
    Err(Error::UnsupportedClass(format!(
        "segment from {p0} to {p1} leaves the nef cone without crossing q = 0"
    )))
}

/// `sigma(c)`: the largest `s` with `(1 - s) a + s b + c` nef.
pub fn sigma(model: &CutkoskyModel, c: &NSClass) -> Result<QuadExt> {
    let p0 = model.a().add(c);
    if !model.surface().is_nef(&p0) {
        return Err(Error::UnsupportedClass(format!("a + c = {p0} is not nef")));
    }
    segment_sigma(model.surface(), &p0, &model.b().add(c))
}

fn cutkosky_vol(model: &CutkoskyModel, class: &NSClass) -> Result<(Value, String)> {
    let (t, c) = CutkoskyModel::split_class(class)?;
    if !t.is_positive() {
        return Ok((Value::zero(), "not big".into()));
    }
    let c = c.scale(&(Rat::one() / &t));
    let s = sigma(model, &c)?;
    let p0 = model.a().add(&c);
    let w = model.b().sub(model.a());
    let surf = model.surface();
    let cc = surf.q(&p0);
    let bb = surf.pair(&p0, &w) * int(2);
    let aa = surf.q(&w);
    // 3 * int_0^s (cc + bb u + aa u^2) du
    let s2 = &s * &s;
    let s3 = &s2 * &s;
    let integral = &(&s.scale(&cc) + &s2.scale(&(bb / int(2)))) + &s3.scale(&(aa / int(3)));
    let value = integral.scale(&(int(3) * pow(&t, 3)));
    Ok((Value::from_quad(value), format!("sigma = {s}")))
}

fn abelian_vol(model: &AbelianModel, class: &NSClass) -> Rat {
    if model.is_nef(class) {
        model.q(class)
    } else {
        Rat::zero()
    }
}

pub fn vol(model: &Model, class: &NSClass) -> Result<VolumeResult> {
    model.check_class(class)?;
    Ok(match model {
        Model::Toric(t) => {
            let v = toric_vol_divisor(t, &t.divisor_of_class(class))?;
            VolumeResult::closed(Value::Exact(v), Some("lattice volume of P_D".to_string()))
        }
        Model::Blowup(_) => {
            let (x, y) = BlowupPdModel::xy(class);
            let d = model.dimension();
            let chamber = if x.is_negative() || y > x {
                "outside the big cone"
            } else if y.is_negative() {
                "x^d"
            } else {
                "x^d - y^d"
            };
            VolumeResult::closed(Value::Exact(blowup_vol(d, &x, &y)), Some(chamber.to_string()))
        }
        Model::Surface(s) => match zariski(s, class) {
            Ok(z) => {
                let v = s.q(&z.positive);
                let detail = format!("Zariski support {:?}", z.support);
                VolumeResult::closed(Value::Exact(v), Some(detail))
            }
            Err(Error::NotPseudoeffective(_)) => {
                VolumeResult::closed(Value::zero(), Some("not pseudoeffective".to_string()))
            }
            Err(e) => return Err(e),
        },
        Model::Cutkosky(c) => {
            let (v, detail) = cutkosky_vol(c, class)?;
            VolumeResult::closed(v, Some(detail))
        }
        Model::SplitRuled(r) => VolumeResult::closed(Value::Exact(split_ruled_vol(r, class)), None),
        Model::Abelian(a) => VolumeResult::closed(Value::Exact(abelian_vol(a, class)), None),
    })
}

/// Shorthand for `vol(..).value`.
pub fn vol_value(model: &Model, class: &NSClass) -> Result<Value> {
    vol(model, class).map(|r| r.value)
}

fn integral_multiple(class: &NSClass, m: i64) -> Result<Vec<BigInt>> {
    class
        .coords()
        .iter()
        .map(|x| {
            let y = x * int(m);
            if y.is_integer() {
                Ok(y.to_integer())
            } else {
                Err(Error::InvalidOperands(format!("{m} * ({class}) is not integral")))
            }
        })
        .collect()
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::BudgetExceeded(format!("coefficient {x} is out of range")))
}

fn elliptic_h0(n: i64) -> i64 {
    match n.cmp(&0) {
        Ordering::Greater => n,
        Ordering::Equal => 1,
        Ordering::Less => 0,
    }
}

/// `h0(V, D)` on an abelian surface for `D` ample or not nef.
fn abelian_h0(model: &AbelianModel, d: &NSClass) -> Result<BigInt> {
    if !model.is_ample(d) {
        return Ok(BigInt::zero());
    }
    let half = model.q(d) / int(2);
    if !half.is_integer() {
        return Err(Error::InvalidModel(format!("self-intersection of {d} is odd")));
    }
    Ok(half.to_integer())
}

/// `h^0(X, O(mD))` computed by exact counting; `mD` must be integral.
pub fn h0_exact(model: &Model, class: &NSClass, m: i64, budget: Budget) -> Result<BigInt> {
    model.check_class(class)?;
    if m < 1 {
        return Err(Error::InvalidOperands("m must be positive".into()));
    }
    if m > budget.max_m {
        return Err(Error::BudgetExceeded(format!("m = {m} exceeds the cap {}", budget.max_m)));
    }
    match model {
        Model::Toric(t) => Ok(t
            .polytope_of_class(class)?
            .lattice_point_count(m, budget.points)?
            .into()),
        Model::Blowup(b) => {
            let k = integral_multiple(class, m)?;
            let a = to_i64(&k[0])?;
            let c = -to_i64(&k[1])?;
            let d = b.dim() as i64;
            let mut total = BigInt::zero();
            for j in c.max(0)..=a {
                total += binomial(BigInt::from(j + d - 1), BigInt::from(d - 1));
            }
            Ok(total)
        }
        Model::Cutkosky(ck) => {
            let (t, c) = CutkoskyModel::split_class(class)?;
            let tm = t * int(m);
            if !tm.is_integer() {
                return Err(Error::InvalidOperands(format!("{m} * ({class}) is not integral")));
            }
            let tm = to_i64(&tm.to_integer())?;
            if tm > budget.max_m {
                return Err(Error::BudgetExceeded(format!("Serre degree {tm} exceeds the cap")));
            }
            let mc = NSClass::new(integral_multiple(&c, m)?.into_iter().map(Rat::from_integer).collect());
            let mut total = BigInt::zero();
            for i in 0..=tm {
                let term = ck
                    .a()
                    .scale(&int(tm - i))
                    .add(&ck.b().scale(&int(i)))
                    .add(&mc);
                total += abelian_h0(ck.surface(), &term)?;
            }
            Ok(total)
        }
        Model::SplitRuled(r) => {
            let k = integral_multiple(class, m)?;
            let x = to_i64(&k[0])?;
            let y = to_i64(&k[1])?;
            if x > budget.max_m {
                return Err(Error::BudgetExceeded(format!("Serre degree {x} exceeds the cap")));
            }
            Ok((0..=x)
                .map(|i| elliptic_h0(r.d1 * i + r.d2 * (x - i) + y))
                .sum::<i64>()
                .into())
        }
        Model::Abelian(a) => {
            let k = integral_multiple(class, m)?;
            abelian_h0(a, &NSClass::new(k.into_iter().map(Rat::from_integer).collect()))
        }
        Model::Surface(_) => Err(Error::UnsupportedModel(
            "general surfaces carry no section-counting oracle".into(),
        )),
    }
}

/// Tolerance to which the oracle is expected to agree at the end of a
/// standard schedule.
pub fn oracle_tolerance(model: &Model) -> f64 {
    match model {
        Model::Cutkosky(_) => 0.005,
        Model::SplitRuled(_) => 0.01,
        _ => 0.05,
    }
}

/// `d! h0(mD) / m^d` along `schedule`; the value is the last term and the
/// error estimate the last increment.
pub fn vol_oracle(model: &Model, class: &NSClass, schedule: &[i64], budget: Budget) -> Result<VolumeResult> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidOperands("schedule must be nonempty and increasing".into()));
    }
    let d = model.dimension() as u32;
    let mut sequence = Vec::with_capacity(schedule.len());
    for &m in schedule {
        let h = h0_exact(model, class, m, budget)?;
        let v = Rat::from_integer(h) * factorial(d) / pow(&int(m), d);
        sequence.push((m, rat_to_f64(&v)));
    }
    let (max_m, last) = *sequence.last().unwrap();
    let error = if sequence.len() > 1 {
        (last - sequence[sequence.len() - 2].1).abs()
    } else {
        last.abs()
    };
    Ok(VolumeResult {
        value: Value::Approx { value: last, error },
        provenance: Provenance::OracleExtrapolated { max_m },
        detail: Some(format!("largest m = {max_m}")),
        sequence,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZariskiDecomposition {
    pub positive: NSClass,
    pub negative: NSClass,
    pub support: Vec<usize>,
    pub coefficients: Vec<Rat>,
}

pub fn zariski(model: &SurfaceModel, class: &NSClass) -> Result<ZariskiDecomposition> {
    if class.len() != model.rho() {
        return Err(Error::UnsupportedClass(format!("class needs {} coordinates", model.rho())));
    }
    let curves = model.curves();
    let mut support: Vec<usize> = Vec::new();
    let mut coefficients: Vec<Rat> = Vec::new();
    let mut positive = class.clone();
    loop {
        let fresh: Vec<usize> = (0..curves.len())
            .filter(|j| !support.contains(j) && model.pair(&positive, &curves[*j]).is_negative())
            .collect();
        if fresh.is_empty() {
            break;
        }
        support.extend(fresh);
        support.sort_unstable();
        let g: Vec<Vec<Rat>> = support
            .iter()
            .map(|&i| support.iter().map(|&j| model.pair(&curves[i], &curves[j])).collect())
            .collect();
        if !is_negative_definite(&g) {
            return Err(Error::InvalidModel(format!(
                "curves {support:?} do not span a negative definite configuration"
            )));
        }
        let rhs: Vec<Rat> = support.iter().map(|&j| model.pair(class, &curves[j])).collect();
        coefficients = solve(&g, &rhs).expect("negative definite matrix is invertible");
        positive = class.clone();
        for (t, &j) in coefficients.iter().zip(&support) {
            positive = positive.add_scaled(&curves[j], &-t);
        }
    }
    let pseudoeffective = coefficients.iter().all(|t| !t.is_negative()) && model.is_nef(&positive);
    if !pseudoeffective {
        return Err(Error::NotPseudoeffective(format!("{class}")));
    }
    let (support, coefficients): (Vec<usize>, Vec<Rat>) = support
        .into_iter()
        .zip(coefficients)
        .filter(|(_, t)| t.is_positive())
        .unzip();
    let negative = class.sub(&positive);
    debug_assert!(model.pair(&positive, &negative).is_zero());
    debug_assert!(support
        .iter()
        .all(|&j| model.pair(&positive, &curves[j]).is_zero()));
    Ok(ZariskiDecomposition {
        positive,
        negative,
        support,
        coefficients,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HhatVector {
    pub values: Vec<Rat>,
}

impl HhatVector {
    /// `sum_i (-1)^i hhat^i`.
    pub fn euler_characteristic(&self) -> Rat {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { v.clone() } else { -v.clone() })
            .sum()
    }

    pub fn higher_vanish(&self) -> bool {
        self.values[1..].iter().all(Zero::is_zero)
    }
}

fn abelian_hhat(model: &AbelianModel, class: &NSClass) -> HhatVector {
    let q = model.q(class);
    let mut values = vec![Rat::zero(); 3];
    match q.cmp(&Rat::zero()) {
        Ordering::Greater => {
            if model.pair(class, model.ample()).is_positive() {
                values[0] = q;
            } else {
                values[2] = q;
            }
        }
        Ordering::Less => values[1] = -q,
        Ordering::Equal => {}
    }
    HhatVector { values }
}

/// Asymptotic cohomology of `x h - y e` on `Bl_p(P^d)`. Classes with `x < 0`
/// are reduced to `x > 0` by Serre duality `hhat^i(D) = hhat^{d-i}(-D)`.
fn blowup_hhat(d: usize, x: &Rat, y: &Rat) -> HhatVector {
    let mut values = vec![Rat::zero(); d + 1];
    if x.is_negative() {
        let dual = blowup_hhat(d, &-x, &-y);
        for (i, v) in dual.values.into_iter().enumerate() {
            values[d - i] = v;
        }
        return HhatVector { values };
    }
    let e = d as u32;
    if y.is_negative() {
        values[0] = pow(x, e);
        values[d - 1] = pow(&-y, e);
    } else if y <= x {
        values[0] = pow(x, e) - pow(y, e);
    } else {
        values[1] = pow(y, e) - pow(x, e);
    }
    if d == 1 {
        unreachable!("blow-ups have dimension at least 2");
    }
    HhatVector { values }
}

pub fn hhat(model: &Model, class: &NSClass) -> Result<HhatVector> {
    match model {
        Model::Abelian(a) => {
            model.check_class(class)?;
            Ok(abelian_hhat(a, class))
        }
        Model::Cutkosky(c) if class.len() == 3 => Ok(abelian_hhat(c.surface(), class)),
        Model::Cutkosky(_) => Err(Error::UnsupportedClass(
            "asymptotic cohomology is available on the abelian surface (3 coordinates)".into(),
        )),
        Model::Blowup(b) => {
            model.check_class(class)?;
            let (x, y) = BlowupPdModel::xy(class);
            Ok(blowup_hhat(b.dim(), &x, &y))
        }
        _ => Err(Error::UnsupportedModel(format!(
            "asymptotic cohomology is not implemented for {} models",
            model.kind()
        ))),
    }
}

fn toric_of(model: &Model) -> Result<&ToricModel> {
    model
        .toric()
        .ok_or_else(|| Error::UnsupportedModel(format!("{} model is not toric", model.kind())))
}

fn check_ray(t: &ToricModel, ray: usize) -> Result<()> {
    if ray >= t.rays().len() {
        return Err(Error::InvalidOperands(format!(
            "ray index {ray} out of range (model has {} rays)",
            t.rays().len()
        )));
    }
    Ok(())
}

/// `ord_{D_ray}` of the asymptotic linear series of a toric divisor.
pub fn toric_ord_divisor(model: &ToricModel, divisor: &[Rat], ray: usize) -> Result<Rat> {
    check_ray(model, ray)?;
    let p = model.polytope(divisor)?;
    if !p.is_full_dimensional() {
        return Err(Error::NotBig(format!("{divisor:?}")));
    }
    let q = &p.inequalities()[ray];
    Ok(p.vertices().iter().map(|v| q.slack(v)).min().unwrap())
}

pub fn ord(model: &Model, valuation: usize, class: &NSClass) -> Result<Rat> {
    model.check_class(class)?;
    match model {
        Model::Toric(_) | Model::Blowup(_) => {
            let t = toric_of(model)?;
            toric_ord_divisor(t, &t.divisor_of_class(class), valuation)
        }
        Model::Surface(s) => {
            if valuation >= s.curves().len() {
                return Err(Error::InvalidOperands(format!("curve index {valuation} out of range")));
            }
            let z = match zariski(s, class) {
                Err(Error::NotPseudoeffective(m)) => return Err(Error::NotBig(m)),
                other => other?,
            };
            if !s.q(&z.positive).is_positive() {
                return Err(Error::NotBig(format!("{class}")));
            }
            Ok(z.support
                .iter()
                .zip(&z.coefficients)
                .find(|(&j, _)| j == valuation)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(Rat::zero))
        }
        _ => Err(Error::UnsupportedModel(format!(
            "orders of vanishing are available on toric and surface models, not {}",
            model.kind()
        ))),
    }
}

/// `(d-1)!` times the lattice volume of the face of `P_D` cut out by the ray,
/// or zero when the divisor lies in the stable base locus. Defined for every
/// class with nonempty polytope, so the boundary of the big cone is covered.
pub fn toric_restricted_vol_divisor(model: &ToricModel, divisor: &[Rat], ray: usize) -> Result<Rat> {
    check_ray(model, ray)?;
    let p = model.polytope(divisor)?;
    if p.is_empty() {
        return Err(Error::NotPseudoeffective(format!("{divisor:?}")));
    }
    let q = &p.inequalities()[ray];
    let min = p.vertices().iter().map(|v| q.slack(v)).min().unwrap();
    if min.is_positive() {
        return Ok(Rat::zero());
    }
    let face = p.face(&q.normal, &q.offset)?;
    if face.affine_dim() != Some(model.dim() - 1) {
        return Ok(Rat::zero());
    }
    face.normalized_volume()
}

pub fn restricted_vol(model: &Model, ray: usize, class: &NSClass) -> Result<Rat> {
    model.check_class(class)?;
    let t = toric_of(model)?;
    toric_restricted_vol_divisor(t, &t.divisor_of_class(class), ray)
}

/// The two perturbation sizes used to probe `B_+`.
pub fn epsilon_grid() -> [Rat; 2] {
    [rat(1, 64), rat(1, 128)]
}

/// Rays whose divisors lie in the augmented base locus: those with positive
/// asymptotic order along `xi - eps A` for both sizes of the grid.
pub fn augmented_base_locus_probe(model: &Model, class: &NSClass) -> Result<Vec<usize>> {
    model.check_class(class)?;
    let t = toric_of(model)?;
    if !t.is_big(class) {
        return Err(Error::NotBig(format!("{class}")));
    }
    let ample = t.ample();
    let mut found: Option<Vec<usize>> = None;
    for eps in epsilon_grid() {
        let shifted = class.add_scaled(ample, &-eps.clone());
        let divisor = t.divisor_of_class(&shifted);
        let mut rays = Vec::new();
        for i in 0..t.rays().len() {
            if toric_ord_divisor(t, &divisor, i)?.is_positive() {
                rays.push(i);
            }
        }
        match &found {
            None => found = Some(rays),
            Some(prev) if *prev != rays => {
                return Err(Error::InvalidOperands(format!(
                    "augmented base locus probe disagrees between eps = 1/64 and eps = 1/128 at {class}"
                )))
            }
            Some(_) => {}
        }
    }
    let rays = found.unwrap();
    for &i in &rays {
        let here = restricted_vol(model, i, class)?;
        let approach: Vec<Rat> = epsilon_grid()
            .iter()
            .map(|eps| restricted_vol(model, i, &class.add_scaled(ample, eps)))
            .collect::<Result<_>>()?;
        if !here.is_zero() || approach[1] > approach[0] {
            return Err(Error::InvalidOperands(format!(
                "restricted volume along ray {i} does not vanish at {class}"
            )));
        }
    }
    Ok(rays)
}

/// `(m, vol_m)` where `vol_m` is the normalized volume of the moving polytope
/// (toric) or `d! h0(mD) / m^d` (the abelian-surface bundle).
pub fn fujita_sweep(model: &Model, class: &NSClass, schedule: &[i64], budget: Budget) -> Result<Vec<(i64, Rat)>> {
    model.check_class(class)?;
    match model {
        Model::Toric(_) | Model::Blowup(_) => {
            let t = toric_of(model)?;
            let p = t.polytope_of_class(class)?;
            if !p.is_full_dimensional() {
                return Err(Error::NotBig(format!("{class}")));
            }
            let d = t.dim() as u32;
            schedule
                .iter()
                .map(|&m| {
                    let moving = p.hull_of_lattice_points(m, budget.points)?;
                    Ok((m, moving.normalized_volume()? / pow(&int(m), d)))
                })
                .collect()
        }
        Model::Cutkosky(_) => schedule
            .iter()
            .map(|&m| {
                let h = h0_exact(model, class, m, budget)?;
                Ok((m, Rat::from_integer(h) * factorial(3) / pow(&int(m), 3)))
            })
            .collect(),
        _ => Err(Error::UnsupportedModel(format!(
            "Fujita sweeps run on toric and Cutkosky models, not {}",
            model.kind()
        ))),
    }
}

/// One-sided ampleness test: all higher asymptotic cohomology vanishes on a
/// grid of `(2 samples + 1)^rho` classes in the box of half-width `radius`.
pub fn ampleness_probe(model: &Model, class: &NSClass, radius: &Rat, samples: u32) -> Result<bool> {
    let rho = class.len();
    let s = i64::from(samples.max(1));
    let mut offsets: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rho {
        offsets = offsets
            .into_iter()
            .flat_map(|o| {
                (-s..=s).map(move |k| {
                    let mut o = o.clone();
                    o.push(k);
                    o
                })
            })
            .collect();
    }
    let step = radius / int(s);
    for o in offsets {
        let shift = NSClass::new(o.iter().map(|&k| &step * int(k)).collect());
        if !hhat(model, &class.add(&shift))?.higher_vanish() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::presets::*;

    fn c(xs: &[i64]) -> NSClass {
        NSClass::from_ints(xs)
    }

    fn golden_volume() -> QuadExt {
        QuadExt::new(rat(-7, 2), rat(5, 2), 5).unwrap()
    }

    #[test]
    fn blowup_examples() {
        let m = blowup_pd(3).unwrap();
        assert_eq!(vol_value(&m, &c(&[2, -1])).unwrap(), Value::Exact(int(7)));
        assert_eq!(vol_value(&m, &c(&[0, 0])).unwrap(), Value::zero());
        assert_eq!(h0_exact(&m, &c(&[2, -1]), 2, Budget::default()).unwrap(), BigInt::from(31));
        let h = hhat(&m, &c(&[2, 1])).unwrap();
        assert_eq!(h.values, vec![int(8), int(0), int(1), int(0)]);
    }

    #[test]
    fn blowup_closed_form_matches_toric() {
        for d in 2..=3 {
            let Model::Blowup(b) = blowup_pd(d).unwrap() else { panic!() };
            let m = Model::Blowup(b.clone());
            let t = Model::Toric(b.toric().clone());
            for x in -2..=3 {
                for y in -3..=3 {
                    let k = NSClass::new(vec![rat(x, 2), int(y)]);
                    assert_eq!(vol_value(&m, &k).unwrap(), vol_value(&t, &k).unwrap(), "{k}");
                }
            }
            for (x, y) in [(2, -1), (3, 1), (1, 0), (2, -2)] {
                let k = c(&[x, y]);
                for mm in 1..=4 {
                    assert_eq!(
                        h0_exact(&m, &k, mm, Budget::default()).unwrap(),
                        h0_exact(&t, &k, mm, Budget::default()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn blowup_hhat_is_dual_and_has_the_right_euler_characteristic() {
        for d in 2..=4usize {
            for x in -4..=4 {
                for y in -4..=4 {
                    let (x, y) = (int(x), int(y));
                    let h = blowup_hhat(d, &x, &y);
                    let e = d as u32;
                    assert_eq!(h.euler_characteristic(), pow(&x, e) - pow(&y, e));
                    assert!(h.values.iter().all(|v| !v.is_negative()));
                    let dual = blowup_hhat(d, &-x.clone(), &-y.clone());
                    let mut rev = dual.values.clone();
                    rev.reverse();
                    assert_eq!(h.values, rev);
                }
            }
        }
    }

    #[test]
    fn golden_volume_and_sigma() {
        let m = cutkosky_golden().unwrap();
        let Model::Cutkosky(ck) = &m else { panic!() };
        let s = sigma(ck, &c(&[0, 0, 0])).unwrap();
        assert_eq!(s, QuadExt::new(rat(-1, 2), rat(1, 2), 5).unwrap());
        let v = vol_value(&m, &c(&[0, 0, 0])).unwrap();
        assert_eq!(v, Value::Quad(golden_volume()));
        // 5 sigma - 1 with sigma^2 + sigma = 1
        assert_eq!(golden_volume(), &s.scale(&int(5)) - &QuadExt::from_rat(int(1)));
        assert_eq!(h0_exact(&m, &c(&[0, 0, 0]), 1, Budget::default()).unwrap(), BigInt::from(1));
        let four = vol_value(&m, &c(&[1, 0, 0, 0])).unwrap();
        assert_eq!(four, v);
        let doubled = sigma(ck, ck.a()).unwrap();
        assert!((&doubled - &s).signum() == Ordering::Greater);
        let surf = ck.surface();
        let whole = segment_sigma(surf, ck.a(), &c(&[2, 1, 0])).unwrap();
        assert_eq!(whole, QuadExt::from_rat(int(1)));
        assert!(matches!(
            vol_value(&m, &c(&[-2, -2, 0])),
            Err(Error::UnsupportedClass(_))
        ));
    }

    #[test]
    fn golden_oracle_converges_from_above() {
        let m = cutkosky_golden().unwrap();
        let r = vol_oracle(&m, &c(&[0, 0, 0]), &[10, 100, 1000], Budget::default()).unwrap();
        let target = golden_volume().to_f64();
        let errs: Vec<f64> = r.sequence.iter().map(|(_, v)| (v - target).abs()).collect();
        assert!(errs.windows(2).all(|w| w[1] <= w[0]));
        assert!(errs[2] / target < 0.005);
    }

    #[test]
    fn split_ruled_examples() {
        for a in [2, 3, 5] {
            let m = split_ruled(a);
            assert_eq!(vol_value(&m, &c(&[1, 0])).unwrap(), Value::Exact(rat(1, a)));
            let r = vol_oracle(&m, &c(&[1, 0]), &[50, 500], Budget::default()).unwrap();
            let err = (r.value.to_f64() - 1.0 / a as f64).abs();
            // 2 h0(m) / m^2 = 1/a + 1/m + O(1/m^2)
            assert!(err < 0.01);
            assert!(err <= 1.01 / 500.0);
        }
        let m = split_ruled(2);
        assert_eq!(h0_exact(&m, &c(&[1, 0]), 2, Budget::default()).unwrap(), BigInt::from(3));
        // xi^2 = d1 + d2 = 0 and xi.f = 1, so (xi + f)^2 = 2
        assert_eq!(vol_value(&m, &c(&[1, 1])).unwrap(), Value::Exact(int(2)));
    }

    #[test]
    fn zariski_examples() {
        let Model::Surface(s) = blowup_surface().unwrap() else { panic!() };
        let z = zariski(&s, &c(&[1, 1])).unwrap();
        assert_eq!(z.positive, c(&[1, 0]));
        assert_eq!(z.negative, c(&[0, 1]));
        assert_eq!(z.support, vec![0]);
        let z = zariski(&s, &c(&[2, 3])).unwrap();
        assert_eq!((z.positive.clone(), s.q(&z.positive)), (c(&[2, 0]), int(4)));
        let z = zariski(&s, &c(&[2, -1])).unwrap();
        assert!(z.support.is_empty());
        assert!(matches!(zariski(&s, &c(&[1, -2])), Err(Error::NotPseudoeffective(_))));
        assert!(matches!(zariski(&s, &c(&[-1, 0])), Err(Error::NotPseudoeffective(_))));
    }

    #[test]
    fn abelian_hhat_examples() {
        let m = abelian_golden().unwrap();
        let h = hhat(&m, &c(&[1, -1, 0])).unwrap();
        assert_eq!(h.values, vec![int(0), int(2), int(0)]);
        let h = hhat(&m, &c(&[1, 1, 0])).unwrap();
        assert_eq!(h.values, vec![int(2), int(0), int(0)]);
        let h = hhat(&m, &c(&[-1, -1, 0])).unwrap();
        assert_eq!(h.values, vec![int(0), int(0), int(2)]);
    }

    #[test]
    fn orders_and_restricted_volumes() {
        let m = blowup_pd(2).unwrap();
        let e = 3;
        assert_eq!(ord(&m, e, &c(&[1, 1])).unwrap(), int(1));
        assert_eq!(ord(&m, e, &c(&[2, -1])).unwrap(), int(0));
        let Model::Toric(p2) = projective_space(2).unwrap() else { panic!() };
        for i in 0..3 {
            assert_eq!(ord(&Model::Toric(p2.clone()), i, &c(&[1])).unwrap(), int(0));
        }
        let m3 = blowup_pd(3).unwrap();
        assert_eq!(restricted_vol(&m3, 4, &c(&[2, -1])).unwrap(), int(1));
        assert_eq!(restricted_vol(&m3, 4, &c(&[2, -2])).unwrap(), int(4));
        assert_eq!(restricted_vol(&m3, 4, &c(&[2, 1])).unwrap(), int(0));
        assert!(matches!(ord(&m, e, &c(&[1, -1])), Err(Error::NotBig(_))));
        let s = blowup_surface().unwrap();
        assert_eq!(ord(&s, 0, &c(&[1, 1])).unwrap(), int(1));
    }

    #[test]
    fn augmented_base_loci() {
        let m = blowup_pd(2).unwrap();
        assert_eq!(augmented_base_locus_probe(&m, &c(&[1, 0])).unwrap(), vec![3]);
        assert!(augmented_base_locus_probe(&m, &c(&[2, -1])).unwrap().is_empty());
        let p2 = projective_space(2).unwrap();
        assert!(augmented_base_locus_probe(&p2, &c(&[1])).unwrap().is_empty());
    }

    #[test]
    fn fujita_sweeps() {
        let m = blowup_pd(2).unwrap();
        let sweep = fujita_sweep(&m, &c(&[1, 1]), &(1..=10).collect::<Vec<_>>(), Budget::default()).unwrap();
        assert!(sweep.iter().all(|(_, v)| *v == int(1)));
        let m3 = blowup_pd(3).unwrap();
        let sweep = fujita_sweep(&m3, &c(&[2, -1]), &[1, 2, 3], Budget::default()).unwrap();
        assert!(sweep.iter().all(|(_, v)| *v == int(7)));
        let half = fujita_sweep(&m, &NSClass::new(vec![int(1), rat(-1, 2)]), &[1, 2, 3, 4], Budget::default()).unwrap();
        assert!(half.iter().all(|(_, v)| *v <= rat(3, 4)));
        assert_eq!(half[1].1, rat(3, 4));
    }

    #[test]
    fn ampleness() {
        let m = blowup_pd(3).unwrap();
        let r = rat(1, 8);
        assert!(ampleness_probe(&m, &NSClass::new(vec![int(1), rat(-1, 2)]), &r, 2).unwrap());
        assert!(!ampleness_probe(&m, &c(&[1, 0]), &r, 2).unwrap());
        let a = abelian_golden().unwrap();
        assert!(!ampleness_probe(&a, &c(&[1, -1, 0]), &r, 1).unwrap());
        assert!(ampleness_probe(&a, &c(&[1, 1, 0]), &r, 2).unwrap());
    }
}
