//! Seeded property checks over catalog models: homogeneity, log-concavity,
//! numerical invariance, Lipschitz estimates and chamber fitting.
//!
//! Every check is a pure function of its arguments; reports list each sample
//! as an `(inputs, values, margin)` record and are pass iff no record is a
//! violation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{Model, NSClass, ToricModel};
use crate::engine::{self, sigma, toric_ord_divisor, toric_restricted_vol_divisor, toric_vol_divisor, vol_value, Value};
use crate::error::{Error, Result};
use crate::linalg::{rank, solve};
use crate::polytope::CountBudget;
use crate::scalar::{int, parse_rat, pow, rat, rat_to_f64, RadicalSum, Rat};

pub const LOG_CONCAVITY_TOLERANCE: f64 = 1e-9;
pub const LIPSCHITZ_STABILITY: f64 = 0.2;

#[derive(Clone, Debug, PartialEq)]
pub struct SampleRecord {
    pub inputs: String,
    pub values: String,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub property: String,
    pub model: String,
    pub samples: usize,
    pub violations: Vec<SampleRecord>,
    /// Smallest margin seen; negative margins beyond tolerance are violations.
    pub worst_margin: f64,
    pub records: Vec<SampleRecord>,
    pub notes: Vec<String>,
}

impl PropertyReport {
    fn new(property: &str, model: &Model) -> Self {
        PropertyReport {
            property: property.to_string(),
            model: model.kind().to_string(),
            samples: 0,
            violations: Vec::new(),
            worst_margin: f64::INFINITY,
            records: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, record: SampleRecord, violation: bool) {
        self.samples += 1;
        if record.margin < self.worst_margin {
            self.worst_margin = record.margin;
        }
        if violation {
            self.violations.push(record.clone());
        }
        self.records.push(record);
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// One tab-separated line per sample: property, model, inputs, values, margin.
    pub fn record_lines(&self) -> Vec<String> {
        self.records
            .iter()
            .map(|r| format!("{}\t{}\t{}\t{}\t{:e}", self.property, self.model, r.inputs, r.values, r.margin))
            .collect()
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let worst = if self.samples == 0 { 0.0 } else { self.worst_margin };
        writeln!(
            f,
            "{} {}: {} samples, {} violations, worst margin {:e}: {}",
            self.property,
            self.model,
            self.samples,
            self.violations.len(),
            worst,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for v in &self.violations {
            writeln!(f, "  violation: {} -> {} (margin {:e})", v.inputs, v.values, v.margin)?;
        }
        Ok(())
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rat {
    rat(rng.gen_range(lo * den..=hi * den), den)
}

/// Random class from the model's sampling box, not filtered.
pub fn sample_class(model: &Model, rng: &mut ChaCha8Rng) -> NSClass {
    match model {
        Model::Cutkosky(_) => {
            let t = random_rat(rng, 1, 4, 2) / int(2);
            let coords = std::iter::once(t.clone())
                .chain((0..3).map(|_| random_rat(rng, -1, 1, 16) / int(4) * &t))
                .collect();
            NSClass::new(coords)
        }
        _ => NSClass::new((0..model.rho()).map(|_| random_rat(rng, -3, 3, 4)).collect()),
    }
}

/// Big classes by rejection from the sampling box.
pub fn sample_big_classes(model: &Model, rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<NSClass>> {
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while out.len() < n {
        attempts += 1;
        if attempts > 200 * n + 1000 {
            return Err(Error::BudgetExceeded(format!(
                "rejection sampling found {} of {n} big classes",
                out.len()
            )));
        }
        let c = sample_class(model, rng);
        if matches!(vol_value(model, &c), Ok(v) if v.is_positive()) {
            out.push(c);
        }
    }
    Ok(out)
}

fn proportionality(x: &NSClass, y: &NSClass) -> Option<Rat> {
    let (i, xi) = x.coords().iter().enumerate().find(|(_, v)| !v.is_zero())?;
    let c = &y.coords()[i] / xi;
    (c.is_positive() && *y == x.scale(&c)).then_some(c)
}

fn root_bounds(v: &Value, d: usize) -> (f64, f64) {
    let (lo, hi) = v.f64_bounds();
    let e = 1.0 / d as f64;
    let down = if lo <= 0.0 { 0.0 } else { lo.powf(e) * (1.0 - 4.0 * f64::EPSILON) };
    let up = if hi <= 0.0 { 0.0 } else { hi.powf(e) * (1.0 + 4.0 * f64::EPSILON) };
    (down, up)
}

/// `(margin, proportional)`, where the margin is the certified lower bound
/// of `vol(x + y)^(1/d) - vol(x)^(1/d) - vol(y)^(1/d)` relative to the
/// right-hand side. Proportional pairs are decided exactly: margin 0 when
/// homogeneity holds, -1 otherwise.
pub fn log_concavity_margin(model: &Model, x: &NSClass, y: &NSClass) -> Result<(f64, bool)> {
    let d = model.dimension();
    let vx = vol_value(model, x)?;
    let vy = vol_value(model, y)?;
    let vs = vol_value(model, &x.add(y))?;
    if let Some(c) = proportionality(x, y) {
        let one = Rat::one() + &c;
        let ok = vy.exact_eq(&vx.scale(&pow(&c, d as u32))) == Some(true)
            && vs.exact_eq(&vx.scale(&pow(&one, d as u32))) == Some(true);
        return Ok((if ok { 0.0 } else { -1.0 }, true));
    }
    let (lhs, _) = root_bounds(&vs, d);
    let (_, rx) = root_bounds(&vx, d);
    let (_, ry) = root_bounds(&vy, d);
    let rhs = rx + ry;
    Ok(((lhs - rhs) / rhs.max(f64::MIN_POSITIVE), false))
}

/// `n` pairs: the ample class with itself, then seeded big pairs of which
/// every tenth is a proportional pair.
pub fn check_log_concavity(model: &Model, seed: u64, n: usize) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("log_concavity", model);
    let mut rng = rng(seed);
    let classes = sample_big_classes(model, &mut rng, 2 * n)?;
    let ample = model.ample();
    for k in 0..n {
        let (x, y) = if k == 0 && matches!(vol_value(model, &ample), Ok(v) if v.is_positive()) {
            (ample.clone(), ample.clone())
        } else if k % 10 == 1 {
            let c = random_rat(&mut rng, 1, 4, 3);
            (classes[2 * k].clone(), classes[2 * k].scale(&c))
        } else {
            (classes[2 * k].clone(), classes[2 * k + 1].clone())
        };
        let (margin, exact) = log_concavity_margin(model, &x, &y)?;
        let violation = margin < -LOG_CONCAVITY_TOLERANCE || (exact && margin != 0.0);
        report.push(
            SampleRecord {
                inputs: format!("({x}) + ({y})"),
                values: if exact { "proportional".into() } else { "certified".into() },
                margin,
            },
            violation,
        );
    }
    Ok(report)
}

/// `vol(a x) = a^d vol(x)` exactly, over seeded big classes, the zero class
/// and the ample class.
pub fn check_homogeneity(model: &Model, seed: u64, n: usize, scalars: &[Rat]) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("homogeneity", model);
    let d = model.dimension() as u32;
    let mut classes = sample_big_classes(model, &mut rng(seed), n)?;
    classes.push(model.ample());
    if !matches!(model, Model::Cutkosky(_)) {
        classes.push(NSClass::zero(model.rho()));
    }
    for x in &classes {
        let v = vol_value(model, x)?;
        for a in scalars {
            if a.is_negative() {
                return Err(Error::InvalidOperands("homogeneity scalars must be nonnegative".into()));
            }
            let lhs = vol_value(model, &x.scale(a))?;
            let rhs = v.scale(&pow(a, d));
            let equal = lhs.exact_eq(&rhs) == Some(true);
            report.push(
                SampleRecord {
                    inputs: format!("a = {a}, class {x}"),
                    values: format!("{lhs} vs {rhs}"),
                    margin: -(lhs.to_f64() - rhs.to_f64()).abs(),
                },
                !equal,
            );
        }
    }
    Ok(report)
}

fn same<T: PartialEq>(a: &Result<T>, b: &Result<T>) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => x == y,
        (Err(x), Err(y)) => std::mem::discriminant(x) == std::mem::discriminant(y),
        _ => false,
    }
}

fn show<T: fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error({e})"),
    }
}

pub const INVARIANCE_LEVELS: [i64; 4] = [1, 2, 3, 5];

/// Compares `vol`, `ord` and restricted volume along every ray, and lattice
/// counts at [`INVARIANCE_LEVELS`], between a divisor `D` and `D + div(x^u)`.
pub fn divisor_invariance(t: &ToricModel, divisor: &[Rat], u: &[i64], levels: &[i64]) -> Result<Vec<(String, String, String)>> {
    let shifted: Vec<Rat> = divisor.iter().zip(t.principal_divisor(u)).map(|(a, b)| a + b).collect();
    let mut mismatches = Vec::new();
    let mut compare = |what: String, a: String, b: String, eq: bool| {
        if !eq {
            mismatches.push((what, a, b));
        }
    };
    let ca = t.class_of_divisor(divisor);
    let cb = t.class_of_divisor(&shifted);
    compare("class".into(), ca.to_string(), cb.to_string(), ca == cb);
    let (va, vb) = (toric_vol_divisor(t, divisor), toric_vol_divisor(t, &shifted));
    compare("vol".into(), show(&va), show(&vb), same(&va, &vb));
    let psef = t.is_psef(&ca);
    for i in 0..t.rays().len() {
        let (a, b) = (toric_ord_divisor(t, divisor, i), toric_ord_divisor(t, &shifted, i));
        compare(format!("ord_{i}"), show(&a), show(&b), same(&a, &b));
        if psef {
            let (a, b) = (toric_restricted_vol_divisor(t, divisor, i), toric_restricted_vol_divisor(t, &shifted, i));
            compare(format!("rvol_{i}"), show(&a), show(&b), same(&a, &b));
        }
    }
    let (pa, pb) = (t.polytope(divisor)?, t.polytope(&shifted)?);
    for &m in levels {
        let a = pa.lattice_point_count(m, CountBudget::default());
        let b = pb.lattice_point_count(m, CountBudget::default());
        compare(format!("h0(m = {m})"), show(&a), show(&b), same(&a, &b));
    }
    Ok(mismatches)
}

/// Random integral classes, lifted to divisors and shifted by random
/// principal divisors.
pub fn check_numerical_invariance(model: &Model, seed: u64, n: usize) -> Result<PropertyReport> {
    let t = model
        .toric()
        .ok_or_else(|| Error::UnsupportedModel(format!("{} has no fan", model.kind())))?;
    let mut report = PropertyReport::new("numerical_invariance", model);
    let mut rng = rng(seed);
    for _ in 0..n {
        let class = NSClass::new((0..t.rho()).map(|_| int(rng.gen_range(-3..=3))).collect());
        let u: Vec<i64> = (0..t.dim()).map(|_| rng.gen_range(-3..=3)).collect();
        let mismatches = divisor_invariance(t, &t.divisor_of_class(&class), &u, &INVARIANCE_LEVELS)?;
        let values = if mismatches.is_empty() {
            "all equal".to_string()
        } else {
            mismatches
                .iter()
                .map(|(w, a, b)| format!("{w}: {a} vs {b}"))
                .collect::<Vec<_>>()
                .join("; ")
        };
        let bad = !mismatches.is_empty();
        report.push(
            SampleRecord {
                inputs: format!("class {class}, u = {u:?}"),
                values,
                margin: if bad { -1.0 } else { 0.0 },
            },
            bad,
        );
    }
    Ok(report)
}

/// Planar grid `origin + s u + t v` with `s, t` running over
/// `lo + (hi - lo) k / steps`.
#[derive(Clone, Debug, PartialEq)]
pub struct Slice {
    pub origin: NSClass,
    pub u: NSClass,
    pub v: NSClass,
    pub lo: Rat,
    pub hi: Rat,
    pub steps: u32,
}

impl Slice {
    pub fn new(origin: NSClass, u: NSClass, v: NSClass, lo: Rat, hi: Rat, steps: u32) -> Result<Self> {
        let n = origin.len();
        if u.len() != n || v.len() != n {
            return Err(Error::Config("slice vectors must have the same length".into()));
        }
        if u.is_zero() || v.is_zero() {
            return Err(Error::Config("slice directions must be nonzero".into()));
        }
        if rank(&[u.coords().to_vec(), v.coords().to_vec()]) < 2 {
            return Err(Error::Config("slice directions must be independent".into()));
        }
        if lo >= hi || steps == 0 {
            return Err(Error::Config("slice needs lo < hi and at least one step".into()));
        }
        Ok(Slice { origin, u, v, lo, hi, steps })
    }

    pub fn coordinate(&self, k: u32) -> Rat {
        &self.lo + (&self.hi - &self.lo) * rat(i64::from(k), i64::from(self.steps))
    }

    pub fn point(&self, s: &Rat, t: &Rat) -> NSClass {
        self.origin.add_scaled(&self.u, s).add_scaled(&self.v, t)
    }

    /// Points in row order: `t` outer, `s` inner.
    pub fn grid(&self) -> Vec<(u32, u32, Rat, Rat, NSClass)> {
        let mut out = Vec::new();
        for j in 0..=self.steps {
            for i in 0..=self.steps {
                let (s, t) = (self.coordinate(i), self.coordinate(j));
                let p = self.point(&s, &t);
                out.push((i, j, s, t, p));
            }
        }
        out
    }

    pub fn refined(&self) -> Slice {
        Slice {
            steps: self.steps * 2,
            ..self.clone()
        }
    }
}

/// `origin;u;v;lo;hi;steps`, classes written as comma lists, e.g.
/// `0,0;1,0;0,1;-2;2;32`.
impl FromStr for Slice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(Error::Config(format!("slice `{s}` should read origin;u;v;lo;hi;steps")));
        }
        let class = |p: &str| p.parse::<NSClass>().map_err(|e| Error::Config(format!("slice: {e}")));
        let steps: u32 = parts[5]
            .parse()
            .map_err(|_| Error::Config(format!("slice: bad step count `{}`", parts[5])))?;
        Slice::new(
            class(parts[0])?,
            class(parts[1])?,
            class(parts[2])?,
            parse_rat(parts[3]).map_err(|e| Error::Config(format!("slice: {e}")))?,
            parse_rat(parts[4]).map_err(|e| Error::Config(format!("slice: {e}")))?,
            steps,
        )
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{};{};{};{}", self.origin, self.u, self.v, self.lo, self.hi, self.steps)
    }
}

fn norm(c: &NSClass) -> f64 {
    c.coords().iter().map(|x| rat_to_f64(x).powi(2)).sum::<f64>().sqrt()
}

/// Max over grid edges of `|vol(x) - vol(y)| / (max(|x|, |y|)^(d-1) |x - y|)`;
/// points where the volume is not available are skipped.
pub fn lipschitz_estimate(model: &Model, slice: &Slice) -> f64 {
    let d = model.dimension() as i32;
    let grid = slice.grid();
    let values: BTreeMap<(u32, u32), (NSClass, f64)> = grid
        .into_iter()
        .filter_map(|(i, j, _, _, p)| vol_value(model, &p).ok().map(|v| ((i, j), (p, v.to_f64()))))
        .collect();
    let mut best: f64 = 0.0;
    for (&(i, j), (p, v)) in &values {
        for key in [(i + 1, j), (i, j + 1)] {
            if let Some((q, w)) = values.get(&key) {
                let scale = norm(p).max(norm(q)).powi(d - 1) * norm(&p.sub(q));
                if scale > 0.0 {
                    best = best.max((v - w).abs() / scale);
                }
            }
        }
    }
    best
}

/// Estimates at `steps` and `2 steps`; passes when both are finite and agree
/// within [`LIPSCHITZ_STABILITY`].
pub fn check_lipschitz(model: &Model, slice: &Slice) -> PropertyReport {
    let mut report = PropertyReport::new("lipschitz", model);
    let fine = slice.refined();
    let a = lipschitz_estimate(model, slice);
    let b = lipschitz_estimate(model, &fine);
    let top = a.max(b);
    let gap = if top == 0.0 { 0.0 } else { (a - b).abs() / top };
    let ok = a.is_finite() && b.is_finite() && gap <= LIPSCHITZ_STABILITY;
    report.push(
        SampleRecord {
            inputs: format!("slice {slice} and {} steps", fine.steps),
            values: format!("C = {a:.6} then {b:.6}"),
            margin: LIPSCHITZ_STABILITY - gap,
        },
        !ok,
    );
    report.notes.push(format!("estimate {b:.6}"));
    report
}

fn toric_key(t: &ToricModel, class: &NSClass) -> Result<String> {
    let divisor = t.divisor_of_class(class);
    let p = t.polytope(&divisor)?;
    if !p.is_full_dimensional() {
        return Ok("not big".into());
    }
    let mut incidence: Vec<Vec<usize>> = p
        .vertices()
        .iter()
        .map(|v| {
            (0..t.rays().len())
                .filter(|&i| {
                    let s: Rat = t.rays()[i].iter().zip(v).map(|(a, x)| x * int(*a)).sum();
                    (s + &divisor[i]).is_zero()
                })
                .collect()
        })
        .collect();
    incidence.sort();
    Ok(format!("vertices {incidence:?}"))
}

/// Combinatorial type of a class: the normal fan of the polytope for toric
/// models, the Zariski support for surfaces, whether `sigma = 1` for
/// Cutkosky models. `None` where the volume is not defined by the model.
pub fn chamber_key(model: &Model, class: &NSClass) -> Result<Option<String>> {
    Ok(Some(match model {
        Model::Toric(t) => toric_key(t, class)?,
        Model::Blowup(b) => toric_key(b.toric(), class)?,
        Model::Surface(s) => match engine::zariski(s, class) {
            Ok(z) => format!("support {:?}", z.support),
            Err(Error::NotPseudoeffective(_)) => "not pseudoeffective".into(),
            Err(e) => return Err(e),
        },
        Model::Cutkosky(c) => {
            let Ok((t, rest)) = crate::catalog::CutkoskyModel::split_class(class) else {
                return Ok(None);
            };
            if !t.is_positive() {
                "not big".into()
            } else {
                match sigma(c, &rest.scale(&(Rat::one() / &t))) {
                    Ok(s) if s.as_rat().is_some_and(|r| r.is_one()) => "sigma = 1".into(),
                    Ok(_) => "sigma < 1".into(),
                    Err(Error::UnsupportedClass(_)) => return Ok(None),
                    Err(e) => return Err(e),
                }
            }
        }
        other => return Err(Error::UnsupportedModel(format!("no chamber structure for {}", other.kind()))),
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Chamber {
    pub key: String,
    pub points: usize,
    /// `(i, j, c)` for the monomials `c s^i t^j`, when the fit succeeded.
    pub polynomial: Option<Vec<(u32, u32, RadicalSum)>>,
    /// Points that disagree with the interpolant.
    pub misfits: usize,
}

impl Chamber {
    pub fn fits(&self) -> bool {
        self.polynomial.is_some()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Wall {
    pub key: String,
    pub points: usize,
    /// Whether every wall point agrees with some fitted chamber polynomial.
    pub continuous: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChamberReport {
    pub model: String,
    pub degree: u32,
    /// Groups containing a unisolvent set of points.
    pub chambers: Vec<Chamber>,
    /// Groups too thin to determine a polynomial.
    pub walls: Vec<Wall>,
    pub skipped: usize,
}

impl ChamberReport {
    pub fn piecewise_polynomial(&self) -> bool {
        self.chambers.iter().all(Chamber::fits)
    }

    pub fn fit_failures(&self) -> Vec<&Chamber> {
        self.chambers.iter().filter(|c| !c.fits()).collect()
    }
}

pub fn format_polynomial(terms: &[(u32, u32, RadicalSum)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(_, _, c)| *c != RadicalSum::zero())
        .map(|(i, j, c)| {
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let f = |v: &str, e: u32| match e {
                        0 => String::new(),
                        1 => v.to_string(),
                        _ => format!("{v}^{e}"),
                    };
                    [f("s", *i), f("t", *j)].into_iter().filter(|x| !x.is_empty()).collect::<Vec<_>>().join("*")
                }
            };
            let coeff = c.to_string();
            match (mono.is_empty(), coeff.as_str()) {
                (true, _) => format!("({coeff})"),
                (false, "1") => mono,
                (false, "-1") => format!("-{mono}"),
                _ => format!("({coeff})*{mono}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for ChamberReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} chambers, {} walls, degree {}", self.model, self.chambers.len(), self.walls.len(), self.degree)?;
        for c in &self.chambers {
            match &c.polynomial {
                Some(p) => writeln!(f, "  {} ({} points): {}", c.key, c.points, format_polynomial(p))?,
                None => writeln!(f, "  {} ({} points): no polynomial fit, {} misfits", c.key, c.points, c.misfits)?,
            }
        }
        for w in &self.walls {
            writeln!(f, "  wall {} ({} points){}", w.key, w.points, if w.continuous { "" } else { ", discontinuous" })?;
        }
        Ok(())
    }
}

fn monomials(degree: u32) -> Vec<(u32, u32)> {
    (0..=degree)
        .flat_map(|total| (0..=total).rev().map(move |i| (i, total - i)))
        .collect()
}

fn eval_row(monos: &[(u32, u32)], s: &Rat, t: &Rat) -> Vec<Rat> {
    monos.iter().map(|&(i, j)| pow(s, i) * pow(t, j)).collect()
}

fn eval_poly(row: &[Rat], coeffs: &[RadicalSum]) -> RadicalSum {
    let mut acc = RadicalSum::zero();
    for (r, c) in row.iter().zip(coeffs) {
        acc.add_scaled(c, r);
    }
    acc
}

/// Interpolates on a greedily chosen unisolvent subset and checks the rest.
/// Returns `None` when the group has no unisolvent subset.
fn fit_group(monos: &[(u32, u32)], pts: &[(Rat, Rat, RadicalSum)]) -> Option<(Option<Vec<RadicalSum>>, usize)> {
    let k = monos.len();
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (idx, (s, t, _)) in pts.iter().enumerate() {
        let row = eval_row(monos, s, t);
        rows.push(row);
        if rank(&rows) > chosen.len() {
            chosen.push(idx);
        } else {
            rows.pop();
        }
        if chosen.len() == k {
            break;
        }
    }
    if chosen.len() < k {
        return None;
    }
    // Values may mix radicals, so solve V c = f through the columns of V^-1.
    let mut coeffs = vec![RadicalSum::zero(); k];
    let inverse_cols: Vec<Vec<Rat>> = (0..k)
        .map(|col| {
            let e: Vec<Rat> = (0..k).map(|r| if r == col { Rat::one() } else { Rat::zero() }).collect();
            solve(&rows, &e).expect("unisolvent rows are invertible")
        })
        .collect();
    for (col, &idx) in chosen.iter().enumerate() {
        for (m, c) in coeffs.iter_mut().enumerate() {
            c.add_scaled(&pts[idx].2, &inverse_cols[col][m]);
        }
    }
    let misfits = pts
        .iter()
        .filter(|(s, t, v)| eval_poly(&eval_row(monos, s, t), &coeffs) != *v)
        .count();
    Some((if misfits == 0 { Some(coeffs) } else { None }, misfits))
}

/// Groups slice points by [`chamber_key`] and fits a polynomial of the given
/// degree in the slice coordinates `(s, t)` on each group.
pub fn chamber_fit(model: &Model, slice: &Slice, degree: u32) -> Result<ChamberReport> {
    let monos = monomials(degree);
    let mut groups: BTreeMap<String, Vec<(Rat, Rat, RadicalSum)>> = BTreeMap::new();
    let mut skipped = 0;
    for (_, _, s, t, p) in slice.grid() {
        let Some(key) = chamber_key(model, &p)? else {
            skipped += 1;
            continue;
        };
        let value = vol_value(model, &p)?
            .radical_sum()
            .ok_or_else(|| Error::UnsupportedModel("chamber fitting needs exact volumes".into()))?;
        groups.entry(key).or_default().push((s, t, value));
    }
    let mut chambers = Vec::new();
    let mut thin = Vec::new();
    for (key, pts) in groups {
        match fit_group(&monos, &pts) {
            Some((poly, misfits)) => chambers.push(Chamber {
                key,
                points: pts.len(),
                polynomial: poly.map(|c| monos.iter().zip(c).map(|(&(i, j), c)| (i, j, c)).collect()),
                misfits,
            }),
            None => thin.push((key, pts)),
        }
    }
    let fitted: Vec<Vec<RadicalSum>> = chambers
        .iter()
        .filter_map(|c| c.polynomial.as_ref().map(|p| p.iter().map(|(_, _, c)| c.clone()).collect()))
        .collect();
    let walls = thin
        .into_iter()
        .map(|(key, pts)| Wall {
            continuous: pts
                .iter()
                .all(|(s, t, v)| fitted.iter().any(|c| eval_poly(&eval_row(&monos, s, t), c) == *v)),
            key,
            points: pts.len(),
        })
        .collect();
    Ok(ChamberReport {
        model: model.kind().to_string(),
        degree,
        chambers,
        walls,
        skipped,
    })
}

/// Count of grid points per chamber key, for refinement comparisons.
pub fn chamber_keys(model: &Model, slice: &Slice) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for (_, _, _, _, p) in slice.grid() {
        if let Some(k) = chamber_key(model, &p)? {
            *out.entry(k).or_insert(0) += 1;
        }
    }
    Ok(out)
}

pub fn f64_of(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::presets;

    fn c(xs: &[i64]) -> NSClass {
        NSClass::from_ints(xs)
    }

    #[test]
    fn log_concavity_examples() {
        let m = presets::blowup_pd(3).unwrap();
        let a = m.ample();
        assert_eq!(log_concavity_margin(&m, &a, &a).unwrap(), (0.0, true));
        let (margin, exact) = log_concavity_margin(&m, &c(&[2, -1]), &c(&[1, 0])).unwrap();
        assert!(!exact && margin >= -LOG_CONCAVITY_TOLERANCE);
        let r = check_log_concavity(&m, 3, 200).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.samples, 200);
    }

    #[test]
    fn reports_are_reproducible() {
        let m = presets::split_ruled(2);
        let a = check_log_concavity(&m, 11, 50).unwrap();
        let b = check_log_concavity(&m, 11, 50).unwrap();
        assert_eq!(a.record_lines(), b.record_lines());
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn homogeneity_examples() {
        let m = presets::blowup_pd(2).unwrap();
        let v = vol_value(&m, &c(&[6, -3])).unwrap();
        assert_eq!(v.as_rat(), Some(&int(27)));
        let r = check_homogeneity(&m, 1, 20, &[int(1), int(3), rat(1, 2)]).unwrap();
        assert!(r.passed(), "{r}");
        let s = presets::split_ruled(2);
        let r = check_homogeneity(&s, 1, 20, &[int(2)]).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn invariance() {
        let m = presets::blowup_pd(2).unwrap();
        let r = check_numerical_invariance(&m, 5, 10).unwrap();
        assert!(r.passed(), "{r}");
        assert!(matches!(
            check_numerical_invariance(&presets::split_ruled(2), 5, 1),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn slices() {
        let s: Slice = "0,0;1,0;0,1;-2;2;4".parse().unwrap();
        assert_eq!(s.grid().len(), 25);
        assert_eq!(s.coordinate(1), int(-1));
        assert!("0,0;0,0;0,1;-2;2;4".parse::<Slice>().is_err());
        assert!("0,0;1,1;2,2;-2;2;4".parse::<Slice>().is_err());
        assert_eq!(s.to_string().parse::<Slice>().unwrap(), s);
    }

    #[test]
    fn blowup_chambers() {
        let m = presets::blowup_pd(2).unwrap();
        let s: Slice = "0,0;1,0;0,1;-2;2;8".parse().unwrap();
        let r = chamber_fit(&m, &s, 2).unwrap();
        assert_eq!(r.chambers.len(), 3, "{r}");
        assert!(r.piecewise_polynomial());
        assert!(r.walls.iter().all(|w| w.continuous), "{r}");
        let polys: Vec<String> = r.chambers.iter().map(|c| format_polynomial(c.polynomial.as_ref().unwrap())).collect();
        assert!(polys.contains(&"s^2 + -t^2".to_string()), "{polys:?}");
        assert!(polys.contains(&"s^2".to_string()), "{polys:?}");
        assert!(polys.contains(&"0".to_string()), "{polys:?}");
        let surface = chamber_fit(&presets::blowup_surface().unwrap(), &s, 2).unwrap();
        assert_eq!(surface.chambers.len(), 3, "{surface}");
    }

    #[test]
    fn lipschitz_blowup() {
        let m = presets::blowup_pd(2).unwrap();
        let s: Slice = "0,0;1,0;0,1;0;2;8".parse().unwrap();
        let r = check_lipschitz(&m, &s);
        assert!(r.passed(), "{r}");
    }
}
