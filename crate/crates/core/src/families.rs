//! Multigraded families of monomial ideals, given as rules `m -> a_m`.
//!
//! An ideal is stored by its minimal monomial generators (exponent vectors);
//! the unit ideal is the one generated by the zero exponent. Orders are
//! weighted: `ord(a) = min <lambda, alpha>` over generators, total degree by
//! default.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::catalog::ToricModel;
use crate::cone::PolyCone;
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::polytope::CountBudget;
use crate::scalar::{ceil_i64, int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialIdeal {
    Zero,
    Generators(Vec<Vec<i64>>),
}

fn divides(g: &[i64], alpha: &[i64]) -> bool {
    g.iter().zip(alpha).all(|(a, b)| a <= b)
}

impl MonomialIdeal {
    pub fn unit(vars: usize) -> Self {
        MonomialIdeal::Generators(vec![vec![0; vars]])
    }

    /// Keeps only the minimal generators, sorted.
    pub fn from_generators(mut gens: Vec<Vec<i64>>) -> Self {
        if gens.is_empty() {
            return MonomialIdeal::Zero;
        }
        gens.sort();
        gens.dedup();
        let minimal: Vec<Vec<i64>> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && divides(h, g)))
            .cloned()
            .collect();
        MonomialIdeal::Generators(minimal)
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        match self {
            MonomialIdeal::Zero => &[],
            MonomialIdeal::Generators(g) => g,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MonomialIdeal::Zero)
    }

    pub fn is_unit(&self) -> bool {
        self.generators().iter().any(|g| g.iter().all(|&x| x == 0))
    }

    pub fn contains(&self, alpha: &[i64]) -> bool {
        self.generators().iter().any(|g| divides(g, alpha))
    }

    pub fn order(&self, weights: &[Rat]) -> Option<Rat> {
        self.generators()
            .iter()
            .map(|g| g.iter().zip(weights).map(|(&a, w)| w * int(a)).sum::<Rat>())
            .min()
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self
            .generators()
            .iter()
            .flat_map(|a| {
                other
                    .generators()
                    .iter()
                    .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
            })
            .collect();
        MonomialIdeal::from_generators(gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialIdeal::Zero => write!(f, "(0)"),
            MonomialIdeal::Generators(_) if self.is_unit() => write!(f, "(1)"),
            MonomialIdeal::Generators(g) => {
                let parts: Vec<String> = g
                    .iter()
                    .map(|a| {
                        let vars: Vec<String> = a
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                            .collect();
                        vars.join("*")
                    })
                    .collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

/// Affine form `c0 + sum_k c_k m_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub constant: Rat,
    pub coeffs: Vec<Rat>,
}

impl LinearForm {
    pub fn new(constant: Rat, coeffs: Vec<Rat>) -> Self {
        LinearForm { constant, coeffs }
    }

    pub fn eval(&self, m: &[i64]) -> Rat {
        self.coeffs
            .iter()
            .zip(m)
            .fold(self.constant.clone(), |acc, (c, &x)| acc + c * int(x))
    }

    /// Parses forms such as `m1+2m2`, `3 - m1`, `1/2m1 + m2`; variables are
    /// `m1..m_rank`.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Config("empty linear form".into()));
        }
        let mut form = LinearForm::new(Rat::zero(), vec![Rat::zero(); rank]);
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(t)),
            };
            let bad = || Error::Config(format!("cannot parse term `{t}` of linear form `{s}`"));
            match body.find('m') {
                Some(pos) => {
                    let coeff = match body[..pos].trim_end_matches('*') {
                        "" => int(1),
                        c => crate::scalar::parse_rat(c).map_err(|_| bad())?,
                    };
                    let k: usize = body[pos + 1..].parse().map_err(|_| bad())?;
                    if k == 0 || k > rank {
                        return Err(Error::Config(format!("variable m{k} outside m1..m{rank}")));
                    }
                    form.coeffs[k - 1] += coeff * int(sign);
                }
                None => form.constant += crate::scalar::parse_rat(body).map_err(|_| bad())? * int(sign),
            }
        }
        Ok(form)
    }
}

pub type CustomRule = Arc<dyn Fn(&[i64]) -> MonomialIdeal + Send + Sync>;

#[derive(Clone)]
pub enum Rule {
    /// `{ |alpha| >= L(m) }`.
    Threshold(LinearForm),
    /// `{ <lambda, alpha> >= L(m) }` for positive integer weights.
    Weighted { lambda: Vec<i64>, form: LinearForm },
    /// Principal ideal with exponent `sum_k m_k E_k`; zero when some
    /// exponent is negative.
    Principal(Vec<Vec<i64>>),
    /// Listed values; unlisted indices give the zero ideal.
    Table(BTreeMap<Vec<i64>, MonomialIdeal>),
    /// Base ideals of `|sum_k m_k B_k|` on the chart of a smooth maximal cone.
    Toric {
        model: Box<ToricModel>,
        chart: Vec<usize>,
        divisors: Vec<Vec<Rat>>,
    },
    Custom(CustomRule),
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Threshold(l) => write!(f, "Threshold({l:?})"),
            Rule::Weighted { lambda, form } => write!(f, "Weighted({lambda:?}, {form:?})"),
            Rule::Principal(e) => write!(f, "Principal({e:?})"),
            Rule::Table(t) => write!(f, "Table({} entries)", t.len()),
            Rule::Toric { chart, .. } => write!(f, "Toric(chart {chart:?})"),
            Rule::Custom(_) => write!(f, "Custom"),
        }
    }
}

fn weighted_region(lambda: &[i64], level: &Rat) -> MonomialIdeal {
    let d = lambda.len();
    if !level.is_positive() {
        return MonomialIdeal::unit(d);
    }
    let caps: Vec<i64> = lambda.iter().map(|&w| ceil_i64(&(level / int(w)))).collect();
    let mut gens = Vec::new();
    let mut alpha = vec![0i64; d];
    loop {
        let value: i64 = alpha.iter().zip(lambda).map(|(a, w)| a * w).sum();
        if int(value) >= *level {
            let minimal = (0..d).all(|j| alpha[j] == 0 || int(value - lambda[j]) < *level);
            if minimal {
                gens.push(alpha.clone());
            }
        }
        let mut j = 0;
        loop {
            if j == d {
                return MonomialIdeal::from_generators(gens);
            }
            alpha[j] += 1;
            if alpha[j] <= caps[j] {
                break;
            }
            alpha[j] = 0;
            j += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonomialIdealFamily {
    rank: usize,
    vars: usize,
    rule: Rule,
    weights: Vec<Rat>,
}

impl MonomialIdealFamily {
    pub fn new(rank: usize, vars: usize, rule: Rule) -> Result<Self> {
        if rank == 0 || vars == 0 {
            return Err(Error::Config("family rank and variable count must be positive".into()));
        }
        let ok = match &rule {
            Rule::Threshold(l) => l.coeffs.len() == rank,
            Rule::Weighted { lambda, form } => {
                lambda.len() == vars && lambda.iter().all(|&w| w > 0) && form.coeffs.len() == rank
            }
            Rule::Principal(e) => e.len() == rank && e.iter().all(|g| g.len() == vars),
            Rule::Table(t) => t.keys().all(|k| k.len() == rank),
            Rule::Toric { model, chart, divisors } => {
                if !model.is_smooth_cone(chart) {
                    return Err(Error::UnsupportedChart(format!("cone {chart:?} is not smooth")));
                }
                divisors.len() == rank && vars == model.dim()
            }
            Rule::Custom(_) => true,
        };
        if !ok {
            return Err(Error::Config("rule does not match the family rank and variable count".into()));
        }
        Ok(MonomialIdealFamily {
            rank,
            vars,
            rule,
            weights: vec![int(1); vars],
        })
    }

    /// Replaces total degree by the weighted order `min <weights, alpha>`.
    pub fn with_weights(mut self, weights: Vec<Rat>) -> Result<Self> {
        if weights.len() != self.vars || weights.iter().any(Signed::is_negative) {
            return Err(Error::Config("weights must be nonnegative, one per variable".into()));
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn eval(&self, m: &[i64]) -> Result<MonomialIdeal> {
        if m.len() != self.rank {
            return Err(Error::InvalidOperands(format!("index {m:?} does not have rank {}", self.rank)));
        }
        if m.iter().all(|&x| x == 0) {
            return Ok(MonomialIdeal::unit(self.vars));
        }
        Ok(match &self.rule {
            Rule::Threshold(l) => weighted_region(&vec![1; self.vars], &l.eval(m)),
            Rule::Weighted { lambda, form } => weighted_region(lambda, &form.eval(m)),
            Rule::Principal(e) => {
                let alpha: Vec<i64> = (0..self.vars)
                    .map(|j| e.iter().zip(m).map(|(g, &k)| g[j] * k).sum())
                    .collect();
                if alpha.iter().any(|&a| a < 0) {
                    MonomialIdeal::Zero
                } else {
                    MonomialIdeal::from_generators(vec![alpha])
                }
            }
            Rule::Table(t) => t.get(m).cloned().unwrap_or(MonomialIdeal::Zero),
            Rule::Toric { model, chart, divisors } => {
                let n = model.rays().len();
                let divisor: Vec<Rat> = (0..n)
                    .map(|i| divisors.iter().zip(m).map(|(b, &k)| &b[i] * int(k)).sum())
                    .collect();
                let p = model.polytope(&divisor)?;
                if p.is_empty() {
                    MonomialIdeal::Zero
                } else {
                    let points = p.lattice_points(1, CountBudget::default())?;
                    let gens = points
                        .iter()
                        .map(|u| {
                            chart
                                .iter()
                                .map(|&i| {
                                    let v = &model.rays()[i];
                                    let s = &divisor[i] + int(v.iter().zip(u).map(|(a, b)| a * b).sum());
                                    s.floor().to_integer().to_i64().expect("exponent fits i64")
                                })
                                .collect()
                        })
                        .collect();
                    MonomialIdeal::from_generators(gens)
                }
            }
            Rule::Custom(f) => f(m),
        })
    }

    pub fn order(&self, m: &[i64]) -> Result<Option<Rat>> {
        Ok(self.eval(m)?.order(&self.weights))
    }
}

pub fn family_from_toric(model: &ToricModel, chart: &[usize], divisors: Vec<Vec<Rat>>) -> Result<MonomialIdealFamily> {
    if divisors.iter().any(|d| d.len() != model.rays().len()) {
        return Err(Error::Config("divisors must list one coefficient per ray".into()));
    }
    MonomialIdealFamily::new(
        divisors.len(),
        model.dim(),
        Rule::Toric {
            model: Box::new(model.clone()),
            chart: chart.to_vec(),
            divisors,
        },
    )
}

/// Integer box `lo <= m <= hi`, coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl IndexBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        IndexBox { lo, hi }
    }

    pub fn cube(rank: usize, lo: i64, hi: i64) -> Self {
        IndexBox::new(vec![lo; rank], vec![hi; rank])
    }

    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        for (l, h) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (*l..=*h).map(move |x| {
                        let mut p = p.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub m: Vec<i64>,
    pub l: Vec<i64>,
    pub product_generator: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativityReport {
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl MultiplicativityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `a_m a_l ⊆ a_{m+l}` for all `m, l` in the box.
pub fn verify_multiplicativity(family: &MonomialIdealFamily, bx: &IndexBox) -> Result<MultiplicativityReport> {
    let points = bx.points();
    let mut cache: BTreeMap<Vec<i64>, MonomialIdeal> = BTreeMap::new();
    let mut get = |m: &Vec<i64>| -> Result<MonomialIdeal> {
        if let Some(v) = cache.get(m) {
            return Ok(v.clone());
        }
        let v = family.eval(m)?;
        cache.insert(m.clone(), v.clone());
        Ok(v)
    };
    let mut report = MultiplicativityReport {
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for m in &points {
        for l in &points {
            if m > l {
                continue;
            }
            report.pairs_checked += 1;
            let am = get(m)?;
            let al = get(l)?;
            let sum: Vec<i64> = m.iter().zip(l).map(|(a, b)| a + b).collect();
            let target = get(&sum)?;
            for g in am.product(&al).generators() {
                if !target.contains(g) {
                    report.violations.push(Violation {
                        m: m.clone(),
                        l: l.clone(),
                        product_generator: g.clone(),
                    });
                    break;
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrdBracket {
    /// `min_{k <= K} ord(a_{k m}) / k`.
    pub value: Rat,
    /// `(k, ord(a_{k m}) / k)` for each `k` with a nonzero ideal.
    pub sequence: Vec<(i64, Rat)>,
    /// Running minimum of the sequence; nonincreasing.
    pub running_min: Vec<Rat>,
}

pub fn asymptotic_ord0(family: &MonomialIdealFamily, direction: &[i64], depth: i64) -> Result<OrdBracket> {
    let mut sequence = Vec::new();
    let mut running_min: Vec<Rat> = Vec::new();
    for k in 1..=depth.max(1) {
        let m: Vec<i64> = direction.iter().map(|x| x * k).collect();
        if let Some(o) = family.order(&m)? {
            let v = o / int(k);
            let best = match running_min.last() {
                Some(b) if *b < v => b.clone(),
                _ => v.clone(),
            };
            running_min.push(best);
            sequence.push((k, v));
        }
    }
    match running_min.last() {
        None => Err(Error::NotEffective(format!(
            "a_(k m) is zero for m = {direction:?} and all k <= {depth}"
        ))),
        Some(v) => Ok(OrdBracket {
            value: v.clone(),
            sequence,
            running_min,
        }),
    }
}

#[derive(Clone, Debug)]
pub struct ConeEstimate {
    pub nef: PolyCone<Rat>,
    pub psef: PolyCone<Rat>,
    pub index_box: IndexBox,
}

/// Inner approximations: nef from indices with unit ideal, pseudoeffective
/// from indices with nonzero ideal.
pub fn cones_estimate(family: &MonomialIdealFamily, bx: &IndexBox) -> Result<ConeEstimate> {
    let mut nef = Vec::new();
    let mut psef = Vec::new();
    for m in bx.points() {
        if m.iter().all(|&x| x == 0) {
            continue;
        }
        let a = family.eval(&m)?;
        let v: Vec<Rat> = m.iter().map(|&x| int(x)).collect();
        if a.is_unit() {
            nef.push(v.clone());
        }
        if !a.is_zero() {
            psef.push(v);
        }
    }
    Ok(ConeEstimate {
        nef: PolyCone::new(family.rank(), nef),
        psef: PolyCone::new(family.rank(), psef),
        index_box: bx.clone(),
    })
}

/// Whether the box holds `rank` linearly independent indices with unit ideal.
pub fn has_ample_indices(family: &MonomialIdealFamily, bx: &IndexBox) -> Result<bool> {
    let mut units = Vec::new();
    for m in bx.points() {
        if m.iter().any(|&x| x != 0) && family.eval(&m)?.is_unit() {
            units.push(m.iter().map(|&x| int(x)).collect::<Vec<Rat>>());
        }
    }
    Ok(rank(&units) == family.rank())
}

/// Integer affine grid `origin + i u + j v`, `0 <= i, j <= steps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSlice {
    pub origin: Vec<i64>,
    pub u: Vec<i64>,
    pub v: Vec<i64>,
    pub steps: i64,
}

impl GridSlice {
    pub fn point(&self, i: i64, j: i64) -> Vec<i64> {
        (0..self.origin.len())
            .map(|k| self.origin[k] + i * self.u[k] + j * self.v[k])
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    /// `(i, j, ord)`; `None` where the family is zero to the given depth.
    pub values: Vec<(i64, i64, Option<Rat>)>,
    /// `(i, j, d_i, d_j)` forward first differences.
    pub first_differences: Vec<(i64, i64, Rat, Rat)>,
    /// `(i, j, d_ii, d_jj)` central second differences at interior points.
    pub second_differences: Vec<(i64, i64, Rat, Rat)>,
    pub max_second_difference: Rat,
    /// Interior points where some second difference is nonzero, i.e. where
    /// the gradient estimate jumps.
    pub creases: Vec<(i64, i64)>,
    pub ample_indices: bool,
}

pub fn regularity_scan(family: &MonomialIdealFamily, slice: &GridSlice, depth: i64) -> Result<RegularityReport> {
    if slice.origin.len() != family.rank() || slice.u.len() != family.rank() || slice.v.len() != family.rank() {
        return Err(Error::Config("slice vectors must have the family rank".into()));
    }
    if slice.u.iter().all(|&x| x == 0) || slice.v.iter().all(|&x| x == 0) {
        return Err(Error::Config("slice directions must be nonzero".into()));
    }
    let n = slice.steps;
    let mut grid: BTreeMap<(i64, i64), Option<Rat>> = BTreeMap::new();
    for i in 0..=n {
        for j in 0..=n {
            let v = match asymptotic_ord0(family, &slice.point(i, j), depth) {
                Ok(b) => Some(b.value),
                Err(Error::NotEffective(_)) => None,
                Err(e) => return Err(e),
            };
            grid.insert((i, j), v);
        }
    }
    let at = |i: i64, j: i64| grid.get(&(i, j)).cloned().flatten();
    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut creases = Vec::new();
    let mut max2 = Rat::zero();
    for i in 0..=n {
        for j in 0..=n {
            let Some(f) = at(i, j) else { continue };
            if let (Some(fi), Some(fj)) = (at(i + 1, j), at(i, j + 1)) {
                first.push((i, j, &fi - &f, &fj - &f));
            }
            if let (Some(a), Some(b), Some(c), Some(d)) = (at(i - 1, j), at(i + 1, j), at(i, j - 1), at(i, j + 1)) {
                let dii = &a + &b - int(2) * &f;
                let djj = &c + &d - int(2) * &f;
                for x in [&dii, &djj] {
                    if x.abs() > max2 {
                        max2 = x.abs();
                    }
                }
                if !dii.is_zero() || !djj.is_zero() {
                    creases.push((i, j));
                }
                second.push((i, j, dii, djj));
            }
        }
    }
    let span: Vec<i64> = (0..family.rank())
        .map(|k| slice.origin[k].abs() + n * (slice.u[k].abs() + slice.v[k].abs()))
        .collect();
    let bx = IndexBox::new(span.iter().map(|s| -s).collect(), span);
    let ample_indices = has_ample_indices(family, &bx)?;
    Ok(RegularityReport {
        values: grid.into_iter().map(|((i, j), v)| (i, j, v)).collect(),
        first_differences: first,
        second_differences: second,
        max_second_difference: max2,
        creases,
        ample_indices,
    })
}
