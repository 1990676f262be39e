use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;

use asyminv::cone::PolyCone;
use asyminv::catalog::{presets, Model, NSClass};
use asyminv::config::{parse_model_file, ModelFile};
use asyminv::engine::{self, fujita_sweep, hhat, oracle_tolerance, restricted_vol, vol, vol_oracle, Budget, Value};
use asyminv::families::{
    asymptotic_ord0, cones_estimate, regularity_scan, verify_multiplicativity, GridSlice, IndexBox,
};
use asyminv::harness::{
    chamber_fit, check_homogeneity, check_lipschitz, check_log_concavity, check_numerical_invariance, PropertyReport,
    Slice,
};
use asyminv::polytope::CountBudget;
use asyminv::scalar::{int, lcm_of_denominators, rat, rat_to_f64};
use asyminv::{Error, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::json;

use crate::output::{Cell, Report, Table};
use crate::{CheckArgs, EvalArgs, FamilyArgs, GridArgs, Property, SweepArgs, What, ZariskiArgs};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Compute(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Config(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) | CliError::Compute(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Config(_) | Error::InvalidScalar(_) => CliError::Config(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

type Out = Result<Report, CliError>;

fn config(e: impl fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

pub fn budget(max_points: Option<u64>) -> Budget {
    let mut b = Budget::default();
    if let Some(n) = max_points {
        b.points = CountBudget { max_points: n };
    }
    b
}

/// A model file path, or a preset name when no such file exists.
fn load(spec: &str) -> Result<ModelFile, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| config(format!("{spec}: {e}")))?;
        return parse_model_file(&text).map_err(|e| config(format!("{spec}: {e}")));
    }
    let model = presets::by_name(spec).map_err(|e| config(format!("{e} (and no file `{spec}`)")))?;
    Ok(ModelFile { model: Some(model), family: None })
}

fn model_of(spec: &str) -> Result<Model, CliError> {
    load(spec)?
        .model
        .ok_or_else(|| config(format!("{spec}: no model section")))
}

fn class_of(model: &Model, s: &str) -> Result<NSClass, CliError> {
    let c: NSClass = s.parse().map_err(|e| config(format!("--class: {e}")))?;
    model.check_class(&c).map_err(config)?;
    Ok(c)
}

fn slice_of(model: &Model, s: &str) -> Result<Slice, CliError> {
    let slice: Slice = s.parse().map_err(config)?;
    model.check_class(&slice.origin).map_err(config)?;
    Ok(slice)
}

/// Number of valuations `ord` and `rvol` accept on this model.
fn valuation_count(model: &Model, what: What) -> Result<usize, CliError> {
    match (model, what) {
        (Model::Surface(s), What::Ord) => Ok(s.curves().len()),
        (m, What::Ord | What::Rvol) => m.toric().map(|t| t.rays().len()).ok_or_else(|| {
            CliError::Compute(format!("{what:?} is not available on {} models", model.kind()).to_lowercase())
        }),
        _ => Ok(0),
    }
}

fn valuations(model: &Model, what: What, ray: Option<usize>) -> Result<Vec<usize>, CliError> {
    let n = valuation_count(model, what)?;
    match ray {
        Some(r) if r >= n => Err(config(format!("--ray {r} out of range: the model has {n} valuations"))),
        Some(r) => Ok(vec![r]),
        None => Ok((0..n).collect()),
    }
}

/// Doubling schedule ending at `to`.
pub fn schedule(to: i64) -> Vec<i64> {
    let mut v = Vec::new();
    let mut m = to;
    while m >= 1 {
        v.push(m);
        m /= 2;
    }
    v.reverse();
    v
}

fn relative_error(approx: f64, target: f64) -> f64 {
    if target == 0.0 {
        approx.abs()
    } else {
        ((approx - target) / target).abs()
    }
}

fn invariant(model: &Model, what: What, index: usize, class: &NSClass) -> asyminv::Result<Rat> {
    match what {
        What::Ord => engine::ord(model, index, class),
        What::Rvol => restricted_vol(model, index, class),
        What::Hhat => hhat(model, class).map(|h| h.values[index].clone()),
        What::Vol => unreachable!(),
    }
}

pub fn eval(a: &EvalArgs, budget: Budget) -> Out {
    let model = model_of(&a.model)?;
    let class = class_of(&model, &a.class)?;
    let indices = valuations(&model, a.what, a.ray)?;
    if matches!(a.to, Some(m) if m < 1) {
        return Err(config("--to must be positive"));
    }
    let mut t = Table::new(&["class", "invariant", "index", "value", "provenance"]);
    let mut plain = Vec::new();
    let label = |w: What| format!("{w:?}").to_lowercase();
    match a.what {
        What::Vol => {
            let r = vol(&model, &class)?;
            t.push(vec![
                Cell::text(class.to_string()),
                Cell::text("vol"),
                Cell::text(""),
                Cell::value(&r.value),
                Cell::text(r.provenance.to_string()),
            ]);
            plain.push(format!("{} ({})", r.value, r.provenance));
        }
        What::Hhat => {
            let h = hhat(&model, &class)?;
            for (i, v) in h.values.iter().enumerate() {
                t.push(vec![
                    Cell::text(class.to_string()),
                    Cell::text("hhat"),
                    Cell::text(i.to_string()),
                    Cell::rat(v),
                    Cell::text("closed_form"),
                ]);
            }
            let vs: Vec<String> = h.values.iter().map(ToString::to_string).collect();
            plain.push(format!("[{}] (closed_form)", vs.join(", ")));
        }
        w => {
            for &i in &indices {
                let v = invariant(&model, w, i, &class)?;
                t.push(vec![
                    Cell::text(class.to_string()),
                    Cell::text(label(w)),
                    Cell::text(i.to_string()),
                    Cell::rat(&v),
                    Cell::text("closed_form"),
                ]);
                plain.push(if a.ray.is_some() {
                    format!("{v} (closed_form)")
                } else {
                    format!("{i}: {v} (closed_form)")
                });
            }
        }
    }
    if let Some(to) = a.to {
        let r = vol_oracle(&model, &class, &schedule(to), budget)?;
        t.push(vec![
            Cell::text(class.to_string()),
            Cell::text("vol"),
            Cell::text(""),
            Cell::value(&r.value),
            Cell::text(r.provenance.to_string()),
        ]);
        plain.push(format!("{} ({}, m = {to})", r.value, r.provenance));
    }
    let mut report = Report::new("eval", t);
    report.plain = Some(plain.join("\n"));
    Ok(report)
}

fn na_or<T>(r: asyminv::Result<T>, cell: impl FnOnce(T) -> Cell) -> Result<Cell, CliError> {
    match r {
        Ok(v) => Ok(cell(v)),
        Err(Error::UnsupportedClass(_) | Error::UnsupportedModel(_) | Error::NotBig(_) | Error::NotPseudoeffective(_)) => {
            Ok(Cell::text("n/a"))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn grid(a: &GridArgs) -> Out {
    let model = model_of(&a.model)?;
    let slice = slice_of(&model, &a.slice)?;
    let mut columns = vec!["i".to_string(), "j".into(), "s".into(), "t".into(), "class".into(), "vol".into()];
    let extra: Vec<usize> = match a.what {
        What::Vol => Vec::new(),
        What::Hhat => (0..=model.dimension()).collect(),
        w => match valuations(&model, w, a.ray) {
            Ok(v) => v,
            Err(CliError::Compute(_)) => Vec::new(),
            Err(e) => return Err(e),
        },
    };
    let name = format!("{:?}", a.what).to_lowercase();
    columns.extend(extra.iter().map(|i| format!("{name}{i}")));
    let mut t = Table {
        columns,
        rows: Vec::new(),
    };
    for (i, j, s, tt, c) in slice.grid() {
        let mut row = vec![
            Cell::text(i.to_string()),
            Cell::text(j.to_string()),
            Cell::rat(&s),
            Cell::rat(&tt),
            Cell::text(c.to_string()),
            na_or(vol(&model, &c), |r| Cell::value(&r.value))?,
        ];
        if a.what == What::Hhat {
            match hhat(&model, &c) {
                Ok(h) => row.extend(h.values.iter().map(Cell::rat)),
                Err(e) => {
                    let cell = na_or::<()>(Err(e), |_| unreachable!())?;
                    row.extend(extra.iter().map(|_| cell.clone()));
                }
            }
        } else {
            for &k in &extra {
                row.push(na_or(invariant(&model, a.what, k, &c), |v| Cell::rat(&v))?);
            }
        }
        t.push(row);
    }
    let mut report = Report::new("grid", t);
    report.extra.insert("slice".into(), json!(slice.to_string()));
    Ok(report)
}

pub fn sweep(a: &SweepArgs, budget: Budget) -> Out {
    let model = model_of(&a.model)?;
    let class = match &a.class {
        Some(s) => class_of(&model, s)?,
        None if matches!(model, Model::Cutkosky(_)) => NSClass::from_ints(&[0, 0, 0]),
        None => model.ample(),
    };
    if a.to < 1 {
        return Err(config("--to must be positive"));
    }
    let sched = schedule(a.to);
    let target = vol(&model, &class)?;
    let tv = target.value.to_f64();
    let mut t = Table::new(&["m", "vol_m", "relative_error"]);
    let tolerance = oracle_tolerance(&model);
    let (exact_match, last_err) = match &model {
        Model::Toric(_) | Model::Blowup(_) | Model::Cutkosky(_) => {
            let seq = fujita_sweep(&model, &class, &sched, budget)?;
            let mut all_equal = true;
            let mut err = 0.0;
            for (m, v) in &seq {
                err = relative_error(rat_to_f64(v), tv);
                all_equal &= Value::Exact(v.clone()).exact_eq(&target.value) == Some(true);
                t.push(vec![Cell::text(m.to_string()), Cell::rat(v), Cell::text(format!("{err:.3e}"))]);
            }
            (model.toric().is_some().then_some(all_equal), err)
        }
        _ => {
            let r = vol_oracle(&model, &class, &sched, budget)?;
            let mut err = 0.0;
            for (m, v) in &r.sequence {
                err = relative_error(*v, tv);
                t.push(vec![
                    Cell::text(m.to_string()),
                    Cell::Num {
                        exact: format!("{v:.9}"),
                        decimal: *v,
                    },
                    Cell::text(format!("{err:.3e}")),
                ]);
            }
            (None, err)
        }
    };
    let pass = match exact_match {
        Some(eq) => eq,
        None => last_err < tolerance,
    };
    let mut report = Report::new("sweep", t);
    report.notes.push(format!("class {class}: vol = {} ({})", target.value, target.provenance));
    report.notes.push(match exact_match {
        Some(eq) => format!("vol_m = vol exactly at every level: {}", if eq { "PASS" } else { "FAIL" }),
        None => format!(
            "final relative error {last_err:.3e} (tolerance {tolerance}): {}",
            if pass { "PASS" } else { "FAIL" }
        ),
    });
    report.extra.insert("target".into(), json!({"exact": target.value.to_string(), "decimal": tv}));
    report.extra.insert("final_relative_error".into(), json!(last_err));
    report.extra.insert("tolerance".into(), json!(tolerance));
    report.pass = pass;
    Ok(report)
}

pub fn zariski(a: &ZariskiArgs) -> Out {
    let model = model_of(&a.model)?;
    let Model::Surface(s) = &model else {
        return Err(config(format!("zariski needs a surface model, not {}", model.kind())));
    };
    let class = class_of(&model, &a.class)?;
    let z = engine::zariski(s, &class)?;
    let mut t = Table::new(&["part", "class", "coefficient"]);
    t.push(vec![Cell::text("P"), Cell::text(z.positive.to_string()), Cell::text("")]);
    t.push(vec![Cell::text("N"), Cell::text(z.negative.to_string()), Cell::text("")]);
    for (j, c) in z.support.iter().zip(&z.coefficients) {
        t.push(vec![
            Cell::text(format!("curve {j}")),
            Cell::text(s.curves()[*j].to_string()),
            Cell::rat(c),
        ]);
    }
    let q = s.q(&z.positive);
    let mut report = Report::new("zariski", t);
    report.plain = Some(format!(
        "P = {}\nN = {}\nsupport {:?} coefficients [{}]\nvol = P^2 = {q} (closed_form)",
        z.positive,
        z.negative,
        z.support,
        z.coefficients.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    ));
    report.extra.insert("vol".into(), json!({"exact": q.to_string(), "decimal": rat_to_f64(&q)}));
    Ok(report)
}

fn ints(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| config(format!("{what}: expected comma-separated integers, got `{s}`")))
}

fn family_text(a: &FamilyArgs) -> Result<String, CliError> {
    let mut text = String::new();
    if let Some(spec) = &a.model {
        if Path::new(spec).is_file() {
            text = fs::read_to_string(spec).map_err(|e| config(format!("{spec}: {e}")))?;
            text.push('\n');
        } else {
            presets::by_name(spec).map_err(|e| config(format!("{e} (and no file `{spec}`)")))?;
            text = format!("model preset {spec}\n");
        }
    }
    if let Some(rule) = &a.rule {
        text.push_str(&format!("family rank {} vars {}\nrule {rule}\n", a.rank, a.vars));
        if let Some(w) = &a.weights {
            text.push_str(&format!("weights {}\n", w.replace(',', " ")));
        }
    } else if a.weights.is_some() {
        return Err(config("--weights needs --rule"));
    }
    Ok(text)
}

pub fn family(a: &FamilyArgs) -> Out {
    let actions = [a.verify, a.scan, a.ord.is_some(), a.cones].iter().filter(|&&x| x).count();
    if actions > 1 {
        return Err(config("choose one of --verify, --scan, --ord, --cones"));
    }
    let file = parse_model_file(&family_text(a)?).map_err(|e| config(format!("family: {e}")))?;
    let f = file
        .family
        .ok_or_else(|| config("no family: pass --rule or a model file with a family section"))?;
    let rank = f.rank();
    let bounds = ints(&a.index_box, "--box")?;
    let [lo, hi] = bounds[..] else {
        return Err(config("--box is `lo,hi`"));
    };
    if lo > hi {
        return Err(config("--box needs lo <= hi"));
    }
    let bx = IndexBox::cube(rank, lo, hi);
    if a.depth < 1 {
        return Err(config("--depth must be positive"));
    }
    if a.verify {
        let r = verify_multiplicativity(&f, &bx)?;
        let mut t = Table::new(&["m", "l", "product_generator"]);
        for v in &r.violations {
            t.push(vec![
                Cell::text(join(&v.m)),
                Cell::text(join(&v.l)),
                Cell::text(join(&v.product_generator)),
            ]);
        }
        let mut report = Report::new("family verify", t);
        report.notes.push(format!(
            "{} pairs checked, {} violations: {}",
            r.pairs_checked,
            r.violations.len(),
            if r.passed() { "PASS" } else { "FAIL" }
        ));
        report.pass = r.passed();
        return Ok(report);
    }
    if let Some(dir) = &a.ord {
        let dir = ints(dir, "--ord")?;
        if dir.len() != rank {
            return Err(config(format!("--ord needs {rank} coordinates")));
        }
        let b = asymptotic_ord0(&f, &dir, a.depth)?;
        let mut t = Table::new(&["k", "ord_k/k", "running_min"]);
        for ((k, v), m) in b.sequence.iter().zip(&b.running_min) {
            t.push(vec![Cell::text(k.to_string()), Cell::rat(v), Cell::rat(m)]);
        }
        let mut report = Report::new("family ord", t);
        report.notes.push(format!("ord0 = {} (minimum over k = 1..{})", b.value, a.depth));
        report.extra.insert("ord0".into(), json!({"exact": b.value.to_string(), "decimal": rat_to_f64(&b.value)}));
        return Ok(report);
    }
    if a.cones {
        let est = cones_estimate(&f, &bx)?;
        let mut t = Table::new(&["cone", "generator"]);
        for (name, cone) in [("nef", &est.nef), ("psef", &est.psef)] {
            let primitive: BTreeSet<Vec<BigInt>> = cone.generators().iter().map(|g| primitive(g)).collect();
            let cone = PolyCone::new(rank, primitive.into_iter().map(|g| g.into_iter().map(Rat::from_integer).collect()).collect());
            for g in cone.irredundant().generators() {
                t.push(vec![
                    Cell::text(name),
                    Cell::text(g.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
                ]);
            }
        }
        let mut report = Report::new("family cones", t);
        report.notes.push(format!("inner estimates from the box [{lo}, {hi}]^{rank}"));
        return Ok(report);
    }
    let parts: Vec<&str> = a.grid.split(';').map(str::trim).collect();
    let [o, u, v, steps] = parts[..] else {
        return Err(config("--grid is `origin;u;v;steps`"));
    };
    let slice = GridSlice {
        origin: ints(o, "--grid")?,
        u: ints(u, "--grid")?,
        v: ints(v, "--grid")?,
        steps: steps.parse().map_err(|_| config(format!("--grid: bad step count `{steps}`")))?,
    };
    if [&slice.origin, &slice.u, &slice.v].iter().any(|x| x.len() != rank) || slice.steps < 1 {
        return Err(config(format!("--grid needs {rank}-coordinate vectors and a positive step count")));
    }
    let r = regularity_scan(&f, &slice, a.depth)?;
    let mut t = Table::new(&["i", "j", "m", "ord0"]);
    for (i, j, v) in &r.values {
        t.push(vec![
            Cell::text(i.to_string()),
            Cell::text(j.to_string()),
            Cell::text(join(&slice.point(*i, *j))),
            v.as_ref().map_or_else(|| Cell::text("n/a"), Cell::rat),
        ]);
    }
    let mut report = Report::new("family scan", t);
    report.notes.push(format!("max second difference {}", r.max_second_difference));
    report.notes.push(if r.creases.is_empty() {
        "creases: none (linear on the grid)".to_string()
    } else {
        format!("creases at {:?}", r.creases)
    });
    if !r.ample_indices {
        report.notes.push("no ample index in the box: values are not asymptotic evidence".into());
    }
    report.extra.insert(
        "second_differences".into(),
        json!(r
            .second_differences
            .iter()
            .map(|(i, j, du, dv)| json!([i, j, du.to_string(), dv.to_string()]))
            .collect::<Vec<_>>()),
    );
    report.extra.insert("creases".into(), json!(r.creases));
    Ok(report)
}

/// Positive multiple of `v` with coprime integer entries.
fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm_of_denominators(v))).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|x| x / &g).collect()
}

fn join(v: &[i64]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

const CHECK_MODELS: &[&str] = &[
    "projective_space:2",
    "blowup_pd:2",
    "blowup_pd:3",
    "hirzebruch:1",
    "blowup_surface",
    "split_ruled:2",
    "abelian_golden",
    "cutkosky_golden",
];

fn default_slice(model: &Model) -> Option<Slice> {
    let spec = match model {
        Model::Cutkosky(_) => "1,0,0,0;0,1,0,0;0,0,0,1;-1/4;1/4;8".to_string(),
        m if m.rho() >= 2 => {
            let n = m.rho();
            let e = |k: usize| (0..n).map(|i| if i == k { "1" } else { "0" }).collect::<Vec<_>>().join(",");
            format!("{};{};{};-2;2;16", vec!["0"; n].join(","), e(0), e(1))
        }
        _ => return None,
    };
    spec.parse().ok()
}

fn chambers(n: usize) -> String {
    if n == 1 {
        "1 chamber".into()
    } else {
        format!("{n} chambers")
    }
}

fn fit_degree(model: &Model) -> u32 {
    model.dimension() as u32
}

pub fn check(a: &CheckArgs) -> Out {
    let models: Vec<(String, Model)> = match &a.model {
        Some(spec) => vec![(spec.clone(), model_of(spec)?)],
        None => CHECK_MODELS
            .iter()
            .map(|s| Ok((s.to_string(), model_of(s)?)))
            .collect::<Result<_, CliError>>()?,
    };
    let explicit_slice = match (&a.slice, &a.model) {
        (Some(s), Some(_)) => Some(slice_of(&models[0].1, s)?),
        (Some(_), None) => return Err(config("--slice needs --model")),
        _ => None,
    };
    if a.n == 0 {
        return Err(config("--n must be positive"));
    }
    let props: Vec<Property> = match a.property {
        Property::All => vec![
            Property::Homogeneity,
            Property::LogConcavity,
            Property::Invariance,
            Property::Lipschitz,
            Property::ChamberFit,
        ],
        p => vec![p],
    };
    let scalars = [int(0), int(1), int(2), int(3), rat(1, 2), rat(5, 3)];
    let mut t = Table::new(&["property", "model", "samples", "violations", "worst_margin", "result"]);
    let mut records = Vec::new();
    let mut pass = true;
    let mut row = |t: &mut Table, r: &PropertyReport, name: &str| {
        let worst = if r.samples == 0 { 0.0 } else { r.worst_margin + 0.0 };
        t.push(vec![
            Cell::text(&r.property),
            Cell::text(name),
            Cell::text(r.samples.to_string()),
            Cell::text(r.violations.len().to_string()),
            Cell::text(format!("{worst:e}")),
            Cell::text(if r.passed() { "PASS" } else { "FAIL" }),
        ]);
        records.extend(r.record_lines());
        pass &= r.passed();
    };
    let skipped = |t: &mut Table, prop: &str, name: &str, why: &str| {
        t.push(vec![
            Cell::text(prop),
            Cell::text(name),
            Cell::text("0"),
            Cell::text("0"),
            Cell::text("-"),
            Cell::text(format!("skipped: {why}")),
        ]);
    };
    for p in &props {
        for (name, m) in &models {
            match p {
                Property::Homogeneity => row(&mut t, &check_homogeneity(m, a.seed, a.n, &scalars)?, name),
                Property::LogConcavity => row(&mut t, &check_log_concavity(m, a.seed, a.n)?, name),
                Property::Invariance => {
                    if m.toric().is_some() || a.model.is_some() {
                        row(&mut t, &check_numerical_invariance(m, a.seed, a.n)?, name);
                    } else {
                        skipped(&mut t, "numerical_invariance", name, "not toric");
                    }
                }
                Property::Lipschitz => match explicit_slice.clone().or_else(|| default_slice(m)) {
                    Some(s) => row(&mut t, &check_lipschitz(m, &s), name),
                    None => skipped(&mut t, "lipschitz", name, "Picard number 1"),
                },
                Property::ChamberFit => match explicit_slice.clone().or_else(|| default_slice(m)) {
                    Some(s) => {
                        let r = match chamber_fit(m, &s, fit_degree(m)) {
                            Err(Error::UnsupportedModel(_)) if a.model.is_none() => {
                                skipped(&mut t, "chamber_fit", name, "no chamber structure");
                                continue;
                            }
                            r => r?,
                        };
                        let failures = r.fit_failures();
                        let result = if failures.is_empty() {
                            format!("{}, piecewise polynomial", chambers(r.chambers.len()))
                        } else {
                            format!(
                                "{}, no polynomial fit on {}",
                                chambers(r.chambers.len()),
                                failures.iter().map(|c| c.key.as_str()).collect::<Vec<_>>().join(" / ")
                            )
                        };
                        t.push(vec![
                            Cell::text("chamber_fit"),
                            Cell::text(name),
                            Cell::text(r.chambers.iter().map(|c| c.points).sum::<usize>().to_string()),
                            Cell::text(failures.len().to_string()),
                            Cell::text("-"),
                            Cell::text(result),
                        ]);
                    }
                    None => skipped(&mut t, "chamber_fit", name, "Picard number 1"),
                },
                Property::All => unreachable!(),
            }
        }
    }
    let mut report = Report::new("check", t);
    report.notes.push(format!("seed {}, {} samples per model: {}", a.seed, a.n, if pass { "PASS" } else { "FAIL" }));
    if props.contains(&Property::ChamberFit) {
        report.notes.push("chamber_fit rows describe the chamber structure and do not affect the result".into());
    }
    if a.records {
        report.extra.insert("records".into(), json!(records));
        report.notes.extend(records);
    }
    report.pass = pass;
    Ok(report)
}

pub fn presets() -> Report {
    let mut t = Table::new(&["preset"]);
    for n in presets::NAMES {
        t.push(vec![Cell::text(*n)]);
    }
    Report::new("presets", t)
}

pub fn render(input: &str) -> Out {
    let text = if input == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(config)?
    } else {
        fs::read_to_string(input).map_err(|e| config(format!("{input}: {e}")))?
    };
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| config(format!("{input}: {e}")))?;
    Report::from_json(&v).ok_or_else(|| config(format!("{input}: not a report")))
}
