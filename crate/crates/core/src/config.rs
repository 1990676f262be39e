//! Line-oriented model files.
//!
//! ```text
//! # Bl_p(P^2) as a toric variety
//! model toric
//! dim 2
//! ray 1 0
//! ray 0 1
//! ray -1 -1
//! ray 1 1
//! basis 0 0 1 0
//! basis 0 0 0 1
//! ample 2 -1
//! ```
//!
//! Other kinds: `model surface` (`gram r c value`, `curve ...`, `ample ...`),
//! `model cutkosky` (`gram r c value`, `a x y z`, `b x y z`),
//! `model abelian` (`gram r c value`, `ample ...`), `model split_ruled d1 d2`,
//! `model blowup d` and `model preset NAME`. Gram indices start at 0 and the
//! symmetric entry is filled in.
//!
//! A family section may follow or stand alone:
//!
//! ```text
//! family rank 2 vars 2
//! rule threshold m1+2m2
//! weights 1 1
//! ```
//!
//! Rules: `threshold FORM`, `weighted l1,..,ld FORM`,
//! `principal e1 ; e2 ; ...` (exponent vector per grading direction),
//! `toric MODEL CHART` where MODEL is `self` or a preset and CHART lists ray
//! indices, optionally followed by `divisor ...` lines, and `table` followed
//! by `entry m1,..,mr : g1 g2 ...` lines (`entry m : zero` for the zero ideal).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::catalog::{presets, AbelianModel, BlowupPdModel, CutkoskyModel, Model, NSClass, SplitRuledModel, SurfaceModel, ToricModel};
use crate::error::{Error, Result};
use crate::families::{family_from_toric, LinearForm, MonomialIdeal, MonomialIdealFamily, Rule};
use crate::scalar::{parse_rat, Rat};

#[derive(Clone, Debug)]
pub struct ModelFile {
    pub model: Option<Model>,
    pub family: Option<MonomialIdealFamily>,
}

#[derive(Default)]
struct ModelDraft {
    kind: String,
    line: usize,
    params: Vec<String>,
    dim: Option<usize>,
    rays: Vec<Vec<i64>>,
    basis: Vec<Vec<Rat>>,
    gram: BTreeMap<(usize, usize), Rat>,
    curves: Vec<NSClass>,
    ample: Option<NSClass>,
    a: Option<NSClass>,
    b: Option<NSClass>,
}

#[derive(Default)]
struct FamilyDraft {
    line: usize,
    rank: usize,
    vars: usize,
    rule: Option<(usize, Vec<String>)>,
    divisors: Vec<Vec<Rat>>,
    entries: BTreeMap<Vec<i64>, MonomialIdeal>,
    weights: Option<Vec<Rat>>,
}

fn ints(line: usize, words: &[&str]) -> Result<Vec<i64>> {
    words
        .iter()
        .map(|w| w.parse::<i64>().map_err(|_| Error::parse(line, format!("expected an integer, found `{w}`"))))
        .collect()
}

fn rats(line: usize, words: &[&str]) -> Result<Vec<Rat>> {
    words
        .iter()
        .map(|w| parse_rat(w).map_err(|_| Error::parse(line, format!("expected a rational number, found `{w}`"))))
        .collect()
}

fn comma_ints(line: usize, s: &str) -> Result<Vec<i64>> {
    ints(line, &s.split(',').map(str::trim).collect::<Vec<_>>())
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    })
}

pub fn parse_model_file(text: &str) -> Result<ModelFile> {
    let mut model: Option<ModelDraft> = None;
    let mut family: Option<FamilyDraft> = None;
    let mut in_family = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let (key, rest) = (words[0], &words[1..]);
        match key {
            "model" => {
                if model.is_some() {
                    return Err(Error::parse(line, "a file holds at most one model"));
                }
                let Some((kind, params)) = rest.split_first() else {
                    return Err(Error::parse(line, "`model` needs a kind"));
                };
                model = Some(ModelDraft {
                    kind: kind.to_string(),
                    line,
                    params: params.iter().map(|s| s.to_string()).collect(),
                    ..Default::default()
                });
                in_family = false;
                continue;
            }
            "family" => {
                if family.is_some() {
                    return Err(Error::parse(line, "a file holds at most one family"));
                }
                let mut f = FamilyDraft { line, ..Default::default() };
                if rest.len() != 4 || rest[0] != "rank" || rest[2] != "vars" {
                    return Err(Error::parse(line, "expected `family rank R vars D`"));
                }
                let v = ints(line, &[rest[1], rest[3]])?;
                if v[0] <= 0 || v[1] <= 0 {
                    return Err(Error::parse(line, "rank and vars must be positive"));
                }
                f.rank = v[0] as usize;
                f.vars = v[1] as usize;
                family = Some(f);
                in_family = true;
                continue;
            }
            _ => {}
        }

        if in_family {
            let f = family.as_mut().expect("family draft");
            match key {
                "rule" => {
                    if f.rule.is_some() {
                        return Err(Error::parse(line, "family already has a rule"));
                    }
                    if rest.is_empty() {
                        return Err(Error::parse(line, "`rule` needs a kind"));
                    }
                    f.rule = Some((line, rest.iter().map(|s| s.to_string()).collect()));
                }
                "divisor" => f.divisors.push(rats(line, rest)?),
                "weights" => f.weights = Some(rats(line, rest)?),
                "entry" => {
                    let joined = rest.join(" ");
                    let (m, gens) = joined
                        .split_once(':')
                        .ok_or_else(|| Error::parse(line, "expected `entry m1,..,mr : gens`"))?;
                    let m = comma_ints(line, m)?;
                    if m.len() != f.rank {
                        return Err(Error::parse(line, format!("index has {} entries, rank is {}", m.len(), f.rank)));
                    }
                    let gens = gens.trim();
                    let ideal = if gens == "zero" {
                        MonomialIdeal::Zero
                    } else {
                        let mut list = Vec::new();
                        for g in gens.split_whitespace() {
                            let g = comma_ints(line, g)?;
                            if g.len() != f.vars || g.iter().any(|&x| x < 0) {
                                return Err(Error::parse(line, format!("generator must have {} nonnegative entries", f.vars)));
                            }
                            list.push(g);
                        }
                        if list.is_empty() {
                            return Err(Error::parse(line, "entry lists no generators"));
                        }
                        MonomialIdeal::from_generators(list)
                    };
                    f.entries.insert(m, ideal);
                }
                _ => return Err(Error::parse(line, format!("unknown family directive `{key}`"))),
            }
            continue;
        }

        let Some(m) = model.as_mut() else {
            return Err(Error::parse(line, format!("`{key}` before any `model` or `family` line")));
        };
        match key {
            "dim" => {
                let v = ints(line, rest)?;
                if v.len() != 1 || v[0] <= 0 {
                    return Err(Error::parse(line, "expected `dim D` with D positive"));
                }
                m.dim = Some(v[0] as usize);
            }
            "ray" => m.rays.push(ints(line, rest)?),
            "basis" => m.basis.push(rats(line, rest)?),
            "gram" => {
                if rest.len() != 3 {
                    return Err(Error::parse(line, "expected `gram ROW COL VALUE`"));
                }
                let rc = ints(line, &rest[..2])?;
                if rc.iter().any(|&x| x < 0) {
                    return Err(Error::parse(line, "gram indices start at 0"));
                }
                let v = rats(line, &rest[2..])?.remove(0);
                let (r, c) = (rc[0] as usize, rc[1] as usize);
                for key in [(r, c), (c, r)] {
                    if let Some(old) = m.gram.get(&key) {
                        if *old != v {
                            return Err(Error::parse(line, format!("gram entry ({r}, {c}) conflicts with an earlier value")));
                        }
                    }
                    m.gram.insert(key, v.clone());
                }
            }
            "curve" => m.curves.push(NSClass::new(rats(line, rest)?)),
            "ample" => m.ample = Some(NSClass::new(rats(line, rest)?)),
            "a" => m.a = Some(NSClass::new(rats(line, rest)?)),
            "b" => m.b = Some(NSClass::new(rats(line, rest)?)),
            _ => return Err(Error::parse(line, format!("unknown model directive `{key}`"))),
        }
    }

    if model.is_none() && family.is_none() {
        return Err(Error::parse(1, "file defines neither a model nor a family"));
    }
    let model = model.map(build_model).transpose()?;
    let family = family.map(|f| build_family(f, model.as_ref())).transpose()?;
    Ok(ModelFile { model, family })
}

fn gram_matrix(d: &ModelDraft) -> Result<Vec<Vec<Rat>>> {
    let n = d.gram.keys().map(|&(r, c)| r.max(c) + 1).max().unwrap_or(0);
    if n == 0 {
        return Err(Error::parse(d.line, "model needs `gram` entries"));
    }
    Ok((0..n)
        .map(|r| (0..n).map(|c| d.gram.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)).collect())
        .collect())
}

fn build_model(d: ModelDraft) -> Result<Model> {
    let line = d.line;
    let need = |x: Option<NSClass>, what: &str| x.ok_or_else(|| Error::parse(line, format!("model needs an `{what}` line")));
    let no_params = |kind: &str| {
        if d.params.is_empty() {
            Ok(())
        } else {
            Err(Error::parse(line, format!("`model {kind}` takes no parameters")))
        }
    };
    let model = match d.kind.as_str() {
        "toric" => {
            no_params("toric")?;
            let dim = d.dim.ok_or_else(|| Error::parse(line, "toric model needs `dim`"))?;
            ToricModel::new(dim, d.rays, d.basis, d.ample).map(Model::Toric)
        }
        "surface" => {
            no_params("surface")?;
            let gram = gram_matrix(&d)?;
            SurfaceModel::new(gram, d.curves, need(d.ample, "ample")?).map(Model::Surface)
        }
        "abelian" => {
            no_params("abelian")?;
            let gram = gram_matrix(&d)?;
            AbelianModel::new(gram, need(d.ample, "ample")?).map(Model::Abelian)
        }
        "cutkosky" => {
            no_params("cutkosky")?;
            let gram = gram_matrix(&d)?;
            CutkoskyModel::new(gram, need(d.a, "a")?, need(d.b, "b")?).map(Model::Cutkosky)
        }
        "split_ruled" => {
            let v = ints(line, &d.params.iter().map(String::as_str).collect::<Vec<_>>())?;
            if v.len() != 2 {
                return Err(Error::parse(line, "expected `model split_ruled D1 D2`"));
            }
            if v[0] == v[1] {
                return Err(Error::parse(line, "split ruled degrees must differ"));
            }
            Ok(Model::SplitRuled(SplitRuledModel::new(v[0], v[1])))
        }
        "blowup" => {
            let v = ints(line, &d.params.iter().map(String::as_str).collect::<Vec<_>>())?;
            if v.len() != 1 || v[0] < 0 {
                return Err(Error::parse(line, "expected `model blowup D`"));
            }
            BlowupPdModel::new(v[0] as usize).map(Model::Blowup)
        }
        "preset" => {
            if d.params.len() != 1 {
                return Err(Error::parse(line, "expected `model preset NAME`"));
            }
            presets::by_name(&d.params[0])
        }
        other => return Err(Error::parse(line, format!("unknown model kind `{other}`"))),
    };
    at_line(line, model)
}

fn build_family(f: FamilyDraft, model: Option<&Model>) -> Result<MonomialIdealFamily> {
    let (rline, words) = f.rule.ok_or_else(|| Error::parse(f.line, "family needs a `rule` line"))?;
    if !f.entries.is_empty() && words[0] != "table" {
        return Err(Error::parse(rline, "`entry` lines require `rule table`"));
    }
    if !f.divisors.is_empty() && words[0] != "toric" {
        return Err(Error::parse(rline, "`divisor` lines require `rule toric`"));
    }
    let form = |s: &str| at_line(rline, LinearForm::parse(s, f.rank));
    let family = match words[0].as_str() {
        "threshold" => {
            if words.len() < 2 {
                return Err(Error::parse(rline, "expected `rule threshold FORM`"));
            }
            MonomialIdealFamily::new(f.rank, f.vars, Rule::Threshold(form(&words[1..].join(" "))?))
        }
        "weighted" => {
            if words.len() < 3 {
                return Err(Error::parse(rline, "expected `rule weighted l1,..,ld FORM`"));
            }
            let lambda = comma_ints(rline, &words[1])?;
            MonomialIdealFamily::new(
                f.rank,
                f.vars,
                Rule::Weighted {
                    lambda,
                    form: form(&words[2..].join(" "))?,
                },
            )
        }
        "principal" => {
            let joined = words[1..].join(" ");
            let exps = joined
                .split(';')
                .map(|s| ints(rline, &s.split_whitespace().collect::<Vec<_>>()))
                .collect::<Result<Vec<_>>>()?;
            MonomialIdealFamily::new(f.rank, f.vars, Rule::Principal(exps))
        }
        "table" => {
            if words.len() != 1 {
                return Err(Error::parse(rline, "`rule table` takes its values from `entry` lines"));
            }
            MonomialIdealFamily::new(f.rank, f.vars, Rule::Table(f.entries))
        }
        "toric" => {
            if words.len() != 3 {
                return Err(Error::parse(rline, "expected `rule toric MODEL CHART`"));
            }
            let owned;
            let source = if words[1] == "self" {
                model.ok_or_else(|| Error::parse(rline, "`self` needs a model in the same file"))?
            } else {
                owned = at_line(rline, presets::by_name(&words[1]))?;
                &owned
            };
            let toric = source
                .toric()
                .ok_or_else(|| Error::parse(rline, format!("model `{}` is not toric", source.kind())))?;
            let chart: Vec<usize> = comma_ints(rline, &words[2])?
                .into_iter()
                .map(|i| usize::try_from(i).map_err(|_| Error::parse(rline, "chart indices start at 0")))
                .collect::<Result<_>>()?;
            if chart.iter().any(|&i| i >= toric.rays().len()) {
                return Err(Error::parse(rline, "chart index out of range"));
            }
            let divisors = if f.divisors.is_empty() { toric.basis().to_vec() } else { f.divisors };
            if divisors.len() != f.rank || f.vars != toric.dim() {
                return Err(Error::parse(rline, "toric rule needs one divisor per grading direction and vars = dimension"));
            }
            family_from_toric(toric, &chart, divisors)
        }
        other => return Err(Error::parse(rline, format!("unknown rule `{other}`"))),
    };
    let family = at_line(rline, family)?;
    match f.weights {
        Some(w) => at_line(f.line, family.with_weights(w)),
        None => Ok(family),
    }
}

/// A preset name, or the text of a model file.
pub fn resolve_model(spec_or_text: &str) -> Result<Model> {
    if spec_or_text.lines().count() > 1 || spec_or_text.trim_start().starts_with("model") {
        parse_model_file(spec_or_text)?
            .model
            .ok_or_else(|| Error::Config("file defines no model".into()))
    } else {
        presets::by_name(spec_or_text)
    }
}
