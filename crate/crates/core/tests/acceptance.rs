//! Acceptance run: one PASS/FAIL line per criterion; exits nonzero if any fail.

use std::time::{Duration, Instant};

use asyminv::catalog::{presets, Model, NSClass};
use asyminv::engine::{self, fujita_sweep, h0_exact, hhat, ord, restricted_vol, vol, vol_value, zariski, Budget, Provenance, Value};
use asyminv::families::{
    asymptotic_ord0, family_from_toric, verify_multiplicativity, CustomRule, IndexBox, LinearForm, MonomialIdeal,
    MonomialIdealFamily, Rule,
};
use asyminv::harness::{self, chamber_fit, check_homogeneity, check_log_concavity, check_numerical_invariance, Slice};
use asyminv::linalg::is_negative_definite;
use asyminv::scalar::{int, pow, rat, rat_to_f64, QuadExt, Rat};
use asyminv::Error;
use num_traits::{Signed, Zero};
use rand::Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn class(x: &Rat, y: &Rat) -> NSClass {
    NSClass::new(vec![x.clone(), -y.clone()])
}

fn grid_33() -> Vec<Rat> {
    (0..=32).map(|k| rat(k - 16, 8)).collect()
}

fn blowup_chamber(d: u32, x: &Rat, y: &Rat) -> Rat {
    if x.is_negative() || y > x {
        Rat::zero()
    } else if y.is_negative() {
        pow(x, d)
    } else {
        pow(x, d) - pow(y, d)
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut points = 0;
    for d in [2usize, 3] {
        let m = presets::blowup_pd(d).unwrap();
        for x in grid_33() {
            for y in grid_33() {
                points += 1;
                let r = vol(&m, &class(&x, &y)).unwrap();
                let expected = blowup_chamber(d as u32, &x, &y);
                if r.value != Value::Exact(expected) || r.provenance != Provenance::ClosedForm {
                    bad.push(format!("d={d} x={x} y={y}: {}", r.value));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    // Independent path: lattice volume of the divisor polytope on the same grid.
    let mut toric_bad = 0;
    for d in [2usize, 3] {
        let Model::Blowup(b) = presets::blowup_pd(d).unwrap() else { unreachable!() };
        let t = Model::Toric(b.toric().clone());
        for x in grid_33() {
            for y in grid_33() {
                if vol_value(&t, &class(&x, &y)).unwrap() != Value::Exact(blowup_chamber(d as u32, &x, &y)) {
                    toric_bad += 1;
                }
            }
        }
    }
    outcome(
        bad.is_empty() && toric_bad == 0 && elapsed < Duration::from_secs(5),
        format!(
            "{points} grid points exact, {} mismatches, {toric_bad} toric lattice-volume mismatches, closed form in {:.2?}",
            bad.len(),
            elapsed
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let m = presets::cutkosky_golden().unwrap();
    let c0 = NSClass::from_ints(&[0, 0, 0]);
    let expected = QuadExt::new(rat(-7, 2), rat(5, 2), 5).unwrap();
    let r = vol(&m, &c0).unwrap();
    let exact = matches!(&r.value, Value::Quad(q) if *q == expected && !q.radical_coefficient().is_zero());
    let h = h0_exact(&m, &c0, 1000, Budget::default()).unwrap();
    let oracle = rat_to_f64(&(Rat::from_integer(h) * int(6) / pow(&int(1000), 3)));
    let target = expected.to_f64();
    let rel = (oracle - target).abs() / target;
    let elapsed = start.elapsed();
    outcome(
        exact && rel < 0.005 && elapsed < Duration::from_secs(30),
        format!(
            "vol = {} ({}), oracle(m=1000) = {oracle:.6}, relative error {:.4}%, {:.2?}",
            r.value,
            r.provenance,
            rel * 100.0,
            elapsed
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for a in [2i64, 3, 5] {
        let m = presets::split_ruled(a);
        let l = NSClass::from_ints(&[1, 0]);
        let exact = vol_value(&m, &l).unwrap() == Value::Exact(rat(1, a));
        let h = h0_exact(&m, &l, 500, Budget::default()).unwrap();
        let oracle = rat_to_f64(&(Rat::from_integer(h) * int(2) / int(500 * 500)));
        let target = 1.0 / a as f64;
        let rel = (oracle - target).abs() / target;
        let pass = exact && rel < 0.01;
        ok &= pass;
        parts.push(format!(
            "a={a}: vol=1/{a} {}, oracle(m=500)={oracle:.6} rel {:.3}%{}",
            if exact { "exact" } else { "WRONG" },
            rel * 100.0,
            if pass { "" } else { " (over 1%)" }
        ));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_4() -> Outcome {
    let surface = presets::blowup_surface().unwrap();
    let Model::Surface(s) = &surface else { unreachable!() };
    let toric = presets::blowup_pd(2).unwrap();
    let Model::Blowup(b) = &toric else { unreachable!() };
    let lattice = Model::Toric(b.toric().clone());
    let mut rng = harness::rng(4);
    let mut tested = 0;
    let mut failures = Vec::new();
    while tested < 500 {
        let xi = NSClass::new((0..2).map(|_| rat(rng.gen_range(-64..=64), 16)).collect());
        let z = match zariski(s, &xi) {
            Ok(z) => z,
            Err(Error::NotPseudoeffective(_)) => continue,
            Err(e) => return outcome(false, format!("zariski({xi}) failed: {e}")),
        };
        tested += 1;
        let curves = s.curves();
        let gram: Vec<Vec<Rat>> = z
            .support
            .iter()
            .map(|&i| z.support.iter().map(|&j| s.pair(&curves[i], &curves[j])).collect())
            .collect();
        let mut n = NSClass::zero(2);
        for (t, &j) in z.coefficients.iter().zip(&z.support) {
            n = n.add_scaled(&curves[j], t);
        }
        let v = vol_value(&surface, &xi).unwrap();
        let checks = [
            ("P.N = 0", s.pair(&z.positive, &z.negative).is_zero()),
            ("P nef", s.is_nef(&z.positive)),
            ("N effective", n == z.negative && z.coefficients.iter().all(|t| t.is_positive())),
            ("support negative definite", z.support.is_empty() || is_negative_definite(&gram)),
            ("vol = P^2", v == Value::Exact(s.q(&z.positive))),
            ("toric lattice volume", vol_value(&lattice, &xi).unwrap() == v),
        ];
        for (name, ok) in checks {
            if !ok {
                failures.push(format!("{xi}: {name}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{tested} pseudoeffective classes, {} failed checks {:?}", failures.len(), failures.iter().take(3).collect::<Vec<_>>()),
    )
}

fn criterion_5() -> Outcome {
    let schedule = [1, 2, 3, 5, 8];
    let cases: Vec<(&str, Model, Vec<i64>)> = vec![
        ("p2", presets::projective_space(2).unwrap(), vec![2]),
        ("p3", presets::projective_space(3).unwrap(), vec![1]),
        ("blowup_pd:2", presets::blowup_pd(2).unwrap(), vec![3, -1]),
        ("blowup_pd:2", presets::blowup_pd(2).unwrap(), vec![2, 1]),
        ("blowup_pd:3", presets::blowup_pd(3).unwrap(), vec![2, -1]),
        ("hirzebruch:1", presets::hirzebruch(1).unwrap(), vec![2, 1]),
        ("hirzebruch:2", presets::hirzebruch(2).unwrap(), vec![3, 1]),
    ];
    let mut ok = true;
    let mut swept = 0;
    for (name, m, c) in &cases {
        let xi = NSClass::from_ints(c);
        let v = vol_value(m, &xi).unwrap();
        for (k, vm) in fujita_sweep(m, &xi, &schedule, Budget::default()).unwrap() {
            swept += 1;
            if Value::Exact(vm.clone()) != v {
                ok = false;
                eprintln!("{name} {xi} m={k}: {vm} vs {v}");
            }
        }
    }
    let golden = presets::cutkosky_golden().unwrap();
    let target = engine::vol_value(&golden, &NSClass::from_ints(&[0, 0, 0])).unwrap().to_f64();
    let sweep = fujita_sweep(&golden, &NSClass::from_ints(&[0, 0, 0]), &[10, 30, 100, 300, 1000], Budget::default()).unwrap();
    let errors: Vec<f64> = sweep.iter().map(|(_, v)| (rat_to_f64(v) - target).abs() / target).collect();
    let monotone = errors.windows(2).all(|w| w[1] <= w[0]);
    let last = *errors.last().unwrap();
    outcome(
        ok && monotone && last < 0.005,
        format!(
            "{swept} toric levels exact; Cutkosky relative errors {} (monotone {monotone}), final {:.4}%",
            errors.iter().map(|e| format!("{:.3}%", e * 100.0)).collect::<Vec<_>>().join(" "),
            last * 100.0
        ),
    )
}

fn criterion_6() -> Outcome {
    let m = presets::abelian_golden().unwrap();
    let Model::Abelian(a) = &m else { unreachable!() };
    let mut rng = harness::rng(6);
    let mut tested = 0;
    let mut bad = 0;
    while tested < 1000 {
        let xi = NSClass::new((0..3).map(|_| rat(rng.gen_range(-40..=40), 8)).collect());
        let q = a.q(&xi);
        if q.is_zero() {
            continue;
        }
        tested += 1;
        if hhat(&m, &xi).unwrap().euler_characteristic() != q {
            bad += 1;
        }
    }
    let mut blowup_bad = 0;
    let mut grid_points = 0;
    for d in [2usize, 3] {
        let bm = presets::blowup_pd(d).unwrap();
        let e = d as u32;
        for x in grid_33() {
            for y in grid_33() {
                grid_points += 1;
                let h = hhat(&bm, &class(&x, &y)).unwrap();
                let mut expected = vec![Rat::zero(); d + 1];
                if !x.is_negative() {
                    if y.is_negative() {
                        expected[0] = pow(&x, e);
                        // (-1)^d y^d
                        expected[d - 1] = pow(&int(-1), e) * pow(&y, e);
                    } else if y <= x {
                        expected[0] = pow(&x, e) - pow(&y, e);
                    } else {
                        expected[1] = pow(&y, e) - pow(&x, e);
                    }
                } else {
                    expected = h.values.clone();
                }
                let chi_ok = h.euler_characteristic() == pow(&x, e) - pow(&y, e);
                if h.values != expected || !chi_ok {
                    blowup_bad += 1;
                }
            }
        }
    }
    outcome(
        bad == 0 && blowup_bad == 0,
        format!("abelian: {tested} classes with q != 0, {bad} Euler mismatches; blow-up: {grid_points} grid points, {blowup_bad} mismatches"),
    )
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut paths = Vec::new();
    for d in [2usize, 3] {
        let m = presets::blowup_pd(d).unwrap();
        let Model::Blowup(b) = &m else { unreachable!() };
        let e = b.exceptional_ray();
        for x in grid_33() {
            for y in grid_33() {
                let xi = class(&x, &y);
                if !vol_value(&m, &xi).unwrap().is_positive() {
                    continue;
                }
                checked += 1;
                let o = ord(&m, e, &xi).unwrap();
                let expected = if y.is_negative() { -y.clone() } else { Rat::zero() };
                if o != expected {
                    bad.push(format!("ord d={d} ({x},{y}) = {o}"));
                }
                if y.is_positive() && y <= x {
                    let r = restricted_vol(&m, e, &xi).unwrap();
                    if r != pow(&y, d as u32 - 1) {
                        bad.push(format!("rvol d={d} ({x},{y}) = {r}"));
                    }
                }
            }
        }
        let x = int(2);
        let path: Vec<Rat> = (0..=8)
            .map(|k| {
                let y = rat(1, 1 << k);
                restricted_vol(&m, e, &class(&x, &y)).unwrap()
            })
            .collect();
        let decreasing = path.windows(2).all(|w| w[1] < w[0]);
        let limit = restricted_vol(&m, e, &class(&x, &Rat::zero())).unwrap();
        if !decreasing || !limit.is_zero() {
            bad.push(format!("rvol path d={d}: {path:?}, at xh: {limit}"));
        }
        paths.push(format!("d={d}: {} -> {} -> {limit}", path[0], path[8]));
    }
    outcome(
        bad.is_empty(),
        format!("{checked} big grid classes, {} mismatches; rvol along y -> 0: {}", bad.len(), paths.join(", ")),
    )
}

fn property_models() -> Vec<(&'static str, Model)> {
    vec![
        ("projective_space:2", presets::projective_space(2).unwrap()),
        ("blowup_pd:2", presets::blowup_pd(2).unwrap()),
        ("blowup_pd:3", presets::blowup_pd(3).unwrap()),
        ("hirzebruch:1", presets::hirzebruch(1).unwrap()),
        ("blowup_surface", presets::blowup_surface().unwrap()),
        ("split_ruled:2", presets::split_ruled(2)),
        ("abelian_golden", presets::abelian_golden().unwrap()),
        ("cutkosky_golden", presets::cutkosky_golden().unwrap()),
    ]
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    let scalars = [int(0), int(1), int(2), int(3), rat(1, 2), rat(5, 3)];
    for (i, (name, m)) in property_models().into_iter().enumerate() {
        let seed = 800 + i as u64;
        let h = check_homogeneity(&m, seed, 100, &scalars).unwrap();
        let l = check_log_concavity(&m, seed, 1000).unwrap();
        ok &= h.passed() && l.passed();
        let mut line = format!("{name}: homogeneity {}/{}, log-concavity {}/{}", h.violations.len(), h.samples, l.violations.len(), l.samples);
        if m.toric().is_some() {
            let n = check_numerical_invariance(&m, seed, 50).unwrap();
            ok &= n.passed();
            line.push_str(&format!(", invariance {}/{}", n.violations.len(), n.samples));
        }
        lines.push(line);
    }
    let blowup = presets::blowup_pd(2).unwrap();
    let slice: Slice = "0,0;1,0;0,1;-2;2;16".parse().unwrap();
    let chambers = chamber_fit(&blowup, &slice, 2).unwrap();
    let three = chambers.chambers.len() == 3 && chambers.piecewise_polynomial();
    let golden = presets::cutkosky_golden().unwrap();
    let cslice: Slice = "1,0,0,0;0,1,0,0;0,0,0,1;-1/4;1/4;8".parse().unwrap();
    let cfit = chamber_fit(&golden, &cslice, 3).unwrap();
    let fails = !cfit.fit_failures().is_empty();
    ok &= three && fails;
    lines.push(format!(
        "chamber_fit blow-up: {} chambers; Cutkosky slice: fit failure on {:?}",
        chambers.chambers.len(),
        cfit.fit_failures().iter().map(|c| c.key.as_str()).collect::<Vec<_>>()
    ));
    outcome(ok, lines.join("; "))
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    let bx = IndexBox::cube(1, 0, 6);
    let threshold = MonomialIdealFamily::new(1, 2, Rule::Threshold(LinearForm::new(int(0), vec![int(2)]))).unwrap();
    let principal = MonomialIdealFamily::new(1, 2, Rule::Principal(vec![vec![1, 1]])).unwrap();
    let square: CustomRule = std::sync::Arc::new(|m: &[i64]| {
        if m[0] < 0 {
            MonomialIdeal::Zero
        } else {
            MonomialIdeal::from_generators(vec![vec![m[0] * m[0], 0]])
        }
    });
    let counter = MonomialIdealFamily::new(1, 2, Rule::Custom(square)).unwrap();
    let m2 = presets::blowup_pd(2).unwrap();
    let Model::Blowup(b2) = &m2 else { unreachable!() };
    let toric_family = family_from_toric(b2.toric(), &[0, 3], b2.toric().basis().to_vec()).unwrap();
    let r_threshold = verify_multiplicativity(&threshold, &bx).unwrap();
    let r_principal = verify_multiplicativity(&principal, &bx).unwrap();
    let r_toric = verify_multiplicativity(&toric_family, &IndexBox::cube(2, -3, 3)).unwrap();
    let r_counter = verify_multiplicativity(&counter, &bx).unwrap();
    let counter_at_one = r_counter.violations.iter().any(|v| v.m == vec![1] && v.l == vec![1]);
    let mult_ok = r_threshold.passed() && r_principal.passed() && r_toric.passed() && !r_counter.passed() && counter_at_one;
    parts.push(format!(
        "multiplicativity: threshold {}, principal {}, toric {}, m^2 rule {} violations (m = l = 1 flagged: {counter_at_one})",
        r_threshold.passed(),
        r_principal.passed(),
        r_toric.passed(),
        r_counter.violations.len()
    ));

    let mut agree = 0;
    let mut disagree = Vec::new();
    for d in [2usize, 3] {
        let m = presets::blowup_pd(d).unwrap();
        let Model::Blowup(b) = &m else { unreachable!() };
        let t = b.toric();
        let chart: Vec<usize> = (0..d - 1).chain(std::iter::once(b.exceptional_ray())).collect();
        let mut weights = vec![int(0); d];
        weights[d - 1] = int(1);
        let fam = family_from_toric(t, &chart, t.basis().to_vec()).unwrap().with_weights(weights).unwrap();
        let mut rng = harness::rng(900 + d as u64);
        let mut tested = 0;
        while tested < 50 {
            let dir: Vec<i64> = (0..2).map(|_| rng.gen_range(-4..=4)).collect();
            let xi = NSClass::from_ints(&dir);
            if !vol_value(&m, &xi).unwrap().is_positive() {
                continue;
            }
            tested += 1;
            let a = asymptotic_ord0(&fam, &dir, 3).unwrap().value;
            let e = ord(&m, b.exceptional_ray(), &xi).unwrap();
            if a == e {
                agree += 1;
            } else {
                disagree.push(format!("d={d} {xi}: family {a}, engine {e}"));
            }
        }
    }
    parts.push(format!("ord0 vs engine ord_E: {agree} equal, {} different", disagree.len()));
    outcome(mult_ok && disagree.is_empty(), parts.join("; "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("blow-up closed form on 33x33 grids, d = 2, 3", criterion_1),
        ("irrational Cutkosky volume and m = 1000 oracle", criterion_2),
        ("split ruled vol = 1/a and m = 500 oracle", criterion_3),
        ("Zariski suite on the blow-up surface", criterion_4),
        ("toric Fujita sweeps and Cutkosky sweep", criterion_5),
        ("asymptotic cohomology: abelian and blow-up", criterion_6),
        ("ord_E and restricted volume on blow-ups", criterion_7),
        ("property suites and chamber fitting", criterion_8),
        ("graded families", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        if !o.ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} - {name} ({:.2?}): {}",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            start.elapsed(),
            o.detail
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
