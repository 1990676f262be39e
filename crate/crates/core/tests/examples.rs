use std::sync::Arc;

use asyminv::catalog::{presets, Model, NSClass};
use asyminv::config::parse_model_file;
use asyminv::engine::{augmented_base_locus_probe, hhat, vol, vol_value};
use asyminv::families::{cones_estimate, regularity_scan, CustomRule, GridSlice, IndexBox, MonomialIdeal, MonomialIdealFamily, Rule};
use asyminv::harness::{chamber_fit, chamber_keys, check_lipschitz, divisor_invariance, lipschitz_estimate, Slice};
use asyminv::scalar::{int, Rat};
use num_traits::Zero;

#[test]
fn projective_plane_counts_agree_after_principal_shift() {
    let Model::Toric(p2) = presets::projective_space(2).unwrap() else { panic!() };
    let levels: Vec<i64> = (1..=50).collect();
    for u in [[1, 0], [-2, 3], [5, -7]] {
        let h = p2.divisor_of_class(&NSClass::from_ints(&[1]));
        assert!(divisor_invariance(&p2, &h, &u, &levels).unwrap().is_empty());
    }
}

#[test]
fn blowup_lifts_have_equal_volume() {
    let m = presets::blowup_pd(2).unwrap();
    let t = m.toric().unwrap();
    let d = t.divisor_of_class(&NSClass::from_ints(&[2, -1]));
    assert!(divisor_invariance(t, &d, &[3, -1], &[1, 2]).unwrap().is_empty());
    assert_eq!(vol_value(&m, &NSClass::from_ints(&[2, -1])).unwrap().as_rat(), Some(&int(3)));
}

#[test]
fn concave_root_threshold_is_nowhere_linear_on_the_grid() {
    let rule: CustomRule = Arc::new(|m: &[i64]| {
        let r2 = m[0] * m[0] + m[1] * m[1];
        let mut r = (r2 as f64).sqrt() as i64;
        while r * r < r2 {
            r += 1;
        }
        while r > 0 && (r - 1) * (r - 1) >= r2 {
            r -= 1;
        }
        let gens = (0..=r).map(|i| vec![i, r - i]).collect();
        MonomialIdeal::from_generators(gens)
    });
    let f = MonomialIdealFamily::new(2, 2, Rule::Custom(rule)).unwrap();
    let slice = GridSlice { origin: vec![3, 4], u: vec![1, 0], v: vec![0, 1], steps: 4 };
    let r = regularity_scan(&f, &slice, 12).unwrap();
    let interior = r.second_differences.len();
    assert_eq!(interior, 9);
    assert_eq!(r.creases.len(), interior, "{:?}", r.second_differences);
    assert!(r.max_second_difference > Rat::zero());
}

#[test]
fn blowup_family_cones() {
    let m = presets::blowup_pd(2).unwrap();
    let t = m.toric().unwrap();
    let f = asyminv::families::family_from_toric(t, &[0, 3], t.basis().to_vec()).unwrap();
    let est = cones_estimate(&f, &IndexBox::cube(2, -3, 3)).unwrap();
    // nef = cone(h, h - e), psef = cone(e, h - e)
    for (v, nef, psef) in [([1, 0], true, true), ([1, -1], true, true), ([0, 1], false, true), ([-1, 1], false, false)] {
        let v: Vec<Rat> = v.iter().map(|&x| int(x)).collect();
        assert_eq!(est.nef.contains(&v), nef);
        assert_eq!(est.psef.contains(&v), psef);
    }
}

#[test]
fn lipschitz_outside_the_big_cone_contributes_nothing() {
    let m = presets::blowup_pd(2).unwrap();
    let s: Slice = "-3,0;1,0;0,1;0;1;4".parse().unwrap();
    assert_eq!(lipschitz_estimate(&m, &s), 0.0);
}

#[test]
fn cutkosky_lipschitz_is_stable() {
    let m = presets::cutkosky_golden().unwrap();
    let s: Slice = "1,0,0,0;0,1,0,0;0,0,0,1;-1/4;1/4;4".parse().unwrap();
    let r = check_lipschitz(&m, &s);
    assert!(r.passed(), "{r}");
}

#[test]
fn chamber_count_is_stable_under_refinement() {
    for d in [2, 3] {
        let m = presets::blowup_pd(d).unwrap();
        let s: Slice = "0,0;1,0;0,1;-2;2;16".parse().unwrap();
        let coarse = chamber_fit(&m, &s, d as u32).unwrap();
        let fine = chamber_fit(&m, &s.refined(), d as u32).unwrap();
        assert_eq!(coarse.chambers.len(), 3);
        assert_eq!(fine.chambers.len(), 3);
        let a: Vec<String> = chamber_keys(&m, &s).unwrap().into_keys().collect();
        let b: Vec<String> = chamber_keys(&m, &s.refined()).unwrap().into_keys().collect();
        assert_eq!(a, b);
    }
}

#[test]
fn surface_and_toric_chambers_agree() {
    let s: Slice = "0,0;1,0;0,1;-2;2;8".parse().unwrap();
    let toric = chamber_fit(&presets::blowup_pd(2).unwrap(), &s, 2).unwrap();
    let surface = chamber_fit(&presets::blowup_surface().unwrap(), &s, 2).unwrap();
    let polys = |r: &asyminv::harness::ChamberReport| {
        let mut v: Vec<String> = r
            .chambers
            .iter()
            .map(|c| asyminv::harness::format_polynomial(c.polynomial.as_ref().unwrap()))
            .collect();
        v.sort();
        v
    };
    assert_eq!(polys(&toric), polys(&surface));
    let keys: Vec<&str> = surface.chambers.iter().map(|c| c.key.as_str()).collect();
    assert!(keys.contains(&"support []") && keys.contains(&"support [0]"), "{keys:?}");
}

#[test]
fn abelian_regions_follow_the_sign_of_q() {
    let m = presets::abelian_golden().unwrap();
    let Model::Abelian(a) = &m else { panic!() };
    for x in -3..=3 {
        for y in -3..=3 {
            for z in -3..=3 {
                let c = NSClass::from_ints(&[x, y, z]);
                let h = hhat(&m, &c).unwrap();
                let q = a.q(&c);
                let nonzero: Vec<usize> = (0..3).filter(|&i| !h.values[i].is_zero()).collect();
                if q > Rat::zero() {
                    assert!(nonzero == vec![0] || nonzero == vec![2]);
                } else if q < Rat::zero() {
                    assert_eq!(nonzero, vec![1]);
                } else {
                    assert!(nonzero.is_empty());
                }
            }
        }
    }
}

#[test]
fn model_files_reproduce_presets() {
    let text = "\
# golden Cutkosky instance
model cutkosky
gram 0 1 1
gram 0 2 1
gram 1 2 1
a 1 1 0
b 1 2 -1
";
    let m = parse_model_file(text).unwrap().model.unwrap();
    let c = NSClass::from_ints(&[0, 0, 0]);
    assert_eq!(vol(&m, &c).unwrap().value.to_string(), "-7/2 + 5/2*sqrt(5)");
    let golden = presets::cutkosky_golden().unwrap();
    assert_eq!(vol(&golden, &c).unwrap(), vol(&m, &c).unwrap());
}

#[test]
fn augmented_base_locus_of_h_is_the_exceptional_divisor() {
    let m = presets::blowup_pd(3).unwrap();
    assert_eq!(augmented_base_locus_probe(&m, &NSClass::from_ints(&[1, 0])).unwrap(), vec![4]);
    assert!(augmented_base_locus_probe(&m, &NSClass::from_ints(&[2, -1])).unwrap().is_empty());
}
