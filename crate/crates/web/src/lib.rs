//! Browser bindings: evaluate an invariant at a class and sample volume or
//! asymptotic cohomology over a planar slice for a heatmap.
//!
//! Models are preset names (`blowup_pd:2`) or the full text of a model file.
//! Slices read `origin;u;v;lo;hi;steps`; grids come back row-major with `t`
//! outer, `(steps + 1)^2` points.

use asyminv::catalog::NSClass;
use asyminv::config::resolve_model;
use asyminv::engine::{hhat, vol};
use asyminv::harness::Slice;
use asyminv::scalar::rat_to_f64;
use asyminv::Error;
use wasm_bindgen::prelude::*;

/// `"7 (closed_form)"` for `what = "vol"`, `"[7, 0, 0, 0]"` for `"hhat"`.
pub fn eval_text(model: &str, class: &str, what: &str) -> Result<String, String> {
    let model = resolve_model(model).map_err(|e| e.to_string())?;
    let class: NSClass = class.parse().map_err(|e: Error| e.to_string())?;
    model.check_class(&class).map_err(|e| e.to_string())?;
    match what {
        "vol" => vol(&model, &class)
            .map(|r| format!("{} ({})", r.value, r.provenance))
            .map_err(|e| e.to_string()),
        "hhat" => hhat(&model, &class)
            .map(|h| format!("[{}]", h.values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .map_err(|e| e.to_string()),
        _ => Err(format!("unknown invariant `{what}`: use vol or hhat")),
    }
}

fn slice_for(model: &str, slice: &str) -> Result<(asyminv::catalog::Model, Slice), String> {
    let model = resolve_model(model).map_err(|e| e.to_string())?;
    let slice: Slice = slice.parse().map_err(|e: Error| e.to_string())?;
    model.check_class(&slice.origin).map_err(|e| e.to_string())?;
    Ok((model, slice))
}

/// Volumes over the slice; `NaN` where the class is outside the model's
/// supported region.
pub fn volume_values(model: &str, slice: &str) -> Result<Vec<f64>, String> {
    let (model, slice) = slice_for(model, slice)?;
    slice
        .grid()
        .into_iter()
        .map(|(.., c)| match vol(&model, &c) {
            Ok(r) => Ok(r.value.to_f64()),
            Err(Error::UnsupportedClass(_) | Error::NotBig(_) | Error::NotPseudoeffective(_)) => Ok(f64::NAN),
            Err(e) => Err(e.to_string()),
        })
        .collect()
}

/// `hhat^0..hhat^d` per point, so the stride is `dim + 1`.
pub fn cohomology_values(model: &str, slice: &str) -> Result<Vec<f64>, String> {
    let (model, slice) = slice_for(model, slice)?;
    let stride = model.dimension() + 1;
    let mut out = Vec::new();
    for (.., c) in slice.grid() {
        match hhat(&model, &c) {
            Ok(h) => out.extend(h.values.iter().map(rat_to_f64)),
            Err(Error::UnsupportedModel(m)) => return Err(m),
            Err(_) => out.extend(std::iter::repeat_n(f64::NAN, stride)),
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn evaluate(model: &str, class: &str, what: &str) -> Result<String, JsError> {
    eval_text(model, class, what).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = volumeGrid)]
pub fn volume_grid(model: &str, slice: &str) -> Result<Vec<f64>, JsError> {
    volume_values(model, slice).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = cohomologyGrid)]
pub fn cohomology_grid(model: &str, slice: &str) -> Result<Vec<f64>, JsError> {
    cohomology_values(model, slice).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_exact_values() {
        assert_eq!(eval_text("blowup_pd:3", "2,-1", "vol").unwrap(), "7 (closed_form)");
        assert_eq!(eval_text("cutkosky_golden", "0,0,0", "vol").unwrap(), "-7/2 + 5/2*sqrt(5) (closed_form)");
        assert_eq!(eval_text("blowup_pd:2", "2,-1", "hhat").unwrap(), "[3, 0, 0]");
        // h + e: chi = x^2 - y^2 = 0 with vol 1
        assert_eq!(eval_text("blowup_pd:2", "1,1", "hhat").unwrap(), "[1, 1, 0]");
        assert!(eval_text("blowup_pd:2", "1,1,1", "vol").is_err());
        assert!(eval_text("blowup_pd:2", "1,1", "ord").is_err());
    }

    #[test]
    fn volume_grid_is_row_major() {
        let v = volume_values("blowup_pd:2", "0,0;1,0;0,1;-1;2;3").unwrap();
        assert_eq!(v.len(), 16);
        // s = 2, t = -1 is 2h - e
        assert_eq!(v[3], 3.0);
        assert_eq!(v[4 + 2], 1.0);
        assert!(volume_values("blowup_pd:2", "0,0;0,0;0,1;-1;2;3").is_err());
    }

    #[test]
    fn abelian_cohomology_has_one_nonzero_degree() {
        let v = cohomology_values("abelian_golden", "0,0,0;1,0,0;0,0,1;-2;2;4").unwrap();
        assert_eq!(v.len(), 25 * 3);
        for p in v.chunks(3) {
            assert!(p.iter().filter(|x| **x != 0.0).count() <= 1, "{p:?}");
        }
    }

    #[test]
    fn model_text_is_accepted() {
        let text = "model blowup 2\n";
        assert_eq!(eval_text(text, "2,-1", "vol").unwrap(), "3 (closed_form)");
    }
}
