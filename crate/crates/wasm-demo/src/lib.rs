//! Browser demo bindings: three interactive operations over wasm-bindgen.
//!
//! The page feeds a braid word (or a formal irregular type) from plain
//! `<input>` elements and receives SVG markup plus JSON summaries back as
//! strings; there is no framework on either side. Build with
//! `wasm-pack build --target web crates/wasm-demo` (or cargo +
//! wasm-bindgen-cli) and open `static/index.html`.

use llab_core::augvar::enumerate_augmentations;
use llab_core::braidfront::{
    cylindrical_closure, ng_resolution, parse_braid, rainbow_closure, BasepointMode,
};
use llab_core::dga::build_dga;
use llab_core::render;
use llab_core::rulings::{
    dimension_and_top_ruling, dual_boundary_type, enumerate_rulings, eye_decomposition,
    predicted_counts, DualCell,
};
use llab_core::stokes::{parse_formal_type, stokes_braid};
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// SVG of the rainbow-closure front; `ruling` optionally selects a normal
/// ruling by its switch-string key and shades its eyes.
#[wasm_bindgen]
pub fn front_svg(braid: &str, ruling: Option<String>) -> Result<String, JsValue> {
    let b = parse_braid(braid).map_err(err)?;
    let front = rainbow_closure(&b, BasepointMode::AllCusps).map_err(err)?;
    match ruling.filter(|k| !k.is_empty()) {
        None => Ok(render::front_svg(&front)),
        Some(key) => {
            let rulings = enumerate_rulings(&front).map_err(err)?;
            let r = rulings
                .iter()
                .find(|r| r.key() == key)
                .ok_or_else(|| err(format!("no ruling with key {key}")))?;
            let eyes = eye_decomposition(front.n, &front.letters, r);
            Ok(render::ruling_svg(&front, r, &eyes))
        }
    }
}

/// SVG of the cylindrical closure front of β Δ².
#[wasm_bindgen]
pub fn cylindrical_svg(braid: &str) -> Result<String, JsValue> {
    let b = parse_braid(braid).map_err(err)?;
    Ok(render::front_svg(&cylindrical_closure(&b)))
}

/// JSON census: normal rulings with (s, r), augmentation counts over the
/// given field orders, the moduli dimension and dual boundary type.
#[wasm_bindgen]
pub fn census_json(braid: &str, qs: &str) -> Result<String, JsValue> {
    let b = parse_braid(braid).map_err(err)?;
    let front = rainbow_closure(&b, BasepointMode::AllCusps).map_err(err)?;
    let dga = build_dga(&ng_resolution(&front).map_err(err)?).map_err(err)?;
    let rulings = enumerate_rulings(&front).map_err(err)?;
    let mut counts = Vec::new();
    for tok in qs.split(',').filter(|t| !t.trim().is_empty()) {
        let q: u8 = tok.trim().parse().map_err(err)?;
        let observed = enumerate_augmentations(&dga, q).map_err(err)?.len() as u64;
        let predicted = predicted_counts(&front, q).map_err(err)?;
        counts.push(serde_json::json!({
            "q": q,
            "aug": observed,
            "predicted": predicted.aug_total,
            "mb": predicted.mb_total,
        }));
    }
    let dim = dimension_and_top_ruling(&front).ok();
    let dual = dual_boundary_type(&front).ok().map(|rep| match rep.homotopy_type {
        DualCell::Sphere(k) => format!("S^{k}"),
        _ => "point (undefined)".to_string(),
    });
    let doc = serde_json::json!({
        "schema": llab_core::SCHEMA,
        "braid": braid,
        "connected": b.is_connected_closure(),
        "rulings": rulings.iter().map(|r| serde_json::json!({
            "key": r.key(), "s": r.s, "r": r.r,
        })).collect::<Vec<_>>(),
        "counts": counts,
        "d": dim.map(|d| d.d),
        "dual_boundary": dual,
    });
    serde_json::to_string_pretty(&doc).map_err(err)
}

/// List of ruling keys for the overlay selector.
#[wasm_bindgen]
pub fn ruling_keys(braid: &str) -> Result<String, JsValue> {
    let b = parse_braid(braid).map_err(err)?;
    let front = rainbow_closure(&b, BasepointMode::AllCusps).map_err(err)?;
    let rulings = enumerate_rulings(&front).map_err(err)?;
    Ok(rulings.iter().map(|r| r.key()).collect::<Vec<_>>().join(","))
}

/// SVG of a sampled Stokes diagram plus the extracted cylindrical braid
/// word, separated by a NUL byte.
#[wasm_bindgen]
pub fn stokes_svg(formal_type: &str, eps: f64, samples: usize) -> Result<String, JsValue> {
    let tau = parse_formal_type(formal_type).map_err(err)?;
    let diag = stokes_braid(&tau, eps, samples).map_err(err)?;
    let word = format!(
        "{}: {}",
        diag.word.n,
        diag.word.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    );
    Ok(format!("{}\u{0}{}", render::stokes_svg(&diag), word))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_run_on_host() {
        let svg = front_svg("2: 1^3", None).unwrap();
        assert!(svg.starts_with("<svg"));
        let svg2 = front_svg("2: 1^3", Some("111".into())).unwrap();
        assert!(svg2.contains("class=\"eye\""));
        let json = census_json("2: 1^3", "2,3").unwrap();
        assert!(json.contains("\"mb\": 10"));
        assert_eq!(ruling_keys("2: 1^3").unwrap(), "001,100,111");
        let out = stokes_svg("N=2; g = 2/3,0 t^-3; g = -2/3,0 t^-3", 0.5, 1024).unwrap();
        assert!(out.contains("2: 1 1 1"));
    }
}
