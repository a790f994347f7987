//! Browser bindings for the lenscat toolkit.
//!
//! Three string-to-string operations back the demo page: a lens law
//! validator with witnesses, a category-of-elements explorer and a
//! décalage explorer. Each takes the JSON wire format of the core crate
//! and returns a JSON report with an embedded SVG where applicable, so
//! the page itself stays free of any framework.

mod render;

use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use lenscat::copresheaf::elements;
use lenscat::decalage::{decalage, decalage_comonad_laws};
use lenscat::factorisation::splitting_factorisation_report;
use lenscat::io::{CategoryFile, CopresheafFile, LensFile};
use lenscat::opfibration::{discrete_opfibration_report, split_opfibration_report};
use lenscat::presets;

fn error_json(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn lens_report(input: &str) -> String {
    let file: LensFile = match serde_json::from_str(input) {
        Ok(f) => f,
        Err(e) => return error_json(e),
    };
    let lens = match file.resolve() {
        Ok(l) => l,
        Err(e) => return error_json(e),
    };
    let mut witnesses: Vec<String> = Vec::new();
    witnesses.extend(
        lens.source()
            .validate()
            .iter()
            .map(|v| format!("source: {v}")),
    );
    witnesses.extend(
        lens.target()
            .validate()
            .iter()
            .map(|v| format!("target: {v}")),
    );
    witnesses.extend(
        lens.functor()
            .validate()
            .iter()
            .map(|v| format!("functor: {v}")),
    );
    witnesses.extend(lens.validate().iter().map(|v| format!("lens: {v}")));
    let lawful = witnesses.is_empty();
    let (split, strict, dopf) = if lawful {
        (
            split_opfibration_report(&lens).is_empty(),
            splitting_factorisation_report(&lens).is_empty(),
            discrete_opfibration_report(lens.functor()).is_empty(),
        )
    } else {
        (false, false, false)
    };
    let svg = render::category_svg(lens.source(), |o| lens.functor().on_object(o).index());
    json!({
        "valid": lawful,
        "witnesses": witnesses,
        "is_discrete_opfibration": dopf,
        "is_split_opfibration": split,
        "strict_factorisation": strict,
        "svg": svg,
        "summary": format!(
            "{} source objects over {} base objects, {} lifts",
            lens.source().object_count(),
            lens.target().object_count(),
            lens.lifts().count(),
        ),
    })
    .to_string()
}

fn elements_report(input: &str) -> String {
    let file: CopresheafFile = match serde_json::from_str(input) {
        Ok(f) => f,
        Err(e) => return error_json(e),
    };
    let cop = match file.resolve() {
        Ok(c) => c,
        Err(e) => return error_json(e),
    };
    let issues: Vec<String> = cop
        .base()
        .validate()
        .iter()
        .map(|v| format!("base: {v}"))
        .chain(cop.validate().iter().map(|v| format!("copresheaf: {v}")))
        .collect();
    if !issues.is_empty() {
        return json!({ "valid": false, "witnesses": issues }).to_string();
    }
    let el = match elements(&cop) {
        Ok(el) => el,
        Err(e) => return error_json(e),
    };
    let svg = render::category_svg(&el.category, |o| el.projection.on_object(o).index());
    json!({
        "valid": true,
        "witnesses": [],
        "objects": el.category.object_count(),
        "morphisms": el.category.morphism_count(),
        "is_discrete_opfibration": discrete_opfibration_report(&el.projection).is_empty(),
        "lens": serde_json::to_value(LensFile::from_lens(&el.lens)).unwrap(),
        "svg": svg,
        "summary": format!(
            "el(F): {} objects, {} morphisms; colours follow the base object",
            el.category.object_count(),
            el.category.morphism_count(),
        ),
    })
    .to_string()
}

fn decalage_report(input: &str) -> String {
    let file: CategoryFile = match serde_json::from_str(input) {
        Ok(f) => f,
        Err(e) => return error_json(e),
    };
    let cat = match file.resolve() {
        Ok(c) => c,
        Err(e) => return error_json(e),
    };
    let issues: Vec<String> = cat.validate().iter().map(|v| v.to_string()).collect();
    if !issues.is_empty() {
        return json!({ "valid": false, "witnesses": issues }).to_string();
    }
    let dec = match decalage(&cat) {
        Ok(d) => d,
        Err(e) => return error_json(e),
    };
    let laws_ok = match decalage_comonad_laws(&cat) {
        Ok(broken) => broken.is_empty(),
        Err(e) => return error_json(e),
    };
    let svg = render::category_svg(&dec.category, |o| dec.basepoint.on_object(o).index());
    json!({
        "valid": true,
        "witnesses": [],
        "objects": dec.category.object_count(),
        "morphisms": dec.category.morphism_count(),
        "comonad_laws_hold": laws_ok,
        "counit_is_discrete_opfibration":
            discrete_opfibration_report(&dec.counit).is_empty(),
        "svg": svg,
        "summary": format!(
            "Dec(B): {} objects (the morphisms of B), {} morphisms; colours follow the coslice component",
            dec.category.object_count(),
            dec.category.morphism_count(),
        ),
    })
    .to_string()
}

fn preset_payload(name: &str) -> String {
    for (n, cat) in presets::category_presets() {
        if n == name {
            return serde_json::to_string_pretty(&CategoryFile::from_category(&cat)).unwrap();
        }
    }
    match name {
        "sample-copresheaf" => serde_json::to_string_pretty(&CopresheafFile::from_copresheaf(
            &presets::sample_copresheaf(),
        ))
        .unwrap(),
        "projection-lens" => {
            serde_json::to_string_pretty(&LensFile::from_lens(&presets::projection_lens())).unwrap()
        }
        "non-split-lens" => {
            serde_json::to_string_pretty(&LensFile::from_lens(&presets::non_split_lens())).unwrap()
        }
        "elements-lens" => {
            let el = elements(&presets::sample_copresheaf()).expect("preset copresheaf");
            serde_json::to_string_pretty(&LensFile::from_lens(&el.lens)).unwrap()
        }
        other => error_json(format!("unknown preset: {other}")),
    }
}

/// Validate a lens file: laws, witnesses, fibrational classification and
/// an SVG of the source category coloured by the base.
#[wasm_bindgen]
pub fn validate_lens(input: &str) -> String {
    lens_report(input)
}

/// Build the category of elements of a copresheaf file; returns the SVG,
/// counts and the canonical lens.
#[wasm_bindgen]
pub fn category_of_elements(input: &str) -> String {
    elements_report(input)
}

/// Build the décalage of a category file; returns the SVG, counts and the
/// comonad law verdicts.
#[wasm_bindgen]
pub fn decalage_of(input: &str) -> String {
    decalage_report(input)
}

/// Fetch a named preset as pretty-printed JSON for the editor.
#[wasm_bindgen]
pub fn preset(name: &str) -> String {
    preset_payload(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_report_on_preset() {
        let input = preset_payload("non-split-lens");
        let report: serde_json::Value = serde_json::from_str(&lens_report(&input)).unwrap();
        assert_eq!(report["valid"], true);
        assert_eq!(report["is_split_opfibration"], false);
        assert_eq!(report["strict_factorisation"], false);
        assert!(report["svg"].as_str().unwrap().starts_with("<svg"));
    }

    #[test]
    fn elements_report_on_preset() {
        let input = preset_payload("sample-copresheaf");
        let report: serde_json::Value = serde_json::from_str(&elements_report(&input)).unwrap();
        assert_eq!(report["valid"], true);
        assert_eq!(report["objects"], 4);
        assert_eq!(report["morphisms"], 6);
        assert_eq!(report["is_discrete_opfibration"], true);
    }

    #[test]
    fn decalage_report_on_preset() {
        let input = preset_payload("commutative-square");
        let report: serde_json::Value = serde_json::from_str(&decalage_report(&input)).unwrap();
        assert_eq!(report["valid"], true);
        assert_eq!(report["objects"], 9);
        assert_eq!(report["morphisms"], 16);
        assert_eq!(report["comonad_laws_hold"], true);
        assert_eq!(report["counit_is_discrete_opfibration"], true);
    }

    #[test]
    fn malformed_input_reports_error() {
        let report: serde_json::Value = serde_json::from_str(&lens_report("{broken")).unwrap();
        assert!(report["error"].as_str().is_some());
    }
}
