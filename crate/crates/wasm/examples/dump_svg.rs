//! Writes the demo SVGs to /tmp for a quick look during development.

use lenscat::io::{CategoryFile, CopresheafFile};

fn main() {
    let cop = lenscat::presets::sample_copresheaf();
    let input = serde_json::to_string(&CopresheafFile::from_copresheaf(&cop)).unwrap();
    let report: serde_json::Value =
        serde_json::from_str(&lenscat_wasm::category_of_elements(&input)).unwrap();
    std::fs::write("/tmp/elements.svg", report["svg"].as_str().unwrap()).unwrap();

    let square = CategoryFile::from_category(&lenscat::presets::commutative_square());
    let report: serde_json::Value = serde_json::from_str(&lenscat_wasm::decalage_of(
        &serde_json::to_string(&square).unwrap(),
    ))
    .unwrap();
    std::fs::write("/tmp/decalage.svg", report["svg"].as_str().unwrap()).unwrap();
    eprintln!("wrote /tmp/elements.svg and /tmp/decalage.svg");
}
