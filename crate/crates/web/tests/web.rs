use serde_json::Value;
use toratlas_web::{catalog_names, classify_builtin, draw_class, genus_text};

#[test]
fn names() {
    assert_eq!(catalog_names(), ["K33", "K5", "E42", "F11", "F12", "F13", "F14", "G1"]);
}

#[test]
fn classify_counts() {
    for (name, count) in [("K33", 2), ("K5", 6), ("F12", 4), ("E42", 0)] {
        let r: Value = serde_json::from_str(&classify_builtin(name, 1, "none").unwrap()).unwrap();
        assert_eq!(r["classes"].as_array().unwrap().len(), count, "{name}");
    }
    let r: Value = serde_json::from_str(&classify_builtin("K33", 1, "cycle4").unwrap()).unwrap();
    assert_eq!(r["classes"].as_array().unwrap().len(), 5);
    assert!(classify_builtin("K33", 1, "loop").is_err());
    assert!(classify_builtin("K7", 1, "none").is_err());
}

#[test]
fn svg_of_a_class() {
    let svg = draw_class("F14", 1, "none", 0).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("8-gon"));
    assert_eq!(svg, draw_class("F14", 1, "none", 0).unwrap());
    assert!(draw_class("F14", 1, "none", 2).is_err());
    assert!(draw_class("K33", 1, "directed-edge", 5).unwrap().contains("<polygon"));
}

#[test]
fn genus_from_text() {
    let r: Value = serde_json::from_str(&genus_text("4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap()).unwrap();
    assert_eq!(r["genus"], 0);
    let k33 = toratlas::catalog::builtin("K33").unwrap().to_text();
    let r: Value = serde_json::from_str(&genus_text(&k33).unwrap()).unwrap();
    assert_eq!(r["genus"], 1);
    assert!(genus_text("2 1\n0 0\n").is_err());
}
