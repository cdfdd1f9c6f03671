use std::path::PathBuf;

use curvecx_cli::doc::{load_curve, Document, Kind};
use curvecx_cli::run;
use serde_json::Value;

fn dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn ok(args: &[&str]) -> String {
    let mut full = vec!["curvecx"];
    full.extend_from_slice(args);
    let (code, out, err) = run(full);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn save(name: &str, text: &str) -> String {
    let p = dir().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn fixture(name: &str) -> String {
    save(&format!("{name}.json"), &ok(&["fixture", name]))
}

fn payload(text: &str) -> Value {
    serde_json::from_str::<Value>(text).unwrap()["payload"].clone()
}

#[test]
fn documents_round_trip() {
    for name in [
        "torus-a", "torus-b", "g2-a1", "g2-a2", "g2-a3", "g2-a4", "g1p1b0:0", "d4:2", "d5:1", "g1p0b1:0",
    ] {
        let text = ok(&["fixture", name]);
        let doc = Document::parse(&text).unwrap();
        assert_eq!(doc.emit(), text);
        assert_eq!(doc.kind, Kind::Multicurve);
        load_curve(&doc).unwrap();
    }
    let text = ok(&["orbits", "2", "0", "0"]);
    assert_eq!(Document::parse(&text).unwrap().emit(), text);
}

#[test]
fn output_is_deterministic() {
    let g4 = fixture("g2-a4");
    for args in [
        vec!["orbits", "2", "0", "0"],
        vec!["chain", "2", "0", "0"],
        vec!["classify", &g4],
        vec!["complete", &g4],
    ] {
        assert_eq!(ok(&args), ok(&args));
    }
}

#[test]
fn census_examples() {
    assert_eq!(payload(&ok(&["orbits", "2", "0", "0"]))["total"], 6);
    assert_eq!(payload(&ok(&["orbits", "1", "0", "0"]))["total"], 1);
    assert_eq!(payload(&ok(&["orbits", "0", "3", "0"]))["total"], 0);
    let slice = payload(&ok(&["orbits", "2", "0", "0", "2"]));
    assert_eq!(slice["count"], 2);
    assert_eq!(slice["types"].as_array().unwrap().len(), 2);
}

#[test]
fn classify_examples() {
    let torus = payload(&ok(&["classify", &fixture("torus-a")]));
    assert_eq!(torus["nodes"].as_array().unwrap().len(), 1);
    assert_eq!(torus["edges"], serde_json::json!([[0, 0]]));
    let sep = payload(&ok(&["classify", &fixture("g2-a4")]));
    assert_eq!(sep["nodes"].as_array().unwrap().len(), 2);
}

#[test]
fn curve_commands() {
    let (a, b) = (fixture("torus-a"), fixture("torus-b"));
    assert_eq!(payload(&ok(&["intersect", &a, &b]))["intersection"], 1);
    assert_eq!(
        ok(&["twist", "--along", &a, "--power", "0", &b]),
        std::fs::read_to_string(&b).unwrap()
    );
    let moved = save("moved.json", &ok(&["twist", "--along", &a, "--power", "-2", &b]));
    assert_eq!(payload(&ok(&["intersect", &moved, &b]))["intersection"], 2);
    assert_eq!(payload(&ok(&["equiv", &a, &a]))["equivalent"], true);
    assert_eq!(payload(&ok(&["equiv", &a, &b]))["equivalent"], false);
}

#[test]
fn outputs_feed_back_in() {
    let g1 = fixture("g2-a1");
    let full = save("full.json", &ok(&["complete", &g1]));
    assert_eq!(
        payload(&std::fs::read_to_string(&full).unwrap())["components"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
    let ty = save("type.json", &ok(&["classify", &full]));
    let rep = payload(&ok(&["stabilizer", &ty]));
    assert_eq!(rep["is_pantalon_decomposition"], true);
    assert_eq!(rep["cub_order"], 48);
    assert_eq!(rep, payload(&ok(&["stabilizer", &full])));
    let cert = payload(&ok(&["large-action", &g1, &fixture("g2-a2"), "-n", "4"]));
    assert_eq!(cert["images"].as_array().unwrap().len(), 4);
    let both = payload(&ok(&["noncommensurable", &g1, &fixture("g2-a4"), "-n", "2"]));
    assert!(both["forward"].is_object() && both["backward"].is_object());
}

#[test]
fn inline_surfaces_are_accepted() {
    let surf = payload(&ok(&["surface", "t1"]));
    let curve = payload(&ok(&["fixture", "t1:0"]));
    let doc = serde_json::json!({
        "kind": "multicurve",
        "version": "1",
        "payload": { "surface": { "inline": surf["triangulation"] }, "weights": curve["weights"] },
    });
    let p = save("inline.json", &doc.to_string());
    assert_eq!(payload(&ok(&["intersect", &p, &p]))["intersection"], 0);
    assert_eq!(payload(&ok(&["classify", &p]))["ambient"]["punctures"], 1);
}

#[test]
fn exit_codes() {
    let mut doc: Value = serde_json::from_str(&ok(&["fixture", "torus-a"])).unwrap();
    doc["payload"]["weights"] = serde_json::json!([1, 1, 1]);
    let bad = save("parity.json", &doc.to_string());
    let (code, _, err) = run(["curvecx", "classify", &bad]);
    assert_eq!(code, 1);
    assert!(err.contains("ParityViolation"));

    doc["version"] = "9".into();
    let old = save("version.json", &doc.to_string());
    assert_eq!(run(["curvecx", "classify", &old]).0, 2);
    assert_eq!(run(["curvecx", "orbits", "x", "0", "0"]).0, 2);
    assert_eq!(run(["curvecx", "frobnicate"]).0, 2);
    assert_eq!(run(["curvecx", "classify", "/no/such/file"]).0, 2);
    let (code, _, err) = run(["curvecx", "chain", "1", "0", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("NoChain"));
    let g1 = fixture("g2-a1");
    let (code, _, err) = run(["curvecx", "large-action", &g1, &g1]);
    assert_eq!(code, 1);
    assert!(err.contains("FacePrecondition"));
    let (code, _, err) = run(["curvecx", "--step-budget", "1", "intersect", &g1, &fixture("g2-a2")]);
    assert_eq!(code, 1);
    assert!(err.contains("StepBudgetExceeded"));
}
