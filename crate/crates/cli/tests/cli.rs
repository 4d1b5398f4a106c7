use std::path::PathBuf;

use cadkit_cli::document::ResultDocument;
use cadkit_cli::run;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cadkit(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cadkit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, content: &str) -> String {
    let dir = std::env::temp_dir().join(format!("cadkit-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn summaries() {
    let f = corpus("circle_hyperbola.json");
    assert_eq!(cadkit(&["full", &f, "--summary"]), (0, "cells: 83\n".into(), String::new()));
    assert_eq!(cadkit(&["ec", &f, "--summary"]).1, "cells: 53\n");
    assert_eq!(cadkit(&["tticad", &corpus("pairs2.json"), "--summary"]).1, "cells: 105\n");
    assert_eq!(cadkit(&["tticad", &corpus("relaxed_pairs2.json"), "--summary"]).1, "cells: 183\n");
}

#[test]
fn document_round_trip_and_determinism() {
    let f = corpus("circle_hyperbola.json");
    let (code, a, _) = cadkit(&["ec", &f]);
    assert_eq!(code, 0);
    let doc: ResultDocument = serde_json::from_str(&a).unwrap();
    assert_eq!(doc.cell_count, 53);
    assert_eq!(doc.cells.len(), doc.cell_count);
    assert_eq!(doc.order, "x<y");
    assert_eq!(doc.algorithm, "ec");
    assert!(doc.projection.is_none());
    let c = &doc.cells[0];
    assert_eq!(c.signs.len(), 2);
    assert_eq!(c.truth.len(), 1);
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", a);
    assert_eq!(cadkit(&["ec", &f]).1, a);
}

#[test]
fn algebraic_samples_serialize_with_defining_polynomials() {
    let (_, a, _) = cadkit(&["full", &corpus("circle_hyperbola.json")]);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let samples: Vec<&serde_json::Value> =
        v["cells"].as_array().unwrap().iter().flat_map(|c| c["sample"].as_array().unwrap()).collect();
    assert!(samples.iter().any(|s| s.get("rational").is_some()));
    let alg = samples.iter().find(|s| s.get("defpoly").is_some()).unwrap();
    assert_eq!(alg["interval"].as_array().unwrap().len(), 2);
}

#[test]
fn projection_dump() {
    let f = corpus("circle_hyperbola.json");
    let (_, a, _) = cadkit(&["full", &f, "--dump-projection"]);
    let doc: ResultDocument = serde_json::from_str(&a).unwrap();
    let levels = doc.projection.unwrap();
    assert_eq!(levels.len(), 2);
    assert_eq!(levels[0].variable, "y");
    assert_eq!(levels[1].polys.len(), 3);
    let (_, s, _) = cadkit(&["full", &f, "--summary", "--dump-projection"]);
    assert!(s.starts_with("cells: 83\nlevel 2 (y):\n"));
    assert!(s.contains("[discriminant]"));
}

#[test]
fn text_format() {
    let (code, s, _) = cadkit(&["full", &corpus("circle_hyperbola.json"), "--format", "text"]);
    assert_eq!(code, 0);
    assert!(s.starts_with("algorithm: full\norder: x<y\ncells: 83\n"));
    assert_eq!(s.lines().count(), 3 + 83);
}

#[test]
fn exit_codes() {
    // input errors
    assert_eq!(cadkit(&["full", "/nonexistent/problem.json"]).0, 1);
    let (code, _, err) = cadkit(&["ec", &corpus("relaxed_pairs1.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("no implicit EC"));
    assert_eq!(cadkit(&["frobnicate"]).0, 1);
    assert_eq!(cadkit(&["--help"]).0, 0);
    let bad = temp_file("bad.json", r#"{"variables": ["x"], "formula": [{"constraints": [{"poly": "q", "relop": "<"}]}]}"#);
    assert_eq!(cadkit(&["full", &bad]).0, 1);
    // not well oriented: x w + y vanishes on the line x = y = 0 where z w + 1 still matters
    let fail = temp_file(
        "fail.json",
        r#"{"variables": ["x", "y", "z", "w"],
            "polynomials": {"f": "x*w+y", "g": "z*w+1"},
            "formula": [{"constraints": [{"poly": "f", "relop": "="}, {"poly": "g", "relop": "<"}], "ec": 0}]}"#,
    );
    let (code, _, err) = cadkit(&["ec", &fail]);
    assert_eq!(code, 2, "{}", err);
    assert!(err.contains("not well oriented"));
    let (_, _, all) = cadkit(&["ec", &fail, "--all-failures"]);
    assert!(all.contains("excluded projection polynomial not constant"));
}

#[test]
fn heuristic_table() {
    let f = corpus("circle_hyperbola.json");
    let (code, s, _) = cadkit(&["heuristic", &f, "--measure", "ndrr", "--algorithm", "full"]);
    assert_eq!(code, 0);
    assert!(s.contains("candidates: 2"));
    assert!(s.contains("chosen: order x<y; clauses (1*,2)"));
    assert!(s.contains("greedy order: x<y"));
    let rows: Vec<&str> = s.lines().filter(|l| l.contains("order ") && !l.starts_with("chosen")).collect();
    assert!(rows.iter().all(|r| r.split_whitespace().nth(2) == Some("7")), "{}", s);
    let (_, w, _) = cadkit(&["heuristic", &corpus("pairs2.json"), "--choose", "all", "--measure", "weighted:1,0", "--limit", "3"]);
    assert!(w.contains("warning: candidate list truncated to 3 of 8"));
    assert!(w.contains("note: each measure is divided by its maximum"));
    assert_eq!(cadkit(&["heuristic", &f, "--measure", "depth"]).0, 1);
    assert_eq!(cadkit(&["heuristic", &f, "--blocks", "x"]).0, 1);
}

#[test]
fn verify_reports_no_violations() {
    let (code, s, _) = cadkit(&["verify", &corpus("pairs1.json"), "--seed", "9", "--samples", "3"]);
    assert_eq!(code, 0);
    assert!(s.contains("cells: 53\n"));
    assert!(s.contains("violations: 0\n"));
    assert!(s.contains("structure problems: 0\n"));
}

#[test]
fn plot_markers() {
    let f = corpus("circle_hyperbola.json");
    let (code, svg, _) = cadkit(&["plot", &f]);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="cell""#).count(), 53);
    assert_eq!(svg.matches(r#"class="curve""#).count(), 2);
    assert_eq!(cadkit(&["plot", &f]).1, svg);
    let (_, full, _) = cadkit(&["plot", &f, "--algorithm", "full", "--viewport", "-3,3,-3,3"]);
    assert_eq!(full.matches(r#"class="cell""#).count(), 83);
    assert_eq!(cadkit(&["plot", &corpus("nullified_fibre.json")]).0, 1);
    assert_eq!(cadkit(&["plot", &f, "--viewport", "1,0,0,1"]).0, 1);
}
