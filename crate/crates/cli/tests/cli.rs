use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    out: Value,
    err: String,
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Workspace {
        Workspace {
            dir: TempDir::new().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn doc(&self, name: &str, field: &str, rows: Value) -> PathBuf {
        self.write(name, &json!({ "field": field, "name": name, "matrix": rows }))
    }

    fn write(&self, name: &str, doc: &Value) -> PathBuf {
        let p = self.path(&format!("{name}.json"));
        fs::write(&p, doc.to_string()).unwrap();
        p
    }
}

fn run<P: AsRef<Path>>(args: &[&str], files: &[P]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_archiclass"));
    cmd.args(args);
    for f in files {
        cmd.arg(f.as_ref());
    }
    let output = cmd.output().unwrap();
    let stdout = String::from_utf8(output.stdout).unwrap();
    Run {
        code: output.status.code().unwrap(),
        out: serde_json::from_str(&stdout).unwrap_or(Value::Null),
        err: String::from_utf8(output.stderr).unwrap(),
    }
}

fn qt_identity(ws: &Workspace, name: &str) -> PathBuf {
    ws.doc(name, "Q(t)", json!([["1", "0"], ["0", "1"]]))
}

#[test]
fn compare_swap_is_similar_to_identity() {
    let ws = Workspace::new();
    let p = ws.doc("p", "Q", json!([[0, 1], [1, 0]]));
    let i = ws.doc("i", "Q", json!([[1, 0], [0, 1]]));
    let r = run(&["compare", "--relation", "sim"], &[&p, &i]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out["holds"], true);
    assert_eq!(r.out["verified"], true);
    assert_eq!(r.out["certificate"]["kind"], "pair");
}

#[test]
fn compare_unbounded_against_one_fails() {
    let ws = Workspace::new();
    let a = ws.doc("a", "Q(t)", json!([["t^-1"]]));
    let b = ws.doc("b", "Q(t)", json!([["1"]]));
    let r = run(&["compare", "--relation", "succeq"], &[&a, &b]);
    assert_eq!(r.code, 1);
    assert_eq!(r.out["holds"], false);
    assert_eq!(r.out["certificate"], Value::Null);

    // The infinitesimal t lies below 1, with multiplier t and r = 1.
    let t = ws.doc("t", "Q(t)", json!([["t"]]));
    let r = run(&["compare"], &[&t, &b]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out["certificate"]["kind"], "bounded_multiplier");
    assert_eq!(r.out["certificate"]["c"], json!([["t"]]));
    assert_eq!(r.out["certificate"]["r"], "1");
    assert_eq!(run(&["compare"], &[&b, &t]).code, 1);
}

#[test]
fn compare_with_itself_holds_for_every_relation() {
    let ws = Workspace::new();
    let tall = ws.doc("tall", "Q(t)", json!([["t", "1/(1+t)"], ["2", "t^-1"], ["0", "3"]]));
    let square = ws.doc("sq", "Q(t)", json!([["t", "1/(1+t)"], ["2", "t^-1"]]));
    for rel in ["succeq", "sim", "gg", "equiv"] {
        let r = run(&["compare", "--relation", rel], &[&square, &square]);
        assert_eq!(r.code, 0, "{rel}: {}", r.err);
        assert_eq!(r.out["verified"], true, "{rel}");
    }
    for rel in ["succeq", "sim"] {
        assert_eq!(run(&["compare", "--relation", rel], &[&tall, &tall]).code, 0);
    }
    // The scalar relations are defined on square matrices only.
    assert_eq!(run(&["compare", "--relation", "gg"], &[&tall, &tall]).code, 2);
}

#[test]
fn compare_rejects_mismatched_inputs() {
    let ws = Workspace::new();
    let q = ws.doc("q", "Q", json!([[1, 2]]));
    let qt = ws.doc("qt", "Q(t)", json!([["1", "2"]]));
    let wide = ws.doc("wide", "Q", json!([[1, 2, 3]]));
    assert_eq!(run(&["compare"], &[&q, &qt]).code, 2);
    assert_eq!(run(&["compare"], &[&q, &wide]).code, 2);
    let r = run(&["--field", "Qt", "compare"], &[&q, &q]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("conflicts"), "{}", r.err);
}

#[test]
fn malformed_documents_exit_two() {
    let ws = Workspace::new();
    let ragged = ws.doc("ragged", "Q", json!([[1, 2], [3]]));
    let bad_entry = ws.doc("bad", "Q(t)", json!([["t^"]]));
    let q_with_t = ws.doc("qt", "Q", json!([["t"]]));
    let no_field = ws.write("nofield", &json!({ "matrix": [[1]] }));
    let not_json = ws.path("junk.json");
    fs::write(&not_json, "[[1").unwrap();
    for f in [&ragged, &bad_entry, &q_with_t, &no_field, &not_json] {
        let r = run(&["wval"], &[f]);
        assert_eq!(r.code, 2, "{}", f.display());
        assert!(!r.err.is_empty());
    }
    let missing = ws.path("missing.json");
    assert_eq!(run(&["wval"], &[&missing]).code, 2);
    // --field supplies the backend when the document omits it.
    assert_eq!(run(&["--field", "Q", "wval"], &[&no_field]).code, 0);
    assert_eq!(run(&["frobnicate"], &[] as &[&Path]).code, 2);
}

#[test]
fn canon_examples() {
    let ws = Workspace::new();
    let cases = [
        (json!([["t", "t^3"], ["0", "t^2"]]), json!([["t", "0"], ["0", "t^2"]])),
        (json!([["1", "0"], ["0", "1"]]), json!([["1", "0"], ["0", "1"]])),
        (json!([["2t", "2"], ["0", "3t^2"]]), json!([["t", "1"], ["0", "t^2"]])),
    ];
    for (k, (input, expected)) in cases.into_iter().enumerate() {
        let f = ws.doc(&format!("c{k}"), "Q(t)", input);
        let r = run(&["canon"], &[&f]);
        assert_eq!(r.code, 0, "{}", r.err);
        assert_eq!(r.out["canonical"]["matrix"], expected);
        assert_eq!(r.out["canonical"]["field"], "Q(t)");
    }
    let f = ws.doc("d", "Q(t)", json!([["2t", "2"], ["0", "3t^2"]]));
    let d = &run(&["canon"], &[&f]).out["descriptor"];
    assert_eq!(d["shape_text"], "{(1, 1), (1, 2), (2, 2)}");
    assert_eq!(d["pivot_valuations"], json!([1, 2]));
}

#[test]
fn canon_rejects_q_and_zero() {
    let ws = Workspace::new();
    let q = ws.doc("q", "Q", json!([[1, 2], [3, 4]]));
    let r = run(&["canon"], &[&q]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("Q(t)"), "{}", r.err);
    let zero = ws.doc("z", "Q(t)", json!([["0", "0"]]));
    assert_eq!(run(&["canon"], &[&zero]).code, 2);
}

#[test]
fn lattice_examples() {
    let ws = Workspace::new();
    let e11 = ws.doc("e11", "Q(t)", json!([["1", "0"], ["0", "0"]]));
    let e12 = ws.doc("e12", "Q(t)", json!([["0", "1"], ["0", "0"]]));
    let r = run(&["lattice", "--op", "meet"], &[&e11, &e12]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out["descriptor"]["shape_text"], "{(1, 1), (1, 2), (2, 2)}");
    assert_eq!(r.out["canonical"]["matrix"], json!([["1", "0"], ["0", "1"]]));
    let rep = ws.write("rep", &r.out["representative"]);
    let i = qt_identity(&ws, "i");
    assert_eq!(run(&["compare", "--relation", "sim"], &[&rep, &i]).code, 0);

    let d10 = ws.doc("d10", "Q", json!([[1, 0], [0, 0]]));
    let d01 = ws.doc("d01", "Q", json!([[0, 0], [0, 1]]));
    let r = run(&["lattice", "--op", "join"], &[&d10, &d01]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out["descriptor"]["zero_class"], true);
    assert_eq!(r.out["descriptor"]["shape"], json!([]));

    let a = ws.doc("a", "Q(t)", json!([["t", "1"], ["0", "t^2"]]));
    let meet = run(&["lattice", "--op", "meet"], &[&a, &a]);
    let shape = run(&["shape"], &[&a]);
    assert_eq!(meet.out["descriptor"], shape.out);

    let wide = ws.doc("w", "Q(t)", json!([["1", "0", "0"]]));
    assert_eq!(run(&["lattice", "--op", "join"], &[&a, &wide]).code, 2);
}

#[test]
fn factor_examples() {
    let ws = Workspace::new();
    let p = ws.doc("p", "Q(t)", json!([["0", "1"], ["1", "0"]]));
    let r = run(&["factor"], &[&p]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out["factors"], json!([{ "kind": "swap", "rows": [1, 2], "text": "P_1,2" }]));
    assert_eq!(r.out["product_check"], true);

    let d = ws.doc("d", "Q(t)", json!([["1", "0"], ["0", "t"]]));
    let r = run(&["factor"], &[&d]);
    assert_eq!(r.code, 1);
    assert_eq!(r.out["witness"], json!({ "kind": "no_bibounded_minor", "min_valuation": 1 }));

    let u = ws.doc("u", "Q(t)", json!([["t^-1", "0"], ["0", "1"]]));
    let r = run(&["factor"], &[&u]);
    assert_eq!(r.code, 1);
    assert_eq!(r.out["witness"]["kind"], "unbounded_entry");
    assert_eq!(r.out["witness"]["position"], json!([1, 1]));

    let wide = ws.doc("w", "Q", json!([[1, 0, 0], [0, 1, 0]]));
    assert_eq!(run(&["factor"], &[&wide]).code, 2);
}

#[test]
fn factors_multiply_back() {
    let ws = Workspace::new();
    // Bibounded: bounded entries, determinant (1 − t)(2 + t) − 2t·(3 − t) has valuation 0.
    let a = ws.doc(
        "a",
        "Q(t)",
        json!([["1-t", "2t", "0"], ["3-t", "2+t", "t/(1+t)"], ["0", "1", "-1"]]),
    );
    let r = run(&["factor"], &[&a]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out["product_check"], true);
    let factors = r.out["factors"].as_array().unwrap();
    assert!(!factors.is_empty());
    for f in factors {
        assert!(["swap", "scale", "add_multiple"].contains(&f["kind"].as_str().unwrap()));
    }
}

#[test]
fn shape_psd_wval_examples() {
    let ws = Workspace::new();
    let i = ws.doc("i", "Q", json!([[1, 0], [0, 1]]));
    let r = run(&["shape"], &[&i]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out["shape_text"], "{(1, 1), (1, 2), (2, 2)}");
    assert_eq!(r.out["shape"], json!([[1, 1], [1, 2], [2, 2]]));

    let swap = ws.doc("s", "Q", json!([[0, 1], [1, 0]]));
    let r = run(&["psd"], &[&swap]);
    assert_eq!(r.code, 1);
    assert_eq!(r.out["psd"], false);
    let r = run(&["psd"], &[&i]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out["congruence_diagonal"], json!(["1", "1"]));
    let nonsym = ws.doc("n", "Q", json!([[1, 2], [0, 1]]));
    assert_eq!(run(&["psd"], &[&nonsym]).code, 2);

    let w = ws.doc("w", "Q(t)", json!([["t", "t^2"], ["t^3", "t"]]));
    assert_eq!(run(&["wval"], &[&w]).out["w"], 1);
    let z = ws.doc("z", "Q(t)", json!([["0"]]));
    assert_eq!(run(&["wval"], &[&z]).out["w"], "infinity");
}

#[test]
fn pinv_documents_round_trip() {
    let ws = Workspace::new();
    let cases = [
        ("sym", json!([["t", "1"], ["1", "0"]])),
        ("sing", json!([["1", "t"], ["t", "t^2"]])),
        ("rect", json!([["1", "t", "0"], ["2", "0", "1/(1 - t)"]])),
    ];
    for (name, rows) in cases {
        let a = ws.doc(name, "Q(t)", rows.clone());
        let once = run(&["pinv"], &[&a]);
        assert_eq!(once.code, 0, "{}", once.err);
        let p = ws.write(&format!("{name}_p"), &once.out["pseudo_inverse"]);
        let twice = run(&["pinv"], &[&p]);
        // (B⁺)⁺ = B, so exact re-parsing must return the original entries.
        let back: Value = twice.out["pseudo_inverse"]["matrix"].clone();
        let original = run(&["--out", ws.path("orig_p.json").to_str().unwrap(), "pinv"], &[&a]);
        assert_eq!(original.code, 0);
        let written: Value = serde_json::from_str(&fs::read_to_string(ws.path("orig_p.json")).unwrap()).unwrap();
        let inner = ws.write(&format!("{name}_w"), &written["pseudo_inverse"]);
        let reparsed = run(&["pinv"], &[&inner]);
        assert_eq!(reparsed.out["pseudo_inverse"]["matrix"], back);
        assert_eq!(back, rows, "{name}");
        if name != "rect" {
            let b = ws.write(&format!("{name}_b"), &twice.out["pseudo_inverse"]);
            let eq = run(&["compare", "--relation", "equiv"], &[&b, &a]);
            assert_eq!(eq.code, 0, "{name}: {}", eq.err);
            assert_eq!(eq.out["certificate"]["forward"]["alpha"], "1", "{name}");
        }
    }
}

#[test]
fn canonical_documents_are_fixed_points() {
    let ws = Workspace::new();
    let a = ws.doc("a", "Q(t)", json!([["2t", "2", "t/(2-t)"], ["1", "3t^2", "-1/2"], ["0", "t", "t^-1"]]));
    let out = ws.path("canon.json");
    let r = run(&["--out", out.to_str().unwrap(), "canon"], &[&a]);
    assert_eq!(r.code, 0, "{}", r.err);
    let written: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let c = ws.write("c", &written["canonical"]);
    let again = run(&["canon"], &[&c]);
    assert_eq!(again.out["canonical"]["matrix"], written["canonical"]["matrix"]);
    assert_eq!(run(&["compare", "--relation", "sim"], &[&c, &a]).code, 0);
}

#[test]
fn selftest_quick_passes() {
    let r = run(&["--seed", "11", "selftest", "--quick"], &[] as &[&Path]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert_eq!(r.out["passed"], true);
    assert!(r.out["suites"].as_array().unwrap().len() >= 7);
}
