use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    status: i32,
    json: Value,
    stdout: String,
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, content: Value) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, content.to_string()).unwrap();
        path
    }

    fn raw(&self, name: &str, content: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, content).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_schober")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    Run { status: out.status.code().unwrap(), json, stdout }
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn result(r: &Run) -> &Value {
    assert_eq!(r.status, 0, "{}", r.stdout);
    assert_eq!(r.json["ok"], true);
    &r.json["result"]
}

fn error(r: &Run, status: i32) -> &str {
    assert_eq!(r.status, status, "{}", r.stdout);
    assert_eq!(r.json["ok"], false);
    r.json["error"].as_str().unwrap()
}

fn spider(m: u32) -> Value {
    let hs: Vec<u32> = (0..m).collect();
    json!({"halfedges": hs, "tau": [], "vertices": [{"id": 0, "ccw": hs}]})
}

fn theta() -> Value {
    json!({
        "halfedges": [0, 1, 2, 3, 4, 5],
        "tau": [[0, 1], [2, 3], [4, 5]],
        "vertices": [{"id": 0, "ccw": [0, 2, 4]}, {"id": 1, "ccw": [1, 5, 3]}]
    })
}

fn with(mut base: Value, extra: Value) -> Value {
    for (k, v) in extra.as_object().unwrap() {
        base[k] = v.clone();
    }
    base
}

#[test]
fn transport_around_a_four_valent_vertex() {
    let ws = Workspace::new();
    let s = ws.file("s.json", spider(4));
    let c = ws.file("loop.json", json!({"base": 0, "steps": [{"vertex": 0, "from": 0, "turn": -4}]}));
    let r = run(&["transport", "--schober", p(&s), "--curve", p(&c)]);
    assert_eq!(result(&r), &json!({"word": "[2]"}));
    let r = run(&["monodromy", "--schober", p(&s), "--curve", p(&c)]);
    assert_eq!(result(&r), &json!({"word": "[0]"}));
    let r = run(&["winding", "--graph", p(&s), "--curve", p(&c)]);
    assert_eq!(result(&r), &json!({"winding": -4}));
}

#[test]
fn validate_reports_the_broken_invariant() {
    let ws = Workspace::new();
    let bad = ws.file(
        "bad.json",
        json!({"halfedges": [0, 1, 2], "tau": [[0, 1], [1, 2]], "vertices": [{"id": 0, "ccw": [0, 1, 2]}]}),
    );
    let r = run(&["validate", "--graph", p(&bad)]);
    assert_eq!(error(&r, 1), "tau-not-involution");
    assert_eq!(r.json["diagnostics"][0]["code"], "tau-not-involution");
    let good = ws.file("good.json", theta());
    assert_eq!(result(&run(&["validate", "--graph", p(&good)])), &json!({"valid": true}));
    let r = run(&["invariants", "--graph", p(&bad)]);
    assert_eq!(error(&r, 1), "tau-not-involution");
}

#[test]
fn k0_rep_on_the_one_spider() {
    let ws = Workspace::new();
    let s = ws.file("s.json", with(spider(1), json!({"singular": [0]})));
    let k = ws.file("k.json", json!({"rank": 1, "singular": {"0": {"f": [[1, 1]], "g": [[1], [1]]}}}));
    let r = run(&["k0-rep", "--schober", p(&s), "--k0", p(&k)]);
    assert_eq!(result(&r), &json!({"monodromy": {"vertex-loop": [[-1]]}}));
    let r = run(&["eta-check", "--schober", p(&s), "--k0", p(&k), "--eta", "[0]"]);
    assert_eq!(result(&r), &json!({"invariant": true}));
    let r = run(&["eta-check", "--schober", p(&s), "--k0", p(&k), "--eta", "[1]"]);
    assert_eq!(result(&r), &json!({"invariant": false}));
    let r = run(&["k0-word", "--k0", p(&k), "--word", "T(v0)*[1]"]);
    assert_eq!(result(&r), &json!({"matrix": [[-1]]}));
}

#[test]
fn exit_codes_separate_parse_and_domain_errors() {
    let ws = Workspace::new();
    let r = run(&["frobnicate", "--graph", "/nonexistent/g.json"]);
    assert_eq!(error(&r, 2), "parse-error");
    assert!(r.json["message"].as_str().unwrap().contains("frobnicate"));
    let r = run(&["invariants", "--graph", "/nonexistent/g.json"]);
    assert_eq!(error(&r, 2), "parse-error");
    let garbled = ws.raw("g.json", "{\"halfedges\": [0,");
    assert_eq!(error(&run(&["orientable", "--graph", p(&garbled)]), 2), "parse-error");
    let s = ws.file("s.json", spider(3));
    let k = ws.file("k.json", json!({"rank": 1}));
    assert_eq!(error(&run(&["k0-word", "--k0", p(&k), "--word", "S^"]), 2), "parse-error");
    assert_eq!(error(&run(&["k0-word", "--k0", p(&k), "--word", "S"]), 1), "missing-k0");
    assert_eq!(error(&run(&["orientable", "--graph", p(&s)]), 1), "odd-valency");
    assert_eq!(error(&run(&["contract", "--graph", p(&s), "--edge", "0"]), 1), "not-contractible");
    let bad_deco = ws.file("d.json", with(spider(3), json!({"decorations": {"zero": "S"}})));
    assert_eq!(error(&run(&["dot", "--schober", p(&bad_deco)]), 2), "parse-error");
}

#[test]
fn graph_verbs() {
    let ws = Workspace::new();
    let g = ws.file("theta.json", theta());
    let inv = run(&["invariants", "--graph", p(&g)]);
    assert_eq!(result(&inv)["genus"], 0);
    assert_eq!(result(&inv)["euler_char"], -1);
    assert_eq!(result(&inv)["boundary_walks"].as_array().unwrap().len(), 3);
    let target = ws.file("t.json", json!({"genus": 0, "marked": [0, 0, 0]}));
    let inv = run(&["invariants", "--graph", p(&g), "--target", p(&target)]);
    assert_eq!(result(&inv)["spanning"], true);

    let exit = run(&["exit-paths", "--graph", p(&g)]);
    assert_eq!(result(&exit)["arrows"].as_array().unwrap().len(), 6);

    let c = run(&["contract", "--graph", p(&g), "--edge", "2"]);
    let contracted = &result(&c)["graph"];
    assert_eq!(contracted["vertices"].as_array().unwrap().len(), 1);
    let again = ws.file("c.json", contracted.clone());
    assert_eq!(result(&run(&["validate", "--graph", p(&again)])), &json!({"valid": true}));
    let round = run(&["contract", "--graph", p(&g), "--edge", "2"]);
    assert_eq!(round.stdout, c.stdout);

    assert_eq!(result(&run(&["orientable", "--graph", p(&again)])), &json!({"orientable": true}));
    let signs = run(&["glue-signs", "--graph", p(&again), "--n", "3"]);
    assert_eq!(result(&signs)["feasible"], true);
    let torus = ws.file(
        "torus.json",
        json!({"halfedges": [0, 1, 2, 3], "tau": [[0, 1], [2, 3]], "vertices": [{"id": 0, "ccw": [0, 2, 1, 3]}]}),
    );
    assert_eq!(result(&run(&["orientable", "--graph", p(&torus)])), &json!({"orientable": false}));
    let signs = run(&["glue-signs", "--graph", p(&torus), "--n", "-2"]);
    assert_eq!(result(&signs), &json!({"feasible": false, "signs": null}));
    let signs = run(&["glue-signs", "--graph", p(&torus), "--n", "3"]);
    assert_eq!(result(&signs)["feasible"], true);

    let dot = run(&["dot", "--graph", p(&g)]);
    assert_eq!(dot.status, 0);
    assert!(dot.stdout.starts_with("graph ribbon {"));
    assert_eq!(dot.stdout.matches(" -- ").count(), 3);
}

#[test]
fn framing_verbs() {
    let ws = Workspace::new();
    let g = ws.file("s.json", spider(3));
    let canonical = ws.file("l0.json", json!({"corners": []}));
    let framed = ws.file("l1.json", json!({"corners": [{"h": 0, "w": -1}]}));
    let odd = run(&["framing-check", "--graph", p(&g), "--line-field", p(&canonical)]);
    assert_eq!(result(&odd), &json!({"framing": false}));
    let even = run(&["framing-check", "--graph", p(&g), "--line-field", p(&framed)]);
    assert_eq!(result(&even), &json!({"framing": true}));
    let c = ws.file("loop.json", json!({"base": 0, "steps": [{"vertex": 0, "from": 0, "turn": -3}]}));
    let r = run(&["monodromy", "--schober", p(&g), "--curve", p(&c), "--line-field", p(&canonical)]);
    assert_eq!(error(&r, 1), "odd-winding-line-field");
    let r = run(&["monodromy", "--schober", p(&g), "--curve", p(&c), "--line-field", p(&framed)]);
    assert_eq!(result(&r), &json!({"word": "[0]"}));
    let periodic = ws.file("p.json", with(spider(3), json!({"period": 2})));
    let r = run(&["monodromy", "--schober", p(&periodic), "--curve", p(&c), "--canonical"]);
    assert_eq!(result(&r), &json!({"word": "[0]"}));
    let r = run(&["monodromy", "--schober", p(&g), "--curve", p(&c), "--canonical"]);
    assert_eq!(error(&r, 1), "framing-required");
}

#[test]
fn schober_verbs() {
    let ws = Workspace::new();
    let plain = ws.file("a.json", theta());
    let gauged = ws.file("b.json", with(theta(), json!({"decorations": {"0": "X", "1": "X"}})));
    let twisted = ws.file("c.json", with(theta(), json!({"decorations": {"2": "X"}})));
    let rep = run(&["monodromy-rep", "--schober", p(&plain)]);
    let labels: Vec<&String> = result(&rep)["monodromy"].as_object().unwrap().keys().collect();
    assert_eq!(labels.len(), 4);
    assert!(labels.iter().any(|l| l.starts_with("cycle(e")));
    assert!(labels.iter().any(|l| l.as_str() == "vertex-loop(v1)"));
    let eq = run(&["equiv", "--schober", p(&plain), "--other", p(&gauged)]);
    assert_eq!(result(&eq), &json!({"equivalent": true}));
    let eq = run(&["equiv", "--schober", p(&plain), "--other", p(&twisted)]);
    assert_eq!(result(&eq), &json!({"equivalent": false}));

    let singular = ws
        .file("s.json", with(theta(), json!({"singular": [1], "cotwists": {"1": "P"}, "decorations": {"3": "S*[1]"}})));
    let c = ws.file("loop.json", json!({"base": 0, "steps": [{"vertex": 0, "from": 0, "turn": -1}, {"edge": 4, "dir": 1}, {"vertex": 1, "from": 5, "turn": -1}, {"edge": 0, "dir": -1}]}));
    let pushed = run(&["push-contract", "--schober", p(&singular), "--edge", "2", "--curve", p(&c)]);
    let out = result(&pushed);
    assert_eq!(out["schober"]["singular"], json!([0]));
    assert_eq!(out["schober"]["cotwists"], json!({"0": "P"}));
    let s2 = ws.file("s2.json", out["schober"].clone());
    let c2 = ws.file("c2.json", out["curve"].clone());
    let before = run(&["transport", "--schober", p(&singular), "--curve", p(&c)]);
    let after = run(&["transport", "--schober", p(&s2), "--curve", p(&c2)]);
    assert_eq!(result(&before), result(&after));
    let both = ws.file("both.json", with(theta(), json!({"singular": [0, 1]})));
    let r = run(&["push-contract", "--schober", p(&both), "--edge", "2"]);
    assert_eq!(error(&r, 1), "edge-joins-two-singularities");
}

#[test]
fn k0_verbs() {
    let ws = Workspace::new();
    let a2 = ws.file("e.json", json!([[1, -1], [0, 1]]));
    assert_eq!(result(&run(&["serre", "--euler", p(&a2)])), &json!({"matrix": [[0, 1], [-1, 1]]}));
    let sym = ws.file("sym.json", json!([[2, 1], [1, 1]]));
    assert_eq!(result(&run(&["cy-check", "--euler", p(&sym), "--n", "0"])), &json!({"holds": true}));
    assert_eq!(result(&run(&["cy-check", "--euler", p(&sym), "--n", "-1"])), &json!({"holds": false}));
    let singular = ws.file("bad.json", json!([[2]]));
    assert_eq!(error(&run(&["serre", "--euler", p(&singular)]), 1), "non-unimodular");

    let e = ws.file("ed.json", json!([[1]]));
    let f = ws.file("f.json", json!([[1], [1]]));
    let g = ws.file("g.json", json!([[1, 1]]));
    let holds = run(&["rel-cy-check", "--euler", p(&e), "--f", p(&f), "--g", p(&g), "--m", "1"]);
    assert_eq!(result(&holds), &json!({"necessary_condition_holds": true}));
    let fails = run(&["rel-cy-check", "--euler", p(&e), "--f", p(&f), "--g", p(&g), "--m", "2"]);
    assert_eq!(result(&fails), &json!({"necessary_condition_holds": false}));

    let m = run(&["local-matrix", "--m", "3"]);
    assert_eq!(result(&m), &json!({"matrix": [[-1, 1, 0], [-1, 0, 1]]}));
    assert_eq!(error(&run(&["local-matrix", "--m", "1"]), 1), "bad-argument");
}

#[test]
fn output_is_deterministic_and_schobers_round_trip() {
    let ws = Workspace::new();
    let s = ws.file(
        "s.json",
        with(theta(), json!({"singular": [1], "decorations": {"0": "S", "4": "[2]*U^-1"}, "period": 4})),
    );
    let first = run(&["push-contract", "--schober", p(&s), "--edge", "2"]);
    let second = run(&["push-contract", "--schober", p(&s), "--edge", "2"]);
    assert_eq!(first.stdout, second.stdout);
    let emitted = result(&first)["schober"].clone();
    let path = ws.file("emitted.json", emitted.clone());
    let dot = run(&["dot", "--schober", p(&path)]);
    assert!(dot.stdout.contains("shape=box"));
    let reparsed = run(&["push-contract", "--schober", p(&path), "--edge", "0"]);
    assert_eq!(error(&reparsed, 1), "loop-edge");
    assert_eq!(emitted["period"], 4);
}
