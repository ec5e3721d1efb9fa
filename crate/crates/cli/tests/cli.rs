use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use gpdcalc::catalog;
use gpdcalc::group::FinGroup;
use gpdcalc::groupoid::{FinGroupoid, GpdMorphism, ObjMap};
use gpdcalc::module::GpdModule;
use gpdcalc::xmod::{GroupXMod, XModTable};
use serde_json::{json, Value};
use tempfile::TempDir;

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, v: &impl serde::Serialize) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpdcalc")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn circle_diagram(d: &Dir, connected: bool) -> PathBuf {
    let ends = FinGroupoid::discrete(&names(&["0", "1"])).to_json();
    let interval = FinGroupoid::codiscrete(&names(&["0", "1"])).to_json();
    let point = FinGroupoid::discrete(&names(&["*"])).to_json();
    let mut edges = vec![json!({ "src": "a", "tgt": "b", "morphism": { "objects": { "0": "0", "1": "1" } } })];
    if connected {
        edges.push(json!({ "src": "a", "tgt": "c", "morphism": { "objects": { "0": "*", "1": "*" } } }));
    }
    d.write("diagram.json", &json!({ "category": "gpd", "nodes": { "a": ends, "b": interval, "c": point }, "edges": edges }))
}

#[test]
fn every_scenario_passes_and_unknown_names_are_input_errors() {
    for name in ["circle", "identify-basepoints", "wedge-sn-s1", "free-crossed-attach", "retract-free"] {
        let o = run(&["scenario", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAILED"));
    }
    let listed = run(&["scenario", "--format", "json"]);
    assert_eq!(json_out(&listed).as_array().unwrap().len(), 5);
    let o = run(&["scenario", "no-such-scenario"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no-such-scenario"));
}

#[test]
fn circle_colimit_is_infinite_cyclic_and_output_is_deterministic() {
    let d = Dir::new();
    let diagram = circle_diagram(&d, true);
    let (a, b) = (d.path("a.json"), d.path("b.json"));
    let first = run(&["colim", "--diagram", s(&diagram), "--out", s(&a)]);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let second = run(&["colim", "--diagram", s(&diagram), "--out", s(&b), "--format", "json"]);
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    assert_eq!(second.stdout, y);
    let v: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["base"]["vertex_invariants"]["*"], json!({ "torsion": [], "free_rank": 1 }));
    assert!(v["base"]["realized"].is_null());
}

#[test]
fn disconnected_diagrams_are_refused() {
    let d = Dir::new();
    let diagram = circle_diagram(&d, false);
    let o = run(&["colim", "--diagram", s(&diagram)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("disconnected"), "{}", stderr(&o));
    let v = run(&["validate", "--kind", "diagram", s(&diagram)]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn malformed_json_reports_its_position() {
    let d = Dir::new();
    let p = d.path("bad.json");
    std::fs::write(&p, "{\n  \"objects\": [\"0\",\n}").unwrap();
    let o = run(&["validate", "--kind", "groupoid", s(&p)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn axiom_violations_are_assertion_failures() {
    let d = Dir::new();
    let mut g = FinGroupoid::from_group(&FinGroup::cyclic(3)).to_json();
    let ok = d.write("ok.json", &g);
    assert_eq!(run(&["validate", "--kind", "groupoid", s(&ok)]).status.code(), Some(0));
    // swap one product so associativity breaks
    let k = g.compose.iter().position(|[a, b, _]| a != b && !a.ends_with('0') && !b.ends_with('0')).unwrap();
    let wrong = g.compose.iter().map(|c| c[2].clone()).find(|c| *c != g.compose[k][2]).unwrap();
    g.compose[k][2] = wrong;
    let bad = d.write("bad.json", &g);
    let o = run(&["validate", "--kind", "groupoid", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
    // the same file as an operation input is an input error
    let u = d.write("u.json", &ObjMap::identity(&names(&["*"])).to_json());
    assert_eq!(run(&["pullback", "--map", s(&u), "--gpd", s(&bad)]).status.code(), Some(2));
}

#[test]
fn fake_lift_is_not_cocartesian_but_the_universal_one_is() {
    let d = Dir::new();
    let z = d.write("z.json", &FinGroupoid::codiscrete(&names(&["0", "1"])).to_json());
    let u = d.write("u.json", &ObjMap::collapse(&names(&["0", "1"]), "*").to_json());
    let o = run(&["check-cocartesian", "--map", s(&u), "--gpd", s(&z)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let y = d.write("y.json", &FinGroupoid::discrete(&names(&["*"])).to_json());
    let psi = d.write("psi.json", &json!({ "objects": { "0": "*", "1": "*" }, "arrows": {} }));
    let fake_arrows: serde_json::Map<String, Value> = FinGroupoid::codiscrete(&names(&["0", "1"]))
        .arrows()
        .iter()
        .map(|a| (a.id.clone(), json!(FinGroupoid::discrete(&names(&["*"])).arrows()[0].id)))
        .collect();
    let psi_full = d.write("psi2.json", &json!({ "objects": { "0": "*", "1": "*" }, "arrows": fake_arrows }));
    assert_eq!(run(&["check-cocartesian", "--map", s(&u), "--gpd", s(&z), "--target", s(&y), "--psi", s(&psi)]).status.code(), Some(2));
    let o = run(&["check-cocartesian", "--map", s(&u), "--gpd", s(&z), "--target", s(&y), "--psi", s(&psi_full)]);
    assert_eq!(o.status.code(), Some(1), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn induced_module_matches_the_tensor_value() {
    let d = Dir::new();
    let (c2, one) = (FinGroup::cyclic(2), FinGroup::trivial());
    let v = GpdMorphism::from_group_hom(&c2, &one, &[0, 0]).unwrap();
    let mv = d.write("v.json", &v.to_json());
    // ℤ/3 with the generator acting by -1: ℤ/3 ⊗_{ℤC2} ℤ = ℤ/3 / 2 = 0
    let sign = GpdModule::cyclic_with(v.source.clone(), 3, |p| if v.source.is_identity(p) { 1 } else { -1 });
    let m = d.write("m.json", &sign.to_json());
    let o = run(&["induce-module", "--morphism", s(&mv), "--module", s(&m), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json_out(&o)["invariants"]["*"], json!({ "torsion": [], "free_rank": 0 }));
    let triv = d.write("t.json", &GpdModule::trivial_action(v.source.clone(), 3).to_json());
    let o = run(&["induce-module", "--morphism", s(&mv), "--module", s(&triv), "--format", "json"]);
    assert_eq!(json_out(&o)["invariants"]["*"], json!({ "torsion": [3], "free_rank": 0 }));
}

#[test]
fn free_objects_over_the_interval() {
    let d = Dir::new();
    let q = FinGroupoid::group_times_codiscrete(&FinGroup::cyclic(2), &names(&["0", "1"]));
    let gp = d.write("q.json", &q.to_json());
    let o = run(&["free-module", "--gpd", s(&gp), "--basis", "e=0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json_out(&o);
    for x in ["0", "1"] {
        assert_eq!(v["invariants"][x], json!({ "torsion": [], "free_rank": 2 }));
    }
    let x0 = q.object_index("0").unwrap();
    let t = q.hom(x0, x0).iter().map(|&a| a as usize).find(|&a| !q.is_identity(a)).unwrap();
    let rel = format!("c={}", q.arrow(t).id);
    let o = run(&["free-xmod", "--gpd", s(&gp), "--relator", &rel, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json_out(&o);
    assert_eq!(v["abelianized"]["complete"], json!(true));
    for x in ["0", "1"] {
        assert_eq!(v["abelianized"]["invariants"][x], json!({ "torsion": [], "free_rank": 1 }));
    }
    // the fibres are infinite, so no table exists to find
    let o = run(&["free-xmod", "--gpd", s(&gp), "--relator", &rel, "--realize", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(json_out(&o)["realized"].is_null());
}

#[test]
fn crossed_squares_and_tensors() {
    let d = Dir::new();
    let c2 = FinGroup::cyclic(2);
    let id = d.write("id.json", &XModTable::from_group_xmod(&GroupXMod::identity(&c2)).to_json());
    let o = run(&["d-complete", "--mu", s(&id), "--nu", s(&id)]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let o = run(&["tensor", "--mu", s(&id), "--nu", s(&id), "--realize", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json_out(&o)["realized"]["order"], json!(2));
    let starved = run(&["tensor", "--mu", s(&id), "--nu", s(&id), "--realize", "--bound", "1"]);
    assert_eq!(starved.status.code(), Some(3), "{}", stdout(&starved));
    let two = d.write("two.json", &XModTable::zero(Arc::new(FinGroupoid::discrete(&names(&["a", "b"])))).to_json());
    assert_eq!(run(&["tensor", "--mu", s(&id), "--nu", s(&two)]).status.code(), Some(2));
}

#[test]
fn groupoid_operations() {
    let d = Dir::new();
    let s3 = catalog::small_groups().into_iter().find(|(_, g)| g.order() == 6 && !g.is_abelian()).unwrap().1;
    let g = FinGroupoid::group_times_codiscrete(&s3, &names(&["0", "1"]));
    let gp = d.write("g.json", &g.to_json());
    let u = d.write("u.json", &ObjMap::collapse(&names(&["0", "1"]), "*").to_json());

    let o = run(&["universal-morphism", "--map", s(&u), "--gpd", s(&gp), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // S3 * ℤ, abelianized: ℤ/2 ⊕ ℤ
    assert_eq!(json_out(&o)["vertex_invariants"]["*"], json!({ "torsion": [2], "free_rank": 1 }));

    let back = d.write("back.json", &ObjMap::new(names(&["p", "q", "r"]), names(&["0", "1"]), vec![0, 0, 1]).unwrap().to_json());
    let o = run(&["pullback", "--map", s(&back), "--gpd", s(&gp), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json_out(&o)["groupoid"]["arrows"].as_array().unwrap().len(), 9 * 6);

    let x0 = g.object_index("0").unwrap();
    let r = g
        .hom(x0, x0)
        .iter()
        .map(|&a| a as usize)
        .find(|&a| g.vertex_group(x0).0.element_order(g.vertex_group(x0).1.iter().position(|&b| b == a).unwrap()) == 3)
        .unwrap();
    let o = run(&["quotient", "--gpd", s(&gp), "--arrow", &g.arrow(r).id, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json_out(&o)["quotient"]["arrows"].as_array().unwrap().len(), 4 * 2);

    let o = run(&["retract", "--gpd", s(&gp), "--object", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json_out(&o)["vertex"]["arrows"].as_array().unwrap().len(), 6);
}
