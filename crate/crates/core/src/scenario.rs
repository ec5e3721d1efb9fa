//! Named end-to-end pipelines with expected results.

use std::sync::Arc;

use serde::Serialize;

use crate::colimit::{colimit_connected, discrete_map, pushout_along_discrete_gpd, Colimit, Diagram, GpdDiagram};
use crate::error::{Error, Result};
use crate::fpgroup::{Decision, RewriteBound};
use crate::group::FinGroup;
use crate::groupoid::{FinGroupoid, ObjMap};
use crate::intmat::AbGroupInvariants;
use crate::module::{pres_induce_universal, Act, ModBase, ModGen, ModulePres};
use crate::presented::PathWord;
use crate::word::universal_morphism;
use crate::xmod::{expanded_abelian_invariants, free_xmod, peiffer_abelianize, retract_fp_to_vertex, FpXMod};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScenarioSpec {
    pub name: &'static str,
    pub summary: &'static str,
    pub pipeline: &'static [&'static str],
    pub expected: &'static [&'static str],
}

pub const SCENARIOS: &[ScenarioSpec] = &[
    ScenarioSpec {
        name: "circle",
        summary: "interval with its endpoints identified",
        pipeline: &["gpd: codiscrete {0,1}", "colim: discrete {0,1} -> codiscrete, discrete {0,1} -> point"],
        expected: &["one object", "vertex group invariants ℤ", "powers ι¹..ι²⁰ pairwise distinct"],
    },
    ScenarioSpec {
        name: "identify-basepoints",
        summary: "C2 and C3 at two points, the points identified",
        pipeline: &["gpd: C2 at a + C3 at b", "universal-morphism: a,b -> *", "check-cocartesian: groups of order ≤ 6"],
        expected: &["vertex group invariants ℤ/6", "pushout agrees", "cocartesian certificate passes"],
    },
    ScenarioSpec {
        name: "wedge-sn-s1",
        summary: "free module on one generator over the interval, induced along the collapse of the endpoints",
        pipeline: &["mod: one free generator at 0 over codiscrete {0,1}", "induce-module: 0,1 -> *"],
        expected: &["base has one object with invariants ℤ", "1 generator", "0 relations"],
    },
    ScenarioSpec {
        name: "free-crossed-attach",
        summary: "free crossed modules on a set of relators over C2",
        pipeline: &["free-xmod: R = ∅", "free-xmod: R = {c ↦ t}", "peiffer-abelianize"],
        expected: &["R = ∅ gives the zero crossed module", "R = {c ↦ t} abelianizes to ℤ", "expanded presentation agrees"],
    },
    ScenarioSpec {
        name: "retract-free",
        summary: "free crossed module over C2 × codiscrete {0,1} retracted to the vertex group at 0",
        pipeline: &["free-xmod: c ↦ t at 1", "retract: to 0", "free-xmod over the vertex group: c ↦ r(t)"],
        expected: &["retracted and direct abelianizations agree", "agree with the fibre at 0 before retraction"],
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioCheck {
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub checks: Vec<ScenarioCheck>,
    /// A bounded step ran out of budget.
    pub unknown: bool,
}

impl ScenarioReport {
    fn new(name: &str) -> Self {
        ScenarioReport { name: name.into(), checks: vec![], unknown: false }
    }

    fn check(&mut self, what: &str, expected: impl std::fmt::Display, actual: impl std::fmt::Display) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let passed = expected == actual;
        self.checks.push(ScenarioCheck { what: what.into(), expected, actual, passed });
    }

    pub fn passed(&self) -> bool {
        !self.unknown && self.checks.iter().all(|c| c.passed)
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn inv(x: &AbGroupInvariants) -> String {
    let mut parts: Vec<String> = x.torsion.iter().map(|t| format!("ℤ/{t}")).collect();
    parts.extend(std::iter::repeat_n("ℤ".to_string(), x.free_rank));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

pub fn run_scenario(name: &str, bound: &RewriteBound) -> Result<ScenarioReport> {
    match name {
        "circle" => circle(bound),
        "identify-basepoints" => identify_basepoints(),
        "wedge-sn-s1" => wedge_sn_s1(),
        "free-crossed-attach" => free_crossed_attach(),
        "retract-free" => retract_free(),
        _ => Err(Error::Malformed(format!("unknown scenario `{name}`"))),
    }
}

/// The span `codiscrete {0,1} <- discrete {0,1} -> point`.
pub fn circle_diagram() -> GpdDiagram {
    let d01 = Arc::new(FinGroupoid::discrete(&names(&["0", "1"])));
    let i01 = Arc::new(FinGroupoid::codiscrete(&names(&["0", "1"])));
    let pt = Arc::new(FinGroupoid::discrete(&names(&["*"])));
    GpdDiagram {
        nodes: vec![("D".into(), d01.clone()), ("I".into(), i01.clone()), ("P".into(), pt.clone())],
        edges: vec![(0, 1, discrete_map(&d01, &i01, &[0, 1]).expect("identity on objects")), (0, 2, discrete_map(&d01, &pt, &[0, 0]).expect("collapse"))],
    }
}

fn circle(bound: &RewriteBound) -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("circle");
    let d = circle_diagram();
    let Colimit::Gpd(c) = colimit_connected(&Diagram::Gpd(d.clone()))? else { unreachable!("groupoid diagram") };
    let p = &c.presentation;
    r.check("objects", 1, p.num_objects());
    r.check("vertex group", "ℤ", inv(&p.abelian_invariants(0)?));
    let iota = c.cocone[1][d.nodes[1].1.arrow_id("(0,1)")?].clone();
    let mut powers = vec![iota.clone()];
    for _ in 1..20 {
        powers.push(powers.last().unwrap().then(&iota).expect("loop"));
    }
    let mut distinct = 0;
    for i in 0..powers.len() {
        for j in 0..i {
            match p.word_problem_bounded(&powers[i], &powers[j], bound)? {
                Decision::Distinct => distinct += 1,
                Decision::Unknown => r.unknown = true,
                Decision::Equal => {}
            }
        }
    }
    r.check("distinct pairs among ι¹..ι²⁰", 190, distinct);
    Ok(r)
}

fn c2_plus_c3() -> Arc<FinGroupoid> {
    let a = FinGroupoid::from_group_at(&FinGroup::cyclic(2), "a");
    let b = FinGroupoid::from_group_at(&FinGroup::cyclic(3), "b");
    Arc::new(FinGroupoid::coproduct(&[&a, &b]).renamed(|o| o.split_once(':').map_or(o, |x| x.1).to_string(), |x| x.to_string()))
}

fn identify_basepoints() -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("identify-basepoints");
    let g = c2_plus_c3();
    let u = ObjMap::collapse(g.objects(), "*");
    let (w, unit) = universal_morphism(&u, &g)?;
    let y = w.to_presentation();
    r.check("vertex group", "ℤ/6", inv(&y.abelian_invariants(0)?));
    let po = pushout_along_discrete_gpd(&u, &g)?;
    r.check("pushout vertex group", "ℤ/6", inv(&po.colimit.presentation.abelian_invariants(po.j_objects[0])?));
    let psi: Vec<PathWord> = unit.iter().map(|x| w.to_path(x)).collect();
    let battery: Vec<(String, Arc<FinGroupoid>)> =
        crate::catalog::small_groups().into_iter().filter(|(_, h)| h.order() <= 6).map(|(n, h)| (n, Arc::new(FinGroupoid::from_group_at(&h, "*")))).collect();
    let cert = crate::colimit::check_cocartesian(&g, &u, &y, &psi, &battery, 100_000)?;
    r.check("maps checked", true, !cert.entries.is_empty());
    r.check("cocartesian certificate", true, cert.passed);
    Ok(r)
}

/// Collapse-then-induce: one free generator over the interval groupoid,
/// induced along the collapse of both endpoints.
pub fn wedge_sn_s1_module() -> Result<ModulePres> {
    let i01 = Arc::new(FinGroupoid::codiscrete(&names(&["0", "1"])));
    let m = ModulePres::new(ModBase::Fin(i01.clone()), vec![ModGen { id: "e".into(), at: 0 }], vec![])?;
    pres_induce_universal(&ObjMap::collapse(i01.objects(), "*"), &m)
}

fn wedge_sn_s1() -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("wedge-sn-s1");
    let m = wedge_sn_s1_module()?;
    let ModBase::Presented(base) = m.base() else { unreachable!("induced along a universal morphism") };
    r.check("base objects", 1, base.num_objects());
    r.check("base vertex group", "ℤ", inv(&base.abelian_invariants(0)?));
    let report = m.report();
    r.check("generators", 1, report.generators);
    r.check("relations", 0, report.relations);
    Ok(r)
}

fn c2_base() -> (Arc<FinGroupoid>, usize) {
    let g = Arc::new(FinGroupoid::from_group_at(&FinGroup::cyclic(2), "0"));
    let t = g.non_identity_arrows().next().expect("C2 has an involution");
    (g, t)
}

/// The free crossed C2-module on one generator with boundary `t`.
pub fn free_on_involution() -> Result<FpXMod> {
    let (g, t) = c2_base();
    free_xmod(ModBase::Fin(g), &[("c".into(), Act::Arrow(t))])
}

fn abelianized_at(x: &FpXMod, obj: usize) -> Result<AbGroupInvariants> {
    let ab = peiffer_abelianize(x)?;
    let inv = ab.module.simplify()?;
    Ok(inv[&x.base().objects()[obj]].clone())
}

fn free_crossed_attach() -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("free-crossed-attach");
    let (g, _) = c2_base();
    let zero = free_xmod(ModBase::Fin(g), &[])?;
    let table = zero.bounded_realize(&RewriteBound::default())?;
    let trivial = table.as_ref().map(|t| t.fibre_orders().iter().all(|&o| o == 1));
    r.check("R = ∅ realizes to the zero crossed module", "true", trivial.map_or("unknown".into(), |b| b.to_string()));
    let x = free_on_involution()?;
    r.check("R = {c ↦ t}: abelianization at 0", "ℤ", inv(&abelianized_at(&x, 0)?));
    r.check("R = {c ↦ t}: expanded presentation", "ℤ", inv(&expanded_abelian_invariants(&x)?[0]));
    Ok(r)
}

/// The free crossed module on `c ↦ t` at object 1 of `C2 × codiscrete {0,1}`.
pub fn free_over_tree_times_c2() -> Result<FpXMod> {
    let g = Arc::new(FinGroupoid::group_times_codiscrete(&FinGroup::cyclic(2), &names(&["0", "1"])));
    let t1 = g.hom(1, 1).iter().map(|&a| a as usize).find(|&a| !g.is_identity(a)).expect("nontrivial vertex group");
    free_xmod(ModBase::Fin(g), &[("c".into(), Act::Arrow(t1))])
}

fn retract_free() -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("retract-free");
    let x = free_over_tree_times_c2()?;
    let (retracted, ret) = retract_fp_to_vertex(&x, 0)?;
    let w = match &x.seeds()[0].boundary {
        Act::Arrow(a) => ret.morphism.arr(*a),
        Act::Word(_) => unreachable!("finite base"),
    };
    let direct = free_xmod(ModBase::Fin(ret.vertex.clone()), &[("c".into(), Act::Arrow(w))])?;
    let a = inv(&abelianized_at(&retracted, 0)?);
    r.check("retracted vs direct", inv(&abelianized_at(&direct, 0)?), &a);
    r.check("retracted vs fibre at 0", inv(&abelianized_at(&x, 0)?), &a);
    r.check("retracted vs expanded presentation", inv(&expanded_abelian_invariants(&retracted)?[0]), &a);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_scenario_runs_and_passes() {
        for s in SCENARIOS {
            let r = run_scenario(s.name, &RewriteBound::default()).unwrap();
            assert!(r.passed(), "{r:#?}");
        }
        assert!(run_scenario("nope", &RewriteBound::default()).is_err());
    }
}
