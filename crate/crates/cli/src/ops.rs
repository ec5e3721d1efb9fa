//! One function per subcommand.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Result};
use gpdcalc::catalog;
use gpdcalc::colimit::{check_cocartesian, colimit_connected, Colimit, Diagram, GpdColimit, Realized};
use gpdcalc::fpgroup::{Letter, RewriteBound};
use gpdcalc::groupoid::{
    normal_closure, pullback_morphism, quotient_groupoid, spanning_tree_retraction, validate_groupoid, FinGroupoid, GpdMorphism, GroupoidJson, MorphismJson,
    ObjMap, ObjMapJson,
};
use gpdcalc::module::{free_module, module_induce, validate_module, Act, GpdModule, ModBase, ModuleJson};
use gpdcalc::presented::{PathWord, PresentedGroupoid};
use gpdcalc::scenario::{run_scenario, SCENARIOS};
use gpdcalc::word::universal_morphism;
use gpdcalc::xmod::{free_xmod, peiffer_abelianize, retract_xmod_to_vertex, validate_xmod, xmod_induce, FpXMod, XModJson, XModTable};
use gpdcalc::xsq::{check_h_formula, d_completion, realize_tensor, universal_xsq_presentation, validate_xsq_partial};
use serde_json::{json, Value};

use crate::input;
use crate::report::{inv, Report};

fn arrow_map(m: &GpdMorphism) -> BTreeMap<String, String> {
    (0..m.source.num_arrows()).map(|a| (m.source.arrow(a).id.clone(), m.target.arrow(m.arr(a)).id.clone())).collect()
}

fn invariants_json(inv: &BTreeMap<String, gpdcalc::intmat::AbGroupInvariants>) -> Value {
    json!(inv)
}

fn invariant_lines(r: &mut Report, inv: &BTreeMap<String, gpdcalc::intmat::AbGroupInvariants>) {
    for (o, a) in inv {
        r.line(format!("  at {o}: {}", crate::report::inv(a)));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Groupoid,
    Map,
    Morphism,
    Module,
    Xmod,
    Diagram,
}

pub fn validate(kind: Kind, file: &Path) -> Result<Report> {
    let (report, what) = match kind {
        Kind::Groupoid => {
            let j: GroupoidJson = input::read(file)?;
            let g = FinGroupoid::from_json(&j)?;
            (validate_groupoid(&g), format!("groupoid with {} objects and {} arrows", g.num_objects(), g.num_arrows()))
        }
        Kind::Map => {
            let j: ObjMapJson = input::read(file)?;
            let u = ObjMap::from_json(&j)?;
            (Default::default(), format!("object map {} -> {}", u.domain.len(), u.codomain.len()))
        }
        Kind::Morphism => {
            let j: MorphismJson = input::read(file)?;
            let s = FinGroupoid::from_json(&j.source)?;
            let t = FinGroupoid::from_json(&j.target)?;
            let mut r = validate_groupoid(&s);
            r.merge(validate_groupoid(&t));
            if r.is_valid() {
                if let Err(e) = GpdMorphism::from_json(&j) {
                    r.push("functor", e.to_string());
                }
            }
            (r, "groupoid morphism".to_string())
        }
        Kind::Module => {
            let j: ModuleJson = input::read(file)?;
            let mut r = validate_groupoid(&FinGroupoid::from_json(&j.base)?);
            if r.is_valid() {
                r.merge(validate_module(&GpdModule::from_json(&j)?));
            }
            (r, "module".to_string())
        }
        Kind::Xmod => {
            let j: XModJson = input::read(file)?;
            let mut r = validate_groupoid(&FinGroupoid::from_json(&j.base)?);
            if r.is_valid() {
                r.merge(validate_xmod(&XModTable::from_json(&j)?));
            }
            (r, "crossed module".to_string())
        }
        Kind::Diagram => {
            let d = input::diagram(file)?;
            let n = d.components().len();
            let mut r = gpdcalc::ValidationReport::default();
            if n > 1 {
                r.push("connected shape", format!("{n} components"));
            }
            (r, format!("{:?} diagram", d.category()))
        }
    };
    let mut out = Report::new(json!({ "valid": report.is_valid(), "violations": report.violations }));
    out.line(format!("{what}: {}", if report.is_valid() { "valid" } else { "invalid" }));
    for v in &report.violations {
        out.fail(format!("{}: {}", v.axiom, v.detail));
    }
    Ok(out)
}

pub fn pullback(map: &Path, gpd: &Path) -> Result<Report> {
    let u = input::obj_map(map)?;
    let g = input::groupoid(gpd)?;
    let p = pullback_morphism(&u, &g)?;
    let mut r = Report::new(json!({ "groupoid": p.source.to_json(), "projection": arrow_map(&p) }));
    r.line(format!("pullback: {} objects, {} arrows", p.source.num_objects(), p.source.num_arrows()));
    Ok(r)
}

pub fn induce_module(morphism: &Path, module: &Path) -> Result<Report> {
    let v = input::morphism(morphism)?;
    let m = input::module(module)?;
    let ind = module_induce(&v, &m)?;
    let invs = ind.pres.simplify()?;
    let unit: BTreeMap<String, String> =
        m.generator_list().into_iter().zip(&ind.unit).map(|((x, i), &k)| (m.generator_name(x, i), ind.pres.generators()[k].id.clone())).collect();
    let mut r = Report::new(json!({ "presentation": ind.pres.to_json(), "unit": unit, "invariants": invariants_json(&invs) }));
    let s = ind.pres.report();
    r.line(format!("induced module: {} generators, {} relations", s.generators, s.relations));
    invariant_lines(&mut r, &invs);
    Ok(r)
}

/// Realization of a finitely presented crossed module over a finite base.
fn realize_xmod(r: &mut Report, x: &FpXMod, bound: &RewriteBound) -> Result<Value> {
    match x.bounded_realize(bound) {
        Ok(Some(t)) => {
            r.line(format!("realized fibre orders: {:?}", t.fibre_orders()));
            Ok(json!(t.to_json()))
        }
        Ok(None) => {
            r.unknown("realization did not close within the bound");
            Ok(Value::Null)
        }
        Err(gpdcalc::Error::TooLarge(e)) => {
            r.unknown(format!("realization refused: {e}"));
            Ok(Value::Null)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn induce_xmod(morphism: &Path, xmod: &Path, realize: bool, bound: &RewriteBound) -> Result<Report> {
    let f = input::morphism(morphism)?;
    let x = input::xmod(xmod)?;
    let ind = xmod_induce(&f, &x)?;
    let mut r = Report::new(Value::Null);
    r.line(format!("induced crossed module: {} generators, {} relators", ind.pres.seeds().len(), ind.pres.relators().len()));
    let realized = if realize { realize_xmod(&mut r, &ind.pres, bound)? } else { Value::Null };
    r.json = json!({ "presentation": ind.pres.to_json(), "realized": realized });
    Ok(r)
}

fn object(g: &FinGroupoid, name: &str) -> Result<usize> {
    Ok(g.object_id(name)?)
}

pub fn free_module_cmd(gpd: &Path, basis: &[(String, String)]) -> Result<Report> {
    let q = input::groupoid(gpd)?;
    let b = basis.iter().map(|(n, o)| Ok((n.clone(), object(&q, o)?))).collect::<Result<Vec<_>>>()?;
    let ind = free_module(&b, &q)?;
    let invs = ind.pres.simplify()?;
    let mut r = Report::new(json!({ "presentation": ind.pres.to_json(), "invariants": invariants_json(&invs) }));
    r.line(format!("free module on {} generators", b.len()));
    invariant_lines(&mut r, &invs);
    Ok(r)
}

pub fn free_xmod_cmd(gpd: &Path, relators: &[(String, String)], realize: bool, bound: &RewriteBound) -> Result<Report> {
    let p = input::groupoid(gpd)?;
    let rels = relators.iter().map(|(n, a)| Ok((n.clone(), Act::Arrow(p.arrow_id(a)?)))).collect::<Result<Vec<_>>>()?;
    let x = free_xmod(ModBase::Fin(p), &rels)?;
    let ab = peiffer_abelianize(&x)?;
    let invs = ab.module.simplify()?;
    let mut r = Report::new(Value::Null);
    r.line(format!("free crossed module on {} generators", rels.len()));
    r.line("Peiffer abelianization:");
    invariant_lines(&mut r, &invs);
    if !ab.complete {
        r.unknown("Peiffer relations were not listed exhaustively");
    }
    let realized = if realize { realize_xmod(&mut r, &x, bound)? } else { Value::Null };
    r.json = json!({
        "presentation": x.to_json(),
        "abelianized": { "presentation": ab.module.to_json(), "invariants": invariants_json(&invs), "complete": ab.complete },
        "realized": realized,
    });
    Ok(r)
}

pub fn universal(map: &Path, gpd: &Path, words: usize) -> Result<Report> {
    let u = input::obj_map(map)?;
    let g = input::groupoid(gpd)?;
    let (w, unit) = universal_morphism(&u, &g)?;
    let p = w.to_presentation();
    let invs: BTreeMap<String, _> = (0..p.num_objects()).map(|x| Ok((p.objects()[x].clone(), p.abelian_invariants(x)?))).collect::<Result<_>>()?;
    let unit_map: BTreeMap<String, String> = (0..g.num_arrows()).map(|a| (g.arrow(a).id.clone(), w.format(&unit[a]))).collect();
    let listed: Vec<String> = if words > 0 { w.words_up_to(words, 100_000)?.iter().map(|x| w.format(x)).collect() } else { Vec::new() };
    let mut r = Report::new(json!({ "presentation": p.to_json(), "unit": unit_map, "vertex_invariants": invariants_json(&invs), "words": listed }));
    r.line(format!("universal groupoid: {} objects, {} generators, {} relators", p.num_objects(), p.num_generators(), p.relators().len()));
    r.line("vertex groups, abelianized:");
    invariant_lines(&mut r, &invs);
    if words > 0 {
        r.line(format!("{} reduced words of length at most {words}", listed.len()));
    }
    Ok(r)
}

pub fn quotient(gpd: &Path, arrows: &[String]) -> Result<Report> {
    let g = input::groupoid(gpd)?;
    let ids = arrows.iter().map(|a| Ok(g.arrow_id(a)?)).collect::<Result<Vec<_>>>()?;
    let n = normal_closure(&g, &ids)?;
    let q = quotient_groupoid(&n)?;
    let kernel: BTreeMap<String, Vec<String>> =
        (0..g.num_objects()).map(|x| (g.objects()[x].clone(), n.subgroups[x].iter().map(|&a| g.arrow(a).id.clone()).collect())).collect();
    let mut r = Report::new(json!({ "kernel": kernel, "quotient": q.target.to_json(), "map": arrow_map(&q) }));
    r.line(format!("normal closure: {} arrows", n.subgroups.iter().map(Vec::len).sum::<usize>()));
    r.line(format!("quotient: {} objects, {} arrows", q.target.num_objects(), q.target.num_arrows()));
    Ok(r)
}

fn format_path(p: &PresentedGroupoid, w: &PathWord) -> String {
    if w.letters.is_empty() {
        format!("1_{}", p.objects()[w.src])
    } else {
        p.format_word(&w.letters)
    }
}

fn gpd_bundle(r: &mut Report, c: &GpdColimit, node_ids: &[String], bound: &RewriteBound) -> Result<(Value, Option<Realized>)> {
    let p = &c.presentation;
    let invs: BTreeMap<String, _> = (0..p.num_objects()).map(|x| Ok((p.objects()[x].clone(), p.abelian_invariants(x)?))).collect::<Result<_>>()?;
    let cocone: BTreeMap<&String, Vec<String>> = node_ids.iter().zip(&c.cocone).map(|(id, ws)| (id, ws.iter().map(|w| format_path(p, w)).collect())).collect();
    let real = Realized::of(p, bound);
    r.line(format!("colimit groupoid: {} objects, {} generators, {} relators", p.num_objects(), p.num_generators(), p.relators().len()));
    r.line("vertex groups, abelianized:");
    invariant_lines(r, &invs);
    match &real {
        Some(g) => r.line(format!("finite: {} arrows", g.groupoid.num_arrows())),
        None => r.line("no finite realization within the bound"),
    };
    let v = json!({
        "presentation": p.to_json(),
        "cocone": cocone,
        "vertex_invariants": invariants_json(&invs),
        "realized": real.as_ref().map(|g| g.groupoid.to_json()),
    });
    Ok((v, real))
}

pub fn colim(diagram: &Path, realize: bool, bound: &RewriteBound) -> Result<Report> {
    let d = input::diagram(diagram)?;
    let ids: Vec<String> = match &d {
        Diagram::Gpd(g) => g.nodes.iter().map(|n| n.0.clone()).collect(),
        Diagram::Mod(m) => m.nodes.iter().map(|n| n.0.clone()).collect(),
        Diagram::Xmod(x) => x.nodes.iter().map(|n| n.0.clone()).collect(),
    };
    let mut r = Report::new(Value::Null);
    r.json = match colimit_connected(&d)? {
        Colimit::Gpd(c) => json!({ "category": "gpd", "base": gpd_bundle(&mut r, &c, &ids, bound)?.0 }),
        Colimit::Mod(c) => {
            let (base, real) = gpd_bundle(&mut r, &c.base, &ids, bound)?;
            let s = c.module.report();
            r.line(format!("colimit module: {} generators, {} relations", s.generators, s.relations));
            let invs = match &real {
                Some(g) => {
                    let invs = g.module(&c.module)?.simplify()?;
                    invariant_lines(&mut r, &invs);
                    invariants_json(&invs)
                }
                None => {
                    r.unknown("module invariants need a finite base");
                    Value::Null
                }
            };
            json!({ "category": "mod", "base": base, "module": c.module.to_json(), "invariants": invs })
        }
        Colimit::Xmod(c) => {
            let (base, real) = gpd_bundle(&mut r, &c.base, &ids, bound)?;
            r.line(format!("colimit crossed module: {} generators, {} relators", c.xmod.seeds().len(), c.xmod.relators().len()));
            let realized = match (&real, realize) {
                (Some(g), true) => realize_xmod(&mut r, &g.xmod(&c.xmod)?, bound)?,
                (None, true) => {
                    r.unknown("crossed module realization needs a finite base");
                    Value::Null
                }
                (_, false) => Value::Null,
            };
            json!({ "category": "xmod", "base": base, "xmod": c.xmod.to_json(), "realized": realized })
        }
    };
    Ok(r)
}

/// Small groups times the codiscrete groupoid on the given objects.
fn default_battery(objects: &[String]) -> Vec<(String, Arc<FinGroupoid>)> {
    catalog::small_groups()
        .into_iter()
        .filter(|(_, g)| g.order() <= 4)
        .map(|(n, g)| (format!("{n}×codiscrete"), Arc::new(FinGroupoid::group_times_codiscrete(&g, objects))))
        .collect()
}

pub fn check_cocartesian_cmd(map: &Path, gpd: &Path, target: Option<&Path>, psi: Option<&Path>, against: &[PathBuf], bound: &RewriteBound) -> Result<Report> {
    let u = input::obj_map(map)?;
    let z = input::groupoid(gpd)?;
    let (y, paths) = match (target, psi) {
        (None, None) => {
            let (w, unit) = universal_morphism(&u, &z)?;
            (w.to_presentation(), unit.iter().map(|x| w.to_path(x)).collect::<Vec<_>>())
        }
        (Some(t), Some(p)) => {
            let y = input::groupoid(t)?;
            let f = input::functor(&z, &y, &input::map_spec(p)?)?;
            if f.map.obj != u.map || y.objects() != u.codomain.as_slice() {
                bail!("ψ does not lie over the object map");
            }
            let (pres, gen_of) = PresentedGroupoid::from_fin(&y);
            let paths = (0..z.num_arrows())
                .map(|a| {
                    let b = f.arr(a);
                    match gen_of[b] {
                        Some(k) => Ok(pres.path(y.src(b), vec![Letter::pos(k)])?),
                        None => Ok(PathWord::empty(y.src(b))),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            (pres, paths)
        }
        _ => bail!("--target and --psi go together"),
    };
    let mut battery = default_battery(&u.codomain);
    for p in against {
        battery.push((p.display().to_string(), input::groupoid(p)?));
    }
    let cert = check_cocartesian(&z, &u, &y, &paths, &battery, bound.max_enum.max(1000) * 100)?;
    let mut r = Report::new(json!(cert));
    r.line(format!("checked {} maps into {} battery groupoids", cert.entries.len(), battery.len()));
    match cert.witness() {
        None => r.line("cocartesian on the battery: every map factors uniquely"),
        Some(w) => {
            r.fail(format!("map into {} factors {} times", w.target, w.factorizations));
            &mut r
        }
    };
    Ok(r)
}

pub fn retract(gpd: &Path, object_name: &str, xmod: Option<&Path>) -> Result<Report> {
    let g = input::groupoid(gpd)?;
    let x0 = object(&g, object_name)?;
    let ret = spanning_tree_retraction(&g, x0)?;
    let bad: Vec<&str> = (0..g.num_arrows()).filter(|&c| ret.reconstruct(c) != c).map(|c| g.arrow(c).id.as_str()).collect();
    let tree: BTreeMap<String, String> = (0..g.num_objects()).map(|x| (g.objects()[x].clone(), g.arrow(ret.tree[x]).id.clone())).collect();
    let mut out = json!({ "base": object_name, "tree": tree, "vertex": ret.vertex.to_json(), "map": arrow_map(&ret.morphism) });
    let mut r = Report::new(Value::Null);
    r.line(format!("retraction onto the vertex group at {object_name} of order {}", ret.vertex.num_arrows()));
    if !bad.is_empty() {
        r.fail(format!("arrows not reconstructed from the tree: {}", bad.join(", ")));
    }
    if let Some(p) = xmod {
        let x = input::xmod(p)?;
        if **x.base() != *g {
            bail!("crossed module is not over the given groupoid");
        }
        let (v, _) = retract_xmod_to_vertex(&x, x0)?;
        r.line(format!("crossed module at {object_name}: |M| = {}, |P| = {}", v.m.order(), v.p.order()));
        out["xmod"] = json!(XModTable::from_group_xmod(&v).to_json());
    }
    r.json = out;
    Ok(r)
}

fn group_xmod(path: &Path) -> Result<gpdcalc::xmod::GroupXMod> {
    let x = input::xmod(path)?;
    if x.base().num_objects() != 1 {
        bail!("{}: expected a crossed module over a group (one object)", path.display());
    }
    Ok(x.restrict_to_vertex(0))
}

pub fn d_complete(mu: &Path, nu: &Path) -> Result<Report> {
    let s = d_completion(&group_xmod(mu)?, &group_xmod(nu)?)?;
    let report = validate_xsq_partial(&s);
    let h_ok = check_h_formula(&s);
    let mut r = Report::new(json!({ "square": s.to_json(), "violations": report.violations, "h_formula": h_ok }));
    r.line(format!("crossed square with |L| = {}, |M| = {}, |N| = {}, |P| = {}", s.l.order(), s.m.order(), s.n.order(), s.p.order()));
    for v in &report.violations {
        r.fail(format!("{}: {}", v.axiom, v.detail));
    }
    if !h_ok {
        r.fail("h differs from the commutator formula");
    }
    Ok(r)
}

pub fn tensor(mu: &Path, nu: &Path, realize: bool, bound: &RewriteBound) -> Result<Report> {
    let tp = universal_xsq_presentation(&group_xmod(mu)?, &group_xmod(nu)?)?;
    let rep = tp.report();
    let mut r = Report::new(Value::Null);
    r.line(format!("tensor presentation: {} generators, {} relators", rep.generators, rep.relators));
    let realized = if realize {
        match realize_tensor(&tp, bound)? {
            Some(t) => {
                let a = t.group.abelian_invariants();
                r.line(format!("order {}, abelianization {}", t.group.order(), inv(&a)));
                json!({ "order": t.group.order(), "abelian": t.group.is_abelian(), "abelian_invariants": a, "group": t.group.to_json() })
            }
            None => {
                r.unknown("coset enumeration did not close within the bound");
                Value::Null
            }
        }
    } else {
        Value::Null
    };
    r.json = json!({ "presentation": tp.to_json(), "report": rep, "realized": realized });
    Ok(r)
}

pub fn scenario(name: Option<&str>, bound: &RewriteBound) -> Result<Report> {
    let Some(name) = name else {
        let mut r = Report::new(json!(SCENARIOS.iter().map(|s| s.name).collect::<Vec<_>>()));
        for s in SCENARIOS {
            r.line(format!("{:<22}{}", s.name, s.summary));
        }
        return Ok(r);
    };
    let rep = run_scenario(name, bound)?;
    let mut r = Report::new(json!(rep));
    for c in &rep.checks {
        if c.passed {
            r.line(format!("ok    {}: {}", c.what, c.actual));
        } else {
            r.fail(format!("{}: expected {}, got {}", c.what, c.expected, c.actual));
        }
    }
    if rep.unknown {
        r.unknown("a bounded step ran out of budget");
    }
    Ok(r)
}
