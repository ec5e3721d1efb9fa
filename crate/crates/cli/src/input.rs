//! Loading structures from JSON files.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use gpdcalc::colimit::{validate_mod_morphism, validate_xmod_morphism, Diagram, GpdDiagram, ModDiagram, ModMorphism, XModDiagram, XModMorphism};
use gpdcalc::groupoid::{validate_groupoid, FinGroupoid, Functor, GpdMorphism, GroupoidJson, MorphismJson, ObjMap, ObjMapJson};
use gpdcalc::intmat::IntMatrix;
use gpdcalc::module::{validate_module, GpdModule, ModuleJson};
use gpdcalc::xmod::{validate_xmod, XModJson, XModTable};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text).with_context(|| path.display().to_string())
}

/// serde_json errors already carry the line and column.
fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| anyhow!("{e}"))
}

fn from_value<T: DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| anyhow!("{what}: {e}"))
}

/// Invalid inputs to an operation are input errors, not assertion failures.
fn ensure(report: gpdcalc::ValidationReport, what: &str) -> Result<()> {
    report.into_result(what).map_err(anyhow::Error::from)
}

pub fn groupoid(path: &Path) -> Result<Arc<FinGroupoid>> {
    groupoid_json(&read(path)?, &path.display().to_string())
}

fn groupoid_json(j: &GroupoidJson, what: &str) -> Result<Arc<FinGroupoid>> {
    let g = FinGroupoid::from_json(j).with_context(|| what.to_string())?;
    ensure(validate_groupoid(&g), what)?;
    Ok(Arc::new(g))
}

pub fn obj_map(path: &Path) -> Result<ObjMap> {
    let j: ObjMapJson = read(path)?;
    ObjMap::from_json(&j).with_context(|| path.display().to_string())
}

pub fn morphism(path: &Path) -> Result<GpdMorphism> {
    let j: MorphismJson = read(path)?;
    let what = path.display().to_string();
    groupoid_json(&j.source, &format!("{what}: source"))?;
    groupoid_json(&j.target, &format!("{what}: target"))?;
    GpdMorphism::from_json(&j).with_context(|| what)
}

pub fn module(path: &Path) -> Result<GpdModule> {
    module_json(&read(path)?, &path.display().to_string())
}

fn module_json(j: &ModuleJson, what: &str) -> Result<GpdModule> {
    groupoid_json(&j.base, what)?;
    let m = GpdModule::from_json(j).with_context(|| what.to_string())?;
    ensure(validate_module(&m), what)?;
    Ok(m)
}

pub fn xmod(path: &Path) -> Result<XModTable> {
    xmod_json(&read(path)?, &path.display().to_string())
}

fn xmod_json(j: &XModJson, what: &str) -> Result<XModTable> {
    groupoid_json(&j.base, what)?;
    let x = XModTable::from_json(j).with_context(|| what.to_string())?;
    ensure(validate_xmod(&x), what)?;
    Ok(x)
}

/// A morphism given by name between groupoids known from context.
/// Identity arrows may be omitted.
#[derive(Debug, Clone, Deserialize)]
pub struct MapSpec {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, String>,
    #[serde(default)]
    pub fibre: Option<Value>,
}

pub fn map_spec(path: &Path) -> Result<MapSpec> {
    read(path)
}

pub fn functor(s: &Arc<FinGroupoid>, t: &Arc<FinGroupoid>, spec: &MapSpec) -> Result<GpdMorphism> {
    let obj = s
        .objects()
        .iter()
        .map(|o| {
            let img = spec.objects.get(o).ok_or_else(|| anyhow!("object map undefined at {o}"))?;
            Ok(t.object_id(img)?)
        })
        .collect::<Result<Vec<_>>>()?;
    for k in spec.arrows.keys() {
        s.arrow_id(k)?;
    }
    let arr = (0..s.num_arrows())
        .map(|a| match spec.arrows.get(&s.arrow(a).id) {
            Some(img) => Ok(t.arrow_id(img)?),
            None if s.is_identity(a) => Ok(t.identity(obj[s.src(a)])),
            None => Err(anyhow!("arrow map undefined at {}", s.arrow(a).id)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GpdMorphism::new(s.clone(), t.clone(), Functor { obj, arr })?)
}

#[derive(Debug, Deserialize)]
struct DiagramSpec {
    category: String,
    nodes: BTreeMap<String, Value>,
    edges: Vec<EdgeSpec>,
}

#[derive(Debug, Deserialize)]
struct EdgeSpec {
    src: String,
    tgt: String,
    morphism: MapSpec,
}

/// Nodes are ordered by id.
pub fn diagram(path: &Path) -> Result<Diagram> {
    let spec: DiagramSpec = read(path)?;
    diagram_spec(&spec).with_context(|| path.display().to_string())
}

fn diagram_spec(spec: &DiagramSpec) -> Result<Diagram> {
    let ids: Vec<&String> = spec.nodes.keys().collect();
    let index = |id: &str| ids.iter().position(|k| *k == id).ok_or_else(|| anyhow!("edge refers to unknown node {id}"));
    let ends = spec.edges.iter().map(|e| Ok((index(&e.src)?, index(&e.tgt)?))).collect::<Result<Vec<_>>>()?;
    match spec.category.as_str() {
        "gpd" => {
            let nodes =
                spec.nodes.iter().map(|(id, v)| Ok((id.clone(), groupoid_json(&from_value(v, id)?, &format!("node {id}"))?))).collect::<Result<Vec<_>>>()?;
            let edges = spec
                .edges
                .iter()
                .zip(&ends)
                .map(|(e, &(c, d))| Ok((c, d, functor(&nodes[c].1, &nodes[d].1, &e.morphism).with_context(|| format!("edge {} -> {}", e.src, e.tgt))?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Diagram::Gpd(GpdDiagram { nodes, edges }))
        }
        "mod" => {
            let nodes =
                spec.nodes.iter().map(|(id, v)| Ok((id.clone(), module_json(&from_value(v, id)?, &format!("node {id}"))?))).collect::<Result<Vec<_>>>()?;
            let mut edges = Vec::new();
            for (e, &(c, d)) in spec.edges.iter().zip(&ends) {
                let what = format!("edge {} -> {}", e.src, e.tgt);
                let (m, n) = (&nodes[c].1, &nodes[d].1);
                let base = functor(m.base(), n.base(), &e.morphism).with_context(|| what.clone())?;
                let fibre: BTreeMap<String, Vec<Vec<i64>>> = from_value(e.morphism.fibre.as_ref().ok_or_else(|| anyhow!("{what}: no fibre maps"))?, &what)?;
                let g = m.base();
                let mats = (0..g.num_objects())
                    .map(|x| {
                        let rows = fibre.get(&g.objects()[x]).ok_or_else(|| anyhow!("{what}: no fibre map at {}", g.objects()[x]))?;
                        Ok(IntMatrix::from_rows(n.group(base.obj(x)).gens, rows)?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let f = ModMorphism { base, fibre: mats };
                validate_mod_morphism(&f, m, n).with_context(|| what.clone())?;
                edges.push((c, d, f));
            }
            Ok(Diagram::Mod(ModDiagram { nodes, edges }))
        }
        "xmod" => {
            let nodes =
                spec.nodes.iter().map(|(id, v)| Ok((id.clone(), xmod_json(&from_value(v, id)?, &format!("node {id}"))?))).collect::<Result<Vec<_>>>()?;
            let mut edges = Vec::new();
            for (e, &(c, d)) in spec.edges.iter().zip(&ends) {
                let what = format!("edge {} -> {}", e.src, e.tgt);
                let (m, n) = (&nodes[c].1, &nodes[d].1);
                let base = functor(m.base(), n.base(), &e.morphism).with_context(|| what.clone())?;
                let fibre: BTreeMap<String, BTreeMap<String, String>> =
                    from_value(e.morphism.fibre.as_ref().ok_or_else(|| anyhow!("{what}: no fibre maps"))?, &what)?;
                let g = m.base();
                let maps = (0..g.num_objects())
                    .map(|x| {
                        let o = &g.objects()[x];
                        let map = fibre.get(o).ok_or_else(|| anyhow!("{what}: no fibre map at {o}"))?;
                        let (a, b) = (m.fibre(x), n.fibre(base.obj(x)));
                        (0..a.order())
                            .map(|k| {
                                let img = map.get(a.label(k)).ok_or_else(|| anyhow!("{what}: fibre map at {o} undefined at {}", a.label(k)))?;
                                b.index_of(img).map(|i| i as u32).ok_or_else(|| anyhow!("{what}: unknown element {img}"))
                            })
                            .collect::<Result<Vec<u32>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let f = XModMorphism { base, fibre: maps };
                validate_xmod_morphism(&f, m, n).with_context(|| what.clone())?;
                edges.push((c, d, f));
            }
            Ok(Diagram::Xmod(XModDiagram { nodes, edges }))
        }
        other => bail!("unknown category {other}; expected gpd, mod or xmod"),
    }
}

/// `name=value` pairs for repeatable flags.
pub fn pair(s: &str) -> Result<(String, String), String> {
    s.split_once('=').map(|(a, b)| (a.to_string(), b.to_string())).ok_or_else(|| format!("expected name=value, got {s}"))
}
