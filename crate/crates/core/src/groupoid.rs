//! Finite groupoids as explicit composition tables.
//!
//! Composition is diagrammatic: for `a: x -> y` and `b: y -> z` the composite
//! `ab` runs `x -> z`. Objects and arrows are kept sorted by id, so indices
//! are canonical for a given set of ids.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FinGroup;

/// Largest arrow count accepted in table form.
pub const MAX_ARROWS: usize = 2048;

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FinGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    compose: Vec<u32>,
    identity: Vec<u32>,
    inverse: Vec<u32>,
    homs: Vec<Vec<u32>>,
}

impl fmt::Debug for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroupoid({} objects, {} arrows)", self.objects.len(), self.arrows.len())
    }
}

/// One violated axiom instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub detail: String,
}

/// Outcome of an axiom check; valid iff no violations were recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: &str, detail: impl Into<String>) {
        self.violations.push(Violation { axiom: axiom.to_string(), detail: detail.into() });
    }

    pub fn cites(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn into_result(self, what: &str) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::Invalid(format!("{what}: {} ({})", v.axiom, v.detail))),
        }
    }
}

impl FinGroupoid {
    /// Trusted constructor; canonicalizes ordering. `compose` is only called
    /// on composable pairs.
    pub(crate) fn build(
        objects: Vec<String>,
        arrows: Vec<(String, usize, usize)>,
        compose: impl Fn(usize, usize) -> usize,
        identity: &[usize],
        inverse: &[usize],
    ) -> Self {
        let mut obj_order: Vec<usize> = (0..objects.len()).collect();
        obj_order.sort_by(|&a, &b| objects[a].cmp(&objects[b]));
        let mut obj_pos = vec![0usize; objects.len()];
        for (i, &o) in obj_order.iter().enumerate() {
            obj_pos[o] = i;
        }
        let mut arr_order: Vec<usize> = (0..arrows.len()).collect();
        arr_order.sort_by(|&a, &b| arrows[a].0.cmp(&arrows[b].0));
        let mut arr_pos = vec![0usize; arrows.len()];
        for (i, &a) in arr_order.iter().enumerate() {
            arr_pos[a] = i;
        }
        let n = arrows.len();
        let new_arrows: Vec<Arrow> =
            arr_order.iter().map(|&a| Arrow { id: arrows[a].0.clone(), src: obj_pos[arrows[a].1], tgt: obj_pos[arrows[a].2] }).collect();
        let mut table = vec![NONE; n * n];
        for &a in &arr_order {
            for &b in &arr_order {
                if arrows[a].2 == arrows[b].1 {
                    table[arr_pos[a] * n + arr_pos[b]] = arr_pos[compose(a, b)] as u32;
                }
            }
        }
        let mut ident = vec![0u32; objects.len()];
        for (o, &e) in identity.iter().enumerate() {
            ident[obj_pos[o]] = arr_pos[e] as u32;
        }
        let mut inv = vec![0u32; n];
        for (a, &b) in inverse.iter().enumerate() {
            inv[arr_pos[a]] = arr_pos[b] as u32;
        }
        let objects = obj_order.iter().map(|&o| objects[o].clone()).collect();
        Self::assemble(objects, new_arrows, table, ident, inv)
    }

    fn assemble(objects: Vec<String>, arrows: Vec<Arrow>, compose: Vec<u32>, identity: Vec<u32>, inverse: Vec<u32>) -> Self {
        let k = objects.len();
        let mut homs = vec![Vec::new(); k * k];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.src * k + a.tgt].push(i as u32);
        }
        FinGroupoid { objects, arrows, compose, identity, inverse, homs }
    }

    /// Builds from named parts without checking the groupoid axioms; use
    /// [`validate_groupoid`] for that. Only referential integrity is enforced.
    pub fn from_parts(
        objects: &[String],
        arrows: &[(String, String, String)],
        compose: &[(String, String, String)],
        identity: &BTreeMap<String, String>,
        inverse: &BTreeMap<String, String>,
    ) -> Result<Self> {
        if arrows.len() > MAX_ARROWS {
            return Err(Error::TooLarge(format!("{} arrows", arrows.len())));
        }
        let mut objs: Vec<String> = objects.to_vec();
        objs.sort();
        if objs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed("duplicate object id".into()));
        }
        let oi = |s: &str| objs.binary_search_by(|o| o.as_str().cmp(s)).map_err(|_| Error::UnknownObject(s.into()));
        let mut arrs: Vec<Arrow> = arrows.iter().map(|(id, s, t)| Ok(Arrow { id: id.clone(), src: oi(s)?, tgt: oi(t)? })).collect::<Result<_>>()?;
        arrs.sort_by(|a, b| a.id.cmp(&b.id));
        if arrs.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(Error::Malformed("duplicate arrow id".into()));
        }
        let ai = |s: &str| arrs.binary_search_by(|a| a.id.as_str().cmp(s)).map_err(|_| Error::UnknownArrow(s.into()));
        let n = arrs.len();
        let mut table = vec![NONE; n * n];
        for (a, b, ab) in compose {
            let (a, b, ab) = (ai(a)?, ai(b)?, ai(ab)?);
            let slot = &mut table[a * n + b];
            if *slot != NONE && *slot != ab as u32 {
                return Err(Error::Malformed(format!("conflicting compose entries for ({}, {})", arrs[a].id, arrs[b].id)));
            }
            *slot = ab as u32;
        }
        let mut ident = vec![NONE; objs.len()];
        for (o, a) in identity {
            ident[oi(o)?] = ai(a)? as u32;
        }
        if let Some(x) = ident.iter().position(|&e| e == NONE) {
            return Err(Error::Malformed(format!("object {} has no identity", objs[x])));
        }
        let mut inv = vec![NONE; n];
        for (a, b) in inverse {
            inv[ai(a)?] = ai(b)? as u32;
        }
        if let Some(a) = inv.iter().position(|&e| e == NONE) {
            return Err(Error::Malformed(format!("arrow {} has no inverse", arrs[a].id)));
        }
        Ok(Self::assemble(objs, arrs, table, ident, inv))
    }

    pub fn empty() -> Self {
        Self::assemble(vec![], vec![], vec![], vec![], vec![])
    }

    /// Only identity arrows, named `1_x`.
    pub fn discrete(objects: &[String]) -> Self {
        let arrows = objects.iter().enumerate().map(|(i, o)| (format!("1_{o}"), i, i)).collect();
        let ids: Vec<usize> = (0..objects.len()).collect();
        Self::build(objects.to_vec(), arrows, |a, _| a, &ids, &ids)
    }

    /// Exactly one arrow `(x,y)` between each ordered pair.
    pub fn codiscrete(objects: &[String]) -> Self {
        Self::group_times_codiscrete(&FinGroup::trivial(), objects)
    }

    /// One-object groupoid on `*` with arrows named by the group labels.
    pub fn from_group(g: &FinGroup) -> Self {
        Self::from_group_at(g, "*")
    }

    pub fn from_group_at(g: &FinGroup, object: &str) -> Self {
        let n = g.order();
        let arrows = (0..n).map(|a| (g.label(a).to_string(), 0, 0)).collect();
        let inv: Vec<usize> = (0..n).map(|a| g.inv(a)).collect();
        Self::build(vec![object.to_string()], arrows, |a, b| g.mul(a, b), &[0], &inv)
    }

    /// Connected groupoid `G × codiscrete(objects)`; arrows `(x,g,y)`, or
    /// `(x,y)` when `G` is trivial.
    pub fn group_times_codiscrete(g: &FinGroup, objects: &[String]) -> Self {
        let k = objects.len();
        let n = g.order();
        let mut arrows = Vec::with_capacity(k * k * n);
        for x in 0..k {
            for y in 0..k {
                for e in 0..n {
                    let id = if n == 1 { format!("({},{})", objects[x], objects[y]) } else { format!("({},{},{})", objects[x], g.label(e), objects[y]) };
                    arrows.push((id, x, y));
                }
            }
        }
        let idx = |x: usize, e: usize, y: usize| (x * k + y) * n + e;
        let identity: Vec<usize> = (0..k).map(|x| idx(x, 0, x)).collect();
        let inverse: Vec<usize> = (0..k * k * n)
            .map(|a| {
                let (xy, e) = (a / n, a % n);
                idx(xy % k, g.inv(e), xy / k)
            })
            .collect();
        Self::build(
            objects.to_vec(),
            arrows,
            |a, b| {
                let (xy1, e1) = (a / n, a % n);
                let (xy2, e2) = (b / n, b % n);
                idx(xy1 / k, g.mul(e1, e2), xy2 % k)
            },
            &identity,
            &inverse,
        )
    }

    /// Disjoint union; ids are prefixed with the list position, `i:`.
    pub fn coproduct(parts: &[&FinGroupoid]) -> Self {
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut identity = Vec::new();
        let mut inverse = Vec::new();
        let mut offsets = Vec::new();
        for (i, g) in parts.iter().enumerate() {
            let (oo, ao) = (objects.len(), arrows.len());
            offsets.push(ao);
            objects.extend(g.objects.iter().map(|o| format!("{i}:{o}")));
            arrows.extend(g.arrows.iter().map(|a| (format!("{i}:{}", a.id), a.src + oo, a.tgt + oo)));
            identity.extend(g.identity.iter().map(|&e| e as usize + ao));
            inverse.extend(g.inverse.iter().map(|&e| e as usize + ao));
        }
        let owner: Vec<usize> = parts.iter().enumerate().flat_map(|(i, g)| std::iter::repeat_n(i, g.arrows.len())).collect();
        Self::build(
            objects,
            arrows,
            |a, b| {
                let i = owner[a];
                let off = offsets[i];
                parts[i].compose(a - off, b - off).expect("composable within a part") + off
            },
            &identity,
            &inverse,
        )
    }

    #[inline]
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    #[inline]
    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    #[inline]
    pub fn src(&self, a: usize) -> usize {
        self.arrows[a].src
    }

    #[inline]
    pub fn tgt(&self, a: usize) -> usize {
        self.arrows[a].tgt
    }

    /// `ab` when `tgt a = src b` and the table has an entry.
    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.compose[a * self.arrows.len() + b];
        (v != NONE).then_some(v as usize)
    }

    /// Composite of a path; panics on a non-composable pair.
    pub fn compose_path(&self, path: &[usize]) -> usize {
        let mut it = path.iter();
        let first = *it.next().expect("nonempty path");
        it.fold(first, |acc, &b| self.compose(acc, b).expect("composable path"))
    }

    #[inline]
    pub fn identity(&self, x: usize) -> usize {
        self.identity[x] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    #[inline]
    pub fn is_identity(&self, a: usize) -> bool {
        self.identity[self.arrows[a].src] as usize == a
    }

    /// Arrows `x -> y`, sorted.
    pub fn hom(&self, x: usize, y: usize) -> &[u32] {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.binary_search_by(|o| o.as_str().cmp(name)).ok()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.binary_search_by(|a| a.id.as_str().cmp(id)).ok()
    }

    pub fn object_id(&self, name: &str) -> Result<usize> {
        self.object_index(name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn arrow_id(&self, id: &str) -> Result<usize> {
        self.arrow_index(id).ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn non_identity_arrows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_arrows()).filter(|&a| !self.is_identity(a))
    }

    /// Blocks of objects joined by arrows; each block sorted, blocks ordered
    /// by their least object.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let k = self.num_objects();
        let mut comp = vec![usize::MAX; k];
        let mut out = Vec::new();
        for x in 0..k {
            if comp[x] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut block = Vec::new();
            for y in 0..k {
                if !self.hom(x, y).is_empty() {
                    comp[y] = c;
                    block.push(y);
                }
            }
            out.push(block);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Vertex group `G(x,x)` as a table; element `i` is arrow `arrows[i]`
    /// and element `0` is the identity.
    pub fn vertex_group(&self, x: usize) -> (FinGroup, Vec<usize>) {
        let e = self.identity(x);
        let mut arrows: Vec<usize> = vec![e];
        arrows.extend(self.hom(x, x).iter().map(|&a| a as usize).filter(|&a| a != e));
        let pos: HashMap<usize, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let labels = arrows.iter().map(|&a| self.arrows[a].id.clone()).collect();
        let g = FinGroup::from_fn(labels, |i, j| pos[&self.compose(arrows[i], arrows[j]).expect("vertex arrows compose")]);
        (g, arrows)
    }

    pub fn vertex_group_named(&self, x: &str) -> Result<(FinGroup, Vec<usize>)> {
        Ok(self.vertex_group(self.object_id(x)?))
    }

    /// For each object in the component of `root`, the least arrow
    /// `root -> x` (the identity at `root`).
    pub fn tree_from(&self, root: usize) -> Vec<Option<usize>> {
        (0..self.num_objects()).map(|x| if x == root { Some(self.identity(root)) } else { self.hom(root, x).first().map(|&a| a as usize) }).collect()
    }

    pub fn to_json(&self) -> GroupoidJson {
        let n = self.num_arrows();
        let mut compose = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.compose(a, b) {
                    compose.push([self.arrows[a].id.clone(), self.arrows[b].id.clone(), self.arrows[c].id.clone()]);
                }
            }
        }
        GroupoidJson {
            objects: self.objects.clone(),
            arrows: self.arrows.iter().map(|a| ArrowJson { id: a.id.clone(), src: self.objects[a.src].clone(), tgt: self.objects[a.tgt].clone() }).collect(),
            compose,
            identity: (0..self.num_objects()).map(|x| (self.objects[x].clone(), self.arrows[self.identity(x)].id.clone())).collect(),
            inverse: (0..n).map(|a| (self.arrows[a].id.clone(), self.arrows[self.inverse(a)].id.clone())).collect(),
        }
    }

    pub fn from_json(j: &GroupoidJson) -> Result<Self> {
        let arrows: Vec<_> = j.arrows.iter().map(|a| (a.id.clone(), a.src.clone(), a.tgt.clone())).collect();
        let compose: Vec<_> = j.compose.iter().map(|[a, b, c]| (a.clone(), b.clone(), c.clone())).collect();
        Self::from_parts(&j.objects, &arrows, &compose, &j.identity, &j.inverse)
    }

    /// Renames objects and arrows through the given functions.
    pub fn renamed(&self, obj: impl Fn(&str) -> String, arr: impl Fn(&str) -> String) -> Self {
        let objects = self.objects.iter().map(|o| obj(o)).collect();
        let arrows = self.arrows.iter().map(|a| (arr(&a.id), a.src, a.tgt)).collect();
        let ids: Vec<usize> = (0..self.num_objects()).map(|x| self.identity(x)).collect();
        let inv: Vec<usize> = (0..self.num_arrows()).map(|a| self.inverse(a)).collect();
        Self::build(objects, arrows, |a, b| self.compose(a, b).unwrap(), &ids, &inv)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// Serialized groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub compose: Vec<[String; 3]>,
    pub identity: BTreeMap<String, String>,
    pub inverse: BTreeMap<String, String>,
}

/// Checks every groupoid axiom instance.
pub fn validate_groupoid(g: &FinGroupoid) -> ValidationReport {
    let mut r = ValidationReport::default();
    let n = g.num_arrows();
    let name = |a: usize| g.arrows[a].id.as_str();
    for a in 0..n {
        for b in 0..n {
            let composable = g.tgt(a) == g.src(b);
            match (composable, g.compose(a, b)) {
                (true, None) => r.push("compose table total", format!("({}, {}) has no composite", name(a), name(b))),
                (false, Some(_)) => r.push("compose table src/tgt", format!("({}, {}) are not composable but have an entry", name(a), name(b))),
                (true, Some(c)) if g.src(c) != g.src(a) || g.tgt(c) != g.tgt(b) => {
                    r.push("compose table src/tgt", format!("{}{} = {} has wrong endpoints", name(a), name(b), name(c)))
                }
                _ => {}
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    for x in 0..g.num_objects() {
        let e = g.identity(x);
        if g.src(e) != x || g.tgt(e) != x {
            r.push("identity", format!("identity of {} is not a loop there", g.objects[x]));
        }
    }
    if !r.is_valid() {
        return r;
    }
    for a in 0..n {
        let (x, y) = (g.src(a), g.tgt(a));
        if g.compose(g.identity(x), a) != Some(a) || g.compose(a, g.identity(y)) != Some(a) {
            r.push("identity", format!("identities are not neutral for {}", name(a)));
        }
        let ai = g.inverse(a);
        if g.src(ai) != y || g.tgt(ai) != x || g.compose(a, ai) != Some(g.identity(x)) || g.compose(ai, a) != Some(g.identity(y)) {
            r.push("inverse axiom", format!("{} is not inverse to {}", name(ai), name(a)));
        }
    }
    for a in 0..n {
        for y in 0..g.num_objects() {
            for &b in g.hom(g.tgt(a), y) {
                let b = b as usize;
                let ab = g.compose(a, b).unwrap();
                for z in 0..g.num_objects() {
                    for &c in g.hom(y, z) {
                        let c = c as usize;
                        if g.compose(ab, c) != g.compose(a, g.compose(b, c).unwrap()) {
                            r.push("associativity", format!("({}, {}, {})", name(a), name(b), name(c)));
                        }
                    }
                }
            }
        }
    }
    r
}

/// Total function between finite sets of names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjMap {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub map: Vec<usize>,
}

impl ObjMap {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.len() {
            return Err(Error::Malformed("object map is not total".into()));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= codomain.len()) {
            return Err(Error::Malformed(format!("object map image {bad} outside codomain")));
        }
        Ok(ObjMap { domain, codomain, map })
    }

    /// Builds from name pairs; domain and codomain are taken as given.
    pub fn from_names(domain: &[String], codomain: &[String], pairs: &BTreeMap<String, String>) -> Result<Self> {
        let map = domain
            .iter()
            .map(|d| {
                let t = pairs.get(d).ok_or_else(|| Error::Malformed(format!("object map undefined at {d}")))?;
                codomain.iter().position(|c| c == t).ok_or_else(|| Error::UnknownObject(t.clone()))
            })
            .collect::<Result<_>>()?;
        Self::new(domain.to_vec(), codomain.to_vec(), map)
    }

    pub fn identity(objects: &[String]) -> Self {
        ObjMap { domain: objects.to_vec(), codomain: objects.to_vec(), map: (0..objects.len()).collect() }
    }

    /// Everything to a single object named `target`.
    pub fn collapse(domain: &[String], target: &str) -> Self {
        ObjMap { domain: domain.to_vec(), codomain: vec![target.to_string()], map: vec![0; domain.len()] }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// `self` then `next`.
    pub fn then(&self, next: &ObjMap) -> Result<ObjMap> {
        if self.codomain != next.domain {
            return Err(Error::NotComposable("object maps".into()));
        }
        Ok(ObjMap { domain: self.domain.clone(), codomain: next.codomain.clone(), map: self.map.iter().map(|&y| next.map[y]).collect() })
    }

    pub fn to_json(&self) -> ObjMapJson {
        ObjMapJson {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            map: self.domain.iter().zip(&self.map).map(|(d, &t)| (d.clone(), self.codomain[t].clone())).collect(),
        }
    }

    pub fn from_json(j: &ObjMapJson) -> Result<Self> {
        Self::from_names(&j.domain, &j.codomain, &j.map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjMapJson {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub map: BTreeMap<String, String>,
}

/// Object and arrow assignments of a functor between finite groupoids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functor {
    pub obj: Vec<usize>,
    pub arr: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct GpdMorphism {
    pub source: Arc<FinGroupoid>,
    pub target: Arc<FinGroupoid>,
    pub map: Functor,
}

impl fmt::Debug for GpdMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GpdMorphism({:?} -> {:?})", self.source, self.target)
    }
}

impl GpdMorphism {
    /// Builds and validates.
    pub fn new(source: Arc<FinGroupoid>, target: Arc<FinGroupoid>, map: Functor) -> Result<Self> {
        let m = GpdMorphism { source, target, map };
        m.validate().into_result("groupoid morphism")?;
        Ok(m)
    }

    pub(crate) fn trusted(source: Arc<FinGroupoid>, target: Arc<FinGroupoid>, map: Functor) -> Self {
        debug_assert!(GpdMorphism { source: source.clone(), target: target.clone(), map: map.clone() }.validate().is_valid());
        GpdMorphism { source, target, map }
    }

    pub fn identity(g: Arc<FinGroupoid>) -> Self {
        let map = Functor { obj: (0..g.num_objects()).collect(), arr: (0..g.num_arrows()).collect() };
        GpdMorphism { source: g.clone(), target: g, map }
    }

    /// Builds from a group homomorphism between one-object groupoids made by
    /// [`FinGroupoid::from_group`].
    pub fn from_group_hom(g: &FinGroup, h: &FinGroup, f: &[u32]) -> Result<Self> {
        let src = Arc::new(FinGroupoid::from_group(g));
        let tgt = Arc::new(FinGroupoid::from_group(h));
        let mut by_arrow = vec![0usize; g.order()];
        for e in 0..g.order() {
            let a = src.arrow_index(g.label(e)).unwrap();
            by_arrow[a] = tgt.arrow_index(h.label(f[e] as usize)).unwrap();
        }
        Self::new(src, tgt, Functor { obj: vec![0], arr: by_arrow })
    }

    pub fn obj(&self, x: usize) -> usize {
        self.map.obj[x]
    }

    pub fn arr(&self, a: usize) -> usize {
        self.map.arr[a]
    }

    pub fn object_map(&self) -> ObjMap {
        ObjMap { domain: self.source.objects.clone(), codomain: self.target.objects.clone(), map: self.map.obj.clone() }
    }

    pub fn is_vertical(&self) -> bool {
        self.source.objects == self.target.objects && self.map.obj.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let (s, t) = (&*self.source, &*self.target);
        if self.map.obj.len() != s.num_objects() || self.map.arr.len() != s.num_arrows() {
            r.push("totality", "maps do not cover the source");
            return r;
        }
        if self.map.obj.iter().any(|&y| y >= t.num_objects()) || self.map.arr.iter().any(|&b| b >= t.num_arrows()) {
            r.push("totality", "image outside the target");
            return r;
        }
        for a in 0..s.num_arrows() {
            let b = self.map.arr[a];
            if t.src(b) != self.map.obj[s.src(a)] || t.tgt(b) != self.map.obj[s.tgt(a)] {
                r.push("endpoints", format!("arrow {} maps to {} with wrong endpoints", s.arrows[a].id, t.arrows[b].id));
            }
        }
        for x in 0..s.num_objects() {
            if self.map.arr[s.identity(x)] != t.identity(self.map.obj[x]) {
                r.push("identities", format!("identity at {} not preserved", s.objects[x]));
            }
        }
        if !r.is_valid() {
            return r;
        }
        for a in 0..s.num_arrows() {
            for y in 0..s.num_objects() {
                for &b in s.hom(s.tgt(a), y) {
                    let b = b as usize;
                    let ab = s.compose(a, b).unwrap();
                    if t.compose(self.map.arr[a], self.map.arr[b]) != Some(self.map.arr[ab]) {
                        r.push("composition", format!("({}, {})", s.arrows[a].id, s.arrows[b].id));
                    }
                }
            }
        }
        r
    }

    /// `self` then `next`.
    pub fn then(&self, next: &GpdMorphism) -> Result<GpdMorphism> {
        if *self.target != *next.source {
            return Err(Error::NotComposable("groupoid morphisms".into()));
        }
        Ok(GpdMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: Functor { obj: self.map.obj.iter().map(|&y| next.map.obj[y]).collect(), arr: self.map.arr.iter().map(|&b| next.map.arr[b]).collect() },
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        let bij = |v: &[usize], n: usize| {
            v.len() == n && {
                let mut seen = vec![false; n];
                v.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
            }
        };
        bij(&self.map.obj, self.target.num_objects()) && bij(&self.map.arr, self.target.num_arrows())
    }

    pub fn to_json(&self) -> MorphismJson {
        let (s, t) = (&*self.source, &*self.target);
        MorphismJson {
            source: s.to_json(),
            target: t.to_json(),
            objects: (0..s.num_objects()).map(|x| (s.objects[x].clone(), t.objects[self.map.obj[x]].clone())).collect(),
            arrows: (0..s.num_arrows()).map(|a| (s.arrows[a].id.clone(), t.arrows[self.map.arr[a]].id.clone())).collect(),
        }
    }

    pub fn from_json(j: &MorphismJson) -> Result<Self> {
        let s = Arc::new(FinGroupoid::from_json(&j.source)?);
        let t = Arc::new(FinGroupoid::from_json(&j.target)?);
        let obj = s
            .objects
            .iter()
            .map(|o| {
                let img = j.objects.get(o).ok_or_else(|| Error::Malformed(format!("object map undefined at {o}")))?;
                t.object_id(img)
            })
            .collect::<Result<_>>()?;
        let arr = s
            .arrows
            .iter()
            .map(|a| {
                let img = j.arrows.get(&a.id).ok_or_else(|| Error::Malformed(format!("arrow map undefined at {}", a.id)))?;
                t.arrow_id(img)
            })
            .collect::<Result<_>>()?;
        Self::new(s, t, Functor { obj, arr })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: GroupoidJson,
    pub target: GroupoidJson,
    pub objects: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

/// Pullback of `g` along `u`: objects `J`, arrows `(j,a,j')` for
/// `a: u(j) -> u(j')`, together with the projection `(j,a,j') ↦ a`.
pub fn pullback_groupoid(u: &ObjMap, g: &Arc<FinGroupoid>) -> Result<(FinGroupoid, Functor)> {
    if u.codomain != g.objects {
        return Err(Error::NotOver("object map codomain differs from the groupoid's objects".into()));
    }
    let j = u.domain.len();
    let mut arrows = Vec::new();
    let mut proj = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for a in 0..j {
        for b in 0..j {
            for &p in g.hom(u.map[a], u.map[b]) {
                index.insert((a, p as usize, b), arrows.len());
                arrows.push((format!("({},{},{})", u.domain[a], g.arrows[p as usize].id, u.domain[b]), a, b));
                proj.push(p as usize);
            }
        }
    }
    if arrows.len() > MAX_ARROWS {
        return Err(Error::TooLarge(format!("pullback with {} arrows", arrows.len())));
    }
    let ends: Vec<(usize, usize)> = arrows.iter().map(|(_, a, b)| (*a, *b)).collect();
    let identity: Vec<usize> = (0..j).map(|a| index[&(a, g.identity(u.map[a]), a)]).collect();
    let inverse: Vec<usize> = (0..arrows.len()).map(|k| index[&(ends[k].1, g.inverse(proj[k]), ends[k].0)]).collect();
    let h =
        FinGroupoid::build(u.domain.clone(), arrows.clone(), |x, y| index[&(ends[x].0, g.compose(proj[x], proj[y]).unwrap(), ends[y].1)], &identity, &inverse);
    // projection indexed by canonical arrow order
    let mut arr = vec![0usize; h.num_arrows()];
    for (k, (id, _, _)) in arrows.iter().enumerate() {
        arr[h.arrow_index(id).unwrap()] = proj[k];
    }
    let obj = h.objects.iter().map(|o| u.map[u.domain.iter().position(|d| d == o).unwrap()]).collect();
    Ok((h, Functor { obj, arr }))
}

/// Pullback with the projection packaged as a morphism.
pub fn pullback_morphism(u: &ObjMap, g: &Arc<FinGroupoid>) -> Result<GpdMorphism> {
    let (h, f) = pullback_groupoid(u, g)?;
    Ok(GpdMorphism::trusted(Arc::new(h), g.clone(), f))
}

/// Unique morphism `D(K) -> X` over `u`, confirmed unique by enumeration.
pub fn initiality_check(k: &[String], x: &Arc<FinGroupoid>, u: &ObjMap) -> Result<GpdMorphism> {
    if u.domain != k || u.codomain != x.objects {
        return Err(Error::NotOver("object map does not run from K to the objects of X".into()));
    }
    let d = Arc::new(FinGroupoid::discrete(k));
    // discrete objects are re-sorted; follow names
    let fixed: Vec<usize> = d.objects.iter().map(|o| u.map[k.iter().position(|n| n == o).unwrap()]).collect();
    let all = homs(&d, x, Some(&fixed), usize::MAX)?;
    if all.len() != 1 {
        return Err(Error::Invalid(format!("expected exactly one morphism from D(K), found {}", all.len())));
    }
    Ok(GpdMorphism::trusted(d, x.clone(), all.into_iter().next().unwrap()))
}

/// Every functor `y -> x`, optionally with prescribed object images. Errors
/// with `TooLarge` once more than `limit` morphisms would be produced.
pub fn homs(y: &FinGroupoid, x: &FinGroupoid, fixed_obj: Option<&[usize]>, limit: usize) -> Result<Vec<Functor>> {
    let comps = y.connected_components();
    // per component: list of partial assignments (object images, tree images, vertex hom)
    let mut per_comp: Vec<Vec<(Vec<(usize, usize)>, Vec<(usize, usize)>)>> = Vec::new();
    for comp in &comps {
        let root = comp[0];
        let tree = y.tree_from(root);
        let (vg, varrs) = y.vertex_group(root);
        let vpos: HashMap<usize, usize> = varrs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let root_images: Vec<usize> = match fixed_obj {
            Some(f) => vec![f[root]],
            None => (0..x.num_objects()).collect(),
        };
        let mut options = Vec::new();
        for &rx in &root_images {
            let (xg, xarrs) = x.vertex_group(rx);
            let vhoms = vg.homs_to(&xg);
            // object images for the component
            let reach: Vec<usize> = (0..x.num_objects()).filter(|&z| !x.hom(rx, z).is_empty()).collect();
            let obj_choices: Vec<Vec<usize>> = comp
                .iter()
                .map(|&o| match fixed_obj {
                    Some(f) => vec![f[o]],
                    None if o == root => vec![rx],
                    None => reach.clone(),
                })
                .collect();
            if obj_choices.iter().any(|c| c.iter().any(|&z| x.hom(rx, z).is_empty())) {
                continue;
            }
            for objs in cartesian(&obj_choices) {
                let tree_choices: Vec<Vec<usize>> = comp
                    .iter()
                    .zip(&objs)
                    .map(|(&o, &z)| if o == root { vec![x.identity(rx)] } else { x.hom(rx, z).iter().map(|&a| a as usize).collect() })
                    .collect();
                for trees in cartesian(&tree_choices) {
                    for h in &vhoms {
                        let obj_pairs: Vec<(usize, usize)> = comp.iter().copied().zip(objs.iter().copied()).collect();
                        let mut arr_pairs = Vec::new();
                        let timg: HashMap<usize, usize> = comp.iter().copied().zip(trees.iter().copied()).collect();
                        for &o1 in comp {
                            for &o2 in comp {
                                for &c in y.hom(o1, o2) {
                                    let c = c as usize;
                                    let t1 = tree[o1].unwrap();
                                    let t2 = tree[o2].unwrap();
                                    let v = y.compose_path(&[t1, c, y.inverse(t2)]);
                                    let img_v = xarrs[h[vpos[&v]] as usize];
                                    let img = x.compose_path(&[x.inverse(timg[&o1]), img_v, timg[&o2]]);
                                    arr_pairs.push((c, img));
                                }
                            }
                        }
                        options.push((obj_pairs, arr_pairs));
                    }
                }
            }
        }
        per_comp.push(options);
    }
    let total: u128 = per_comp.iter().map(|o| o.len() as u128).product();
    if total > limit as u128 {
        return Err(Error::TooLarge(format!("{total} morphisms")));
    }
    let mut out = Vec::with_capacity(total as usize);
    let sizes: Vec<Vec<usize>> = per_comp.iter().map(|o| (0..o.len()).collect()).collect();
    for pick in cartesian(&sizes) {
        let mut obj = vec![0usize; y.num_objects()];
        let mut arr = vec![0usize; y.num_arrows()];
        for (ci, &k) in pick.iter().enumerate() {
            let (op, ap) = &per_comp[ci][k];
            for &(a, b) in op {
                obj[a] = b;
            }
            for &(a, b) in ap {
                arr[a] = b;
            }
        }
        out.push(Functor { obj, arr });
    }
    if y.num_objects() == 0 {
        out = vec![Functor { obj: vec![], arr: vec![] }];
    }
    Ok(out)
}

/// Cartesian product of choice lists, first coordinate slowest.
pub(crate) fn cartesian(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(choices.len())];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for &v in c {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Retraction of a connected groupoid onto a vertex group.
#[derive(Debug, Clone)]
pub struct Retraction {
    pub base: usize,
    /// `tree[x]` is an arrow `base -> x`; `tree[base]` is the identity.
    pub tree: Vec<usize>,
    /// Vertex group at `base` as a one-object groupoid named like `base`.
    pub vertex: Arc<FinGroupoid>,
    pub morphism: GpdMorphism,
}

impl Retraction {
    /// `c = tree(x)⁻¹ · r(c) · tree(y)` with `r(c)` read back in the source.
    pub fn reconstruct(&self, c: usize) -> usize {
        let g = &*self.morphism.source;
        let rc = self.morphism.arr(c);
        let rc_src = g.arrow_id(&self.vertex.arrow(rc).id).expect("vertex arrow in source");
        g.compose_path(&[g.inverse(self.tree[g.src(c)]), rc_src, self.tree[g.tgt(c)]])
    }
}

/// `r(c) = τ(x) · c · τ(y)⁻¹` for `c: x -> y`, with `τ(x) ∈ G(x0, x)`.
pub fn spanning_tree_retraction(g: &Arc<FinGroupoid>, x0: usize) -> Result<Retraction> {
    if !g.is_connected() {
        return Err(Error::NotConnected(format!("{} components", g.connected_components().len())));
    }
    if x0 >= g.num_objects() {
        return Err(Error::UnknownObject(format!("#{x0}")));
    }
    let tree: Vec<usize> = g.tree_from(x0).into_iter().map(|t| t.unwrap()).collect();
    let (vg, _) = g.vertex_group(x0);
    let vertex = Arc::new(FinGroupoid::from_group_at(&vg, &g.objects[x0]));
    let arr = (0..g.num_arrows())
        .map(|c| {
            let v = g.compose_path(&[tree[g.src(c)], c, g.inverse(tree[g.tgt(c)])]);
            vertex.arrow_index(&g.arrows[v].id).unwrap()
        })
        .collect();
    let morphism = GpdMorphism::trusted(g.clone(), vertex.clone(), Functor { obj: vec![0; g.num_objects()], arr });
    Ok(Retraction { base: x0, tree, vertex, morphism })
}

/// Totally disconnected, conjugation-closed family of vertex subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubgroupoid {
    pub ambient: Arc<FinGroupoid>,
    /// Sorted arrow indices of `N(x)` per object.
    pub subgroups: Vec<Vec<usize>>,
}

impl NormalSubgroupoid {
    pub fn trivial(g: &Arc<FinGroupoid>) -> Self {
        NormalSubgroupoid { ambient: g.clone(), subgroups: (0..g.num_objects()).map(|x| vec![g.identity(x)]).collect() }
    }

    pub fn full_vertex(g: &Arc<FinGroupoid>) -> Self {
        NormalSubgroupoid { ambient: g.clone(), subgroups: (0..g.num_objects()).map(|x| g.hom(x, x).iter().map(|&a| a as usize).collect()).collect() }
    }

    pub fn contains(&self, a: usize) -> bool {
        let g = &self.ambient;
        g.src(a) == g.tgt(a) && self.subgroups[g.src(a)].binary_search(&a).is_ok()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let g = &*self.ambient;
        if self.subgroups.len() != g.num_objects() {
            r.push("shape", "one subgroup per object expected");
            return r;
        }
        for (x, n) in self.subgroups.iter().enumerate() {
            if n.iter().any(|&a| a >= g.num_arrows() || g.src(a) != x || g.tgt(a) != x) {
                r.push("totally disconnected", format!("N({}) contains a non-vertex arrow", g.objects[x]));
                continue;
            }
            if !n.contains(&g.identity(x)) {
                r.push("subgroup", format!("N({}) misses the identity", g.objects[x]));
            }
            for &a in n {
                if !self.contains(g.inverse(a)) {
                    r.push("subgroup", format!("N({}) not closed under inverse at {}", g.objects[x], g.arrows[a].id));
                }
                for &b in n {
                    if !self.contains(g.compose(a, b).unwrap()) {
                        r.push("subgroup", format!("N({}) not closed under products", g.objects[x]));
                    }
                }
            }
        }
        if !r.is_valid() {
            return r;
        }
        for a in 0..g.num_arrows() {
            let (x, y) = (g.src(a), g.tgt(a));
            let mut conj: Vec<usize> = self.subgroups[x].iter().map(|&n| g.compose_path(&[g.inverse(a), n, a])).collect();
            conj.sort();
            if conj != self.subgroups[y] {
                r.push("normality", format!("conjugation by {} does not carry N({}) onto N({})", g.arrows[a].id, g.objects[x], g.objects[y]));
            }
        }
        r
    }
}

/// Least normal subgroupoid containing the given vertex arrows.
pub fn normal_closure(p: &Arc<FinGroupoid>, r: &[usize]) -> Result<NormalSubgroupoid> {
    let g = &**p;
    for &a in r {
        if a >= g.num_arrows() || g.src(a) != g.tgt(a) {
            return Err(Error::NotVertexArrow(g.arrows.get(a).map(|x| x.id.clone()).unwrap_or_default()));
        }
    }
    let mut member = vec![false; g.num_arrows()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for x in 0..g.num_objects() {
        member[g.identity(x)] = true;
    }
    for &a in r {
        if !member[a] {
            member[a] = true;
            queue.push_back(a);
        }
    }
    while let Some(n) = queue.pop_front() {
        let x = g.src(n);
        let mut new = vec![g.inverse(n)];
        for &m in g.hom(x, x) {
            if member[m as usize] {
                new.push(g.compose(n, m as usize).unwrap());
                new.push(g.compose(m as usize, n).unwrap());
            }
        }
        for y in 0..g.num_objects() {
            for &a in g.hom(x, y) {
                let a = a as usize;
                new.push(g.compose_path(&[g.inverse(a), n, a]));
            }
        }
        for c in new {
            if !member[c] {
                member[c] = true;
                queue.push_back(c);
            }
        }
    }
    let subgroups = (0..g.num_objects()).map(|x| g.hom(x, x).iter().map(|&a| a as usize).filter(|&a| member[a]).collect()).collect();
    Ok(NormalSubgroupoid { ambient: p.clone(), subgroups })
}

/// `P/N`: same objects, arrows the cosets `N(x)a`, named `[least member]`.
pub fn quotient_groupoid(n: &NormalSubgroupoid) -> Result<GpdMorphism> {
    n.validate().into_result("normal subgroupoid").map_err(|e| Error::NotNormal(e.to_string()))?;
    let g = &*n.ambient;
    let mut class = vec![usize::MAX; g.num_arrows()];
    let mut reps: Vec<usize> = Vec::new();
    for a in 0..g.num_arrows() {
        if class[a] != usize::MAX {
            continue;
        }
        let coset: Vec<usize> = n.subgroups[g.src(a)].iter().map(|&m| g.compose(m, a).unwrap()).collect();
        let least = *coset.iter().min().unwrap();
        for c in coset {
            class[c] = reps.len();
        }
        reps.push(least);
    }
    let arrows = reps.iter().map(|&a| (format!("[{}]", g.arrows[a].id), g.src(a), g.tgt(a))).collect();
    let identity: Vec<usize> = (0..g.num_objects()).map(|x| class[g.identity(x)]).collect();
    let inverse: Vec<usize> = reps.iter().map(|&a| class[g.inverse(a)]).collect();
    let q = FinGroupoid::build(g.objects.clone(), arrows, |i, j| class[g.compose(reps[i], reps[j]).unwrap()], &identity, &inverse);
    let arr = (0..g.num_arrows()).map(|a| q.arrow_index(&format!("[{}]", g.arrows[reps[class[a]]].id)).unwrap()).collect();
    let obj = (0..g.num_objects()).collect();
    Ok(GpdMorphism::trusted(n.ambient.clone(), Arc::new(q), Functor { obj, arr }))
}

/// Finds an isomorphism `a -> b` by backtracking over component pairings
/// and vertex-group isomorphisms. Errors beyond 16 objects or 256 arrows.
pub fn find_isomorphism(a: &Arc<FinGroupoid>, b: &Arc<FinGroupoid>) -> Result<Option<GpdMorphism>> {
    for g in [a, b] {
        if g.num_objects() > 16 || g.num_arrows() > 256 {
            return Err(Error::TooLarge("isomorphism search is limited to 16 objects and 256 arrows".into()));
        }
    }
    if a.num_objects() != b.num_objects() || a.num_arrows() != b.num_arrows() {
        return Ok(None);
    }
    let ca = a.connected_components();
    let cb = b.connected_components();
    if ca.len() != cb.len() {
        return Ok(None);
    }
    let vga: Vec<FinGroup> = ca.iter().map(|c| a.vertex_group(c[0]).0).collect();
    let vgb: Vec<FinGroup> = cb.iter().map(|c| b.vertex_group(c[0]).0).collect();
    let mut used = vec![false; cb.len()];
    let mut pairing = vec![0usize; ca.len()];
    fn assign(i: usize, ca: &[Vec<usize>], cb: &[Vec<usize>], va: &[FinGroup], vb: &[FinGroup], used: &mut [bool], pairing: &mut [usize]) -> bool {
        if i == ca.len() {
            return true;
        }
        for j in 0..cb.len() {
            if !used[j] && ca[i].len() == cb[j].len() && va[i].is_isomorphic(&vb[j]) {
                used[j] = true;
                pairing[i] = j;
                if assign(i + 1, ca, cb, va, vb, used, pairing) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    if !assign(0, &ca, &cb, &vga, &vgb, &mut used, &mut pairing) {
        return Ok(None);
    }
    let mut obj = vec![0usize; a.num_objects()];
    let mut arr = vec![0usize; a.num_arrows()];
    for (i, comp) in ca.iter().enumerate() {
        let target = &cb[pairing[i]];
        let (ra, rb) = (comp[0], target[0]);
        let ta = a.tree_from(ra);
        let tb = b.tree_from(rb);
        let (ga, aa) = a.vertex_group(ra);
        let (gb, ab) = b.vertex_group(rb);
        let iso = ga.isomorphisms_to(&gb).into_iter().next().expect("paired components have isomorphic vertex groups");
        let apos: HashMap<usize, usize> = aa.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        for (&x, &y) in comp.iter().zip(target) {
            obj[x] = y;
        }
        for &x in comp {
            for &y in comp {
                for &c in a.hom(x, y) {
                    let c = c as usize;
                    let v = a.compose_path(&[ta[x].unwrap(), c, a.inverse(ta[y].unwrap())]);
                    let img_v = ab[iso[apos[&v]] as usize];
                    arr[c] = b.compose_path(&[b.inverse(tb[obj[x]].unwrap()), img_v, tb[obj[y]].unwrap()]);
                }
            }
        }
    }
    let m = GpdMorphism { source: a.clone(), target: b.clone(), map: Functor { obj, arr } };
    debug_assert!(m.validate().is_valid() && m.is_isomorphism());
    if !m.validate().is_valid() || !m.is_isomorphism() {
        return Err(Error::Invalid("constructed isomorphism failed verification".into()));
    }
    Ok(Some(m))
}

pub fn is_isomorphic(a: &Arc<FinGroupoid>, b: &Arc<FinGroupoid>) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn constructors_validate() {
        let c2 = FinGroupoid::from_group(&FinGroup::cyclic(2));
        assert!(validate_groupoid(&c2).is_valid());
        let cd = FinGroupoid::codiscrete(&names(&["0", "1"]));
        assert_eq!(cd.num_arrows(), 4);
        assert!(validate_groupoid(&cd).is_valid());
        let d = FinGroupoid::discrete(&names(&["a", "b", "c"]));
        assert!(validate_groupoid(&d).is_valid());
        assert_eq!(d.connected_components().len(), 3);
        let cp = FinGroupoid::coproduct(&[&c2, &FinGroupoid::from_group(&FinGroup::cyclic(3))]);
        assert_eq!((cp.num_objects(), cp.num_arrows()), (2, 5));
        assert!(validate_groupoid(&cp).is_valid());
    }

    #[test]
    fn broken_inverse_is_reported() {
        let mut j = FinGroupoid::from_group(&FinGroup::cyclic(2)).to_json();
        for row in j.compose.iter_mut() {
            if row[0] == "t" && row[1] == "t" {
                row[2] = "t".into();
            }
        }
        let g = FinGroupoid::from_json(&j).unwrap();
        let r = validate_groupoid(&g);
        assert!(r.cites("inverse axiom"));
    }

    #[test]
    fn pullback_of_c2_over_two_objects() {
        let c2 = Arc::new(FinGroupoid::from_group(&FinGroup::cyclic(2)));
        let u = ObjMap::collapse(&names(&["a", "b"]), "*");
        let (h, _) = pullback_groupoid(&u, &c2).unwrap();
        assert_eq!(h.num_arrows(), 8);
        assert!(h.is_connected());
        assert!(validate_groupoid(&h).is_valid());
        assert!(h.vertex_group(0).0.is_isomorphic(&FinGroup::cyclic(2)));
    }

    #[test]
    fn quotient_examples() {
        let c4 = Arc::new(FinGroupoid::from_group(&FinGroup::cyclic(4)));
        let n = normal_closure(&c4, &[c4.arrow_id("t2").unwrap()]).unwrap();
        assert_eq!(n.subgroups[0].len(), 2);
        let q = quotient_groupoid(&n).unwrap();
        assert_eq!(q.target.num_arrows(), 2);
        let c2 = Arc::new(FinGroupoid::from_group(&FinGroup::cyclic(2)));
        let u = ObjMap::collapse(&names(&["a", "b"]), "*");
        let h = Arc::new(pullback_groupoid(&u, &c2).unwrap().0);
        let q = quotient_groupoid(&NormalSubgroupoid::full_vertex(&h)).unwrap();
        assert_eq!(q.target.num_arrows(), 4);
        assert!(is_isomorphic(&q.target, &Arc::new(FinGroupoid::codiscrete(&names(&["a", "b"])))).unwrap());
    }

    #[test]
    fn retraction_reconstructs() {
        let c2 = Arc::new(FinGroupoid::from_group(&FinGroup::cyclic(2)));
        let u = ObjMap::collapse(&names(&["a", "b"]), "*");
        let h = Arc::new(pullback_groupoid(&u, &c2).unwrap().0);
        let r = spanning_tree_retraction(&h, 0).unwrap();
        for c in 0..h.num_arrows() {
            assert_eq!(r.reconstruct(c), c);
        }
        let kernel = (0..h.num_arrows()).filter(|&c| r.vertex.is_identity(r.morphism.arr(c))).count();
        assert_eq!(kernel, 4);
    }

    #[test]
    fn initiality() {
        let cd = Arc::new(FinGroupoid::codiscrete(&names(&["0", "1"])));
        let u = ObjMap::identity(&names(&["0", "1"]));
        let m = initiality_check(&names(&["0", "1"]), &cd, &u).unwrap();
        assert!(m.validate().is_valid());
        let empty = initiality_check(&[], &cd, &ObjMap::new(vec![], names(&["0", "1"]), vec![]).unwrap()).unwrap();
        assert_eq!(empty.map.arr.len(), 0);
    }

    #[test]
    fn hom_counts_match_groups() {
        let s3 = FinGroup::symmetric3();
        let c2 = FinGroup::cyclic(2);
        let a = FinGroupoid::from_group(&s3);
        let b = FinGroupoid::from_group(&c2);
        assert_eq!(homs(&a, &b, None, usize::MAX).unwrap().len(), 2);
        // codiscrete on 2 objects into C2 (one object): only one object map, tree arrow free
        let cd = FinGroupoid::codiscrete(&names(&["0", "1"]));
        assert_eq!(homs(&cd, &b, None, usize::MAX).unwrap().len(), 2);
        for f in homs(&cd, &b, None, usize::MAX).unwrap() {
            let m = GpdMorphism::new(Arc::new(cd.clone()), Arc::new(b.clone()), f).unwrap();
            assert!(m.validate().is_valid());
        }
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let g = FinGroupoid::group_times_codiscrete(&FinGroup::symmetric3(), &names(&["x", "y"]));
        let j = serde_json::to_string(&g.to_json()).unwrap();
        let back = FinGroupoid::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, g);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), j);
    }
}
