//! Modules over groupoids.
//!
//! Actions are right actions: the matrix of `p: x -> y` sends generator `i`
//! of `M(x)` to row `i`, written on the generators of `M(y)`. The composite
//! `pq` therefore acts by the matrix product `A_p A_q`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpgroup::free_reduce;
use crate::group::{FinGroup, GroupMap};
use crate::groupoid::{FinGroupoid, GpdMorphism, GroupoidJson, ObjMap, ValidationReport};
use crate::intmat::{eliminate_units, invariants_by_hermite, sparse_invariants, AbGroupInvariants, AbPres, IntMatrix, Smith};
use crate::par;
use crate::presented::{PathWord, PresentedGroupoid, PresentedJson};
use crate::word::universal_morphism;

/// Per-object abelian invariants, keyed by object name.
pub type AbInvariants = BTreeMap<String, AbGroupInvariants>;

/// Module over a finite groupoid with every arrow's action stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpdModule {
    base: Arc<FinGroupoid>,
    groups: Vec<AbPres>,
    action: Vec<IntMatrix>,
}

impl GpdModule {
    /// Shape-checked constructor; axioms are checked by [`validate_module`].
    pub fn new(base: Arc<FinGroupoid>, groups: Vec<AbPres>, action: Vec<IntMatrix>) -> Result<Self> {
        if groups.len() != base.num_objects() || action.len() != base.num_arrows() {
            return Err(Error::Malformed("module data does not cover the base".into()));
        }
        for g in &groups {
            if g.rels.iter().any(|r| r.len() != g.gens) {
                return Err(Error::Malformed("relation row length differs from generator count".into()));
            }
        }
        for (p, a) in action.iter().enumerate() {
            let (x, y) = (base.src(p), base.tgt(p));
            if a.rows() != groups[x].gens || a.cols() != groups[y].gens {
                return Err(Error::Malformed(format!("action matrix of {} has the wrong shape", base.arrow(p).id)));
            }
        }
        Ok(GpdModule { base, groups, action })
    }

    pub fn zero(base: Arc<FinGroupoid>) -> Self {
        let groups = vec![AbPres::zero(); base.num_objects()];
        let action = vec![IntMatrix::zeros(0, 0); base.num_arrows()];
        GpdModule { base, groups, action }
    }

    /// `Z/n` (or `Z` for `n = 0`) at every object, each arrow acting by the
    /// scalar `scalar(arrow)`.
    pub fn cyclic_with(base: Arc<FinGroupoid>, n: i64, scalar: impl Fn(usize) -> i64) -> Self {
        let groups = vec![AbPres::cyclic(n); base.num_objects()];
        let action = (0..base.num_arrows())
            .map(|p| {
                let mut m = IntMatrix::zeros(1, 1);
                m.set(0, 0, scalar(p));
                m
            })
            .collect();
        GpdModule { base, groups, action }
    }

    pub fn trivial_action(base: Arc<FinGroupoid>, n: i64) -> Self {
        Self::cyclic_with(base, n, |_| 1)
    }

    pub fn base(&self) -> &Arc<FinGroupoid> {
        &self.base
    }

    pub fn group(&self, x: usize) -> &AbPres {
        &self.groups[x]
    }

    pub fn groups(&self) -> &[AbPres] {
        &self.groups
    }

    pub fn action(&self, p: usize) -> &IntMatrix {
        &self.action[p]
    }

    pub fn num_generators(&self) -> usize {
        self.groups.iter().map(|g| g.gens).sum()
    }

    pub fn invariants(&self) -> Result<AbInvariants> {
        (0..self.base.num_objects()).map(|x| Ok((self.base.objects()[x].clone(), self.groups[x].invariants()?))).collect()
    }

    /// Generator `i` at `x`, named `e{i}@{x}`.
    pub fn generator_name(&self, x: usize, i: usize) -> String {
        format!("e{i}@{}", self.base.objects()[x])
    }

    /// Flattened generator list `(object, index)`.
    pub fn generator_list(&self) -> Vec<(usize, usize)> {
        (0..self.base.num_objects()).flat_map(|x| (0..self.groups[x].gens).map(move |i| (x, i))).collect()
    }

    /// The same module as a presentation over its base: per-object
    /// relations plus `e_i·p = Σ A_p[i][j] e_j` for non-identity `p`.
    pub fn to_presentation(&self) -> ModulePres {
        let list = self.generator_list();
        let index: HashMap<(usize, usize), usize> = list.iter().enumerate().map(|(k, &xi)| (xi, k)).collect();
        let gens = list.iter().map(|&(x, i)| ModGen { id: self.generator_name(x, i), at: x }).collect();
        let g = &self.base;
        let mut relations = Vec::new();
        for x in 0..g.num_objects() {
            for rho in &self.groups[x].rels {
                relations.push(
                    rho.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| Term { coef: c, gen: index[&(x, i)], act: Act::Arrow(g.identity(x)) })
                        .collect(),
                );
            }
        }
        for p in g.non_identity_arrows() {
            let (x, y) = (g.src(p), g.tgt(p));
            for i in 0..self.groups[x].gens {
                let mut rel = vec![Term { coef: 1, gen: index[&(x, i)], act: Act::Arrow(p) }];
                for j in 0..self.groups[y].gens {
                    let c = self.action[p].get(i, j);
                    if c != 0 {
                        rel.push(Term { coef: -c, gen: index[&(y, j)], act: Act::Arrow(g.identity(y)) });
                    }
                }
                relations.push(rel);
            }
        }
        ModulePres::new(ModBase::Fin(self.base.clone()), gens, relations).expect("well-formed by construction")
    }

    pub fn to_json(&self) -> ModuleJson {
        let g = &self.base;
        ModuleJson {
            base: g.to_json(),
            groups: (0..g.num_objects()).map(|x| (g.objects()[x].clone(), self.groups[x].clone())).collect(),
            action: (0..g.num_arrows()).map(|p| (g.arrow(p).id.clone(), self.action[p].to_rows())).collect(),
        }
    }

    /// Identity arrows may be omitted from `action`.
    pub fn from_json(j: &ModuleJson) -> Result<Self> {
        let base = Arc::new(FinGroupoid::from_json(&j.base)?);
        let groups: Vec<AbPres> = base
            .objects()
            .iter()
            .map(|o| j.groups.get(o).cloned().ok_or_else(|| Error::Malformed(format!("no group at object {o}"))))
            .collect::<Result<_>>()?;
        for k in j.action.keys() {
            base.arrow_id(k)?;
        }
        let action = (0..base.num_arrows())
            .map(|p| {
                let (x, y) = (base.src(p), base.tgt(p));
                match j.action.get(&base.arrow(p).id) {
                    Some(rows) => IntMatrix::from_rows(groups[y].gens, rows),
                    None if base.is_identity(p) => Ok(IntMatrix::identity(groups[x].gens)),
                    None => Err(Error::Malformed(format!("no action for arrow {}", base.arrow(p).id))),
                }
            })
            .collect::<Result<_>>()?;
        Self::new(base, groups, action)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub base: GroupoidJson,
    pub groups: BTreeMap<String, AbPres>,
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

fn row_times(v: &[i64], m: &IntMatrix) -> Result<Vec<i64>> {
    m.apply_row(v)
}

/// Checks well-definedness, identity and composition axioms modulo the
/// relations of each fibre.
pub fn validate_module(m: &GpdModule) -> ValidationReport {
    let mut r = ValidationReport::default();
    let g = &*m.base;
    let smiths: Vec<Smith> = match m.groups.iter().map(|p| p.smith()).collect::<Result<_>>() {
        Ok(s) => s,
        Err(e) => {
            r.push("arithmetic", e.to_string());
            return r;
        }
    };
    let name = |p: usize| g.arrow(p).id.clone();
    for p in 0..g.num_arrows() {
        let (x, y) = (g.src(p), g.tgt(p));
        for rho in &m.groups[x].rels {
            match row_times(rho, &m.action[p]).and_then(|v| smiths[y].contains(&v)) {
                Ok(true) => {}
                _ => r.push("well-defined", format!("{} does not preserve the relations of {}", name(p), g.objects()[x])),
            }
        }
    }
    for x in 0..g.num_objects() {
        let e = g.identity(x);
        for i in 0..m.groups[x].gens {
            let mut v = m.action[e].row(i).to_vec();
            v[i] -= 1;
            if !smiths[x].contains(&v).unwrap_or(false) {
                r.push("identity", format!("identity at {} moves generator {i}", g.objects()[x]));
            }
        }
    }
    for p in 0..g.num_arrows() {
        for z in 0..g.num_objects() {
            for &q in g.hom(g.tgt(p), z) {
                let q = q as usize;
                let pq = g.compose(p, q).unwrap();
                let Ok(prod) = m.action[p].mul(&m.action[q]) else {
                    r.push("arithmetic", "overflow");
                    continue;
                };
                for i in 0..m.groups[g.src(p)].gens {
                    let diff: Vec<i64> = prod.row(i).iter().zip(m.action[pq].row(i)).map(|(a, b)| a - b).collect();
                    if !smiths[z].contains(&diff).unwrap_or(false) {
                        r.push("composition", format!("({}, {}) acts differently from {}", name(p), name(q), name(pq)));
                        break;
                    }
                }
            }
        }
    }
    r
}

/// `v*N`: fibres and actions copied along `v`.
pub fn module_pullback(v: &GpdMorphism, n: &GpdModule) -> Result<GpdModule> {
    if *v.target != *n.base {
        return Err(Error::NotOver("module base differs from the morphism target".into()));
    }
    let g = v.source.clone();
    let groups = (0..g.num_objects()).map(|x| n.groups[v.obj(x)].clone()).collect();
    let action = (0..g.num_arrows()).map(|p| n.action[v.arr(p)].clone()).collect();
    GpdModule::new(g, groups, action)
}

/// Base of a module presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModBase {
    Fin(Arc<FinGroupoid>),
    Presented(Arc<PresentedGroupoid>),
}

impl ModBase {
    pub fn num_objects(&self) -> usize {
        match self {
            ModBase::Fin(g) => g.num_objects(),
            ModBase::Presented(p) => p.num_objects(),
        }
    }

    pub fn objects(&self) -> &[String] {
        match self {
            ModBase::Fin(g) => g.objects(),
            ModBase::Presented(p) => p.objects(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ModBase::Fin(_))
    }

    pub(crate) fn ends(&self, a: &Act) -> Result<(usize, usize)> {
        match (self, a) {
            (ModBase::Fin(g), Act::Arrow(p)) if *p < g.num_arrows() => Ok((g.src(*p), g.tgt(*p))),
            (ModBase::Presented(pg), Act::Word(w)) => {
                let checked = pg.path(w.src, w.letters.clone())?;
                if checked.tgt != w.tgt {
                    return Err(Error::Malformed("word endpoints are inconsistent".into()));
                }
                Ok((w.src, w.tgt))
            }
            _ => Err(Error::Malformed("acting element does not belong to the base".into())),
        }
    }

    fn compose(&self, a: &Act, b: &Act) -> Act {
        match (self, a, b) {
            (ModBase::Fin(g), Act::Arrow(p), Act::Arrow(q)) => Act::Arrow(g.compose(*p, *q).expect("composable actions")),
            (_, Act::Word(u), Act::Word(w)) => Act::Word(u.then(w).expect("composable actions")),
            _ => unreachable!("mixed action kinds"),
        }
    }

    fn inverse(&self, a: &Act) -> Act {
        match (self, a) {
            (ModBase::Fin(g), Act::Arrow(p)) => Act::Arrow(g.inverse(*p)),
            (_, Act::Word(w)) => Act::Word(w.inverse()),
            _ => unreachable!("mixed action kinds"),
        }
    }
}

/// An element of the base acting on a generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Act {
    Arrow(usize),
    Word(PathWord),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coef: i64,
    pub gen: usize,
    pub act: Act,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModGen {
    pub id: String,
    pub at: usize,
}

/// Module given by generators at objects and ℤ-linear relations among
/// translated generators. At `y` it is the abelian group on pairs
/// `(generator, k: at -> y)` modulo every relation translated by every arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePres {
    base: ModBase,
    gens: Vec<ModGen>,
    relations: Vec<Vec<Term>>,
}

/// Generator and relation counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub generators: usize,
    pub relations: usize,
}

impl ModulePres {
    /// Checks that every term's action starts at its generator's object and
    /// that all terms of a relation land at one object.
    pub fn new(base: ModBase, gens: Vec<ModGen>, relations: Vec<Vec<Term>>) -> Result<Self> {
        if gens.iter().any(|g| g.at >= base.num_objects()) {
            return Err(Error::Malformed("generator placed at an unknown object".into()));
        }
        for rel in &relations {
            let mut land = None;
            for t in rel {
                let g = gens.get(t.gen).ok_or_else(|| Error::UnknownGenerator(format!("#{}", t.gen)))?;
                let (s, e) = base.ends(&t.act)?;
                if s != g.at {
                    return Err(Error::Malformed(format!("term acts on {} from the wrong object", g.id)));
                }
                if land.is_some_and(|l| l != e) {
                    return Err(Error::Malformed("relation terms land at different objects".into()));
                }
                land = Some(e);
            }
        }
        let mut mp = ModulePres { base, gens, relations: Vec::new() };
        mp.relations = relations.into_iter().map(|r| mp.normalize(r)).filter(|r| !r.is_empty()).collect();
        Ok(mp)
    }

    pub fn zero(base: ModBase) -> Self {
        ModulePres { base, gens: vec![], relations: vec![] }
    }

    pub fn base(&self) -> &ModBase {
        &self.base
    }

    pub fn generators(&self) -> &[ModGen] {
        &self.gens
    }

    pub fn relations(&self) -> &[Vec<Term>] {
        &self.relations
    }

    pub fn report(&self) -> StructuralReport {
        StructuralReport { generators: self.gens.len(), relations: self.relations.len() }
    }

    /// Merges like terms, dropping zero coefficients; order is canonical.
    fn normalize(&self, rel: Vec<Term>) -> Vec<Term> {
        let mut acc: BTreeMap<(usize, Act), i64> = BTreeMap::new();
        for t in rel {
            let act = match t.act {
                Act::Word(w) => Act::Word(PathWord { letters: free_reduce(&w.letters), ..w }),
                a => a,
            };
            *acc.entry((t.gen, act)).or_insert(0) += t.coef;
        }
        acc.into_iter().filter(|(_, c)| *c != 0).map(|((gen, act), coef)| Term { coef, gen, act }).collect()
    }

    /// Unit-coefficient Tietze elimination, valid over any base: a
    /// generator occurring once in a relation with coefficient ±1 is
    /// solved for and substituted everywhere.
    pub fn tietze(&self) -> ModulePres {
        let mut rels: Vec<Vec<Term>> = self.relations.clone();
        let mut removed = vec![false; self.gens.len()];
        loop {
            let mut choice = None;
            'search: for (ri, rel) in rels.iter().enumerate() {
                for (ti, t) in rel.iter().enumerate() {
                    if t.coef.abs() == 1 && rel.iter().filter(|u| u.gen == t.gen).count() == 1 {
                        choice = Some((ri, ti));
                        break 'search;
                    }
                }
            }
            let Some((ri, ti)) = choice else { break };
            let rel = rels.remove(ri);
            let pivot = rel[ti].clone();
            // g·w = -c Σ others  ⇒  g = -c Σ (others · w⁻¹)
            let winv = self.base.inverse(&pivot.act);
            let solution: Vec<Term> = rel
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != ti)
                .map(|(_, u)| Term { coef: -pivot.coef * u.coef, gen: u.gen, act: self.base.compose(&u.act, &winv) })
                .collect();
            removed[pivot.gen] = true;
            for r in rels.iter_mut() {
                if !r.iter().any(|u| u.gen == pivot.gen) {
                    continue;
                }
                let mut out = Vec::new();
                for u in r.drain(..) {
                    if u.gen == pivot.gen {
                        for s in &solution {
                            out.push(Term { coef: u.coef * s.coef, gen: s.gen, act: self.base.compose(&s.act, &u.act) });
                        }
                    } else {
                        out.push(u);
                    }
                }
                *r = self.normalize(out);
            }
            rels.retain(|r| !r.is_empty());
        }
        let mut renum = vec![usize::MAX; self.gens.len()];
        let mut gens = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            if !removed[i] {
                renum[i] = gens.len();
                gens.push(g.clone());
            }
        }
        let relations = rels.into_iter().map(|r| r.into_iter().map(|t| Term { gen: renum[t.gen], ..t }).collect()).collect();
        ModulePres { base: self.base.clone(), gens, relations }
    }

    /// Relation rows at object `y` over variables `(generator, k)`.
    fn expand_at(&self, g: &FinGroupoid, y: usize) -> (usize, Vec<Vec<(usize, i64)>>) {
        let mut var: HashMap<(usize, usize), usize> = HashMap::new();
        for (gi, gen) in self.gens.iter().enumerate() {
            for &k in g.hom(gen.at, y) {
                let n = var.len();
                var.insert((gi, k as usize), n);
            }
        }
        let mut rows = Vec::new();
        for rel in &self.relations {
            let Act::Arrow(a0) = rel[0].act else { unreachable!() };
            let z = g.tgt(a0);
            for &k in g.hom(z, y) {
                let k = k as usize;
                rows.push(
                    rel.iter()
                        .map(|t| {
                            let Act::Arrow(a) = t.act else { unreachable!() };
                            (var[&(t.gen, g.compose(a, k).unwrap())], t.coef)
                        })
                        .collect(),
                );
            }
        }
        (var.len(), rows)
    }

    /// Exact invariants per object over a finite base.
    pub fn simplify(&self) -> Result<AbInvariants> {
        self.simplify_with(par::Exec::default())
    }

    pub fn simplify_with(&self, exec: par::Exec) -> Result<AbInvariants> {
        let g = match &self.base {
            ModBase::Fin(g) => g.clone(),
            ModBase::Presented(_) => return Err(Error::InfiniteBase { generators: self.gens.len(), relations: self.relations.len() }),
        };
        let per = par::map_range(exec, g.num_objects(), |y| {
            let (n, rows) = self.expand_at(&g, y);
            sparse_invariants(n, rows)
        });
        g.objects().iter().cloned().zip(per).map(|(o, r)| Ok((o, r?))).collect()
    }

    /// Presentation of the fibre at `y` as an abelian group, after unit
    /// elimination: surviving `(generator, arrow)` variables and rows.
    pub fn fibre_at(&self, y: usize) -> Result<(Vec<(usize, usize)>, Vec<BTreeMap<usize, i64>>)> {
        let ModBase::Fin(g) = &self.base else {
            return Err(Error::InfiniteBase { generators: self.gens.len(), relations: self.relations.len() });
        };
        let (n, rows) = self.expand_at(g, y);
        let names: Vec<(usize, usize)> = self.gens.iter().enumerate().flat_map(|(gi, gen)| g.hom(gen.at, y).iter().map(move |&k| (gi, k as usize))).collect();
        let (vars, rest) = eliminate_units(n, rows)?;
        Ok((vars.into_iter().map(|v| names[v]).collect(), rest))
    }

    /// Induces along a map of bases: generators move to `obj[at]` and every
    /// action is carried through `act`.
    pub fn induce_along(&self, target: ModBase, obj: &[usize], act: impl Fn(&Act) -> Act) -> Result<ModulePres> {
        let gens = self.gens.iter().map(|g| ModGen { id: g.id.clone(), at: obj[g.at] }).collect();
        let relations = self.relations.iter().map(|r| r.iter().map(|t| Term { coef: t.coef, gen: t.gen, act: act(&t.act) }).collect()).collect();
        ModulePres::new(target, gens, relations)
    }

    pub fn format_act(&self, a: &Act) -> ActJson {
        match (&self.base, a) {
            (ModBase::Fin(g), Act::Arrow(p)) => ActJson::Arrow(g.arrow(*p).id.clone()),
            (ModBase::Presented(pg), Act::Word(w)) => {
                if w.letters.is_empty() {
                    ActJson::Arrow(format!("1_{}", pg.objects()[w.src]))
                } else {
                    ActJson::Word(pg.word_json(&w.letters))
                }
            }
            _ => ActJson::Arrow("?".into()),
        }
    }

    pub fn to_json(&self) -> ModulePresJson {
        ModulePresJson {
            base: match &self.base {
                ModBase::Fin(g) => BaseJson::Finite(g.to_json()),
                ModBase::Presented(p) => BaseJson::Presented(p.to_json()),
            },
            generators: self.gens.iter().map(|g| ModGenJson { id: g.id.clone(), at: self.base.objects()[g.at].clone() }).collect(),
            relations: self.relations.iter().map(|r| r.iter().map(|t| (t.coef, self.gens[t.gen].id.clone(), self.format_act(&t.act))).collect()).collect(),
        }
    }

    pub fn from_json(j: &ModulePresJson) -> Result<Self> {
        let base = match &j.base {
            BaseJson::Finite(g) => ModBase::Fin(Arc::new(FinGroupoid::from_json(g)?)),
            BaseJson::Presented(p) => ModBase::Presented(Arc::new(PresentedGroupoid::from_json(p)?)),
        };
        let objs = base.objects().to_vec();
        let gens: Vec<ModGen> = j
            .generators
            .iter()
            .map(|g| Ok(ModGen { id: g.id.clone(), at: objs.iter().position(|o| *o == g.at).ok_or_else(|| Error::UnknownObject(g.at.clone()))? }))
            .collect::<Result<_>>()?;
        let gi = |id: &str| gens.iter().position(|g| g.id == id).ok_or_else(|| Error::UnknownGenerator(id.to_string()));
        let mut relations = Vec::new();
        for r in &j.relations {
            let mut rel = Vec::new();
            for (coef, id, act) in r {
                let gen = gi(id)?;
                let act = match (&base, act) {
                    (ModBase::Fin(g), ActJson::Arrow(a)) => Act::Arrow(g.arrow_id(a)?),
                    (ModBase::Presented(pg), ActJson::Word(w)) => {
                        let letters = pg.parse_word(w)?;
                        Act::Word(pg.path(gens[gen].at, letters)?)
                    }
                    (ModBase::Presented(pg), ActJson::Arrow(a)) if a.starts_with("1_") => {
                        let x = pg.object_id(&a[2..])?;
                        Act::Word(PathWord::empty(x))
                    }
                    (ModBase::Presented(pg), ActJson::Arrow(a)) => {
                        let letters = pg.parse_word(std::slice::from_ref(a))?;
                        Act::Word(pg.path(gens[gen].at, letters)?)
                    }
                    (ModBase::Fin(_), ActJson::Word(_)) => return Err(Error::Malformed("word action over a finite base".into())),
                };
                rel.push(Term { coef: *coef, gen, act });
            }
            relations.push(rel);
        }
        Self::new(base, gens, relations)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActJson {
    Arrow(String),
    Word(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseJson {
    Finite(GroupoidJson),
    Presented(PresentedJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModGenJson {
    pub id: String,
    pub at: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulePresJson {
    pub base: BaseJson,
    pub generators: Vec<ModGenJson>,
    pub relations: Vec<Vec<(i64, String, ActJson)>>,
}

/// Result of inducing a table module: the presentation and, for each
/// generator of the source (in [`GpdModule::generator_list`] order), the
/// generator it maps to under the unit.
#[derive(Debug, Clone)]
pub struct InducedModule {
    pub pres: ModulePres,
    pub unit: Vec<usize>,
}

/// `v_*M` over a finite target with literal generators `(e, q)` for every
/// generator `e` at `x` and every arrow `q` out of `v(x)`.
pub fn module_induce(v: &GpdMorphism, m: &GpdModule) -> Result<InducedModule> {
    if *v.source != *m.base {
        return Err(Error::NotOver("module base differs from the morphism source".into()));
    }
    let (g, h) = (&*v.source, &v.target);
    let mut gens = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for x in 0..g.num_objects() {
        let vx = v.obj(x);
        for i in 0..m.groups[x].gens {
            for y in 0..h.num_objects() {
                for &q in h.hom(vx, y) {
                    index.insert((x, i, q as usize), gens.len());
                    gens.push(ModGen { id: format!("({},{})", m.generator_name(x, i), h.arrow(q as usize).id), at: y });
                }
            }
        }
    }
    let mut relations = Vec::new();
    for x in 0..g.num_objects() {
        let one = h.identity(v.obj(x));
        for i in 0..m.groups[x].gens {
            for y in 0..h.num_objects() {
                for &q in h.hom(v.obj(x), y) {
                    let q = q as usize;
                    if q != one {
                        relations.push(vec![
                            Term { coef: 1, gen: index[&(x, i, q)], act: Act::Arrow(h.identity(y)) },
                            Term { coef: -1, gen: index[&(x, i, one)], act: Act::Arrow(q) },
                        ]);
                    }
                }
            }
        }
        for rho in &m.groups[x].rels {
            relations.push(
                rho.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| Term { coef: c, gen: index[&(x, i, one)], act: Act::Arrow(one) }).collect(),
            );
        }
    }
    for p in g.non_identity_arrows() {
        let (x, x2) = (g.src(p), g.tgt(p));
        let one2 = h.identity(v.obj(x2));
        for i in 0..m.groups[x].gens {
            let mut rel: Vec<Term> = (0..m.groups[x2].gens)
                .filter(|&j| m.action[p].get(i, j) != 0)
                .map(|j| Term { coef: m.action[p].get(i, j), gen: index[&(x2, j, one2)], act: Act::Arrow(one2) })
                .collect();
            rel.push(Term { coef: -1, gen: index[&(x, i, v.arr(p))], act: Act::Arrow(one2) });
            relations.push(rel);
        }
    }
    let unit = m.generator_list().iter().map(|&(x, i)| index[&(x, i, h.identity(v.obj(x)))]).collect();
    let pres = ModulePres::new(ModBase::Fin(h.clone()), gens, relations)?;
    Ok(InducedModule { pres, unit })
}

/// Induces a table module along the universal morphism of `u`, over the
/// presented base `U_u(G)`; only seed generators, actions become words.
pub fn module_induce_universal(u: &ObjMap, m: &GpdModule) -> Result<ModulePres> {
    pres_induce_universal(u, &m.to_presentation())
}

/// Induces a presentation over a finite base along the universal morphism
/// of `u`.
pub fn pres_induce_universal(u: &ObjMap, mp: &ModulePres) -> Result<ModulePres> {
    let ModBase::Fin(g) = mp.base() else {
        return Err(Error::Malformed("presentation must live over a finite base".into()));
    };
    let (w, unit) = universal_morphism(u, g)?;
    let target = Arc::new(w.to_presentation());
    mp.induce_along(ModBase::Presented(target), &u.map, |a| match a {
        Act::Arrow(p) => Act::Word(w.to_path(&unit[*p])),
        Act::Word(_) => unreachable!("finite base"),
    })
}

/// Induces a presentation along a morphism of finite groupoids.
pub fn pres_induce(v: &GpdMorphism, mp: &ModulePres) -> Result<ModulePres> {
    match mp.base() {
        ModBase::Fin(g) if **g == *v.source => {}
        _ => return Err(Error::NotOver("presentation base differs from the morphism source".into())),
    }
    mp.induce_along(ModBase::Fin(v.target.clone()), &v.map.obj, |a| match a {
        Act::Arrow(p) => Act::Arrow(v.arr(*p)),
        Act::Word(_) => unreachable!("finite base"),
    })
}

/// Free module on `t: B -> Ob Q`, as the module induced from ℤB on the
/// discrete groupoid along `t`.
pub fn free_module(basis: &[(String, usize)], q: &Arc<FinGroupoid>) -> Result<InducedModule> {
    let names: Vec<String> = basis.iter().map(|(b, _)| b.clone()).collect();
    let d = Arc::new(FinGroupoid::discrete(&names));
    let obj: Vec<usize> = d
        .objects()
        .iter()
        .map(|o| {
            let (_, y) = basis.iter().find(|(b, _)| b == o).unwrap();
            *y
        })
        .collect();
    if obj.iter().any(|&y| y >= q.num_objects()) {
        return Err(Error::UnknownObject("basis element placed outside the base".into()));
    }
    let arr = (0..d.num_arrows()).map(|a| q.identity(obj[d.src(a)])).collect();
    let v = GpdMorphism::new(d.clone(), q.clone(), crate::groupoid::Functor { obj, arr })?;
    module_induce(&v, &GpdModule::trivial_action(d, 0))
}

/// Every module morphism from a presentation into a finite table module
/// over the same base, as generator images (canonical coordinates).
pub fn module_homs(mp: &ModulePres, n: &GpdModule, cap: usize) -> Result<Vec<Vec<Vec<i64>>>> {
    let g = match mp.base() {
        ModBase::Fin(g) if **g == *n.base => g.clone(),
        _ => return Err(Error::NotOver("presentation base differs from the module base".into())),
    };
    let smiths: Vec<Smith> = n.groups.iter().map(|p| p.smith()).collect::<Result<_>>()?;
    let elems: Vec<Vec<Vec<i64>>> = n.groups.iter().map(|p| p.elements(cap)).collect::<Result<_>>()?;
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); mp.gens.len()];
    for (k, r) in mp.relations.iter().enumerate() {
        due[r.iter().map(|t| t.gen).max().unwrap()].push(k);
    }
    let mut out = Vec::new();
    let mut cur: Vec<Vec<i64>> = vec![Vec::new(); mp.gens.len()];
    fn holds(g: &FinGroupoid, n: &GpdModule, smiths: &[Smith], cur: &[Vec<i64>], rel: &[Term]) -> bool {
        let Act::Arrow(a0) = rel[0].act else { return false };
        let z = g.tgt(a0);
        let mut sum = vec![0i64; n.groups[z].gens];
        for t in rel {
            let Act::Arrow(a) = t.act else { return false };
            let img = n.action[a].apply_row(&cur[t.gen]).unwrap();
            for (s, x) in sum.iter_mut().zip(img) {
                *s += t.coef * x;
            }
        }
        smiths[z].contains(&sum).unwrap_or(false)
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        mp: &ModulePres,
        g: &FinGroupoid,
        n: &GpdModule,
        smiths: &[Smith],
        elems: &[Vec<Vec<i64>>],
        due: &[Vec<usize>],
        cur: &mut Vec<Vec<i64>>,
        out: &mut Vec<Vec<Vec<i64>>>,
        cap: usize,
    ) -> Result<()> {
        if i == mp.gens.len() {
            if out.len() >= cap {
                return Err(Error::TooLarge(format!("more than {cap} module morphisms")));
            }
            out.push(cur.clone());
            return Ok(());
        }
        for e in &elems[mp.gens[i].at] {
            cur[i] = e.clone();
            if due[i].iter().all(|&k| holds(g, n, smiths, cur, &mp.relations[k])) {
                go(i + 1, mp, g, n, smiths, elems, due, cur, out, cap)?;
            }
        }
        Ok(())
    }
    go(0, mp, &g, n, &smiths, &elems, &due, &mut cur, &mut out, cap)?;
    Ok(out)
}

/// A module over a finite group: abelian group plus one matrix per element.
#[derive(Debug, Clone)]
pub struct GroupModule {
    pub group: FinGroup,
    pub pres: AbPres,
    pub action: Vec<IntMatrix>,
    pub label: String,
}

impl GroupModule {
    /// As a module over the one-object groupoid of the group.
    pub fn to_gpd_module(&self) -> Result<GpdModule> {
        let base = Arc::new(FinGroupoid::from_group(&self.group));
        let action = (0..base.num_arrows()).map(|p| self.action[self.group.index_of(&base.arrow(p).id).unwrap()].clone()).collect();
        GpdModule::new(base, vec![self.pres.clone()], action)
    }
}

/// `M ⊗_{ZG} ZH` by one dense integer system over the basis `(i, h)`.
pub fn tensor_oracle(m: &GroupModule, h: &FinGroup, f: &[u32]) -> Result<AbGroupInvariants> {
    let (g, n) = (&m.group, m.pres.gens);
    let ho = h.order();
    let var = |i: usize, k: usize| i * ho + k;
    let mut rows = Vec::new();
    for r in &m.pres.rels {
        for k in 0..ho {
            let mut row = vec![0i64; n * ho];
            for i in 0..n {
                row[var(i, k)] += r[i];
            }
            rows.push(row);
        }
    }
    for e in 0..g.order() {
        for i in 0..n {
            for k in 0..ho {
                let mut row = vec![0i64; n * ho];
                for j in 0..n {
                    row[var(j, k)] += m.action[e].get(i, j);
                }
                row[var(i, h.mul(f[e] as usize, k))] -= 1;
                rows.push(row);
            }
        }
    }
    invariants_by_hermite(&IntMatrix::from_rows(n * ho, &rows)?)
}

/// Units of `Z/n` as a group (`n = 0`: `{1, -1}`), with their residues.
fn unit_group(n: i64) -> (FinGroup, Vec<i64>) {
    let units: Vec<i64> = if n == 0 { vec![1, -1] } else { (1..n.max(2)).filter(|&u| crate::intmat::gcd(u as u64, n as u64) == 1).collect() };
    let units = if n == 1 || n == 2 { vec![1] } else { units };
    let modn = |x: i64| if n == 0 { x } else { x.rem_euclid(n) };
    let labels = units.iter().map(|u| format!("{u}")).collect();
    let pos = |x: i64| units.iter().position(|&u| u == modn(x)).unwrap();
    let g = FinGroup::from_fn(labels, |a, b| pos(units[a] * units[b]));
    (g, units)
}

/// Cyclic modules `Z/n` over `g` for each `n` in `orders` and each
/// character `g -> (Z/n)^×`.
pub fn cyclic_modules(g: &FinGroup, orders: &[i64]) -> Vec<GroupModule> {
    let mut out = Vec::new();
    for &n in orders {
        let (ug, units) = unit_group(n);
        for chi in g.homs_to(&ug) {
            let action = (0..g.order())
                .map(|e| {
                    let mut a = IntMatrix::zeros(1, 1);
                    a.set(0, 0, units[chi[e] as usize]);
                    a
                })
                .collect();
            let desc: Vec<String> = (0..g.order()).map(|e| units[chi[e] as usize].to_string()).collect();
            out.push(GroupModule { group: g.clone(), pres: AbPres::cyclic(n), action, label: format!("Z/{n}[{}]", desc.join(",")) });
        }
    }
    out
}

/// Pullback of a group module along a homomorphism `k -> g`.
pub fn group_module_pullback(m: &GroupModule, k: &FinGroup, f: &GroupMap) -> GroupModule {
    GroupModule {
        group: k.clone(),
        pres: m.pres.clone(),
        action: (0..k.order()).map(|e| m.action[f[e] as usize].clone()).collect(),
        label: format!("pullback of {}", m.label),
    }
}

/// Group morphism as a groupoid morphism between one-object groupoids.
pub fn group_morphism(g: &FinGroup, h: &FinGroup, f: &[u32]) -> Result<GpdMorphism> {
    GpdMorphism::from_group_hom(g, h, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_module_validates_and_induces_to_z2() {
        let c2 = FinGroup::cyclic(2);
        let base = Arc::new(FinGroupoid::from_group(&c2));
        let sign = GpdModule::cyclic_with(base.clone(), 0, |p| if base.is_identity(p) { 1 } else { -1 });
        assert!(validate_module(&sign).is_valid());
        let bad = GpdModule::cyclic_with(base.clone(), 0, |p| if base.is_identity(p) { 1 } else { 2 });
        assert!(validate_module(&bad).cites("composition"));
        let triv = FinGroup::trivial();
        let v = group_morphism(&c2, &triv, &[0, 0]).unwrap();
        let ind = module_induce(&v, &sign).unwrap();
        let inv = ind.pres.simplify().unwrap();
        assert_eq!(inv["*"].torsion, vec![2]);
        let gm = GroupModule { group: c2.clone(), pres: AbPres::cyclic(0), action: sign.action.clone(), label: "sign".into() };
        assert_eq!(tensor_oracle(&gm, &triv, &[0, 0]).unwrap().torsion, vec![2]);
    }

    #[test]
    fn induce_from_trivial_group_gives_group_ring() {
        let triv = FinGroup::trivial();
        let c2 = FinGroup::cyclic(2);
        let v = group_morphism(&triv, &c2, &[0]).unwrap();
        let m = GpdModule::trivial_action(v.source.clone(), 0);
        let inv = module_induce(&v, &m).unwrap().pres.simplify().unwrap();
        assert_eq!(inv["*"], AbGroupInvariants::free(2));
    }

    #[test]
    fn free_module_ranks() {
        let c3 = Arc::new(FinGroupoid::from_group(&FinGroup::cyclic(3)));
        let f = free_module(&[("b".into(), 0)], &c3).unwrap();
        assert_eq!(f.pres.simplify().unwrap()["*"], AbGroupInvariants::free(3));
        let cd = Arc::new(FinGroupoid::codiscrete(&["0".to_string(), "1".to_string()]));
        let f = free_module(&[("b".into(), 0)], &cd).unwrap();
        let inv = f.pres.simplify().unwrap();
        assert_eq!(inv["0"], AbGroupInvariants::free(1));
        assert_eq!(inv["1"], AbGroupInvariants::free(1));
        let empty = free_module(&[], &cd).unwrap();
        assert!(empty.pres.simplify().unwrap().values().all(|i| i.is_trivial()));
    }

    #[test]
    fn wedge_collapse_then_induce() {
        let objs = vec!["0".to_string(), "1".to_string()];
        let interval = Arc::new(FinGroupoid::codiscrete(&objs));
        let free = free_module(&[("b".into(), 0)], &interval).unwrap();
        let u = ObjMap::collapse(&objs, "0");
        let over_z = pres_induce_universal(&u, &free.pres).unwrap().tietze();
        assert_eq!(over_z.report(), StructuralReport { generators: 1, relations: 0 });
        assert!(matches!(over_z.simplify(), Err(Error::InfiniteBase { generators: 1, relations: 0 })));
    }

    #[test]
    fn json_roundtrips() {
        let c2 = FinGroup::cyclic(2);
        let base = Arc::new(FinGroupoid::from_group(&c2));
        let sign = GpdModule::cyclic_with(base.clone(), 0, |p| if base.is_identity(p) { 1 } else { -1 });
        let j = serde_json::to_string(&sign.to_json()).unwrap();
        assert_eq!(GpdModule::from_json(&serde_json::from_str(&j).unwrap()).unwrap(), sign);
        let p = sign.to_presentation();
        let pj = serde_json::to_string(&p.to_json()).unwrap();
        let back = ModulePres::from_json(&serde_json::from_str(&pj).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
