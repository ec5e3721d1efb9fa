//! Connected colimits in the fibred categories of groupoids, modules and
//! crossed modules.
//!
//! The algorithm: (i) colimit of object sets by union-find; (ii) a
//! cocartesian lift of every node along its cocone map; (iii) the induced
//! vertical maps between the lifts; (iv) the colimit in the fibre, as the
//! namespaced coproduct presentation with one relator per edge and
//! generator.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpgroup::{invert, Letter, RewriteBound, Word};
use crate::group::GroupMap;
use crate::groupoid::{homs, FinGroupoid, Functor, GpdMorphism, ObjMap};
use crate::intmat::{AbGroupInvariants, IntMatrix};
use crate::module::{Act, GpdModule, ModBase, ModGen, ModulePres, Term};
use crate::par::{self, Exec};
use crate::presented::{presented_homs, Generator, PathWord, PresentedGroupoid};
use crate::word::universal_morphism;
use crate::xmod::{seed_data, FpXMod, Seed, XLetter, XModTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Gpd,
    Mod,
    Xmod,
}

/// Zig-zag components of a shape with `n` nodes.
pub fn shape_components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        by_root.entry(uf.find(x)).or_default().push(x);
    }
    let mut comps: Vec<Vec<usize>> = by_root.into_values().collect();
    comps.sort();
    comps
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Colimit of the object sets: class names are the least member name,
/// prefixed by the node id of that member when two classes would collide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectColimit {
    pub names: Vec<String>,
    /// `maps[c][x]` is the class of object `x` of node `c`.
    pub maps: Vec<Vec<usize>>,
}

pub fn object_colimit(node_ids: &[String], objects: &[&[String]], edges: &[(usize, usize, &[usize])]) -> ObjectColimit {
    let offsets: Vec<usize> = objects
        .iter()
        .scan(0, |acc, o| {
            let start = *acc;
            *acc += o.len();
            Some(start)
        })
        .collect();
    let total: usize = objects.iter().map(|o| o.len()).sum();
    let mut uf = UnionFind::new(total);
    for &(c, d, map) in edges {
        for (x, &y) in map.iter().enumerate() {
            uf.union(offsets[c] + x, offsets[d] + y);
        }
    }
    let mut least: BTreeMap<usize, (String, usize)> = BTreeMap::new();
    for (c, objs) in objects.iter().enumerate() {
        for (x, name) in objs.iter().enumerate() {
            let r = uf.find(offsets[c] + x);
            let cand = (name.clone(), c);
            least
                .entry(r)
                .and_modify(|cur| {
                    if cand < *cur {
                        *cur = cand.clone()
                    }
                })
                .or_insert(cand);
        }
    }
    let mut count: HashMap<&str, usize> = HashMap::new();
    for (name, _) in least.values() {
        *count.entry(name.as_str()).or_default() += 1;
    }
    let mut classes: Vec<(String, usize)> =
        least.iter().map(|(&r, (name, c))| (if count[name.as_str()] > 1 { format!("{}:{name}", node_ids[*c]) } else { name.clone() }, r)).collect();
    classes.sort();
    let index: HashMap<usize, usize> = classes.iter().enumerate().map(|(i, &(_, r))| (r, i)).collect();
    let maps = objects.iter().enumerate().map(|(c, objs)| (0..objs.len()).map(|x| index[&uf.find(offsets[c] + x)]).collect()).collect();
    ObjectColimit { names: classes.into_iter().map(|(n, _)| n).collect(), maps }
}

/// Diagram of finite groupoids.
#[derive(Debug, Clone)]
pub struct GpdDiagram {
    pub nodes: Vec<(String, Arc<FinGroupoid>)>,
    pub edges: Vec<(usize, usize, GpdMorphism)>,
}

impl GpdDiagram {
    pub fn components(&self) -> Vec<Vec<usize>> {
        shape_components(self.nodes.len(), &self.edges.iter().map(|e| (e.0, e.1)).collect::<Vec<_>>())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    fn check(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::Malformed("diagram has no nodes".into()));
        }
        for (k, (c, d, f)) in self.edges.iter().enumerate() {
            if *c >= self.nodes.len() || *d >= self.nodes.len() {
                return Err(Error::Malformed(format!("edge {k} refers to a missing node")));
            }
            if *f.source != *self.nodes[*c].1 || *f.target != *self.nodes[*d].1 {
                return Err(Error::Malformed(format!("edge {k} does not match its endpoint nodes")));
            }
        }
        let comps = self.components().len();
        if comps > 1 {
            return Err(Error::DisconnectedDiagram(comps));
        }
        Ok(())
    }
}

/// Colimit of a connected diagram of groupoids.
#[derive(Debug, Clone)]
pub struct GpdColimit {
    pub objects: ObjectColimit,
    pub presentation: Arc<PresentedGroupoid>,
    /// `cocone[c][a]` is the image of arrow `a` of node `c`.
    pub cocone: Vec<Vec<PathWord>>,
}

/// A finite realization of a presented groupoid: the table and, per
/// presentation object, its index in the table.
#[derive(Debug, Clone)]
pub struct Realized {
    pub groupoid: Arc<FinGroupoid>,
    pub gen_images: Vec<usize>,
    pub obj_index: Vec<usize>,
}

impl Realized {
    pub fn of(p: &PresentedGroupoid, bound: &RewriteBound) -> Option<Realized> {
        let (groupoid, gen_images) = p.realize(bound)?;
        let obj_index = p.objects().iter().map(|o| groupoid.object_index(o).unwrap()).collect();
        Some(Realized { groupoid, gen_images, obj_index })
    }

    pub fn arrow(&self, w: &PathWord) -> usize {
        let g = &*self.groupoid;
        w.letters.iter().fold(g.identity(self.obj_index[w.src]), |acc, l| {
            let a = self.gen_images[l.gen()];
            g.compose(acc, if l.is_inverse() { g.inverse(a) } else { a }).expect("realized path composes")
        })
    }

    fn act(&self, a: &Act) -> Act {
        match a {
            Act::Word(w) => Act::Arrow(self.arrow(w)),
            Act::Arrow(_) => unreachable!("presented base"),
        }
    }

    /// Moves a module presentation from the presented base to the table.
    pub fn module(&self, mp: &ModulePres) -> Result<ModulePres> {
        mp.induce_along(ModBase::Fin(self.groupoid.clone()), &self.obj_index, |a| self.act(a))
    }

    pub fn xmod(&self, x: &FpXMod) -> Result<FpXMod> {
        x.induce_along(ModBase::Fin(self.groupoid.clone()), &self.obj_index, |a| self.act(a))
    }
}

fn shift(w: &[Letter], by: usize) -> Word {
    w.iter().map(|l| Letter::new(l.gen() + by, l.is_inverse())).collect()
}

/// Steps (i) to (iv) for groupoids.
pub fn colimit_gpd(d: &GpdDiagram) -> Result<GpdColimit> {
    colimit_gpd_with(d, Exec::default())
}

pub fn colimit_gpd_with(d: &GpdDiagram, exec: Exec) -> Result<GpdColimit> {
    d.check()?;
    let ids: Vec<String> = d.nodes.iter().map(|(n, _)| n.clone()).collect();
    let objs: Vec<&[String]> = d.nodes.iter().map(|(_, g)| g.objects()).collect();
    let edges: Vec<(usize, usize, &[usize])> = d.edges.iter().map(|(c, e, f)| (*c, *e, f.map.obj.as_slice())).collect();
    let oc = object_colimit(&ids, &objs, &edges);

    let lifts = par::map_range(exec, d.nodes.len(), |c| -> Result<_> {
        let g = &d.nodes[c].1;
        let u = ObjMap::new(g.objects().to_vec(), oc.names.clone(), oc.maps[c].clone())?;
        let (w, unit) = universal_morphism(&u, g)?;
        let pres = w.to_presentation();
        let paths: Vec<PathWord> = unit.iter().map(|x| w.to_path(x)).collect();
        Ok((w, unit, pres, paths))
    });
    let lifts: Vec<_> = lifts.into_iter().collect::<Result<_>>()?;

    // induced vertical maps must send every relator to an identity
    for (k, (c, e, f)) in d.edges.iter().enumerate() {
        let (wc, _, pc, _) = &lifts[*c];
        let (we, ue, _, _) = &lifts[*e];
        let arrow_of: Vec<usize> = wc.generator_of().iter().enumerate().filter_map(|(a, g)| g.map(|_| a)).collect();
        for r in pc.relators() {
            let start = pc.endpoints(r)?.map(|(s, _)| s).unwrap_or(0);
            let mut acc = we.empty_word(start);
            for l in r {
                let img = &ue[f.arr(arrow_of[l.gen()])];
                let img = if l.is_inverse() { we.word_inverse(img) } else { img.clone() };
                acc = we.word_compose(&acc, &img)?;
            }
            if !acc.letters.is_empty() {
                return Err(Error::Invalid(format!("edge {k} does not induce a vertical morphism")));
            }
        }
    }

    let mut generators = Vec::new();
    let mut relators = Vec::new();
    let mut offsets = Vec::new();
    for (c, (_, _, p, _)) in lifts.iter().enumerate() {
        let off = generators.len();
        offsets.push(off);
        for g in p.generators() {
            generators.push(Generator { id: format!("{}:{}", ids[c], g.id), src: g.src, tgt: g.tgt });
        }
        relators.extend(p.relators().iter().map(|r| shift(r, off)));
    }
    for (c, e, f) in &d.edges {
        let (wc, _, _, _) = &lifts[*c];
        let (_, _, _, pe) = &lifts[*e];
        for (a, g) in wc.generator_of().iter().enumerate() {
            if let Some(k) = g {
                let mut r = vec![Letter::pos(offsets[*c] + k)];
                r.extend(invert(&shift(&pe[f.arr(a)].letters, offsets[*e])));
                relators.push(r);
            }
        }
    }
    let presentation = Arc::new(PresentedGroupoid::new(oc.names.clone(), generators, relators)?);
    let cocone = lifts
        .iter()
        .enumerate()
        .map(|(c, (_, _, _, paths))| paths.iter().map(|p| PathWord { src: p.src, tgt: p.tgt, letters: shift(&p.letters, offsets[c]) }).collect())
        .collect();
    Ok(GpdColimit { objects: oc, presentation, cocone })
}

/// A module morphism over a groupoid morphism: per source object, the
/// matrix sending generators of `M(x)` to coordinates in `N(v x)`.
#[derive(Debug, Clone)]
pub struct ModMorphism {
    pub base: GpdMorphism,
    pub fibre: Vec<IntMatrix>,
}

/// Checks shapes, that relations map to relations, and equivariance.
pub fn validate_mod_morphism(f: &ModMorphism, m: &GpdModule, n: &GpdModule) -> Result<()> {
    let v = &f.base;
    if *v.source != **m.base() || *v.target != **n.base() || f.fibre.len() != m.base().num_objects() {
        return Err(Error::NotOver("module morphism does not match its endpoints".into()));
    }
    let smiths = n.groups().iter().map(|p| p.smith()).collect::<Result<Vec<_>>>()?;
    for x in 0..m.base().num_objects() {
        let (gx, gy) = (m.group(x), n.group(v.obj(x)));
        if f.fibre[x].rows() != gx.gens || f.fibre[x].cols() != gy.gens {
            return Err(Error::Malformed(format!("fibre matrix at {} has the wrong shape", m.base().objects()[x])));
        }
        for rho in &gx.rels {
            if !smiths[v.obj(x)].contains(&f.fibre[x].apply_row(rho)?)? {
                return Err(Error::Invalid(format!("fibre map at {} does not respect relations", m.base().objects()[x])));
            }
        }
    }
    let g = m.base();
    for p in 0..g.num_arrows() {
        let (x, y) = (g.src(p), g.tgt(p));
        for i in 0..m.group(x).gens {
            let mut e = vec![0i64; m.group(x).gens];
            e[i] = 1;
            let lhs = f.fibre[y].apply_row(&m.action(p).apply_row(&e)?)?;
            let rhs = n.action(v.arr(p)).apply_row(&f.fibre[x].apply_row(&e)?)?;
            let diff: Vec<i64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            if !smiths[v.obj(y)].contains(&diff)? {
                return Err(Error::Invalid(format!("fibre maps are not equivariant along {}", g.arrow(p).id)));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ModDiagram {
    pub nodes: Vec<(String, GpdModule)>,
    pub edges: Vec<(usize, usize, ModMorphism)>,
}

impl ModDiagram {
    fn base_diagram(&self) -> GpdDiagram {
        GpdDiagram {
            nodes: self.nodes.iter().map(|(n, m)| (n.clone(), m.base().clone())).collect(),
            edges: self.edges.iter().map(|(c, d, f)| (*c, *d, f.base.clone())).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModColimit {
    pub base: GpdColimit,
    /// Over the presented base colimit.
    pub module: ModulePres,
}

pub fn colimit_mod(d: &ModDiagram) -> Result<ModColimit> {
    colimit_mod_with(d, Exec::default())
}

pub fn colimit_mod_with(d: &ModDiagram, exec: Exec) -> Result<ModColimit> {
    for (c, e, f) in &d.edges {
        validate_mod_morphism(f, &d.nodes[*c].1, &d.nodes[*e].1)?;
    }
    let base = colimit_gpd_with(&d.base_diagram(), exec)?;
    let b = ModBase::Presented(base.presentation.clone());
    let lifted = par::map_range(exec, d.nodes.len(), |c| {
        let cocone = &base.cocone[c];
        d.nodes[c].1.to_presentation().induce_along(b.clone(), &base.objects.maps[c], |a| match a {
            Act::Arrow(p) => Act::Word(cocone[*p].clone()),
            Act::Word(_) => unreachable!("finite base"),
        })
    });
    let lifted: Vec<ModulePres> = lifted.into_iter().collect::<Result<_>>()?;
    let mut gens = Vec::new();
    let mut relations = Vec::new();
    let mut offsets = Vec::new();
    for (c, mp) in lifted.iter().enumerate() {
        let off = gens.len();
        offsets.push(off);
        gens.extend(mp.generators().iter().map(|g| ModGen { id: format!("{}:{}", d.nodes[c].0, g.id), at: g.at }));
        relations.extend(mp.relations().iter().map(|r| r.iter().map(|t| Term { coef: t.coef, gen: t.gen + off, act: t.act.clone() }).collect::<Vec<_>>()));
    }
    let index: Vec<HashMap<(usize, usize), usize>> =
        d.nodes.iter().map(|(_, m)| m.generator_list().into_iter().enumerate().map(|(k, xi)| (xi, k)).collect()).collect();
    for (c, e, f) in &d.edges {
        let m = &d.nodes[*c].1;
        for (x, i) in m.generator_list() {
            let y = base.objects.maps[*c][x];
            let one = Act::Word(PathWord::empty(y));
            let mut rel = vec![Term { coef: 1, gen: offsets[*c] + index[*c][&(x, i)], act: one.clone() }];
            let vx = f.base.obj(x);
            for j in 0..f.fibre[x].cols() {
                let k = f.fibre[x].get(i, j);
                if k != 0 {
                    rel.push(Term { coef: -k, gen: offsets[*e] + index[*e][&(vx, j)], act: one.clone() });
                }
            }
            relations.push(rel);
        }
    }
    Ok(ModColimit { module: ModulePres::new(b, gens, relations)?, base })
}

/// A crossed-module morphism over a groupoid morphism: per source object,
/// the fibre map `M(x) -> N(v x)`.
#[derive(Debug, Clone)]
pub struct XModMorphism {
    pub base: GpdMorphism,
    pub fibre: Vec<GroupMap>,
}

pub fn validate_xmod_morphism(f: &XModMorphism, m: &XModTable, n: &XModTable) -> Result<()> {
    let v = &f.base;
    let g = &**m.base();
    if *v.source != *g || *v.target != **n.base() || f.fibre.len() != g.num_objects() {
        return Err(Error::NotOver("crossed-module morphism does not match its endpoints".into()));
    }
    for x in 0..g.num_objects() {
        let (a, b) = (m.fibre(x), n.fibre(v.obj(x)));
        if f.fibre[x].len() != a.order() || f.fibre[x].iter().any(|&y| y as usize >= b.order()) || !a.is_hom(b, &f.fibre[x]) {
            return Err(Error::Invalid(format!("fibre map at {} is not a homomorphism", g.objects()[x])));
        }
        if (0..a.order()).any(|e| n.mu(v.obj(x), f.fibre[x][e] as usize) != v.arr(m.mu(x, e))) {
            return Err(Error::Invalid(format!("fibre map at {} does not commute with the boundaries", g.objects()[x])));
        }
    }
    for p in 0..g.num_arrows() {
        let (x, y) = (g.src(p), g.tgt(p));
        if (0..m.fibre(x).order()).any(|e| f.fibre[y][m.act(p, e)] as usize != n.act(v.arr(p), f.fibre[x][e] as usize)) {
            return Err(Error::Invalid(format!("fibre maps are not equivariant along {}", g.arrow(p).id)));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct XModDiagram {
    pub nodes: Vec<(String, XModTable)>,
    pub edges: Vec<(usize, usize, XModMorphism)>,
}

impl XModDiagram {
    fn base_diagram(&self) -> GpdDiagram {
        GpdDiagram {
            nodes: self.nodes.iter().map(|(n, m)| (n.clone(), m.base().clone())).collect(),
            edges: self.edges.iter().map(|(c, d, f)| (*c, *d, f.base.clone())).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct XModColimit {
    pub base: GpdColimit,
    pub xmod: FpXMod,
}

pub fn colimit_xmod(d: &XModDiagram) -> Result<XModColimit> {
    colimit_xmod_with(d, Exec::default())
}

pub fn colimit_xmod_with(d: &XModDiagram, exec: Exec) -> Result<XModColimit> {
    for (c, e, f) in &d.edges {
        validate_xmod_morphism(f, &d.nodes[*c].1, &d.nodes[*e].1)?;
    }
    let base = colimit_gpd_with(&d.base_diagram(), exec)?;
    let b = ModBase::Presented(base.presentation.clone());
    let lifted = par::map_range(exec, d.nodes.len(), |c| -> Result<_> {
        let x = &d.nodes[c].1;
        let sd = seed_data(x)?;
        let cocone = &base.cocone[c];
        let fp = FpXMod::new(ModBase::Fin(x.base().clone()), sd.seeds, sd.relators)?.induce_along(b.clone(), &base.objects.maps[c], |a| match a {
            Act::Arrow(p) => Act::Word(cocone[*p].clone()),
            Act::Word(_) => unreachable!("finite base"),
        })?;
        Ok((fp, sd.words))
    });
    let lifted: Vec<(FpXMod, Vec<Vec<Vec<(usize, bool)>>>)> = lifted.into_iter().collect::<Result<_>>()?;
    let mut seeds = Vec::new();
    let mut relators = Vec::new();
    let mut offsets = Vec::new();
    for (c, (fp, _)) in lifted.iter().enumerate() {
        let off = seeds.len();
        offsets.push(off);
        seeds.extend(fp.seeds().iter().map(|s| Seed { id: format!("{}:{}", d.nodes[c].0, s.id), at: s.at, boundary: s.boundary.clone() }));
        relators.extend(fp.relators().iter().map(|r| r.iter().map(|l| XLetter { seed: l.seed + off, act: l.act.clone(), inv: l.inv }).collect::<Vec<_>>()));
    }
    for (c, e, f) in &d.edges {
        let x = &d.nodes[*c].1;
        let mut k = 0;
        for o in 0..x.base().num_objects() {
            let y = base.objects.maps[*c][o];
            let one = Act::Word(PathWord::empty(y));
            for g in x.fibre(o).generators() {
                let mut rel = vec![XLetter { seed: offsets[*c] + k, act: one.clone(), inv: false }];
                let word = &lifted[*e].1[f.base.obj(o)][f.fibre[o][g] as usize];
                rel.extend(word.iter().rev().map(|&(s, inv)| XLetter { seed: offsets[*e] + s, act: one.clone(), inv: !inv }));
                relators.push(rel);
                k += 1;
            }
        }
    }
    Ok(XModColimit { xmod: FpXMod::new(b, seeds, relators)?, base })
}

/// Any of the three diagram kinds.
#[derive(Debug, Clone)]
pub enum Diagram {
    Gpd(GpdDiagram),
    Mod(ModDiagram),
    Xmod(XModDiagram),
}

impl Diagram {
    pub fn category(&self) -> Category {
        match self {
            Diagram::Gpd(_) => Category::Gpd,
            Diagram::Mod(_) => Category::Mod,
            Diagram::Xmod(_) => Category::Xmod,
        }
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        match self {
            Diagram::Gpd(d) => d.components(),
            Diagram::Mod(d) => d.base_diagram().components(),
            Diagram::Xmod(d) => d.base_diagram().components(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

#[derive(Debug, Clone)]
pub enum Colimit {
    Gpd(GpdColimit),
    Mod(ModColimit),
    Xmod(XModColimit),
}

/// Colimit of a connected diagram; disconnected shapes are refused since
/// the fibre coproduct is not the total coproduct there.
pub fn colimit_connected(d: &Diagram) -> Result<Colimit> {
    Ok(match d {
        Diagram::Gpd(g) => Colimit::Gpd(colimit_gpd(g)?),
        Diagram::Mod(m) => Colimit::Mod(colimit_mod(m)?),
        Diagram::Xmod(x) => Colimit::Xmod(colimit_xmod(x)?),
    })
}

/// The square `D(K) -> D(J)` against `D(K) -> Z` and its pushout.
#[derive(Debug, Clone)]
pub struct PushoutGpd {
    pub colimit: GpdColimit,
    /// Colimit object of each `j ∈ J`.
    pub j_objects: Vec<usize>,
    /// Node index of `Z` in the square.
    pub z_node: usize,
}

/// The map out of a discrete groupoid sending object `x` to `obj[x]`.
pub fn discrete_map(k: &Arc<FinGroupoid>, j: &Arc<FinGroupoid>, obj: &[usize]) -> Result<GpdMorphism> {
    let arr = (0..k.num_arrows()).map(|a| j.identity(obj[k.src(a)])).collect();
    GpdMorphism::new(k.clone(), j.clone(), Functor { obj: obj.to_vec(), arr })
}

/// Cocartesian lift of an object map, computed as a pushout.
pub fn pushout_along_discrete_gpd(u: &ObjMap, z: &Arc<FinGroupoid>) -> Result<PushoutGpd> {
    if u.domain != z.objects() {
        return Err(Error::NotOver("object map domain differs from the groupoid's objects".into()));
    }
    let dk = Arc::new(FinGroupoid::discrete(&u.domain));
    let dj = Arc::new(FinGroupoid::discrete(&u.codomain));
    let ident: Vec<usize> = (0..u.domain.len()).map(|x| z.object_index(&dk.objects()[x]).unwrap()).collect();
    let kmap: Vec<usize> = (0..dk.num_objects()).map(|x| u.map[u.domain.iter().position(|o| *o == dk.objects()[x]).unwrap()]).collect();
    let jmap: Vec<usize> = kmap.iter().map(|&t| dj.object_index(&u.codomain[t]).unwrap()).collect();
    let d = GpdDiagram {
        nodes: vec![("K".into(), dk.clone()), ("J".into(), dj.clone()), ("Z".into(), z.clone())],
        edges: vec![(0, 1, discrete_map(&dk, &dj, &jmap)?), (0, 2, discrete_map(&dk, z, &ident)?)],
    };
    let colimit = colimit_gpd(&d)?;
    let j_objects = u.codomain.iter().map(|o| colimit.objects.maps[1][dj.object_index(o).unwrap()]).collect();
    Ok(PushoutGpd { colimit, j_objects, z_node: 2 })
}

/// `v_*M` as the pushout of `0_K -> 0_J` against `0_K -> M`.
pub fn pushout_along_discrete_mod(v: &GpdMorphism, m: &GpdModule) -> Result<ModColimit> {
    let k = m.base().clone();
    let zero = |g: &Arc<FinGroupoid>| GpdModule::zero(g.clone());
    let to_m = (0..k.num_objects()).map(|x| IntMatrix::zeros(0, m.group(x).gens)).collect();
    let d = ModDiagram {
        nodes: vec![("K".into(), zero(&k)), ("J".into(), zero(&v.target)), ("Z".into(), m.clone())],
        edges: vec![
            (0, 1, ModMorphism { base: v.clone(), fibre: vec![IntMatrix::zeros(0, 0); k.num_objects()] }),
            (0, 2, ModMorphism { base: GpdMorphism::identity(k.clone()), fibre: to_m }),
        ],
    };
    colimit_mod(&d)
}

/// `v_*X` as the pushout of `0_K -> 0_J` against `0_K -> X`.
pub fn pushout_along_discrete_xmod(v: &GpdMorphism, x: &XModTable) -> Result<XModColimit> {
    let k = x.base().clone();
    let d = XModDiagram {
        nodes: vec![("K".into(), XModTable::zero(k.clone())), ("J".into(), XModTable::zero(v.target.clone())), ("Z".into(), x.clone())],
        edges: vec![
            (0, 1, XModMorphism { base: v.clone(), fibre: vec![vec![0]; k.num_objects()] }),
            (0, 2, XModMorphism { base: GpdMorphism::identity(k.clone()), fibre: vec![vec![0]; k.num_objects()] }),
        ],
    };
    colimit_xmod(&d)
}

/// Per battery element and per `θ′`, the number of factorizations through
/// `ψ`; cocartesian means every count is one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocartesianCert {
    pub passed: bool,
    pub entries: Vec<CertEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertEntry {
    pub target: String,
    /// `θ′` as arrow id ↦ arrow id.
    pub theta: BTreeMap<String, String>,
    pub factorizations: usize,
}

impl CocartesianCert {
    pub fn witness(&self) -> Option<&CertEntry> {
        self.entries.iter().find(|e| e.factorizations != 1)
    }
}

/// Exhaustive factor search for `ψ: Z -> Y` over `u`, with `Y` presented
/// and `ψ` given by paths. Battery groupoids must have `u`'s codomain as
/// object list.
pub fn check_cocartesian(
    z: &Arc<FinGroupoid>,
    u: &ObjMap,
    y: &PresentedGroupoid,
    psi: &[PathWord],
    battery: &[(String, Arc<FinGroupoid>)],
    limit: usize,
) -> Result<CocartesianCert> {
    check_cocartesian_with(z, u, y, psi, battery, limit, Exec::default())
}

pub fn check_cocartesian_with(
    z: &Arc<FinGroupoid>,
    u: &ObjMap,
    y: &PresentedGroupoid,
    psi: &[PathWord],
    battery: &[(String, Arc<FinGroupoid>)],
    limit: usize,
    exec: Exec,
) -> Result<CocartesianCert> {
    if u.domain != z.objects() || y.objects() != u.codomain.as_slice() || psi.len() != z.num_arrows() {
        return Err(Error::NotOver("ψ does not lie over the object map".into()));
    }
    if let Some((n, _)) = battery.iter().find(|(_, x)| x.objects() != u.codomain.as_slice()) {
        return Err(Error::NotOver(format!("battery element {n} is not over the object map's codomain")));
    }
    let ident: Vec<usize> = (0..y.num_objects()).collect();
    let per = par::map_with(exec, battery, |(name, x)| -> Result<Vec<CertEntry>> {
        let thetas = homs(z, x, Some(&u.map), limit)?;
        let factors = presented_homs(y, x, Some(&ident), limit)?;
        let composites: Vec<Vec<Option<usize>>> = factors.iter().map(|h| psi.iter().map(|w| h.eval(x, w)).collect()).collect();
        Ok(thetas
            .iter()
            .map(|t| CertEntry {
                target: name.clone(),
                theta: (0..z.num_arrows()).map(|a| (z.arrow(a).id.clone(), x.arrow(t.arr[a]).id.clone())).collect(),
                factorizations: composites.iter().filter(|c| c.iter().zip(&t.arr).all(|(p, &q)| *p == Some(q))).count(),
            })
            .collect())
    });
    let mut entries = Vec::new();
    for p in per {
        entries.extend(p?);
    }
    Ok(CocartesianCert { passed: entries.iter().all(|e| e.factorizations == 1), entries })
}

/// Summary of a colimit: objects, arrows when finite, and the abelian
/// invariants of the vertex group at each object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColimitSummary {
    pub objects: usize,
    pub arrows: Option<usize>,
    pub vertex_invariants: Vec<AbGroupInvariants>,
}

impl ColimitSummary {
    pub fn of_presented(p: &PresentedGroupoid, bound: &RewriteBound) -> Result<(Self, Option<Realized>)> {
        let real = Realized::of(p, bound);
        let vertex_invariants = (0..p.num_objects()).map(|x| p.abelian_invariants(x)).collect::<Result<_>>()?;
        Ok((ColimitSummary { objects: p.num_objects(), arrows: real.as_ref().map(|r| r.groupoid.num_arrows()), vertex_invariants }, real))
    }

    pub fn of_fin(g: &FinGroupoid) -> Self {
        ColimitSummary {
            objects: g.num_objects(),
            arrows: Some(g.num_arrows()),
            vertex_invariants: (0..g.num_objects()).map(|x| g.vertex_group(x).0.abelian_invariants()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreTotalReport {
    pub connected: bool,
    pub fibre: ColimitSummary,
    pub total: ColimitSummary,
    /// Connected: whether the two colimits were shown isomorphic (by table
    /// isomorphism when both are finite, by invariants otherwise).
    /// Disconnected: whether they differ.
    pub agree: bool,
}

/// Colimit in the fibre, from the arrow presentations of the nodes with
/// one relator `a = f(a)` per edge and arrow; independent of the
/// universal-morphism route.
pub fn fibre_colimit(d: &GpdDiagram) -> Result<PresentedGroupoid> {
    let objects = d.nodes[0].1.objects().to_vec();
    let mut generators = Vec::new();
    let mut relators = Vec::new();
    let mut offsets = Vec::new();
    let mut gen_ofs = Vec::new();
    for (id, g) in &d.nodes {
        let (p, gen_of) = PresentedGroupoid::from_fin(g);
        let off = generators.len();
        offsets.push(off);
        generators.extend(p.generators().iter().map(|x| Generator { id: format!("{id}:{}", x.id), src: x.src, tgt: x.tgt }));
        relators.extend(p.relators().iter().map(|r| shift(r, off)));
        gen_ofs.push(gen_of);
    }
    for (c, e, f) in &d.edges {
        for a in d.nodes[*c].1.non_identity_arrows() {
            let mut r = vec![Letter::pos(offsets[*c] + gen_ofs[*c][a].unwrap())];
            if let Some(k) = gen_ofs[*e][f.arr(a)] {
                r.push(Letter::new(offsets[*e] + k, true));
            }
            relators.push(r);
        }
    }
    PresentedGroupoid::new(objects, generators, relators)
}

/// Compares the fibre colimit with the total colimit for a diagram of
/// vertical morphisms over one object set.
pub fn fibre_vs_total_colimit_check(d: &GpdDiagram, bound: &RewriteBound) -> Result<FibreTotalReport> {
    let objs = d.nodes.first().ok_or_else(|| Error::Malformed("diagram has no nodes".into()))?.1.objects();
    if d.nodes.iter().any(|(_, g)| g.objects() != objs) || d.edges.iter().any(|(_, _, f)| !f.is_vertical()) {
        return Err(Error::Invalid("diagram is not inside one fibre".into()));
    }
    let (fibre, fibre_real) = ColimitSummary::of_presented(&fibre_colimit(d)?, bound)?;
    if !d.is_connected() {
        let parts: Vec<&FinGroupoid> = d.nodes.iter().map(|(_, g)| &**g).collect();
        let total = ColimitSummary::of_fin(&FinGroupoid::coproduct(&parts));
        let agree = fibre != total;
        return Ok(FibreTotalReport { connected: false, fibre, total, agree });
    }
    let total_colimit = colimit_gpd(d)?;
    let (total, total_real) = ColimitSummary::of_presented(&total_colimit.presentation, bound)?;
    let agree = match (fibre_real, total_real) {
        (Some(a), Some(b)) => crate::groupoid::is_isomorphic(&a.groupoid, &b.groupoid)?,
        _ => fibre == total,
    };
    Ok(FibreTotalReport { connected: true, fibre, total, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::Decision;
    use crate::group::FinGroup;

    fn s(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    pub(crate) fn circle() -> GpdDiagram {
        let d01 = Arc::new(FinGroupoid::discrete(&s(&["0", "1"])));
        let i01 = Arc::new(FinGroupoid::codiscrete(&s(&["0", "1"])));
        let pt = Arc::new(FinGroupoid::discrete(&s(&["0"])));
        GpdDiagram {
            nodes: vec![("D".into(), d01.clone()), ("I".into(), i01.clone()), ("P".into(), pt.clone())],
            edges: vec![(0, 1, discrete_map(&d01, &i01, &[0, 1]).unwrap()), (0, 2, discrete_map(&d01, &pt, &[0, 0]).unwrap())],
        }
    }

    #[test]
    fn circle_is_infinite_cyclic() {
        let c = colimit_gpd(&circle()).unwrap();
        let p = &c.presentation;
        assert_eq!(p.num_objects(), 1);
        assert_eq!(p.abelian_invariants(0).unwrap(), AbGroupInvariants::free(1));
        let iota = c.cocone[1][FinGroupoid::codiscrete(&s(&["0", "1"])).arrow_id("(0,1)").unwrap()].clone();
        let pow = |n: usize| (0..n).fold(PathWord::empty(0), |acc, _| acc.then(&iota).unwrap());
        let b = RewriteBound::default();
        for i in 1..=6 {
            for j in 0..i {
                assert_eq!(p.word_problem_bounded(&pow(i), &pow(j), &b).unwrap(), Decision::Distinct);
            }
        }
    }

    #[test]
    fn identical_span_gives_same_groupoid() {
        let g = Arc::new(FinGroupoid::from_group(&FinGroup::symmetric3()));
        let id = GpdMorphism::identity(g.clone());
        let d =
            GpdDiagram { nodes: vec![("a".into(), g.clone()), ("b".into(), g.clone()), ("c".into(), g.clone())], edges: vec![(0, 1, id.clone()), (0, 2, id)] };
        let c = colimit_gpd(&d).unwrap();
        let r = Realized::of(&c.presentation, &RewriteBound::default()).unwrap();
        assert!(crate::groupoid::is_isomorphic(&r.groupoid, &g).unwrap());
    }

    #[test]
    fn two_involutions_at_one_point() {
        let c2 = FinGroup::cyclic(2);
        let a = FinGroupoid::from_group_at(&c2, "a");
        let b = FinGroupoid::from_group_at(&c2, "b");
        let both = Arc::new(FinGroupoid::coproduct(&[&a, &b]).renamed(|o| o.split_once(':').unwrap().1.to_string(), |x| x.to_string()));
        let dab = Arc::new(FinGroupoid::discrete(&s(&["a", "b"])));
        let star = Arc::new(FinGroupoid::discrete(&s(&["*"])));
        let d = GpdDiagram {
            nodes: vec![("D".into(), dab.clone()), ("G".into(), both.clone()), ("S".into(), star.clone())],
            edges: vec![(0, 1, discrete_map(&dab, &both, &[0, 1]).unwrap()), (0, 2, discrete_map(&dab, &star, &[0, 0]).unwrap())],
        };
        let c = colimit_gpd(&d).unwrap();
        assert_eq!(c.presentation.num_objects(), 1);
        assert_eq!(c.presentation.abelian_invariants(0).unwrap(), AbGroupInvariants::from_cyclic_orders(&[2, 2]));
    }

    #[test]
    fn disconnected_is_refused() {
        let g = Arc::new(FinGroupoid::from_group(&FinGroup::cyclic(2)));
        let d = GpdDiagram { nodes: vec![("a".into(), g.clone()), ("b".into(), g)], edges: vec![] };
        assert!(matches!(colimit_gpd(&d), Err(Error::DisconnectedDiagram(2))));
    }

    #[test]
    fn collisions_are_prefixed() {
        let a = s(&["x"]);
        let oc = object_colimit(&s(&["m", "n"]), &[&a, &a], &[]);
        assert_eq!(oc.names, s(&["m:x", "n:x"]));
    }

    #[test]
    fn circle_unit_is_cocartesian_and_fake_is_not() {
        let z = Arc::new(FinGroupoid::codiscrete(&s(&["0", "1"])));
        let u = ObjMap::collapse(z.objects(), "*");
        let (w, unit) = universal_morphism(&u, &z).unwrap();
        let y = w.to_presentation();
        let psi: Vec<PathWord> = unit.iter().map(|x| w.to_path(x)).collect();
        let battery: Vec<(String, Arc<FinGroupoid>)> = crate::catalog::small_groups()
            .into_iter()
            .filter(|(_, g)| g.order() <= 6)
            .map(|(n, g)| (n, Arc::new(FinGroupoid::from_group_at(&g, "*"))))
            .collect();
        let cert = check_cocartesian(&z, &u, &y, &psi, &battery, 10_000).unwrap();
        assert!(cert.passed);
        let iota = psi[z.arrow_id("(0,1)").unwrap()].letters.clone();
        let fake = y.with_relators([[iota.clone(), iota].concat()]).unwrap();
        let cert = check_cocartesian(&z, &u, &fake, &psi, &battery, 10_000).unwrap();
        assert!(!cert.passed);
        assert_eq!(cert.witness().unwrap().factorizations, 0);
    }

    #[test]
    fn c2_c3_fibre_and_total_coproducts_differ() {
        let a = Arc::new(FinGroupoid::from_group_at(&FinGroup::cyclic(2), "*"));
        let b = Arc::new(FinGroupoid::from_group_at(&FinGroup::cyclic(3), "*"));
        let d = GpdDiagram { nodes: vec![("C2".into(), a), ("C3".into(), b)], edges: vec![] };
        let r = fibre_vs_total_colimit_check(&d, &RewriteBound::uniform(2000)).unwrap();
        assert!(!r.connected && r.agree);
        assert_eq!(r.fibre.objects, 1);
        assert_eq!(r.fibre.arrows, None);
        assert_eq!(r.total.objects, 2);
        assert_eq!(r.total.arrows, Some(5));
    }
}
