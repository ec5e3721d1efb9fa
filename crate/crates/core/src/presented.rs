//! Finitely presented groupoids: a generating graph plus closed relator words.
//!
//! Letters index generators as in [`crate::fpgroup::Letter`]; a positive
//! letter runs `src -> tgt`, an inverse letter `tgt -> src`.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpgroup::{free_reduce, invert, Decision, FpGroup, Letter, RewriteBound, Word};
use crate::groupoid::{ArrowJson, FinGroupoid, Functor, ValidationReport};
use crate::intmat::AbGroupInvariants;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A word in the free groupoid together with its endpoints, which matter
/// for the empty word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub src: usize,
    pub tgt: usize,
    pub letters: Word,
}

impl PathWord {
    pub fn empty(x: usize) -> Self {
        PathWord { src: x, tgt: x, letters: vec![] }
    }

    pub fn inverse(&self) -> Self {
        PathWord { src: self.tgt, tgt: self.src, letters: invert(&self.letters) }
    }

    /// Concatenation; `None` if the endpoints do not meet.
    pub fn then(&self, other: &PathWord) -> Option<PathWord> {
        (self.tgt == other.src).then(|| {
            let mut letters = self.letters.clone();
            letters.extend_from_slice(&other.letters);
            PathWord { src: self.src, tgt: other.tgt, letters: free_reduce(&letters) }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedGroupoid {
    objects: Vec<String>,
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

/// Spanning forest of the generating graph.
#[derive(Debug, Clone)]
pub struct SpanningForest {
    /// Root of the component containing each object.
    pub root: Vec<usize>,
    /// `path[x]` runs from `root[x]` to `x` along tree generators.
    pub path: Vec<Word>,
    pub is_tree: Vec<bool>,
}

/// Vertex group of one component: non-tree generators become group
/// generators, tree letters are deleted.
#[derive(Debug, Clone)]
pub struct VertexPresentation {
    pub root: usize,
    pub objects: Vec<usize>,
    pub group: FpGroup,
    /// Group generator index for each groupoid generator in the component
    /// that is not a tree generator.
    pub gen_map: Vec<Option<usize>>,
}

impl VertexPresentation {
    /// Vertex word at the root representing `path(src) · w · path(tgt)⁻¹`.
    pub fn convert(&self, w: &[Letter]) -> Word {
        w.iter().filter_map(|l| self.gen_map[l.gen()].map(|g| Letter::new(g, l.is_inverse()))).collect()
    }
}

impl PresentedGroupoid {
    /// Checks endpoints and that every relator is a closed path.
    pub fn new(objects: Vec<String>, generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self> {
        let mut sorted = objects.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != objects.len() {
            return Err(Error::Malformed("duplicate object id".into()));
        }
        let mut ids: Vec<&str> = generators.iter().map(|g| g.id.as_str()).collect();
        ids.sort();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed("duplicate generator id".into()));
        }
        if generators.iter().any(|g| g.src >= objects.len() || g.tgt >= objects.len()) {
            return Err(Error::Malformed("generator endpoint out of range".into()));
        }
        let p = PresentedGroupoid { objects, generators, relators: Vec::new() };
        for r in &relators {
            match p.endpoints(r)? {
                Some((a, b)) if a != b => return Err(Error::Malformed(format!("relator {} is not closed", p.format_word(r)))),
                _ => {}
            }
        }
        Ok(PresentedGroupoid { relators: relators.into_iter().map(|r| free_reduce(&r)).filter(|r| !r.is_empty()).collect(), ..p })
    }

    pub fn free(objects: Vec<String>, generators: Vec<Generator>) -> Result<Self> {
        Self::new(objects, generators, vec![])
    }

    /// One-object groupoid on `object` from a group presentation, generators
    /// named by `names`.
    pub fn from_fp_group(g: &FpGroup, names: &[String], object: &str) -> Result<Self> {
        let generators = names.iter().map(|n| Generator { id: n.clone(), src: 0, tgt: 0 }).collect();
        Self::new(vec![object.to_string()], generators, g.relators.clone())
    }

    /// Presentation of a finite groupoid: generators are the non-identity
    /// arrows, relators `a·b·(ab)⁻¹` (or `a·b` when `ab` is an identity).
    /// Returns the generator index of each arrow.
    pub fn from_fin(g: &FinGroupoid) -> (Self, Vec<Option<usize>>) {
        let mut gen_of = vec![None; g.num_arrows()];
        let mut generators = Vec::new();
        for a in g.non_identity_arrows() {
            gen_of[a] = Some(generators.len());
            generators.push(Generator { id: g.arrow(a).id.clone(), src: g.src(a), tgt: g.tgt(a) });
        }
        let mut relators = Vec::new();
        for a in g.non_identity_arrows() {
            for y in 0..g.num_objects() {
                for &b in g.hom(g.tgt(a), y) {
                    let b = b as usize;
                    if g.is_identity(b) {
                        continue;
                    }
                    let ab = g.compose(a, b).unwrap();
                    let mut r = vec![Letter::pos(gen_of[a].unwrap()), Letter::pos(gen_of[b].unwrap())];
                    if let Some(c) = gen_of[ab] {
                        r.push(Letter::new(c, true));
                    }
                    relators.push(r);
                }
            }
        }
        let p = PresentedGroupoid { objects: g.objects().to_vec(), generators, relators };
        (p, gen_of)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn object_id(&self, name: &str) -> Result<usize> {
        self.object_index(name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn generator_index(&self, id: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.id == id)
    }

    /// Source and target of a letter.
    pub fn letter_ends(&self, l: Letter) -> (usize, usize) {
        let g = &self.generators[l.gen()];
        if l.is_inverse() {
            (g.tgt, g.src)
        } else {
            (g.src, g.tgt)
        }
    }

    /// Endpoints of a nonempty path, `None` for the empty word.
    pub fn endpoints(&self, w: &[Letter]) -> Result<Option<(usize, usize)>> {
        let mut ends: Option<(usize, usize)> = None;
        for &l in w {
            if l.gen() >= self.generators.len() {
                return Err(Error::UnknownGenerator(format!("#{}", l.gen())));
            }
            let (s, t) = self.letter_ends(l);
            ends = match ends {
                None => Some((s, t)),
                Some((a, b)) if b == s => Some((a, t)),
                Some(_) => return Err(Error::NotComposable(format!("word {}", self.format_word(w)))),
            };
        }
        Ok(ends)
    }

    pub fn path(&self, src: usize, letters: Word) -> Result<PathWord> {
        match self.endpoints(&letters)? {
            None => Ok(PathWord::empty(src)),
            Some((a, b)) if a == src => Ok(PathWord { src: a, tgt: b, letters: free_reduce(&letters) }),
            Some(_) => Err(Error::NotComposable("word does not start at the given object".into())),
        }
    }

    pub fn generator_path(&self, g: usize) -> PathWord {
        PathWord { src: self.generators[g].src, tgt: self.generators[g].tgt, letters: vec![Letter::pos(g)] }
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut rels = self.relators.clone();
        rels.extend(extra);
        Self::new(self.objects.clone(), self.generators.clone(), rels)
    }

    /// Pushforward along an object map: generators and relators carried to
    /// the new objects. This is the universal morphism for presented
    /// groupoids.
    pub fn pushforward(&self, map: &[usize], objects: Vec<String>) -> Result<Self> {
        if map.len() != self.objects.len() || map.iter().any(|&y| y >= objects.len()) {
            return Err(Error::Malformed("object map does not fit the presentation".into()));
        }
        let generators = self.generators.iter().map(|g| Generator { id: g.id.clone(), src: map[g.src], tgt: map[g.tgt] }).collect();
        Self::new(objects, generators, self.relators.clone())
    }

    /// Breadth-first spanning forest; each component is rooted at its
    /// lexicographically least object.
    pub fn spanning_forest(&self) -> SpanningForest {
        let k = self.objects.len();
        let mut adj: Vec<Vec<Letter>> = vec![Vec::new(); k];
        for (i, g) in self.generators.iter().enumerate() {
            adj[g.src].push(Letter::pos(i));
            adj[g.tgt].push(Letter::new(i, true));
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        let mut root = vec![usize::MAX; k];
        let mut path = vec![Vec::new(); k];
        let mut is_tree = vec![false; self.generators.len()];
        for &r in &order {
            if root[r] != usize::MAX {
                continue;
            }
            root[r] = r;
            let mut queue = VecDeque::from([r]);
            while let Some(x) = queue.pop_front() {
                for &l in &adj[x] {
                    let (_, y) = self.letter_ends(l);
                    if root[y] == usize::MAX {
                        root[y] = r;
                        let mut p = path[x].clone();
                        p.push(l);
                        path[y] = p;
                        is_tree[l.gen()] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        SpanningForest { root, path, is_tree }
    }

    /// Objects grouped by component, ordered by root name.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let f = self.spanning_forest();
        let mut roots: Vec<usize> = f.root.clone();
        roots.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        roots.dedup();
        roots.iter().map(|&r| (0..self.objects.len()).filter(|&x| f.root[x] == r).collect()).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn vertex_presentation(&self, x: usize) -> VertexPresentation {
        let f = self.spanning_forest();
        let root = f.root[x];
        let objects: Vec<usize> = (0..self.objects.len()).filter(|&y| f.root[y] == root).collect();
        let mut gen_map = vec![None; self.generators.len()];
        let mut n = 0;
        for (i, g) in self.generators.iter().enumerate() {
            if f.root[g.src] == root && !f.is_tree[i] {
                gen_map[i] = Some(n);
                n += 1;
            }
        }
        let mut vp = VertexPresentation { root, objects, group: FpGroup::free(n), gen_map };
        let relators = self
            .relators
            .iter()
            .filter(|r| r.first().is_some_and(|l| f.root[self.letter_ends(*l).0] == root))
            .map(|r| free_reduce(&vp.convert(r)))
            .filter(|r| !r.is_empty())
            .collect();
        vp.group = FpGroup::new(n, relators);
        vp
    }

    /// Abelian invariants of the vertex group of the component of `x`.
    pub fn abelian_invariants(&self, x: usize) -> Result<AbGroupInvariants> {
        if x >= self.objects.len() {
            return Err(Error::UnknownObject(format!("#{x}")));
        }
        self.vertex_presentation(x).group.abelian_invariants()
    }

    /// Bounded word problem for two parallel paths. Distinct endpoints are
    /// certified distinct.
    pub fn word_problem_bounded(&self, w1: &PathWord, w2: &PathWord, bound: &RewriteBound) -> Result<Decision> {
        for w in [w1, w2] {
            let p = self.path(w.src, w.letters.clone())?;
            if p.tgt != w.tgt {
                return Err(Error::Malformed("path endpoints are inconsistent".into()));
            }
        }
        if w1.src != w2.src || w1.tgt != w2.tgt {
            return Ok(Decision::Distinct);
        }
        let loop_word = w1.then(&w2.inverse()).unwrap();
        if loop_word.letters.is_empty() {
            return Ok(Decision::Equal);
        }
        let vp = self.vertex_presentation(w1.src);
        Ok(vp.group.is_trivial_bounded(&vp.convert(&loop_word.letters), bound))
    }

    /// Finite table realization when every vertex group closes under coset
    /// enumeration: each component becomes vertex group × codiscrete.
    /// Returns the groupoid and the arrow each generator maps to.
    pub fn realize(&self, bound: &RewriteBound) -> Option<(Arc<FinGroupoid>, Vec<usize>)> {
        let comps = self.components();
        let mut parts = Vec::new();
        let mut vps = Vec::new();
        let mut reals = Vec::new();
        for comp in &comps {
            let vp = self.vertex_presentation(comp[0]);
            let names: Vec<String> = (0..vp.group.ngens).map(|g| self.generators[vp.gen_map.iter().position(|&m| m == Some(g)).unwrap()].id.clone()).collect();
            let real = vp.group.realize(bound, Some(&names))?;
            let objs: Vec<String> = comp.iter().map(|&x| self.objects[x].clone()).collect();
            let part =
                if objs.len() == 1 { FinGroupoid::from_group_at(&real.group, &objs[0]) } else { FinGroupoid::group_times_codiscrete(&real.group, &objs) };
            if part.num_arrows() > crate::groupoid::MAX_ARROWS {
                return None;
            }
            parts.push(part);
            vps.push(vp);
            reals.push(real);
        }
        let single = parts.len() == 1;
        let whole = if single { parts[0].clone() } else { FinGroupoid::coproduct(&parts.iter().collect::<Vec<_>>()) };
        let whole = if single {
            whole
        } else {
            // keep original object names: strip the coproduct prefix
            whole.renamed(|o| o.split_once(':').map(|(_, r)| r.to_string()).unwrap(), |a| a.to_string())
        };
        let comp_of = |x: usize| comps.iter().position(|c| c.contains(&x)).unwrap();
        let mut images = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            let c = comp_of(g.src);
            let elem = reals[c].eval(&vps[c].convert(&[Letter::pos(i)]));
            let part = &parts[c];
            let (sx, tx) = (part.object_index(&self.objects[g.src]).unwrap(), part.object_index(&self.objects[g.tgt]).unwrap());
            let label = reals[c].group.label(elem);
            let local = if part.num_objects() == 1 {
                part.arrow_index(label).unwrap()
            } else if reals[c].group.order() == 1 {
                part.arrow_index(&format!("({},{})", part.objects()[sx], part.objects()[tx])).unwrap()
            } else {
                part.arrow_index(&format!("({},{},{})", part.objects()[sx], label, part.objects()[tx])).unwrap()
            };
            let id = if single { part.arrow(local).id.clone() } else { format!("{c}:{}", part.arrow(local).id) };
            images.push(whole.arrow_index(&id).unwrap());
        }
        Some((Arc::new(whole), images))
    }

    pub fn format_letter(&self, l: Letter) -> String {
        let id = self.generators.get(l.gen()).map(|g| g.id.as_str()).unwrap_or("?");
        if l.is_inverse() {
            format!("{id}^-1")
        } else {
            id.to_string()
        }
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|&l| self.format_letter(l)).collect::<Vec<_>>().join("·")
    }

    pub fn parse_letter(&self, s: &str) -> Result<Letter> {
        let (id, inv) = match s.strip_suffix("^-1") {
            Some(id) => (id, true),
            None => (s, false),
        };
        let g = self.generator_index(id).ok_or_else(|| Error::UnknownGenerator(id.to_string()))?;
        Ok(Letter::new(g, inv))
    }

    pub fn parse_word(&self, letters: &[String]) -> Result<Word> {
        letters.iter().map(|s| self.parse_letter(s)).collect()
    }

    pub fn word_json(&self, w: &[Letter]) -> Vec<String> {
        w.iter().map(|&l| self.format_letter(l)).collect()
    }

    pub fn to_json(&self) -> PresentedJson {
        PresentedJson {
            objects: self.objects.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| ArrowJson { id: g.id.clone(), src: self.objects[g.src].clone(), tgt: self.objects[g.tgt].clone() })
                .collect(),
            relators: self.relators.iter().map(|r| self.word_json(r)).collect(),
        }
    }

    pub fn from_json(j: &PresentedJson) -> Result<Self> {
        let oi = |s: &str| j.objects.iter().position(|o| o == s).ok_or_else(|| Error::UnknownObject(s.to_string()));
        let generators = j.generators.iter().map(|g| Ok(Generator { id: g.id.clone(), src: oi(&g.src)?, tgt: oi(&g.tgt)? })).collect::<Result<_>>()?;
        let p = Self::free(j.objects.clone(), generators)?;
        let relators = j.relators.iter().map(|r| p.parse_word(r)).collect::<Result<_>>()?;
        Self::new(p.objects, p.generators, relators)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedJson {
    pub objects: Vec<String>,
    pub generators: Vec<ArrowJson>,
    pub relators: Vec<Vec<String>>,
}

/// A morphism from a presented groupoid to a finite one, given on
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresentedHom {
    pub obj: Vec<usize>,
    pub gens: Vec<usize>,
}

impl PresentedHom {
    /// Image of a path; `None` if the images do not compose.
    pub fn eval(&self, target: &FinGroupoid, w: &PathWord) -> Option<usize> {
        let mut acc = target.identity(self.obj[w.src]);
        for &l in &w.letters {
            let a = self.gens[l.gen()];
            let a = if l.is_inverse() { target.inverse(a) } else { a };
            acc = target.compose(acc, a)?;
        }
        Some(acc)
    }
}

/// Validates an assignment of generator images against the relators.
pub fn check_presented_hom(p: &PresentedGroupoid, target: &FinGroupoid, h: &PresentedHom) -> ValidationReport {
    let mut r = ValidationReport::default();
    if h.obj.len() != p.num_objects() || h.gens.len() != p.num_generators() {
        r.push("totality", "assignment does not cover the presentation");
        return r;
    }
    for (i, g) in p.generators.iter().enumerate() {
        let a = h.gens[i];
        if target.src(a) != h.obj[g.src] || target.tgt(a) != h.obj[g.tgt] {
            r.push("endpoints", format!("generator {} maps to an arrow with wrong endpoints", g.id));
        }
    }
    if !r.is_valid() {
        return r;
    }
    for rel in &p.relators {
        let (x, _) = p.endpoints(rel).ok().flatten().unwrap();
        let w = PathWord { src: x, tgt: x, letters: rel.clone() };
        match h.eval(target, &w) {
            Some(a) if target.is_identity(a) => {}
            _ => r.push("relator", format!("{} does not map to an identity", p.format_word(rel))),
        }
    }
    r
}

/// Every morphism `p -> target` with optionally prescribed object images,
/// by backtracking over generator images with early relator checks.
pub fn presented_homs(p: &PresentedGroupoid, target: &FinGroupoid, fixed_obj: Option<&[usize]>, limit: usize) -> Result<Vec<PresentedHom>> {
    let obj_choices: Vec<Vec<usize>> = (0..p.num_objects())
        .map(|x| match fixed_obj {
            Some(f) => vec![f[x]],
            None => (0..target.num_objects()).collect(),
        })
        .collect();
    // relators are checked once their last generator (in index order) is set
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); p.num_generators()];
    for (k, r) in p.relators.iter().enumerate() {
        let last = r.iter().map(|l| l.gen()).max().unwrap();
        due[last].push(k);
    }
    let mut out = Vec::new();
    for obj in crate::groupoid::cartesian(&obj_choices) {
        let mut gens = vec![0usize; p.num_generators()];
        search(p, target, &obj, &due, 0, &mut gens, &mut out, limit)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: &PresentedGroupoid,
    t: &FinGroupoid,
    obj: &[usize],
    due: &[Vec<usize>],
    i: usize,
    gens: &mut Vec<usize>,
    out: &mut Vec<PresentedHom>,
    limit: usize,
) -> Result<()> {
    if i == p.num_generators() {
        if out.len() >= limit {
            return Err(Error::TooLarge(format!("more than {limit} morphisms")));
        }
        out.push(PresentedHom { obj: obj.to_vec(), gens: gens.clone() });
        return Ok(());
    }
    let g = &p.generators[i];
    for &a in t.hom(obj[g.src], obj[g.tgt]) {
        gens[i] = a as usize;
        let h = PresentedHom { obj: obj.to_vec(), gens: gens.clone() };
        let ok = due[i].iter().all(|&k| {
            let rel = &p.relators[k];
            let (x, _) = p.letter_ends(rel[0]);
            h.eval(t, &PathWord { src: x, tgt: x, letters: rel.clone() }).is_some_and(|a| t.is_identity(a))
        });
        if ok {
            search(p, t, obj, due, i + 1, gens, out, limit)?;
        }
    }
    Ok(())
}

/// Converts a hom out of [`PresentedGroupoid::from_fin`] back to a functor.
pub fn hom_to_functor(g: &FinGroupoid, gen_of: &[Option<usize>], target: &FinGroupoid, h: &PresentedHom) -> Functor {
    let arr = (0..g.num_arrows())
        .map(|a| match gen_of[a] {
            Some(k) => h.gens[k],
            None => target.identity(h.obj[g.src(a)]),
        })
        .collect();
    Functor { obj: h.obj.clone(), arr }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinGroup;

    fn s(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    fn one_obj(gens: &[&str], rels: Vec<Word>) -> PresentedGroupoid {
        let g = gens.iter().map(|id| Generator { id: id.to_string(), src: 0, tgt: 0 }).collect();
        PresentedGroupoid::new(s(&["*"]), g, rels).unwrap()
    }

    #[test]
    fn c2_free_product_invariants() {
        let p = one_obj(&["x", "y"], vec![vec![Letter::pos(0); 2], vec![Letter::pos(1); 2]]);
        let inv = p.abelian_invariants(0).unwrap();
        assert_eq!(inv.torsion, vec![2, 2]);
        assert_eq!(inv.free_rank, 0);
    }

    #[test]
    fn free_rank_one_and_tree() {
        let p = one_obj(&["a"], vec![]);
        assert_eq!(p.abelian_invariants(0).unwrap(), AbGroupInvariants::free(1));
        let tree = PresentedGroupoid::free(s(&["0", "1"]), vec![Generator { id: "i".into(), src: 0, tgt: 1 }]).unwrap();
        assert!(tree.abelian_invariants(1).unwrap().is_trivial());
        let (g, _) = tree.realize(&RewriteBound::default()).unwrap();
        assert_eq!(g.num_arrows(), 4);
    }

    #[test]
    fn word_problem_soundness() {
        let b = RewriteBound::default();
        let p = one_obj(&["x"], vec![vec![Letter::pos(0); 2]]);
        let x = p.generator_path(0);
        assert_eq!(p.word_problem_bounded(&x, &x, &b).unwrap(), Decision::Equal);
        assert_eq!(p.word_problem_bounded(&x, &PathWord::empty(0), &b).unwrap(), Decision::Distinct);
        let f = one_obj(&["x"], vec![]);
        let tiny = RewriteBound::uniform(2);
        let d = f.word_problem_bounded(&f.generator_path(0), &PathWord::empty(0), &tiny).unwrap();
        assert_ne!(d, Decision::Equal);
    }

    #[test]
    fn fin_presentation_recovers_groupoid() {
        let g = FinGroupoid::group_times_codiscrete(&FinGroup::symmetric3(), &s(&["a", "b"]));
        let (p, _) = PresentedGroupoid::from_fin(&g);
        let (r, _) = p.realize(&RewriteBound::default()).unwrap();
        assert_eq!(r.num_arrows(), g.num_arrows());
        let homs = presented_homs(&p, &FinGroupoid::from_group(&FinGroup::cyclic(2)), None, 1000).unwrap();
        // functors from S3 × codiscrete(2) to C2: 2 (vertex homs) × 2 (tree arrow)
        assert_eq!(homs.len(), 4);
    }

    #[test]
    fn json_roundtrip() {
        let p = one_obj(&["x", "y"], vec![vec![Letter::pos(0), Letter::new(1, true)]]);
        let j = p.to_json();
        assert_eq!(j.relators, vec![vec!["x".to_string(), "y^-1".to_string()]]);
        assert_eq!(PresentedGroupoid::from_json(&j).unwrap(), p);
    }
}
