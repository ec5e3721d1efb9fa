//! Universal morphisms `u_*: G -> U_u(G)` via reduced words.
//!
//! A word over the base is a sequence of non-identity base arrows whose
//! images under `u` form a path, with no two consecutive letters composable
//! in the base. Reduction pushes letters onto a stack, composing with the
//! top when possible and dropping identities; it is confluent, so every
//! arrow of `U_u(G)` has exactly one reduced word.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fpgroup::Letter;
use crate::groupoid::{FinGroupoid, ObjMap, ValidationReport};
use crate::presented::{Generator, PathWord, PresentedGroupoid};

/// Groupoid operations shared by table and word groupoids.
pub trait GroupoidOps {
    type Arrow: Clone + Eq + Hash + Debug;

    fn num_objects(&self) -> usize;
    fn object_name(&self, x: usize) -> &str;
    fn src(&self, a: &Self::Arrow) -> usize;
    fn tgt(&self, a: &Self::Arrow) -> usize;
    /// `ab`, or `None` when `tgt a != src b`.
    fn compose(&self, a: &Self::Arrow, b: &Self::Arrow) -> Option<Self::Arrow>;
    fn inverse(&self, a: &Self::Arrow) -> Self::Arrow;
    fn identity(&self, x: usize) -> Self::Arrow;
    fn is_identity(&self, a: &Self::Arrow) -> bool;
}

impl GroupoidOps for FinGroupoid {
    type Arrow = usize;

    fn num_objects(&self) -> usize {
        FinGroupoid::num_objects(self)
    }
    fn object_name(&self, x: usize) -> &str {
        &self.objects()[x]
    }
    fn src(&self, a: &usize) -> usize {
        FinGroupoid::src(self, *a)
    }
    fn tgt(&self, a: &usize) -> usize {
        FinGroupoid::tgt(self, *a)
    }
    fn compose(&self, a: &usize, b: &usize) -> Option<usize> {
        FinGroupoid::compose(self, *a, *b)
    }
    fn inverse(&self, a: &usize) -> usize {
        FinGroupoid::inverse(self, *a)
    }
    fn identity(&self, x: usize) -> usize {
        FinGroupoid::identity(self, x)
    }
    fn is_identity(&self, a: &usize) -> bool {
        FinGroupoid::is_identity(self, *a)
    }
}

/// Reduced word from object `src` to object `tgt` of the target set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GpdWord<A> {
    pub src: usize,
    pub tgt: usize,
    pub letters: Vec<A>,
}

/// `U_u(B)` for a base groupoid `B` and object map `u: Ob B -> J`.
#[derive(Debug, Clone)]
pub struct WordGroupoid<B: GroupoidOps> {
    base: Arc<B>,
    map: Vec<usize>,
    objects: Vec<String>,
}

pub type UnivGroupoid = WordGroupoid<FinGroupoid>;

impl<B: GroupoidOps> WordGroupoid<B> {
    pub fn new(base: Arc<B>, map: Vec<usize>, objects: Vec<String>) -> Result<Self> {
        if map.len() != base.num_objects() || map.iter().any(|&j| j >= objects.len()) {
            return Err(Error::Malformed("object map does not fit the base".into()));
        }
        Ok(WordGroupoid { base, map, objects })
    }

    pub fn base(&self) -> &Arc<B> {
        &self.base
    }

    pub fn object_map(&self) -> &[usize] {
        &self.map
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    /// The unit `u_*`: one-letter word, or empty for identities.
    pub fn unit(&self, a: &B::Arrow) -> GpdWord<B::Arrow> {
        let (s, t) = (self.map[self.base.src(a)], self.map[self.base.tgt(a)]);
        let letters = if self.base.is_identity(a) { vec![] } else { vec![a.clone()] };
        GpdWord { src: s, tgt: t, letters }
    }

    /// Reduces an adjacency-respecting letter sequence.
    pub fn reduce(&self, src: usize, tgt: usize, letters: impl IntoIterator<Item = B::Arrow>) -> Result<GpdWord<B::Arrow>> {
        let mut stack: Vec<B::Arrow> = Vec::new();
        let mut at = src;
        for a in letters {
            if self.map[self.base.src(&a)] != at {
                return Err(Error::NotComposable("letter does not continue the path".into()));
            }
            at = self.map[self.base.tgt(&a)];
            self.push(&mut stack, a);
        }
        if at != tgt {
            return Err(Error::NotComposable("path does not end at the stated object".into()));
        }
        Ok(GpdWord { src, tgt, letters: stack })
    }

    fn push(&self, stack: &mut Vec<B::Arrow>, a: B::Arrow) {
        if self.base.is_identity(&a) {
            return;
        }
        match stack.last().and_then(|top| self.base.compose(top, &a)) {
            Some(c) => {
                stack.pop();
                self.push(stack, c);
            }
            None => stack.push(a),
        }
    }

    /// Reduction with an arbitrary choice of which adjacent composable pair
    /// to contract next; `pick` selects among the available positions.
    pub fn reduce_in_order(&self, src: usize, tgt: usize, letters: Vec<B::Arrow>, mut pick: impl FnMut(usize) -> usize) -> Result<GpdWord<B::Arrow>> {
        let mut w: Vec<B::Arrow> = letters;
        loop {
            let mut sites: Vec<usize> = (0..w.len()).filter(|&i| self.base.is_identity(&w[i])).map(|i| i * 2).collect();
            sites.extend((0..w.len().saturating_sub(1)).filter(|&i| self.base.compose(&w[i], &w[i + 1]).is_some()).map(|i| i * 2 + 1));
            if sites.is_empty() {
                break;
            }
            let s = sites[pick(sites.len()) % sites.len()];
            let i = s / 2;
            if s.is_multiple_of(2) {
                w.remove(i);
            } else {
                let c = self.base.compose(&w[i], &w[i + 1]).unwrap();
                w.splice(i..i + 2, [c]);
            }
        }
        let out = GpdWord { src, tgt, letters: w };
        self.check_word(&out).into_result("word")?;
        Ok(out)
    }

    pub fn word_compose(&self, w1: &GpdWord<B::Arrow>, w2: &GpdWord<B::Arrow>) -> Result<GpdWord<B::Arrow>> {
        if w1.tgt != w2.src {
            return Err(Error::NotComposable(format!("word ends at {} but next starts at {}", self.objects[w1.tgt], self.objects[w2.src])));
        }
        let mut stack = w1.letters.clone();
        for a in &w2.letters {
            self.push(&mut stack, a.clone());
        }
        Ok(GpdWord { src: w1.src, tgt: w2.tgt, letters: stack })
    }

    pub fn word_inverse(&self, w: &GpdWord<B::Arrow>) -> GpdWord<B::Arrow> {
        GpdWord { src: w.tgt, tgt: w.src, letters: w.letters.iter().rev().map(|a| self.base.inverse(a)).collect() }
    }

    pub fn empty_word(&self, j: usize) -> GpdWord<B::Arrow> {
        GpdWord { src: j, tgt: j, letters: vec![] }
    }

    /// Checks endpoints, adjacency, reducedness and absence of identities.
    pub fn check_word(&self, w: &GpdWord<B::Arrow>) -> ValidationReport {
        let mut r = ValidationReport::default();
        if w.src >= self.objects.len() || w.tgt >= self.objects.len() {
            r.push("endpoints", "object out of range");
            return r;
        }
        match (w.letters.first(), w.letters.last()) {
            (None, _) if w.src != w.tgt => r.push("endpoints", "empty word between distinct objects"),
            (Some(f), Some(l)) if (self.map[self.base.src(f)] != w.src || self.map[self.base.tgt(l)] != w.tgt) => {
                r.push("endpoints", "letters do not match the word's objects");
            }
            _ => {}
        }
        for a in &w.letters {
            if self.base.is_identity(a) {
                r.push("no identities", format!("{a:?}"));
            }
        }
        for pair in w.letters.windows(2) {
            if self.map[self.base.tgt(&pair[0])] != self.map[self.base.src(&pair[1])] {
                r.push("adjacency", format!("{:?} then {:?}", pair[0], pair[1]));
            }
            if self.base.compose(&pair[0], &pair[1]).is_some() {
                r.push("reduced", format!("{:?} then {:?} compose in the base", pair[0], pair[1]));
            }
        }
        r
    }
}

impl<B: GroupoidOps> GroupoidOps for WordGroupoid<B> {
    type Arrow = GpdWord<B::Arrow>;

    fn num_objects(&self) -> usize {
        self.objects.len()
    }
    fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }
    fn src(&self, a: &Self::Arrow) -> usize {
        a.src
    }
    fn tgt(&self, a: &Self::Arrow) -> usize {
        a.tgt
    }
    fn compose(&self, a: &Self::Arrow, b: &Self::Arrow) -> Option<Self::Arrow> {
        self.word_compose(a, b).ok()
    }
    fn inverse(&self, a: &Self::Arrow) -> Self::Arrow {
        self.word_inverse(a)
    }
    fn identity(&self, x: usize) -> Self::Arrow {
        self.empty_word(x)
    }
    fn is_identity(&self, a: &Self::Arrow) -> bool {
        a.letters.is_empty()
    }
}

/// The universal morphism of `u` applied to `g`: the word groupoid and the
/// unit on every base arrow.
pub fn universal_morphism(u: &ObjMap, g: &Arc<FinGroupoid>) -> Result<(UnivGroupoid, Vec<GpdWord<usize>>)> {
    if u.domain != g.objects() {
        return Err(Error::NotOver("object map domain differs from the groupoid's objects".into()));
    }
    let w = WordGroupoid::new(g.clone(), u.map.clone(), u.codomain.clone())?;
    let unit = (0..g.num_arrows()).map(|a| w.unit(&a)).collect();
    Ok((w, unit))
}

impl UnivGroupoid {
    /// Generators are the non-identity base arrows, in base order.
    pub fn generator_of(&self) -> Vec<Option<usize>> {
        let mut k = 0;
        (0..self.base.num_arrows())
            .map(|a| {
                if self.base.is_identity(a) {
                    None
                } else {
                    k += 1;
                    Some(k - 1)
                }
            })
            .collect()
    }

    /// Presentation over the target objects: the base presentation pushed
    /// forward along the object map.
    pub fn to_presentation(&self) -> PresentedGroupoid {
        let (p, _) = PresentedGroupoid::from_fin(&self.base);
        p.pushforward(&self.map, self.objects.clone()).expect("object map fits")
    }

    /// A reduced word as a path in [`Self::to_presentation`].
    pub fn to_path(&self, w: &GpdWord<usize>) -> PathWord {
        let gen_of = self.generator_of();
        PathWord { src: w.src, tgt: w.tgt, letters: w.letters.iter().map(|&a| Letter::pos(gen_of[a].unwrap())).collect() }
    }

    /// All reduced words of at most `max_len` letters, shortest first,
    /// erroring past `cap` words.
    pub fn words_up_to(&self, max_len: usize, cap: usize) -> Result<Vec<GpdWord<usize>>> {
        let g = &*self.base;
        let mut out: Vec<GpdWord<usize>> = (0..self.objects.len()).map(|j| self.empty_word(j)).collect();
        let mut frontier: Vec<GpdWord<usize>> = g.non_identity_arrows().map(|a| self.unit(&a)).collect();
        let mut len = 1;
        while len <= max_len && !frontier.is_empty() {
            if out.len() + frontier.len() > cap {
                return Err(Error::TooLarge(format!("more than {cap} words")));
            }
            out.extend(frontier.iter().cloned());
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for w in &frontier {
                let last = *w.letters.last().unwrap();
                for b in g.non_identity_arrows() {
                    if self.map[g.src(b)] == w.tgt && g.compose(last, b).is_none() {
                        let mut letters = w.letters.clone();
                        letters.push(b);
                        next.push(GpdWord { src: w.src, tgt: self.map[g.tgt(b)], letters });
                    }
                }
                if next.len() > cap {
                    return Err(Error::TooLarge(format!("more than {cap} words")));
                }
            }
            frontier = next;
            len += 1;
        }
        Ok(out)
    }

    /// Formats a word by base arrow ids.
    pub fn format(&self, w: &GpdWord<usize>) -> String {
        if w.letters.is_empty() {
            return format!("1_{}", self.objects[w.src]);
        }
        w.letters.iter().map(|&a| self.base.arrow(a).id.as_str()).collect::<Vec<_>>().join("·")
    }
}

/// Flattens a word over `U_u(G)` into `U_{vu}(G)`.
pub fn flatten(composite: &UnivGroupoid, w: &GpdWord<GpdWord<usize>>) -> Result<GpdWord<usize>> {
    composite.reduce(w.src, w.tgt, w.letters.iter().flat_map(|inner| inner.letters.iter().copied()))
}

/// Splits a `U_{vu}(G)` word into maximal runs that are paths over `u`.
pub fn unflatten(outer: &WordGroupoid<UnivGroupoid>, w: &GpdWord<usize>) -> Result<GpdWord<GpdWord<usize>>> {
    let inner = &**outer.base();
    let g = &**inner.base();
    let u = inner.object_map();
    let mut runs: Vec<GpdWord<usize>> = Vec::new();
    for &a in &w.letters {
        match runs.last_mut() {
            Some(run) if run.tgt == u[g.src(a)] => {
                run.letters.push(a);
                run.tgt = u[g.tgt(a)];
            }
            _ => runs.push(GpdWord { src: u[g.src(a)], tgt: u[g.tgt(a)], letters: vec![a] }),
        }
    }
    let out = GpdWord { src: w.src, tgt: w.tgt, letters: runs };
    outer.check_word(&out).into_result("unflattened word")?;
    Ok(out)
}

/// Builds `U_v(U_u(G))` and `U_{vu}(G)` for a pair of object maps.
pub fn composite_pair(u: &ObjMap, v: &ObjMap, g: &Arc<FinGroupoid>) -> Result<(WordGroupoid<UnivGroupoid>, UnivGroupoid)> {
    let (inner, _) = universal_morphism(u, g)?;
    let vu = u.then(v)?;
    let outer = WordGroupoid::new(Arc::new(inner), v.map.clone(), v.codomain.clone())?;
    let (composite, _) = universal_morphism(&vu, g)?;
    Ok((outer, composite))
}

/// Free groupoid on a graph given by endpoint names.
pub fn pg_free(objects: &[String], arrows: &[(String, String, String)]) -> Result<PresentedGroupoid> {
    let oi = |s: &str| objects.iter().position(|o| o == s).ok_or_else(|| Error::UnknownObject(s.to_string()));
    let gens = arrows.iter().map(|(id, s, t)| Ok(Generator { id: id.clone(), src: oi(s)?, tgt: oi(t)? })).collect::<Result<_>>()?;
    PresentedGroupoid::free(objects.to_vec(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinGroup;

    fn s(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn circle_words_are_distinct_powers() {
        let g = Arc::new(FinGroupoid::codiscrete(&s(&["0", "1"])));
        let u = ObjMap::collapse(&s(&["0", "1"]), "*");
        let (w, _) = universal_morphism(&u, &g).unwrap();
        let iota = g.arrow_id("(0,1)").unwrap();
        let mut p = w.empty_word(0);
        let mut seen = Vec::new();
        for _ in 0..20 {
            p = w.word_compose(&p, &w.unit(&iota)).unwrap();
            assert!(w.check_word(&p).is_valid());
            assert!(!seen.contains(&p));
            seen.push(p.clone());
        }
        assert_eq!(seen[19].letters.len(), 20);
        let inv = w.to_presentation().abelian_invariants(0).unwrap();
        assert_eq!((inv.free_rank, inv.torsion.len()), (1, 0));
        let back = w.word_compose(&w.unit(&iota), &w.unit(&g.arrow_id("(1,0)").unwrap())).unwrap();
        assert!(back.letters.is_empty());
    }

    #[test]
    fn square_cascade_deletes() {
        let c2 = FinGroupoid::from_group(&FinGroup::cyclic(2));
        let g = Arc::new(FinGroupoid::coproduct(&[&c2, &c2]));
        let u = ObjMap::collapse(g.objects(), "*");
        let (w, _) = universal_morphism(&u, &g).unwrap();
        let x = g.arrow_id("0:t").unwrap();
        let y = g.arrow_id("1:t").unwrap();
        assert!(w.word_compose(&w.unit(&x), &w.unit(&x)).unwrap().letters.is_empty());
        assert_eq!(w.word_compose(&w.unit(&x), &w.unit(&y)).unwrap().letters, vec![x, y]);
        let words = w.words_up_to(10, 100).unwrap();
        assert_eq!(words.len(), 1 + 2 * 10);
        let inv = w.to_presentation().abelian_invariants(0).unwrap();
        assert_eq!(inv.torsion, vec![2, 2]);
    }

    #[test]
    fn functoriality_flatten_roundtrip() {
        let c2 = FinGroupoid::from_group(&FinGroup::cyclic(2));
        let cd = FinGroupoid::codiscrete(&s(&["p", "q"]));
        let g = Arc::new(FinGroupoid::coproduct(&[&c2, &cd, &c2]));
        let u = ObjMap::new(g.objects().to_vec(), s(&["A", "B"]), vec![0, 0, 1, 1]).unwrap();
        let v = ObjMap::collapse(&s(&["A", "B"]), "*");
        let (outer, comp) = composite_pair(&u, &v, &g).unwrap();
        for w in comp.words_up_to(5, 100_000).unwrap() {
            let uf = unflatten(&outer, &w).unwrap();
            assert_eq!(flatten(&comp, &uf).unwrap(), w);
        }
    }
}
