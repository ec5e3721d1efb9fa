//! Finite groups as multiplication tables.
//!
//! Element `0` is always the identity. Products are written left to right:
//! `mul(a, b)` is `ab`.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpgroup::{FpGroup, Letter};
use crate::intmat::{AbGroupInvariants, IntMatrix};

/// Largest group order accepted in table form.
pub const MAX_TABLE_ORDER: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    labels: Vec<String>,
    table: Vec<u32>,
    inv: Vec<u32>,
}

/// A group homomorphism as the list of images of `0..order`.
pub type GroupMap = Vec<u32>;

impl FinGroup {
    /// Builds from a trusted product closure; `0` must be the identity.
    pub(crate) fn from_fn(labels: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Self {
        let n = labels.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = mul(a, b) as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("group element without inverse") as u32;
        }
        FinGroup { labels, table, inv }
    }

    /// Builds from a labelled table, checking the group axioms. The identity
    /// is moved to index `0`.
    pub fn from_table(labels: Vec<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invalid("a group has at least one element".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::TooLarge(format!("group of order {n}")));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Malformed("group table must be square over its elements".into()));
        }
        let e = (0..n).find(|&e| (0..n).all(|a| rows[e][a] == a && rows[a][e] == a)).ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| rows[a][b] == e && rows[b][a] == e) {
                return Err(Error::Invalid(format!("element {} has no inverse", labels[a])));
            }
            for b in 0..n {
                for c in 0..n {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Err(Error::Invalid(format!("table is not associative at ({}, {}, {})", labels[a], labels[b], labels[c])));
                    }
                }
            }
        }
        // permutation putting e first, others in original order
        let mut order: Vec<usize> = vec![e];
        order.extend((0..n).filter(|&a| a != e));
        let mut pos = vec![0usize; n];
        for (i, &a) in order.iter().enumerate() {
            pos[a] = i;
        }
        let labels2 = order.iter().map(|&a| labels[a].clone()).collect();
        Ok(Self::from_fn(labels2, |i, j| pos[rows[order[i]][order[j]]]))
    }

    pub fn trivial() -> Self {
        Self::from_fn(vec!["e".into()], |_, _| 0)
    }

    /// Cyclic group with generator `t`; element `i` is `t^i`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "t".to_string(),
                _ => format!("t{i}"),
            })
            .collect();
        Self::from_fn(labels, |a, b| (a + b) % n)
    }

    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let labels = (0..na * nb)
            .map(|k| {
                let (i, j) = (k / nb, k % nb);
                if k == 0 {
                    "e".to_string()
                } else {
                    format!("({},{})", a.labels[i], b.labels[j])
                }
            })
            .collect();
        Self::from_fn(labels, |x, y| {
            let (i1, j1) = (x / nb, x % nb);
            let (i2, j2) = (y / nb, y % nb);
            a.mul(i1, i2) * nb + b.mul(j1, j2)
        })
    }

    /// Dihedral group of order `2n`: elements `r^i s^j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..2 * n)
            .map(|k| {
                let (i, j) = (k % n, k / n);
                match (i, j) {
                    (0, 0) => "e".to_string(),
                    (_, 0) => format!("r{i}"),
                    (0, 1) => "s".to_string(),
                    _ => format!("r{i}s"),
                }
            })
            .collect();
        // r^i s^j * r^k s^l = r^{i + (-1)^j k} s^{j+l}
        Self::from_fn(labels, move |x, y| {
            let (i, j) = (x % n, x / n);
            let (k, l) = (y % n, y / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            rot + n * ((j + l) % 2)
        })
    }

    /// Symmetric group on three letters.
    pub fn symmetric3() -> Self {
        Self::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    /// Quaternion group of order 8.
    pub fn quaternion() -> Self {
        // elements (-1)^s * q, q in {1,i,j,k}
        let base = ["1", "i", "j", "k"];
        let labels = (0..8)
            .map(|x| {
                if x == 0 {
                    "e".to_string()
                } else if x < 4 {
                    base[x].to_string()
                } else {
                    format!("-{}", base[x - 4])
                }
            })
            .collect();
        // unit quaternion products: (sign, index)
        let prod = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        Self::from_fn(labels, move |x, y| {
            let (sx, qx) = (x >= 4, x % 4);
            let (sy, qy) = (y >= 4, y % 4);
            let (s, q) = prod(qx, qy);
            q + if sx ^ sy ^ s { 4 } else { 0 }
        })
    }

    /// Closure of a set of permutations of `0..d` under composition.
    /// Permutations act on the right: `(p q)(i) = q(p(i))`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let d = gens.first().map(|g| g.len()).unwrap_or(0);
        let id: Vec<usize> = (0..d).collect();
        for g in gens {
            let mut seen = vec![false; d];
            if g.len() != d || g.iter().any(|&x| x >= d || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Malformed("not a permutation".into()));
            }
        }
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for g in gens {
                let p: Vec<usize> = elems[a].iter().map(|&i| g[i]).collect();
                if !index.contains_key(&p) {
                    if elems.len() >= MAX_TABLE_ORDER {
                        return Err(Error::TooLarge("permutation group".into()));
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let labels = elems.iter().enumerate().map(|(k, p)| if k == 0 { "e".to_string() } else { format!("{p:?}").replace(' ', "") }).collect();
        Ok(Self::from_fn(labels, |a, b| {
            let p: Vec<usize> = elems[a].iter().map(|&i| elems[b][i]).collect();
            index[&p]
        }))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g⁻¹ a g`
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn relabel(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.labels = labels;
        self
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|a| (0..self.order()).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut x = 0;
        for _ in 0..k.unsigned_abs() {
            x = self.mul(x, base);
        }
        x
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        (0..self.order()).filter(|&a| seen[a]).collect()
    }

    /// A small generating set, chosen greedily and deterministically.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut current = vec![0usize];
        while current.len() < n {
            let best = (1..n)
                .filter(|a| current.binary_search(a).is_err())
                .map(|a| {
                    let mut g = gens.clone();
                    g.push(a);
                    (self.subgroup(&g).len(), a)
                })
                .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)))
                .unwrap();
            gens.push(best.1);
            current = self.subgroup(&gens);
        }
        gens
    }

    /// Breadth-first Cayley tree for `gens`: for each element the pair
    /// `(parent, generator position)` with `parent * gens[pos] = element`,
    /// plus the visiting order. Errors if `gens` does not generate.
    pub fn cayley_tree(&self, gens: &[usize]) -> Result<(Vec<Option<(usize, usize)>>, Vec<usize>)> {
        let n = self.order();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut order = vec![0usize];
        let mut k = 0;
        while k < order.len() {
            let a = order[k];
            k += 1;
            for (pos, &g) in gens.iter().enumerate() {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = Some((a, pos));
                    order.push(b);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Invalid("elements do not generate the group".into()));
        }
        Ok((parent, order))
    }

    /// Word in `gens` (positive letters only) for each element.
    pub fn words(&self, gens: &[usize]) -> Result<Vec<Vec<Letter>>> {
        let (parent, order) = self.cayley_tree(gens)?;
        let mut words = vec![Vec::new(); self.order()];
        for &a in &order[1..] {
            let (p, pos) = parent[a].unwrap();
            let mut w = words[p].clone();
            w.push(Letter::pos(pos));
            words[a] = w;
        }
        Ok(words)
    }

    /// Presentation on `gens` read off the Cayley graph: one relator per
    /// non-tree edge.
    pub fn cayley_presentation(&self, gens: &[usize]) -> Result<FpGroup> {
        let (parent, _) = self.cayley_tree(gens)?;
        let words = self.words(gens)?;
        let mut relators = Vec::new();
        for a in 0..self.order() {
            for (pos, &g) in gens.iter().enumerate() {
                let b = self.mul(a, g);
                if parent[b] == Some((a, pos)) {
                    continue;
                }
                let mut r = words[a].clone();
                r.push(Letter::pos(pos));
                r.extend(crate::fpgroup::invert(&words[b]));
                let r = crate::fpgroup::free_reduce(&r);
                if !r.is_empty() {
                    relators.push(r);
                }
            }
        }
        relators.sort();
        relators.dedup();
        Ok(FpGroup::new(gens.len(), relators))
    }

    /// Evaluates a word in `gens`.
    pub fn eval(&self, gens: &[usize], word: &[Letter]) -> usize {
        word.iter().fold(0, |x, l| {
            let g = gens[l.gen()];
            self.mul(x, if l.is_inverse() { self.inv(g) } else { g })
        })
    }

    pub fn is_hom(&self, target: &FinGroup, map: &[u32]) -> bool {
        map.len() == self.order()
            && (0..self.order()).all(|a| (0..self.order()).all(|b| map[self.mul(a, b)] as usize == target.mul(map[a] as usize, map[b] as usize)))
    }

    /// Every homomorphism `self -> target`, each as a full image list.
    pub fn homs_to(&self, target: &FinGroup) -> Vec<GroupMap> {
        self.homs_filtered(target, |_, _| true)
    }

    /// Homomorphisms whose generator images pass `allow(gen_index_in_self, image)`.
    pub fn homs_filtered(&self, target: &FinGroup, allow: impl Fn(usize, usize) -> bool) -> Vec<GroupMap> {
        let gens = self.generators();
        let (parent, order) = self.cayley_tree(&gens).expect("generators generate");
        let choices: Vec<Vec<usize>> = gens.iter().map(|&g| (0..target.order()).filter(|&t| allow(g, t)).collect()).collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; gens.len()];
        if choices.iter().any(|c| c.is_empty()) {
            return out;
        }
        'outer: loop {
            let imgs: Vec<usize> = pick.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
            let mut map = vec![0u32; self.order()];
            for &a in &order[1..] {
                let (p, pos) = parent[a].unwrap();
                map[a] = target.mul(map[p] as usize, imgs[pos]) as u32;
            }
            let ok = (0..self.order()).all(|a| gens.iter().enumerate().all(|(pos, &g)| map[self.mul(a, g)] as usize == target.mul(map[a] as usize, imgs[pos])));
            if ok {
                out.push(map);
            }
            let mut k = 0;
            loop {
                if k == pick.len() {
                    break 'outer;
                }
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
        out
    }

    pub fn isomorphisms_to(&self, target: &FinGroup) -> Vec<GroupMap> {
        if self.order() != target.order() {
            return vec![];
        }
        let orders: Vec<usize> = (0..target.order()).map(|a| target.element_order(a)).collect();
        self.homs_filtered(target, |g, t| self.element_order(g) == orders[t])
            .into_iter()
            .filter(|m| {
                let mut seen = vec![false; m.len()];
                m.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
            })
            .collect()
    }

    pub fn is_isomorphic(&self, target: &FinGroup) -> bool {
        if self.order() != target.order() || self.is_abelian() != target.is_abelian() {
            return false;
        }
        let mut a: Vec<usize> = (0..self.order()).map(|x| self.element_order(x)).collect();
        let mut b: Vec<usize> = (0..target.order()).map(|x| target.element_order(x)).collect();
        a.sort();
        b.sort();
        a == b && !self.isomorphisms_to(target).is_empty()
    }

    pub fn automorphisms(&self) -> Vec<GroupMap> {
        self.isomorphisms_to(self)
    }

    /// Invariants of the abelianization.
    pub fn abelian_invariants(&self) -> AbGroupInvariants {
        let gens = self.generators();
        let pres = self.cayley_presentation(&gens).expect("generators generate");
        pres.abelian_invariants().expect("small exponent sums")
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            elements: self.labels.clone(),
            table: (0..self.order()).map(|a| (0..self.order()).map(|b| self.labels[self.mul(a, b)].clone()).collect()).collect(),
        }
    }

    pub fn from_json(j: &GroupJson) -> Result<Self> {
        let index: HashMap<&str, usize> = j.elements.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        if index.len() != j.elements.len() {
            return Err(Error::Malformed("duplicate group element labels".into()));
        }
        let rows = j
            .table
            .iter()
            .map(|r| r.iter().map(|l| index.get(l.as_str()).copied().ok_or_else(|| Error::UnknownArrow(l.clone()))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(j.elements.clone(), &rows)
    }
}

/// Serialized group table: entries are element labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

/// Exponent-sum matrix of relators over `ngens` generators.
pub fn exponent_matrix(ngens: usize, relators: &[Vec<Letter>]) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = relators
        .iter()
        .map(|r| {
            let mut v = vec![0i64; ngens];
            for l in r {
                v[l.gen()] += l.sign();
            }
            v
        })
        .collect();
    IntMatrix::from_rows(ngens, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_have_expected_shape() {
        assert_eq!(FinGroup::symmetric3().order(), 6);
        assert!(!FinGroup::symmetric3().is_abelian());
        assert!(!FinGroup::quaternion().is_abelian());
        assert_eq!(FinGroup::quaternion().automorphisms().len(), 24);
        assert_eq!(FinGroup::dihedral(4).automorphisms().len(), 8);
        assert!(FinGroup::dihedral(3).is_isomorphic(&FinGroup::symmetric3()));
        assert!(!FinGroup::dihedral(4).is_isomorphic(&FinGroup::quaternion()));
        let k = FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        assert_eq!(k.automorphisms().len(), 6);
    }

    #[test]
    fn hom_counts() {
        // |Hom(C_m, C_n)| = gcd(m, n)
        for m in 1..7 {
            for n in 1..7 {
                let c = FinGroup::cyclic(m).homs_to(&FinGroup::cyclic(n)).len();
                assert_eq!(c as u64, crate::intmat::gcd(m as u64, n as u64));
            }
        }
        // S3 -> C2: trivial and sign
        assert_eq!(FinGroup::symmetric3().homs_to(&FinGroup::cyclic(2)).len(), 2);
    }

    #[test]
    fn abelianizations() {
        assert_eq!(FinGroup::symmetric3().abelian_invariants().torsion, vec![2]);
        assert_eq!(FinGroup::quaternion().abelian_invariants().torsion, vec![2, 2]);
        assert_eq!(FinGroup::cyclic(6).abelian_invariants().torsion, vec![6]);
    }

    #[test]
    fn table_roundtrip() {
        let g = FinGroup::quaternion();
        let h = FinGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(g, h);
    }
}
