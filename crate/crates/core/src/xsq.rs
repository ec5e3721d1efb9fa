//! Crossed squares of finite groups, the D-completion of a pair of crossed
//! modules, and the nonabelian tensor product.
//!
//! Left actions are derived from the stored right actions: `ᵖx = x^{p⁻¹}`.
//! With `h(m,n) = (ⁿm m⁻¹, n ᵐn⁻¹)` the commutator rules read
//! `h(mm', n) = h(m,n) · ᵐh(m',n)` and `h(m, nn') = ⁿh(m,n') · h(m,n)`,
//! which fixes the orientation of the tensor relators below.
//!
//! Validation is partial by design. The frozen list of checked axioms:
//! "square commutes", "equivariance", "crossed module" (for λ, λ′, μ, ν
//! and μλ), "biderivation" (the two rules above), "boundary of h"
//! (`λh` and `λ′h`), "h on images" (`h(λl, n)` and `h(m, λ′l)`) and
//! "h equivariance".

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpgroup::{FpGroup, Letter, RewriteBound, Word};
use crate::group::{FinGroup, GroupJson, GroupMap};
use crate::groupoid::ValidationReport;
use crate::intmat::{gcd, AbGroupInvariants};
use crate::xmod::GroupXMod;

/// A crossed square with right actions of `P` on `L`, `M`, `N` (one map
/// per element of `P`) and the full table of `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedSquare {
    pub l: FinGroup,
    pub m: FinGroup,
    pub n: FinGroup,
    pub p: FinGroup,
    pub lambda: GroupMap,
    pub lambda2: GroupMap,
    pub mu: GroupMap,
    pub nu: GroupMap,
    pub act_l: Vec<GroupMap>,
    pub act_m: Vec<GroupMap>,
    pub act_n: Vec<GroupMap>,
    /// `h[m][n]`.
    pub h: Vec<Vec<u32>>,
}

fn label_map(a: &FinGroup, b: &FinGroup, f: &[u32]) -> BTreeMap<String, String> {
    (0..a.order()).map(|x| (a.label(x).to_string(), b.label(f[x] as usize).to_string())).collect()
}

/// Serialized crossed square: group tables, boundary maps and the right
/// action of each element of `P`, all by element label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedSquareJson {
    pub groups: BTreeMap<String, GroupJson>,
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
    pub actions: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
    pub h: BTreeMap<String, BTreeMap<String, String>>,
}

impl CrossedSquare {
    pub fn to_json(&self) -> CrossedSquareJson {
        let (l, m, n, p) = (&self.l, &self.m, &self.n, &self.p);
        let acts = |g: &FinGroup, act: &[GroupMap]| -> BTreeMap<String, BTreeMap<String, String>> {
            (0..p.order()).map(|q| (p.label(q).to_string(), label_map(g, g, &act[q]))).collect()
        };
        CrossedSquareJson {
            groups: [("L", l), ("M", m), ("N", n), ("P", p)].into_iter().map(|(k, g)| (k.to_string(), g.to_json())).collect(),
            maps: [("lambda", l, m, &self.lambda), ("lambda2", l, n, &self.lambda2), ("mu", m, p, &self.mu), ("nu", n, p, &self.nu)]
                .into_iter()
                .map(|(k, a, b, f)| (k.to_string(), label_map(a, b, f)))
                .collect(),
            actions: [("L", acts(l, &self.act_l)), ("M", acts(m, &self.act_m)), ("N", acts(n, &self.act_n))]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            h: (0..m.order())
                .map(|a| (m.label(a).to_string(), (0..n.order()).map(|b| (n.label(b).to_string(), l.label(self.h[a][b] as usize).to_string())).collect()))
                .collect(),
        }
    }

    /// `ᵖx` on `L`.
    fn left_l(&self, p: usize, x: usize) -> usize {
        self.act_l[self.p.inv(p)][x] as usize
    }

    fn left_m(&self, p: usize, x: usize) -> usize {
        self.act_m[self.p.inv(p)][x] as usize
    }

    fn left_n(&self, p: usize, x: usize) -> usize {
        self.act_n[self.p.inv(p)][x] as usize
    }

    fn h(&self, m: usize, n: usize) -> usize {
        self.h[m][n] as usize
    }

    /// The crossed module `λ: L -> M`, with `M` acting on `L` through `P`.
    pub fn lambda_xmod(&self) -> GroupXMod {
        GroupXMod {
            p: self.m.clone(),
            m: self.l.clone(),
            mu: self.lambda.clone(),
            action: (0..self.m.order()).map(|x| self.act_l[self.mu[x] as usize].clone()).collect(),
            name: "λ".into(),
        }
    }

    pub fn lambda2_xmod(&self) -> GroupXMod {
        GroupXMod {
            p: self.n.clone(),
            m: self.l.clone(),
            mu: self.lambda2.clone(),
            action: (0..self.n.order()).map(|x| self.act_l[self.nu[x] as usize].clone()).collect(),
            name: "λ′".into(),
        }
    }

    pub fn mu_xmod(&self) -> GroupXMod {
        GroupXMod { p: self.p.clone(), m: self.m.clone(), mu: self.mu.clone(), action: self.act_m.clone(), name: "μ".into() }
    }

    pub fn nu_xmod(&self) -> GroupXMod {
        GroupXMod { p: self.p.clone(), m: self.n.clone(), mu: self.nu.clone(), action: self.act_n.clone(), name: "ν".into() }
    }

    pub fn diagonal_xmod(&self) -> GroupXMod {
        GroupXMod {
            p: self.p.clone(),
            m: self.l.clone(),
            mu: self.lambda.iter().map(|&x| self.mu[x as usize]).collect(),
            action: self.act_l.clone(),
            name: "μλ".into(),
        }
    }
}

/// Checks the frozen axiom subset listed in the module docs.
pub fn validate_xsq_partial(s: &CrossedSquare) -> ValidationReport {
    let mut r = ValidationReport::default();
    let (l, m, n, p) = (&s.l, &s.m, &s.n, &s.p);
    let shapes_ok = s.lambda.len() == l.order()
        && s.lambda2.len() == l.order()
        && s.mu.len() == m.order()
        && s.nu.len() == n.order()
        && s.act_l.len() == p.order()
        && s.act_m.len() == p.order()
        && s.act_n.len() == p.order()
        && s.h.len() == m.order()
        && s.h.iter().all(|row| row.len() == n.order() && row.iter().all(|&x| (x as usize) < l.order()));
    if !shapes_ok {
        r.push("shape", "maps do not cover the groups");
        return r;
    }
    for x in 0..l.order() {
        if s.mu[s.lambda[x] as usize] != s.nu[s.lambda2[x] as usize] {
            r.push("square commutes", format!("μλ({0}) ≠ νλ′({0})", l.label(x)));
        }
    }
    for g in 0..p.order() {
        for x in 0..l.order() {
            let y = s.act_l[g][x] as usize;
            if s.lambda[y] != s.act_m[g][s.lambda[x] as usize] || s.lambda2[y] != s.act_n[g][s.lambda2[x] as usize] {
                r.push("equivariance", format!("λ or λ′ at {}, {}", l.label(x), p.label(g)));
            }
        }
    }
    for (name, x) in [("λ", s.lambda_xmod()), ("λ′", s.lambda2_xmod()), ("μ", s.mu_xmod()), ("ν", s.nu_xmod()), ("μλ", s.diagonal_xmod())] {
        let v = x.validate();
        if !v.is_valid() {
            r.push("crossed module", format!("{name}: {}", v.violations[0].detail));
        }
    }
    if !r.is_valid() {
        return r;
    }
    for a in 0..m.order() {
        for b in 0..n.order() {
            let hab = s.h(a, b);
            let ma = m.mul(s.left_m(s.nu[b] as usize, a), m.inv(a));
            let nb = n.mul(b, n.inv(s.left_n(s.mu[a] as usize, b)));
            if s.lambda[hab] as usize != ma || s.lambda2[hab] as usize != nb {
                r.push("boundary of h", format!("h({}, {})", m.label(a), n.label(b)));
            }
            for g in 0..p.order() {
                if s.act_l[g][hab] as usize != s.h(s.act_m[g][a] as usize, s.act_n[g][b] as usize) {
                    r.push("h equivariance", format!("h({}, {})^{}", m.label(a), n.label(b), p.label(g)));
                }
            }
            for a2 in 0..m.order() {
                let lhs = s.h(m.mul(a, a2), b);
                let rhs = l.mul(hab, s.left_l(s.mu[a] as usize, s.h(a2, b)));
                if lhs != rhs {
                    r.push("biderivation", format!("h({}{}, {})", m.label(a), m.label(a2), n.label(b)));
                }
            }
            for b2 in 0..n.order() {
                let lhs = s.h(a, n.mul(b, b2));
                let rhs = l.mul(s.left_l(s.nu[b] as usize, s.h(a, b2)), hab);
                if lhs != rhs {
                    r.push("biderivation", format!("h({}, {}{})", m.label(a), n.label(b), n.label(b2)));
                }
            }
        }
    }
    for x in 0..l.order() {
        for b in 0..n.order() {
            let want = l.mul(s.left_l(s.nu[b] as usize, x), l.inv(x));
            if s.h(s.lambda[x] as usize, b) != want {
                r.push("h on images", format!("h(λ{}, {})", l.label(x), n.label(b)));
            }
        }
        for a in 0..m.order() {
            let want = l.mul(x, l.inv(s.left_l(s.mu[a] as usize, x)));
            if s.h(a, s.lambda2[x] as usize) != want {
                r.push("h on images", format!("h({}, λ′{})", m.label(a), l.label(x)));
            }
        }
    }
    r
}

/// `L = M ×_P N` with the projections and `h(m,n) = (ⁿm m⁻¹, n ᵐn⁻¹)`.
pub fn d_completion(mu: &GroupXMod, nu: &GroupXMod) -> Result<CrossedSquare> {
    mu.validate().into_result("μ")?;
    nu.validate().into_result("ν")?;
    if mu.p != nu.p {
        return Err(Error::NotOver("the crossed modules have different bases".into()));
    }
    let (m, n, p) = (&mu.m, &nu.m, &mu.p);
    let mut pairs = vec![(0usize, 0usize)];
    for a in 0..m.order() {
        for b in 0..n.order() {
            if (a, b) != (0, 0) && mu.mu[a] == nu.mu[b] {
                pairs.push((a, b));
            }
        }
    }
    let index: std::collections::HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let labels = pairs.iter().map(|&(a, b)| format!("({},{})", m.label(a), n.label(b))).collect();
    let l = FinGroup::from_fn(labels, |i, j| {
        let ((a, b), (c, d)) = (pairs[i], pairs[j]);
        index[&(m.mul(a, c), n.mul(b, d))]
    });
    let act_l = (0..p.order()).map(|g| pairs.iter().map(|&(a, b)| index[&(mu.action[g][a] as usize, nu.action[g][b] as usize)] as u32).collect()).collect();
    let left = |act: &Vec<GroupMap>, g: usize, x: usize| act[p.inv(g)][x] as usize;
    let h = (0..m.order())
        .map(|a| {
            (0..n.order())
                .map(|b| {
                    let x = m.mul(left(&mu.action, nu.mu[b] as usize, a), m.inv(a));
                    let y = n.mul(b, n.inv(left(&nu.action, mu.mu[a] as usize, b)));
                    index.get(&(x, y)).map(|&i| i as u32).ok_or_else(|| Error::Invalid("h(m, n) leaves the fibre product".into()))
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    let sq = CrossedSquare {
        lambda: pairs.iter().map(|&(a, _)| a as u32).collect(),
        lambda2: pairs.iter().map(|&(_, b)| b as u32).collect(),
        l,
        m: m.clone(),
        n: n.clone(),
        p: p.clone(),
        mu: mu.mu.clone(),
        nu: nu.mu.clone(),
        act_l,
        act_m: mu.action.clone(),
        act_n: nu.action.clone(),
        h,
    };
    Ok(sq)
}

/// Pointwise check of `h` on a completion: every value lies in `L` and
/// projects to `ⁿm m⁻¹` and `n ᵐn⁻¹`.
pub fn check_h_formula(s: &CrossedSquare) -> bool {
    (0..s.m.order()).all(|a| {
        (0..s.n.order()).all(|b| {
            let x = s.h(a, b);
            x < s.l.order()
                && s.lambda[x] as usize == s.m.mul(s.left_m(s.nu[b] as usize, a), s.m.inv(a))
                && s.lambda2[x] as usize == s.n.mul(b, s.n.inv(s.left_n(s.mu[a] as usize, b)))
        })
    })
}

/// Mutual left actions of two groups: `m_on_n[m]` is `n ↦ ᵐn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutualActions {
    pub m_on_n: Vec<GroupMap>,
    pub n_on_m: Vec<GroupMap>,
}

impl MutualActions {
    pub fn trivial(m: &FinGroup, n: &FinGroup) -> Self {
        MutualActions { m_on_n: vec![(0..n.order() as u32).collect(); m.order()], n_on_m: vec![(0..m.order() as u32).collect(); n.order()] }
    }

    /// Actions through a common base: `ᵐn = n^{μ(m)⁻¹}`.
    pub fn via_base(mu: &GroupXMod, nu: &GroupXMod) -> Self {
        let p = &mu.p;
        MutualActions {
            m_on_n: (0..mu.m.order()).map(|a| nu.action[p.inv(mu.mu[a] as usize)].clone()).collect(),
            n_on_m: (0..nu.m.order()).map(|b| mu.action[p.inv(nu.mu[b] as usize)].clone()).collect(),
        }
    }

    /// Left actions by automorphisms with `^{(ᵐn)}m' = ᵐ(ⁿ(m⁻¹m'm))` and
    /// symmetrically.
    pub fn check(&self, m: &FinGroup, n: &FinGroup) -> Result<()> {
        let is_left_action = |g: &FinGroup, h: &FinGroup, act: &[GroupMap]| {
            act.len() == g.order()
                && act.iter().all(|a| h.is_hom(h, a))
                && (0..g.order()).all(|x| (0..g.order()).all(|y| (0..h.order()).all(|z| act[g.mul(x, y)][z] == act[x][act[y][z] as usize])))
        };
        if !is_left_action(m, n, &self.m_on_n) || !is_left_action(n, m, &self.n_on_m) {
            return Err(Error::Invalid("actions are not left actions by automorphisms".into()));
        }
        let compatible = |g: &FinGroup, h: &FinGroup, g_on_h: &[GroupMap], h_on_g: &[GroupMap]| {
            (0..g.order()).all(|a| {
                (0..h.order()).all(|b| {
                    let ab = g_on_h[a][b] as usize;
                    (0..g.order()).all(|c| {
                        let conj = g.mul(g.mul(a, h_on_g[b][g.mul(g.inv(a), g.mul(c, a))] as usize), g.inv(a));
                        h_on_g[ab][c] as usize == conj
                    })
                })
            })
        };
        if !compatible(m, n, &self.m_on_n, &self.n_on_m) || !compatible(n, m, &self.n_on_m, &self.m_on_n) {
            return Err(Error::Invalid("incompatible action data".into()));
        }
        Ok(())
    }
}

/// Generators `m⊗n` (index `m·|N| + n`) and the relators
/// `mm'⊗n = (m⊗n)(ᵐm'⊗ᵐn)` and `m⊗nn' = (ⁿm⊗ⁿn')(m⊗n)`, with the two
/// boundary maps `m⊗n ↦ ⁿm m⁻¹` and `m⊗n ↦ n ᵐn⁻¹`.
#[derive(Debug, Clone)]
pub struct TensorPresentation {
    pub m: FinGroup,
    pub n: FinGroup,
    pub actions: MutualActions,
    pub group: FpGroup,
    pub to_m: Vec<usize>,
    pub to_n: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorReport {
    pub generators: usize,
    pub relators: usize,
}

/// Serialized tensor presentation, laid out like a free crossed module:
/// generators `m⊗n`, relators as signed generator names, and the two
/// boundaries `m⊗n ↦ ⁿm m⁻¹` and `m⊗n ↦ n ᵐn⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<String>>,
    pub boundary_m: BTreeMap<String, String>,
    pub boundary_n: BTreeMap<String, String>,
}

impl TensorPresentation {
    pub fn to_json(&self) -> TensorJson {
        let names = self.generator_names();
        let letter = |l: &Letter| if l.is_inverse() { format!("{}^-1", names[l.gen()]) } else { names[l.gen()].clone() };
        TensorJson {
            relators: self.group.relators.iter().map(|r| r.iter().map(letter).collect()).collect(),
            boundary_m: names.iter().zip(&self.to_m).map(|(k, &x)| (k.clone(), self.m.label(x).to_string())).collect(),
            boundary_n: names.iter().zip(&self.to_n).map(|(k, &x)| (k.clone(), self.n.label(x).to_string())).collect(),
            generators: names,
        }
    }

    pub fn new(m: &FinGroup, n: &FinGroup, actions: MutualActions) -> Result<Self> {
        actions.check(m, n)?;
        let (om, on) = (m.order(), n.order());
        let g = |a: usize, b: usize| a * on + b;
        let mut relators: Vec<Word> = Vec::new();
        for a in 0..om {
            for a2 in 0..om {
                for b in 0..on {
                    let conj_m = m.mul(m.mul(a, a2), m.inv(a));
                    let an = actions.m_on_n[a][b] as usize;
                    relators.push(vec![Letter::new(g(m.mul(a, a2), b), true), Letter::pos(g(a, b)), Letter::pos(g(conj_m, an))]);
                }
            }
        }
        for a in 0..om {
            for b in 0..on {
                for b2 in 0..on {
                    let na = actions.n_on_m[b][a] as usize;
                    let conj_n = n.mul(n.mul(b, b2), n.inv(b));
                    relators.push(vec![Letter::new(g(a, n.mul(b, b2)), true), Letter::pos(g(na, conj_n)), Letter::pos(g(a, b))]);
                }
            }
        }
        let mut to_m = Vec::with_capacity(om * on);
        let mut to_n = Vec::with_capacity(om * on);
        for a in 0..om {
            for b in 0..on {
                to_m.push(m.mul(actions.n_on_m[b][a] as usize, m.inv(a)));
                to_n.push(n.mul(b, n.inv(actions.m_on_n[a][b] as usize)));
            }
        }
        Ok(TensorPresentation { m: m.clone(), n: n.clone(), group: FpGroup::new(om * on, relators), actions, to_m, to_n })
    }

    pub fn report(&self) -> TensorReport {
        TensorReport { generators: self.group.ngens, relators: self.group.relators.len() }
    }

    pub fn generator_names(&self) -> Vec<String> {
        (0..self.m.order()).flat_map(|a| (0..self.n.order()).map(move |b| (a, b))).map(|(a, b)| format!("{}⊗{}", self.m.label(a), self.n.label(b))).collect()
    }
}

/// The presentation of `M ⊗ N` for two crossed modules over one base.
pub fn universal_xsq_presentation(mu: &GroupXMod, nu: &GroupXMod) -> Result<TensorPresentation> {
    mu.validate().into_result("μ")?;
    nu.validate().into_result("ν")?;
    if mu.p != nu.p {
        return Err(Error::NotOver("the crossed modules have different bases".into()));
    }
    TensorPresentation::new(&mu.m, &nu.m, MutualActions::via_base(mu, nu))
}

/// A realized tensor product: the table and the element of each `m⊗n`.
#[derive(Debug, Clone)]
pub struct TensorTable {
    pub group: FinGroup,
    pub images: Vec<usize>,
}

/// Finite realization within the budget, or `None`. Every relator is
/// re-evaluated on the table before returning.
pub fn tensor_bounded(m: &FinGroup, n: &FinGroup, actions: MutualActions, bound: &RewriteBound) -> Result<Option<TensorTable>> {
    let tp = TensorPresentation::new(m, n, actions)?;
    realize_tensor(&tp, bound)
}

pub fn realize_tensor(tp: &TensorPresentation, bound: &RewriteBound) -> Result<Option<TensorTable>> {
    let names = tp.generator_names();
    let Some(real) = tp.group.realize(bound, Some(&names)) else {
        return Ok(None);
    };
    let images: Vec<usize> = (0..tp.group.ngens).map(|k| real.eval(&[Letter::pos(k)])).collect();
    let g = &real.group;
    for r in &tp.group.relators {
        let v = r.iter().fold(0, |acc, l| g.mul(acc, if l.is_inverse() { g.inv(images[l.gen()]) } else { images[l.gen()] }));
        if v != 0 {
            return Err(Error::Invalid("realized tensor product violates a relator".into()));
        }
    }
    Ok(Some(TensorTable { group: real.group, images }))
}

/// `A ⊗_ℤ B` from cyclic decompositions: `ℤ/a ⊗ ℤ/b = ℤ/gcd(a,b)`,
/// `ℤ ⊗ ℤ/b = ℤ/b`, `ℤ ⊗ ℤ = ℤ`.
pub fn abelian_tensor(a: &AbGroupInvariants, b: &AbGroupInvariants) -> AbGroupInvariants {
    let mut orders = Vec::new();
    let free = a.free_rank * b.free_rank;
    for &x in &a.torsion {
        for &y in &b.torsion {
            orders.push(gcd(x, y));
        }
        orders.extend(std::iter::repeat_n(x, b.free_rank));
    }
    for &y in &b.torsion {
        orders.extend(std::iter::repeat_n(y, a.free_rank));
    }
    let mut out = AbGroupInvariants::from_cyclic_orders(&orders);
    out.free_rank = free;
    out
}

/// Square morphisms `S -> T` (all four components), counted exhaustively.
pub fn square_morphisms(s: &CrossedSquare, t: &CrossedSquare) -> usize {
    let mut count = 0;
    for fp in s.p.homs_to(&t.p) {
        let fms = s.m.homs_filtered(&t.m, |a, b| t.mu[b] == fp[s.mu[a] as usize]);
        let fns = s.n.homs_filtered(&t.n, |a, b| t.nu[b] == fp[s.nu[a] as usize]);
        let fls = s.l.homs_filtered(&t.l, |_, _| true);
        let eq = |f: &GroupMap, g: usize, act_s: &[GroupMap], act_t: &[GroupMap], k: usize| {
            (0..k).all(|x| f[act_s[g][x] as usize] == act_t[fp[g] as usize][f[x] as usize])
        };
        let fms: Vec<&GroupMap> = fms.iter().filter(|f| (0..s.p.order()).all(|g| eq(f, g, &s.act_m, &t.act_m, s.m.order()))).collect();
        let fns: Vec<&GroupMap> = fns.iter().filter(|f| (0..s.p.order()).all(|g| eq(f, g, &s.act_n, &t.act_n, s.n.order()))).collect();
        let fls: Vec<&GroupMap> = fls.iter().filter(|f| (0..s.p.order()).all(|g| eq(f, g, &s.act_l, &t.act_l, s.l.order()))).collect();
        for fm in &fms {
            for fn_ in &fns {
                for fl in &fls {
                    let commutes = (0..s.l.order())
                        .all(|x| fm[s.lambda[x] as usize] == t.lambda[fl[x] as usize] && fn_[s.lambda2[x] as usize] == t.lambda2[fl[x] as usize]);
                    let keeps_h =
                        commutes && (0..s.m.order()).all(|a| (0..s.n.order()).all(|b| fl[s.h(a, b)] as usize == t.h(fm[a] as usize, fn_[b] as usize)));
                    if keeps_h {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Pairs of crossed-module morphisms `(μ_S -> μ, ν_S -> ν)` sharing the
/// base component.
pub fn pair_morphisms(s: &CrossedSquare, mu: &GroupXMod, nu: &GroupXMod) -> usize {
    let mut count = 0;
    for fp in s.p.homs_to(&mu.p) {
        let ok = |src: &FinGroup, bd: &GroupMap, act: &[GroupMap], x: &GroupXMod| {
            src.homs_filtered(&x.m, |a, b| x.mu[b] == fp[bd[a] as usize])
                .into_iter()
                .filter(|f| (0..s.p.order()).all(|g| (0..src.order()).all(|e| f[act[g][e] as usize] == x.action[fp[g] as usize][f[e] as usize])))
                .count()
        };
        count += ok(&s.m, &s.mu, &s.act_m, mu) * ok(&s.n, &s.nu, &s.act_n, nu);
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_pair_over_c2_has_diagonal_l() {
        let c2 = FinGroup::cyclic(2);
        let id = GroupXMod::identity(&c2);
        let s = d_completion(&id, &id).unwrap();
        assert_eq!(s.l.order(), 2);
        assert!(validate_xsq_partial(&s).is_valid());
        assert!(check_h_formula(&s));
        // conjugation on an abelian group is trivial: h(t,t) = (1,1)
        assert_eq!(s.h[1][1], 0);
    }

    #[test]
    fn trivial_m_gives_kernel() {
        let c4 = FinGroup::cyclic(4);
        let c2 = FinGroup::cyclic(2);
        let nu = GroupXMod { p: c2.clone(), m: c4.clone(), mu: vec![0, 1, 0, 1], action: vec![(0..4).collect(); 2], name: "".into() };
        let s = d_completion(&GroupXMod::zero(&c2), &nu).unwrap();
        assert_eq!(s.l.order(), 2);
        assert!(validate_xsq_partial(&s).is_valid());
    }

    #[test]
    fn broken_square_is_reported() {
        let c2 = FinGroup::cyclic(2);
        let id = GroupXMod::identity(&c2);
        let mut s = d_completion(&id, &id).unwrap();
        s.lambda2 = vec![0, 0];
        assert!(validate_xsq_partial(&s).cites("square commutes"));
    }

    #[test]
    fn small_tensors_with_trivial_action() {
        let b = RewriteBound::default();
        for (k, want) in [(2usize, 2usize), (3, 3)] {
            let c = FinGroup::cyclic(k);
            let t = tensor_bounded(&c, &c, MutualActions::trivial(&c, &c), &b).unwrap().unwrap();
            assert_eq!(t.group.order(), want);
            let oracle = abelian_tensor(&c.abelian_invariants(), &c.abelian_invariants());
            assert_eq!(t.group.abelian_invariants(), oracle);
        }
        let one = FinGroup::trivial();
        let c3 = FinGroup::cyclic(3);
        let t = tensor_bounded(&one, &c3, MutualActions::trivial(&one, &c3), &b).unwrap().unwrap();
        assert_eq!(t.group.order(), 1);
    }

    #[test]
    fn abelian_tensor_oracle_values() {
        let z = AbGroupInvariants::free(1);
        let c4 = AbGroupInvariants::from_cyclic_orders(&[4]);
        let c6 = AbGroupInvariants::from_cyclic_orders(&[6]);
        assert_eq!(abelian_tensor(&c4, &c6), AbGroupInvariants::from_cyclic_orders(&[2]));
        assert_eq!(abelian_tensor(&z, &c6), c6);
        assert_eq!(abelian_tensor(&z, &z), z);
    }

    #[test]
    fn incompatible_actions_are_rejected() {
        let c2 = FinGroup::cyclic(2);
        let c3 = FinGroup::cyclic(3);
        // the nontrivial element sends two generators to one: not an automorphism
        let bad = MutualActions { m_on_n: vec![vec![0, 1, 2], vec![0, 1, 1]], n_on_m: vec![vec![0, 1]; 3] };
        assert!(tensor_bounded(&c2, &c3, bad, &RewriteBound::default()).is_err());
    }
}
