//! Exhaustive and randomized checks behind the acceptance suite. Every
//! battery takes an [`Exec`] so the benches can compare both strategies.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog;
use crate::colimit::{
    colimit_connected, colimit_gpd, fibre_vs_total_colimit_check, pushout_along_discrete_gpd, pushout_along_discrete_mod, pushout_along_discrete_xmod, Colimit,
    Diagram, GpdDiagram, Realized,
};
use crate::error::{Error, Result};
use crate::fpgroup::{Decision, RewriteBound};
use crate::group::{FinGroup, GroupMap};
use crate::groupoid::{homs, pullback_groupoid, spanning_tree_retraction, FinGroupoid, Functor, GpdMorphism, ObjMap};
use crate::intmat::AbGroupInvariants;
use crate::module::{cyclic_modules, free_module, module_homs, module_induce, module_pullback, tensor_oracle, GpdModule, ModBase};
use crate::par::{self, Exec};
use crate::presented::presented_homs;
use crate::word::universal_morphism;
use crate::xmod::{
    expanded_abelian_invariants, peiffer_abelianize, restrict_along_unit, retract_xmod_to_vertex, xmod_homs, xmod_induce, xmod_isomorphic, GroupXMod, XModTable,
};
use crate::xsq::{abelian_tensor, check_h_formula, d_completion, tensor_bounded, validate_xsq_partial, MutualActions};

const LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub criterion: usize,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl Outcome {
    fn new(criterion: usize, failures: &[String], cases: usize, summary: String) -> Self {
        let detail = match failures.first() {
            None => summary,
            Some(f) => format!("{summary}; {} failing, first: {f}", failures.len()),
        };
        Outcome { criterion, passed: failures.is_empty(), cases, detail }
    }
}

fn collect(results: Vec<Result<Vec<String>>>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Every map `0..n -> 0..t`.
fn all_maps(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|m: Vec<usize>| (0..t).map(move |y| [m.clone(), vec![y]].concat())).collect();
    }
    out
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

pub fn circle(bound: &RewriteBound) -> Result<Outcome> {
    let d = crate::scenario::circle_diagram();
    let Colimit::Gpd(c) = colimit_connected(&Diagram::Gpd(d.clone()))? else { unreachable!("groupoid diagram") };
    let p = &c.presentation;
    let mut failures = Vec::new();
    if p.num_objects() != 1 {
        failures.push(format!("{} objects", p.num_objects()));
    }
    let inv = p.abelian_invariants(0)?;
    if inv != AbGroupInvariants::free(1) {
        failures.push(format!("invariants {inv:?}"));
    }
    let iota = c.cocone[1][d.nodes[1].1.arrow_id("(0,1)")?].clone();
    let mut powers = vec![iota.clone()];
    for _ in 1..20 {
        powers.push(powers.last().unwrap().then(&iota).expect("loop"));
    }
    for i in 0..powers.len() {
        for j in 0..i {
            let d = p.word_problem_bounded(&powers[i], &powers[j], bound)?;
            if d != Decision::Distinct {
                failures.push(format!("ι^{} vs ι^{}: {d:?}", i + 1, j + 1));
            }
        }
    }
    Ok(Outcome::new(1, &failures, 190, "ι¹..ι²⁰ pairwise distinct, vertex group ℤ".into()))
}

/// A disjoint union of `G × codiscrete(k)` blocks with at most
/// `max_arrows` arrows and `max_objects` objects.
pub fn random_groupoid(rng: &mut impl Rng, max_arrows: usize, max_objects: usize) -> FinGroupoid {
    let groups = catalog::groups_to_12();
    let mut parts = Vec::new();
    let (mut arrows, mut objects) = (0, 0);
    loop {
        let k = rng.gen_range(1..=3usize.min(max_objects - objects));
        let fits: Vec<&FinGroup> = groups.iter().map(|(_, g)| g).filter(|g| arrows + g.order() * k * k <= max_arrows).collect();
        if fits.is_empty() {
            break;
        }
        let g = fits[rng.gen_range(0..fits.len())];
        arrows += g.order() * k * k;
        objects += k;
        parts.push(FinGroupoid::group_times_codiscrete(g, &names(k)));
        if objects >= max_objects || rng.gen_bool(0.4) {
            break;
        }
    }
    let refs: Vec<&FinGroupoid> = parts.iter().collect();
    FinGroupoid::coproduct(&refs)
}

pub fn unit_injectivity(exec: Exec, count: usize, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gs: Vec<Arc<FinGroupoid>> = (0..count).map(|_| Arc::new(random_groupoid(&mut rng, 40, 5))).collect();
    let per = par::map_with(exec, &gs, |g| -> Result<(usize, Vec<String>)> {
        let mut failures = Vec::new();
        let mut maps = 0;
        for t in 1..=4 {
            for m in all_maps(g.num_objects(), t) {
                maps += 1;
                let u = ObjMap::new(g.objects().to_vec(), names(t), m.clone())?;
                let (_, unit) = universal_morphism(&u, g)?;
                let mut seen = HashSet::new();
                for a in g.non_identity_arrows() {
                    if unit[a].letters.is_empty() || !seen.insert(&unit[a]) {
                        failures.push(format!("{} arrows, map {m:?}, arrow {}", g.num_arrows(), g.arrow(a).id));
                    }
                }
            }
        }
        Ok((maps, failures))
    });
    let mut failures = Vec::new();
    let mut cases = 0;
    for r in per {
        let (m, f) = r?;
        cases += m;
        failures.extend(f);
    }
    Ok(Outcome::new(2, &failures, cases, format!("{count} groupoids, all object maps to ≤ 4 targets")))
}

fn catalog_arcs() -> Vec<(String, Arc<FinGroupoid>)> {
    catalog::adjunction_catalog().into_iter().map(|(n, g)| (n, Arc::new(g))).collect()
}

/// `Hom_u(X, Y) ≅ Hom_id(X, u*Y)` via composition with the projection.
fn pullback_adjunction(x: &Arc<FinGroupoid>, y: &Arc<FinGroupoid>) -> Result<(usize, Vec<String>)> {
    let mut failures = Vec::new();
    let mut cases = 0;
    for m in all_maps(x.num_objects(), y.num_objects()) {
        cases += 1;
        let u = ObjMap::new(x.objects().to_vec(), y.objects().to_vec(), m.clone())?;
        let (p, proj) = pullback_groupoid(&u, y)?;
        let ident: Vec<usize> = x.objects().iter().map(|o| p.object_index(o).unwrap()).collect();
        let direct: BTreeSet<Vec<usize>> = homs(x, y, Some(&m), LIMIT)?.into_iter().map(|f| f.arr).collect();
        let lifted = homs(x, &p, Some(&ident), LIMIT)?;
        let composed: BTreeSet<Vec<usize>> = lifted.iter().map(|f| f.arr.iter().map(|&a| proj.arr[a]).collect()).collect();
        if composed != direct || composed.len() != lifted.len() {
            failures.push(format!("pullback, map {m:?}: {} vs {} (lifted {})", composed.len(), direct.len(), lifted.len()));
        }
    }
    Ok((cases, failures))
}

/// `Hom_id(U_u Z, Y) ≅ Hom_u(Z, Y)` via precomposition with the unit.
fn universal_adjunction(z: &Arc<FinGroupoid>, y: &Arc<FinGroupoid>) -> Result<(usize, Vec<String>)> {
    let mut failures = Vec::new();
    let mut cases = 0;
    let ident: Vec<usize> = (0..y.num_objects()).collect();
    for m in all_maps(z.num_objects(), y.num_objects()) {
        cases += 1;
        let u = ObjMap::new(z.objects().to_vec(), y.objects().to_vec(), m.clone())?;
        let (w, unit) = universal_morphism(&u, z)?;
        let pres = w.to_presentation();
        let psi: Vec<_> = unit.iter().map(|x| w.to_path(x)).collect();
        let factors = presented_homs(&pres, y, Some(&ident), LIMIT)?;
        let composed: BTreeSet<Vec<usize>> = factors.iter().map(|h| psi.iter().map(|p| h.eval(y, p).unwrap()).collect()).collect();
        let direct: BTreeSet<Vec<usize>> = homs(z, y, Some(&m), LIMIT)?.into_iter().map(|f| f.arr).collect();
        if composed != direct || composed.len() != factors.len() {
            failures.push(format!("universal, map {m:?}: {} vs {} (factors {})", composed.len(), direct.len(), factors.len()));
        }
    }
    Ok((cases, failures))
}

/// `Hom(v_*M, N) ≅ Hom(M, v*N)` via restriction to the unit generators.
fn module_adjunction(v: &GpdMorphism, m: &GpdModule, n: &GpdModule) -> Result<Vec<String>> {
    let ind = module_induce(v, m)?;
    let pulled = module_pullback(v, n)?;
    let direct: BTreeSet<Vec<Vec<i64>>> = module_homs(&m.to_presentation(), &pulled, LIMIT)?.into_iter().collect();
    let from_induced = module_homs(&ind.pres, n, LIMIT)?;
    let restricted: BTreeSet<Vec<Vec<i64>>> = from_induced.iter().map(|h| ind.unit.iter().map(|&g| h[g].clone()).collect()).collect();
    if restricted != direct || restricted.len() != from_induced.len() {
        return Ok(vec![format!("module, {} vs {} (induced {})", restricted.len(), direct.len(), from_induced.len())]);
    }
    Ok(vec![])
}

pub fn adjunctions(exec: Exec) -> Result<Outcome> {
    let cat = catalog_arcs();
    let pairs: Vec<(usize, usize)> = (0..cat.len()).flat_map(|i| (0..cat.len()).map(move |j| (i, j))).collect();
    let per = par::map_with(exec, &pairs, |&(i, j)| -> Result<(usize, Vec<String>)> {
        let (x, y) = (&cat[i].1, &cat[j].1);
        let tag = |f: Vec<String>| f.into_iter().map(|s| format!("{} -> {}: {s}", cat[i].0, cat[j].0)).collect::<Vec<_>>();
        let (c1, f1) = pullback_adjunction(x, y)?;
        let (c2, f2) = universal_adjunction(x, y)?;
        let mut failures = tag(f1);
        failures.extend(tag(f2));
        let mut cases = c1 + c2;
        // module side: a few morphisms per pair, finite coefficient modules
        for f in homs(x, y, None, LIMIT)?.into_iter().take(4) {
            let v = GpdMorphism::new(x.clone(), y.clone(), f)?;
            for mo in [2, 3] {
                for no in [2, 6] {
                    cases += 1;
                    let m = GpdModule::trivial_action(x.clone(), mo);
                    let n = GpdModule::trivial_action(y.clone(), no);
                    failures.extend(tag(module_adjunction(&v, &m, &n)?));
                }
            }
        }
        Ok((cases, failures))
    });
    let mut failures = Vec::new();
    let mut cases = 0;
    for r in per {
        let (c, f) = r?;
        cases += c;
        failures.extend(f);
    }
    Ok(Outcome::new(3, &failures, cases, format!("{} catalog pairs, pullback, universal and module adjunctions", pairs.len())))
}

fn one_object(g: &FinGroup) -> Arc<FinGroupoid> {
    Arc::new(FinGroupoid::from_group(g))
}

fn random_hom(rng: &mut impl Rng, a: &FinGroup, b: &FinGroup) -> GroupMap {
    let hs = a.homs_to(b);
    hs[rng.gen_range(0..hs.len())].clone()
}

/// A connected diagram of groups at one object: a span, a chain or a
/// parallel pair.
pub fn random_vertical_diagram(rng: &mut impl Rng) -> Result<GpdDiagram> {
    let groups = catalog::small_groups();
    let pick = |rng: &mut ChaCha8Rng| groups[rng.gen_range(0..groups.len())].1.clone();
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    let shape = local.gen_range(0..3);
    let gs: Vec<FinGroup> = (0..3).map(|_| pick(&mut local)).collect();
    let node = |i: usize| (format!("N{i}"), one_object(&gs[i]));
    let edge = |rng: &mut ChaCha8Rng, a: usize, b: usize| -> Result<(usize, usize, GpdMorphism)> {
        let f = random_hom(rng, &gs[a], &gs[b]);
        Ok((a, b, GpdMorphism::from_group_hom(&gs[a], &gs[b], &f)?))
    };
    let (nodes, edges) = match shape {
        0 => (vec![node(0), node(1), node(2)], vec![edge(&mut local, 0, 1)?, edge(&mut local, 0, 2)?]),
        1 => (vec![node(0), node(1), node(2)], vec![edge(&mut local, 0, 1)?, edge(&mut local, 1, 2)?]),
        _ => (vec![node(0), node(1)], vec![edge(&mut local, 0, 1)?, edge(&mut local, 0, 1)?]),
    };
    Ok(GpdDiagram { nodes, edges })
}

pub fn fibre_inclusion(exec: Exec, count: usize, seed: u64, bound: &RewriteBound) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ds: Vec<GpdDiagram> = (0..count).map(|_| random_vertical_diagram(&mut rng)).collect::<Result<_>>()?;
    let per = par::map_with(exec, &ds, |d| -> Result<Vec<String>> {
        let r = fibre_vs_total_colimit_check(d, bound)?;
        Ok(if r.connected && r.agree { vec![] } else { vec![format!("{:?} vs {:?}", r.fibre, r.total)] })
    });
    let mut failures = collect(per)?;
    // the disconnected pair
    let a = one_object(&FinGroup::cyclic(2));
    let b = one_object(&FinGroup::cyclic(3));
    let d = GpdDiagram { nodes: vec![("C2".into(), a), ("C3".into(), b)], edges: vec![] };
    let r = fibre_vs_total_colimit_check(&d, bound)?;
    let fibre_ok = r.fibre.objects == 1 && r.fibre.vertex_invariants == vec![AbGroupInvariants::from_cyclic_orders(&[6])];
    let total_ok = r.total.objects == 2 && r.total.arrows == Some(5);
    if r.connected || !r.agree || !fibre_ok || !total_ok {
        failures.push(format!("C2, C3: fibre {:?}, total {:?}", r.fibre, r.total));
    }
    if !matches!(colimit_gpd(&d), Err(Error::DisconnectedDiagram(2))) {
        failures.push("disconnected diagram was not refused".into());
    }
    Ok(Outcome::new(4, &failures, count + 1, format!("{count} connected diagrams agree, C2 ⊔ C3 differs (1 object vs 2 objects, 5 arrows)")))
}

pub fn induced_module_oracle(exec: Exec) -> Result<Outcome> {
    let gs = catalog::oracle_groups();
    let mut jobs = Vec::new();
    for (gn, g) in &gs {
        for (hn, h) in &gs {
            for f in g.homs_to(h) {
                jobs.push((gn.clone(), g.clone(), hn.clone(), h.clone(), f));
            }
        }
    }
    let per = par::map_with(exec, &jobs, |(gn, g, hn, h, f)| -> Result<(usize, Vec<String>)> {
        let v = GpdMorphism::from_group_hom(g, h, f)?;
        let mut failures = Vec::new();
        let mods = cyclic_modules(g, &[0, 2, 3, 4]);
        for m in &mods {
            let oracle = tensor_oracle(m, h, f)?;
            let ind = module_induce(&v, &m.to_gpd_module()?)?.pres.simplify()?;
            let got = ind.values().next().cloned().unwrap_or_default();
            if got != oracle {
                failures.push(format!("{gn} -> {hn} {f:?}, {}: {got:?} vs {oracle:?}", m.label));
            }
        }
        Ok((mods.len(), failures))
    });
    let mut failures = Vec::new();
    let mut cases = 0;
    for r in per {
        let (c, f) = r?;
        cases += c;
        failures.extend(f);
    }
    Ok(Outcome::new(5, &failures, cases, format!("{} group morphisms, cyclic modules of order 0, 2, 3, 4", jobs.len())))
}

pub fn free_modules(exec: Exec) -> Result<Outcome> {
    let cat = catalog_arcs();
    let mut jobs = Vec::new();
    for (qn, q) in &cat {
        for b in 1..=3 {
            for t in all_maps(b, q.num_objects()) {
                jobs.push((qn.clone(), q.clone(), t));
            }
        }
    }
    let per = par::map_with(exec, &jobs, |(qn, q, t)| -> Result<Vec<String>> {
        let basis: Vec<(String, usize)> = t.iter().enumerate().map(|(i, &y)| (format!("b{i}"), y)).collect();
        let free = free_module(&basis, q)?;
        let inv = free.pres.simplify()?;
        // ℤB on the discrete groupoid, induced by hand
        let d = Arc::new(FinGroupoid::discrete(&basis.iter().map(|(b, _)| b.clone()).collect::<Vec<_>>()));
        let obj: Vec<usize> = d.objects().iter().map(|o| basis.iter().find(|(b, _)| b == o).unwrap().1).collect();
        let arr = (0..d.num_arrows()).map(|a| q.identity(obj[d.src(a)])).collect();
        let v = GpdMorphism::new(d.clone(), q.clone(), Functor { obj, arr })?;
        let by_hand = module_induce(&v, &GpdModule::trivial_action(d, 0))?.pres.simplify()?;
        let mut failures = Vec::new();
        for y in 0..q.num_objects() {
            let rank: usize = t.iter().map(|&x| q.hom(x, y).len()).sum();
            let name = &q.objects()[y];
            let gens_at = free.pres.generators().iter().filter(|g| g.at == y).count();
            if inv[name] != AbGroupInvariants::free(rank) || by_hand[name] != inv[name] || gens_at != rank {
                failures.push(format!("{qn}, t = {t:?}, at {name}: {:?}, expected rank {rank}", inv[name]));
            }
        }
        Ok(failures)
    });
    let failures = collect(per)?;
    Ok(Outcome::new(6, &failures, jobs.len(), "rank at y equals the number of arrows t(b) -> y".into()))
}

fn inv_multiset(m: &BTreeMap<String, AbGroupInvariants>) -> Vec<AbGroupInvariants> {
    sorted(m.values().cloned().collect())
}

fn fibre_signature(t: &XModTable) -> Vec<(usize, AbGroupInvariants)> {
    sorted((0..t.base().num_objects()).map(|x| (t.fibre(x).order(), t.fibre(x).abelian_invariants())).collect())
}

pub fn pushouts(exec: Exec, bound: &RewriteBound) -> Result<Outcome> {
    enum Job {
        Gpd(Arc<FinGroupoid>, ObjMap),
        Mod(GpdMorphism, GpdModule),
        XMod(GpdMorphism, XModTable),
    }
    let mut jobs = Vec::new();
    let cat = catalog_arcs();
    'gpd: for (_, z) in &cat {
        for t in 1..=2 {
            let m = all_maps(z.num_objects(), t);
            let u = ObjMap::new(z.objects().to_vec(), names(t), m[m.len() / 2].clone())?;
            jobs.push(Job::Gpd(z.clone(), u));
            if jobs.len() == 20 {
                break 'gpd;
            }
        }
    }
    let small: Vec<FinGroup> = catalog::small_groups().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 4).collect();
    let mut k = 0;
    'module: for g in &small {
        for h in &small {
            let hs = g.homs_to(h);
            let f = &hs[hs.len() - 1];
            let v = GpdMorphism::from_group_hom(g, h, f)?;
            for n in [2, 3] {
                jobs.push(Job::Mod(v.clone(), GpdModule::trivial_action(v.source.clone(), n)));
                k += 1;
                if k == 15 {
                    break 'module;
                }
            }
        }
    }
    let xs: Vec<&GroupXMod> = catalog::xmod_catalog().iter().filter(|x| x.p.order() <= 4 && x.m.order() <= 4 && x.p.order() > 1).collect();
    for (i, x) in (0..15).map(|i| xs[i * xs.len() / 15]).enumerate() {
        let h = &small[(i % (small.len() - 1)) + 1];
        let hs = x.p.homs_to(h);
        let f = &hs[hs.len() - 1];
        jobs.push(Job::XMod(GpdMorphism::from_group_hom(&x.p, h, f)?, x.to_table()));
    }
    let total = jobs.len();
    let per = par::map_with(exec, &jobs, |job| -> Result<Vec<String>> {
        match job {
            Job::Gpd(z, u) => {
                let po = pushout_along_discrete_gpd(u, z)?;
                let (w, _) = universal_morphism(u, z)?;
                let direct = w.to_presentation();
                let mut f = Vec::new();
                for j in 0..u.codomain.len() {
                    let a = po.colimit.presentation.abelian_invariants(po.j_objects[j])?;
                    let b = direct.abelian_invariants(j)?;
                    if a != b {
                        f.push(format!("groupoid pushout at {j}: {a:?} vs {b:?}"));
                    }
                }
                Ok(f)
            }
            Job::Mod(v, m) => {
                let mc = pushout_along_discrete_mod(v, m)?;
                let r = Realized::of(&mc.base.presentation, bound).ok_or_else(|| Error::TooLarge("pushout base".into()))?;
                let a = inv_multiset(&r.module(&mc.module)?.simplify()?);
                let b = inv_multiset(&module_induce(v, m)?.pres.simplify()?);
                Ok(if a == b { vec![] } else { vec![format!("module pushout: {a:?} vs {b:?}")] })
            }
            Job::XMod(v, x) => {
                let xc = pushout_along_discrete_xmod(v, x)?;
                let r = Realized::of(&xc.base.presentation, bound).ok_or_else(|| Error::TooLarge("pushout base".into()))?;
                let a = r.xmod(&xc.xmod)?.bounded_realize(bound)?;
                let b = xmod_induce(v, x)?.pres.bounded_realize(bound)?;
                Ok(match (a, b) {
                    (Some(a), Some(b)) if fibre_signature(&a) == fibre_signature(&b) => vec![],
                    (a, b) => vec![format!("crossed pushout: {:?} vs {:?}", a.map(|t| fibre_signature(&t)), b.map(|t| fibre_signature(&t)))],
                })
            }
        }
    });
    let failures = collect(per)?;
    Ok(Outcome::new(7, &failures, total, "pushout along discrete maps equals the induced object in all three categories".into()))
}

/// Catalog crossed modules grouped by base group.
fn by_base() -> Vec<Vec<&'static GroupXMod>> {
    let mut out: Vec<Vec<&'static GroupXMod>> = Vec::new();
    for x in catalog::xmod_catalog() {
        match out.iter_mut().find(|b| b[0].p == x.p) {
            Some(b) => b.push(x),
            None => out.push(vec![x]),
        }
    }
    out
}

/// `|Hom_f(M, X′)| = |Hom(f_*M, X′)|` with the restriction map a bijection.
fn hom_bijection(m: &XModTable, f: &GpdMorphism, x: &XModTable, ind: &crate::xmod::InducedXMod) -> Result<Option<String>> {
    let direct: BTreeSet<Vec<GroupMap>> = xmod_homs(m, f, x, LIMIT)?.into_iter().collect();
    let seeds = ind.pres.homs_to(x, LIMIT)?;
    let restricted: BTreeSet<Vec<GroupMap>> = seeds.iter().map(|s| restrict_along_unit(ind, m, x, f, s)).collect();
    Ok((restricted != direct || restricted.len() != seeds.len()).then(|| format!("{} vs {} (seed maps {})", restricted.len(), direct.len(), seeds.len())))
}

pub fn induced_xmods(exec: Exec, bound: &RewriteBound) -> Result<Outcome> {
    let cat = catalog::xmod_catalog();
    let iso = par::map_with(exec, cat, |x| -> Result<Vec<String>> {
        let t = x.to_table();
        let id = GpdMorphism::identity(t.base().clone());
        let ind = xmod_induce(&id, &t)?;
        let mut f = Vec::new();
        match ind.pres.bounded_realize(bound)? {
            Some(r) if xmod_isomorphic(&r, &t)? => {}
            Some(_) => f.push(format!("{}: identity induction is not isomorphic", x.name)),
            None => f.push(format!("{}: realization ran out of budget", x.name)),
        }
        if !ind.pres.peiffer_boundaries_vanish()? {
            f.push(format!("{}: a Peiffer relator survives ∂", x.name));
        }
        Ok(f)
    });
    let mut failures = collect(iso)?;
    let mut cases = cat.len();
    // identity base maps: every ordered pair over a common base
    let buckets = by_base();
    let mut pairs = Vec::new();
    for b in &buckets {
        for &m in b {
            pairs.push((m, b.clone(), None::<GroupMap>));
        }
    }
    // nontrivial base maps between groups of order ≤ 4
    for b in buckets.iter().filter(|b| b[0].p.order() <= 4) {
        for c in buckets.iter().filter(|c| c[0].p.order() <= 4) {
            for f in b[0].p.homs_to(&c[0].p) {
                if b[0].p == c[0].p && f.iter().enumerate().all(|(i, &y)| i == y as usize) {
                    continue;
                }
                for &m in b.iter().filter(|m| m.m.order() <= 4) {
                    pairs.push((m, c.iter().copied().filter(|x| x.m.order() <= 4).collect(), Some(f.clone())));
                }
            }
        }
    }
    let per = par::map_with(exec, &pairs, |(m, targets, f)| -> Result<(usize, Vec<String>)> {
        let mt = m.to_table();
        let mut out = Vec::new();
        let tts: Vec<XModTable> = targets.iter().map(|x| x.to_table()).collect();
        let Some(tp) = targets.first().map(|t| &t.p) else { return Ok((0, out)) };
        let fm = match f {
            None => GpdMorphism::identity(mt.base().clone()),
            Some(f) => GpdMorphism::from_group_hom(&m.p, tp, f)?,
        };
        let ind = xmod_induce(&fm, &mt)?;
        for (x, xt) in targets.iter().zip(&tts) {
            if let Some(e) = hom_bijection(&mt, &fm, xt, &ind)? {
                out.push(format!("{} -> {} over {f:?}: {e}", m.name, x.name));
            }
        }
        Ok((targets.len(), out))
    });
    for r in per {
        let (c, f) = r?;
        cases += c;
        failures.extend(f);
    }
    Ok(Outcome::new(8, &failures, cases, format!("{} catalog crossed modules: identity induction, hom bijection, Peiffer boundaries", cat.len())))
}

pub fn free_xmod_abelianization() -> Result<Outcome> {
    let x = crate::scenario::free_on_involution()?;
    let ab = peiffer_abelianize(&x)?;
    let got = ab.module.simplify()?;
    let oracle = expanded_abelian_invariants(&x)?;
    let at0 = got.values().next().cloned().unwrap_or_default();
    let mut failures = Vec::new();
    if at0 != AbGroupInvariants::free(1) || oracle[0] != at0 || !ab.complete {
        failures.push(format!("{at0:?}, oracle {:?}", oracle[0]));
    }
    Ok(Outcome::new(9, &failures, 1, "free crossed C2-module on t abelianizes to ℤ".into()))
}

/// `c = τ(x)⁻¹ r(c) τ(y)` read back in the source, for every arrow.
pub fn reconstruction(exec: Exec) -> Result<Outcome> {
    let cat: Vec<(String, Arc<FinGroupoid>)> =
        catalog::groupoid_catalog().into_iter().filter(|(_, g)| g.is_connected()).map(|(n, g)| (n, Arc::new(g))).collect();
    let per = par::map_with(exec, &cat, |(n, g)| -> Result<(usize, Vec<String>)> {
        let mut f = Vec::new();
        let mut cases = 0;
        for x0 in 0..g.num_objects() {
            let r = spanning_tree_retraction(g, x0)?;
            for c in 0..g.num_arrows() {
                cases += 1;
                if r.reconstruct(c) != c {
                    f.push(format!("{n} at {x0}: arrow {}", g.arrow(c).id));
                }
            }
        }
        Ok((cases, f))
    });
    let mut failures = Vec::new();
    let mut cases = 0;
    for r in per {
        let (c, f) = r?;
        cases += c;
        failures.extend(f);
    }
    let mut extra = 0;
    let retract = crate::scenario::run_scenario("retract-free", &RewriteBound::default())?;
    if !retract.passed() {
        failures.push(format!("retract-free: {:?}", retract.checks));
    }
    // the table route on induced crossed modules over P × codiscrete {0,1}
    let xs: Vec<&GroupXMod> = catalog::xmod_catalog().iter().filter(|x| (2..=4).contains(&x.p.order()) && x.m.order() <= 4).collect();
    let per = par::map_with(exec, &xs, |x| -> Result<Vec<String>> { retraction_commutes(x) });
    failures.extend(collect(per)?);
    extra += xs.len() + 1;
    Ok(Outcome::new(10, &failures, cases + extra, format!("reconstruction over {} connected groupoids, retraction commutes with abelianization", cat.len())))
}

fn retraction_commutes(x: &GroupXMod) -> Result<Vec<String>> {
    let t = x.to_table();
    let g = Arc::new(FinGroupoid::group_times_codiscrete(&x.p, &names(2)));
    let src = t.base();
    let arr = (0..src.num_arrows()).map(|a| g.arrow_id(&format!("(0,{},0)", src.arrow(a).id))).collect::<Result<Vec<_>>>()?;
    let incl = GpdMorphism::new(src.clone(), g.clone(), Functor { obj: vec![0], arr })?;
    let ind = xmod_induce(&incl, &t)?;
    let Some(tab) = ind.pres.bounded_realize(&RewriteBound::default())? else {
        return Ok(vec![format!("{}: realization ran out of budget", x.name)]);
    };
    let ab = peiffer_abelianize(&ind.pres)?.module.simplify()?;
    let mut f = Vec::new();
    for x0 in 0..2 {
        let (gx, _) = retract_xmod_to_vertex(&tab, x0)?;
        if gx.m.abelian_invariants() != ab[&g.objects()[x0]] {
            f.push(format!("{} at {x0}: {:?} vs {:?}", x.name, gx.m.abelian_invariants(), ab[&g.objects()[x0]]));
        }
    }
    Ok(f)
}

pub fn d_completions(exec: Exec, bound: &RewriteBound) -> Result<Outcome> {
    let buckets = by_base();
    let mut pairs = Vec::new();
    for b in &buckets {
        for &m in b {
            for &n in b {
                pairs.push((m, n));
            }
        }
    }
    let per = par::map_with(exec, &pairs, |(m, n)| -> Result<Vec<String>> {
        let s = d_completion(m, n)?;
        let v = validate_xsq_partial(&s);
        Ok(if check_h_formula(&s) && v.is_valid() { vec![] } else { vec![format!("D({}, {}): {:?}", m.name, n.name, v.violations.first())] })
    });
    let mut failures = collect(per)?;
    let mut cases = pairs.len();
    for a in 1..=8 {
        for b in 1..=8 {
            cases += 1;
            let (ca, cb) = (FinGroup::cyclic(a), FinGroup::cyclic(b));
            let oracle = abelian_tensor(&ca.abelian_invariants(), &cb.abelian_invariants());
            match tensor_bounded(&ca, &cb, MutualActions::trivial(&ca, &cb), bound)? {
                Some(t) if t.group.is_abelian() && t.group.abelian_invariants() == oracle => {}
                other => failures.push(format!("C{a} ⊗ C{b}: {:?} vs {oracle:?}", other.map(|t| t.group.order()))),
            }
        }
    }
    let c2 = FinGroup::cyclic(2);
    let order = tensor_bounded(&c2, &c2, MutualActions::trivial(&c2, &c2), bound)?.map(|t| t.group.order());
    if order != Some(2) {
        failures.push(format!("C2 ⊗ C2 has order {order:?}"));
    }
    Ok(Outcome::new(11, &failures, cases, format!("{} completions checked pointwise, C2 ⊗ C2 of order 2", pairs.len())))
}

pub fn wedge() -> Result<Outcome> {
    let m = crate::scenario::wedge_sn_s1_module()?;
    let mut failures = Vec::new();
    match m.base() {
        ModBase::Presented(p) if p.num_objects() == 1 && p.abelian_invariants(0)? == AbGroupInvariants::free(1) => {}
        _ => failures.push("base is not the presented infinite cyclic group".into()),
    }
    let r = m.report();
    if (r.generators, r.relations) != (1, 0) {
        failures.push(format!("{} generators, {} relations", r.generators, r.relations));
    }
    Ok(Outcome::new(12, &failures, 1, "1 generator, 0 relations over presented ℤ".into()))
}

/// All twelve criteria in order.
pub fn run_all(exec: Exec) -> Result<Vec<Outcome>> {
    let b = RewriteBound::default();
    Ok(vec![
        circle(&b)?,
        unit_injectivity(exec, 200, 2)?,
        adjunctions(exec)?,
        fibre_inclusion(exec, 100, 4, &b)?,
        induced_module_oracle(exec)?,
        free_modules(exec)?,
        pushouts(exec, &b)?,
        induced_xmods(exec, &b)?,
        free_xmod_abelianization()?,
        reconstruction(exec)?,
        d_completions(exec, &b)?,
        wedge()?,
    ])
}
