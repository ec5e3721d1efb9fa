//! Small catalogs used by the battery checks, all generated at runtime.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use crate::group::{FinGroup, GroupMap};
use crate::groupoid::FinGroupoid;
use crate::xmod::GroupXMod;

/// One group per isomorphism class of order at most 8.
pub fn small_groups() -> Vec<(String, FinGroup)> {
    let c = FinGroup::cyclic;
    vec![
        ("C1".into(), FinGroup::trivial()),
        ("C2".into(), c(2)),
        ("C3".into(), c(3)),
        ("C4".into(), c(4)),
        ("C2xC2".into(), FinGroup::direct_product(&c(2), &c(2))),
        ("C5".into(), c(5)),
        ("C6".into(), c(6)),
        ("S3".into(), FinGroup::symmetric3()),
        ("C7".into(), c(7)),
        ("C8".into(), c(8)),
        ("C2xC4".into(), FinGroup::direct_product(&c(2), &c(4))),
        ("C2xC2xC2".into(), FinGroup::direct_product(&FinGroup::direct_product(&c(2), &c(2)), &c(2))),
        ("D4".into(), FinGroup::dihedral(4)),
        ("Q8".into(), FinGroup::quaternion()),
    ]
}

/// One group per isomorphism class of order at most 12.
pub fn groups_to_12() -> Vec<(String, FinGroup)> {
    let c = FinGroup::cyclic;
    let mut out = small_groups();
    out.extend([
        ("C9".into(), c(9)),
        ("C3xC3".into(), FinGroup::direct_product(&c(3), &c(3))),
        ("C10".into(), c(10)),
        ("D5".into(), FinGroup::dihedral(5)),
        ("C11".into(), c(11)),
        ("C12".into(), c(12)),
        ("C2xC6".into(), FinGroup::direct_product(&c(2), &c(6))),
        ("D6".into(), FinGroup::dihedral(6)),
        ("A4".into(), FinGroup::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).expect("A4")),
        ("Dic3".into(), FinGroup::from_permutations(&[vec![1, 2, 0, 3, 4, 5, 6], vec![0, 2, 1, 4, 5, 6, 3]]).expect("Dic3")),
    ]);
    out
}

/// The groups of the induced-module oracle battery.
pub fn oracle_groups() -> Vec<(String, FinGroup)> {
    let keep = ["C2", "C3", "C4", "C2xC2", "S3", "Q8", "C6", "C8"];
    let all = small_groups();
    keep.iter().map(|k| all.iter().find(|(n, _)| n == k).unwrap().clone()).collect()
}

fn object_names(k: usize) -> Vec<String> {
    (0..k).map(|i| i.to_string()).collect()
}

/// Every groupoid with at most 3 objects and 12 arrows, one per
/// isomorphism class: a groupoid is determined by the multiset of its
/// components `G × codiscrete(k)`.
pub fn groupoid_catalog() -> Vec<(String, FinGroupoid)> {
    let groups = groups_to_12();
    let mut comps: Vec<(usize, usize)> = Vec::new();
    for k in 1..=3 {
        for (gi, (_, g)) in groups.iter().enumerate() {
            if k * k * g.order() <= 12 {
                comps.push((k, gi));
            }
        }
    }
    let size = |&(k, gi): &(usize, usize)| (k, k * k * groups[gi].1.order());
    let mut out = Vec::new();
    let mut pick: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        objs: usize,
        arrows: usize,
        comps: &[(usize, usize)],
        size: &dyn Fn(&(usize, usize)) -> (usize, usize),
        pick: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !pick.is_empty() {
            out.push(pick.clone());
        }
        for i in start..comps.len() {
            let (k, a) = size(&comps[i]);
            if objs + k <= 3 && arrows + a <= 12 {
                pick.push(i);
                rec(i, objs + k, arrows + a, comps, size, pick, out);
                pick.pop();
            }
        }
    }
    let mut picks = Vec::new();
    rec(0, 0, 0, &comps, &size, &mut pick, &mut picks);
    for p in picks {
        let parts: Vec<(String, FinGroupoid)> = p
            .iter()
            .map(|&i| {
                let (k, gi) = comps[i];
                let (name, g) = &groups[gi];
                let gpd = if k == 1 { FinGroupoid::from_group_at(g, "0") } else { FinGroupoid::group_times_codiscrete(g, &object_names(k)) };
                (if k == 1 { name.clone() } else { format!("{name}x{k}") }, gpd)
            })
            .collect();
        let name = parts.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join("+");
        let gpd = if parts.len() == 1 { parts[0].1.clone() } else { FinGroupoid::coproduct(&parts.iter().map(|(_, g)| g).collect::<Vec<_>>()) };
        out.push((name, gpd));
    }
    out
}

/// The fixed catalog of the adjunction batteries.
pub fn adjunction_catalog() -> Vec<(String, FinGroupoid)> {
    let c = FinGroup::cyclic;
    let one = |g: &FinGroup| FinGroupoid::from_group_at(g, "0");
    vec![
        ("1".into(), one(&FinGroup::trivial())),
        ("C2".into(), one(&c(2))),
        ("C3".into(), one(&c(3))),
        ("C4".into(), one(&c(4))),
        ("C2xC2".into(), one(&FinGroup::direct_product(&c(2), &c(2)))),
        ("S3".into(), one(&FinGroup::symmetric3())),
        ("disc2".into(), FinGroupoid::discrete(&object_names(2))),
        ("disc3".into(), FinGroupoid::discrete(&object_names(3))),
        ("codisc2".into(), FinGroupoid::codiscrete(&object_names(2))),
        ("codisc3".into(), FinGroupoid::codiscrete(&object_names(3))),
        ("C2xcodisc2".into(), FinGroupoid::group_times_codiscrete(&c(2), &object_names(2))),
        ("C3xcodisc2".into(), FinGroupoid::group_times_codiscrete(&c(3), &object_names(2))),
        ("C2+C3".into(), FinGroupoid::coproduct(&[&one(&c(2)), &one(&c(3))])),
        ("codisc2+C2".into(), FinGroupoid::coproduct(&[&FinGroupoid::codiscrete(&object_names(2)), &one(&c(2))])),
        ("C2+1+1".into(), FinGroupoid::coproduct(&[&one(&c(2)), &one(&FinGroup::trivial()), &one(&FinGroup::trivial())])),
    ]
}

/// Automorphism group with product "apply `a`, then `b`", so a
/// homomorphism into it is a right action.
struct AutGroup {
    group: FinGroup,
    maps: Vec<GroupMap>,
    index: HashMap<GroupMap, usize>,
}

fn aut_group(g: &FinGroup) -> AutGroup {
    let mut maps = g.automorphisms();
    let id: GroupMap = (0..g.order() as u32).collect();
    maps.sort();
    let pos = maps.iter().position(|m| *m == id).unwrap();
    maps.swap(0, pos);
    let index: HashMap<GroupMap, usize> = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let labels = (0..maps.len()).map(|i| format!("a{i}")).collect();
    let group = FinGroup::from_fn(labels, |a, b| index[&maps[a].iter().map(|&x| maps[b][x as usize]).collect::<GroupMap>()]);
    AutGroup { group, maps, index }
}

/// Every crossed module `μ: M -> P` with `|M|, |P| ≤ 8`, one per
/// isomorphism class. Classes are orbits of `Aut M × Aut P` on valid
/// `(action, μ)` pairs; orbits are closed under generators only.
pub fn xmod_catalog() -> &'static [GroupXMod] {
    static CAT: OnceLock<Vec<GroupXMod>> = OnceLock::new();
    CAT.get_or_init(|| {
        let groups = small_groups();
        let auts: Vec<AutGroup> = groups.iter().map(|(_, g)| aut_group(g)).collect();
        let jobs: Vec<(usize, usize)> = (0..groups.len()).flat_map(|i| (0..groups.len()).map(move |j| (i, j))).collect();
        let parts = crate::par::map_with(crate::par::Exec::default(), &jobs, |&(mi, pi)| xmods_between(&groups[mi], &groups[pi], &auts[mi], &auts[pi]));
        parts.into_iter().flatten().collect()
    })
}

fn xmods_between(m: &(String, FinGroup), p: &(String, FinGroup), am: &AutGroup, ap: &AutGroup) -> Vec<GroupXMod> {
    let (mname, mg) = m;
    let (pname, pg) = p;
    let inn: Vec<usize> = (0..mg.order()).map(|x| am.index[&(0..mg.order()).map(|n| mg.conj(n, x) as u32).collect::<GroupMap>()]).collect();
    let mgens = mg.generators();
    let pgens = pg.generators();
    let amg = am.group.generators();
    let apg = ap.group.generators();
    let chis = pg.homs_to(&am.group);
    let mus = mg.homs_to(pg);
    let valid = |chi: &GroupMap, mu: &GroupMap| {
        mgens.iter().all(|&x| chi[mu[x] as usize] as usize == inn[x])
            && mgens.iter().all(|&x| pgens.iter().all(|&g| mu[am.maps[chi[g] as usize][x] as usize] as usize == pg.conj(mu[x] as usize, g)))
    };
    let transform = |chi: &GroupMap, mu: &GroupMap, a: usize, b: usize| -> (GroupMap, GroupMap) {
        let (alpha, beta) = (&am.maps[a], &ap.maps[b]);
        let ainv = am.group.inv(a);
        let mut chi2 = vec![0u32; chi.len()];
        for g in 0..pg.order() {
            chi2[beta[g] as usize] = am.group.mul(am.group.mul(ainv, chi[g] as usize), a) as u32;
        }
        let mut mu2 = vec![0u32; mu.len()];
        for x in 0..mg.order() {
            mu2[alpha[x] as usize] = beta[mu[x] as usize];
        }
        (chi2, mu2)
    };
    let mut seen: HashSet<(GroupMap, GroupMap)> = HashSet::new();
    let mut out = Vec::new();
    for chi in &chis {
        for mu in &mus {
            if seen.contains(&(chi.clone(), mu.clone())) || !valid(chi, mu) {
                continue;
            }
            let mut queue = VecDeque::from([(chi.clone(), mu.clone())]);
            seen.insert((chi.clone(), mu.clone()));
            while let Some((c, u)) = queue.pop_front() {
                let moves = amg.iter().map(|&a| (a, 0)).chain(apg.iter().map(|&b| (0, b)));
                for (a, b) in moves {
                    let next = transform(&c, &u, a, b);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            let k = out.len();
            out.push(GroupXMod {
                p: pg.clone(),
                m: mg.clone(),
                mu: mu.clone(),
                action: chi.iter().map(|&a| am.maps[a as usize].clone()).collect(),
                name: format!("{mname}->{pname}#{k}"),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::validate_groupoid;

    #[test]
    fn group_lists_are_pairwise_non_isomorphic() {
        let gs = groups_to_12();
        assert_eq!(gs.len(), 24);
        for i in 0..gs.len() {
            for j in 0..i {
                assert!(!gs[i].1.is_isomorphic(&gs[j].1), "{} ≅ {}", gs[i].0, gs[j].0);
            }
        }
    }

    #[test]
    fn groupoid_catalog_is_within_bounds() {
        for (name, g) in groupoid_catalog() {
            assert!(g.num_objects() <= 3 && g.num_arrows() <= 12, "{name}");
            assert!(validate_groupoid(&g).is_valid(), "{name}");
        }
        for (name, g) in adjunction_catalog() {
            assert!(g.num_objects() <= 3 && g.num_arrows() <= 12, "{name}");
        }
    }

    #[test]
    fn crossed_modules_over_c2_with_fibre_c2() {
        // μ ∈ {0, id}; action must be trivial: two classes.
        let gs = small_groups();
        let c2 = &gs[1];
        let a = aut_group(&c2.1);
        assert_eq!(xmods_between(c2, c2, &a, &a).len(), 2);
    }
}
