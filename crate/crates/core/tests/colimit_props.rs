use std::sync::Arc;

use gpdcalc::battery::random_groupoid;
use gpdcalc::catalog;
use gpdcalc::colimit::{colimit_gpd, GpdDiagram, Realized};
use gpdcalc::fpgroup::RewriteBound;
use gpdcalc::group::{FinGroup, GroupMap};
use gpdcalc::groupoid::{homs, FinGroupoid, GpdMorphism};
use gpdcalc::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn then(f: &GroupMap, g: &GroupMap) -> GroupMap {
    f.iter().map(|&e| g[e as usize]).collect()
}

/// Maps out of a realized pushout of groups are exactly the compatible
/// pairs of maps out of the two legs.
#[test]
fn pushout_of_groups_represents_cocones() {
    let groups: Vec<FinGroup> = catalog::small_groups().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 4).collect();
    let targets: Vec<FinGroup> = catalog::small_groups().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 6).collect();
    let bound = RewriteBound::default();
    let mut realized = 0;
    for k in groups.iter().filter(|g| g.order() <= 2) {
        for g0 in &groups {
            for g1 in &groups {
                let (Some(f), Some(g)) = (k.homs_to(g0).pop(), k.homs_to(g1).pop()) else { continue };
                let d = GpdDiagram {
                    nodes: vec![
                        ("k".into(), Arc::new(FinGroupoid::from_group(k))),
                        ("a".into(), Arc::new(FinGroupoid::from_group(g0))),
                        ("b".into(), Arc::new(FinGroupoid::from_group(g1))),
                    ],
                    edges: vec![(0, 1, GpdMorphism::from_group_hom(k, g0, &f).unwrap()), (0, 2, GpdMorphism::from_group_hom(k, g1, &g).unwrap())],
                };
                let c = colimit_gpd(&d).unwrap();
                let Some(r) = Realized::of(&c.presentation, &bound) else { continue };
                realized += 1;
                for h in &targets {
                    let out = homs(&r.groupoid, &FinGroupoid::from_group(h), None, 1_000_000).unwrap().len();
                    let ha = g0.homs_to(h);
                    let hb = g1.homs_to(h);
                    let cocones = ha.iter().map(|a| hb.iter().filter(|b| then(&f, a) == then(&g, b)).count()).sum::<usize>();
                    assert_eq!(out, cocones);
                }
            }
        }
    }
    assert!(realized >= 10, "only {realized} realized pushouts");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disconnected_diagrams_are_refused(seed in any::<u64>(), extra in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nodes: Vec<(String, Arc<FinGroupoid>)> =
            (0..=extra).map(|i| (format!("n{i}"), Arc::new(random_groupoid(&mut rng, 12, 3)))).collect();
        // a self-loop on one node leaves the others isolated
        let loops = if rng.gen_bool(0.5) { vec![(0, 0, GpdMorphism::identity(nodes[0].1.clone()))] } else { vec![] };
        let d = GpdDiagram { nodes, edges: loops };
        prop_assert!(matches!(colimit_gpd(&d), Err(Error::DisconnectedDiagram(n)) if n == extra + 1));
    }
}
