use std::sync::Arc;

use gpdcalc::battery::random_groupoid;
use gpdcalc::groupoid::{normal_closure, pullback_groupoid, quotient_groupoid, spanning_tree_retraction, validate_groupoid, FinGroupoid, ObjMap};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn groupoid(seed: u64, arrows: usize) -> Arc<FinGroupoid> {
    Arc::new(random_groupoid(&mut ChaCha8Rng::seed_from_u64(seed), arrows, 5))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_constructions_validate(seed in any::<u64>()) {
        let g = groupoid(seed, 40);
        prop_assert!(validate_groupoid(&g).is_valid());
    }

    #[test]
    fn pullback_preserves_hom_sets(seed in any::<u64>(), j in 1usize..4) {
        let g = groupoid(seed, 30);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let map: Vec<usize> = (0..j).map(|_| rng.gen_range(0..g.num_objects())).collect();
        let dom: Vec<String> = (0..j).map(|i| format!("j{i}")).collect();
        let u = ObjMap::new(dom, g.objects().to_vec(), map.clone()).unwrap();
        let (h, proj) = pullback_groupoid(&u, &g).unwrap();
        prop_assert!(validate_groupoid(&h).is_valid());
        for a in 0..j {
            for b in 0..j {
                let (x, y) = (h.object_id(&u.domain[a]).unwrap(), h.object_id(&u.domain[b]).unwrap());
                prop_assert_eq!(h.hom(x, y).len(), g.hom(map[a], map[b]).len());
            }
        }
        for p in 0..h.num_arrows() {
            for q in 0..h.num_arrows() {
                if let Some(c) = h.compose(p, q) {
                    prop_assert_eq!(Some(proj.arr[c]), g.compose(proj.arr[p], proj.arr[q]));
                }
            }
        }
    }

    #[test]
    fn quotient_kills_exactly_the_closure(seed in any::<u64>(), picks in proptest::collection::vec(any::<usize>(), 0..3)) {
        let g = groupoid(seed, 24);
        let loops: Vec<usize> = (0..g.num_arrows()).filter(|&a| g.src(a) == g.tgt(a)).collect();
        let r: Vec<usize> = picks.iter().map(|p| loops[p % loops.len()]).collect();
        let n = normal_closure(&g, &r).unwrap();
        prop_assert!(n.validate().is_valid());
        let q = quotient_groupoid(&n).unwrap();
        prop_assert!(validate_groupoid(&q.target).is_valid());
        for a in 0..g.num_arrows() {
            let killed = q.target.is_identity(q.arr(a));
            let member = n.subgroups[g.src(a)].contains(&a);
            prop_assert_eq!(killed, member);
        }
        for a in r {
            prop_assert!(n.subgroups[g.src(a)].contains(&a));
        }
    }

    #[test]
    fn retraction_reconstructs_every_arrow(seed in any::<u64>()) {
        let g = groupoid(seed, 40);
        if g.is_connected() {
            for x0 in 0..g.num_objects() {
                let r = spanning_tree_retraction(&g, x0).unwrap();
                for c in 0..g.num_arrows() {
                    prop_assert_eq!(r.reconstruct(c), c);
                }
            }
        } else {
            prop_assert!(spanning_tree_retraction(&g, 0).is_err());
        }
    }
}

#[test]
fn codiscrete_times_group_is_connected_and_validates() {
    for (_, g) in gpdcalc::catalog::groups_to_12() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let h = FinGroupoid::group_times_codiscrete(&g, &names);
        assert!(h.is_connected());
        assert_eq!(h.num_arrows(), 9 * g.order());
        assert!(validate_groupoid(&h).is_valid());
    }
}
