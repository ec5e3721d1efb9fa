use std::sync::Arc;

use gpdcalc::battery::random_groupoid;
use gpdcalc::catalog;
use gpdcalc::colimit::check_cocartesian;
use gpdcalc::groupoid::{FinGroupoid, ObjMap};
use gpdcalc::word::{composite_pair, flatten, unflatten, universal_morphism};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn setup(seed: u64, arrows: usize, targets: usize) -> (Arc<FinGroupoid>, ObjMap, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Arc::new(random_groupoid(&mut rng, arrows, 5));
    let map = (0..g.num_objects()).map(|_| rng.gen_range(0..targets)).collect();
    let u = ObjMap::new(g.objects().to_vec(), names(targets), map).unwrap();
    (g, u, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_is_confluent(seed in any::<u64>(), len in 0usize..=8, picks in proptest::collection::vec(any::<usize>(), 16)) {
        let (g, u, mut rng) = setup(seed, 40, 2);
        let (w, _) = universal_morphism(&u, &g).unwrap();
        let start = u.map[rng.gen_range(0..g.num_objects())];
        let mut at = start;
        let mut letters = Vec::new();
        for _ in 0..len {
            let out: Vec<usize> = (0..g.num_arrows()).filter(|&a| u.map[g.src(a)] == at).collect();
            let a = out[rng.gen_range(0..out.len())];
            at = u.map[g.tgt(a)];
            letters.push(a);
        }
        let greedy = w.reduce(start, at, letters.clone()).unwrap();
        let mut it = picks.into_iter().cycle();
        let other = w.reduce_in_order(start, at, letters, |n| it.next().unwrap() % n).unwrap();
        prop_assert_eq!(greedy, other);
    }

    #[test]
    fn unit_is_injective_on_non_identities(seed in any::<u64>(), t in 1usize..=5) {
        let (g, u, _) = setup(seed, 40, t);
        let (_, unit) = universal_morphism(&u, &g).unwrap();
        let mut seen = std::collections::HashSet::new();
        for a in g.non_identity_arrows() {
            prop_assert!(!unit[a].letters.is_empty());
            prop_assert!(seen.insert(unit[a].clone()));
        }
    }

    #[test]
    fn composite_lifting_matches_iterated(seed in any::<u64>()) {
        let (g, u, mut rng) = setup(seed, 16, 3);
        let vmap = (0..3).map(|_| rng.gen_range(0..2)).collect();
        let v = ObjMap::new(names(3), names(2), vmap).unwrap();
        let (outer, composite) = composite_pair(&u, &v, &g).unwrap();
        let words = composite.words_up_to(2, 100_000).unwrap();
        for w in &words {
            let split = unflatten(&outer, w).unwrap();
            prop_assert_eq!(&flatten(&composite, &split).unwrap(), w);
        }
        for w1 in words.iter().take(20) {
            for w2 in words.iter().filter(|w2| w2.src == w1.tgt).take(20) {
                let whole = composite.word_compose(w1, w2).unwrap();
                let parts = outer.word_compose(&unflatten(&outer, w1).unwrap(), &unflatten(&outer, w2).unwrap()).unwrap();
                prop_assert_eq!(flatten(&composite, &parts).unwrap(), whole);
            }
        }
    }
}

#[test]
fn unit_is_cocartesian_on_small_instances() {
    let mut checked = 0;
    for seed in 0..12u64 {
        let (g, u, _) = setup(seed, 12, 2);
        let (w, unit) = universal_morphism(&u, &g).unwrap();
        let y = w.to_presentation();
        let psi: Vec<_> = unit.iter().map(|x| w.to_path(x)).collect();
        let battery: Vec<(String, Arc<FinGroupoid>)> = catalog::small_groups()
            .into_iter()
            .filter(|(_, h)| h.order() <= 4)
            .map(|(n, h)| (n, Arc::new(FinGroupoid::group_times_codiscrete(&h, &names(2)))))
            .chain([("disc2".to_string(), Arc::new(FinGroupoid::discrete(&names(2))))])
            .collect();
        let cert = check_cocartesian(&g, &u, &y, &psi, &battery, 1_000_000).unwrap();
        assert!(cert.passed, "seed {seed}: {:?}", cert.witness());
        checked += cert.entries.len();
    }
    assert!(checked > 0);
}
