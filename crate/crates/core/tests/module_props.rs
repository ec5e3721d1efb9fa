use std::collections::BTreeSet;
use std::sync::Arc;

use gpdcalc::battery::random_groupoid;
use gpdcalc::catalog;
use gpdcalc::groupoid::FinGroupoid;
use gpdcalc::intmat::AbGroupInvariants;
use gpdcalc::module::{cyclic_modules, free_module, group_morphism, module_homs, module_induce, module_pullback, validate_module, ModulePres};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn induction_is_left_adjoint_to_pullback_on_small_groups() {
    let gs: Vec<_> = catalog::oracle_groups().into_iter().filter(|(_, g)| g.order() <= 4).collect();
    let mut checked = 0;
    for (_, g) in &gs {
        for (_, h) in &gs {
            for f in g.homs_to(h) {
                let v = group_morphism(g, h, &f).unwrap();
                for m in cyclic_modules(g, &[2, 3]) {
                    let m = m.to_gpd_module().unwrap();
                    let ind = module_induce(&v, &m).unwrap();
                    for n in cyclic_modules(h, &[2, 4]) {
                        let n = n.to_gpd_module().unwrap();
                        let direct: BTreeSet<_> = module_homs(&m.to_presentation(), &module_pullback(&v, &n).unwrap(), 100_000).unwrap().into_iter().collect();
                        let through = module_homs(&ind.pres, &n, 100_000).unwrap();
                        let restricted: BTreeSet<Vec<Vec<i64>>> = through.iter().map(|x| ind.unit.iter().map(|&k| x[k].clone()).collect()).collect();
                        assert_eq!(restricted, direct);
                        assert_eq!(restricted.len(), through.len());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn unit_generators_sit_over_the_image_object() {
    for (_, g) in catalog::adjunction_catalog() {
        let g = Arc::new(g);
        let t = Arc::new(FinGroupoid::codiscrete(&["p".to_string(), "q".to_string()]));
        let m = gpdcalc::module::GpdModule::trivial_action(g.clone(), 5);
        for f in gpdcalc::groupoid::homs(&g, &t, None, 1000).unwrap() {
            let v = gpdcalc::groupoid::GpdMorphism::new(g.clone(), t.clone(), f).unwrap();
            let ind = module_induce(&v, &m).unwrap();
            for (i, (x, _)) in m.generator_list().into_iter().enumerate() {
                let e = &ind.pres.generators()[ind.unit[i]];
                assert_eq!(e.at, v.obj(x));
                let id_arrow = &t.arrow(t.identity(v.obj(x))).id;
                assert!(e.id.ends_with(&format!(",{id_arrow})")), "{}", e.id);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn free_module_rank_counts_arrows(seed in any::<u64>(), b in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = Arc::new(random_groupoid(&mut rng, 24, 3));
        let basis: Vec<(String, usize)> = (0..b).map(|i| (format!("b{i}"), rng.gen_range(0..q.num_objects()))).collect();
        let inv = free_module(&basis, &q).unwrap().pres.simplify().unwrap();
        for y in 0..q.num_objects() {
            let rank: usize = basis.iter().map(|(_, x)| q.hom(*x, y).len()).sum();
            prop_assert_eq!(&inv[&q.objects()[y]], &AbGroupInvariants::free(rank));
        }
    }

    #[test]
    fn presentations_roundtrip_through_json(seed in any::<u64>(), n in 0i64..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Arc::new(random_groupoid(&mut rng, 20, 3));
        let m = gpdcalc::module::GpdModule::trivial_action(g.clone(), n);
        prop_assert!(validate_module(&m).is_valid());
        let p = m.to_presentation();
        let back = ModulePres::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(back.simplify().unwrap(), p.simplify().unwrap());
        let text = serde_json::to_string(&p.to_json()).unwrap();
        prop_assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    }
}
