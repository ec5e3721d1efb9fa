use gpdcalc::catalog::{self, xmod_catalog};
use gpdcalc::fpgroup::RewriteBound;
use gpdcalc::group::GroupMap;
use gpdcalc::groupoid::GpdMorphism;
use gpdcalc::module::{Act, ModBase};
use gpdcalc::xmod::{free_xmod, validate_xmod, xmod_induce, xmod_isomorphic, GroupXMod, XModTable};
use gpdcalc::Error;
use proptest::prelude::*;

/// Oversized realizations are refused, not answered; they count as skips.
fn realize(r: gpdcalc::Result<Option<XModTable>>) -> Option<XModTable> {
    match r {
        Ok(t) => t,
        Err(Error::TooLarge(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

fn small(x: &GroupXMod) -> bool {
    x.p.order() <= 4 && x.m.order() <= 4
}

#[test]
fn catalog_tables_validate() {
    for x in xmod_catalog() {
        assert!(x.validate().is_valid(), "{}", x.name);
        assert!(validate_xmod(&x.to_table()).is_valid(), "{}", x.name);
    }
}

#[test]
fn tables_roundtrip_through_json() {
    for x in xmod_catalog().iter().step_by(7) {
        let t = x.to_table();
        let back = XModTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}

/// `g_*(f_*M) ≅ (fg)_*M` for base maps `P -> Q -> R`.
#[test]
fn induction_composes() {
    let groups: Vec<_> = catalog::small_groups().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 4).collect();
    let b = RewriteBound::default();
    let mut checked = 0;
    for x in xmod_catalog().iter().filter(|x| small(x)).step_by(3) {
        let t = x.to_table();
        for q in &groups {
            for f in x.p.homs_to(q).into_iter().take(2) {
                let fm = GpdMorphism::from_group_hom(&x.p, q, &f).unwrap();
                let Some(once) = realize(xmod_induce(&fm, &t).unwrap().pres.bounded_realize(&b)) else { continue };
                for r in groups.iter().filter(|r| r.order() <= 2) {
                    for g in q.homs_to(r) {
                        let gm = GpdMorphism::from_group_hom(q, r, &g).unwrap();
                        let gf: GroupMap = f.iter().map(|&e| g[e as usize]).collect();
                        let direct = GpdMorphism::from_group_hom(&x.p, r, &gf).unwrap();
                        let (Some(twice), Some(whole)) = (
                            realize(xmod_induce(&gm, &once).unwrap().pres.bounded_realize(&b)),
                            realize(xmod_induce(&direct, &t).unwrap().pres.bounded_realize(&b)),
                        ) else {
                            continue;
                        };
                        assert!(xmod_isomorphic(&twice, &whole).unwrap(), "{} along {f:?} then {g:?}", x.name);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 50);
}

/// Morphisms from the free crossed module on `c ↦ ω` are the choices of
/// `m` with `μ(m) = ω`.
#[test]
fn free_crossed_module_universal_property() {
    for x in xmod_catalog().iter().filter(|x| x.p.order() <= 6) {
        let t = x.to_table();
        let base = t.base().clone();
        for w in 0..base.num_arrows() {
            let free = free_xmod(ModBase::Fin(base.clone()), &[("c".into(), Act::Arrow(w))]).unwrap();
            let maps = free.homs_to(&t, 100_000).unwrap();
            let expected = (0..x.m.order()).filter(|&m| t.mu(0, m) == w).count();
            assert_eq!(maps.len(), expected, "{} at {}", x.name, base.arrow(w).id);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induced_peiffer_relators_die_under_boundary(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let xs: Vec<&GroupXMod> = xmod_catalog().iter().filter(|x| small(x)).collect();
        let x = xs[i.index(xs.len())];
        let groups: Vec<_> = catalog::small_groups().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 6).collect();
        let q = &groups[j.index(groups.len())];
        let hs = x.p.homs_to(q);
        let f = &hs[k.index(hs.len())];
        let fm = GpdMorphism::from_group_hom(&x.p, q, f).unwrap();
        let ind = xmod_induce(&fm, &x.to_table()).unwrap();
        prop_assert!(ind.pres.peiffer_boundaries_vanish().unwrap());
        if let Some(t) = realize(ind.pres.bounded_realize(&RewriteBound::default())) {
            prop_assert!(validate_xmod(&t).is_valid());
        }
    }
}
