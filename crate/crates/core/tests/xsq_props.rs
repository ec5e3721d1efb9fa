use gpdcalc::catalog::{self, xmod_catalog};
use gpdcalc::fpgroup::RewriteBound;
use gpdcalc::xmod::GroupXMod;
use gpdcalc::xsq::{abelian_tensor, check_h_formula, d_completion, pair_morphisms, square_morphisms, tensor_bounded, validate_xsq_partial, MutualActions};
use proptest::prelude::*;

fn over_same_base() -> Vec<(&'static GroupXMod, &'static GroupXMod)> {
    let xs: Vec<&GroupXMod> = xmod_catalog().iter().filter(|x| x.p.order() <= 6 && x.m.order() <= 6).collect();
    let mut pairs = Vec::new();
    for &a in &xs {
        for &b in &xs {
            if a.p == b.p {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

#[test]
fn trivial_action_tensor_is_the_abelian_tensor_of_abelianizations() {
    let gs: Vec<_> = catalog::small_groups().into_iter().map(|(_, g)| g).collect();
    let bound = RewriteBound::default();
    let mut checked = 0;
    for m in &gs {
        for n in &gs {
            if m.order() * n.order() > 32 {
                continue;
            }
            let t = tensor_bounded(m, n, MutualActions::trivial(m, n), &bound).unwrap().expect("small tensor closes");
            assert!(t.group.is_abelian());
            assert_eq!(t.group.abelian_invariants(), abelian_tensor(&m.abelian_invariants(), &n.abelian_invariants()));
            checked += 1;
        }
    }
    assert!(checked > 20);
}

/// Square morphisms into `D(μ, ν)` are pairs of crossed-module morphisms
/// out of the two bottom edges.
#[test]
fn completion_is_right_adjoint_on_small_squares() {
    let tiny: Vec<&GroupXMod> = xmod_catalog().iter().filter(|x| x.p.order() <= 3 && x.m.order() <= 3).collect();
    let mut pairs = Vec::new();
    for &a in &tiny {
        for &b in &tiny {
            if a.p == b.p {
                pairs.push((a, b));
            }
        }
    }
    let mut nonzero = 0;
    for &(sm, sn) in &pairs {
        let s = d_completion(sm, sn).unwrap();
        for &(mu, nu) in &pairs {
            let d = d_completion(mu, nu).unwrap();
            let direct = square_morphisms(&s, &d);
            assert_eq!(direct, pair_morphisms(&s, mu, nu), "D({}, {}) against ({}, {})", sm.name, sn.name, mu.name, nu.name);
            nonzero += usize::from(direct > 1);
        }
    }
    assert!(nonzero > 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn completions_validate_and_tampering_is_caught(i in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let pairs = over_same_base();
        let (mu, nu) = pairs[i.index(pairs.len())];
        let s = d_completion(mu, nu).unwrap();
        prop_assert!(validate_xsq_partial(&s).is_valid());
        prop_assert!(check_h_formula(&s));
        let (x, y) = (a.index(s.m.order()), b.index(s.n.order()));
        if s.l.order() > 1 {
            let mut bad = s.clone();
            bad.h[x][y] = ((bad.h[x][y] as usize + 1) % s.l.order()) as u32;
            prop_assert!(!validate_xsq_partial(&bad).is_valid());
            prop_assert!(!check_h_formula(&bad));
        }
    }
}
