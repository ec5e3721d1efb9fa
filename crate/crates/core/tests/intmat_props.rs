use gpdcalc::catalog;
use gpdcalc::fpgroup::RewriteBound;
use gpdcalc::intmat::{invariants_by_hermite, smith, IntMatrix};
use proptest::prelude::*;

#[test]
fn cayley_presentations_recover_the_group() {
    for (name, g) in catalog::groups_to_12() {
        let p = g.cayley_presentation(&g.generators()).unwrap();
        assert_eq!(p.order_bounded(&RewriteBound::default()), Some(g.order()), "{name}");
        assert_eq!(p.abelian_invariants().unwrap(), g.abelian_invariants(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smith_and_hermite_agree(rows in 0usize..6, cols in 1usize..6, cells in prop::collection::vec(-9i64..=9, 36)) {
        let m = IntMatrix::from_rows(cols, &(0..rows).map(|i| cells[i * 6..i * 6 + cols].to_vec()).collect::<Vec<_>>()).unwrap();
        let s = smith(&m).unwrap();
        prop_assert_eq!(s.invariants(), invariants_by_hermite(&m).unwrap());
        prop_assert!(s.rank() <= rows.min(cols));
        for r in m.to_rows() {
            prop_assert!(s.contains(&r).unwrap());
        }
    }
}
