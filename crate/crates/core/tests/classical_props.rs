use effect_logic::algebra::laws::{check_monoid, check_triple};
use effect_logic::classical::{
    char_map, comprehension, measure, omega, orthosum, predicate_algebra,
    rel_joint_monicity_counterexample, relation_image, substitute, test_andthen, test_then,
    BoolPredicate, FinMap, FinSet, TaggedElement,
};
use proptest::prelude::*;

fn subset(n: usize) -> impl Strategy<Value = BoolPredicate> {
    prop::collection::vec(any::<bool>(), n)
        .prop_map(move |m| BoolPredicate::from_members(FinSet::new(n), m).unwrap())
}

fn map(n: usize, m: usize) -> impl Strategy<Value = FinMap> {
    prop::collection::vec(0..m, n)
        .prop_map(move |t| FinMap::new(FinSet::new(n), FinSet::new(m), t).unwrap())
}

/// Two composable maps `X -> Y -> Z` and two subsets of `Z`.
fn chain() -> impl Strategy<Value = (FinMap, FinMap, BoolPredicate, BoolPredicate)> {
    (1usize..5, 1usize..5, 1usize..5)
        .prop_flat_map(|(x, y, z)| (map(x, y), map(y, z), subset(z), subset(z)))
}

proptest! {
    #[test]
    fn identity_substitution((_, _, u, _) in chain()) {
        let id = FinMap::identity(u.carrier().clone());
        prop_assert_eq!(substitute(&id, &u).unwrap(), u);
    }

    #[test]
    fn substitution_is_contravariant((f, g, u, _) in chain()) {
        let gf = f.then(&g).unwrap();
        let lhs = substitute(&gf, &u).unwrap();
        let rhs = substitute(&f, &substitute(&g, &u).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_preserves_structure((_, g, u, v) in chain()) {
        let sub = |p: &BoolPredicate| substitute(&g, p).unwrap();
        prop_assert_eq!(sub(&BoolPredicate::truth(u.carrier().clone())), BoolPredicate::truth(g.source().clone()));
        prop_assert_eq!(sub(&u.complement()), sub(&u).complement());
        prop_assert_eq!(sub(&u.and(&v).unwrap()), sub(&u).and(&sub(&v)).unwrap());
        if let Some(s) = orthosum(&u, &v).unwrap() {
            prop_assert_eq!(orthosum(&sub(&u), &sub(&v)).unwrap(), Some(sub(&s)));
        }
    }

    #[test]
    fn omega_is_natural((f, _, _, _) in chain()) {
        let lhs = substitute(&f.coproduct_map(), &omega(f.target())).unwrap();
        prop_assert_eq!(lhs, omega(f.source()));
    }

    #[test]
    fn char_law_and_measurement(u in (1usize..7).prop_flat_map(subset)) {
        let c = char_map(&u);
        prop_assert_eq!(substitute(&c, &omega(u.carrier())).unwrap(), u.clone());
        let n = u.carrier().size();
        for x in 0..n {
            prop_assert_eq!(TaggedElement::from_index(c.apply(x), n), measure(&u, x).unwrap());
        }
    }

    #[test]
    fn comprehension_classifies_maps_into_u((f, _, _, _) in chain(), bits in any::<u8>()) {
        let y = f.target().clone();
        let u = BoolPredicate::from_mask(y.clone(), u64::from(bits) & ((1 << y.size()) - 1));
        let cmp = comprehension(&u);
        let valid = substitute(&f, &u).unwrap() == BoolPredicate::truth(f.source().clone());
        match cmp.factor(&f) {
            Some(h) => {
                prop_assert!(valid);
                prop_assert_eq!(h.then(&cmp.inclusion).unwrap(), f);
            }
            None => prop_assert!(!valid),
        }
    }

    #[test]
    fn tests_are_intersection_and_implication((_, _, u, v) in chain()) {
        prop_assert_eq!(test_andthen(&u, &v).unwrap(), u.and(&v).unwrap());
        let then = test_then(&u, &v).unwrap();
        for x in 0..u.carrier().size() {
            prop_assert_eq!(then.contains(x), !u.contains(x) || v.contains(x));
        }
        prop_assert_eq!(then, u.and(&v.complement()).unwrap().complement());
    }

    #[test]
    fn subset_laws((_, _, u, v) in chain(), w in any::<u8>()) {
        let w = BoolPredicate::from_mask(u.carrier().clone(), u64::from(w) & ((1 << u.carrier().size()) - 1));
        prop_assert!(check_triple(&u, &v, &w, 0.0).is_ok());
        prop_assert!(check_monoid(&u, &v, &w, 0.0).is_ok());
    }
}

#[test]
fn predicate_algebras_pass_the_exhaustive_checker() {
    for n in 0..=4 {
        assert!(
            predicate_algebra(&FinSet::new(n))
                .unwrap()
                .check_axioms()
                .is_pass(),
            "|X| = {n}"
        );
    }
}

#[test]
fn relations_are_not_jointly_monic() {
    let w = rel_joint_monicity_counterexample();
    assert!(w.verify());
    assert_ne!(w.u, w.v);
    assert_eq!(relation_image(&w.p, &w.u), vec![1, 2]);
    assert_eq!(relation_image(&w.q, &w.v), vec![1, 2]);
}
