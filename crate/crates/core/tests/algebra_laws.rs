//! Exhaustive law checks on small tabulated effect algebras.

use effect_logic::algebra::{
    boolean_powerset, coproduct, downset, enumerate_homomorphisms, is_homomorphism, mo_free,
    opposite, product, AxiomReport, Elem, FiniteEffectAlgebra, DEFAULT_HOM_CAP,
};
use effect_logic::classical::{predicate_algebra, FinSet};
use proptest::prelude::*;

fn zoo() -> Vec<(String, FiniteEffectAlgebra)> {
    let p = |n| boolean_powerset(n).unwrap();
    vec![
        ("MO(0)".into(), mo_free(0)),
        ("MO(1)".into(), mo_free(1)),
        ("MO(3)".into(), mo_free(3)),
        ("P(0)".into(), p(0)),
        ("P(3)".into(), p(3)),
        ("P(4)".into(), p(4)),
        ("MO(1) x P(2)".into(), product(&mo_free(1), &p(2))),
        ("MO(2) + P(2)".into(), coproduct(&mo_free(2), &p(2))),
        ("down(P(3), {0,1})".into(), downset(&p(3), 0b011).unwrap()),
        ("down(MO(2) x P(1), (a0,{0}))".into(), {
            let e = product(&mo_free(2), &p(1));
            let x = e.find("(a0,{0})").unwrap();
            downset(&e, x).unwrap()
        }),
        ("MO(2)^op".into(), opposite(&mo_free(2))),
        (
            "Pred(3)".into(),
            predicate_algebra(&FinSet::new(3)).unwrap(),
        ),
    ]
}

/// `x ≤ y` computed straight from the table.
fn below(ea: &FiniteEffectAlgebra, x: Elem, y: Elem) -> bool {
    ea.elements().any(|z| ea.sum(x, z) == Some(y))
}

#[test]
fn zoo_passes_the_axiom_checker() {
    for (name, ea) in zoo() {
        assert_eq!(ea.check_axioms(), AxiomReport::Pass, "{name}");
    }
}

#[test]
fn cancellation_and_positivity() {
    for (name, ea) in zoo() {
        for x in ea.elements() {
            for y in ea.elements() {
                if ea.sum(x, y) == Some(ea.zero()) {
                    assert!(
                        x == ea.zero() && y == ea.zero(),
                        "{name}: positivity at {x}, {y}"
                    );
                }
                for z in ea.elements() {
                    if y != z {
                        let (a, b) = (ea.sum(x, y), ea.sum(x, z));
                        assert!(
                            a.is_none() || a != b,
                            "{name}: cancellation at {x}, {y}, {z}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn order_is_a_bounded_partial_order_reversed_by_perp() {
    for (name, ea) in zoo() {
        for x in ea.elements() {
            assert!(ea.leq(x, x), "{name}");
            assert!(ea.leq(ea.zero(), x) && ea.leq(x, ea.one()), "{name}");
            for y in ea.elements() {
                assert_eq!(ea.leq(x, y), below(&ea, x, y), "{name}: leq({x}, {y})");
                if ea.leq(x, y) {
                    assert!(ea.leq(ea.perp(y), ea.perp(x)), "{name}");
                    if ea.leq(y, x) {
                        assert_eq!(x, y, "{name}: antisymmetry");
                    }
                    for z in ea.elements() {
                        if ea.leq(y, z) {
                            assert!(ea.leq(x, z), "{name}: transitivity");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn minus_and_owedge() {
    for (name, ea) in zoo() {
        for x in ea.elements() {
            assert_eq!(ea.minus(x, ea.zero()), Some(x), "{name}");
            assert_eq!(ea.minus(ea.one(), x), Some(ea.perp(x)), "{name}");
            for y in ea.elements() {
                let d = ea.minus(x, y);
                assert_eq!(
                    d.is_some(),
                    ea.leq(y, x),
                    "{name}: minus({x}, {y}) definedness"
                );
                if let Some(d) = d {
                    assert_eq!(ea.sum(y, d), Some(x), "{name}");
                }
                let w = ea.owedge(x, y);
                assert_eq!(
                    w.is_some(),
                    ea.sum(ea.perp(x), ea.perp(y)).is_some(),
                    "{name}"
                );
                if let Some(w) = w {
                    assert_eq!(Some(ea.perp(w)), ea.sum(ea.perp(x), ea.perp(y)), "{name}");
                }
            }
        }
    }
}

#[test]
fn construction_sizes() {
    let (a, b) = (mo_free(2), boolean_powerset(2).unwrap());
    assert_eq!(product(&a, &b).len(), a.len() * b.len());
    assert_eq!(coproduct(&a, &b).len(), a.len() + b.len() - 2);
    let op = opposite(&opposite(&a));
    assert!(a
        .elements()
        .all(|x| a.elements().all(|y| op.sum(x, y) == a.sum(x, y))));
}

#[test]
fn coproduct_only_adds_within_a_summand() {
    let c = coproduct(&mo_free(1), &mo_free(1));
    let l = c.find("l(a0)").unwrap();
    let r = c.find("r(a0)").unwrap();
    assert_eq!(c.sum(l, r), None);
    assert_eq!(c.sum(l, c.find("l(a0')").unwrap()), Some(c.one()));
}

#[test]
fn homomorphisms_between_powersets_preserve_unions_and_intersections() {
    for n in 0..=3 {
        for m in 0..=2 {
            let (src, tgt) = (boolean_powerset(n).unwrap(), boolean_powerset(m).unwrap());
            for h in enumerate_homomorphisms(&src, &tgt, DEFAULT_HOM_CAP).unwrap() {
                for u in src.elements() {
                    for v in src.elements() {
                        assert_eq!(h.apply(u | v), h.apply(u) | h.apply(v));
                        assert_eq!(h.apply(u & v), h.apply(u) & h.apply(v));
                    }
                }
            }
        }
    }
}

#[test]
fn hom_enumeration_matches_brute_force() {
    let cases = [
        (mo_free(1), boolean_powerset(2).unwrap()),
        (boolean_powerset(2).unwrap(), mo_free(1)),
        (mo_free(2), mo_free(1)),
        (opposite(&mo_free(1)), coproduct(&mo_free(1), &mo_free(0))),
    ];
    for (src, tgt) in cases {
        let mut expected = Vec::new();
        let total = tgt.len().pow(src.len() as u32);
        for code in 0..total {
            let mut c = code;
            let map: Vec<Elem> = (0..src.len())
                .map(|_| {
                    let v = c % tgt.len();
                    c /= tgt.len();
                    v
                })
                .collect();
            if is_homomorphism(&src, &tgt, &map) {
                expected.push(map);
            }
        }
        let mut got: Vec<Vec<Elem>> = enumerate_homomorphisms(&src, &tgt, DEFAULT_HOM_CAP)
            .unwrap()
            .into_iter()
            .map(|h| h.map)
            .collect();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }
}

#[test]
fn mo_states_are_free() {
    // A two-valued state of MO(n) picks 0 or 1 for each generator independently.
    for n in 0..=3 {
        let homs = enumerate_homomorphisms(&mo_free(n), &mo_free(0), DEFAULT_HOM_CAP).unwrap();
        assert_eq!(homs.len(), 1 << n);
    }
}

proptest! {
    #[test]
    fn downsets_of_powersets_are_powersets(n in 1usize..=4, seed in any::<u32>()) {
        let p = boolean_powerset(n).unwrap();
        let x = seed as usize % p.len();
        let d = downset(&p, x).unwrap();
        prop_assert_eq!(d.len(), 1 << x.count_ones());
        prop_assert!(d.check_axioms().is_pass());
        let homs = enumerate_homomorphisms(&d, &mo_free(0), DEFAULT_HOM_CAP).unwrap();
        prop_assert_eq!(homs.len(), x.count_ones() as usize);
    }

    #[test]
    fn products_of_mos_pass(a in 0usize..=2, b in 0usize..=2) {
        let e = product(&mo_free(a), &mo_free(b));
        prop_assert!(e.check_axioms().is_pass());
        prop_assert!(coproduct(&mo_free(a), &mo_free(b)).check_axioms().is_pass());
        prop_assert!(opposite(&e).check_axioms().is_pass());
    }
}
