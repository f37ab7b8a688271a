use effect_logic::algebra::laws::{check_module, check_triple};
use effect_logic::linalg::{Complex64, ComplexMatrix};
use effect_logic::quantum::{
    bifmrel_substitute, born_probability, char_sqrt, comprehension, measure_density, measure_pure,
    omega_predicate, orthosum, predicate_from_isometry, probability_multiply, projective_compose,
    substitute, substitute_effect, test_andthen_pred, test_then_pred, xi_state, DensityMatrix,
    Effect, Isometry, PureState, QPredicate,
};
use effect_logic::sample;
use effect_logic::stochastic::Probability;
use proptest::prelude::*;
use rand::Rng;

const TOL: f64 = 1e-8;

fn dims() -> impl Strategy<Value = (u64, usize, usize)> {
    (any::<u64>(), 1usize..5, 0usize..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn predicates_satisfy_the_laws((seed, n, _) in dims()) {
        let mut rng = sample::rng(seed);
        let p = QPredicate::from_effect(sample::bounded_effect(&mut rng, n, 0.5));
        let q = QPredicate::from_effect(sample::bounded_effect(&mut rng, n, 0.5));
        let r = sample::predicate(&mut rng, n);
        let (s, t) = (rng.gen::<f64>(), rng.gen::<f64>());
        prop_assert_eq!(check_triple(&p, &q, &r, TOL), Ok(()));
        prop_assert_eq!(check_triple(&r, &p, &q, TOL), Ok(()));
        prop_assert_eq!(check_module(&p, &q, s, t, TOL), Ok(()));
        prop_assert!(orthosum(&p, &q).unwrap().is_some());
    }

    #[test]
    fn substitution_functoriality((seed, a, extra) in dims(), more in 0usize..3) {
        let mut rng = sample::rng(seed);
        let (b, c) = (a + extra, a + extra + more);
        let f = sample::isometry(&mut rng, b, a);
        let g = sample::isometry(&mut rng, c, b);
        let q = sample::predicate(&mut rng, c);
        prop_assert!(substitute(&Isometry::identity(c), &q).unwrap().max_abs_diff(&q) < TOL);
        let lhs = substitute(&f.then(&g).unwrap(), &q).unwrap();
        let rhs = substitute(&f, &substitute(&g, &q).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < TOL);
    }

    #[test]
    fn substitution_preserves_structure((seed, a, extra) in dims()) {
        let mut rng = sample::rng(seed);
        let b = a + extra;
        let f = sample::isometry(&mut rng, b, a);
        let p = QPredicate::from_effect(sample::bounded_effect(&mut rng, b, 0.5));
        let q = QPredicate::from_effect(sample::bounded_effect(&mut rng, b, 0.5));
        let s = Probability::new(rng.gen::<f64>()).unwrap();
        let sub = |r: &QPredicate| substitute(&f, r).unwrap();
        prop_assert!(sub(&QPredicate::truth(b)).max_abs_diff(&QPredicate::truth(a)) < TOL);
        let sum = orthosum(&p, &q).unwrap().unwrap();
        let both = orthosum(&sub(&p), &sub(&q)).unwrap().unwrap();
        prop_assert!(sub(&sum).max_abs_diff(&both) < TOL);
        prop_assert!(sub(&probability_multiply(s, &p)).max_abs_diff(&probability_multiply(s, &sub(&p))) < TOL);
        prop_assert!(sub(&p.complement()).max_abs_diff(&sub(&p).complement()) < TOL);
    }

    #[test]
    fn omega_naturality_and_char_law((seed, a, extra) in dims()) {
        let mut rng = sample::rng(seed);
        let b = a + extra;
        let f = sample::isometry(&mut rng, b, a);
        let lhs = substitute(&f.doubled(), &omega_predicate(b)).unwrap();
        prop_assert!(lhs.max_abs_diff(&omega_predicate(a)) < TOL);
        let p = sample::predicate(&mut rng, a);
        let back = substitute(&char_sqrt(&p).unwrap(), &omega_predicate(a)).unwrap();
        prop_assert!(back.max_abs_diff(&p) < TOL);
    }

    #[test]
    fn born_rule((seed, n, _) in dims()) {
        let mut rng = sample::rng(seed);
        let x = sample::pure_state(&mut rng, n);
        let p = sample::predicate(&mut rng, n);
        let yes = born_probability(&x, &p).unwrap().value();
        let no = born_probability(&x, &p.complement()).unwrap().value();
        prop_assert!((yes + no - 1.0).abs() < TOL);
        let mixed = xi_state(&x.density()).apply(p.first()).unwrap().value();
        prop_assert!((yes - mixed).abs() < TOL);
        // measuring and then reading off the left summand gives the same number
        let y = measure_pure(&p, &x).unwrap();
        let left = born_probability(&y, &omega_predicate(n)).unwrap().value();
        prop_assert!((yes - left).abs() < TOL);
    }

    #[test]
    fn measurement_consistency((seed, n, _) in dims()) {
        let mut rng = sample::rng(seed);
        let p = sample::predicate(&mut rng, n);
        let rho = sample::density(&mut rng, n);
        let out = measure_density(&p, &rho).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-9);

        let x = sample::pure_state(&mut rng, n);
        let y = measure_pure(&p, &x).unwrap();
        let via_mixed = measure_density(&p, &x.density()).unwrap();
        prop_assert!(ComplexMatrix::outer(y.vector()).max_abs_diff(via_mixed.matrix()) < TOL);

        let big = sample::effect(&mut rng, 2 * n);
        let lhs = xi_state(&out).apply(&big).unwrap().value();
        let rhs = xi_state(&rho).apply(&substitute_effect(&char_sqrt(&p).unwrap(), &big).unwrap()).unwrap().value();
        prop_assert!((lhs - rhs).abs() < TOL);
    }

    #[test]
    fn test_operators((seed, n, _) in dims()) {
        let mut rng = sample::rng(seed);
        let p = sample::predicate(&mut rng, n);
        let q = sample::predicate(&mut rng, n);
        let and = test_andthen_pred(&p, &q).unwrap();
        let then = test_then_pred(&p, &q).unwrap();
        let expected = and.first().matrix() + p.second().matrix();
        prop_assert!(then.first().matrix().max_abs_diff(&expected) < TOL);
        let dual = test_andthen_pred(&p, &q.complement()).unwrap().complement();
        prop_assert!(then.max_abs_diff(&dual) < TOL);
        // commuting (diagonal) effects multiply
        let d1 = sample::diagonal_predicate(&mut rng, n, 1.0);
        let d2 = sample::diagonal_predicate(&mut rng, n, 1.0);
        let prod = d1.first().matrix() * d2.first().matrix();
        prop_assert!(test_andthen_pred(&d1, &d2).unwrap().first().matrix().max_abs_diff(&prod) < TOL);
    }

    #[test]
    fn comprehension_of_projections((seed, n, _) in dims(), k in 1usize..4) {
        let mut rng = sample::rng(seed);
        let m = n + k;
        let v = sample::isometry(&mut rng, m, k);
        let p = predicate_from_isometry(&v);
        prop_assert!(p.first().is_projection(TOL));
        let c = comprehension(&p).unwrap();
        prop_assert_eq!(c.matrix().shape(), (m, k));
        prop_assert!(predicate_from_isometry(&c).max_abs_diff(&p) < TOL);
        prop_assert!((p.second().matrix() * c.matrix()).frobenius_norm() < TOL);
    }

    #[test]
    fn bifmrel_matches_isometry_substitution(seed in any::<u64>(), xs in 1usize..4, extra in 0usize..3) {
        let mut rng = sample::rng(seed);
        let ys = xs + extra;
        let f = sample::isometry(&mut rng, ys, xs);
        let r = f.matrix().adjoint();
        let n = sample::effect(&mut rng, ys);
        let direct = bifmrel_substitute(&r, n.matrix()).unwrap();
        let via_isometry = substitute_effect(&f, &n).unwrap();
        prop_assert!(direct.max_abs_diff(via_isometry.matrix()) < 1e-10);
    }

    #[test]
    fn projective_measurements_compose(seed in any::<u64>(), d in 1usize..5) {
        let mut rng = sample::rng(seed);
        let u = sample::unitary(&mut rng, d);
        let projections: Vec<Effect> = (0..d)
            .map(|k| {
                let v = PureState::new(u.matrix().column(k)).unwrap();
                Effect::projector(&v)
            })
            .collect();
        let pm = projective_compose(&projections).unwrap();
        for (c, p) in pm.components.iter().zip(&projections) {
            prop_assert!(c.max_abs_diff(p.matrix()) < 1e-9);
        }
    }
}

#[test]
fn invalid_objects_are_rejected() {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    assert!(Effect::new(ComplexMatrix::diagonal(&[1.5, 0.0])).is_err());
    assert!(Effect::new(
        ComplexMatrix::from_vec(
            2,
            2,
            vec![c(0.5, 0.0), c(0.1, 0.0), c(0.2, 0.0), c(0.5, 0.0)]
        )
        .unwrap()
    )
    .is_err());
    assert!(Isometry::new(ComplexMatrix::from_real(2, 1, &[1.0, 1.0])).is_err());
    assert!(PureState::new(ComplexMatrix::from_real(2, 1, &[1.0, 1.0])).is_err());
    assert!(DensityMatrix::new(ComplexMatrix::diagonal(&[0.5, 0.6])).is_err());
    assert!(DensityMatrix::new(ComplexMatrix::diagonal(&[1.2, -0.2])).is_err());
    let e = Effect::new(ComplexMatrix::diagonal(&[0.5, 0.5])).unwrap();
    assert!(QPredicate::new(e.clone(), e.clone()).is_ok());
    assert!(QPredicate::new(e.clone(), Effect::identity(2)).is_err());
    let bad = [e.clone(), e];
    assert!(projective_compose(&bad).is_err());
}
