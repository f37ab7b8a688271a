//! Bundled scenario files against their golden outputs.

use effect_logic::scenario::{parse_scenario, run, ScenarioErrorKind};

fn check(name: &str, source: &str, golden: &str) {
    let scenario = parse_scenario(source).unwrap_or_else(|e| panic!("{name}: {e}"));
    let report = run(&scenario, None);
    assert!(!report.has_errors(), "{name}:\n{report}");
    assert_eq!(report.to_string(), golden, "{name}");
}

#[test]
fn classical_golden() {
    check(
        "classical",
        include_str!("../scenarios/classical.scn"),
        include_str!("../scenarios/classical.out"),
    );
}

#[test]
fn stochastic_golden() {
    check(
        "stochastic",
        include_str!("../scenarios/stochastic.scn"),
        include_str!("../scenarios/stochastic.out"),
    );
}

#[test]
fn polarisation_golden() {
    check(
        "polarisation",
        include_str!("../scenarios/polarisation.scn"),
        include_str!("../scenarios/polarisation.out"),
    );
}

#[test]
fn quantum_scenario_covers_every_query_kind() {
    let src = "instance quantum\n\
        let p = pred(matrix(2 2; 0.5 0; 0 0.25))\n\
        let f = isometry(matrix(2 1; 1; 0))\n\
        query born(density(ketNE), p)\n\
        query substitute(f, p)\n\
        query andthen(proj(ketNE), proj(ket1))\n\
        query then(proj(ketNE), proj(ket1))\n\
        query measure(proj(ket0), ketNE)\n\
        query orthosum(p, p)\n\
        query multiply(0.5, proj(ket0))\n\
        query comprehension(proj(ket1))\n\
        query states(2)\n\
        query axioms(coproduct(mo(1), powerset(1)))\n";
    let report = run(&parse_scenario(src).unwrap(), Some(4));
    let lines: Vec<String> = report.outcomes.iter().map(|o| o.to_string()).collect();
    assert_eq!(
        lines,
        [
            "1: born = 0.3750",
            "2: substitute = 1 1; 0.5000+0.0000i | 1 1; 0.5000+0.0000i",
            "3: andthen = 2 2; 0.2500+0.0000i 0.2500+0.0000i; 0.2500+0.0000i 0.2500+0.0000i | 2 2; 0.7500+0.0000i -0.2500+0.0000i; -0.2500+0.0000i 0.7500+0.0000i",
            "4: then = 2 2; 0.7500+0.0000i -0.2500+0.0000i; -0.2500+0.0000i 0.7500+0.0000i | 2 2; 0.2500+0.0000i 0.2500+0.0000i; 0.2500+0.0000i 0.2500+0.0000i",
            "5: measure = 4 1; 0.7071+0.0000i; 0.0000+0.0000i; 0.0000+0.0000i; 0.7071+0.0000i",
            "6: orthosum = 2 2; 1.0000+0.0000i 0.0000+0.0000i; 0.0000+0.0000i 0.5000+0.0000i | 2 2; 0.0000+0.0000i 0.0000+0.0000i; 0.0000+0.0000i 0.5000+0.0000i",
            "7: multiply = 2 2; 0.5000+0.0000i 0.0000+0.0000i; 0.0000+0.0000i 0.0000+0.0000i | 2 2; 0.5000+0.0000i 0.0000+0.0000i; 0.0000+0.0000i 1.0000+0.0000i",
            "8: comprehension = 2 1; 0.0000+0.0000i; 1.0000+0.0000i",
            "9: states = 2 (points 0, 1)",
            "10: axioms = pass",
        ]
    );
}

#[test]
fn load_time_diagnostics() {
    let ok = "instance quantum\nlet ket0 = ket(1 0)\nlet p_ket1 = proj(ket(0 1))\nquery born(ket0, p_ket1)\n";
    assert_eq!(
        run(&parse_scenario(ok).unwrap(), None).to_string(),
        "1: born = 0.000000000\n"
    );

    let err = parse_scenario("instance stochastic\nlet X = set(2)\nlet m = dist(X, 0.4, 0.5)\n")
        .unwrap_err();
    assert_eq!(err.kind, ScenarioErrorKind::Invariant);
    assert!(err.to_string().contains("sum to 0.9"), "{err}");

    let err =
        parse_scenario("instance quantum\nquery born(ket0, p)\nlet p = proj(ket1)\n").unwrap_err();
    assert_eq!(err.kind, ScenarioErrorKind::UnknownName);
    assert_eq!((err.pos.line, err.pos.col), (2, 18));
}
