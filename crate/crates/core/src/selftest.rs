//! Seeded randomized self-checks, a quick smoke version of the test suite.

use std::fmt;

use crate::classical::FinSet;
use crate::linalg::eigen_hermitian;
use crate::quantum::{self, QPredicate};
use crate::sample;
use crate::stochastic;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    /// Largest deviation seen over all cases.
    pub worst: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.worst <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} cases, max deviation {:.1e}, tolerance {:.0e})",
            self.name,
            if self.passed() { "pass" } else { "FAIL" },
            self.cases,
            self.worst,
            self.tolerance
        )
    }
}

fn batch(name: &'static str, cases: usize, tolerance: f64, mut case: impl FnMut() -> f64) -> Check {
    let worst = (0..cases).map(|_| case()).fold(0.0, f64::max);
    Check {
        name,
        cases,
        worst,
        tolerance,
    }
}

/// Runs every check with `cases` random instances drawn from `seed`.
pub fn run(seed: u64, cases: usize) -> Vec<Check> {
    let mut rng = sample::rng(seed);
    let mut checks = Vec::new();

    checks.push(batch("born rule, direct vs spectral", cases, 1e-8, || {
        let n = 1 + (sample::dyadic(&mut rng) * 7.0) as usize;
        let x = sample::pure_state(&mut rng, n);
        let p = sample::predicate(&mut rng, n);
        let direct = quantum::born_probability(&x, &p).map_or(f64::INFINITY, |v| v.value());
        let eig = eigen_hermitian(p.first().matrix()).expect("effects are Hermitian");
        let spectral: f64 = eig
            .values
            .iter()
            .enumerate()
            .map(|(k, &l)| {
                let v = eig.vectors.column(k);
                let amp = (&v.adjoint() * x.vector())[(0, 0)];
                l * amp.norm_sqr()
            })
            .sum();
        (direct - spectral).abs()
    }));

    checks.push(batch("quantum char law", cases, 1e-8, || {
        let n = 1 + (sample::dyadic(&mut rng) * 4.0) as usize;
        let p = sample::predicate(&mut rng, n);
        let c = quantum::char_sqrt(&p).expect("predicates have square roots");
        let back = quantum::substitute(&c, &quantum::omega_predicate(n)).expect("shapes agree");
        back.max_abs_diff(&p)
    }));

    checks.push(batch("stochastic char law", cases, 1e-8, || {
        let x = FinSet::new(1 + (sample::dyadic(&mut rng) * 5.0) as usize);
        let p = sample::fuzzy(&mut rng, &x);
        let back = stochastic::substitute(&stochastic::char_map(&p), &stochastic::omega(&x))
            .expect("shapes agree");
        back.max_abs_diff(&p)
    }));

    checks.push(batch(
        "density measurement keeps trace",
        cases,
        1e-9,
        || {
            let n = 1 + (sample::dyadic(&mut rng) * 4.0) as usize;
            let p = sample::predicate(&mut rng, n);
            let rho = sample::density(&mut rng, n);
            let out = quantum::measure_density(&p, &rho).expect("valid inputs");
            (out.matrix().trace().re - 1.0).abs()
        },
    ));

    checks.push(batch("Reichenbach identity", cases, 1e-12, || {
        let x = FinSet::new(1 + (sample::dyadic(&mut rng) * 5.0) as usize);
        let phi = sample::fuzzy(&mut rng, &x);
        let psi = sample::fuzzy(&mut rng, &x);
        let lhs = stochastic::test_then(&phi, &psi).expect("same carrier");
        let rhs = phi
            .multiply(&psi.complement())
            .expect("same carrier")
            .complement();
        lhs.max_abs_diff(&rhs)
    }));

    checks.push(batch("quantum substitution composes", cases, 1e-8, || {
        let (a, b, c) = (1, 2, 3);
        let f = sample::isometry(&mut rng, b, a);
        let g = sample::isometry(&mut rng, c, b);
        let q: QPredicate = sample::predicate(&mut rng, c);
        let gf = f.then(&g).expect("shapes agree");
        let lhs = quantum::substitute(&gf, &q).expect("shapes agree");
        let rhs = quantum::substitute(&f, &quantum::substitute(&g, &q).expect("shapes agree"))
            .expect("shapes agree");
        lhs.max_abs_diff(&rhs)
    }));

    checks.push(batch(
        "eigendecomposition reconstructs",
        cases,
        1e-9,
        || {
            let n = 1 + (sample::dyadic(&mut rng) * 7.0) as usize;
            let h = sample::hermitian(&mut rng, n);
            let eig = eigen_hermitian(&h).expect("Hermitian input");
            eig.reconstruct().max_abs_diff(&h) / h.frobenius_norm().max(1.0)
        },
    ));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes_and_is_deterministic() {
        let a = run(7, 20);
        assert!(a.iter().all(Check::passed), "{a:?}");
        assert_eq!(a, run(7, 20));
    }
}
