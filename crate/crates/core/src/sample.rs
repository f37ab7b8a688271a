//! Random instances for property checks and the `selftest` command.
//!
//! All generators take a caller-supplied RNG; [`rng`] gives a seeded
//! ChaCha stream so batches are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::{BoolPredicate, FinMap, FinSet};
use crate::linalg::{Complex64, ComplexMatrix, HermitianEigen};
use crate::quantum::{DensityMatrix, Effect, Isometry, PureState, QPredicate};
use crate::stochastic::{Distribution, FuzzyPredicate, StochasticMap};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn bool_predicate<R: Rng>(rng: &mut R, carrier: &FinSet) -> BoolPredicate {
    let members = (0..carrier.size()).map(|_| rng.gen_bool(0.5)).collect();
    BoolPredicate::from_members(carrier.clone(), members).expect("length matches")
}

pub fn fin_map<R: Rng>(rng: &mut R, source: &FinSet, target: &FinSet) -> FinMap {
    let table = (0..source.size())
        .map(|_| rng.gen_range(0..target.size()))
        .collect();
    FinMap::new(source.clone(), target.clone(), table).expect("images in range")
}

pub fn fuzzy<R: Rng>(rng: &mut R, carrier: &FinSet) -> FuzzyPredicate {
    let values = (0..carrier.size()).map(|_| rng.gen::<f64>()).collect();
    FuzzyPredicate::new(carrier.clone(), values).expect("values in [0, 1]")
}

/// Values on the grid `k / 64`, so sums and scalings by dyadic scalars are exact.
pub fn dyadic_fuzzy<R: Rng>(rng: &mut R, carrier: &FinSet) -> FuzzyPredicate {
    let values = (0..carrier.size()).map(|_| dyadic(rng)).collect();
    FuzzyPredicate::new(carrier.clone(), values).expect("values in [0, 1]")
}

pub fn dyadic<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0..=64) as f64 / 64.0
}

pub fn distribution<R: Rng>(rng: &mut R, carrier: &FinSet) -> Distribution {
    let raw: Vec<f64> = (0..carrier.size())
        .map(|_| rng.gen::<f64>() + 1e-3)
        .collect();
    let total: f64 = raw.iter().sum();
    Distribution::new(
        carrier.clone(),
        raw.into_iter().map(|w| w / total).collect(),
    )
    .expect("normalized")
}

pub fn stochastic_map<R: Rng>(rng: &mut R, source: &FinSet, target: &FinSet) -> StochasticMap {
    let rows = (0..source.size())
        .map(|_| distribution(rng, target))
        .collect();
    StochasticMap::new(source.clone(), target.clone(), rows).expect("rows over target")
}

fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn complex_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| complex(rng)).collect();
    ComplexMatrix::from_vec(rows, cols, data).expect("sizes agree")
}

pub fn hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    complex_matrix(rng, n, n).hermitian_part()
}

/// Orthonormalized random columns: an `m x n` isometry (`m ≥ n`).
pub fn isometry<R: Rng>(rng: &mut R, m: usize, n: usize) -> Isometry {
    assert!(m >= n, "an isometry needs at least as many rows as columns");
    loop {
        let a = complex_matrix(rng, m, n);
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|j| (0..m).map(|i| a[(i, j)]).collect())
            .collect();
        let mut ok = true;
        for k in 0..n {
            let (done, rest) = cols.split_at_mut(k);
            let col = &mut rest[0];
            // two passes of modified Gram-Schmidt for orthogonality to machine precision
            for _ in 0..2 {
                for prev in done.iter() {
                    let proj: Complex64 =
                        prev.iter().zip(col.iter()).map(|(p, c)| p.conj() * c).sum();
                    for (c, p) in col.iter_mut().zip(prev) {
                        *c -= proj * p;
                    }
                }
            }
            let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            col.iter_mut().for_each(|c| *c /= norm);
        }
        if ok {
            let v = ComplexMatrix::from_fn(m, n, |i, j| cols[j][i]);
            return Isometry::new(v).expect("orthonormal columns");
        }
    }
}

pub fn unitary<R: Rng>(rng: &mut R, n: usize) -> Isometry {
    isometry(rng, n, n)
}

/// `U diag(λ) U†` with eigenvalues drawn from `[0, 1]`.
pub fn effect<R: Rng>(rng: &mut R, n: usize) -> Effect {
    let u = unitary(rng, n);
    let values: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let eig = HermitianEigen {
        values,
        vectors: u.matrix().clone(),
    };
    Effect::new(eig.reconstruct()).expect("spectrum in [0, 1]")
}

/// An effect whose eigenvalues lie in `[0, bound]`.
pub fn bounded_effect<R: Rng>(rng: &mut R, n: usize, bound: f64) -> Effect {
    let e = effect(rng, n);
    Effect::new(e.matrix().scale_real(bound)).expect("scaled spectrum in [0, 1]")
}

pub fn predicate<R: Rng>(rng: &mut R, n: usize) -> QPredicate {
    QPredicate::from_effect(effect(rng, n))
}

/// A diagonal predicate; diagonal effects commute with each other.
pub fn diagonal_predicate<R: Rng>(rng: &mut R, n: usize, bound: f64) -> QPredicate {
    let diag: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * bound).collect();
    QPredicate::from_effect(
        Effect::new(ComplexMatrix::diagonal(&diag)).expect("diagonal in [0, 1]"),
    )
}

pub fn pure_state<R: Rng>(rng: &mut R, n: usize) -> PureState {
    PureState::new(isometry(rng, n, 1).matrix().clone()).expect("unit column")
}

/// `A A† / tr(A A†)` for a random square `A`.
pub fn density<R: Rng>(rng: &mut R, n: usize) -> DensityMatrix {
    let a = complex_matrix(rng, n, n);
    let aa = &a * &a.adjoint();
    let tr = aa.trace().re;
    DensityMatrix::new(aa.scale_real(1.0 / tr)).expect("PSD with unit trace")
}
