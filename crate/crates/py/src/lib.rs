//! Python bindings: `import effect_logic_py`.
//!
//! Matrices cross the boundary as lists of rows of Python `complex`, vectors
//! as flat lists. Library errors surface as `ValueError`.

use effect_logic::algebra::{self, FiniteEffectAlgebra};
use effect_logic::classical::FinSet;
use effect_logic::linalg::{Complex64, ComplexMatrix};
use effect_logic::{quantum, scenario, selftest, stochastic, tolerance};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_matrix(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    ComplexMatrix::from_vec(r, c, rows.into_iter().flatten().collect()).map_err(value_err)
}

fn from_matrix(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect())
        .collect()
}

/// A finite effect algebra given by its full table.
#[pyclass(name = "EffectAlgebra", frozen)]
struct PyEffectAlgebra(FiniteEffectAlgebra);

#[pymethods]
impl PyEffectAlgebra {
    /// The free effect algebra on `n` generators.
    #[staticmethod]
    fn mo(n: usize) -> Self {
        Self(algebra::mo_free(n))
    }

    #[staticmethod]
    fn powerset(n: usize) -> PyResult<Self> {
        algebra::boolean_powerset(n).map(Self).map_err(value_err)
    }

    fn product(&self, other: &Self) -> Self {
        Self(algebra::product(&self.0, &other.0))
    }

    fn coproduct(&self, other: &Self) -> Self {
        Self(algebra::coproduct(&self.0, &other.0))
    }

    fn downset(&self, x: usize) -> PyResult<Self> {
        algebra::downset(&self.0, x).map(Self).map_err(value_err)
    }

    fn opposite(&self) -> Self {
        Self(algebra::opposite(&self.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn names(&self) -> Vec<String> {
        self.0.names().to_vec()
    }

    fn find(&self, name: &str) -> Option<usize> {
        self.0.find(name)
    }

    fn sum(&self, x: usize, y: usize) -> PyResult<Option<usize>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.0.sum(x, y))
    }

    fn perp(&self, x: usize) -> PyResult<usize> {
        self.check(x)?;
        Ok(self.0.perp(x))
    }

    fn leq(&self, x: usize, y: usize) -> PyResult<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.0.leq(x, y))
    }

    /// `"pass"` or a description of the first violated law.
    fn check_axioms(&self) -> String {
        self.0.check_axioms().describe(&self.0)
    }

    fn dump(&self) -> String {
        self.0.dump()
    }
}

impl PyEffectAlgebra {
    fn check(&self, x: usize) -> PyResult<()> {
        if x < self.0.len() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("element {x} out of range")))
        }
    }
}

/// A quantum predicate `<A, I - A>` on `C^n`.
#[pyclass(name = "QPredicate", frozen)]
struct PyQPredicate(quantum::QPredicate);

#[pymethods]
impl PyQPredicate {
    #[new]
    fn new(effect: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let e = quantum::Effect::new(to_matrix(effect)?).map_err(value_err)?;
        Ok(Self(quantum::QPredicate::from_effect(e)))
    }

    /// Projection onto the line spanned by a unit vector.
    #[staticmethod]
    fn projection(amplitudes: Vec<Complex64>) -> PyResult<Self> {
        let v = quantum::PureState::from_amplitudes(&amplitudes).map_err(value_err)?;
        Ok(Self(quantum::QPredicate::projection(&v)))
    }

    #[staticmethod]
    fn truth(n: usize) -> Self {
        Self(quantum::QPredicate::truth(n))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn first(&self) -> Vec<Vec<Complex64>> {
        from_matrix(self.0.first().matrix())
    }

    fn second(&self) -> Vec<Vec<Complex64>> {
        from_matrix(self.0.second().matrix())
    }

    fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    fn orthosum(&self, other: &Self) -> PyResult<Option<Self>> {
        Ok(quantum::orthosum(&self.0, &other.0)
            .map_err(value_err)?
            .map(Self))
    }

    /// `[p?]`-diamond: `sqrt(p) q sqrt(p)`.
    fn andthen(&self, other: &Self) -> PyResult<Self> {
        quantum::test_andthen_pred(&self.0, &other.0)
            .map(Self)
            .map_err(value_err)
    }

    /// `[p?]`-box: `sqrt(p) q sqrt(p) + I - p`.
    fn then(&self, other: &Self) -> PyResult<Self> {
        quantum::test_then_pred(&self.0, &other.0)
            .map(Self)
            .map_err(value_err)
    }

    /// Substitution along an isometry `f`, given as a matrix.
    fn substitute(&self, f: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let f = quantum::Isometry::new(to_matrix(f)?).map_err(value_err)?;
        quantum::substitute(&f, &self.0)
            .map(Self)
            .map_err(value_err)
    }

    /// Post-measurement vector `sqrt(p) x` for a unit vector `x`.
    fn measure(&self, amplitudes: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        let x = quantum::PureState::from_amplitudes(&amplitudes).map_err(value_err)?;
        let y = quantum::measure_pure(&self.0, &x).map_err(value_err)?;
        Ok(y.vector().entries().to_vec())
    }

    fn __repr__(&self) -> String {
        format!("QPredicate({})", self.0.first().matrix().to_literal_line(6))
    }
}

/// Probability of `p` in the pure state with the given amplitudes.
#[pyfunction]
fn born(amplitudes: Vec<Complex64>, p: &PyQPredicate) -> PyResult<f64> {
    let x = quantum::PureState::from_amplitudes(&amplitudes).map_err(value_err)?;
    quantum::born_probability(&x, &p.0)
        .map(|v| v.value())
        .map_err(value_err)
}

/// Expected value of a fuzzy predicate under a distribution.
#[pyfunction]
fn expectation(weights: Vec<f64>, predicate: Vec<f64>) -> PyResult<f64> {
    let x = FinSet::new(weights.len());
    let m = stochastic::Distribution::new(x.clone(), weights).map_err(value_err)?;
    let p = stochastic::FuzzyPredicate::new(x, predicate).map_err(value_err)?;
    stochastic::xi_state(&m)
        .apply(&p)
        .map(|v| v.value())
        .map_err(value_err)
}

/// Stochastic `[p?]`-box, `1 - p(1 - q)` pointwise.
#[pyfunction]
fn fuzzy_then(p: Vec<f64>, q: Vec<f64>) -> PyResult<Vec<f64>> {
    let x = FinSet::new(p.len());
    let p = stochastic::FuzzyPredicate::new(x.clone(), p).map_err(value_err)?;
    let q = stochastic::FuzzyPredicate::new(x, q).map_err(value_err)?;
    stochastic::test_then(&p, &q)
        .map(|r| r.values().to_vec())
        .map_err(value_err)
}

/// Points of `{0..n-1}` whose evaluations are all the states of its powerset.
#[pyfunction]
fn stone_states(n: usize) -> PyResult<Vec<usize>> {
    effect_logic::classical::stone_states(n).map_err(value_err)
}

/// Runs scenario text; returns `(report, ok)`. Parse errors raise.
#[pyfunction]
#[pyo3(signature = (text, precision = None))]
fn run_scenario(text: &str, precision: Option<usize>) -> PyResult<(String, bool)> {
    let s = scenario::parse_scenario(text).map_err(value_err)?;
    let report = scenario::run(&s, precision);
    Ok((report.to_string(), !report.has_errors()))
}

#[pyfunction]
fn demo(name: &str) -> PyResult<String> {
    scenario::demo(name, None)
        .ok_or_else(|| PyValueError::new_err(format!("unknown demo `{name}`")))
}

/// Seeded randomized checks as `(name, passed, worst_deviation)` triples.
#[pyfunction]
#[pyo3(signature = (seed = 0, cases = 100))]
fn run_selftest(seed: u64, cases: usize) -> Vec<(String, bool, f64)> {
    selftest::run(seed, cases)
        .into_iter()
        .map(|c| (c.name.to_string(), c.passed(), c.worst))
        .collect()
}

#[pyfunction]
fn set_eps(value: f64) {
    tolerance::set_eps(value);
}

#[pyfunction]
fn eps() -> f64 {
    tolerance::eps()
}

#[pymodule]
fn effect_logic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEffectAlgebra>()?;
    m.add_class::<PyQPredicate>()?;
    m.add_function(wrap_pyfunction!(born, m)?)?;
    m.add_function(wrap_pyfunction!(expectation, m)?)?;
    m.add_function(wrap_pyfunction!(fuzzy_then, m)?)?;
    m.add_function(wrap_pyfunction!(stone_states, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(demo, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    m.add_function(wrap_pyfunction!(set_eps, m)?)?;
    m.add_function(wrap_pyfunction!(eps, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let rows = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)],
            vec![Complex64::new(3.0, -1.0), Complex64::new(4.0, 0.0)],
        ];
        let m = to_matrix(rows.clone()).unwrap();
        assert_eq!(m.shape(), (2, 2));
        assert_eq!(from_matrix(&m), rows);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let rows = vec![vec![Complex64::new(1.0, 0.0)], vec![]];
        assert!(to_matrix(rows).is_err());
    }
}
