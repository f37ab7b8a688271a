//! Fuzzy predicates and stochastic maps over finite sets.
//!
//! A fuzzy predicate `φ : X -> [0,1]` is the stochastic map
//! `x ↦ φ(x)·inl(x) + (1-φ(x))·inr(x)`. Reals are `f64`; equality,
//! definedness of `⊕` and normalization use the tolerance from
//! [`crate::tolerance`], and results are clamped back into `[0, 1]`.

use std::fmt;

use crate::algebra::laws::{EffectAlgebra, EffectModule, EffectMonoid};
use crate::classical::{FinSet, TaggedElement};
use crate::error::{Error, Result};
use crate::tolerance::{clamp_unit, eps};

fn same_carrier(a: &FinSet, b: &FinSet) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::CarrierMismatch {
            left: a.size(),
            right: b.size(),
        })
    }
}

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        clamp_unit(value, eps())
            .map(Probability)
            .ok_or(Error::OutOfUnitInterval { value })
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Multiplication of probabilities.
    pub fn times(self, other: Probability) -> Probability {
        Probability(self.0 * other.0)
    }

    pub fn complement(self) -> Probability {
        Probability(1.0 - self.0)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A normalized finite distribution, dense over its carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    carrier: FinSet,
    weights: Vec<f64>,
}

impl Distribution {
    pub fn new(carrier: FinSet, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != carrier.size() {
            return Err(Error::CarrierMismatch {
                left: carrier.size(),
                right: weights.len(),
            });
        }
        let tol = eps();
        let weights = weights
            .into_iter()
            .map(|w| {
                if w.is_finite() && w >= -tol {
                    Ok(w.max(0.0))
                } else {
                    Err(Error::OutOfUnitInterval { value: w })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { carrier, weights })
    }

    pub fn dirac(carrier: FinSet, x: usize) -> Result<Self> {
        carrier.check_index(x)?;
        let mut weights = vec![0.0; carrier.size()];
        weights[x] = 1.0;
        Ok(Self { carrier, weights })
    }

    pub fn uniform(carrier: FinSet) -> Result<Self> {
        let n = carrier.size();
        if n == 0 {
            return Err(Error::NotNormalized { sum: 0.0 });
        }
        Ok(Self {
            weights: vec![1.0 / n as f64; n],
            carrier,
        })
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, x: usize) -> f64 {
        self.weights[x]
    }

    /// Kleisli extension: push `self` forward along `f`.
    pub fn push_forward(&self, f: &StochasticMap) -> Result<Distribution> {
        same_carrier(&self.carrier, &f.source)?;
        let mut out = vec![0.0; f.target.size()];
        for (x, &w) in self.weights.iter().enumerate() {
            for (y, &fy) in f.rows[x].weights.iter().enumerate() {
                out[y] += w * fy;
            }
        }
        Ok(Distribution {
            carrier: f.target.clone(),
            weights: out,
        })
    }

    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        max_abs_diff(&self.weights, &other.weights)
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// A row-stochastic kernel `X -> D(Y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMap {
    source: FinSet,
    target: FinSet,
    rows: Vec<Distribution>,
}

impl StochasticMap {
    pub fn new(source: FinSet, target: FinSet, rows: Vec<Distribution>) -> Result<Self> {
        if rows.len() != source.size() {
            return Err(Error::CarrierMismatch {
                left: source.size(),
                right: rows.len(),
            });
        }
        for row in &rows {
            same_carrier(&row.carrier, &target)?;
        }
        Ok(Self {
            source,
            target,
            rows,
        })
    }

    /// Rows given as raw weight vectors, each validated as a distribution.
    pub fn from_rows(source: FinSet, target: FinSet, rows: Vec<Vec<f64>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|r| Distribution::new(target.clone(), r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, rows)
    }

    /// Dirac rows `x ↦ δ_{table[x]}`.
    pub fn deterministic(source: FinSet, target: FinSet, table: &[usize]) -> Result<Self> {
        if table.len() != source.size() {
            return Err(Error::CarrierMismatch {
                left: source.size(),
                right: table.len(),
            });
        }
        let rows = table
            .iter()
            .map(|&y| Distribution::dirac(target.clone(), y))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            source,
            target,
            rows,
        })
    }

    pub fn identity(carrier: FinSet) -> Self {
        let table: Vec<usize> = (0..carrier.size()).collect();
        Self::deterministic(carrier.clone(), carrier, &table).expect("identity is well formed")
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn row(&self, x: usize) -> &Distribution {
        &self.rows[x]
    }

    pub fn entry(&self, x: usize, y: usize) -> f64 {
        self.rows[x].weights[y]
    }

    /// Kleisli composition `g ∘ self`.
    pub fn then(&self, g: &StochasticMap) -> Result<StochasticMap> {
        same_carrier(&self.target, &g.source)?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.push_forward(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(StochasticMap {
            source: self.source.clone(),
            target: g.target.clone(),
            rows,
        })
    }

    /// `f + f : X + X -> Y + Y`.
    pub fn coproduct_map(&self) -> StochasticMap {
        let (n, m) = (self.source.size(), self.target.size());
        let target = self.target.doubled();
        let rows = (0..2 * n)
            .map(|i| {
                let t = TaggedElement::from_index(i, n);
                let mut weights = vec![0.0; 2 * m];
                for (y, &w) in self.rows[t.index].weights.iter().enumerate() {
                    weights[TaggedElement {
                        side: t.side,
                        index: y,
                    }
                    .to_index(m)] = w;
                }
                Distribution {
                    carrier: target.clone(),
                    weights,
                }
            })
            .collect();
        StochasticMap {
            source: self.source.doubled(),
            target,
            rows,
        }
    }

    pub fn max_abs_diff(&self, other: &StochasticMap) -> f64 {
        if self.rows.len() != other.rows.len() {
            return f64::INFINITY;
        }
        self.rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyPredicate {
    carrier: FinSet,
    values: Vec<f64>,
}

impl FuzzyPredicate {
    pub fn new(carrier: FinSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != carrier.size() {
            return Err(Error::CarrierMismatch {
                left: carrier.size(),
                right: values.len(),
            });
        }
        let tol = eps();
        let values = values
            .into_iter()
            .map(|v| clamp_unit(v, tol).ok_or(Error::OutOfUnitInterval { value: v }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { carrier, values })
    }

    pub fn constant(carrier: FinSet, value: f64) -> Result<Self> {
        let n = carrier.size();
        Self::new(carrier, vec![value; n])
    }

    pub fn truth(carrier: FinSet) -> Self {
        let n = carrier.size();
        Self {
            carrier,
            values: vec![1.0; n],
        }
    }

    pub fn falsum(carrier: FinSet) -> Self {
        let n = carrier.size();
        Self {
            carrier,
            values: vec![0.0; n],
        }
    }

    /// Indicator of a single point.
    pub fn point(carrier: FinSet, x: usize) -> Result<Self> {
        carrier.check_index(x)?;
        let mut values = vec![0.0; carrier.size()];
        values[x] = 1.0;
        Ok(Self { carrier, values })
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, x: usize) -> f64 {
        self.values[x]
    }

    /// `1 - φ`.
    pub fn complement(&self) -> Self {
        self.map(|v| 1.0 - v)
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            carrier: self.carrier.clone(),
            values: self.values.iter().map(|&v| f(v).clamp(0.0, 1.0)).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        same_carrier(&self.carrier, &other.carrier)?;
        Ok(Self {
            carrier: self.carrier.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b).clamp(0.0, 1.0))
                .collect(),
        })
    }

    /// Pointwise product, the effect-monoid multiplication.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    /// The predicate as an explicit stochastic map `X -> X + X`.
    pub fn as_map(&self) -> StochasticMap {
        let n = self.carrier.size();
        let target = self.carrier.doubled();
        let rows = (0..n)
            .map(|x| {
                let mut weights = vec![0.0; 2 * n];
                weights[TaggedElement::left(x).to_index(n)] = self.values[x];
                weights[TaggedElement::right(x).to_index(n)] = 1.0 - self.values[x];
                Distribution {
                    carrier: target.clone(),
                    weights,
                }
            })
            .collect();
        StochasticMap {
            source: self.carrier.clone(),
            target,
            rows,
        }
    }

    pub fn max_abs_diff(&self, other: &FuzzyPredicate) -> f64 {
        max_abs_diff(&self.values, &other.values)
    }
}

impl fmt::Display for FuzzyPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", vals.join(", "))
    }
}

/// `φ ⊕ ψ`, defined when `φ(x) + ψ(x) ≤ 1 + ε` everywhere.
pub fn orthosum(p: &FuzzyPredicate, q: &FuzzyPredicate) -> Result<Option<FuzzyPredicate>> {
    same_carrier(&p.carrier, &q.carrier)?;
    let tol = eps();
    if p.values
        .iter()
        .zip(&q.values)
        .any(|(a, b)| a + b > 1.0 + tol)
    {
        return Ok(None);
    }
    p.zip(q, |a, b| a + b).map(Some)
}

/// `f*(ψ)(x) = Σ_y f(x)(y)·ψ(y)`.
pub fn substitute(f: &StochasticMap, q: &FuzzyPredicate) -> Result<FuzzyPredicate> {
    same_carrier(&f.target, &q.carrier)?;
    let values = f
        .rows
        .iter()
        .map(|row| {
            row.weights
                .iter()
                .zip(&q.values)
                .map(|(w, v)| w * v)
                .sum::<f64>()
                .clamp(0.0, 1.0)
        })
        .collect();
    Ok(FuzzyPredicate {
        carrier: f.source.clone(),
        values,
    })
}

/// `s • φ = x ↦ s·φ(x)`.
pub fn probability_multiply(s: Probability, p: &FuzzyPredicate) -> FuzzyPredicate {
    p.map(|v| s.0 * v)
}

/// `⟨φ?⟩(ψ) = φ·ψ`.
pub fn test_andthen(p: &FuzzyPredicate, q: &FuzzyPredicate) -> Result<FuzzyPredicate> {
    p.zip(q, |a, b| a * b)
}

/// `[φ?](ψ) = φ·ψ + (1 - φ)`, the Reichenbach implication.
pub fn test_then(p: &FuzzyPredicate, q: &FuzzyPredicate) -> Result<FuzzyPredicate> {
    p.zip(q, |a, b| a * b + (1.0 - a))
}

/// `{ψ} = {y : ψ(y) = 1}` with its deterministic inclusion.
#[derive(Debug, Clone, PartialEq)]
pub struct Comprehension {
    pub carrier: FinSet,
    pub indices: Vec<usize>,
    pub inclusion: StochasticMap,
}

pub fn comprehension(q: &FuzzyPredicate) -> Comprehension {
    let tol = eps();
    let indices: Vec<usize> = (0..q.carrier.size())
        .filter(|&y| q.values[y] >= 1.0 - tol)
        .collect();
    let carrier = FinSet::with_labels(
        indices
            .iter()
            .map(|&i| q.carrier.label(i).to_string())
            .collect(),
    )
    .expect("labels of a carrier are distinct");
    let inclusion = StochasticMap::deterministic(carrier.clone(), q.carrier.clone(), &indices)
        .expect("indices lie in the carrier");
    Comprehension {
        carrier,
        indices,
        inclusion,
    }
}

/// Distribution over `X + X`: `inl(x)` gets `m(x)·φ(x)`, `inr(x)` gets
/// `m(x)·(1 - φ(x))`.
pub fn measure_distribution(p: &FuzzyPredicate, m: &Distribution) -> Result<Distribution> {
    same_carrier(&p.carrier, &m.carrier)?;
    let n = m.carrier.size();
    let mut weights = vec![0.0; 2 * n];
    for x in 0..n {
        weights[TaggedElement::left(x).to_index(n)] = m.weights[x] * p.values[x];
        weights[TaggedElement::right(x).to_index(n)] = m.weights[x] * (1.0 - p.values[x]);
    }
    Ok(Distribution {
        carrier: m.carrier.doubled(),
        weights,
    })
}

/// A state seen as a predicate transformer `φ ↦ Σ m(x)·φ(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationState {
    state: Distribution,
}

impl ExpectationState {
    pub fn apply(&self, p: &FuzzyPredicate) -> Result<Probability> {
        same_carrier(&self.state.carrier, &p.carrier)?;
        let e: f64 = self
            .state
            .weights
            .iter()
            .zip(&p.values)
            .map(|(w, v)| w * v)
            .sum();
        Probability::new(e)
    }

    pub fn state(&self) -> &Distribution {
        &self.state
    }
}

pub fn xi_state(m: &Distribution) -> ExpectationState {
    ExpectationState { state: m.clone() }
}

/// Recovers the distribution behind a state functional on `carrier` from
/// its values on point predicates.
///
/// The functional must take values in `[0, 1]`, send `1` to `1` and `0` to
/// `0`, and be additive on the point decomposition of the truth predicate.
pub fn xi_inverse(carrier: &FinSet, t: impl Fn(&FuzzyPredicate) -> f64) -> Result<Distribution> {
    let tol = eps();
    let n = carrier.size();
    let weights = (0..n)
        .map(|x| {
            let w = t(&FuzzyPredicate::point(carrier.clone(), x)?);
            clamp_unit(w, tol)
                .ok_or_else(|| Error::NotAffine(format!("value {w} on point {x} outside [0, 1]")))
        })
        .collect::<Result<Vec<_>>>()?;
    let at_truth = t(&FuzzyPredicate::truth(carrier.clone()));
    if (at_truth - 1.0).abs() > tol {
        return Err(Error::NotAffine(format!(
            "value on truth is {at_truth}, expected 1"
        )));
    }
    let at_false = t(&FuzzyPredicate::falsum(carrier.clone()));
    if at_false.abs() > tol {
        return Err(Error::NotAffine(format!(
            "value on falsum is {at_false}, expected 0"
        )));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - at_truth).abs() > tol {
        return Err(Error::NotAffine(format!(
            "values on points sum to {sum} but truth maps to {at_truth}"
        )));
    }
    Distribution::new(carrier.clone(), weights)
}

/// A stochastic map, two predicates and both sides of
/// `f*(φ·ψ) ≠ f*(φ)·f*(ψ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicationWitness {
    pub f: StochasticMap,
    pub phi: FuzzyPredicate,
    pub psi: FuzzyPredicate,
    /// `f*(φ·ψ)`
    pub substituted_product: FuzzyPredicate,
    /// `f*(φ)·f*(ψ)`
    pub product_of_substitutions: FuzzyPredicate,
}

impl MultiplicationWitness {
    pub fn gap(&self) -> f64 {
        self.substituted_product
            .max_abs_diff(&self.product_of_substitutions)
    }
}

/// Substitution along a non-deterministic map does not preserve `·`:
/// a fair coin `1 -> 2` with `φ = (1, 0)`, `ψ = (0, 1)`.
pub fn multiplication_not_preserved_witness() -> MultiplicationWitness {
    let one = FinSet::new(1);
    let two = FinSet::new(2);
    let f = StochasticMap::from_rows(one, two.clone(), vec![vec![0.5, 0.5]]).expect("fair coin");
    let phi = FuzzyPredicate::new(two.clone(), vec![1.0, 0.0]).expect("indicator");
    let psi = FuzzyPredicate::new(two, vec![0.0, 1.0]).expect("indicator");
    let substituted_product =
        substitute(&f, &phi.multiply(&psi).expect("same carrier")).expect("shapes agree");
    let product_of_substitutions = substitute(&f, &phi)
        .and_then(|a| a.multiply(&substitute(&f, &psi)?))
        .expect("shapes agree");
    MultiplicationWitness {
        f,
        phi,
        psi,
        substituted_product,
        product_of_substitutions,
    }
}

/// The left predicate on `X + X`.
pub fn omega(carrier: &FinSet) -> FuzzyPredicate {
    let n = carrier.size();
    FuzzyPredicate {
        carrier: carrier.doubled(),
        values: (0..2 * n).map(|i| if i < n { 1.0 } else { 0.0 }).collect(),
    }
}

/// Characteristic map of `φ`; probabilistically it is `φ` itself.
pub fn char_map(p: &FuzzyPredicate) -> StochasticMap {
    p.as_map()
}

impl EffectAlgebra for FuzzyPredicate {
    fn zero_like(&self) -> Self {
        FuzzyPredicate::falsum(self.carrier.clone())
    }

    fn one_like(&self) -> Self {
        FuzzyPredicate::truth(self.carrier.clone())
    }

    fn ortho_sum(&self, other: &Self) -> Option<Self> {
        orthosum(self, other).ok().flatten()
    }

    fn perp(&self) -> Self {
        self.complement()
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.carrier == other.carrier && self.max_abs_diff(other) <= tol
    }
}

impl EffectModule for FuzzyPredicate {
    fn scale(&self, s: f64) -> Self {
        self.map(|v| s * v)
    }
}

impl EffectMonoid for FuzzyPredicate {
    fn multiply(&self, other: &Self) -> Self {
        FuzzyPredicate::multiply(self, other).expect("same carrier")
    }
}
