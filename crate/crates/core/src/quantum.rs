//! Predicates on finite-dimensional Hilbert spaces.
//!
//! A predicate on `ℂ^n` is a pair of effects `⟨A, I - A⟩`, read as a map
//! `ℂ^n -> ℂ^n ⊕ ℂ^n`. The doubled space is `ℂ^{2n}` with the first `n`
//! coordinates holding the left (truth) component.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::algebra::laws::{EffectAlgebra, EffectModule};
use crate::error::{Error, Result};
use crate::linalg::{eigen_hermitian, kernel_basis, sqrt_psd, Complex64, ComplexMatrix, ONE, ZERO};
use crate::stochastic::Probability;
use crate::tolerance::{eps, POST_ARITH_EPS};

fn check_dim(op: &'static str, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.shape() == b.shape() {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            op,
            left: a.shape(),
            right: b.shape(),
        })
    }
}

/// A Hermitian operator `A` with `0 ≤ A ≤ I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect(ComplexMatrix);

impl Effect {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, eps())
    }

    /// Validation for operators computed by arithmetic on valid inputs.
    pub(crate) fn derived(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, POST_ARITH_EPS)
    }

    fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        let matrix = matrix.hermitian_part();
        let eig = eigen_hermitian(&matrix)?;
        if let (Some(&max), Some(&min)) = (eig.values.first(), eig.values.last()) {
            if min < -tol || max > 1.0 + tol {
                return Err(Error::NotEffect { min, max });
            }
        }
        Ok(Effect(matrix))
    }

    pub fn identity(n: usize) -> Self {
        Effect(ComplexMatrix::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        Effect(ComplexMatrix::zeros(n, n))
    }

    /// `|v⟩⟨v|` for a unit vector `v`.
    pub fn projector(v: &PureState) -> Self {
        Effect(ComplexMatrix::outer(&v.0).hermitian_part())
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    /// `I - A`.
    pub fn complement(&self) -> Effect {
        Effect(&ComplexMatrix::identity(self.dim()) - &self.0)
    }

    pub fn is_projection(&self, tol: f64) -> bool {
        (&self.0 * &self.0).approx_eq(&self.0, tol)
    }
}

/// A pair `⟨p1, p2⟩` of effects with `p1 + p2 = I`. Both components are
/// stored and the sum is validated.
#[derive(Debug, Clone, PartialEq)]
pub struct QPredicate {
    first: Effect,
    second: Effect,
}

impl QPredicate {
    pub fn new(first: Effect, second: Effect) -> Result<Self> {
        Self::with_tolerance(first, second, eps())
    }

    fn with_tolerance(first: Effect, second: Effect, tol: f64) -> Result<Self> {
        check_dim("predicate", first.matrix(), second.matrix())?;
        let deviation =
            (first.matrix() + second.matrix()).max_abs_diff(&ComplexMatrix::identity(first.dim()));
        if deviation > tol {
            return Err(Error::NotPredicate { deviation });
        }
        Ok(Self { first, second })
    }

    /// `⟨A, I - A⟩`.
    pub fn from_effect(a: Effect) -> Self {
        let second = a.complement();
        Self { first: a, second }
    }

    /// `⟨|v⟩⟨v|, I - |v⟩⟨v|⟩`.
    pub fn projection(v: &PureState) -> Self {
        Self::from_effect(Effect::projector(v))
    }

    pub fn truth(n: usize) -> Self {
        Self::from_effect(Effect::identity(n))
    }

    pub fn falsum(n: usize) -> Self {
        Self::from_effect(Effect::zero(n))
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }

    pub fn first(&self) -> &Effect {
        &self.first
    }

    pub fn second(&self) -> &Effect {
        &self.second
    }

    /// Swaps the components.
    pub fn complement(&self) -> Self {
        Self {
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }

    /// The map `ℂ^n -> ℂ^{2n}` stacking both components.
    pub fn as_matrix(&self) -> ComplexMatrix {
        self.first
            .matrix()
            .vstack(self.second.matrix())
            .expect("components share a dimension")
    }

    pub fn max_abs_diff(&self, other: &QPredicate) -> f64 {
        self.first
            .matrix()
            .max_abs_diff(other.first.matrix())
            .max(self.second.matrix().max_abs_diff(other.second.matrix()))
    }
}

/// A unit column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState(ComplexMatrix);

impl PureState {
    pub fn new(vector: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(vector, eps())
    }

    fn with_tolerance(vector: ComplexMatrix, tol: f64) -> Result<Self> {
        if vector.cols() != 1 {
            return Err(Error::ShapeMismatch {
                op: "pure state",
                left: vector.shape(),
                right: (vector.rows(), 1),
            });
        }
        let norm_sqr = vector.entries().iter().map(|z| z.norm_sqr()).sum::<f64>();
        if (norm_sqr - 1.0).abs() > tol {
            return Err(Error::NotUnitVector { norm_sqr });
        }
        Ok(PureState(vector))
    }

    pub fn from_amplitudes(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::column_vector(amplitudes))
    }

    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, size: n });
        }
        Ok(PureState(ComplexMatrix::from_fn(n, 1, |i, _| {
            if i == k {
                ONE
            } else {
                ZERO
            }
        })))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn vector(&self) -> &ComplexMatrix {
        &self.0
    }

    /// `|x⟩⟨x|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix(ComplexMatrix::outer(&self.0).hermitian_part())
    }
}

/// A PSD operator of trace one.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, eps())
    }

    fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        let matrix = matrix.hermitian_part();
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(Error::BadTrace { trace });
        }
        let eig = eigen_hermitian(&matrix)?;
        if let Some(&min) = eig.values.last() {
            if min < -tol {
                return Err(Error::NotPsd {
                    min_eigenvalue: min,
                });
            }
        }
        Ok(DensityMatrix(matrix))
    }

    /// `I / n`.
    pub fn maximally_mixed(n: usize) -> Self {
        DensityMatrix(ComplexMatrix::identity(n).scale_real(1.0 / n as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// A matrix `V` (`m x n`, `m ≥ n`) with `V† V = I_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry(ComplexMatrix);

impl Isometry {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.isometry_deviation();
        if matrix.rows() < matrix.cols() || deviation > POST_ARITH_EPS {
            return Err(Error::NotIsometry { deviation });
        }
        Ok(Isometry(matrix))
    }

    pub fn identity(n: usize) -> Self {
        Isometry(ComplexMatrix::identity(n))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    /// Dimension of the domain.
    pub fn source_dim(&self) -> usize {
        self.0.cols()
    }

    /// Dimension of the codomain.
    pub fn target_dim(&self) -> usize {
        self.0.rows()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Isometry) -> Result<Isometry> {
        Ok(Isometry(g.0.matmul(&self.0)?))
    }

    /// `f ⊕ f`.
    pub fn doubled(&self) -> Isometry {
        Isometry(self.0.direct_sum(&self.0))
    }
}

/// `p ⊕ q = ⟨p1 + q1, I - p1 - q1⟩`, defined when `p1 + q1 ≤ I`.
pub fn orthosum(p: &QPredicate, q: &QPredicate) -> Result<Option<QPredicate>> {
    check_dim("orthosum", p.first.matrix(), q.first.matrix())?;
    let sum = p.first.matrix() + q.first.matrix();
    match Effect::new(sum) {
        Ok(e) => Ok(Some(QPredicate::from_effect(e))),
        Err(Error::NotEffect { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `f†·A·f` for an isometry `f : ℂ^n -> ℂ^m` and an effect on `ℂ^m`.
pub fn substitute_effect(f: &Isometry, a: &Effect) -> Result<Effect> {
    if f.target_dim() != a.dim() {
        return Err(Error::ShapeMismatch {
            op: "substitute",
            left: f.0.shape(),
            right: a.matrix().shape(),
        });
    }
    let m = f.0.adjoint().matmul(a.matrix())?.matmul(&f.0)?;
    Effect::derived(m)
}

/// `f*(q) = ⟨f† q1 f, f† q2 f⟩`.
pub fn substitute(f: &Isometry, q: &QPredicate) -> Result<QPredicate> {
    let first = substitute_effect(f, &q.first)?;
    let second = substitute_effect(f, &q.second)?;
    QPredicate::with_tolerance(first, second, POST_ARITH_EPS)
}

/// Born rule: `x† p1 x`.
pub fn born_probability(x: &PureState, p: &QPredicate) -> Result<Probability> {
    let z = x.0.adjoint().matmul(p.first.matrix())?.matmul(&x.0)?[(0, 0)];
    if z.im.abs() >= 1e-9 {
        return Err(Error::NotHermitian {
            deviation: z.im.abs(),
        });
    }
    Probability::new(z.re.clamp(0.0, 1.0))
}

/// Characteristic map `√p = ⟨√p1, √p2⟩ : ℂ^n -> ℂ^{2n}`, an isometry.
pub fn char_sqrt(p: &QPredicate) -> Result<Isometry> {
    let top = sqrt_psd(p.first.matrix())?;
    let bottom = sqrt_psd(p.second.matrix())?;
    Isometry::new(top.vstack(&bottom)?)
}

/// `Ω` on `ℂ^n ⊕ ℂ^n`: projections onto the left and right summands.
pub fn omega_predicate(n: usize) -> QPredicate {
    let left = ComplexMatrix::from_fn(
        2 * n,
        2 * n,
        |i, j| if i == j && i < n { ONE } else { ZERO },
    );
    let right = ComplexMatrix::from_fn(
        2 * n,
        2 * n,
        |i, j| if i == j && i >= n { ONE } else { ZERO },
    );
    QPredicate {
        first: Effect(left),
        second: Effect(right),
    }
}

/// `⟨A?⟩(B) = √A B √A`.
pub fn test_andthen(a: &Effect, b: &Effect) -> Result<Effect> {
    check_dim("andthen", a.matrix(), b.matrix())?;
    let root = sqrt_psd(a.matrix())?;
    Effect::derived(&(&root * b.matrix()) * &root)
}

/// `[A?](B) = √A B √A + I - A`.
pub fn test_then(a: &Effect, b: &Effect) -> Result<Effect> {
    let inner = test_andthen(a, b)?;
    Effect::derived(&inner.0 + &a.complement().0)
}

/// Predicate-level `⟨p?⟩(q)`, acting on the truth components.
pub fn test_andthen_pred(p: &QPredicate, q: &QPredicate) -> Result<QPredicate> {
    test_andthen(&p.first, &q.first).map(QPredicate::from_effect)
}

/// Predicate-level `[p?](q)`.
pub fn test_then_pred(p: &QPredicate, q: &QPredicate) -> Result<QPredicate> {
    test_then(&p.first, &q.first).map(QPredicate::from_effect)
}

/// Pure-state measurement `x ↦ √p x` in `ℂ^{2n}`.
pub fn measure_pure(p: &QPredicate, x: &PureState) -> Result<PureState> {
    let v = char_sqrt(p)?;
    PureState::with_tolerance(v.0.matmul(&x.0)?, POST_ARITH_EPS)
}

/// Mixed-state measurement `ρ ↦ √p ρ √p†` in `ℂ^{2n}`.
pub fn measure_density(p: &QPredicate, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let v = char_sqrt(p)?;
    let out = v.0.matmul(&rho.0)?.matmul(&v.0.adjoint())?;
    DensityMatrix::with_tolerance(out, POST_ARITH_EPS)
}

/// A density matrix seen as the functional `A ↦ tr(ρ A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceState {
    rho: DensityMatrix,
}

impl TraceState {
    pub fn apply(&self, a: &Effect) -> Result<Probability> {
        self.apply_matrix(a.matrix())
    }

    /// `tr(ρ A)` for any square matrix of the right size (real part).
    pub fn apply_matrix(&self, a: &ComplexMatrix) -> Result<Probability> {
        check_dim("trace state", self.rho.matrix(), a)?;
        Probability::new(self.rho.0.matmul(a)?.trace().re)
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.rho
    }
}

pub fn xi_state(rho: &DensityMatrix) -> TraceState {
    TraceState { rho: rho.clone() }
}

/// Result of reducing an n-ary projective measurement to binary predicates.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    /// `q_i = ⟨p_i, I - p_i⟩` for `i < n - 1`.
    pub predicates: Vec<QPredicate>,
    /// The composite `(id ⊕ … ⊕ q_{n-1}) ∘ … ∘ (id ⊕ q_2) ∘ q_1` as a
    /// stacked `n·d x d` matrix.
    pub composite: ComplexMatrix,
    /// Blocks of `composite`; block `i` is outcome `i`.
    pub components: Vec<ComplexMatrix>,
}

/// Performs the binary predicates `q_1, q_2, …` one after another, each on
/// the last summand of the previous result, and checks that the composite
/// reproduces the projections.
pub fn projective_compose(projections: &[Effect]) -> Result<ProjectiveMeasurement> {
    let tol = POST_ARITH_EPS;
    let Some(first) = projections.first() else {
        return Err(Error::BadProjections("empty family".into()));
    };
    let d = first.dim();
    for (i, p) in projections.iter().enumerate() {
        if p.dim() != d {
            return Err(Error::BadProjections(format!(
                "projection {i} has dimension {}",
                p.dim()
            )));
        }
        if !p.is_projection(tol) {
            return Err(Error::BadProjections(format!(
                "element {i} is not a projection"
            )));
        }
    }
    for (i, p) in projections.iter().enumerate() {
        for (j, q) in projections.iter().enumerate().skip(i + 1) {
            if !(p.matrix() * q.matrix()).approx_eq(&ComplexMatrix::zeros(d, d), tol) {
                return Err(Error::BadProjections(format!(
                    "projections {i} and {j} are not orthogonal"
                )));
            }
        }
    }
    let total = projections
        .iter()
        .fold(ComplexMatrix::zeros(d, d), |acc, p| &acc + p.matrix());
    if !total.approx_eq(&ComplexMatrix::identity(d), tol) {
        return Err(Error::BadProjections(
            "projections do not sum to the identity".into(),
        ));
    }

    let n = projections.len();
    let predicates: Vec<QPredicate> = projections[..n.saturating_sub(1)]
        .iter()
        .map(|p| QPredicate::from_effect(p.clone()))
        .collect();

    let mut composite = ComplexMatrix::identity(d);
    for (k, q) in predicates.iter().enumerate() {
        // id^{⊕k} ⊕ q_k
        let stage = ComplexMatrix::identity(k * d).direct_sum(&q.as_matrix());
        composite = stage.matmul(&composite)?;
    }
    let components: Vec<ComplexMatrix> = (0..n).map(|i| composite.block(i * d, 0, d, d)).collect();
    for (i, (c, p)) in components.iter().zip(projections).enumerate() {
        let deviation = c.max_abs_diff(p.matrix());
        if deviation > tol {
            return Err(Error::BadProjections(format!(
                "composite component {i} deviates from the projection by {deviation:e}"
            )));
        }
    }
    Ok(ProjectiveMeasurement {
        predicates,
        composite,
        components,
    })
}

/// `p_k = ⟨k k†, I - k k†⟩` for an isometry `k`.
pub fn predicate_from_isometry(k: &Isometry) -> QPredicate {
    let kk = (&k.0 * &k.0.adjoint()).hermitian_part();
    QPredicate::from_effect(Effect(kk))
}

/// `{q}`: the kernel of `q2` as an isometry into `ℂ^n`.
pub fn comprehension(q: &QPredicate) -> Result<Isometry> {
    Ok(Isometry(kernel_basis(q.second.matrix())?))
}

/// Substitution along a dagger mono `r : X -> Y` of bifinite multirelations:
/// `r*(N)(x, x') = Σ_{y,y'} r(x,y)·N(y,y')·conj(r(x',y'))`.
///
/// `r` is given as an `|X| x |Y|` matrix with `r r† = I`.
pub fn bifmrel_substitute(r: &ComplexMatrix, n: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !n.is_square() || n.rows() != r.cols() {
        return Err(Error::ShapeMismatch {
            op: "bifmrel substitute",
            left: r.shape(),
            right: n.shape(),
        });
    }
    let deviation = (r * &r.adjoint()).max_abs_diff(&ComplexMatrix::identity(r.rows()));
    if deviation > POST_ARITH_EPS {
        return Err(Error::NotIsometry { deviation });
    }
    let (xs, ys) = (r.rows(), r.cols());
    Ok(ComplexMatrix::from_fn(xs, xs, |x, x2| {
        let mut acc = ZERO;
        for y in 0..ys {
            for y2 in 0..ys {
                acc += r[(x, y)] * n[(y, y2)] * r[(x2, y2)].conj();
            }
        }
        acc
    }))
}

/// `s • p = ⟨s·p1, I - s·p1⟩`.
pub fn probability_multiply(s: Probability, p: &QPredicate) -> QPredicate {
    QPredicate::from_effect(Effect(p.first.matrix().scale_real(s.value())))
}

/// Named vectors and matrices available to scenarios.
pub fn named_matrix(name: &str) -> Option<ComplexMatrix> {
    let h = FRAC_1_SQRT_2;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let m = match name {
        "ket0" => ComplexMatrix::from_real(2, 1, &[1.0, 0.0]),
        "ket1" => ComplexMatrix::from_real(2, 1, &[0.0, 1.0]),
        "ketNE" => ComplexMatrix::from_real(2, 1, &[h, h]),
        "ketNW" => ComplexMatrix::from_real(2, 1, &[h, -h]),
        "hadamard" => ComplexMatrix::from_real(2, 2, &[h, h, h, -h]),
        "pauliX" => ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]),
        "pauliY" => {
            ComplexMatrix::from_vec(2, 2, vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]).ok()?
        }
        "pauliZ" => ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]),
        _ => return None,
    };
    Some(m)
}

impl EffectAlgebra for QPredicate {
    fn zero_like(&self) -> Self {
        QPredicate::falsum(self.dim())
    }

    fn one_like(&self) -> Self {
        QPredicate::truth(self.dim())
    }

    fn ortho_sum(&self, other: &Self) -> Option<Self> {
        orthosum(self, other).ok().flatten()
    }

    fn perp(&self) -> Self {
        self.complement()
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }
}

impl EffectModule for QPredicate {
    fn scale(&self, s: f64) -> Self {
        QPredicate::from_effect(Effect(self.first.matrix().scale_real(s)))
    }
}
