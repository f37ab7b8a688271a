//! Tolerant law checking for concrete (possibly infinite) effect algebras.
//!
//! The classical, stochastic and quantum predicate types implement
//! [`EffectAlgebra`]; the checkers below evaluate the effect-algebra and
//! effect-module laws on sampled elements instead of whole tables.

use std::fmt;

/// Operations of an effect algebra on a concrete carrier. `zero_like` and
/// `one_like` return the bottom and top of the algebra that `self` lives in.
pub trait EffectAlgebra: Sized {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ortho_sum(&self, other: &Self) -> Option<Self>;
    fn perp(&self) -> Self;
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;
}

/// Scalar multiplication by probabilities.
pub trait EffectModule: EffectAlgebra {
    fn scale(&self, s: f64) -> Self;
}

/// Bilinear multiplication (effect monoid).
pub trait EffectMonoid: EffectAlgebra {
    fn multiply(&self, other: &Self) -> Self;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation(pub &'static str);

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "law violated: {}", self.0)
    }
}

impl std::error::Error for LawViolation {}

fn ensure(ok: bool, law: &'static str) -> Result<(), LawViolation> {
    if ok {
        Ok(())
    } else {
        Err(LawViolation(law))
    }
}

fn same_definedness<E>(a: &Option<E>, b: &Option<E>) -> bool {
    a.is_some() == b.is_some()
}

/// Effect-algebra laws on one triple.
pub fn check_triple<E: EffectAlgebra>(x: &E, y: &E, z: &E, tol: f64) -> Result<(), LawViolation> {
    let zero = x.zero_like();
    let one = x.one_like();

    let x0 = x.ortho_sum(&zero);
    ensure(x0.is_some_and(|s| s.approx_eq(x, tol)), "x + 0 = x")?;

    let xy = x.ortho_sum(y);
    let yx = y.ortho_sum(x);
    ensure(same_definedness(&xy, &yx), "commutativity (definedness)")?;
    if let (Some(a), Some(b)) = (&xy, &yx) {
        ensure(a.approx_eq(b, tol), "commutativity")?;
    }

    if let Some(left) = xy.as_ref().and_then(|s| s.ortho_sum(z)) {
        let right = y.ortho_sum(z).and_then(|s| x.ortho_sum(&s));
        ensure(
            right.is_some_and(|r| r.approx_eq(&left, tol)),
            "associativity",
        )?;
    }

    let px = x.perp();
    ensure(px.perp().approx_eq(x, tol), "x'' = x")?;
    ensure(zero.perp().approx_eq(&one, tol), "0' = 1")?;
    ensure(
        x.ortho_sum(&px).is_some_and(|s| s.approx_eq(&one, tol)),
        "x + x' = 1",
    )?;
    if let Some(s) = &xy {
        if s.approx_eq(&one, tol) {
            ensure(y.approx_eq(&px, tol), "uniqueness of x'")?;
        }
    }
    if x.ortho_sum(&one).is_some() {
        ensure(x.approx_eq(&zero, tol), "x orthogonal to 1 implies x = 0")?;
    }
    Ok(())
}

/// Effect-module laws for scalars `s`, `t` in `[0, 1]` on elements `x`, `y`.
pub fn check_module<E: EffectModule>(
    x: &E,
    y: &E,
    s: f64,
    t: f64,
    tol: f64,
) -> Result<(), LawViolation> {
    ensure(x.scale(1.0).approx_eq(x, tol), "1 * x = x")?;
    ensure(x.scale(0.0).approx_eq(&x.zero_like(), tol), "0 * x = 0")?;
    ensure(
        x.scale(s * t).approx_eq(&x.scale(t).scale(s), tol),
        "(s t) * x = s * (t * x)",
    )?;
    if s + t <= 1.0 {
        let lhs = x.scale(s + t);
        let rhs = x.scale(s).ortho_sum(&x.scale(t));
        ensure(
            rhs.is_some_and(|r| r.approx_eq(&lhs, tol)),
            "(s + t) * x = s * x + t * x",
        )?;
    }
    if let Some(xy) = x.ortho_sum(y) {
        let rhs = x.scale(s).ortho_sum(&y.scale(s));
        ensure(
            rhs.is_some_and(|r| r.approx_eq(&xy.scale(s), tol)),
            "s * (x + y) = s * x + s * y",
        )?;
    }
    ensure(
        x.one_like()
            .scale(s)
            .ortho_sum(&x.one_like().scale(1.0 - s))
            .is_some(),
        "s * 1 orthogonal to s' * 1",
    )?;
    Ok(())
}

/// Effect-monoid laws: unit, zero, distributivity over `⊕` in each argument.
pub fn check_monoid<E: EffectMonoid>(x: &E, y: &E, z: &E, tol: f64) -> Result<(), LawViolation> {
    let one = x.one_like();
    ensure(x.multiply(&one).approx_eq(x, tol), "x * 1 = x")?;
    ensure(one.multiply(x).approx_eq(x, tol), "1 * x = x")?;
    ensure(
        x.multiply(&x.zero_like()).approx_eq(&x.zero_like(), tol),
        "x * 0 = 0",
    )?;
    ensure(
        x.multiply(&y.multiply(z))
            .approx_eq(&x.multiply(y).multiply(z), tol),
        "associativity of *",
    )?;
    if let Some(yz) = y.ortho_sum(z) {
        let rhs = x.multiply(y).ortho_sum(&x.multiply(z));
        ensure(
            rhs.is_some_and(|r| r.approx_eq(&x.multiply(&yz), tol)),
            "x * (y + z) = x * y + x * z",
        )?;
        let rhs = y.multiply(x).ortho_sum(&z.multiply(x));
        ensure(
            rhs.is_some_and(|r| r.approx_eq(&yz.multiply(x), tol)),
            "(y + z) * x = y * x + z * x",
        )?;
    }
    Ok(())
}
