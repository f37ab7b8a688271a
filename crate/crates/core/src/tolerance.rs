//! Numeric tolerances shared by the probabilistic and quantum instances.
//!
//! The structural tolerance can be overridden once at start-up (the CLI's
//! `--eps`); everything else reads it.

use std::sync::atomic::{AtomicU64, Ordering};

/// Default structural tolerance: equality, definedness of `⊕`, normalization.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Tolerance for values produced by chains of floating point arithmetic.
pub const POST_ARITH_EPS: f64 = 1e-8;

static EPS_BITS: AtomicU64 = AtomicU64::new(0);

/// Current structural tolerance.
pub fn eps() -> f64 {
    match EPS_BITS.load(Ordering::Relaxed) {
        0 => DEFAULT_EPS,
        bits => f64::from_bits(bits),
    }
}

/// Overrides the structural tolerance. Non-positive or non-finite values
/// restore the default.
pub fn set_eps(value: f64) {
    let bits = if value.is_finite() && value > 0.0 {
        value.to_bits()
    } else {
        0
    };
    EPS_BITS.store(bits, Ordering::Relaxed);
}

/// Clamps `v` into `[0, 1]`, accepting values that stray by at most `tol`.
pub(crate) fn clamp_unit(v: f64, tol: f64) -> Option<f64> {
    if !v.is_finite() || v < -tol || v > 1.0 + tol {
        None
    } else {
        Some(v.clamp(0.0, 1.0))
    }
}
