use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("carrier mismatch: {left} elements vs {right} elements")]
    CarrierMismatch { left: usize, right: usize },

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("index {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("weights sum to {}, expected 1", tidy(*sum))]
    NotNormalized { sum: f64 },

    #[error("value {} lies outside [0, 1]", tidy(*value))]
    OutOfUnitInterval { value: f64 },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is not an effect: eigenvalues must lie in [0, 1], found range [{min}, {max}]")]
    NotEffect { min: f64, max: f64 },

    #[error("predicate components do not sum to the identity (deviation {deviation:e})")]
    NotPredicate { deviation: f64 },

    #[error("matrix is not an isometry (|V^dag V - I| = {deviation:e})")]
    NotIsometry { deviation: f64 },

    #[error("vector is not normalized (squared norm {})", tidy(*norm_sqr))]
    NotUnitVector { norm_sqr: f64 },

    #[error("density matrix has trace {}, expected 1", tidy(*trace))]
    BadTrace { trace: f64 },

    #[error("projection family invalid: {0}")]
    BadProjections(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("{what} too large: {size} exceeds the cap {cap}")]
    TooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("malformed effect algebra table: {0}")]
    MalformedTable(String),

    #[error("not a state functional: {0}")]
    NotAffine(String),

    #[error("parse error: {0}")]
    Parse(String),
}

/// Drops floating-point noise below twelve decimals so `0.8999999999999999`
/// prints as `0.9`.
fn tidy(x: f64) -> f64 {
    if x.is_finite() {
        (x * 1e12).round() / 1e12
    } else {
        x
    }
}
