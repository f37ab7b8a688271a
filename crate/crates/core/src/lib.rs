//! Predicates as maps `X -> X + X` in three settings.
//!
//! * [`classical`]: subsets of finite sets and total functions.
//! * [`stochastic`]: fuzzy predicates, distributions and stochastic kernels.
//! * [`quantum`]: effects on finite-dimensional Hilbert spaces, density
//!   matrices and isometries.
//!
//! The [`algebra`] module holds finite effect algebras as explicit tables
//! together with an exhaustive axiom checker, and a tolerant law checker that
//! the three concrete instances are run against. [`linalg`] is the complex
//! dense linear algebra the quantum instance is built on, and [`scenario`]
//! parses and evaluates the scenario files consumed by the command-line tool.

pub mod algebra;
pub mod classical;
pub mod error;
pub mod linalg;
pub mod quantum;
pub mod sample;
pub mod scenario;
pub mod selftest;
pub mod stochastic;
pub mod tolerance;

pub use error::{Error, Result};
