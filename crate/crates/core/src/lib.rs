//! Exact combinatorics of ordered set partitions and spreadability systems:
//! incidence functions on OP_n, moment/cumulant transforms for five
//! product constructions, Weisner and Goldberg coefficients, and three
//! independent expansions of the Campbell–Baker–Hausdorff series.

pub mod coefficients;
pub mod error;
pub mod freelie;
pub mod incidence;
pub mod par;
pub mod partitions;
pub mod poly;
pub mod rational;
pub mod systems;

pub use error::{Error, Result};
pub use par::Execution;
pub use poly::{Param, Ring, SymPolynomial, Symbol};
pub use rational::Rational;
