//! Exact solvers for seat arrangement problems.
//!
//! Agents with cardinal pairwise preferences are placed bijectively on the
//! vertices of a seat graph. The crate finds maximum-welfare and maximin
//! arrangements, decides exchange stability and envy-freeness, computes the
//! prices of stability and fairness, and generates hardness gadgets together
//! with brute-force solvers for their source problems.

pub mod error;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod param;
pub mod polysolve;
pub mod rational;
pub mod reductions;

pub use error::{Error, Result};
pub use oracle::{Oracle, Problem, SolveReport};
pub use model::{Arrangement, DynamicsOutcome, Instance, PreferenceFlags, PreferenceProfile, SeatGraph, SwapPlan};
pub use rational::Rational;
