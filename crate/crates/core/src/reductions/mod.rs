//! Instance generators for the classical hardness constructions, with
//! exhaustive solvers for their source problems, plus the price-of-fairness
//! families.

mod gadgets;
mod pof;
mod source;

pub use gadgets::{generate, partition_star_size, GadgetNotes, HardInstance, Reduction, Role};
pub use pof::{pof_family, pof_proof_arrangements, PofFamily};
pub use source::{solve_source, SourceKind, SourceProblem, Witness};
