//! Superposition with destructive equality resolution.
//!
//! The crate provides first-order terms and clauses, KBO and LPO orderings,
//! the inference rules of the superposition calculus, simplification rules
//! licensed per redundancy regime, a given-clause prover, and a laboratory
//! for the R-normalization closure orderings: normalization multisets,
//! bounded enumeration of left-reduced rewrite systems, closure redundancy
//! and candidate model construction.

pub mod calculus;
pub mod cc;
pub mod clause;
pub mod gen;
pub mod lab;
pub mod model;
pub mod order;
pub mod problem;
pub mod rewrite;
pub mod saturation;
pub mod simplify;
pub mod term;

pub use clause::{Clause, ClausePos, Literal, Side};
pub use order::{Comparison, OrderingConfig, OrderingKind};
pub use term::{Position, Substitution, Symbol, Term, Var};
