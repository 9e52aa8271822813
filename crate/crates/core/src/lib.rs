//! Sequential Function Charts, BIP component models, and a structural
//! translation from the former to the latter with checkers for invariant
//! preservation and weak simulation.

pub mod diag;
pub mod expr;
pub mod lexer;
pub mod graph;
pub mod sfc;
pub mod bip;
pub mod transform;
pub mod fixtures;
pub mod invariants;
pub mod simcheck;
pub mod random;
