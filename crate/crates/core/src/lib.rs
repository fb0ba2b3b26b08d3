//! Automatic sequences over 𝔽₂ and their pseudorandomness measures.
//!
//! The crate generates `k`-automatic binary sequences from automata or
//! recurrences, computes the well-distribution measure, the correlation
//! measure of order `k` and the linear complexity profile exactly, checks
//! algebraic functional equations `h(x, G(x)) = 0`, and constructs the
//! explicit witnesses behind the known lower bounds for these measures.

pub mod algebra;
pub mod automaton;
pub mod bounds;
pub mod error;
pub mod measures;
pub mod sequences;
pub mod statecomplexity;

pub use error::{Error, Result};
