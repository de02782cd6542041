//! Word problems for Thue and semi-Thue systems.
//!
//! The crate provides combinatorics on words ([`combinatorics`]), equation
//! systems with replayable derivations and decision procedures
//! ([`rewrite`]), null-sequence systems ([`nullseq`]), the fixpoint
//! completion that derives an equation system from a null sequence
//! ([`completion`]), a corpus of worked examples ([`corpus`]) and a text
//! format for systems ([`syntax`]).

pub mod alphabet;
pub mod combinatorics;
pub mod completion;
pub mod corpus;
mod error;
pub mod nullseq;
pub mod rewrite;
pub mod syntax;

pub use alphabet::{Alphabet, Symbol, Word};
pub use error::{Error, Result};
