use thiserror::Error;

use crate::rewrite::OverlapReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must declare at least one symbol")]
    EmptyAlphabet,
    #[error("alphabet declares {0} symbols, at most 255 are supported")]
    TooManySymbols(usize),
    #[error("invalid symbol name {0:?}")]
    BadSymbolName(String),
    #[error("symbol {0:?} declared twice")]
    DuplicateSymbol(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("empty word where a non-empty word is required")]
    EmptyWord,
    #[error("word contains a symbol outside the alphabet")]
    SymbolOutOfRange,
    #[error("empty search pattern")]
    EmptyNeedle,
    #[error("word has no non-empty proper border")]
    NoBorder,
    #[error("equation {0} is not length-preserving")]
    NotLengthPreserving(usize),
    #[error("equation {0} does not preserve symbol counts")]
    NotCountPreserving(usize),
    #[error("equation {0} is not strictly length-decreasing")]
    NotDecreasing(usize),
    #[error("reduction requires a forward-only system")]
    NotForwardOnly,
    #[error("left-hand sides overlap: {0}")]
    Overlapping(OverlapReport),
    #[error("derivation does not replay: {0}")]
    BadDerivation(String),
    #[error("system lacks the distinct-initial-symbol condition: {0}")]
    NoCancellationCertificate(String),
    #[error("system is not complete: failing symbols {0:?}")]
    NotComplete(Vec<String>),
    #[error("perfection not established: {0}")]
    NotPerfect(String),
    #[error("state has not reached its fixpoint")]
    NotAtFixpoint,
    #[error("overlap outside the eight configurations: {0}")]
    UnclassifiedOverlap(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
