//! Symbols, words and the alphabets that name them.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
pub type Symbol = u8;

/// Largest number of symbols an alphabet may declare.
pub const MAX_SYMBOLS: usize = 255;

/// A finite sequence of symbols.
///
/// Identity of words is element-wise equality. Words stored in systems are
/// never empty; intermediate results (the `α` of a power decomposition, a
/// remainder after cancelling a prefix) may be.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    /// `self · other`.
    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    /// `self` repeated `n` times.
    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// The sub-word `self[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix(&self, len: usize) -> Word {
        self.slice(self.0.len() - len, self.0.len())
    }

    /// Replace `len` symbols at `pos` by `with`.
    pub fn splice(&self, pos: usize, len: usize, with: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() - len + with.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(with);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    /// How often each symbol occurs, indexed by symbol.
    pub fn symbol_counts(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for &s in &self.0 {
            let s = s as usize;
            if counts.len() <= s {
                counts.resize(s + 1, 0);
            }
            counts[s] += 1;
        }
        counts
    }

    /// Cyclic rotation by `k` symbols to the left.
    pub fn rotate_left(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            v.rotate_left(k % self.0.len());
        }
        Word(v)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// Concatenate any number of words.
pub fn concat_all<'a>(parts: impl IntoIterator<Item = &'a [Symbol]>) -> Word {
    let mut v = Vec::new();
    for p in parts {
        v.extend_from_slice(p);
    }
    Word(v)
}

/// An ordered list of distinct, named symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if names.len() > MAX_SYMBOLS {
            return Err(Error::TooManySymbols(names.len()));
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::BadSymbolName(name.clone()));
            }
            if index.insert(name.clone(), i as Symbol).is_some() {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Alphabet { names, index })
    }

    /// One symbol per character, e.g. `Alphabet::from_chars("abc")`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s as usize]
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.names.len()).map(|i| i as Symbol)
    }

    /// True when every symbol name is a single character, so words may be
    /// written without separators.
    pub fn is_single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        w.iter().all(|&s| (s as usize) < self.names.len())
    }

    /// Parse a word literal: whitespace-separated names (`a b b c`), or the
    /// single-letter shorthand `abbc` when every name is one character.
    pub fn parse_word(&self, literal: &str) -> Result<Word> {
        let literal = literal.trim();
        if literal.is_empty() {
            return Err(Error::EmptyWord);
        }
        let lookup = |name: &str| {
            self.symbol(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
        };
        if literal.contains(char::is_whitespace) {
            return literal.split_whitespace().map(lookup).collect::<Result<Vec<_>>>().map(Word);
        }
        if let Some(s) = self.symbol(literal) {
            return Ok(Word(vec![s]));
        }
        if self.is_single_char() {
            let mut buf = [0u8; 4];
            return literal
                .chars()
                .map(|c| lookup(c.encode_utf8(&mut buf)))
                .collect::<Result<Vec<_>>>()
                .map(Word);
        }
        Err(Error::UnknownSymbol(literal.to_string()))
    }

    pub fn render(&self, w: &[Symbol]) -> String {
        let sep = if self.is_single_char() { "" } else { " " };
        w.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(sep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_literal_styles() {
        let ab = Alphabet::from_chars("abc").unwrap();
        assert_eq!(ab.parse_word("abbcab").unwrap(), ab.parse_word("a b b c a b").unwrap());
        assert_eq!(ab.render(&ab.parse_word("a b c").unwrap()), "abc");

        let named = Alphabet::new(["X_1", "Y_1", "z"]).unwrap();
        let w = named.parse_word("X_1 Y_1 z X_1").unwrap();
        assert_eq!(w.as_slice(), &[0, 1, 2, 0]);
        assert_eq!(named.render(&w), "X_1 Y_1 z X_1");
        assert_eq!(named.parse_word("z").unwrap().len(), 1);
        assert!(named.parse_word("zz").is_err());
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(matches!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet)));
        assert!(matches!(Alphabet::from_chars("aba"), Err(Error::DuplicateSymbol(_))));
        assert!(Alphabet::new(["a b"]).is_err());
        let many: Vec<String> = (0..256).map(|i| format!("s{i}")).collect();
        assert!(matches!(Alphabet::new(many), Err(Error::TooManySymbols(256))));
    }

    #[test]
    fn unknown_symbols_are_rejected() {
        let ab = Alphabet::from_chars("ab").unwrap();
        assert!(matches!(ab.parse_word("abc"), Err(Error::UnknownSymbol(s)) if s == "c"));
        assert!(matches!(ab.parse_word("  "), Err(Error::EmptyWord)));
    }

    #[test]
    fn word_helpers() {
        let w = Word::new(vec![0, 1, 1, 2]);
        assert_eq!(w.splice(1, 2, &[3]), Word::new(vec![0, 3, 2]));
        assert_eq!(w.rotate_left(1), Word::new(vec![1, 1, 2, 0]));
        assert_eq!(w.symbol_counts(), vec![1, 2, 1]);
        assert_eq!(w.prefix(2).concat(&w.suffix(2)), w);
        assert_eq!(Word::new(vec![0, 1]).pow(2), Word::new(vec![0, 1, 0, 1]));
    }
}
