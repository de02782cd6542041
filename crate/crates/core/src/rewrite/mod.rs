//! Thue and semi-Thue systems: equations, single-step similarity and
//! replayable derivations. Decision procedures live in the submodules.

mod cancel;
mod reduce;
mod search;

pub use cancel::{
    cancel_left, cancel_prefix, cancel_symbol, check_cancellation_condition, cyclic_shift_family,
    CancellationCertificate, CancellationViolation, CertificateEntry, CyclicShiftReport, RotationCheck,
};
pub use reduce::{
    check_non_overlapping, decide_reducing, reduce_to_normal_form, OverlapReport, OverlapViolation,
    Strategy,
};
pub use search::{
    decide_bounded, decide_bounded_with_null, decide_fixed_length, fixed_length_closure, Budget,
    DecisionOutcome, FixedLengthClasses, SearchReport, Verdict,
};

use std::fmt;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// A pair of corresponding words `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Equation {
    pub fn new(lhs: Word, rhs: Word) -> Result<Self> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Equation { lhs, rhs })
    }

    /// The same unordered pair with the lexicographically smaller side first.
    pub fn canonical(&self) -> Equation {
        if self.rhs < self.lhs {
            self.flipped()
        } else {
            self.clone()
        }
    }

    pub fn flipped(&self) -> Equation {
        Equation { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }

    pub fn is_length_preserving(&self) -> bool {
        self.lhs.len() == self.rhs.len()
    }

    pub fn is_count_preserving(&self) -> bool {
        self.lhs.symbol_counts() == self.rhs.symbol_counts()
    }

    pub fn is_decreasing(&self) -> bool {
        self.lhs.len() > self.rhs.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.lhs.len() + self.rhs.len()
    }

    /// The side matched when applying in `dir`, then the side written.
    pub fn sides(&self, dir: Direction) -> (&Word, &Word) {
        match dir {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Backward => (&self.rhs, &self.lhs),
        }
    }
}

/// Bidirectional (Thue) or forward-only (semi-Thue) application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Thue,
    SemiThue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    pub alphabet: Alphabet,
    pub equations: Vec<Equation>,
    pub mode: Mode,
}

impl EquationSystem {
    pub fn new(alphabet: Alphabet, equations: Vec<Equation>, mode: Mode) -> Result<Self> {
        for eq in &equations {
            if eq.lhs.is_empty() || eq.rhs.is_empty() {
                return Err(Error::EmptyWord);
            }
            if !alphabet.contains(&eq.lhs) || !alphabet.contains(&eq.rhs) {
                return Err(Error::SymbolOutOfRange);
            }
        }
        Ok(EquationSystem { alphabet, equations, mode })
    }

    pub fn thue(alphabet: Alphabet, equations: Vec<Equation>) -> Result<Self> {
        Self::new(alphabet, equations, Mode::Thue)
    }

    pub fn semi(alphabet: Alphabet, equations: Vec<Equation>) -> Result<Self> {
        Self::new(alphabet, equations, Mode::SemiThue)
    }

    /// Same rules, different mode.
    pub fn with_mode(&self, mode: Mode) -> Self {
        EquationSystem { mode, ..self.clone() }
    }

    /// Same alphabet and mode, different equations.
    pub fn with_equations(&self, equations: Vec<Equation>) -> Self {
        EquationSystem { equations, ..self.clone() }
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn longest_side(&self) -> usize {
        self.equations.iter().map(|e| e.lhs.len().max(e.rhs.len())).max().unwrap_or(0)
    }

    pub fn is_length_preserving(&self) -> bool {
        self.equations.iter().all(Equation::is_length_preserving)
    }

    pub(crate) fn require_length_preserving(&self) -> Result<()> {
        match self.equations.iter().position(|e| !e.is_length_preserving()) {
            Some(i) => Err(Error::NotLengthPreserving(i)),
            None => Ok(()),
        }
    }

    pub fn render_equation(&self, eq: &Equation) -> String {
        let arrow = match self.mode {
            Mode::Thue => "<->",
            Mode::SemiThue => "->",
        };
        format!("{} {} {}", self.alphabet.render(&eq.lhs), arrow, self.alphabet.render(&eq.rhs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// `lhs → rhs`.
    Forward,
    /// `rhs → lhs`.
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Rule { index: usize, direction: Direction },
    /// Remove one occurrence of the null word.
    DeleteNull,
    /// Insert the null word.
    InsertNull,
}

/// One similarity step applied at `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub action: Action,
    pub position: usize,
}

impl Step {
    pub fn rule(index: usize, direction: Direction, position: usize) -> Self {
        Step { action: Action::Rule { index, direction }, position }
    }

    pub fn inverse(self) -> Self {
        let action = match self.action {
            Action::Rule { index, direction } => Action::Rule { index, direction: direction.reversed() },
            Action::DeleteNull => Action::InsertNull,
            Action::InsertNull => Action::DeleteNull,
        };
        Step { action, ..self }
    }

    /// Apply to `w`, checking that the matched side is really there.
    pub fn apply(&self, w: &[Symbol], sys: &EquationSystem, null: Option<&[Symbol]>) -> Result<Word> {
        let pos = self.position;
        let (from, to): (&[Symbol], &[Symbol]) = match self.action {
            Action::Rule { index, direction } => {
                let eq = sys
                    .equations
                    .get(index)
                    .ok_or_else(|| Error::BadDerivation(format!("no equation {index}")))?;
                let (a, b) = eq.sides(direction);
                (a, b)
            }
            Action::DeleteNull => (null.ok_or_else(no_null)?, &[]),
            Action::InsertNull => (&[], null.ok_or_else(no_null)?),
        };
        if pos > w.len() || !w[pos..].starts_with(from) {
            return Err(Error::BadDerivation(format!("{:?} does not match at position {pos}", self.action)));
        }
        Ok(Word::from(w).splice(pos, from.len(), to))
    }

    pub fn describe(&self) -> String {
        match self.action {
            Action::Rule { index, direction } => format!("rule {index} {direction} at pos {}", self.position),
            Action::DeleteNull => format!("delete null at pos {}", self.position),
            Action::InsertNull => format!("insert null at pos {}", self.position),
        }
    }
}

fn no_null() -> Error {
    Error::BadDerivation("null step without a null word".into())
}

/// A chain `start ∼ … ∼ end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub start: Word,
    pub steps: Vec<Step>,
    pub end: Word,
}

impl Derivation {
    pub fn identity(w: Word) -> Self {
        Derivation { start: w.clone(), steps: Vec::new(), end: w }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every intermediate word, `start` first and `end` last.
    pub fn words(&self, sys: &EquationSystem, null: Option<&[Symbol]>) -> Result<Vec<Word>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start.clone());
        for step in &self.steps {
            let next = step.apply(out.last().unwrap(), sys, null)?;
            out.push(next);
        }
        if out.last() != Some(&self.end) {
            return Err(Error::BadDerivation("replay does not reach the recorded end".into()));
        }
        Ok(out)
    }

    /// Replay using rule steps only.
    pub fn replay(&self, sys: &EquationSystem) -> Result<()> {
        self.words(sys, None).map(|_| ())
    }

    /// Replay allowing insertions and deletions of `null`.
    pub fn replay_with_null(&self, sys: &EquationSystem, null: &[Symbol]) -> Result<()> {
        self.words(sys, Some(null)).map(|_| ())
    }

    pub fn reversed(&self) -> Derivation {
        Derivation {
            start: self.end.clone(),
            steps: self.steps.iter().rev().map(|s| s.inverse()).collect(),
            end: self.start.clone(),
        }
    }

    /// The same steps inside the context `left · _ · right`.
    pub fn embedded(&self, left: &[Symbol], right: &[Symbol]) -> Derivation {
        let wrap = |w: &Word| Word::from(left).concat(w).concat(right);
        Derivation {
            start: wrap(&self.start),
            steps: self
                .steps
                .iter()
                .map(|s| Step { position: s.position + left.len(), ..*s })
                .collect(),
            end: wrap(&self.end),
        }
    }

    /// `self` followed by `next`; `next` must start where `self` ends.
    pub fn then(&self, next: &Derivation) -> Result<Derivation> {
        if self.end != next.start {
            return Err(Error::BadDerivation("derivations do not join".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        Ok(Derivation { start: self.start.clone(), steps, end: next.end.clone() })
    }
}

/// Every word one step away from `w`, in (rule, direction, position) order.
/// Forward-only systems yield only `lhs → rhs` replacements.
pub fn similar_steps(w: &[Symbol], sys: &EquationSystem) -> Vec<(Word, Step)> {
    let mut out = Vec::new();
    let both = sys.mode == Mode::Thue;
    neighbours(w, sys, both, &mut |word, step| out.push((word, step)));
    out
}

pub(crate) fn neighbours(w: &[Symbol], sys: &EquationSystem, both: bool, f: &mut impl FnMut(Word, Step)) {
    for (index, eq) in sys.equations.iter().enumerate() {
        for direction in [Direction::Forward, Direction::Backward] {
            if direction == Direction::Backward && !both {
                continue;
            }
            let (from, to) = eq.sides(direction);
            if from.len() > w.len() {
                continue;
            }
            for pos in 0..=w.len() - from.len() {
                if w[pos..pos + from.len()] == from[..] {
                    f(Word::from(w).splice(pos, from.len(), to), Step::rule(index, direction, pos));
                }
            }
        }
    }
}
