//! Null sequences: a word `R` that may be inserted or deleted anywhere,
//! together with a system of length- and count-preserving equations.
//!
//! Two words are *parallel* when the equations alone relate them. A system
//! is *complete* when `zR ∥ Rz` for every symbol `z`, and *perfect* when
//! `RA ∥ RB` implies `A ∥ B`. For complete and perfect systems the
//! equivalence of two words is decided by comparing their irreducible
//! systems: the layers obtained by alternately closing under parallelism
//! and deleting `R`.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::combinatorics::{border_lengths, find_occurrences};
use crate::error::{Error, Result};
use crate::rewrite::{
    check_cancellation_condition, decide_bounded_with_null, decide_fixed_length, Action, Budget,
    CancellationCertificate, CancellationViolation, DecisionOutcome, Derivation, Equation,
    EquationSystem, FixedLengthClasses, SearchReport, Step, Verdict,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullSystem {
    pub r: Word,
    pub eqs: EquationSystem,
}

impl NullSystem {
    pub fn new(r: Word, eqs: EquationSystem) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !eqs.alphabet.contains(&r) {
            return Err(Error::SymbolOutOfRange);
        }
        for (i, e) in eqs.equations.iter().enumerate() {
            if !e.is_length_preserving() {
                return Err(Error::NotLengthPreserving(i));
            }
            if !e.is_count_preserving() {
                return Err(Error::NotCountPreserving(i));
            }
        }
        Ok(NullSystem { r, eqs })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.eqs.alphabet
    }

    /// A fresh class cache for the equations.
    pub fn classes(&self) -> FixedLengthClasses {
        FixedLengthClasses::new(self.eqs.clone()).expect("null systems are length-preserving")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NullMoveKind {
    Insert,
    Delete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullMove {
    pub word: Word,
    pub position: usize,
    pub kind: NullMoveKind,
    /// The deletion produced the empty word.
    pub boundary: bool,
}

/// All single deletions of `r` from `w` and all insertions of `r` into `w`
/// whose result is at most `max_len` long.
pub fn similar_null(w: &[Symbol], r: &[Symbol], max_len: usize) -> Vec<NullMove> {
    let mut out = Vec::new();
    if !r.is_empty() {
        for position in find_occurrences(w, r).unwrap_or_default() {
            let word = Word::from(w).splice(position, r.len(), &[]);
            let boundary = word.is_empty();
            out.push(NullMove { word, position, kind: NullMoveKind::Delete, boundary });
        }
    }
    if w.len() + r.len() <= max_len {
        for position in 0..=w.len() {
            out.push(NullMove {
                word: Word::from(w).splice(position, 0, r),
                position,
                kind: NullMoveKind::Insert,
                boundary: false,
            });
        }
    }
    out
}

/// Relate `p` and `q` by the equations alone.
pub fn parallel(p: &Word, q: &Word, ns: &NullSystem) -> DecisionOutcome {
    decide_fixed_length(p, q, &ns.eqs).expect("null systems are length-preserving")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    /// `(z, outcome of zR ∥ Rz)` for every symbol.
    pub per_symbol: Vec<(Symbol, DecisionOutcome)>,
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        self.per_symbol.iter().all(|(_, o)| o.is_equivalent())
    }

    pub fn failing(&self) -> Vec<Symbol> {
        self.per_symbol.iter().filter(|(_, o)| !o.is_equivalent()).map(|(z, _)| *z).collect()
    }
}

pub fn check_complete(ns: &NullSystem) -> CompletenessReport {
    let per_symbol = ns
        .alphabet()
        .symbols()
        .map(|z| {
            let zr = Word::new(vec![z]).concat(&ns.r);
            let rz = ns.r.concat(&[z]);
            (z, parallel(&zr, &rz, ns))
        })
        .collect();
    CompletenessReport { per_symbol }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerfectionVerdict {
    /// No counterexample among words `A` with `|RA| ≤ bound`.
    PassUpToBound { bound: usize, words_checked: usize },
    /// `RA ∥ RB` but not `A ∥ B`.
    Counterexample { a: Word, b: Word },
}

impl PerfectionVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, PerfectionVerdict::PassUpToBound { .. })
    }
}

/// Search for `A`, `B` with `RA ∥ RB` and `A ∦ B`, `|RA| ≤ max_len`.
pub fn check_perfect_bounded(ns: &NullSystem, max_len: usize) -> Result<PerfectionVerdict> {
    if max_len < ns.r.len() + 1 {
        return Err(Error::Invalid(format!("bound {max_len} is below |R| + 1")));
    }
    let mut classes = ns.classes();
    let k = ns.alphabet().len();
    let mut words_checked = 0;
    for len in 1..=max_len - ns.r.len() {
        // class of RA -> (class of A, A)
        let mut seen: std::collections::HashMap<usize, (usize, Word)> = std::collections::HashMap::new();
        for a in all_words(k, len) {
            words_checked += 1;
            let ra = classes.class_id(&ns.r.concat(&a));
            let ca = classes.class_id(&a);
            match seen.get(&ra) {
                Some((cb, b)) if *cb != ca => {
                    return Ok(PerfectionVerdict::Counterexample { a: b.clone(), b: a });
                }
                Some(_) => {}
                None => {
                    seen.insert(ra, (ca, a));
                }
            }
        }
    }
    Ok(PerfectionVerdict::PassUpToBound { bound: max_len, words_checked })
}

/// All words of length `len` over `k` symbols in lexicographic order.
pub fn all_words(k: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = (k as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    (0..total).map(move |mut i| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = (i % k as u128) as Symbol;
            i /= k as u128;
        }
        Word::new(v)
    })
}

/// Perfection by the left-cancellation theorem: holds outright when every
/// equation's sides start with suitably distinct symbols.
pub fn check_perfect_syntactic(ns: &NullSystem) -> std::result::Result<CancellationCertificate, CancellationViolation> {
    check_cancellation_condition(&ns.eqs)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Terminal {
    /// The sorted R-free words of the last layer.
    Words(Vec<Word>),
    /// Deleting `R` produced the empty word.
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleSystem {
    /// Sorted word sets `N_0 … N_r`.
    pub layers: Vec<Vec<Word>>,
    pub terminal: Terminal,
}

/// How perfection was established before building irreducible systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerfectionEvidence {
    Certificate(CancellationCertificate),
    Bounded(PerfectionVerdict),
}

fn require_complete_and_perfect(ns: &NullSystem, bound: usize) -> Result<PerfectionEvidence> {
    let complete = check_complete(ns);
    if !complete.is_complete() {
        let names = complete.failing().iter().map(|&z| ns.alphabet().name(z).to_string()).collect();
        return Err(Error::NotComplete(names));
    }
    if let Ok(cert) = check_perfect_syntactic(ns) {
        return Ok(PerfectionEvidence::Certificate(cert));
    }
    match check_perfect_bounded(ns, bound.max(ns.r.len() + 1))? {
        v @ PerfectionVerdict::PassUpToBound { .. } => Ok(PerfectionEvidence::Bounded(v)),
        PerfectionVerdict::Counterexample { a, b } => Err(Error::NotPerfect(format!(
            "R{} and R{} are parallel but the cofactors are not",
            ns.alphabet().render(&a),
            ns.alphabet().render(&b)
        ))),
    }
}

fn contains_r(w: &[Symbol], r: &[Symbol]) -> bool {
    crate::combinatorics::contains(w, r)
}

fn build_layers(s: &Word, ns: &NullSystem, classes: &mut FixedLengthClasses) -> IrreducibleSystem {
    let mut layers = Vec::new();
    let id = classes.class_id(s);
    let mut layer: BTreeSet<Word> = classes.members(id).iter().cloned().collect();
    loop {
        let with_r: Vec<&Word> = layer.iter().filter(|w| contains_r(w, &ns.r)).collect();
        if with_r.is_empty() {
            let words: Vec<Word> = layer.into_iter().collect();
            layers.push(words.clone());
            return IrreducibleSystem { layers, terminal: Terminal::Words(words) };
        }
        let mut next = BTreeSet::new();
        let mut reached_empty = false;
        for w in with_r {
            for pos in find_occurrences(w, &ns.r).unwrap_or_default() {
                let d = w.splice(pos, ns.r.len(), &[]);
                if d.is_empty() {
                    reached_empty = true;
                } else if !next.contains(&d) {
                    let id = classes.class_id(&d);
                    next.extend(classes.members(id).iter().cloned());
                }
            }
        }
        layers.push(layer.into_iter().collect());
        if reached_empty {
            return IrreducibleSystem { layers, terminal: Terminal::Empty };
        }
        layer = next;
    }
}

/// Build the irreducible system of `s`. The system must be complete and
/// perfect; without a syntactic certificate perfection is checked up to
/// `max(max_len, |s|)`.
pub fn irreducible_system(s: &Word, ns: &NullSystem, max_len: usize) -> Result<IrreducibleSystem> {
    if s.is_empty() {
        return Err(Error::EmptyWord);
    }
    require_complete_and_perfect(ns, max_len.max(s.len()))?;
    Ok(build_layers(s, ns, &mut ns.classes()))
}

/// A derivation from `w` to a word of its terminal layer, or to `R` itself
/// when the terminal is empty.
fn descend(w: &Word, ns: &NullSystem, classes: &mut FixedLengthClasses) -> Result<Derivation> {
    let mut d = Derivation::identity(w.clone());
    loop {
        let cur = d.end.clone();
        let id = classes.class_id(&cur);
        let target = if classes.members(id).contains(&ns.r) {
            Some(ns.r.clone())
        } else {
            classes.members(id).iter().find(|m| contains_r(m, &ns.r)).cloned()
        };
        let Some(target) = target else { return Ok(d) };
        let hop = decide_fixed_length(&cur, &target, &ns.eqs)?
            .witness
            .expect("target lies in the class of the current word");
        d = d.then(&hop)?;
        if target == ns.r {
            return Ok(d);
        }
        let pos = find_occurrences(&target, &ns.r)?[0];
        let next = target.splice(pos, ns.r.len(), &[]);
        d.steps.push(Step { action: Action::DeleteNull, position: pos });
        d.end = next;
    }
}

/// Decide equivalence with respect to `R` by comparing terminal layers.
/// The witness uses deletions and insertions of `R` and the equations.
pub fn decide_problem_two(p: &Word, q: &Word, ns: &NullSystem, max_len: usize) -> Result<DecisionOutcome> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::EmptyWord);
    }
    require_complete_and_perfect(ns, max_len.max(p.len()).max(q.len()))?;
    let mut classes = ns.classes();
    let ip = build_layers(p, ns, &mut classes);
    let iq = build_layers(q, ns, &mut classes);
    let report = SearchReport {
        states_explored: ip.layers.iter().chain(&iq.layers).map(Vec::len).sum(),
        max_length_reached: p.len().max(q.len()),
        saturated: true,
    };
    if ip.terminal != iq.terminal {
        return Ok(DecisionOutcome { verdict: Verdict::NotEquivalent, witness: None, report });
    }
    let dp = descend(p, ns, &mut classes)?;
    let dq = descend(q, ns, &mut classes)?;
    let bridge = decide_fixed_length(&dp.end, &dq.end, &ns.eqs)?;
    let Some(bridge) = bridge.witness else {
        return Err(Error::NotPerfect("terminal layer is not a single parallel class".into()));
    };
    let witness = dp.then(&bridge)?.then(&dq.reversed())?;
    Ok(DecisionOutcome { verdict: Verdict::Equivalent, witness: Some(witness), report })
}

/// Bounded search with the equations plus insertion and deletion of `R`.
pub fn decide_bounded_null(p: &Word, q: &Word, ns: &NullSystem, budget: Budget) -> DecisionOutcome {
    decide_bounded_with_null(p, q, &ns.eqs, &ns.r, budget)
}

/// `C = D` for every decomposition `r ≡ C·U ≡ U·D` along a non-empty
/// proper border `U`, longest border first.
pub fn overlap_equation(r: &Word) -> Vec<Equation> {
    border_lengths(r)
        .into_iter()
        .map(|k| Equation { lhs: r.prefix(r.len() - k), rhs: r.suffix(r.len() - k) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(chars: &str, r: &str, eqs: &[(&str, &str)]) -> NullSystem {
        let ab = Alphabet::from_chars(chars).unwrap();
        let eqs = eqs
            .iter()
            .map(|(l, r)| Equation::new(ab.parse_word(l).unwrap(), ab.parse_word(r).unwrap()).unwrap())
            .collect();
        NullSystem::new(ab.parse_word(r).unwrap(), EquationSystem::thue(ab, eqs).unwrap()).unwrap()
    }

    fn w(n: &NullSystem, s: &str) -> Word {
        n.alphabet().parse_word(s).unwrap()
    }

    fn ex2() -> NullSystem {
        ns("abc", "abbcab", &[("abbc", "bcab"), ("abbca", "cabab")])
    }

    #[test]
    fn rejects_non_homogeneous_equations() {
        let ab = Alphabet::from_chars("axy").unwrap();
        let e = Equation::new(ab.parse_word("ax").unwrap(), ab.parse_word("ay").unwrap()).unwrap();
        let sys = EquationSystem::thue(ab.clone(), vec![e]).unwrap();
        assert!(matches!(NullSystem::new(ab.parse_word("a").unwrap(), sys), Err(Error::NotCountPreserving(0))));
    }

    #[test]
    fn null_moves() {
        let n = ns("abxy", "ab", &[]);
        let moves = similar_null(&w(&n, "xabxy"), &n.r, 7);
        let dels: Vec<_> = moves.iter().filter(|m| m.kind == NullMoveKind::Delete).collect();
        assert_eq!((dels.len(), &dels[0].word, dels[0].position), (1, &w(&n, "xxy"), 1));
        assert_eq!(moves.iter().filter(|m| m.kind == NullMoveKind::Insert).count(), 6);
        let moves = similar_null(&w(&n, "ab"), &n.r, 2);
        assert_eq!(moves.len(), 1);
        assert!(moves[0].boundary && moves[0].word.is_empty());
        let n = ns("ab", "b", &[]);
        let moves = similar_null(&w(&n, "aa"), &n.r, 3);
        assert_eq!(moves.len(), 3);
    }

    #[test]
    fn parallelism() {
        let n = ns("xy", "xyx", &[("xy", "yx")]);
        assert!(parallel(&w(&n, "xy"), &w(&n, "yx"), &n).is_equivalent());
        assert!(parallel(&w(&n, "xy"), &w(&n, "xy"), &n).is_equivalent());
        assert_eq!(parallel(&w(&n, "xxy"), &w(&n, "xyy"), &n).verdict, Verdict::NotEquivalent);
    }

    #[test]
    fn completeness() {
        assert!(check_complete(&ex2()).is_complete());
        let n = ns("ab", "ab", &[]);
        assert_eq!(check_complete(&n).failing(), vec![0, 1]);
    }

    #[test]
    fn bounded_perfection() {
        let n = ns("axy", "a", &[("axy", "ayx")]);
        assert_eq!(
            check_perfect_bounded(&n, 3).unwrap(),
            PerfectionVerdict::Counterexample { a: w(&n, "xy"), b: w(&n, "yx") }
        );
        let n = ns("ab", "ab", &[]);
        assert!(check_perfect_bounded(&n, 6).unwrap().passes());
        assert!(check_perfect_bounded(&n, 2).is_err());
    }

    #[test]
    fn syntactic_perfection() {
        let n = ns("xy", "xyx", &[("xy", "yx")]);
        assert!(check_perfect_syntactic(&n).is_ok());
        let n = ns("xy", "xxyxxyxx", &[("xxy", "yxx"), ("yyx", "xyy")]);
        assert!(check_perfect_syntactic(&n).is_err());
    }

    #[test]
    fn irreducible_layers() {
        let n = ns("xy", "xxyxx", &[("xy", "yx")]);
        let sys = irreducible_system(&n.r, &n, 6).unwrap();
        assert_eq!(sys.terminal, Terminal::Empty);
        let s = w(&n, "x").concat(&n.r);
        let sys = irreducible_system(&s, &n, 6).unwrap();
        assert_eq!(sys.layers.len(), 2);
        assert_eq!(sys.terminal, Terminal::Words(vec![w(&n, "x")]));
        let sys = irreducible_system(&w(&n, "xy"), &n, 6).unwrap();
        assert_eq!(sys.layers.len(), 1);
        assert_eq!(sys.terminal, Terminal::Words(vec![w(&n, "xy"), w(&n, "yx")]));
    }

    #[test]
    fn problem_two() {
        let n = ex2();
        let out = decide_problem_two(&w(&n, "abbcabc"), &w(&n, "c"), &n, 7).unwrap();
        assert_eq!(out.verdict, Verdict::Equivalent);
        out.witness.unwrap().replay_with_null(&n.eqs, &n.r).unwrap();
        let out = decide_problem_two(&w(&n, "a"), &w(&n, "a"), &n, 7).unwrap();
        assert!(out.is_equivalent());
        let out = decide_problem_two(&w(&n, "a"), &w(&n, "b"), &n, 7).unwrap();
        assert_eq!(out.verdict, Verdict::NotEquivalent);
        let out = decide_problem_two(&w(&n, "bcabab"), &n.r, &n, 7).unwrap();
        out.witness.unwrap().replay_with_null(&n.eqs, &n.r).unwrap();
    }

    #[test]
    fn problem_two_needs_completeness() {
        let n = ns("ab", "ab", &[]);
        assert!(matches!(decide_problem_two(&w(&n, "a"), &w(&n, "b"), &n, 4), Err(Error::NotComplete(_))));
    }

    #[test]
    fn overlap_equations() {
        let n = ns("abcxy", "abbcab", &[]);
        let eqs = overlap_equation(&n.r);
        assert_eq!(eqs, vec![Equation { lhs: w(&n, "abbc"), rhs: w(&n, "bcab") }]);
        let eqs = overlap_equation(&w(&n, "xxyxx"));
        assert_eq!(eqs.len(), 2);
        assert_eq!((eqs[0].lhs.clone(), eqs[0].rhs.clone()), (w(&n, "xxy"), w(&n, "yxx")));
        assert_eq!((eqs[1].lhs.clone(), eqs[1].rhs.clone()), (w(&n, "xxyx"), w(&n, "xyxx")));
        assert!(overlap_equation(&w(&n, "ab")).is_empty());
    }
}
