//! Fixpoint completion of a null sequence.
//!
//! Starting from `S_1 = {R}`, each round derives the equations `E_θ` from
//! every overlap `R_p ≡ C·U`, `U·D ≡ R_q` between words of `S_θ`, then
//! closes `S_θ` under those equations. Both series grow inside finite
//! universes, so the loop reaches a fixpoint: the null sequences `(γ)` and
//! the equation system `(δ)`. [`minimize`] selects an independent
//! subsystem `(ε)` from which all of `(δ)` follows.

mod insertion;
mod minimize;
mod theorems;

pub use insertion::{
    classify_insertion_overlap, enumerate_insertion_overlaps, verify_insertion_case, Conclusion,
    InsertionConfig, InsertionOverlapCase, InsertionSurvey, Reduction,
};
pub use minimize::{minimize, MinimizedSystem};
pub use theorems::{verify_epsilon_theorems, EpsilonReport, TheoremCheck};

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{Alphabet, Word};
use crate::combinatorics::{overlaps_between, OverlapWitness};
use crate::error::{Error, Result};
use crate::rewrite::{fixed_length_closure, Equation, EquationSystem};

/// Where a `(δ)`-equation came from: `r_p ≡ c·u`, `u·d ≡ r_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaWitness {
    pub r_p: Word,
    pub r_q: Word,
    pub overlap: OverlapWitness,
}

/// One round of the fixpoint loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub theta: usize,
    pub s_size: usize,
    pub e_size: usize,
    pub new_equations: Vec<Equation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionState {
    pub alphabet: Alphabet,
    pub r: Word,
    /// `S_1 ⊆ S_2 ⊆ …`, each sorted.
    pub s_layers: Vec<Vec<Word>>,
    /// `E_1 ⊆ E_2 ⊆ …`, canonical equations, each sorted.
    pub e_layers: Vec<Vec<Equation>>,
    pub witnesses: BTreeMap<Equation, DeltaWitness>,
    pub trace: Vec<TraceRecord>,
    pub fixpoint: bool,
}

impl CompletionState {
    /// The final null sequences `(γ)`.
    pub fn gamma(&self) -> &[Word] {
        self.s_layers.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// The final equations `(δ)`.
    pub fn delta(&self) -> &[Equation] {
        self.e_layers.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn delta_system(&self) -> EquationSystem {
        EquationSystem::thue(self.alphabet.clone(), self.delta().to_vec()).expect("equations over the alphabet")
    }
}

/// Every equation `C = D` from overlaps `R_p ≡ C·U`, `U·D ≡ R_q` between
/// (not necessarily distinct) words of `words`, canonical and without
/// identities, each with its first witness.
pub fn generate_with_witnesses(words: &[Word]) -> BTreeMap<Equation, DeltaWitness> {
    let mut out = BTreeMap::new();
    for (p, rp) in words.iter().enumerate() {
        for (q, rq) in words.iter().enumerate() {
            for w in overlaps_between(rp, rq, (p, q)) {
                if w.c == w.d {
                    continue;
                }
                let eq = Equation { lhs: w.c.clone(), rhs: w.d.clone() }.canonical();
                out.entry(eq).or_insert_with(|| DeltaWitness { r_p: rp.clone(), r_q: rq.clone(), overlap: w });
            }
        }
    }
    out
}

/// The equations of [`generate_with_witnesses`] as a system.
pub fn generate_equations(alphabet: &Alphabet, words: &[Word]) -> Result<EquationSystem> {
    if let Some(first) = words.first() {
        if first.len() < 2 || words.iter().any(|w| w.len() != first.len()) {
            return Err(Error::Invalid("words must share one length of at least 2".into()));
        }
    }
    EquationSystem::thue(alphabet.clone(), generate_with_witnesses(words).into_keys().collect())
}

/// Close the current null sequences under the current equations.
pub fn expand_null_sequences(state: &CompletionState) -> Result<BTreeSet<Word>> {
    let sys = EquationSystem::thue(state.alphabet.clone(), state.delta().to_vec())?;
    let mut out = BTreeSet::new();
    for w in state.gamma() {
        if !out.contains(w) {
            out.extend(fixed_length_closure(w, &sys)?);
        }
    }
    Ok(out)
}

/// Run the fixpoint loop from the seed `r`.
pub fn complete(alphabet: &Alphabet, r: &Word) -> Result<CompletionState> {
    if r.len() < 2 {
        return Err(Error::Invalid("seed must have at least two symbols".into()));
    }
    if !alphabet.contains(r) {
        return Err(Error::SymbolOutOfRange);
    }
    let s1 = vec![r.clone()];
    let witnesses = generate_with_witnesses(&s1);
    let e1: Vec<Equation> = witnesses.keys().cloned().collect();
    let mut state = CompletionState {
        alphabet: alphabet.clone(),
        r: r.clone(),
        trace: vec![TraceRecord { theta: 1, s_size: 1, e_size: e1.len(), new_equations: e1.clone() }],
        s_layers: vec![s1],
        e_layers: vec![e1],
        witnesses,
        fixpoint: false,
    };
    loop {
        let s_next: Vec<Word> = expand_null_sequences(&state)?.into_iter().collect();
        let mut new_equations = Vec::new();
        for (eq, w) in generate_with_witnesses(&s_next) {
            if !state.witnesses.contains_key(&eq) {
                new_equations.push(eq.clone());
                state.witnesses.insert(eq, w);
            }
        }
        if s_next.as_slice() == state.gamma() && new_equations.is_empty() {
            state.fixpoint = true;
            return Ok(state);
        }
        let e_next: Vec<Equation> = state.witnesses.keys().cloned().collect();
        state.trace.push(TraceRecord {
            theta: state.s_layers.len() + 1,
            s_size: s_next.len(),
            e_size: e_next.len(),
            new_equations,
        });
        state.s_layers.push(s_next);
        state.e_layers.push(e_next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::decide_fixed_length;

    fn ab(chars: &str) -> Alphabet {
        Alphabet::from_chars(chars).unwrap()
    }

    #[test]
    fn generation_from_single_seed() {
        let a = ab("abc");
        let sys = generate_equations(&a, &[a.parse_word("abbcab").unwrap()]).unwrap();
        let want = Equation { lhs: a.parse_word("abbc").unwrap(), rhs: a.parse_word("bcab").unwrap() };
        assert_eq!(sys.equations, vec![want]);
    }

    #[test]
    fn generation_across_words() {
        let a = ab("xy");
        let ws: Vec<Word> = ["xxyxx", "yxxxx", "xxxxy"].iter().map(|w| a.parse_word(w).unwrap()).collect();
        let sys = generate_equations(&a, &ws).unwrap();
        let xy = Equation { lhs: a.parse_word("xy").unwrap(), rhs: a.parse_word("yx").unwrap() };
        assert!(sys.equations.contains(&xy));
        let ws: Vec<Word> = ["ab", "ba"].iter().map(|w| ab("ab").parse_word(w).unwrap()).collect();
        assert!(generate_equations(&ab("ab"), &ws).unwrap().is_empty());
    }

    #[test]
    fn trivial_seed() {
        let a = ab("ab");
        let st = complete(&a, &a.parse_word("ab").unwrap()).unwrap();
        assert!(st.fixpoint);
        assert!(st.delta().is_empty());
        assert_eq!(st.gamma(), &[a.parse_word("ab").unwrap()]);
    }

    #[test]
    fn monotone_layers() {
        let a = ab("abc");
        let st = complete(&a, &a.parse_word("abbcab").unwrap()).unwrap();
        for pair in st.s_layers.windows(2) {
            assert!(pair[0].iter().all(|w| pair[1].contains(w)));
        }
        for pair in st.e_layers.windows(2) {
            assert!(pair[0].iter().all(|e| pair[1].contains(e)));
        }
        for e in st.delta() {
            assert!(e.is_length_preserving() && e.lhs.len() < st.r.len());
        }
        assert!(st.gamma().iter().all(|w| w.len() == 6));
        let sys = st.delta_system();
        for (l, r) in [("abbc", "bcab"), ("abbca", "cabab")] {
            let out = decide_fixed_length(&a.parse_word(l).unwrap(), &a.parse_word(r).unwrap(), &sys).unwrap();
            assert!(out.is_equivalent());
        }
    }

    #[test]
    fn expansion_of_xxyxx() {
        let a = ab("xy");
        let r = a.parse_word("xxyxx").unwrap();
        let st = complete(&a, &r).unwrap();
        let sys = st.delta_system();
        let out = decide_fixed_length(&a.parse_word("xy").unwrap(), &a.parse_word("yx").unwrap(), &sys).unwrap();
        assert!(out.is_equivalent());
        assert_eq!(st.gamma().len(), 5);
    }
}
