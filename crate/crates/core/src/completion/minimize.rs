use itertools::Itertools;

use crate::error::{Error, Result};
use crate::rewrite::{decide_fixed_length, Derivation, Equation, EquationSystem, FixedLengthClasses};

use super::CompletionState;

/// Exact subset search is used up to this many `(δ)`-equations.
pub const EXACT_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizedSystem {
    pub epsilon: EquationSystem,
    /// A derivation under `epsilon` for each `(δ)`-equation left out.
    pub provenance: Vec<(Equation, Derivation)>,
    /// False when the greedy fallback was used.
    pub certified_minimum: bool,
}

fn key(e: &Equation) -> (usize, &Equation) {
    (e.symbol_count(), e)
}

fn derives_all(sys: &EquationSystem, subset: &[Equation], targets: &[Equation]) -> bool {
    let mut classes = FixedLengthClasses::new(sys.with_equations(subset.to_vec())).expect("length-preserving");
    targets.iter().all(|t| subset.contains(t) || classes.equivalent(&t.lhs, &t.rhs))
}

/// Choose a smallest subsystem of `(δ)` from which every `(δ)`-equation
/// follows, preferring equations with fewer symbols.
pub fn minimize(state: &CompletionState) -> Result<MinimizedSystem> {
    if !state.fixpoint {
        return Err(Error::NotAtFixpoint);
    }
    let sys = state.delta_system();
    let mut delta: Vec<Equation> = state.delta().to_vec();
    delta.sort_by(|a, b| key(a).cmp(&key(b)));

    let (mut eps, certified) = if delta.len() <= EXACT_LIMIT {
        let found = (0..=delta.len())
            .find_map(|k| {
                delta
                    .iter()
                    .cloned()
                    .combinations(k)
                    .find(|subset| derives_all(&sys, subset, &delta))
            })
            .expect("the whole system derives itself");
        (found, true)
    } else {
        let mut eps = delta.clone();
        for e in delta.iter().rev() {
            let rest: Vec<Equation> = eps.iter().filter(|x| *x != e).cloned().collect();
            if derives_all(&sys, &rest, std::slice::from_ref(e)) {
                eps = rest;
            }
        }
        (eps, false)
    };

    // Swap members for smaller equations while coverage is kept.
    'improve: loop {
        for i in 0..eps.len() {
            for cand in &delta {
                if key(cand) >= key(&eps[i]) || eps.contains(cand) {
                    continue;
                }
                let mut trial = eps.clone();
                trial[i] = cand.clone();
                if derives_all(&sys, &trial, &delta) {
                    eps = trial;
                    continue 'improve;
                }
            }
        }
        break;
    }
    eps.sort();

    let epsilon = sys.with_equations(eps.clone());
    let mut provenance = Vec::new();
    for e in state.delta() {
        if !eps.contains(e) {
            let d = decide_fixed_length(&e.lhs, &e.rhs, &epsilon)?
                .witness
                .expect("coverage was checked");
            provenance.push((e.clone(), d));
        }
    }
    Ok(MinimizedSystem { epsilon, provenance, certified_minimum: certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::completion::complete;

    #[test]
    fn xxyxx_minimizes_to_commutation() {
        let a = Alphabet::from_chars("xy").unwrap();
        let st = complete(&a, &a.parse_word("xxyxx").unwrap()).unwrap();
        let ms = minimize(&st).unwrap();
        let xy = Equation { lhs: a.parse_word("xy").unwrap(), rhs: a.parse_word("yx").unwrap() };
        assert_eq!(ms.epsilon.equations, vec![xy]);
        assert!(ms.certified_minimum);
        assert_eq!(ms.provenance.len(), st.delta().len() - 1);
        for (_, d) in &ms.provenance {
            d.replay(&ms.epsilon).unwrap();
        }
    }

    #[test]
    fn single_equation_is_kept() {
        let a = Alphabet::from_chars("abc").unwrap();
        let mut st = complete(&a, &a.parse_word("abc").unwrap()).unwrap();
        let e = Equation { lhs: a.parse_word("ab").unwrap(), rhs: a.parse_word("ba").unwrap() };
        st.e_layers.push(vec![e.clone()]);
        assert_eq!(minimize(&st).unwrap().epsilon.equations, vec![e]);
    }

    #[test]
    fn refuses_unfinished_state() {
        let a = Alphabet::from_chars("ab").unwrap();
        let mut st = complete(&a, &a.parse_word("aba").unwrap()).unwrap();
        st.fixpoint = false;
        assert!(matches!(minimize(&st), Err(Error::NotAtFixpoint)));
    }
}
