use std::collections::BTreeSet;

use crate::alphabet::Word;
use crate::rewrite::{Equation, FixedLengthClasses};

use super::{CompletionState, MinimizedSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub name: &'static str,
    pub passed: bool,
    /// The first failing instance, rendered.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonReport {
    pub checks: Vec<TheoremCheck>,
}

impl EpsilonReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&TheoremCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn outcome(name: &'static str, first_failure: Option<String>) -> TheoremCheck {
    TheoremCheck { name, passed: first_failure.is_none(), counterexample: first_failure }
}

/// Structural checks on a minimized system:
///
/// - `coverage`: every `(δ)`-equation follows from `(ε)`;
/// - `independence`: no `(ε)`-equation follows from the others;
/// - `no-identities`, `no-duplicates`;
/// - `prefix-into-gamma`: no `TX = TY` with `T` non-empty and `X` or `Y` a
///   prefix of a `(γ)`-word;
/// - `prefix-from-gamma-suffix`: no `SX = SY` with `S` non-empty and a
///   suffix of a `(γ)`-word;
/// - `commutation`: for each `(δ)`-equation witnessed by `R_x ≡ PU`,
///   `UQ ≡ R_y`, the words `P`, `Q`, `U` commute with every `(γ)`-word;
/// - `split-commutation`: whenever a `(δ)`-side is `N·M` with `M` a prefix
///   of a `(γ)`-word, `N` and `M` commute with every `(γ)`-word.
pub fn verify_epsilon_theorems(ms: &MinimizedSystem, state: &CompletionState) -> EpsilonReport {
    let ab = &state.alphabet;
    let show = |e: &Equation| format!("{} = {}", ab.render(&e.lhs), ab.render(&e.rhs));
    let eps = &ms.epsilon.equations;
    let gamma = state.gamma();
    let mut checks = Vec::new();

    let mut eps_classes = FixedLengthClasses::new(ms.epsilon.clone()).expect("length-preserving");
    let uncovered = state.delta().iter().find(|e| !eps_classes.equivalent(&e.lhs, &e.rhs));
    checks.push(outcome("coverage", uncovered.map(show)));

    let dependent = eps.iter().enumerate().find(|(i, e)| {
        let rest: Vec<Equation> = eps.iter().enumerate().filter(|(j, _)| j != i).map(|(_, x)| x.clone()).collect();
        let mut c = FixedLengthClasses::new(ms.epsilon.with_equations(rest)).expect("length-preserving");
        c.equivalent(&e.lhs, &e.rhs)
    });
    checks.push(outcome("independence", dependent.map(|(_, e)| show(e))));

    checks.push(outcome("no-identities", eps.iter().find(|e| e.lhs == e.rhs).map(show)));

    let mut seen = BTreeSet::new();
    checks.push(outcome("no-duplicates", eps.iter().find(|e| !seen.insert(e.canonical())).map(show)));

    let prefixes_gamma = |x: &[crate::Symbol]| gamma.iter().any(|g| g.starts_with(x));
    let ends_gamma = |s: &[crate::Symbol]| gamma.iter().any(|g| g.ends_with(s));
    let common_prefix = |e: &Equation| e.lhs.iter().zip(e.rhs.iter()).take_while(|(a, b)| a == b).count();

    let bad_t = eps.iter().find_map(|e| {
        (1..=common_prefix(e))
            .find(|&t| prefixes_gamma(&e.lhs[t..]) || prefixes_gamma(&e.rhs[t..]))
            .map(|t| format!("{} with common prefix {}", show(e), ab.render(&e.lhs[..t])))
    });
    checks.push(outcome("prefix-into-gamma", bad_t));

    let bad_s = eps.iter().find_map(|e| {
        (1..=common_prefix(e))
            .find(|&t| ends_gamma(&e.lhs[..t]))
            .map(|t| format!("{} with common prefix {}", show(e), ab.render(&e.lhs[..t])))
    });
    checks.push(outcome("prefix-from-gamma-suffix", bad_s));

    let mut delta = FixedLengthClasses::new(state.delta_system()).expect("length-preserving");
    let mut commutes = |w: &Word, r: &Word| delta.equivalent(&w.concat(r), &r.concat(w));

    let mut bad_comm = None;
    'comm: for (e, wit) in &state.witnesses {
        let o = &wit.overlap;
        for r in gamma {
            for (name, w) in [("P", &o.c), ("Q", &o.d), ("U", &o.u)] {
                if !commutes(w, r) {
                    bad_comm = Some(format!("{name} = {} of {} against {}", ab.render(w), show(e), ab.render(r)));
                    break 'comm;
                }
            }
        }
    }
    checks.push(outcome("commutation", bad_comm));

    let mut bad_split = None;
    'split: for e in state.delta() {
        for side in [&e.lhs, &e.rhs] {
            for cut in 0..side.len() {
                let (n, m) = (side.prefix(cut), side.suffix(side.len() - cut));
                if !prefixes_gamma(&m) {
                    continue;
                }
                for r in gamma {
                    if !commutes(&n, r) || !commutes(&m, r) {
                        bad_split = Some(format!(
                            "{} split as {}·{} against {}",
                            ab.render(side),
                            ab.render(&n),
                            ab.render(&m),
                            ab.render(r)
                        ));
                        break 'split;
                    }
                }
            }
        }
    }
    checks.push(outcome("split-commutation", bad_split));

    EpsilonReport { checks }
}
