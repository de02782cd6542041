//! Left cancellation for systems whose equations start with distinct
//! initial symbols, and the cyclic-shift check built on it.

use std::fmt;

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};

use super::search::{decide_bounded, fixed_length_closure, Budget, Verdict};
use super::{Action, Derivation, EquationSystem, Step};

/// `lhs ≡ x·p`, `rhs ≡ y·q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub x: Symbol,
    pub p: Word,
    pub y: Symbol,
    pub q: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationCertificate {
    pub entries: Vec<CertificateEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CancellationViolation {
    /// Both sides of one equation start with the same symbol.
    SameInitial { equation: usize },
    /// Two right-hand sides start with the same symbol.
    SharedRight { first: usize, second: usize },
    /// A right-hand side starts with the initial of another left-hand side.
    RightMeetsLeft { right: usize, left: usize },
}

impl fmt::Display for CancellationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SameInitial { equation } => write!(f, "both sides of equation {equation} start alike"),
            Self::SharedRight { first, second } => {
                write!(f, "right sides of equations {first} and {second} start alike")
            }
            Self::RightMeetsLeft { right, left } => {
                write!(f, "right side of equation {right} starts like left side of equation {left}")
            }
        }
    }
}

/// Every right-hand initial must differ from every other right-hand initial
/// and from every left-hand initial.
pub fn check_cancellation_condition(sys: &EquationSystem) -> std::result::Result<CancellationCertificate, CancellationViolation> {
    let eqs = &sys.equations;
    for (k, e) in eqs.iter().enumerate() {
        for (j, f) in eqs.iter().enumerate() {
            if e.rhs[0] == f.lhs[0] {
                return Err(if j == k {
                    CancellationViolation::SameInitial { equation: k }
                } else {
                    CancellationViolation::RightMeetsLeft { right: k, left: j }
                });
            }
            if j > k && e.rhs[0] == f.rhs[0] {
                return Err(CancellationViolation::SharedRight { first: k, second: j });
            }
        }
    }
    Ok(CancellationCertificate {
        entries: eqs
            .iter()
            .map(|e| CertificateEntry {
                x: e.lhs[0],
                p: Word::from(&e.lhs[1..]),
                y: e.rhs[0],
                q: Word::from(&e.rhs[1..]),
            })
            .collect(),
    })
}

fn require_certificate(sys: &EquationSystem) -> Result<()> {
    check_cancellation_condition(sys)
        .map(|_| ())
        .map_err(|v| Error::NoCancellationCertificate(v.to_string()))
}

fn require_rules_only(d: &Derivation) -> Result<()> {
    if d.steps.iter().any(|s| !matches!(s.action, Action::Rule { .. })) {
        return Err(Error::Invalid("cancellation needs a derivation of rule steps only".into()));
    }
    Ok(())
}

/// From a derivation of `z·m = z·n` build one of `m = n` with no more steps.
pub fn cancel_symbol(sys: &EquationSystem, proof: &Derivation) -> Result<Derivation> {
    require_certificate(sys)?;
    require_rules_only(proof)?;
    let words = proof.words(sys, None)?;
    if proof.start.is_empty() || proof.end.is_empty() || proof.start[0] != proof.end[0] {
        return Err(Error::Invalid("derivation does not start and end with the same symbol".into()));
    }
    let out = peel(sys, &words, &proof.steps)?;
    debug_assert!(out.len() <= proof.len());
    Ok(out)
}

/// `words[i+1]` is `steps[i]` applied to `words[i]`; the first and last
/// words share their initial symbol.
fn peel(sys: &EquationSystem, words: &[Word], steps: &[Step]) -> Result<Derivation> {
    let z = words[0][0];
    let tail = |w: &Word| Word::from(&w[1..]);
    let mut out = Derivation::identity(tail(&words[0]));
    let mut i = 0;
    while i < steps.len() {
        let step = steps[i];
        if step.position > 0 {
            out.steps.push(Step { position: step.position - 1, ..step });
            out.end = tail(&words[i + 1]);
            i += 1;
            continue;
        }
        let Action::Rule { index, direction } = step.action else {
            unreachable!("rule steps only");
        };
        let (from, to) = sys.equations[index].sides(direction);
        let back = (i + 1..steps.len())
            .find(|&l| words[l + 1][0] == z)
            .ok_or_else(|| Error::BadDerivation("front symbol never returns".into()))?;
        // The excursion leaves and re-enters through the same side `to`.
        let inner = &words[i + 1..=back];
        if !inner[0].starts_with(to) || !inner[inner.len() - 1].starts_with(to) {
            return Err(Error::Invalid("system lacks the distinct-initial-symbol condition".into()));
        }
        let mut sub_words = inner.to_vec();
        let mut sub_steps = steps[i + 1..back].to_vec();
        for _ in 0..to.len() {
            let d = peel(sys, &sub_words, &sub_steps)?;
            sub_words = d.words(sys, None)?;
            sub_steps = d.steps;
        }
        let rest = Derivation {
            start: sub_words[0].clone(),
            steps: sub_steps,
            end: sub_words.last().unwrap().clone(),
        };
        let moved = rest.embedded(&from[1..], &[]);
        debug_assert_eq!(moved.start, out.end);
        out.steps.extend(moved.steps);
        out.end = tail(&words[back + 1]);
        debug_assert_eq!(moved.end, out.end);
        i = back + 1;
    }
    Ok(out)
}

/// Cancel a common prefix: from `prefix·m = prefix·n` derive `m = n`.
pub fn cancel_prefix(sys: &EquationSystem, prefix_len: usize, proof: &Derivation) -> Result<Derivation> {
    if proof.start.len() < prefix_len
        || proof.end.len() < prefix_len
        || proof.start[..prefix_len] != proof.end[..prefix_len]
    {
        return Err(Error::Invalid("derivation ends do not share the prefix".into()));
    }
    let mut cur = proof.clone();
    for _ in 0..prefix_len {
        cur = cancel_symbol(sys, &cur)?;
    }
    Ok(cur)
}

/// From `c·m = d·n` and `c = d` derive `m = n`. The result has at most as
/// many steps as both proofs together.
pub fn cancel_left(
    c: &Word,
    m: &Word,
    d: &Word,
    n: &Word,
    sys: &EquationSystem,
    proof: &Derivation,
    cproof: &Derivation,
) -> Result<Derivation> {
    require_certificate(sys)?;
    require_rules_only(proof)?;
    require_rules_only(cproof)?;
    if proof.start != c.concat(m) || proof.end != d.concat(n) {
        return Err(Error::Invalid("proof does not relate c·m and d·n".into()));
    }
    if &cproof.start != c || &cproof.end != d {
        return Err(Error::Invalid("second proof does not relate c and d".into()));
    }
    proof.replay(sys)?;
    cproof.replay(sys)?;
    let joined = proof.then(&cproof.reversed().embedded(&[], n))?;
    cancel_prefix(sys, c.len(), &joined)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationCheck {
    pub word: Word,
    pub rotation: Word,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicShiftReport {
    /// Words found equivalent to `t`.
    pub family: Vec<Word>,
    /// The family is the whole class of `t`.
    pub family_complete: bool,
    pub checks: Vec<RotationCheck>,
}

impl CyclicShiftReport {
    pub fn all_equivalent(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Equivalent)
    }

    pub fn unknown(&self) -> impl Iterator<Item = &RotationCheck> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Unknown)
    }
}

/// Check that every rotation of every word equivalent to `t` is again
/// equivalent to `t`.
pub fn cyclic_shift_family(t: &Word, sys: &EquationSystem, budget: Budget) -> CyclicShiftReport {
    let (family, family_complete) = match fixed_length_closure(t, sys) {
        Ok(class) if class.len() <= budget.max_states => (class, true),
        _ => {
            let mut fam = vec![t.clone()];
            for rot in (1..t.len()).map(|k| t.rotate_left(k)) {
                if !fam.contains(&rot) && decide_bounded(t, &rot, sys, budget).is_equivalent() {
                    fam.push(rot);
                }
            }
            fam.sort();
            (fam, false)
        }
    };
    let mut checks = Vec::new();
    for w in &family {
        for k in 0..w.len() {
            let rotation = w.rotate_left(k);
            let verdict = if family.binary_search(&rotation).is_ok() {
                Verdict::Equivalent
            } else if family_complete {
                Verdict::NotEquivalent
            } else {
                decide_bounded(t, &rotation, sys, budget).verdict
            };
            checks.push(RotationCheck { word: w.clone(), rotation, verdict });
        }
    }
    checks.dedup();
    CyclicShiftReport { family, family_complete, checks }
}
