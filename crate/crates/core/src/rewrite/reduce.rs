use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Word;
use crate::combinatorics::find_occurrences;
use crate::error::{Error, Result};

use super::search::{DecisionOutcome, SearchReport};
use super::{Derivation, Direction, EquationSystem, Step};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OverlapViolation {
    /// Left-hand side `inner` occurs inside `outer` at `position`.
    Contains { outer: usize, inner: usize, position: usize },
    /// A proper suffix of `left` of this length is a proper prefix of `right`.
    Overlap { left: usize, right: usize, length: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OverlapReport {
    pub violations: Vec<OverlapViolation>,
}

impl OverlapReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for OverlapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no overlaps");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                OverlapViolation::Contains { outer, inner, position } => {
                    format!("lhs {inner} occurs in lhs {outer} at {position}")
                }
                OverlapViolation::Overlap { left, right, length } => {
                    format!("suffix of lhs {left} overlaps prefix of lhs {right} by {length}")
                }
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Check that no left-hand side lies inside another and that no two (or one
/// with itself) overlap.
pub fn check_non_overlapping(lhs: &[Word]) -> OverlapReport {
    let mut violations = Vec::new();
    for (p, a) in lhs.iter().enumerate() {
        for (q, b) in lhs.iter().enumerate() {
            if p != q && !a.is_empty() {
                for position in find_occurrences(b, a).unwrap_or_default() {
                    violations.push(OverlapViolation::Contains { outer: q, inner: p, position });
                }
            }
            for length in 1..a.len().min(b.len()) {
                if a[a.len() - length..] == b[..length] {
                    violations.push(OverlapViolation::Overlap { left: p, right: q, length });
                }
            }
        }
    }
    OverlapReport { violations }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Uniform choice among all redexes, reproducible from the seed.
    Randomized(u64),
}

fn require_decreasing(sys: &EquationSystem) -> Result<()> {
    match sys.equations.iter().position(|e| !e.is_decreasing()) {
        Some(i) => Err(Error::NotDecreasing(i)),
        None => Ok(()),
    }
}

/// Apply `lhs → rhs` until no left-hand side occurs.
pub fn reduce_to_normal_form(w: &Word, sys: &EquationSystem, strategy: Strategy) -> Result<(Word, Derivation)> {
    require_decreasing(sys)?;
    let mut rng = match strategy {
        Strategy::Randomized(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut cur = w.clone();
    let mut steps = Vec::new();
    loop {
        let mut redexes = Vec::new();
        for (i, eq) in sys.equations.iter().enumerate() {
            for pos in find_occurrences(&cur, &eq.lhs)? {
                redexes.push((pos, i));
            }
        }
        if redexes.is_empty() {
            break;
        }
        let (pos, i) = match strategy {
            Strategy::Leftmost => *redexes.iter().min().unwrap(),
            Strategy::Rightmost => *redexes.iter().max_by_key(|(p, i)| (*p, std::cmp::Reverse(*i))).unwrap(),
            Strategy::Randomized(_) => redexes[rng.as_mut().unwrap().gen_range(0..redexes.len())],
        };
        let eq = &sys.equations[i];
        cur = cur.splice(pos, eq.lhs.len(), &eq.rhs);
        steps.push(Step::rule(i, Direction::Forward, pos));
    }
    Ok((cur.clone(), Derivation { start: w.clone(), steps, end: cur }))
}

/// Exact equivalence for strictly decreasing systems with non-overlapping
/// left-hand sides: compare normal forms.
pub fn decide_reducing(p: &Word, q: &Word, sys: &EquationSystem) -> Result<DecisionOutcome> {
    require_decreasing(sys)?;
    let lhs: Vec<Word> = sys.equations.iter().map(|e| e.lhs.clone()).collect();
    let report = check_non_overlapping(&lhs);
    if !report.passes() {
        return Err(Error::Overlapping(report));
    }
    let (np, dp) = reduce_to_normal_form(p, sys, Strategy::Leftmost)?;
    let (nq, dq) = reduce_to_normal_form(q, sys, Strategy::Leftmost)?;
    let report = SearchReport {
        states_explored: dp.len() + dq.len() + 2,
        max_length_reached: p.len().max(q.len()),
        saturated: true,
    };
    Ok(if np == nq {
        DecisionOutcome::equivalent(dp.then(&dq.reversed())?, report)
    } else {
        DecisionOutcome::not_equivalent(report)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::rewrite::{Equation, Verdict};

    fn semi(chars: &str, eqs: &[(&str, &str)]) -> (Alphabet, EquationSystem) {
        let ab = Alphabet::from_chars(chars).unwrap();
        let eqs = eqs
            .iter()
            .map(|(l, r)| Equation::new(ab.parse_word(l).unwrap(), ab.parse_word(r).unwrap()).unwrap())
            .collect();
        (ab.clone(), EquationSystem::semi(ab, eqs).unwrap())
    }

    fn words(ab: &Alphabet, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| ab.parse_word(w).unwrap()).collect()
    }

    #[test]
    fn overlap_checks() {
        let ab = Alphabet::from_chars("abcd").unwrap();
        assert!(check_non_overlapping(&words(&ab, &["ab", "cd"])).passes());
        let r = check_non_overlapping(&words(&ab, &["aba"]));
        assert_eq!(r.violations, vec![OverlapViolation::Overlap { left: 0, right: 0, length: 1 }]);
        let r = check_non_overlapping(&words(&ab, &["abc", "bcd"]));
        assert_eq!(r.violations, vec![OverlapViolation::Overlap { left: 0, right: 1, length: 2 }]);
        let r = check_non_overlapping(&words(&ab, &["abc", "b"]));
        assert_eq!(r.violations, vec![OverlapViolation::Contains { outer: 0, inner: 1, position: 1 }]);
    }

    #[test]
    fn reductions() {
        let (ab, s) = semi("abcxy", &[("ab", "c")]);
        let w = |t: &str| ab.parse_word(t).unwrap();
        assert_eq!(reduce_to_normal_form(&w("xaby"), &s, Strategy::Leftmost).unwrap().0, w("xcy"));
        for st in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Randomized(7)] {
            let (nf, d) = reduce_to_normal_form(&w("ababab"), &s, st).unwrap();
            assert_eq!(nf, w("ccc"));
            d.replay(&s).unwrap();
        }
        let (nf, d) = reduce_to_normal_form(&w("aa"), &s, Strategy::Leftmost).unwrap();
        assert_eq!((nf, d.len()), (w("aa"), 0));
    }

    #[test]
    fn reducing_decisions() {
        let (ab, s) = semi("abcdxy", &[("ab", "c")]);
        let w = |t: &str| ab.parse_word(t).unwrap();
        let out = decide_reducing(&w("xaby"), &w("xcy"), &s).unwrap();
        assert_eq!(out.verdict, Verdict::Equivalent);
        out.witness.unwrap().replay(&s).unwrap();
        assert_eq!(decide_reducing(&w("abab"), &w("cd"), &s).unwrap().verdict, Verdict::NotEquivalent);
    }

    #[test]
    fn overlapping_system_is_refused() {
        let (ab, s) = semi("ab", &[("aba", "b")]);
        let w = |t: &str| ab.parse_word(t).unwrap();
        let left = reduce_to_normal_form(&w("ababa"), &s, Strategy::Leftmost).unwrap().0;
        let right = reduce_to_normal_form(&w("ababa"), &s, Strategy::Rightmost).unwrap().0;
        assert_eq!((left, right), (w("bba"), w("abb")));
        assert!(matches!(decide_reducing(&w("ababa"), &w("bba"), &s), Err(Error::Overlapping(_))));
    }

    #[test]
    fn non_decreasing_is_refused() {
        let (ab, s) = semi("ab", &[("ab", "ba")]);
        let w = ab.parse_word("ab").unwrap();
        assert!(matches!(reduce_to_normal_form(&w, &s, Strategy::Leftmost), Err(Error::NotDecreasing(0))));
    }
}
