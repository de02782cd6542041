use std::collections::HashMap;

use crate::alphabet::{Symbol, Word};
use crate::error::Result;

use super::{neighbours, Action, Derivation, EquationSystem, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_length: usize,
    pub max_states: usize,
}

impl Budget {
    pub const DEFAULT_MAX_STATES: usize = 1_000_000;

    /// `max(|p|, |q|) + 2·(longest equation side)` and a million states.
    pub fn default_for(p: &[Symbol], q: &[Symbol], sys: &EquationSystem) -> Self {
        Budget {
            max_length: p.len().max(q.len()) + 2 * sys.longest_side(),
            max_states: Self::DEFAULT_MAX_STATES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    Unknown,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchReport {
    pub states_explored: usize,
    pub max_length_reached: usize,
    /// The explored state space was closed under every move.
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionOutcome {
    pub verdict: Verdict,
    /// Present exactly when the verdict is `Equivalent`.
    pub witness: Option<Derivation>,
    pub report: SearchReport,
}

impl DecisionOutcome {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }

    pub(crate) fn equivalent(witness: Derivation, report: SearchReport) -> Self {
        DecisionOutcome { verdict: Verdict::Equivalent, witness: Some(witness), report }
    }

    pub(crate) fn not_equivalent(report: SearchReport) -> Self {
        DecisionOutcome { verdict: Verdict::NotEquivalent, witness: None, report }
    }
}

/// Breadth-first search tree rooted at one word.
struct Tree {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    parent: Vec<Option<(usize, Step)>>,
}

impl Tree {
    fn new(root: Word) -> Self {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        Tree { words: vec![root], index, parent: vec![None] }
    }

    fn insert(&mut self, w: Word, from: usize, step: Step) -> Option<usize> {
        if self.index.contains_key(&w) {
            return None;
        }
        let i = self.words.len();
        self.index.insert(w.clone(), i);
        self.words.push(w);
        self.parent.push(Some((from, step)));
        Some(i)
    }

    fn path_to(&self, mut i: usize) -> Derivation {
        let end = self.words[i].clone();
        let mut steps = Vec::new();
        while let Some((p, s)) = self.parent[i] {
            steps.push(s);
            i = p;
        }
        steps.reverse();
        Derivation { start: self.words[0].clone(), steps, end }
    }

    fn max_len(&self) -> usize {
        self.words.iter().map(|w| w.len()).max().unwrap_or(0)
    }
}

fn fixed_length_tree(p: &Word, sys: &EquationSystem, target: Option<&Word>) -> (Tree, Option<usize>) {
    let mut tree = Tree::new(p.clone());
    if target == Some(p) {
        return (tree, Some(0));
    }
    let mut head = 0;
    while head < tree.words.len() {
        let cur = tree.words[head].clone();
        let mut found = None;
        neighbours(&cur, sys, true, &mut |w, step| {
            if found.is_none() {
                let hit = target == Some(&w);
                if let Some(i) = tree.insert(w, head, step) {
                    if hit {
                        found = Some(i);
                    }
                }
            }
        });
        if found.is_some() {
            return (tree, found);
        }
        head += 1;
    }
    (tree, None)
}

/// Exact equivalence under a length-preserving system by exhausting the
/// finite class of `p`.
pub fn decide_fixed_length(p: &Word, q: &Word, sys: &EquationSystem) -> Result<DecisionOutcome> {
    sys.require_length_preserving()?;
    if p.len() != q.len() {
        return Ok(DecisionOutcome::not_equivalent(SearchReport {
            states_explored: 0,
            max_length_reached: p.len(),
            saturated: true,
        }));
    }
    let (tree, found) = fixed_length_tree(p, sys, Some(q));
    let report = SearchReport {
        states_explored: tree.words.len(),
        max_length_reached: p.len(),
        saturated: found.is_none(),
    };
    Ok(match found {
        Some(i) => DecisionOutcome::equivalent(tree.path_to(i), report),
        None => DecisionOutcome::not_equivalent(report),
    })
}

/// The full class of `w` under a length-preserving system, sorted.
pub fn fixed_length_closure(w: &Word, sys: &EquationSystem) -> Result<Vec<Word>> {
    sys.require_length_preserving()?;
    let (tree, _) = fixed_length_tree(w, sys, None);
    let mut words = tree.words;
    words.sort();
    Ok(words)
}

/// Memoised equivalence classes of a length-preserving system.
#[derive(Clone, Debug)]
pub struct FixedLengthClasses {
    sys: EquationSystem,
    class_of: HashMap<Word, usize>,
    classes: Vec<Vec<Word>>,
}

impl FixedLengthClasses {
    pub fn new(sys: EquationSystem) -> Result<Self> {
        sys.require_length_preserving()?;
        Ok(FixedLengthClasses { sys, class_of: HashMap::new(), classes: Vec::new() })
    }

    pub fn system(&self) -> &EquationSystem {
        &self.sys
    }

    pub fn class_id(&mut self, w: &Word) -> usize {
        if let Some(&id) = self.class_of.get(w) {
            return id;
        }
        let (tree, _) = fixed_length_tree(w, &self.sys, None);
        let mut words = tree.words;
        words.sort();
        let id = self.classes.len();
        for m in &words {
            self.class_of.insert(m.clone(), id);
        }
        self.classes.push(words);
        id
    }

    /// Sorted members of a class; the first is its least representative.
    pub fn members(&self, id: usize) -> &[Word] {
        &self.classes[id]
    }

    pub fn representative(&mut self, w: &Word) -> Word {
        let id = self.class_id(w);
        self.classes[id][0].clone()
    }

    pub fn equivalent(&mut self, p: &Word, q: &Word) -> bool {
        p.len() == q.len() && self.class_id(p) == self.class_id(q)
    }
}

struct Side {
    tree: Tree,
    frontier: Vec<usize>,
    pruned: bool,
    exhausted: bool,
}

impl Side {
    fn new(root: Word) -> Self {
        Side { tree: Tree::new(root), frontier: vec![0], pruned: false, exhausted: false }
    }

    fn saturated(&self) -> bool {
        self.frontier.is_empty() && !self.pruned && !self.exhausted
    }

    /// Expand one breadth-first layer; returns the indices added.
    fn expand(&mut self, sys: &EquationSystem, null: Option<&[Symbol]>, budget: &Budget, cap: usize) -> Vec<usize> {
        let mut added = Vec::new();
        let frontier = std::mem::take(&mut self.frontier);
        'outer: for i in frontier {
            let cur = self.tree.words[i].clone();
            let mut moves = Vec::new();
            neighbours(&cur, sys, true, &mut |w, s| moves.push((w, s)));
            if let Some(r) = null {
                null_moves(&cur, r, budget.max_length, &mut |w, s| moves.push((w, s)));
                if cur.len() + r.len() > budget.max_length {
                    self.pruned = true;
                }
            }
            for (w, step) in moves {
                if w.len() > budget.max_length {
                    self.pruned = true;
                    continue;
                }
                if w.is_empty() {
                    continue;
                }
                if let Some(j) = self.tree.insert(w, i, step) {
                    added.push(j);
                    if self.tree.words.len() >= cap {
                        self.exhausted = true;
                        break 'outer;
                    }
                }
            }
        }
        self.frontier = if self.exhausted { Vec::new() } else { added.clone() };
        added
    }
}

fn null_moves(w: &[Symbol], r: &[Symbol], max_length: usize, f: &mut impl FnMut(Word, Step)) {
    if r.len() <= w.len() {
        for pos in 0..=w.len() - r.len() {
            if w[pos..pos + r.len()] == r[..] {
                f(Word::from(w).splice(pos, r.len(), &[]), Step { action: Action::DeleteNull, position: pos });
            }
        }
    }
    if w.len() + r.len() <= max_length {
        for pos in 0..=w.len() {
            f(Word::from(w).splice(pos, 0, r), Step { action: Action::InsertNull, position: pos });
        }
    }
}

/// Bounded bidirectional search over words of length at most
/// `budget.max_length`. Each side may hold `max_states / 2` words.
/// `NotEquivalent` is returned only when one side's closure is complete.
pub fn decide_bounded(p: &Word, q: &Word, sys: &EquationSystem, budget: Budget) -> DecisionOutcome {
    bounded(p, q, sys, None, budget)
}

/// As [`decide_bounded`], with insertion and deletion of `null` as extra moves.
pub fn decide_bounded_with_null(p: &Word, q: &Word, sys: &EquationSystem, null: &[Symbol], budget: Budget) -> DecisionOutcome {
    bounded(p, q, sys, Some(null), budget)
}

fn bounded(p: &Word, q: &Word, sys: &EquationSystem, null: Option<&[Symbol]>, budget: Budget) -> DecisionOutcome {
    let mut a = Side::new(p.clone());
    let mut b = Side::new(q.clone());
    let cap = (budget.max_states / 2).max(1);
    let report = |a: &Side, b: &Side, saturated: bool| SearchReport {
        states_explored: a.tree.words.len() + b.tree.words.len(),
        max_length_reached: a.tree.max_len().max(b.tree.max_len()),
        saturated,
    };
    if p == q {
        return DecisionOutcome::equivalent(Derivation::identity(p.clone()), report(&a, &b, false));
    }
    loop {
        let new_a = a.expand(sys, null, &budget, cap);
        let new_b = b.expand(sys, null, &budget, cap);
        let meet = new_a
            .iter()
            .find_map(|&i| b.tree.index.get(&a.tree.words[i]).map(|&j| (i, j)))
            .or_else(|| {
                new_b
                    .iter()
                    .find_map(|&j| a.tree.index.get(&b.tree.words[j]).map(|&i| (i, j)))
            });
        if let Some((i, j)) = meet {
            let there = a.tree.path_to(i);
            let back = b.tree.path_to(j).reversed();
            let witness = there.then(&back).expect("paths meet at a shared word");
            return DecisionOutcome::equivalent(witness, report(&a, &b, false));
        }
        if a.saturated() || b.saturated() {
            return DecisionOutcome::not_equivalent(report(&a, &b, true));
        }
        if a.exhausted || b.exhausted || (a.frontier.is_empty() && b.frontier.is_empty()) {
            return DecisionOutcome { verdict: Verdict::Unknown, witness: None, report: report(&a, &b, false) };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::rewrite::Equation;

    fn sys(chars: &str, eqs: &[(&str, &str)]) -> (Alphabet, EquationSystem) {
        let ab = Alphabet::from_chars(chars).unwrap();
        let eqs = eqs
            .iter()
            .map(|(l, r)| Equation::new(ab.parse_word(l).unwrap(), ab.parse_word(r).unwrap()).unwrap())
            .collect();
        (ab.clone(), EquationSystem::thue(ab, eqs).unwrap())
    }

    #[test]
    fn fixed_length_examples() {
        let (ab, s) = sys("xy", &[("xy", "yx")]);
        let w = |t: &str| ab.parse_word(t).unwrap();
        let out = decide_fixed_length(&w("xy"), &w("yx"), &s).unwrap();
        assert_eq!(out.verdict, Verdict::Equivalent);
        assert_eq!(out.witness.unwrap().len(), 1);
        let out = decide_fixed_length(&w("xy"), &w("xy"), &s).unwrap();
        assert_eq!(out.witness.unwrap().len(), 0);

        let (ab, s) = sys("xy", &[("xxy", "yxx")]);
        let w = |t: &str| ab.parse_word(t).unwrap();
        let out = decide_fixed_length(&w("xxy"), &w("yxx"), &s).unwrap();
        out.witness.unwrap().replay(&s).unwrap();
        assert_eq!(decide_fixed_length(&w("xxy"), &w("xyx"), &s).unwrap().verdict, Verdict::NotEquivalent);
        assert_eq!(decide_fixed_length(&w("xxy"), &w("xy"), &s).unwrap().verdict, Verdict::NotEquivalent);
    }

    #[test]
    fn fixed_length_rejects_growing_rules() {
        let (ab, s) = sys("ab", &[("a", "bb")]);
        let w = ab.parse_word("a").unwrap();
        assert!(decide_fixed_length(&w, &w, &s).is_err());
    }

    #[test]
    fn bounded_examples() {
        let (ab, s) = sys("abc", &[("abbc", "bcab")]);
        let w = |t: &str| ab.parse_word(t).unwrap();
        let budget = Budget::default_for(&w("abbcab"), &w("bcabab"), &s);
        let out = decide_bounded(&w("abbcab"), &w("bcabab"), &s, budget);
        assert_eq!(out.verdict, Verdict::Equivalent);
        out.witness.unwrap().replay(&s).unwrap();
        assert_eq!(decide_bounded(&w("abc"), &w("abc"), &s, budget).witness.unwrap().len(), 0);

        let empty = s.with_equations(vec![]);
        let out = decide_bounded(&w("a"), &w("b"), &empty, budget);
        assert_eq!(out.verdict, Verdict::NotEquivalent);
        assert!(out.report.saturated);
    }

    #[test]
    fn bounded_reports_unknown_when_pruned() {
        let (ab, s) = sys("ab", &[("a", "aa")]);
        let w = |t: &str| ab.parse_word(t).unwrap();
        let out = decide_bounded(&w("a"), &w("ab"), &s, Budget { max_length: 4, max_states: 100 });
        assert_eq!(out.verdict, Verdict::Unknown);
        let out = decide_bounded(&w("a"), &w("b"), &s, Budget { max_length: 4, max_states: 100 });
        assert_eq!(out.verdict, Verdict::NotEquivalent);
        let out = decide_bounded(&w("a"), &w("aaa"), &s, Budget { max_length: 4, max_states: 100 });
        assert_eq!(out.verdict, Verdict::Equivalent);
        out.witness.unwrap().replay(&s).unwrap();
    }

    #[test]
    fn bounded_with_null_deletes_r() {
        let (ab, s) = sys("abc", &[("abbc", "bcab"), ("abbca", "cabab")]);
        let w = |t: &str| ab.parse_word(t).unwrap();
        let r = w("abbcab");
        let out = decide_bounded_with_null(&w("abbcabc"), &w("c"), &s, &r, Budget { max_length: 7, max_states: 10_000 });
        assert_eq!(out.verdict, Verdict::Equivalent);
        out.witness.unwrap().replay_with_null(&s, &r).unwrap();
    }

    #[test]
    fn class_cache() {
        let (ab, s) = sys("xy", &[("xy", "yx")]);
        let mut c = FixedLengthClasses::new(s).unwrap();
        let w = |t: &str| ab.parse_word(t).unwrap();
        assert!(c.equivalent(&w("xxy"), &w("yxx")));
        assert!(!c.equivalent(&w("xxy"), &w("xyy")));
        assert_eq!(c.representative(&w("yxx")), w("xxy"));
        let id = c.class_id(&w("xyx"));
        assert_eq!(c.members(id).len(), 3);
    }
}
