use proptest::prelude::*;

use thue::completion::complete;
use thue::corpus::{example2, example4, example5};
use thue::nullseq::{decide_bounded_null, decide_problem_two, overlap_equation, parallel, NullSystem};
use thue::rewrite::{
    decide_bounded, similar_steps, Action, Budget, Derivation, Equation, EquationSystem, Step, Verdict,
};
use thue::{Alphabet, Word};

fn word(v: Vec<u8>) -> Word {
    Word::new(v)
}

fn words(k: u8, min: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k, min..=max).prop_map(word)
}

fn thue_system(k: u8) -> impl Strategy<Value = EquationSystem> {
    prop::collection::vec((words(k, 1, 3), words(k, 0, 3)), 1..=3).prop_map(move |rules| {
        let ab = Alphabet::from_chars(&"abc"[..k as usize]).unwrap();
        let eqs = rules.into_iter().filter_map(|(l, r)| Equation::new(l, r).ok()).collect();
        EquationSystem::thue(ab, eqs).unwrap()
    })
}

fn budget() -> Budget {
    Budget { max_length: 9, max_states: 4000 }
}

fn null_systems() -> Vec<NullSystem> {
    vec![
        example2().null_system,
        example4(1).unwrap().null_system,
        example4(2).unwrap().null_system,
        example5(2, 2).unwrap().null_system,
    ]
}

/// Random walk along the equations; every step keeps length and counts.
fn walk(w: &Word, ns: &NullSystem, choices: &[usize]) -> Word {
    let mut cur = w.clone();
    for &c in choices {
        let next = similar_steps(&cur, &ns.eqs);
        if next.is_empty() {
            break;
        }
        let (n, _) = &next[c % next.len()];
        assert_eq!(n.symbol_counts(), cur.symbol_counts());
        cur = n.clone();
    }
    cur
}

fn insert(w: &Word, pos: usize, r: &Word) -> Word {
    w.splice(pos % (w.len() + 1), 0, r)
}

fn symbols(ns: &NullSystem, v: &[u8]) -> Word {
    let k = ns.alphabet().len() as u8;
    word(v.iter().map(|x| x % k).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bounded_witnesses_replay_and_search_is_symmetric(
        sys in thue_system(2), p in words(2, 1, 5), q in words(2, 1, 5)
    ) {
        let fwd = decide_bounded(&p, &q, &sys, budget());
        let bwd = decide_bounded(&q, &p, &sys, budget());
        prop_assert_eq!(fwd.verdict, bwd.verdict);
        for (o, s, e) in [(&fwd, &p, &q), (&bwd, &q, &p)] {
            if let Some(d) = &o.witness {
                d.replay(&sys).unwrap();
                prop_assert_eq!((&d.start, &d.end), (s, e));
            }
        }
    }

    #[test]
    fn proofs_compose(sys in thue_system(2), p in words(2, 1, 4), q in words(2, 1, 4), r in words(2, 1, 4)) {
        let pq = decide_bounded(&p, &q, &sys, budget());
        let qr = decide_bounded(&q, &r, &sys, budget());
        if let (Some(a), Some(b)) = (pq.witness, qr.witness) {
            let pr = a.then(&b).unwrap();
            pr.replay(&sys).unwrap();
            prop_assert_eq!((&pr.start, &pr.end), (&p, &r));
        }
    }

    #[test]
    fn insertion_preserves_parallelism(
        which in 0usize..4, a in prop::collection::vec(any::<u8>(), 1..=5),
        moves in prop::collection::vec(any::<usize>(), 0..8), i in any::<usize>(), j in any::<usize>()
    ) {
        let ns = &null_systems()[which];
        let alpha = symbols(ns, &a);
        let beta = walk(&alpha, ns, &moves);
        let big_a = insert(&alpha, i, &ns.r);
        let big_b = insert(&beta, j, &ns.r);
        prop_assert!(parallel(&big_a, &big_b, ns).is_equivalent());
    }

    #[test]
    fn deletion_preserves_parallelism(
        which in 0usize..4, a in prop::collection::vec(any::<u8>(), 1..=4),
        moves in prop::collection::vec(any::<usize>(), 0..10), i in any::<usize>(), pick in any::<usize>()
    ) {
        let ns = &null_systems()[which];
        let alpha = symbols(ns, &a);
        let big_a = insert(&alpha, i, &ns.r);
        let big_b = walk(&big_a, ns, &moves);
        let positions: Vec<usize> = (0..=big_b.len() - ns.r.len())
            .filter(|&k| big_b.slice(k, k + ns.r.len()) == ns.r)
            .collect();
        prop_assume!(!positions.is_empty());
        let k = positions[pick % positions.len()];
        let beta = big_b.splice(k, ns.r.len(), &[]);
        prop_assert!(parallel(&alpha, &beta, ns).is_equivalent());
    }

    #[test]
    fn completion_layers_grow(v in prop::collection::vec(0u8..3, 2..=6)) {
        let r = word(v);
        let k = r.as_slice().iter().map(|s| *s as usize + 1).max().unwrap();
        let ab = Alphabet::from_chars(&"abc"[..k]).unwrap();
        let state = complete(&ab, &r).unwrap();
        prop_assert!(state.fixpoint);
        prop_assert!(state.s_layers.len() <= k.pow(r.len() as u32));
        for pair in state.s_layers.windows(2) {
            prop_assert!(pair[0].iter().all(|w| pair[1].binary_search(w).is_ok()));
        }
        for pair in state.e_layers.windows(2) {
            prop_assert!(pair[0].iter().all(|e| pair[1].binary_search(e).is_ok()));
        }
    }

    #[test]
    fn delta_equations_hold_in_context(v in prop::collection::vec(0u8..3, 2..=6), x in words(3, 0, 2), y in words(3, 0, 2)) {
        let r = word(v);
        let ab = Alphabet::from_chars("abc").unwrap();
        let state = complete(&ab, &r).unwrap();
        let bare = EquationSystem::thue(ab, Vec::new()).unwrap();
        for e in state.delta() {
            let w = &state.witnesses[e];
            let (c, d) = (&w.overlap.c, &w.overlap.d);
            prop_assert!((c, d) == (&e.lhs, &e.rhs) || (c, d) == (&e.rhs, &e.lhs));
            prop_assert!(state.gamma().contains(&w.r_p) && state.gamma().contains(&w.r_q));
            let inserted = Derivation {
                start: x.concat(c).concat(&y),
                steps: vec![Step { action: Action::InsertNull, position: x.len() + c.len() }],
                end: x.concat(c).concat(&w.r_q).concat(&y),
            };
            inserted.replay_with_null(&bare, &w.r_q).unwrap();
            let deleted = Derivation {
                start: x.concat(&w.r_p).concat(d).concat(&y),
                steps: vec![Step { action: Action::DeleteNull, position: x.len() }],
                end: x.concat(d).concat(&y),
            };
            deleted.replay_with_null(&bare, &w.r_p).unwrap();
            prop_assert_eq!(&inserted.end, &deleted.start);
        }
    }
}

#[test]
fn border_equations_relate_parallel_words() {
    for ns in null_systems() {
        for e in overlap_equation(&ns.r) {
            assert!(parallel(&e.lhs, &e.rhs, &ns).is_equivalent(), "{e:?}");
        }
    }
}

#[test]
fn problem_two_agrees_with_bounded_search() {
    for ns in null_systems() {
        let k = ns.alphabet().len();
        let small: Vec<Word> = (1..=3).flat_map(|n| thue::nullseq::all_words(k, n)).collect();
        let bound = ns.r.len() + 3;
        let mut definite = 0;
        for p in &small {
            for q in &small {
                let exact = decide_problem_two(p, q, &ns, bound).unwrap();
                if let Some(w) = &exact.witness {
                    w.replay_with_null(&ns.eqs, &ns.r).unwrap();
                }
                let budget = Budget { max_length: bound + 3, max_states: 20_000 };
                let search = decide_bounded_null(p, q, &ns, budget);
                if search.verdict != Verdict::Unknown {
                    definite += 1;
                    assert_eq!(search.verdict, exact.verdict, "{p:?} {q:?}");
                }
                if search.verdict == Verdict::Equivalent {
                    assert!(exact.is_equivalent());
                }
            }
        }
        assert!(definite > 0);
    }
}
