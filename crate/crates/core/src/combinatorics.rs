//! Combinatorics on words: substring search, borders, primitive roots,
//! overlap chains and minimal self-overlapping extensions.
//!
//! All functions work on plain symbol slices and return owned [`Word`]s.

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};

/// KMP failure function: `pi[i]` is the length of the longest proper border
/// of `w[..=i]`.
pub fn prefix_function(w: &[Symbol]) -> Vec<usize> {
    let mut pi = vec![0; w.len()];
    for i in 1..w.len() {
        let mut k = pi[i - 1];
        while k > 0 && w[i] != w[k] {
            k = pi[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

/// All start offsets of `needle` in `haystack`, overlapping ones included.
pub fn find_occurrences(haystack: &[Symbol], needle: &[Symbol]) -> Result<Vec<usize>> {
    if needle.is_empty() {
        return Err(Error::EmptyNeedle);
    }
    let pi = prefix_function(needle);
    let mut out = Vec::new();
    let mut k = 0;
    for (i, &s) in haystack.iter().enumerate() {
        while k > 0 && (k == needle.len() || needle[k] != s) {
            k = pi[k - 1];
        }
        if needle[k] == s {
            k += 1;
        }
        if k == needle.len() {
            out.push(i + 1 - k);
        }
    }
    Ok(out)
}

/// True when `needle` occurs in `haystack`.
pub fn contains(haystack: &[Symbol], needle: &[Symbol]) -> bool {
    needle.is_empty() || haystack.windows(needle.len()).any(|win| win == needle)
}

/// Lengths of all non-empty proper borders, longest first.
pub fn border_lengths(w: &[Symbol]) -> Vec<usize> {
    if w.is_empty() {
        return Vec::new();
    }
    let pi = prefix_function(w);
    let mut out = Vec::new();
    let mut k = pi[w.len() - 1];
    while k > 0 {
        out.push(k);
        k = pi[k - 1];
    }
    out
}

/// All non-empty proper borders of `w`, longest first.
pub fn borders(w: &[Symbol]) -> Vec<Word> {
    border_lengths(w).into_iter().map(|k| Word::from(&w[..k])).collect()
}

/// `word ≡ root^exponent` with `root` primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDecomposition {
    pub root: Word,
    pub exponent: usize,
}

/// The primitive root of `w` and its exponent. The empty word yields an
/// empty root with exponent 0.
pub fn primitive_root(w: &[Symbol]) -> RootDecomposition {
    if w.is_empty() {
        return RootDecomposition { root: Word::empty(), exponent: 0 };
    }
    let n = w.len();
    let period = n - prefix_function(w)[n - 1];
    let p = if n % period == 0 { period } else { n };
    RootDecomposition { root: Word::from(&w[..p]), exponent: n / p }
}

/// The shared primitive root of `x` and `y` when `x·y ≡ y·x`.
pub fn commute_root(x: &[Symbol], y: &[Symbol]) -> Option<(RootDecomposition, RootDecomposition)> {
    if x.is_empty() || y.is_empty() {
        return None;
    }
    let (mut long, mut short) = if x.len() >= y.len() { (x, y) } else { (y, x) };
    while !short.is_empty() {
        if !long.starts_with(short) {
            return None;
        }
        let rest = &long[short.len()..];
        if rest.len() >= short.len() {
            long = rest;
        } else {
            long = short;
            short = rest;
        }
    }
    let theta = primitive_root(long).root;
    let k = theta.len();
    Some((
        RootDecomposition { root: theta.clone(), exponent: x.len() / k },
        RootDecomposition { root: theta, exponent: y.len() / k },
    ))
}

/// `first ≡ c·u` and `second ≡ u·d` with all three parts non-empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OverlapWitness {
    pub c: Word,
    pub u: Word,
    pub d: Word,
    /// Indices of the two source words.
    pub sources: (usize, usize),
}

impl OverlapWitness {
    pub fn new(c: Word, u: Word, d: Word, sources: (usize, usize)) -> Result<Self> {
        if c.is_empty() || u.is_empty() || d.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(OverlapWitness { c, u, d, sources })
    }

    pub fn first(&self) -> Word {
        self.c.concat(&self.u)
    }

    pub fn second(&self) -> Word {
        self.u.concat(&self.d)
    }
}

/// Every overlap of a suffix of `m` with a prefix of `n` that leaves both
/// outer parts non-empty, longest overlap first.
pub fn overlaps_between(m: &[Symbol], n: &[Symbol], sources: (usize, usize)) -> Vec<OverlapWitness> {
    let max = m.len().min(n.len());
    (1..max + 1)
        .rev()
        .filter(|&k| k < m.len() && k < n.len() && m[m.len() - k..] == n[..k])
        .map(|k| OverlapWitness {
            c: Word::from(&m[..m.len() - k]),
            u: Word::from(&n[..k]),
            d: Word::from(&n[k..]),
            sources,
        })
        .collect()
}

/// The longest self-overlap of a word `s ≡ (αβ)^n α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfOverlap {
    /// `s ≡ c·u ≡ u·d` with `c ≡ αβ`, `d ≡ βα`.
    pub witness: OverlapWitness,
    pub alpha: Word,
    pub beta: Word,
    pub n: usize,
}

/// Decompose `s` along its longest border, or `None` when it has none.
pub fn max_self_overlap(s: &[Symbol]) -> Option<SelfOverlap> {
    let ulen = *border_lengths(s).first()?;
    let c_len = s.len() - ulen;
    let n = s.len() / c_len;
    let a_len = s.len() % c_len;
    let alpha = Word::from(&s[n * c_len..]);
    let beta = Word::from(&s[a_len..c_len]);
    if !alpha.is_empty() {
        assert!(
            alpha.concat(&beta) != beta.concat(&alpha),
            "longest border produced commuting α, β"
        );
    }
    Some(SelfOverlap {
        witness: OverlapWitness {
            c: Word::from(&s[..c_len]),
            u: Word::from(&s[c_len..]),
            d: Word::from(&s[ulen..]),
            sources: (0, 0),
        },
        alpha,
        beta,
        n,
    })
}

/// One stage `u_{p-1} ≡ c·u ≡ u·d` of an overlap chain, with the
/// factoring `u_{p-1} ≡ (αβ)^n α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStage {
    pub u: Word,
    pub c: Word,
    pub d: Word,
    pub alpha: Word,
    pub beta: Word,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapChain {
    pub start: Word,
    pub stages: Vec<ChainStage>,
}

impl OverlapChain {
    /// The border-free word the chain ends in.
    pub fn last(&self) -> &Word {
        self.stages.last().map(|s| &s.u).unwrap_or(&self.start)
    }
}

/// Repeatedly take the longest border until a border-free word remains.
pub fn overlap_chain(u0: &[Symbol]) -> OverlapChain {
    let mut stages = Vec::new();
    let mut cur = Word::from(u0);
    while let Some(so) = max_self_overlap(&cur) {
        let OverlapWitness { c, u, d, .. } = so.witness;
        cur = u.clone();
        stages.push(ChainStage { u, c, d, alpha: so.alpha, beta: so.beta, n: so.n });
    }
    OverlapChain { start: Word::from(u0), stages }
}

/// A self-overlap `s ≡ p·N ≡ N·q` with `N ≡ α(βα)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateOverlap {
    pub witness: OverlapWitness,
    pub m: usize,
}

/// All self-overlaps of `s` at least as long as `αβ`, each matched against
/// the shape `α(βα)^m`.
pub fn intermediate_overlaps(s: &[Symbol]) -> Result<Vec<IntermediateOverlap>> {
    let so = max_self_overlap(s).ok_or(Error::NoBorder)?;
    let c_len = so.witness.c.len();
    let a_len = so.alpha.len();
    let ba = so.beta.concat(&so.alpha);
    let mut out = Vec::new();
    for k in border_lengths(s) {
        if k < c_len {
            break;
        }
        let m = (k - a_len) / c_len;
        let shape = so.alpha.concat(&ba.pow(m));
        assert!(
            (k - a_len) % c_len == 0 && shape.as_slice() == &s[..k] && m < so.n,
            "border of length {k} does not have the form α(βα)^m"
        );
        out.push(IntermediateOverlap {
            witness: OverlapWitness {
                c: Word::from(&s[..s.len() - k]),
                u: shape,
                d: Word::from(&s[k..]),
                sources: (0, 0),
            },
            m,
        });
    }
    Ok(out)
}

/// `t ≡ x·m ≡ m·y`, the shortest word in which `m` overlaps itself, where
/// `n` is the longest border of `m` (possibly empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalExtension {
    pub t: Word,
    pub x: Word,
    pub y: Word,
    pub n: Word,
}

pub fn minimal_extension(m: &[Symbol]) -> MinimalExtension {
    let k = border_lengths(m).first().copied().unwrap_or(0);
    let x = Word::from(&m[..m.len() - k]);
    let y = Word::from(&m[k..]);
    let t = x.concat(m);
    debug_assert_eq!(t, Word::from(m).concat(&y));
    debug_assert!(m.is_empty() || border_lengths(&t).first() == Some(&m.len()));
    MinimalExtension { t, x, y, n: Word::from(&m[..k]) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Alphabet::from_chars("abcdxy").unwrap().parse_word(s).unwrap()
    }

    #[test]
    fn occurrences() {
        assert_eq!(find_occurrences(&w("abbcab"), &w("ab")).unwrap(), vec![0, 4]);
        assert_eq!(find_occurrences(&w("aaa"), &w("aa")).unwrap(), vec![0, 1]);
        assert!(find_occurrences(&w("abc"), &w("d")).unwrap().is_empty());
        assert!(matches!(find_occurrences(&w("abc"), &[]), Err(Error::EmptyNeedle)));
    }

    #[test]
    fn border_lists() {
        assert_eq!(borders(&w("abbcab")), vec![w("ab")]);
        assert_eq!(borders(&w("aaaa")), vec![w("aaa"), w("aa"), w("a")]);
        assert!(borders(&w("abc")).is_empty());
    }

    #[test]
    fn roots() {
        assert_eq!(primitive_root(&w("ababab")), RootDecomposition { root: w("ab"), exponent: 3 });
        assert_eq!(primitive_root(&w("a")), RootDecomposition { root: w("a"), exponent: 1 });
        assert_eq!(primitive_root(&w("aba")).exponent, 1);
        let (p, q) = commute_root(&w("abab"), &w("ab")).unwrap();
        assert_eq!((p.root.clone(), p.exponent, q.root, q.exponent), (w("ab"), 2, w("ab"), 1));
        assert!(commute_root(&w("a"), &w("b")).is_none());
        assert!(commute_root(&w("aba"), &w("ab")).is_none());
    }

    #[test]
    fn self_overlap_examples() {
        let so = max_self_overlap(&w("ababa")).unwrap();
        assert_eq!(
            (&so.witness.u, &so.witness.c, &so.witness.d, &so.alpha, &so.beta, so.n),
            (&w("aba"), &w("ab"), &w("ba"), &w("a"), &w("b"), 2)
        );
        let so = max_self_overlap(&w("abbcab")).unwrap();
        assert_eq!(
            (&so.witness.u, &so.witness.c, &so.witness.d, &so.alpha, &so.beta, so.n),
            (&w("ab"), &w("abbc"), &w("bcab"), &w("ab"), &w("bc"), 1)
        );
        assert!(max_self_overlap(&w("ab")).is_none());
        let so = max_self_overlap(&w("aaaa")).unwrap();
        assert!(so.alpha.is_empty());
        assert_eq!((so.beta, so.n), (w("a"), 4));
    }

    #[test]
    fn chains() {
        let ch = overlap_chain(&w("aabaa"));
        let got: Vec<_> = ch.stages.iter().map(|s| (s.u.clone(), s.c.clone(), s.d.clone())).collect();
        assert_eq!(got, vec![(w("aa"), w("aab"), w("baa")), (w("a"), w("a"), w("a"))]);
        assert!(overlap_chain(&w("abc")).stages.is_empty());
        let ch = overlap_chain(&w("ababa"));
        assert_eq!(ch.stages.iter().map(|s| s.u.clone()).collect::<Vec<_>>(), vec![w("aba"), w("a")]);
        assert_eq!(ch.last(), &w("a"));
    }

    #[test]
    fn intermediate() {
        let got = intermediate_overlaps(&w("ababa")).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!((&got[0].witness.c, &got[0].witness.u, &got[0].witness.d, got[0].m), (&w("ab"), &w("aba"), &w("ba"), 1));
        let got = intermediate_overlaps(&w("aaaa")).unwrap();
        assert_eq!(got.iter().map(|o| o.m).collect::<Vec<_>>(), vec![3, 2, 1]);
        assert!(matches!(intermediate_overlaps(&w("abc")), Err(Error::NoBorder)));
    }

    #[test]
    fn extensions() {
        let e = minimal_extension(&w("aba"));
        assert_eq!((e.n, e.x, e.y, e.t), (w("a"), w("ab"), w("ba"), w("ababa")));
        let e = minimal_extension(&w("ab"));
        assert_eq!((e.n, e.x, e.y, e.t), (Word::empty(), w("ab"), w("ab"), w("abab")));
        let e = minimal_extension(&w("aa"));
        assert_eq!((e.n, e.x, e.y, e.t), (w("a"), w("a"), w("a"), w("aaa")));
    }

    #[test]
    fn overlaps_between_words() {
        let got = overlaps_between(&w("yxxxx"), &w("xxxxy"), (1, 2));
        assert_eq!(got[0].c, w("y"));
        assert_eq!(got[0].d, w("y"));
        let got: Vec<_> = got.iter().map(|o| (o.c.clone(), o.d.clone())).collect();
        assert!(got.contains(&(w("yx"), w("xy"))));
        assert!(overlaps_between(&w("ab"), &w("ab"), (0, 0)).is_empty());
    }

    fn binary(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..2, 1..=max).prop_map(Word::new)
    }

    proptest! {
        #[test]
        fn root_is_idempotent(v in binary(14)) {
            let r = primitive_root(&v);
            prop_assert_eq!(r.root.pow(r.exponent), v);
            prop_assert_eq!(primitive_root(&r.root).exponent, 1);
        }

        #[test]
        fn decomposition_reconcatenates(v in binary(14)) {
            if let Some(so) = max_self_overlap(&v) {
                let c = so.alpha.concat(&so.beta);
                let d = so.beta.concat(&so.alpha);
                prop_assert_eq!(&so.witness.c, &c);
                prop_assert_eq!(&so.witness.d, &d);
                prop_assert_eq!(c.pow(so.n).concat(&so.alpha), v.clone());
                prop_assert_eq!(so.alpha.concat(&d.pow(so.n)), v.clone());
                prop_assert_eq!(c.pow(so.n - 1).concat(&so.alpha), so.witness.u.clone());
                prop_assert_eq!(so.witness.first(), v.clone());
                prop_assert_eq!(so.witness.second(), v);
            }
        }

        #[test]
        fn unique_occurrence_lemmas(v in binary(12)) {
            if let Some(so) = max_self_overlap(&v) {
                if !so.alpha.is_empty() {
                    let (a, b) = (&so.alpha, &so.beta);
                    let bab = b.concat(a).concat(b);
                    let aba = a.concat(b).concat(a);
                    prop_assert_eq!(find_occurrences(&bab, &b.concat(a)).unwrap().len(), 1);
                    prop_assert_eq!(find_occurrences(&bab, &a.concat(b)).unwrap().len(), 1);
                    prop_assert_eq!(find_occurrences(&aba, &b.concat(a)).unwrap().len(), 1);
                }
            }
        }

        #[test]
        fn chain_stages_reconcatenate(v in binary(14)) {
            let ch = overlap_chain(&v);
            let mut prev = v.clone();
            for st in &ch.stages {
                prop_assert_eq!(st.c.concat(&st.u), prev.clone());
                prop_assert_eq!(st.u.concat(&st.d), prev.clone());
                prop_assert_eq!(border_lengths(&prev)[0], st.u.len());
                prev = st.u.clone();
            }
            prop_assert!(borders(ch.last()).is_empty());
        }

        #[test]
        fn occurrences_match_naive_scan(h in binary(16), n in binary(4)) {
            let naive: Vec<usize> = (0..h.len()).filter(|&i| h[i..].starts_with(&n)).collect();
            prop_assert_eq!(find_occurrences(&h, &n).unwrap(), naive);
        }
    }
}
