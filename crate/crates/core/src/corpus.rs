//! The five classical examples: null sequences with their published
//! equation systems and displayed derivation chains.

use crate::alphabet::{Alphabet, Word};
use crate::combinatorics::{contains, overlaps_between};
use crate::error::{Error, Result};
use crate::nullseq::NullSystem;
use crate::rewrite::{decide_fixed_length, similar_steps, Derivation, Equation, EquationSystem};

/// A displayed chain of words, each related to the next by the equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub label: String,
    pub words: Vec<Word>,
    /// Consecutive words differ by exactly one rule application.
    pub single_steps: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleSpec {
    pub id: u8,
    pub label: String,
    pub null_system: NullSystem,
    /// Alternative expansions, each of which must be identical to `R`.
    pub closed_forms: Vec<(String, Word)>,
    pub chains: Vec<Chain>,
}

impl ExampleSpec {
    pub fn r(&self) -> &Word {
        &self.null_system.r
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.null_system.alphabet()
    }

    pub fn closed_forms_hold(&self) -> bool {
        self.closed_forms.iter().all(|(_, w)| w == self.r())
    }
}

/// Rebuild a chain as a derivation. Single-step links must match one rule
/// application; other links are found by exact search.
pub fn verify_chain(chain: &Chain, sys: &EquationSystem) -> Result<Derivation> {
    let first = chain.words.first().ok_or(Error::EmptyWord)?;
    let mut d = Derivation::identity(first.clone());
    for pair in chain.words.windows(2) {
        let (from, to) = (&pair[0], &pair[1]);
        let link = if chain.single_steps {
            let step = similar_steps(from, sys)
                .into_iter()
                .find(|(w, _)| w == to)
                .map(|(_, s)| s)
                .ok_or_else(|| Error::BadDerivation(format!("{}: no single step {from:?} to {to:?}", chain.label)))?;
            Derivation { start: from.clone(), steps: vec![step], end: to.clone() }
        } else {
            decide_fixed_length(from, to, sys)?
                .witness
                .ok_or_else(|| Error::BadDerivation(format!("{}: {from:?} and {to:?} are not equivalent", chain.label)))?
        };
        d = d.then(&link)?;
    }
    d.replay(sys)?;
    Ok(d)
}

fn cat(parts: &[&Word]) -> Word {
    parts.iter().fold(Word::empty(), |acc, p| acc.concat(p))
}

fn eq(lhs: Word, rhs: Word) -> Result<Equation> {
    Equation::new(lhs, rhs)
}

/// Nested null sequence `X_{i-1} ≡ (X_i Y_i)^{n_i} X_i`, `R ≡ X_0`, over the
/// symbols `X_r` (named `x`) and `Y_1 … Y_r` (named `y`, or `y1 … yr` when
/// `r > 1`), plus `extra` symbols. The system `H` holds the equations
/// `(X_1Y_1)^{n_1}…(X_qY_q)^{n_q} X_{q+1}Y_{q+1} = Y_{q+1}X_{q+1}(Y_qX_q)^{n_q}…(Y_1X_1)^{n_1}`
/// for `0 ≤ q < r`, and `Rδ = δR` for each extra symbol `δ`.
pub fn example1(n: &[usize], extra: &[&str]) -> Result<ExampleSpec> {
    let r = n.len();
    if r == 0 || n.contains(&0) {
        return Err(Error::Invalid("example 1 needs r ≥ 1 and every n_i ≥ 1".into()));
    }
    let mut names = vec!["x".to_string()];
    if r == 1 {
        names.push("y".into());
    } else {
        names.extend((1..=r).map(|i| format!("y{i}")));
    }
    names.extend(extra.iter().map(|s| s.to_string()));
    let alphabet = Alphabet::new(names)?;
    let ys: Vec<Word> = (1..=r).map(|i| Word::new(vec![i as u8])).collect();

    // xs[i] = X_i for 0 ≤ i ≤ r.
    let mut xs = vec![Word::empty(); r + 1];
    xs[r] = Word::new(vec![0]);
    for i in (1..=r).rev() {
        xs[i - 1] = cat(&[&xs[i], &ys[i - 1]]).pow(n[i - 1]).concat(&xs[i]);
    }
    let rr = xs[0].clone();

    let mut equations = Vec::new();
    for q in 0..r {
        let mut lhs = Word::empty();
        let mut rhs = Word::empty();
        for i in 0..q {
            lhs = lhs.concat(&cat(&[&xs[i + 1], &ys[i]]).pow(n[i]));
            rhs = cat(&[&ys[i], &xs[i + 1]]).pow(n[i]).concat(&rhs);
        }
        lhs = cat(&[&lhs, &xs[q + 1], &ys[q]]);
        rhs = cat(&[&ys[q], &xs[q + 1], &rhs]);
        equations.push(eq(lhs, rhs)?);
    }
    for k in 0..extra.len() {
        let delta = Word::new(vec![(r + 1 + k) as u8]);
        equations.push(eq(rr.concat(&delta), delta.concat(&rr))?);
    }

    let mut closed_forms = vec![("X_1(Y_1X_1)^n_1".to_string(), xs[1].concat(&cat(&[&ys[0], &xs[1]]).pow(n[0])))];
    let mut descent = Word::empty();
    for p in 1..=r {
        descent = descent.concat(&cat(&[&xs[p], &ys[p - 1]]).pow(n[p - 1]));
        closed_forms.push((format!("(X_1Y_1)^n_1…(X_{p}Y_{p})^n_{p} X_{p}"), descent.concat(&xs[p])));
    }

    let sys = EquationSystem::thue(alphabet, equations)?;
    let label = format!("example1(n = {n:?}, extra = {extra:?})");
    Ok(ExampleSpec { id: 1, label, null_system: NullSystem::new(rr, sys)?, closed_forms, chains: Vec::new() })
}

/// Both sides of `(X_1Y_1)^{n_1}…(X_qY_q)^{n_q}[X_{q+1}Y_{q+1}]^m ∥ [Y_{q+1}X_{q+1}]^m(Y_qX_q)^{n_q}…(Y_1X_1)^{n_1}`
/// for the nested sequence with exponents `n`, `q < n.len()`.
pub fn example1_equivalence8(n: &[usize], q: usize, m: usize) -> Result<(Word, Word)> {
    let spec = example1(n, &[])?;
    if q >= n.len() {
        return Err(Error::Invalid(format!("q must be below r = {}", n.len())));
    }
    let r = n.len();
    let ys: Vec<Word> = (1..=r).map(|i| Word::new(vec![i as u8])).collect();
    let mut xs = vec![Word::empty(); r + 1];
    xs[r] = Word::new(vec![0]);
    for i in (1..=r).rev() {
        xs[i - 1] = cat(&[&xs[i], &ys[i - 1]]).pow(n[i - 1]).concat(&xs[i]);
    }
    debug_assert_eq!(&xs[0], spec.r());
    let mut lhs = Word::empty();
    let mut rhs = Word::empty();
    for i in 0..q {
        lhs = lhs.concat(&cat(&[&xs[i + 1], &ys[i]]).pow(n[i]));
        rhs = cat(&[&ys[i], &xs[i + 1]]).pow(n[i]).concat(&rhs);
    }
    lhs = lhs.concat(&cat(&[&xs[q + 1], &ys[q]]).pow(m));
    rhs = cat(&[&ys[q], &xs[q + 1]]).pow(m).concat(&rhs);
    Ok((lhs, rhs))
}

/// `R ≡ abbcab` with `abbc = bcab`, `abbca = cabab`, and the chains moving
/// `R` past each symbol.
pub fn example2() -> ExampleSpec {
    let alphabet = Alphabet::from_chars("abc").expect("valid alphabet");
    let w = |s: &str| alphabet.parse_word(s).expect("valid word");
    let equations = vec![Equation { lhs: w("abbc"), rhs: w("bcab") }, Equation { lhs: w("abbca"), rhs: w("cabab") }];
    let chain = |label: &str, words: &[&str]| Chain {
        label: label.into(),
        words: words.iter().map(|s| w(s)).collect(),
        single_steps: true,
    };
    let chains = vec![
        chain("aR = Ra", &["aabbcab", "abcabab", "ababbca", "abbcaba"]),
        chain("bR = Rb", &["babbcab", "bcababb", "abbcabb"]),
        chain("cR = Rc", &["cabbcab", "cababbc", "abbcabc"]),
    ];
    let r = w("abbcab");
    let closed_forms = vec![("ab·bc·ab".to_string(), cat(&[&w("ab"), &w("bc"), &w("ab")]))];
    let sys = EquationSystem::thue(alphabet, equations).expect("valid system");
    ExampleSpec {
        id: 2,
        label: "example2".into(),
        null_system: NullSystem::new(r, sys).expect("count-preserving"),
        closed_forms,
        chains,
    }
}

/// `R ≡ ABABA` with `ABA ≡ Uⁿ`, `U ≡ ACA`, so `B ≡ X·U^{n-2}·Y` for
/// `X ≡ CA`, `Y ≡ AC`; the system is `{AC = CA}`. `A` and `C` must be
/// distinct and free of overlaps with each other.
pub fn example3(alphabet: &Alphabet, a: &Word, c: &Word, n: usize) -> Result<ExampleSpec> {
    if n < 3 {
        return Err(Error::Invalid("example 3 needs n ≥ 3".into()));
    }
    if a.is_empty() || c.is_empty() || !alphabet.contains(a) || !alphabet.contains(c) {
        return Err(Error::Invalid("A and C must be non-empty words over the alphabet".into()));
    }
    if a == c
        || contains(a, c)
        || contains(c, a)
        || !overlaps_between(a, c, (0, 1)).is_empty()
        || !overlaps_between(c, a, (1, 0)).is_empty()
    {
        return Err(Error::Invalid("A and C overlap".into()));
    }
    let u = cat(&[a, c, a]);
    let x = c.concat(a);
    let y = a.concat(c);
    let b = cat(&[&x, &u.pow(n - 2), &y]);
    let r = cat(&[a, &b, a, &b, a]);
    let closed_forms = vec![
        ("U^n·B·A".to_string(), cat(&[&u.pow(n), &b, a])),
        ("A·B·U^n".to_string(), cat(&[a, &b, &u.pow(n)])),
    ];
    let sys = EquationSystem::thue(alphabet.clone(), vec![eq(a.concat(c), c.concat(a))?])?;
    let label = format!("example3(A = {}, C = {}, n = {n})", alphabet.render(a), alphabet.render(c));
    Ok(ExampleSpec { id: 3, label, null_system: NullSystem::new(r, sys)?, closed_forms, chains: Vec::new() })
}

/// `R ≡ xⁿyxⁿ` with `{xy = yx}`.
pub fn example4(n: usize) -> Result<ExampleSpec> {
    if n == 0 {
        return Err(Error::Invalid("example 4 needs n ≥ 1".into()));
    }
    let alphabet = Alphabet::from_chars("xy")?;
    let (x, y) = (Word::new(vec![0]), Word::new(vec![1]));
    let r = cat(&[&x.pow(n), &y, &x.pow(n)]);
    let sys = EquationSystem::thue(alphabet, vec![eq(cat(&[&x, &y]), cat(&[&y, &x]))?])?;
    Ok(ExampleSpec {
        id: 4,
        label: format!("example4(n = {n})"),
        null_system: NullSystem::new(r, sys)?,
        closed_forms: Vec::new(),
        chains: Vec::new(),
    })
}

/// `R ≡ xⁿ(yxⁿ)^p` with system `(K)`: `xⁿy = yxⁿ`, `y^p x = x y^p`.
pub fn example5(n: usize, p: usize) -> Result<ExampleSpec> {
    if n < 2 || p < 2 {
        return Err(Error::Invalid("example 5 needs n > 1 and p > 1".into()));
    }
    let alphabet = Alphabet::from_chars("xy")?;
    let (x, y) = (Word::new(vec![0]), Word::new(vec![1]));
    let xn = x.pow(n);
    let r = xn.concat(&cat(&[&y, &xn]).pow(p));
    let equations = vec![
        eq(cat(&[&xn, &y]), cat(&[&y, &xn]))?,
        eq(cat(&[&y.pow(p), &x]), cat(&[&x, &y.pow(p)]))?,
    ];
    let block = x.pow((p + 1) * n);
    let yp = y.pow(p);
    let chains = vec![
        Chain {
            label: "xR ∥ Rx".into(),
            words: vec![
                x.concat(&r),
                cat(&[&x, &block, &yp]),
                cat(&[&block, &yp, &x]),
                r.concat(&x),
            ],
            single_steps: false,
        },
        Chain {
            label: "yR ∥ Ry".into(),
            words: vec![
                y.concat(&r),
                cat(&[&y, &yp, &block]),
                cat(&[&yp, &block, &y]),
                r.concat(&y),
            ],
            single_steps: false,
        },
    ];
    let closed_forms = vec![("(xⁿy)^p xⁿ".to_string(), cat(&[&xn, &y]).pow(p).concat(&xn))];
    let sys = EquationSystem::thue(alphabet, equations)?;
    Ok(ExampleSpec {
        id: 5,
        label: format!("example5(n = {n}, p = {p})"),
        null_system: NullSystem::new(r, sys)?,
        closed_forms,
        chains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::borders;
    use crate::nullseq::{check_complete, check_perfect_syntactic};

    fn show(s: &ExampleSpec, w: &Word) -> String {
        s.alphabet().render(w)
    }

    #[test]
    fn example1_small_instances() {
        let s = example1(&[1], &[]).unwrap();
        assert_eq!(show(&s, s.r()), "xyx");
        assert_eq!(s.null_system.eqs.equations.len(), 1);
        assert_eq!(show(&s, &s.null_system.eqs.equations[0].lhs), "xy");
        assert_eq!(show(&s, &s.null_system.eqs.equations[0].rhs), "yx");

        let s = example1(&[2], &[]).unwrap();
        assert_eq!(show(&s, s.r()), "xyxyx");

        let s = example1(&[1, 1], &[]).unwrap();
        assert_eq!(show(&s, s.r()), "x y2 x y1 x y2 x");
        assert_eq!(s.null_system.eqs.equations.len(), 2);
        assert!(s.closed_forms_hold());
    }

    #[test]
    fn example1_extra_symbols_commute_with_r() {
        let s = example1(&[1], &["d"]).unwrap();
        let last = s.null_system.eqs.equations.last().unwrap();
        assert_eq!(show(&s, &last.lhs), "xyxd");
        assert_eq!(show(&s, &last.rhs), "dxyx");
        assert!(check_perfect_syntactic(&s.null_system).is_ok());
        assert!(check_complete(&s.null_system).is_complete());
    }

    #[test]
    fn example2_fixture() {
        let s = example2();
        assert_eq!(show(&s, s.r()), "abbcab");
        assert_eq!(borders(s.r()).iter().map(|w| show(&s, w)).collect::<Vec<_>>(), vec!["ab"]);
        for chain in &s.chains {
            let d = verify_chain(chain, &s.null_system.eqs).unwrap();
            assert_eq!(d.len(), chain.words.len() - 1);
        }
    }

    #[test]
    fn example3_construction() {
        let ab = Alphabet::from_chars("ac").unwrap();
        let (a, c) = (ab.parse_word("a").unwrap(), ab.parse_word("c").unwrap());
        let s = example3(&ab, &a, &c, 3).unwrap();
        assert_eq!(show(&s, s.r()), "acaacaacacaacaaca");
        assert!(s.closed_forms_hold());
        let ab2 = Alphabet::from_chars("ab").unwrap();
        let (p, q) = (ab2.parse_word("ab").unwrap(), ab2.parse_word("ba").unwrap());
        assert!(example3(&ab2, &p, &q, 3).is_err());
    }

    #[test]
    fn example4_and_5_words() {
        let s = example4(2).unwrap();
        assert_eq!(show(&s, s.r()), "xxyxx");
        let s = example5(2, 2).unwrap();
        assert_eq!(show(&s, s.r()), "xxyxxyxx");
        assert!(s.closed_forms_hold());
        let k: Vec<String> = s.null_system.eqs.equations.iter().map(|e| s.null_system.eqs.render_equation(e)).collect();
        assert_eq!(k, vec!["xxy <-> yxx", "yyx <-> xyy"]);
        assert!(example5(1, 2).is_err());
    }
}
