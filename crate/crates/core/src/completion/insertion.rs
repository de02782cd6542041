//! Overlaps between words obtained by inserting one null sequence into
//! another.
//!
//! With `M ≡ a·R_z·b` and `N ≡ c·R_μ·d`, where `R_x ≡ a·b` and `R_y ≡ c·d`
//! are null sequences of equal length `L`, an overlap `M ≡ C·U`,
//! `U·D ≡ N` falls into one of eight configurations, told apart by where
//! `U` starts relative to the block `R_z` and where `R_μ` lies relative to
//! the end of `M`. In cases 1 to 5, `C = D` follows from the equations; in
//! cases 6 to 8, `C` and `D` reduce to equivalent words once a null
//! sequence is removed from each.
//!
//! Positions below are offsets into `M·D`, the word spanned by both.

use std::collections::BTreeMap;

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::rewrite::FixedLengthClasses;

use super::CompletionState;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionConfig {
    pub a: Word,
    pub r_z: Word,
    pub b: Word,
    pub c: Word,
    pub r_mu: Word,
    pub d: Word,
    /// `|U|`.
    pub overlap: usize,
}

impl InsertionConfig {
    pub fn m(&self) -> Word {
        self.a.concat(&self.r_z).concat(&self.b)
    }

    pub fn n(&self) -> Word {
        self.c.concat(&self.r_mu).concat(&self.d)
    }

    pub fn r_x(&self) -> Word {
        self.a.concat(&self.b)
    }

    pub fn r_y(&self) -> Word {
        self.c.concat(&self.d)
    }

    fn reversed(&self) -> InsertionConfig {
        let rev = |w: &Word| Word::new(w.iter().rev().copied().collect());
        InsertionConfig {
            a: rev(&self.d),
            r_z: rev(&self.r_mu),
            b: rev(&self.c),
            c: rev(&self.b),
            r_mu: rev(&self.r_z),
            d: rev(&self.a),
            overlap: self.overlap,
        }
    }
}

/// Removing the null sequence `null` at `position` from `form` leaves
/// `result`; `form` is equivalent to `from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub from: Word,
    pub form: Word,
    pub null: Word,
    pub position: usize,
    pub result: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// `c = d` follows from the equations.
    Equation { c: Word, d: Word },
    /// `C` and `D` reduce to equivalent words.
    Reductions { c: Reduction, d: Reduction },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionOverlapCase {
    /// 1 to 8.
    pub case: u8,
    /// Classified through the left-right mirror image of the overlap.
    pub mirrored: bool,
    pub bindings: Vec<(&'static str, Word)>,
    pub conclusion: Conclusion,
}

/// Classify one overlap and bind its sub-words. Every binding identity is
/// checked by re-concatenation.
pub fn classify_insertion_overlap(cfg: &InsertionConfig) -> Result<InsertionOverlapCase> {
    let l = cfg.r_z.len();
    if l == 0 || cfg.r_mu.len() != l || cfg.a.len() + cfg.b.len() != l || cfg.c.len() + cfg.d.len() != l {
        return Err(Error::Invalid("null sequences must share one non-zero length".into()));
    }
    let (m, n) = (cfg.m(), cfg.n());
    let ul = cfg.overlap;
    if ul == 0 || ul >= 2 * l || m[2 * l - ul..] != n[..ul] {
        return Err(Error::Invalid("not an overlap with non-empty outer parts".into()));
    }
    let o = 2 * l - ul;
    let z0 = cfg.a.len();
    let ze = z0 + l;
    let m0 = o + cfg.c.len();
    let m1 = m0 + l;
    let end = 2 * l;
    let w = m.concat(&n[ul..]);
    let seg = |lo: usize, hi: usize| w.slice(lo, hi);
    let big_c = seg(0, o);
    let big_d = seg(end, end + o);
    let (a, b, c, d) = (&cfg.a, &cfg.b, &cfg.c, &cfg.d);
    let (r_z, r_mu) = (&cfg.r_z, &cfg.r_mu);
    let cat = |parts: &[&Word]| parts.iter().fold(Word::empty(), |acc, p| acc.concat(p));

    let equation = || Conclusion::Equation { c: big_c.clone(), d: big_d.clone() };
    let remove = |from: &Word, form: Word, null: &Word, position: usize| Reduction {
        from: from.clone(),
        result: form.splice(position, null.len(), &[]),
        form,
        null: null.clone(),
        position,
    };

    let (case, bindings, identities, conclusion): (u8, Vec<(&'static str, Word)>, Vec<(Word, Word)>, Conclusion);
    if o <= z0 {
        if m0 < z0 {
            let (e, f, g) = (seg(m0, z0), seg(z0, m1), seg(m1, ze));
            identities = vec![
                (a.clone(), cat(&[&big_c, c, &e])),
                (r_mu.clone(), cat(&[&e, &f])),
                (r_z.clone(), cat(&[&f, &g])),
                (d.clone(), cat(&[&g, b, &big_d])),
            ];
            case = 3;
            bindings = vec![("e", e), ("f", f), ("g", g)];
        } else if m1 <= end {
            let (e, f, g, h, i) = (seg(o, z0), seg(z0, m0), seg(m0, ze), seg(ze, m1), seg(m1, end));
            identities = vec![
                (a.clone(), cat(&[&big_c, &e])),
                (c.clone(), cat(&[&e, &f])),
                (r_z.clone(), cat(&[&f, &g])),
                (r_mu.clone(), cat(&[&g, &h])),
                (b.clone(), cat(&[&h, &i])),
                (d.clone(), cat(&[&i, &big_d])),
            ];
            case = 1;
            bindings = vec![("e", e), ("f", f), ("g", g), ("h", h), ("i", i)];
        } else {
            let (e, f, g, h) = (seg(o, z0), seg(z0, m0), seg(m0, ze), seg(end, m1));
            identities = vec![
                (a.clone(), cat(&[&big_c, &e])),
                (c.clone(), cat(&[&e, &f])),
                (r_z.clone(), cat(&[&f, &g])),
                (r_mu.clone(), cat(&[&g, b, &h])),
                (big_d.clone(), cat(&[&h, d])),
            ];
            case = 2;
            bindings = vec![("e", e), ("f", f), ("g", g), ("h", h)];
        }
        conclusion = equation();
    } else if o < ze {
        if m0 < ze && m1 < end {
            let mut mirrored = classify_insertion_overlap(&cfg.reversed())?;
            let rev = |w: &Word| Word::new(w.iter().rev().copied().collect());
            for (_, v) in mirrored.bindings.iter_mut() {
                *v = rev(v);
            }
            mirrored.mirrored = true;
            mirrored.conclusion = equation();
            return Ok(mirrored);
        } else if m0 < ze {
            let (e, cc, f, g) = (seg(z0, o), seg(o, m0), seg(m0, ze), seg(end, m1));
            identities = vec![
                (big_c.clone(), cat(&[a, &e])),
                (r_z.clone(), cat(&[&e, &cc, &f])),
                (r_mu.clone(), cat(&[&f, b, &g])),
                (big_d.clone(), cat(&[&g, d])),
            ];
            case = 4;
            bindings = vec![("e", e), ("f", f), ("g", g)];
            conclusion = equation();
        } else if m0 < end {
            let (e, f, g, h, i) = (seg(z0, o), seg(o, ze), seg(ze, m0), seg(m0, end), seg(end, m1));
            identities = vec![
                (b.clone(), cat(&[&g, &h])),
                (c.clone(), cat(&[&f, &g])),
                (big_c.clone(), cat(&[a, &e])),
                (big_d.clone(), cat(&[&i, d])),
                (r_z.clone(), cat(&[&e, &f])),
                (r_mu.clone(), cat(&[&h, &i])),
            ];
            case = 5;
            bindings = vec![("e", e), ("f", f), ("g", g), ("h", h), ("i", i)];
            conclusion = equation();
        } else {
            let (e, f, g) = (seg(z0, o), seg(o, ze), seg(end, m0));
            identities = vec![
                (c.clone(), cat(&[&f, b, &g])),
                (big_c.clone(), cat(&[a, &e])),
                (big_d.clone(), cat(&[&g, r_mu, d])),
                (r_z.clone(), cat(&[&e, &f])),
            ];
            case = 6;
            conclusion = Conclusion::Reductions {
                c: remove(&big_c, cat(&[&cfg.r_x(), &g, d]), &cfg.r_x(), 0),
                d: remove(&big_d, big_d.clone(), r_mu, g.len()),
            };
            bindings = vec![("e", e), ("f", f), ("g", g)];
        }
    } else if m0 < end {
        if m1 <= end {
            return Err(Error::UnclassifiedOverlap(format!(
                "R_mu lies inside M after R_z (|a| = {}, |c| = {}, |U| = {ul})",
                a.len(),
                c.len()
            )));
        }
        let (e, cc, f, g) = (seg(ze, o), seg(o, m0), seg(m0, end), seg(end, m1));
        identities = vec![
            (b.clone(), cat(&[&e, &cc, &f])),
            (big_c.clone(), cat(&[a, r_z, &e])),
            (big_d.clone(), cat(&[&g, d])),
            (r_mu.clone(), cat(&[&f, &g])),
        ];
        case = 7;
        conclusion = Conclusion::Reductions {
            c: remove(&big_c, big_c.clone(), r_z, a.len()),
            d: remove(&big_d, cat(&[a, &e, &cfg.r_y()]), &cfg.r_y(), a.len() + e.len()),
        };
        bindings = vec![("e", e), ("f", f), ("g", g)];
    } else {
        let (e, f, g) = (seg(ze, o), seg(o, end), seg(end, m0));
        identities = vec![
            (b.clone(), cat(&[&e, &f])),
            (c.clone(), cat(&[&f, &g])),
            (big_c.clone(), cat(&[a, r_z, &e])),
            (big_d.clone(), cat(&[&g, r_mu, d])),
        ];
        case = 8;
        conclusion = Conclusion::Reductions {
            c: remove(&big_c, big_c.clone(), r_z, a.len()),
            d: remove(&big_d, big_d.clone(), r_mu, g.len()),
        };
        bindings = vec![("e", e), ("f", f), ("g", g)];
    }

    if let Some((lhs, rhs)) = identities.iter().find(|(l, r)| l != r) {
        return Err(Error::Invalid(format!("case {case} identity fails: {lhs:?} vs {rhs:?}")));
    }
    let mut all = vec![("C", big_c.clone()), ("U", m.suffix(ul)), ("D", big_d.clone())];
    all.extend(bindings);
    Ok(InsertionOverlapCase { case, mirrored: false, bindings: all, conclusion })
}

/// Check a case's conclusion against the equations `(δ)` (through
/// `classes`) and the null sequences `gamma`.
pub fn verify_insertion_case(case: &InsertionOverlapCase, classes: &mut FixedLengthClasses, gamma: &[Word]) -> bool {
    match &case.conclusion {
        Conclusion::Equation { c, d } => classes.equivalent(c, d),
        Conclusion::Reductions { c, d } => {
            let mut ok = |r: &Reduction| {
                gamma.contains(&r.null)
                    && r.form.len() >= r.position + r.null.len()
                    && r.form[r.position..r.position + r.null.len()] == r.null[..]
                    && r.form.splice(r.position, r.null.len(), &[]) == r.result
                    && classes.equivalent(&r.from, &r.form)
            };
            ok(c) && ok(d) && (c.result == d.result || classes.equivalent(&c.result, &d.result))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InsertionSurvey {
    pub configurations: usize,
    /// Count per case 1 to 8.
    pub per_case: BTreeMap<u8, usize>,
    pub mirrored: usize,
    /// Overlaps outside cases 1 to 8.
    pub unclassified: usize,
    /// Classified overlaps whose conclusion failed to verify.
    pub unverified: usize,
    pub first_problem: Option<String>,
}

/// Classify and verify every overlap between insertions `a·R_z·b`,
/// `c·R_μ·d` over the final null sequences of `state`. With `interior`
/// set, only splits leaving `a`, `b`, `c`, `d` non-empty are used.
pub fn enumerate_insertion_overlaps(state: &CompletionState, interior: bool) -> InsertionSurvey {
    let gamma = state.gamma();
    let mut classes = FixedLengthClasses::new(state.delta_system()).expect("length-preserving");
    let mut survey = InsertionSurvey::default();
    let Some(l) = gamma.first().map(|w| w.len()) else { return survey };
    let cuts: Vec<usize> = if interior { (1..l).collect() } else { (0..=l).collect() };
    let mut ms = Vec::new();
    for rx in gamma {
        for &i in &cuts {
            for rz in gamma {
                let (a, b) = (rx.prefix(i), rx.suffix(l - i));
                ms.push(InsertionConfig {
                    a,
                    r_z: rz.clone(),
                    b,
                    c: Word::empty(),
                    r_mu: Word::empty(),
                    d: Word::empty(),
                    overlap: 0,
                });
            }
        }
    }
    for left in &ms {
        let m = left.m();
        for right in &ms {
            let n = right.m();
            for ul in 1..2 * l {
                if m[2 * l - ul..] != n[..ul] {
                    continue;
                }
                let cfg = InsertionConfig {
                    c: right.a.clone(),
                    r_mu: right.r_z.clone(),
                    d: right.b.clone(),
                    overlap: ul,
                    ..left.clone()
                };
                survey.configurations += 1;
                match classify_insertion_overlap(&cfg) {
                    Ok(case) => {
                        *survey.per_case.entry(case.case).or_default() += 1;
                        survey.mirrored += case.mirrored as usize;
                        if !verify_insertion_case(&case, &mut classes, gamma) {
                            survey.unverified += 1;
                            survey.first_problem.get_or_insert_with(|| format!("case {} fails: {cfg:?}", case.case));
                        }
                    }
                    Err(e) => {
                        survey.unclassified += 1;
                        survey.first_problem.get_or_insert_with(|| format!("{e}: {cfg:?}"));
                    }
                }
            }
        }
    }
    survey
}
