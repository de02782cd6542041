//! Every command emits one [`Report`], as text or JSON.

use serde::{Deserialize, Serialize};

use thue::rewrite::{Derivation, Equation, EquationSystem, Mode};
use thue::{Alphabet, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Reduce(ReduceReport),
    Equiv(EquivReport),
    Complete(CompleteReport),
    Analyze(AnalyzeReport),
    Corpus(CorpusReport),
    Check(CheckReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub action: String,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationRecord {
    pub start: String,
    pub steps: Vec<StepRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationRecord {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRecord {
    pub alphabet: Vec<String>,
    pub mode: String,
    pub null: Option<String>,
    pub equations: Vec<EquationRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub input: String,
    pub normal_form: String,
    pub derivation: DerivationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivReport {
    pub p: String,
    pub q: String,
    pub method: String,
    /// `equivalent`, `not-equivalent` or `unknown`.
    pub verdict: String,
    pub witness: Option<DerivationRecord>,
    pub states_explored: usize,
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLine {
    pub theta: usize,
    pub s_size: usize,
    pub e_size: usize,
    pub new_equations: Vec<EquationRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    /// Reported only; does not affect the exit status.
    pub informational: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteReport {
    pub r: String,
    pub alphabet: Vec<String>,
    pub gamma: Vec<String>,
    pub delta: Vec<EquationRecord>,
    pub epsilon: Option<Vec<EquationRecord>>,
    pub certified_minimum: Option<bool>,
    pub trace: Vec<TraceLine>,
    pub theorems: Option<Vec<CheckRecord>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapRecord {
    pub u: String,
    pub c: String,
    pub d: String,
    pub alpha: String,
    pub beta: String,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntermediateRecord {
    pub u: String,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub word: String,
    pub length: usize,
    pub borders: Vec<String>,
    pub root: String,
    pub exponent: usize,
    pub self_overlap: Option<OverlapRecord>,
    pub intermediate: Vec<IntermediateRecord>,
    pub chain: Vec<OverlapRecord>,
    pub chain_end: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub example: u8,
    pub label: String,
    pub system: SystemRecord,
    pub closed_forms_hold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<CheckRecord>,
}

pub fn word(ab: &Alphabet, w: &[Symbol]) -> String {
    ab.render(w)
}

pub fn equation(ab: &Alphabet, e: &Equation) -> EquationRecord {
    EquationRecord { lhs: word(ab, &e.lhs), rhs: word(ab, &e.rhs) }
}

pub fn derivation(sys: &EquationSystem, null: Option<&[Symbol]>, d: &Derivation) -> anyhow::Result<DerivationRecord> {
    let ab = &sys.alphabet;
    let words = d.words(sys, null)?;
    let steps = d
        .steps
        .iter()
        .zip(&words[1..])
        .enumerate()
        .map(|(i, (s, w))| StepRecord { step: i + 1, action: s.describe(), word: word(ab, w) })
        .collect();
    Ok(DerivationRecord { start: word(ab, &d.start), steps })
}

pub fn system(sys: &EquationSystem, null: Option<&Word>) -> SystemRecord {
    SystemRecord {
        alphabet: sys.alphabet.names().to_vec(),
        mode: match sys.mode {
            Mode::Thue => "thue",
            Mode::SemiThue => "semi",
        }
        .into(),
        null: null.map(|r| word(&sys.alphabet, r)),
        equations: sys.equations.iter().map(|e| equation(&sys.alphabet, e)).collect(),
    }
}

fn e(s: &str) -> &str {
    if s.is_empty() {
        "ε"
    } else {
        s
    }
}

fn system_text(s: &SystemRecord) -> String {
    let arrow = if s.mode == "semi" { "->" } else { "<->" };
    let mut out = format!("alphabet: {}\nmode: {}\n", s.alphabet.join(" "), s.mode);
    if let Some(r) = &s.null {
        out.push_str(&format!("null: {r}\n"));
    }
    for e in &s.equations {
        out.push_str(&format!("{} {arrow} {}\n", e.lhs, e.rhs));
    }
    out
}

fn derivation_text(d: &DerivationRecord) -> String {
    let mut out = format!("start: {}\n", e(&d.start));
    for s in &d.steps {
        out.push_str(&format!("step {}: {}: {}\n", s.step, s.action, e(&s.word)));
    }
    out
}

fn equations_text(es: &[EquationRecord], arrow: &str) -> String {
    es.iter().map(|e| format!("{} {arrow} {}\n", e.lhs, e.rhs)).collect()
}

fn checks_text(cs: &[CheckRecord]) -> String {
    cs.iter()
        .map(|c| {
            let tag = match (c.passed, c.informational) {
                (true, _) => "PASS",
                (false, false) => "FAIL",
                (false, true) => "INFO",
            };
            format!("{tag} {}: {}\n", c.name, c.detail)
        })
        .collect()
}

impl Report {
    pub fn to_text(&self) -> String {
        match self {
            Report::Reduce(r) => {
                format!("normal form: {}\n{}", e(&r.normal_form), derivation_text(&r.derivation))
            }
            Report::Equiv(r) => {
                let mut out = format!(
                    "verdict: {} (method: {}, {} states explored{})\n",
                    r.verdict,
                    r.method,
                    r.states_explored,
                    if r.saturated { ", saturated" } else { "" }
                );
                if let Some(d) = &r.witness {
                    out.push_str(&derivation_text(d));
                }
                out
            }
            Report::Complete(r) => {
                let mut out = String::new();
                for t in &r.trace {
                    let new: Vec<String> = t.new_equations.iter().map(|e| format!("{} = {}", e.lhs, e.rhs)).collect();
                    out.push_str(&format!(
                        "# round {}: |S| = {}, |E| = {}, new: {}\n",
                        t.theta,
                        t.s_size,
                        t.e_size,
                        if new.is_empty() { "none".to_string() } else { new.join(", ") }
                    ));
                }
                out.push_str(&format!("# null sequences (γ): {}\n", r.gamma.len()));
                for g in &r.gamma {
                    out.push_str(&format!("#   {g}\n"));
                }
                out.push_str(&format!("# equations (δ): {}\n", r.delta.len()));
                let shown = match &r.epsilon {
                    Some(eps) => {
                        for e in &r.delta {
                            out.push_str(&format!("#   {} = {}\n", e.lhs, e.rhs));
                        }
                        out.push_str(&format!(
                            "# minimized (ε): {}{}\n",
                            eps.len(),
                            if r.certified_minimum == Some(false) { " (greedy, not certified minimum)" } else { "" }
                        ));
                        eps
                    }
                    None => &r.delta,
                };
                if let Some(th) = &r.theorems {
                    for line in checks_text(th).lines() {
                        out.push_str(&format!("# {line}\n"));
                    }
                }
                out.push_str(&format!("alphabet: {}\nmode: thue\nnull: {}\n", r.alphabet.join(" "), r.r));
                out.push_str(&equations_text(shown, "<->"));
                out
            }
            Report::Analyze(r) => {
                let mut out = format!("word: {} (length {})\n", r.word, r.length);
                out.push_str(&format!("primitive root: {} ^ {}\n", r.root, r.exponent));
                if r.borders.is_empty() {
                    out.push_str("borders: none\n");
                } else {
                    out.push_str(&format!("borders: {}\n", r.borders.join(", ")));
                }
                if let Some(so) = &r.self_overlap {
                    out.push_str(&format!(
                        "longest self-overlap: C = {}, U = {}, D = {}; α = {}, β = {}, n = {}\n",
                        so.c,
                        so.u,
                        so.d,
                        e(&so.alpha),
                        so.beta,
                        so.n
                    ));
                    for i in &r.intermediate {
                        out.push_str(&format!("  overlap {} = α(βα)^{}\n", i.u, i.m));
                    }
                }
                out.push_str(&format!("overlap chain: {} stage(s)\n", r.chain.len()));
                for (k, s) in r.chain.iter().enumerate() {
                    out.push_str(&format!(
                        "  stage {}: U = {}, C = {}, D = {}, α = {}, β = {}, n = {}\n",
                        k + 1,
                        s.u,
                        s.c,
                        s.d,
                        e(&s.alpha),
                        s.beta,
                        s.n
                    ));
                }
                out.push_str(&format!("chain end: {}\n", e(&r.chain_end)));
                out
            }
            Report::Corpus(r) => format!("# {}\n{}", r.label, system_text(&r.system)),
            Report::Check(r) => checks_text(&r.checks),
        }
    }
}
